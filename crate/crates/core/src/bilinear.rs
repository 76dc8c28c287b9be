//! Bilinear forms φ(x, y) = Σ c_ij x_i y_j, their norms, elementary tensors
//! and the identification Bil(E, F) = L(E, F′).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::norm::NormSpec;
use crate::operators::{onto_sphere, LinearOperator};
use crate::sampling::{self, SampleMode};
use crate::space::{Field, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FormRepr")]
pub struct BilinearForm {
    coeffs: Matrix,
    left: NormSpec,
    right: NormSpec,
}

#[derive(Deserialize)]
struct FormRepr {
    coeffs: Matrix,
    left: NormSpec,
    right: NormSpec,
}

impl TryFrom<FormRepr> for BilinearForm {
    type Error = Error;
    fn try_from(r: FormRepr) -> Result<Self> {
        BilinearForm::new(r.coeffs, r.left, r.right)
    }
}

impl BilinearForm {
    pub fn new(coeffs: Matrix, left: NormSpec, right: NormSpec) -> Result<Self> {
        if coeffs.rows() != left.dim() {
            return Err(Error::DimensionMismatch {
                expected: left.dim(),
                found: coeffs.rows(),
            });
        }
        if coeffs.cols() != right.dim() {
            return Err(Error::DimensionMismatch {
                expected: right.dim(),
                found: coeffs.cols(),
            });
        }
        if !coeffs.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(BilinearForm { coeffs, left, right })
    }

    /// <x, y> on K^n with the same norm on both sides.
    pub fn dot(norm: NormSpec) -> Self {
        let n = norm.dim();
        BilinearForm {
            coeffs: Matrix::identity(n),
            left: norm.clone(),
            right: norm,
        }
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn left(&self) -> &NormSpec {
        &self.left
    }

    pub fn right(&self) -> &NormSpec {
        &self.right
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        x.check_dim(self.left.dim())?;
        y.check_dim(self.right.dim())?;
        Ok(self.eval_unchecked(x.coords(), y.coords()))
    }

    fn eval_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut s = Scalar::new(0.0, 0.0);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                s += self.coeffs[(i, j)] * xi * yj;
            }
        }
        s
    }

    /// The coefficients of y ↦ φ(x, y).
    fn left_slice(&self, x: &[Scalar]) -> Vec<Scalar> {
        (0..self.coeffs.cols())
            .map(|j| x.iter().enumerate().map(|(i, xi)| self.coeffs[(i, j)] * xi).sum())
            .collect()
    }

    /// The coefficients of x ↦ φ(x, y).
    fn right_slice(&self, y: &[Scalar]) -> Vec<Scalar> {
        (0..self.coeffs.rows())
            .map(|i| y.iter().enumerate().map(|(j, yj)| self.coeffs[(i, j)] * yj).sum())
            .collect()
    }

    pub fn field(&self) -> Field {
        if self.coeffs.is_real() && self.left.is_real() && self.right.is_real() {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionCheck {
    pub samples: usize,
    /// Sampled (x, y) with |φ(x,y)| > ‖φ‖‖x‖‖y‖(1 + tol).
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BilinearNormResult {
    pub value: f64,
    pub witness_x: Vector,
    pub witness_y: Vector,
    /// |φ(witness_x, witness_y)| with both witnesses in the unit balls.
    pub certified_lower: f64,
    /// Σ_i ‖e_i‖_{left′} ‖φ(e_i, ·)‖_{right′}.
    pub upper_bound: f64,
    pub starts: usize,
    pub criterion: CriterionCheck,
}

fn realify(v: Vec<Scalar>, field: Field) -> Vec<Scalar> {
    match field {
        Field::Real => v.into_iter().map(|c| Scalar::new(c.re, 0.0)).collect(),
        Field::Complex => v,
    }
}

/// sup |φ(x, y)| over the product of unit balls by alternating exact
/// maximization in each slot from several starts.
pub fn bilinear_norm(phi: &BilinearForm, tol: f64) -> Result<BilinearNormResult> {
    bilinear_norm_seeded(phi, tol, 0)
}

pub fn bilinear_norm_seeded(phi: &BilinearForm, tol: f64, seed: u64) -> Result<BilinearNormResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let (m, n) = (phi.left.dim(), phi.right.dim());
    let field = phi.field();
    let mut rng = sampling::substream(seed, 0xB1_11);

    let mut starts: Vec<Vector> = (0..m).map(|i| Vector::unit(m, i)).collect();
    while starts.len() < m + 16 {
        starts.push(sampling::gaussian_vector(&mut rng, m, field));
    }
    let nstarts = starts.len();

    let mut best: Option<(f64, Vector, Vector)> = None;
    for s in starts {
        if s.is_zero() {
            continue;
        }
        let mut x = onto_sphere(&phi.left, &s);
        let mut y = Vector::unit(n, 0);
        let mut val = -1.0;
        for _ in 0..1000 {
            let ly = phi.left_slice(x.coords());
            y = onto_sphere(&phi.right, &Vector::from_vec(realify(phi.right.norming_vector(&ly), field)));
            let rx = phi.right_slice(y.coords());
            x = onto_sphere(&phi.left, &Vector::from_vec(realify(phi.left.norming_vector(&rx), field)));
            let v = phi.eval_unchecked(x.coords(), y.coords()).norm();
            let done = v <= val * (1.0 + 0.01 * tol);
            val = val.max(v);
            if done {
                break;
            }
        }
        if best.as_ref().is_none_or(|(b, _, _)| val > *b) {
            best = Some((val, x, y));
        }
    }
    let (value, witness_x, witness_y) = best.expect("at least one start");
    let certified_lower = phi.eval_unchecked(witness_x.coords(), witness_y.coords()).norm();
    let upper_bound = (0..m)
        .map(|i| {
            let e = Vector::unit(m, i);
            phi.left.dual_norm(e.coords()) * phi.right.dual_norm(&phi.left_slice(e.coords()))
        })
        .sum::<f64>()
        .max(value);

    let samples = 1000;
    let xs = sampling::sample_unit_vectors_with(&phi.left, samples, SampleMode::InBall, field, &mut rng)?;
    let ys = sampling::sample_unit_vectors_with(&phi.right, samples, SampleMode::InBall, field, &mut rng)?;
    let violations = xs
        .iter()
        .zip(&ys)
        .filter(|(x, y)| {
            let lhs = phi.eval_unchecked(x.coords(), y.coords()).norm();
            lhs > value * phi.left.eval_slice(x.coords()) * phi.right.eval_slice(y.coords()) * (1.0 + tol)
        })
        .count();

    Ok(BilinearNormResult {
        value,
        witness_x,
        witness_y,
        certified_lower,
        upper_bound,
        starts: nstarts,
        criterion: CriterionCheck { samples, violations },
    })
}

/// (x, y) ↦ <xp, x><yp, y>.
pub fn elementary_tensor_form(xp: &Vector, yp: &Vector, left: NormSpec, right: NormSpec) -> Result<BilinearForm> {
    xp.check_dim(left.dim())?;
    yp.check_dim(right.dim())?;
    let rows = xp.iter().map(|a| yp.iter().map(|b| a * b).collect()).collect();
    BilinearForm::new(Matrix::from_rows(rows)?, left, right)
}

/// L_φ : x ↦ φ(x, ·), valued in the dual of the right space.
pub fn curry(phi: &BilinearForm) -> LinearOperator {
    LinearOperator::new(phi.coeffs.transpose(), phi.left.clone(), phi.right.dual_marked())
        .expect("shapes agree by construction")
}

/// β_T(x, y) = <Tx, y>; the target norm must be the dual of a known norm.
pub fn uncurry(t: &LinearOperator) -> Result<BilinearForm> {
    let right = t
        .target()
        .predual()
        .ok_or_else(|| Error::InvalidNorm("target norm is not recorded as a dual norm".into()))?;
    BilinearForm::new(t.matrix().transpose(), t.source().clone(), right)
}

/// |x² − y²| on nearby reals: for δ > 0, x = 1/δ and y = x + δ/2 give
/// |x − y| < δ yet |x² − y²| = 1 + δ²/4 > 1.
pub fn square_not_uniformly_continuous(delta: f64) -> (f64, f64, f64) {
    let x = 1.0 / delta;
    let y = x + 0.5 * delta;
    let phi = BilinearForm::new(
        Matrix::from_real_rows(&[vec![1.0]]).expect("1x1"),
        NormSpec::sup(1),
        NormSpec::sup(1),
    )
    .expect("1x1");
    // y² − x² = φ(y − x, y + x) for the symmetric form φ(s, t) = st
    let d = Vector::from_real(&[y - x]).expect("scalar");
    let s = Vector::from_real(&[y + x]).expect("scalar");
    (x, y, phi.eval(&d, &s).expect("dims").re.abs())
}
