//! Constructive Hahn–Banach over the reals in finite dimensions.
//!
//! A functional on a subspace M is extended one direction at a time: the
//! admissible values of the new coordinate form an interval [a, b], both ends
//! of which are convex programs over M. Iterating over a completion of M's
//! basis reaches the whole space in finitely many steps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::norm::{min_norm_affine, orthonormal_complement, NormSpec};
use crate::optim::{self, EllipsoidOptions, Growth};
use crate::sampling;
use crate::space::{Scalar, Vector};

/// A real linear functional given by its values on a basis of a subspace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceFunctional {
    basis: Vec<Vector>,
    values: Vec<f64>,
    norm: NormSpec,
    subspace_norm: f64,
    /// Certified upper bound on ‖f‖.
    norm_upper: f64,
    /// A unit vector of M with f(witness) = ‖f‖.
    witness: Vector,
}

#[derive(Deserialize)]
pub struct FunctionalSpec {
    pub basis: Vec<Vector>,
    pub values: Vec<f64>,
    pub norm: NormSpec,
}

fn real_vector(v: &Vector, what: &'static str) -> Result<()> {
    if v.is_real() {
        Ok(())
    } else {
        Err(Error::ComplexInput(what))
    }
}

const REAL_ONLY: &str = "Hahn-Banach extension is implemented for real scalars only";

impl SubspaceFunctional {
    pub fn new(basis: Vec<Vector>, values: Vec<f64>, norm: NormSpec, tol: f64) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidInput("subspace basis is empty".into()));
        }
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: values.len(),
            });
        }
        if !norm.is_real() {
            return Err(Error::ComplexInput(REAL_ONLY));
        }
        for b in &basis {
            b.check_dim(norm.dim())?;
            real_vector(b, REAL_ONLY)?;
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if basis.len() > norm.dim() || Matrix::from_columns(&basis)?.rank() < basis.len() {
            return Err(Error::SingularBasis);
        }
        let fnorm = functional_subspace_norm(&basis, &values, &norm, tol)?;
        Ok(SubspaceFunctional {
            basis,
            values,
            norm,
            subspace_norm: fnorm.value,
            norm_upper: fnorm.upper,
            witness: fnorm.witness,
        })
    }

    pub fn from_spec(spec: FunctionalSpec, tol: f64) -> Result<Self> {
        Self::new(spec.basis, spec.values, spec.norm, tol)
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn norm(&self) -> &NormSpec {
        &self.norm
    }

    pub fn subspace_norm(&self) -> f64 {
        self.subspace_norm
    }

    pub fn norm_upper(&self) -> f64 {
        self.norm_upper
    }

    pub fn witness(&self) -> &Vector {
        &self.witness
    }

    pub fn is_full_space(&self) -> bool {
        self.basis.len() == self.norm.dim()
    }

    /// f(y) for y in M (y is projected onto M in the Euclidean sense).
    pub fn eval(&self, y: &Vector) -> Result<f64> {
        y.check_dim(self.norm.dim())?;
        let c = Matrix::from_columns(&self.basis)?.least_squares(y);
        Ok(c.iter().zip(&self.values).map(|(a, v)| a.re * v).sum())
    }

    /// The vector g with f(y) = Σ g_i y_i; defined once M is the whole space.
    pub fn coefficients(&self) -> Option<Vec<f64>> {
        if !self.is_full_space() {
            return None;
        }
        let bt = Matrix::from_columns(&self.basis).ok()?.transpose();
        let v = Vector::from_real(&self.values).ok()?;
        let g = bt.inverse().ok()?.mul_vec(&v);
        Some(g.iter().map(|c| c.re).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalNorm {
    /// |f(witness)| with ‖witness‖ = 1; a lower bound on ‖f‖.
    pub value: f64,
    /// Upper bound on ‖f‖ from the solver's certificate.
    pub upper: f64,
    pub witness: Vector,
}

/// ‖f‖ = sup { |f(y)| : y ∈ M, ‖y‖ ≤ 1 } together with a maximizer.
///
/// Solved as 1 / min { ‖Bc‖ : v·c = 1 }, a convex program in the basis
/// coordinates; on the whole space with a closed-form dual this is the dual
/// norm of f's coefficient vector.
pub fn functional_subspace_norm(basis: &[Vector], values: &[f64], norm: &NormSpec, tol: f64) -> Result<FunctionalNorm> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let k = basis.len();
    let bm = Matrix::from_columns(basis)?;
    if bm.rank() < k {
        return Err(Error::SingularBasis);
    }
    let vv: f64 = values.iter().map(|v| v * v).sum();
    if vv == 0.0 {
        let b0 = &basis[0];
        return Ok(FunctionalNorm {
            value: 0.0,
            upper: 0.0,
            witness: b0.scale_real(1.0 / norm.eval_slice(b0.coords())),
        });
    }
    if k == norm.dim() && norm.has_closed_form_dual() {
        let g = bm.transpose().inverse()?.mul_vec(&Vector::from_real(values)?);
        let g: Vec<Scalar> = g.iter().map(|c| Scalar::new(c.re, 0.0)).collect();
        let value = norm.dual_norm(&g);
        let w = Vector::from_vec(norm.norming_vector(&g).iter().map(|c| Scalar::new(c.re, 0.0)).collect());
        let w = w.scale_real(1.0 / norm.eval_slice(w.coords()));
        return Ok(FunctionalNorm {
            value,
            upper: value * (1.0 + 1e-12),
            witness: w,
        });
    }
    let c0: Vec<f64> = values.iter().map(|v| v / vv).collect();
    let x0 = bm.mul_vec(&Vector::from_real(&c0)?).into_coords();
    let dirs: Vec<Vec<Scalar>> = orthonormal_complement(&[values.to_vec()], k)
        .into_iter()
        .map(|u| bm.mul_vec(&Vector::from_real(&u).expect("nonempty")).into_coords())
        .collect();
    let m = min_norm_affine(norm, &x0, &dirs, tol.min(1e-10));
    if !(m.value > 0.0) {
        return Err(Error::InvalidNorm("norm vanishes on a nonzero vector of M".into()));
    }
    let lower = m.lower_bound.max(0.0);
    Ok(FunctionalNorm {
        value: 1.0 / m.value,
        upper: if lower > 0.0 { 1.0 / lower } else { f64::INFINITY },
        witness: Vector::from_vec(m.point).scale_real(1.0 / m.value),
    })
}

/// Which point of [a, b] to use for the new coordinate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Choice {
    #[default]
    Midpoint,
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionStep {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x0: Vector,
    pub f_norm: f64,
    pub g_norm: f64,
    /// ‖g‖ ≤ ‖f‖(1 + tol).
    pub certified: bool,
}

fn extension_endpoint(f: &SubspaceFunctional, x0: &Vector, sign: f64, tol: f64) -> f64 {
    // inf over c of sign·f(Bc) + ‖f‖·‖Bc + x0‖
    let k = f.basis.len();
    let n = x0.dim();
    let nf = f.norm_upper;
    let objective = |c: &[f64]| {
        let mut y = x0.coords().to_vec();
        for (cj, b) in c.iter().zip(&f.basis) {
            for i in 0..n {
                y[i] += b[i] * *cj;
            }
        }
        let fy: f64 = c.iter().zip(&f.values).map(|(a, v)| a * v).sum();
        let s = f.norm.subgradient(&y);
        let g = (0..k)
            .map(|j| sign * f.values[j] + nf * s.iter().zip(f.basis[j].iter()).map(|(a, b)| (a * b).re).sum::<f64>())
            .collect();
        (sign * fy + nf * f.norm.eval_slice(&y), g)
    };
    let x0n = x0.euclidean_norm();
    let bmin = f.basis.iter().map(Vector::euclidean_norm).fold(f64::INFINITY, f64::min);
    let scale = (nf * f.norm.eval_slice(x0.coords())).max(f64::MIN_POSITIVE);
    // far out, sign·f(Bc) and ‖f‖‖Bc + x0‖ cancel; stop growing the box
    // before rounding at that radius reaches the target accuracy
    let start = 2.0 * x0n / bmin;
    let opts = EllipsoidOptions {
        tol: 1e-3 * tol * scale,
        max_radius: start * 1e-3 * tol / (16.0 * f64::EPSILON),
        ..Default::default()
    };
    optim::minimize_unbounded(&objective, k, start, opts, Growth::UntilStagnant).value
}

pub fn one_step_extension(f: &SubspaceFunctional, x0: &Vector, tol: f64) -> Result<(SubspaceFunctional, ExtensionStep)> {
    one_step_extension_with(f, x0, tol, Choice::Midpoint)
}

pub fn one_step_extension_with(
    f: &SubspaceFunctional,
    x0: &Vector,
    tol: f64,
    choice: Choice,
) -> Result<(SubspaceFunctional, ExtensionStep)> {
    x0.check_dim(f.norm.dim())?;
    real_vector(x0, REAL_ONLY)?;
    let bm = Matrix::from_columns(&f.basis)?;
    let distance = bm.residual_distance(x0);
    if distance <= 1e-10 * x0.euclidean_norm() || x0.is_zero() {
        return Err(Error::ExtensionDirection { distance });
    }
    let b = extension_endpoint(f, x0, -1.0, tol);
    let a = -extension_endpoint(f, x0, 1.0, tol);
    let scale = f.norm_upper * f.norm.eval_slice(x0.coords());
    if a > b + tol * scale.max(1.0) {
        return Err(Error::SolverFailure(format!("extension interval is empty: a = {a}, b = {b}")));
    }
    let c = match choice {
        Choice::Midpoint => 0.5 * (a + b),
        Choice::Lower => a,
        Choice::Upper => b,
    };
    let mut basis = f.basis.clone();
    basis.push(x0.clone());
    let mut values = f.values.clone();
    values.push(c);
    let g = SubspaceFunctional::new(basis, values, f.norm.clone(), tol)?;
    let step = ExtensionStep {
        a,
        b,
        c,
        x0: x0.clone(),
        f_norm: f.subspace_norm,
        g_norm: g.subspace_norm,
        certified: g.subspace_norm <= f.subspace_norm * (1.0 + tol),
    };
    Ok((g, step))
}

/// Standard basis vectors completing `basis`, chosen greedily by largest
/// Euclidean distance to the current span (ties to the lower index).
pub fn complete_basis(basis: &[Vector], dim: usize) -> Result<Vec<Vector>> {
    let mut current = basis.to_vec();
    let mut added = Vec::new();
    while current.len() < dim {
        let m = Matrix::from_columns(&current)?;
        let (i, d) = (0..dim)
            .map(|i| (i, m.residual_distance(&Vector::unit(dim, i))))
            .fold((0, -1.0), |acc, c| if c.1 > acc.1 * (1.0 + 1e-12) { c } else { acc });
        if d <= 1e-10 {
            return Err(Error::SingularBasis);
        }
        let e = Vector::unit(dim, i);
        current.push(e.clone());
        added.push(e);
    }
    Ok(added)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extension {
    pub functional: SubspaceFunctional,
    pub steps: Vec<ExtensionStep>,
    /// g with F(y) = Σ g_i y_i.
    pub coefficients: Vec<f64>,
    /// ‖F‖ / ‖f‖ (1 when f = 0).
    pub norm_ratio: f64,
}

pub fn extend_functional(f: &SubspaceFunctional, tol: f64) -> Result<Extension> {
    let n = f.norm.dim();
    let mut g = f.clone();
    let mut steps = Vec::new();
    for e in complete_basis(&f.basis, n)? {
        let (next, step) = one_step_extension(&g, &e, tol)?;
        g = next;
        steps.push(step);
    }
    let coefficients = g.coefficients().ok_or(Error::SingularBasis)?;
    let norm_ratio = if f.subspace_norm == 0.0 {
        if g.subspace_norm == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        g.subspace_norm / f.subspace_norm
    };
    Ok(Extension {
        functional: g,
        steps,
        coefficients,
        norm_ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormingFunctional {
    pub coefficients: Vec<f64>,
    /// x′(x) as carried by the construction: the value ‖x‖ assigned on span{x}.
    pub value_at_x: f64,
    /// Σ x_i x′_i recomputed from the coefficients.
    pub pairing: f64,
    pub norm_of_x: f64,
    /// ‖x′‖ in the dual norm.
    pub dual_norm: f64,
    pub steps: Vec<ExtensionStep>,
}

pub fn norming_functional(x: &Vector, norm: &NormSpec, tol: f64) -> Result<NormingFunctional> {
    x.check_dim(norm.dim())?;
    real_vector(x, REAL_ONLY)?;
    if x.is_zero() {
        return Err(Error::NoWitness("the zero vector has no norming functional"));
    }
    let nx = norm.eval(x)?;
    let f = SubspaceFunctional::new(vec![x.clone()], vec![nx], norm.clone(), tol)?;
    let ext = extend_functional(&f, tol)?;
    let g: Vec<Scalar> = ext.coefficients.iter().map(|&c| Scalar::new(c, 0.0)).collect();
    Ok(NormingFunctional {
        value_at_x: ext.functional.values[0],
        pairing: x.iter().zip(&ext.coefficients).map(|(a, b)| a.re * b).sum(),
        norm_of_x: nx,
        dual_norm: norm.dual_norm(&g),
        coefficients: ext.coefficients,
        steps: ext.steps,
    })
}

/// d(x, span(basis)) and the nearest point of the span.
pub fn distance_to_subspace(x: &Vector, basis: &[Vector], norm: &NormSpec, tol: f64) -> Result<(f64, Vector)> {
    x.check_dim(norm.dim())?;
    real_vector(x, REAL_ONLY)?;
    for b in basis {
        b.check_dim(norm.dim())?;
        real_vector(b, REAL_ONLY)?;
    }
    if basis.is_empty() {
        return Ok((norm.eval(x)?, Vector::zeros(norm.dim())));
    }
    if Matrix::from_columns(basis)?.rank() < basis.len() {
        return Err(Error::SingularBasis);
    }
    let dirs: Vec<Vec<Scalar>> = basis.iter().map(|b| b.scale_real(-1.0).into_coords()).collect();
    let m = min_norm_affine(norm, x.coords(), &dirs, tol.min(1e-10));
    let residual = Vector::from_vec(m.point);
    Ok((m.value, x - &residual))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annihilator {
    pub coefficients: Vec<f64>,
    pub distance: f64,
    /// x′(x) as carried by the construction (exactly 1).
    pub value_at_x: f64,
    /// Σ x_i x′_i recomputed from the coefficients.
    pub pairing: f64,
    /// max |x′(y)| over the basis of F and sampled unit-scale y ∈ F.
    pub max_on_subspace: f64,
    pub dual_norm: f64,
    /// ‖x′‖ ≤ (1 + tol)/d.
    pub norm_certified: bool,
}

pub fn annihilating_functional(x: &Vector, basis: &[Vector], norm: &NormSpec, tol: f64) -> Result<Annihilator> {
    let (distance, _) = distance_to_subspace(x, basis, norm, tol)?;
    if distance <= tol {
        return Err(Error::SeparationImpossible { distance, tol });
    }
    let mut m_basis = basis.to_vec();
    m_basis.push(x.clone());
    let mut values = vec![0.0; basis.len()];
    values.push(1.0);
    let f = SubspaceFunctional::new(m_basis, values, norm.clone(), tol)?;
    let ext = extend_functional(&f, tol)?;
    let g = &ext.coefficients;
    let apply = |y: &Vector| y.iter().zip(g).map(|(a, b)| a.re * b).sum::<f64>();
    let mut max_on_subspace = basis.iter().map(|b| apply(b).abs() / norm.eval_slice(b.coords())).fold(0.0, f64::max);
    if !basis.is_empty() {
        let mut rng = sampling::substream(0, 0xA2_2A);
        for _ in 0..256 {
            let c = sampling::gaussian_vec_f64(&mut rng, basis.len());
            let mut y = Vector::zeros(norm.dim());
            for (cj, b) in c.iter().zip(basis) {
                y = &y + &b.scale_real(*cj);
            }
            let ny = norm.eval_slice(y.coords());
            if ny > 0.0 {
                max_on_subspace = max_on_subspace.max(apply(&y).abs() / ny);
            }
        }
    }
    let gs: Vec<Scalar> = g.iter().map(|&c| Scalar::new(c, 0.0)).collect();
    let dual_norm = norm.dual_norm(&gs);
    Ok(Annihilator {
        value_at_x: ext.functional.values[basis.len()],
        pairing: apply(x),
        max_on_subspace,
        dual_norm,
        norm_certified: dual_norm <= (1.0 + tol) / distance,
        coefficients: ext.coefficients,
        distance,
    })
}
