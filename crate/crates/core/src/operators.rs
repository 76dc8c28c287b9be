//! Linear operators between finite-dimensional normed spaces: operator
//! norms, continuity certificates and isometry detection.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::norm::{Exponent, NormSpec};
use crate::optim;
use crate::sampling::{self, SampleMode};
use crate::space::{Field, Scalar, Vector};

/// A dense matrix with the norms on its source (dim = cols) and target
/// (dim = rows).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr")]
pub struct LinearOperator {
    matrix: Matrix,
    source: NormSpec,
    target: NormSpec,
}

#[derive(Deserialize)]
struct OperatorRepr {
    matrix: Matrix,
    source: NormSpec,
    target: NormSpec,
}

impl TryFrom<OperatorRepr> for LinearOperator {
    type Error = Error;
    fn try_from(r: OperatorRepr) -> Result<Self> {
        LinearOperator::new(r.matrix, r.source, r.target)
    }
}

impl LinearOperator {
    pub fn new(matrix: Matrix, source: NormSpec, target: NormSpec) -> Result<Self> {
        if matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: matrix.cols(),
            });
        }
        if matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: matrix.rows(),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(LinearOperator {
            matrix,
            source,
            target,
        })
    }

    pub fn identity(norm: NormSpec) -> Self {
        let n = norm.dim();
        LinearOperator {
            matrix: Matrix::identity(n),
            source: norm.clone(),
            target: norm,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &NormSpec {
        &self.source
    }

    pub fn target(&self) -> &NormSpec {
        &self.target
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        self.matrix.mul_vec(x)
    }

    /// Real when the matrix and both norms are real; sup-searches then stay
    /// in R^n.
    pub fn field(&self) -> Field {
        if self.matrix.is_real() && self.source.is_real() && self.target.is_real() {
            Field::Real
        } else {
            Field::Complex
        }
    }

    fn gain(&self, x: &Vector) -> f64 {
        self.target.eval_slice(self.apply(x).coords())
    }

    /// Σ_i s_i T_ij, the bilinear transpose applied to a dual vector.
    fn transpose_apply(&self, s: &[Scalar]) -> Vec<Scalar> {
        (0..self.matrix.cols())
            .map(|j| (0..self.matrix.rows()).map(|i| s[i] * self.matrix[(i, j)]).sum())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    ClosedForm,
    PowerIteration,
    MultistartAscent,
    Sampling,
}

/// Estimates of sup ‖Tx‖ over the closed ball, the sphere, and the open ball
/// (the latter through (1 − tol/4)-scaled sphere points).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupVariants {
    pub closed_ball: f64,
    pub sphere: f64,
    pub open_ball: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorNormResult {
    pub value: f64,
    pub method: NormMethod,
    /// ‖witness‖_source ∈ [1 − 1e−9, 1].
    pub witness: Vector,
    /// ‖T witness‖_target, a guaranteed lower bound.
    pub certified_lower: f64,
    pub upper_bound: Option<f64>,
    /// False for the general ascent, whose value is only a best lower bound.
    pub certified: bool,
    /// Power iteration hit its cap and the ascent took over.
    pub fallback: bool,
    pub sup: SupVariants,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorNormOptions {
    pub tol: f64,
    pub starts: usize,
    pub samples: usize,
    pub seed: u64,
    pub power_max_iter: usize,
    pub power_tol: f64,
}

impl Default for OperatorNormOptions {
    fn default() -> Self {
        OperatorNormOptions {
            tol: 1e-8,
            starts: 16,
            samples: 256,
            seed: 0,
            power_max_iter: 10_000,
            power_tol: 1e-10,
        }
    }
}

/// Scale onto the unit sphere of `norm`, nudging inward so ‖x‖ <= 1 holds in
/// floating point.
pub(crate) fn onto_sphere(norm: &NormSpec, x: &Vector) -> Vector {
    let r = norm.eval_slice(x.coords());
    let mut w = x.scale_real(1.0 / r);
    let mut shrink = 1.0;
    while norm.eval_slice(w.coords()) > 1.0 {
        shrink *= 1.0 - 4.0 * f64::EPSILON;
        w = x.scale_real(shrink / r);
    }
    w
}

pub fn operator_norm(t: &LinearOperator, tol: f64) -> Result<OperatorNormResult> {
    operator_norm_with(
        t,
        OperatorNormOptions {
            tol,
            ..Default::default()
        },
    )
}

pub fn operator_norm_with(t: &LinearOperator, opts: OperatorNormOptions) -> Result<OperatorNormResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let n = t.matrix.cols();
    let field = t.field();

    if t.matrix.is_zero() {
        let w = onto_sphere(&t.source, &Vector::unit(n, 0));
        return Ok(finish(t, 0.0, NormMethod::ClosedForm, w, Some(0.0), true, false, &opts, field));
    }

    // source ℓ1: extreme points are phased unit vectors
    if t.source.exponent() == Some(Exponent::Finite(1.0)) {
        let (j, v) = (0..n)
            .map(|j| (j, t.target.eval_slice(t.matrix.column(j).coords())))
            .fold((0, -1.0), |acc, c| if c.1 > acc.1 { c } else { acc });
        let w = Vector::unit(n, j);
        return Ok(finish(t, v, NormMethod::ClosedForm, w, Some(v), true, false, &opts, field));
    }

    // target ℓ∞ with a p-norm source: max over rows of the dual-exponent norm
    if let (Some(Exponent::Infinity), Some(p)) = (t.target.exponent(), t.source.exponent()) {
        let (i, v) = (0..t.matrix.rows())
            .map(|i| (i, t.source.dual_norm(t.matrix.row(i).coords())))
            .fold((0, -1.0), |acc, c| if c.1 > acc.1 { c } else { acc });
        let w = Vector::from_vec(crate::norm::p_norming_vector(t.matrix.row(i).coords(), p));
        let w = onto_sphere(&t.source, &w);
        return Ok(finish(t, v, NormMethod::ClosedForm, w, Some(v), true, false, &opts, field));
    }

    let euclid = |n: &NormSpec| n.exponent() == Some(Exponent::Finite(2.0));
    let mut fallback = false;
    if euclid(&t.source) && euclid(&t.target) {
        match power_iteration(&t.matrix, field, &opts) {
            Some((sigma, v)) => {
                let w = onto_sphere(&t.source, &v);
                let ub = column_upper_bound(t);
                return Ok(finish(t, sigma, NormMethod::PowerIteration, w, Some(ub), true, false, &opts, field));
            }
            None => fallback = true,
        }
    }

    let (value, w, method) = multistart_ascent(t, field, &opts)?;
    let ub = column_upper_bound(t);
    Ok(finish(t, value, method, w, Some(ub), false, fallback, &opts, field))
}

/// ‖T‖ <= Σ_j ‖T e_j‖ · ‖e_j‖_dual, valid for every pair of norms.
fn column_upper_bound(t: &LinearOperator) -> f64 {
    let n = t.matrix.cols();
    (0..n)
        .map(|j| {
            let e = Vector::unit(n, j);
            t.target.eval_slice(t.matrix.column(j).coords()) * t.source.dual_norm(e.coords())
        })
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn finish(
    t: &LinearOperator,
    value: f64,
    method: NormMethod,
    witness: Vector,
    upper_bound: Option<f64>,
    certified: bool,
    fallback: bool,
    opts: &OperatorNormOptions,
    field: Field,
) -> OperatorNormResult {
    let certified_lower = t.gain(&witness);
    let value = value.max(certified_lower);
    let sphere = certified_lower;
    let mut rng = sampling::substream(opts.seed, 0xB0_11);
    let closed_ball = sampling::sample_unit_vectors_with(&t.source, 64, SampleMode::InBall, field, &mut rng)
        .map(|xs| xs.iter().map(|x| t.gain(x)).fold(sphere, f64::max))
        .unwrap_or(sphere);
    let open_ball = t.gain(&witness.scale_real(1.0 - 0.25 * opts.tol));
    let slack = opts.tol * value.max(1.0) * (1.0 + 1e-9);
    let agree = (closed_ball - sphere).abs() <= slack && (open_ball - sphere).abs() <= slack;
    OperatorNormResult {
        value,
        method,
        witness,
        certified_lower,
        upper_bound: upper_bound.map(|u| u.max(value)),
        certified,
        fallback,
        sup: SupVariants {
            closed_ball,
            sphere,
            open_ball,
            agree,
        },
    }
}

/// Largest singular value by power iteration on T*T. Returns None when the
/// iteration cap is reached first.
fn power_iteration(m: &Matrix, field: Field, opts: &OperatorNormOptions) -> Option<(f64, Vector)> {
    let adj = m.adjoint();
    let mut rng = sampling::substream(opts.seed, 0x50_57);
    let mut v = sampling::gaussian_vector(&mut rng, m.cols(), field);
    let nv = v.euclidean_norm();
    v = v.scale_real(1.0 / nv);
    let mut lambda_prev = f64::NAN;
    for _ in 0..opts.power_max_iter {
        let w = adj.mul_vec(&m.mul_vec(&v));
        let lambda: f64 = v.iter().zip(w.iter()).map(|(a, b)| (a.conj() * b).re).sum();
        let residual = w
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a - b * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let nw = w.euclidean_norm();
        if nw == 0.0 {
            return Some((0.0, v));
        }
        let converged = (lambda - lambda_prev).abs() <= opts.power_tol * lambda
            && residual <= 1e-7 * lambda;
        if converged {
            return Some((lambda.max(0.0).sqrt(), v));
        }
        lambda_prev = lambda;
        v = w.scale_real(1.0 / nw);
    }
    None
}

/// Best value over 16 starts of a dual-map fixed-point ascent followed by a
/// normalized-gradient polish, plus a sampled lower bound.
fn multistart_ascent(
    t: &LinearOperator,
    field: Field,
    opts: &OperatorNormOptions,
) -> Result<(f64, Vector, NormMethod)> {
    let n = t.matrix.cols();
    let mut rng = sampling::substream(opts.seed, 0xA5_CE);
    let samples = sampling::sample_unit_vectors_with(&t.source, opts.samples.max(1), SampleMode::OnSphere, field, &mut rng)?;
    let (mut best_sample, mut best_sample_val) = (samples[0].clone(), -1.0);
    for x in &samples {
        let g = t.gain(x);
        if g > best_sample_val {
            best_sample_val = g;
            best_sample = x.clone();
        }
    }

    let mut starts = vec![best_sample.clone()];
    let jmax = (0..n)
        .max_by(|&a, &b| {
            let ga = t.gain(&onto_sphere(&t.source, &Vector::unit(n, a)));
            let gb = t.gain(&onto_sphere(&t.source, &Vector::unit(n, b)));
            ga.total_cmp(&gb).then(b.cmp(&a))
        })
        .unwrap_or(0);
    starts.push(Vector::unit(n, jmax));
    while starts.len() < opts.starts.max(2) {
        starts.push(sampling::gaussian_vector(&mut rng, n, field));
    }

    let mut best: Option<(f64, Vector)> = None;
    for s in starts {
        if s.is_zero() {
            continue;
        }
        let x = onto_sphere(&t.source, &s);
        let x = dual_map_ascent(t, x, field, opts.tol);
        let x = gradient_polish(t, x, field, opts.tol);
        let v = t.gain(&x);
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, x));
        }
    }
    let (v, w) = best.expect("at least one start");
    if best_sample_val > v {
        Ok((best_sample_val, onto_sphere(&t.source, &best_sample), NormMethod::Sampling))
    } else {
        Ok((v, w, NormMethod::MultistartAscent))
    }
}

fn realify(x: Vec<Scalar>, field: Field) -> Vector {
    match field {
        Field::Real => Vector::from_vec(x.into_iter().map(|c| Scalar::new(c.re, 0.0)).collect()),
        Field::Complex => Vector::from_vec(x),
    }
}

/// x ← argmax_{‖x‖<=1} Re<T^t s, x> with s a dual vector of Tx. By convexity
/// of x ↦ ‖Tx‖ each step never decreases the gain.
fn dual_map_ascent(t: &LinearOperator, mut x: Vector, field: Field, tol: f64) -> Vector {
    let mut val = t.gain(&x);
    for _ in 0..500 {
        let s = t.target.subgradient(t.apply(&x).coords());
        let g = t.transpose_apply(&s);
        if g.iter().all(|c| c.norm() == 0.0) {
            break;
        }
        let cand = realify(t.source.norming_vector(&g), field);
        if cand.is_zero() {
            break;
        }
        let cand = onto_sphere(&t.source, &cand);
        let v = t.gain(&cand);
        if v <= val * (1.0 + 0.01 * tol) {
            if v > val {
                x = cand;
            }
            break;
        }
        x = cand;
        val = v;
    }
    x
}

fn to_params(x: &Vector, field: Field) -> Vec<f64> {
    match field {
        Field::Real => x.iter().map(|c| c.re).collect(),
        Field::Complex => x.iter().map(|c| c.re).chain(x.iter().map(|c| c.im)).collect(),
    }
}

fn from_params(u: &[f64], field: Field) -> Vector {
    match field {
        Field::Real => Vector::from_vec(u.iter().map(|&a| Scalar::new(a, 0.0)).collect()),
        Field::Complex => {
            let n = u.len() / 2;
            Vector::from_vec((0..n).map(|i| Scalar::new(u[i], u[n + i])).collect())
        }
    }
}

/// Normalized-gradient ascent of ‖Tx‖/‖x‖ with backtracking.
fn gradient_polish(t: &LinearOperator, x: Vector, field: Field, tol: f64) -> Vector {
    let ratio = |u: &[f64]| {
        let x = from_params(u, field);
        let d = t.source.eval_slice(x.coords());
        if d > 0.0 {
            t.gain(&x) / d
        } else {
            0.0
        }
    };
    let mut u = to_params(&x, field);
    let scale = u.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-300);
    let mut val = ratio(&u);
    let mut step = 0.1 * scale;
    for _ in 0..200 {
        let g = optim::fd_gradient(&ratio, &u);
        let gn = g.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !(gn > 0.0) {
            break;
        }
        let mut improved = false;
        while step > 1e-12 * scale {
            let cand: Vec<f64> = u.iter().zip(&g).map(|(a, b)| a + step * b / gn).collect();
            let v = ratio(&cand);
            if v > val {
                let gain = (v - val) / val.max(1e-300);
                u = cand;
                val = v;
                step *= 2.0;
                improved = gain >= tol;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    onto_sphere(&t.source, &from_params(&u, field))
}

/// A constant M with ‖Tx‖ <= M‖x‖ and the sampled points violating it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityCertificate {
    pub bound_m: f64,
    pub samples: usize,
    pub violation_count: usize,
    /// Up to ten violating vectors; empty when certified.
    pub violations: Vec<Vector>,
}

impl ContinuityCertificate {
    pub fn certified(&self) -> bool {
        self.violation_count == 0
    }
}

/// Relative slack for ‖Tx‖ <= M‖x‖ checks.
pub const BOUND_SLACK: f64 = 1e-9;

pub fn continuity_certificate(t: &LinearOperator, samples: usize, seed: u64) -> Result<ContinuityCertificate> {
    let m = operator_norm_with(
        t,
        OperatorNormOptions {
            seed,
            ..Default::default()
        },
    )?
    .value;
    Ok(check_bound(t, m, samples, seed))
}

/// Test ‖Tx‖ <= M‖x‖(1 + 1e−9) on `samples` stress vectors.
pub fn check_bound(t: &LinearOperator, m: f64, samples: usize, seed: u64) -> ContinuityCertificate {
    let field = t.field();
    let mut rng = sampling::substream(seed, 0xC0_47);
    let mut cert = ContinuityCertificate {
        bound_m: m,
        samples,
        violation_count: 0,
        violations: vec![],
    };
    for _ in 0..samples {
        let x = sampling::stress_vector(&mut rng, t.matrix.cols(), field);
        let lhs = t.gain(&x);
        let rhs = m * t.source.eval_slice(x.coords());
        if lhs > rhs * (1.0 + BOUND_SLACK) {
            cert.violation_count += 1;
            if cert.violations.len() < 10 {
                cert.violations.push(x);
            }
        }
    }
    cert
}

/// Relative tolerance for norm preservation in isometry tests.
pub const ISOMETRY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsometryReport {
    pub norm_preserved: bool,
    pub distances_preserved: bool,
    pub rank: usize,
    pub injective: bool,
    /// Present when the map preserved norms on every sample.
    pub operator_norm: Option<f64>,
    pub norm_is_one: Option<bool>,
    pub counterexample: Option<Vector>,
    pub samples: usize,
}

impl IsometryReport {
    pub fn is_isometry(&self) -> bool {
        self.norm_preserved && self.distances_preserved
    }
}

pub fn isometry_test(t: &LinearOperator, samples: usize, seed: u64) -> Result<IsometryReport> {
    let n = t.matrix.cols();
    let field = t.field();
    let close = |a: f64, b: f64| (a - b).abs() <= ISOMETRY_TOL * a.abs().max(b.abs()).max(1.0);

    let mut candidates: Vec<Vector> = (0..n).map(|j| Vector::unit(n, j)).collect();
    candidates.extend(sampling::sample_unit_vectors(&t.source, samples, SampleMode::OnSphere, field, seed)?);
    let counterexample = candidates
        .iter()
        .find(|x| !close(t.gain(x), t.source.eval_slice(x.coords())))
        .cloned();
    let norm_preserved = counterexample.is_none();

    let mut rng = sampling::substream(seed, 0x15_0D);
    let mut distances_preserved = true;
    let mut dist_counter = None;
    for _ in 0..samples {
        let x = sampling::stress_vector(&mut rng, n, field);
        let y = sampling::stress_vector(&mut rng, n, field);
        let d_src = t.source.eval_slice((&x - &y).coords());
        let d_tgt = t.target.eval_slice((&t.apply(&x) - &t.apply(&y)).coords());
        if (d_src - d_tgt).abs() > ISOMETRY_TOL * d_src.max(1.0) {
            distances_preserved = false;
            dist_counter = Some(&x - &y);
            break;
        }
    }

    let rank = t.matrix.rank();
    let (operator_norm, norm_is_one) = if norm_preserved {
        let v = operator_norm_with(
            t,
            OperatorNormOptions {
                seed,
                ..Default::default()
            },
        )?
        .value;
        (Some(v), Some((v - 1.0).abs() <= 1e-8))
    } else {
        (None, None)
    };
    Ok(IsometryReport {
        norm_preserved,
        distances_preserved,
        rank,
        injective: rank == n,
        operator_norm,
        norm_is_one,
        counterexample: counterexample.or(dist_counter),
        samples,
    })
}

/// Random gains ‖Tx‖ for x in the unit ball, used by the sup-variant checks.
pub fn sampled_gains(t: &LinearOperator, count: usize, mode: SampleMode, rng: &mut impl Rng) -> Result<Vec<f64>> {
    Ok(sampling::sample_unit_vectors_with(&t.source, count, mode, t.field(), rng)?
        .iter()
        .map(|x| t.gain(x))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(rows: &[Vec<f64>], p: f64, q: f64) -> LinearOperator {
        let m = Matrix::from_real_rows(rows).unwrap();
        let (r, c) = (m.rows(), m.cols());
        LinearOperator::new(m, NormSpec::p(p, c).unwrap(), NormSpec::p(q, r).unwrap()).unwrap()
    }

    #[test]
    fn identity_has_norm_one() {
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let t = LinearOperator::identity(NormSpec::p(p, 3).unwrap());
            let r = operator_norm(&t, 1e-8).unwrap();
            assert!((r.value - 1.0).abs() < 1e-8, "p={p}: {r:?}");
            assert!(r.sup.agree, "p={p}: {:?}", r.sup);
        }
    }

    #[test]
    fn l1_to_l1_is_max_column_sum() {
        let t = op(&[vec![1.0, 2.0], vec![3.0, 4.0]], 1.0, 1.0);
        let r = operator_norm(&t, 1e-8).unwrap();
        assert_eq!(r.method, NormMethod::ClosedForm);
        assert_eq!(r.value, 6.0);
        assert_eq!(r.witness, Vector::unit(2, 1));
        // sampling cross-check never exceeds the closed form
        let mut rng = sampling::rng(5);
        let gains = sampled_gains(&t, 10_000, SampleMode::OnSphere, &mut rng).unwrap();
        let m = gains.iter().cloned().fold(0.0, f64::max);
        assert!(m <= 6.0 + 1e-12 && m > 5.5);
    }

    #[test]
    fn diagonal_spectral_norm() {
        let t = op(&[vec![2.0, 0.0], vec![0.0, 3.0]], 2.0, 2.0);
        let r = operator_norm(&t, 1e-10).unwrap();
        assert_eq!(r.method, NormMethod::PowerIteration);
        assert!((r.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn row_formula_for_sup_target() {
        // ‖T‖_{2→∞} = max row ℓ2 norm
        let t = op(&[vec![3.0, 4.0], vec![1.0, 1.0]], 2.0, f64::INFINITY);
        let r = operator_norm(&t, 1e-8).unwrap();
        assert_eq!(r.method, NormMethod::ClosedForm);
        assert!((r.value - 5.0).abs() < 1e-12);
        assert!((r.certified_lower - 5.0).abs() < 1e-12);
    }

    #[test]
    fn general_pair_by_ascent() {
        // |x1 + x2| + |x1 - x2| = 2 max(|x1|, |x2|)
        let t = op(&[vec![1.0, 1.0], vec![1.0, -1.0]], f64::INFINITY, 1.0);
        let r = operator_norm(&t, 1e-10).unwrap();
        assert!(!r.certified);
        assert!((r.value - 2.0).abs() < 1e-8, "{r:?}");
        // 3 → 1.5 on a random-ish matrix agrees with dense sampling from below
        let t = op(&[vec![1.0, -2.0, 0.5], vec![0.3, 0.7, -1.1]], 3.0, 1.5);
        let r = operator_norm(&t, 1e-10).unwrap();
        let mut rng = sampling::rng(9);
        let gains = sampled_gains(&t, 20_000, SampleMode::OnSphere, &mut rng).unwrap();
        let m = gains.iter().cloned().fold(0.0, f64::max);
        assert!(r.value >= m * (1.0 - 1e-12), "{} < {m}", r.value);
        assert!(r.value <= m * 1.01);
        assert!(r.upper_bound.unwrap() >= r.value);
    }

    #[test]
    fn witness_invariants() {
        let t = op(&[vec![1.0, -2.0, 0.5], vec![0.3, 0.7, -1.1]], 1.5, 3.0);
        let r = operator_norm(&t, 1e-8).unwrap();
        let wn = t.source().eval(&r.witness).unwrap();
        assert!(wn <= 1.0 && wn >= 1.0 - 1e-9);
        assert!(r.certified_lower <= r.value);
        assert!(t.gain(&r.witness) >= r.certified_lower);
    }

    #[test]
    fn zero_operator_has_bound_zero() {
        let t = op(&[vec![0.0, 0.0], vec![0.0, 0.0]], 2.0, 2.0);
        let c = continuity_certificate(&t, 1000, 1).unwrap();
        assert_eq!(c.bound_m, 0.0);
        assert!(c.certified());
    }

    #[test]
    fn identity_continuity_bound() {
        let t = LinearOperator::identity(NormSpec::p(3.0, 4).unwrap());
        let c = continuity_certificate(&t, 2000, 2).unwrap();
        assert!((c.bound_m - 1.0).abs() < 1e-8);
        assert!(c.certified());
    }

    #[test]
    fn understated_bound_is_caught() {
        let t = op(&[vec![2.0, 0.0], vec![0.0, 1.0]], 2.0, 2.0);
        let c = check_bound(&t, 1.5, 1000, 3);
        assert!(!c.certified());
        assert!(!c.violations.is_empty());
    }

    #[test]
    fn permutation_is_isometry() {
        for p in [1.0, 2.0, 3.0, f64::INFINITY] {
            let t = op(&[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]], p, p);
            let r = isometry_test(&t, 500, 1).unwrap();
            assert!(r.is_isometry() && r.injective, "p={p}");
            assert_eq!(r.norm_is_one, Some(true));
        }
    }

    #[test]
    fn stretch_is_not_isometry() {
        let t = op(&[vec![2.0, 0.0], vec![0.0, 1.0]], 2.0, 2.0);
        let r = isometry_test(&t, 100, 1).unwrap();
        assert!(!r.is_isometry());
        assert_eq!(r.counterexample, Some(Vector::unit(2, 0)));
    }

    #[test]
    fn rotation_is_isometry() {
        let (c, s) = (0.7f64.cos(), 0.7f64.sin());
        let t = op(&[vec![c, -s], vec![s, c]], 2.0, 2.0);
        let r = isometry_test(&t, 1000, 2).unwrap();
        assert!(r.is_isometry());
        assert!(r.injective);
        let v = r.operator_norm.unwrap();
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn complex_operator_uses_complex_search() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::new(0.0, 1.0), Scalar::new(1.0, 0.0)],
            vec![Scalar::new(1.0, 0.0), Scalar::new(0.0, -1.0)],
        ])
        .unwrap();
        let t = LinearOperator::new(m.clone(), NormSpec::p(3.0, 2).unwrap(), NormSpec::p(3.0, 2).unwrap()).unwrap();
        assert_eq!(t.field(), Field::Complex);
        let r = operator_norm(&t, 1e-10).unwrap();
        let mut rng = sampling::rng(1);
        let gains = sampled_gains(&t, 20_000, SampleMode::OnSphere, &mut rng).unwrap();
        let best = gains.iter().cloned().fold(0.0, f64::max);
        assert!(r.value >= best * (1.0 - 1e-12));
    }

    #[test]
    fn dimension_checks() {
        let m = Matrix::from_real_rows(&[vec![1.0, 2.0]]).unwrap();
        assert!(LinearOperator::new(m, NormSpec::euclidean(3), NormSpec::euclidean(1)).is_err());
    }

    #[test]
    fn json_operator() {
        let s = r#"{"matrix":[[1,2],[3,4]],"source":{"kind":"p","p":1,"dim":2},"target":{"kind":"p","p":1,"dim":2}}"#;
        let t: LinearOperator = serde_json::from_str(s).unwrap();
        assert_eq!(operator_norm(&t, 1e-8).unwrap().value, 6.0);
        let bad = r#"{"matrix":[[1,2]],"source":{"kind":"p","p":1,"dim":3},"target":{"kind":"p","p":1,"dim":1}}"#;
        assert!(serde_json::from_str::<LinearOperator>(bad).is_err());
    }
}
