//! Norm specifications on K^n.
//!
//! A [`NormSpec`] is a p-norm, the max-coordinate norm attached to a basis,
//! a user-supplied evaluator, or the dual of another norm. Besides evaluation
//! every norm can produce a subgradient (a dual vector attaining the norm) and
//! a norming vector for a functional; these two primitives drive operator
//! norms, functional norms and the extension machinery.
//!
//! Pairings are bilinear, `<g, x> = Σ g_i x_i`, so the dual of the p-norm is
//! the conjugate-exponent norm on the same coordinates.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::optim::{self, EllipsoidOptions, Growth};
use crate::sampling;
use crate::space::{phase, Field, Scalar, Vector};

/// An exponent p in [1, ∞].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn is_one(self) -> bool {
        self == Exponent::Finite(1.0)
    }

    pub fn is_infinite(self) -> bool {
        self == Exponent::Infinity
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentRepr {
    Number(f64),
    Word(String),
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => ExponentRepr::Number(*p),
            Exponent::Infinity => ExponentRepr::Word("inf".into()),
        }
        .serialize(s)
    }
}

impl ExponentRepr {
    /// The raw value, `inf` mapped to +∞; no admissibility check.
    pub fn raw(&self) -> Result<f64> {
        match self {
            ExponentRepr::Number(p) => Ok(*p),
            ExponentRepr::Word(w) if matches!(w.as_str(), "inf" | "infinity" | "Infinity") => {
                Ok(f64::INFINITY)
            }
            ExponentRepr::Word(w) => Err(Error::InvalidInput(format!("bad exponent {w:?}"))),
        }
    }
}

impl From<Exponent> for ExponentRepr {
    fn from(p: Exponent) -> Self {
        match p {
            Exponent::Finite(p) => ExponentRepr::Number(p),
            Exponent::Infinity => ExponentRepr::Word("inf".into()),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ExponentRepr::deserialize(d)?
            .raw()
            .map_err(serde::de::Error::custom)?;
        Exponent::new(raw).map_err(serde::de::Error::custom)
    }
}

/// ‖z‖_p with closed forms at 1, 2, ∞ and a max-scaled power sum otherwise.
pub fn p_norm(z: &[Scalar], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => z.iter().map(|c| c.norm()).fold(0.0, f64::max),
        Exponent::Finite(p) if p == 1.0 => z.iter().map(|c| c.norm()).sum(),
        Exponent::Finite(p) if p == 2.0 => z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt(),
        Exponent::Finite(p) => {
            let m = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if m == 0.0 || !m.is_finite() {
                return m;
            }
            let s: f64 = z.iter().map(|c| (c.norm() / m).powf(p)).sum();
            m * s.powf(1.0 / p)
        }
    }
}

/// Σ |z_i|^p (p finite).
pub fn power_sum(z: &[Scalar], p: f64) -> f64 {
    z.iter().map(|c| c.norm().powf(p)).sum()
}

/// x with ‖x‖_p = 1 and <g, x> = ‖g‖_{p*} (real, nonnegative); for g = 0
/// returns e_1.
pub fn p_norming_vector(g: &[Scalar], p: Exponent) -> Vec<Scalar> {
    let n = g.len();
    let zero = Scalar::new(0.0, 0.0);
    let m = g.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        let mut x = vec![zero; n];
        x[0] = Scalar::new(1.0, 0.0);
        return x;
    }
    let q = p.conjugate();
    match p {
        Exponent::Finite(p1) if p1 == 1.0 => {
            let k = argmax_modulus(g);
            let mut x = vec![zero; n];
            x[k] = phase(g[k]).conj();
            x
        }
        Exponent::Infinity => g
            .iter()
            .map(|&c| if c.norm() == 0.0 { zero } else { phase(c).conj() })
            .collect(),
        Exponent::Finite(_) => {
            let qv = q.value();
            // scale by max modulus so |g_i|^{q-1} neither over- nor underflows
            let raw: Vec<Scalar> = g
                .iter()
                .map(|&c| phase(c).conj() * (c.norm() / m).powf(qv - 1.0))
                .collect();
            let nrm = p_norm(&raw, p);
            raw.into_iter().map(|c| c / nrm).collect()
        }
    }
}

fn argmax_modulus(z: &[Scalar]) -> usize {
    let mut k = 0;
    let mut best = -1.0;
    for (i, c) in z.iter().enumerate() {
        let r = c.norm();
        if r > best {
            best = r;
            k = i;
        }
    }
    k
}

/// The basis-zero norm: max modulus of coordinates in a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroBasis {
    basis: Vec<Vector>,
    inverse: Matrix,
}

impl ZeroBasis {
    pub fn new(basis: Vec<Vector>) -> Result<Self> {
        let n = basis.first().map(Vector::dim).ok_or(Error::SingularBasis)?;
        if basis.len() != n {
            return Err(Error::SingularBasis);
        }
        let m = Matrix::from_columns(&basis)?;
        let inverse = m.inverse()?;
        Ok(ZeroBasis { basis, inverse })
    }

    pub fn standard(n: usize) -> Self {
        ZeroBasis {
            basis: (0..n).map(|i| Vector::unit(n, i)).collect(),
            inverse: Matrix::identity(n),
        }
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates α with x = Σ α_i basis_i.
    pub fn coordinates(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_vec(&Vector::from_vec(x.to_vec())).into_coords()
    }

    fn is_real(&self) -> bool {
        self.basis.iter().all(Vector::is_real)
    }
}

type Evaluator = dyn Fn(&[Scalar]) -> f64 + Send + Sync;

/// A user-supplied evaluator, optionally one of the named built-ins that can
/// round-trip through JSON.
#[derive(Clone)]
pub struct CustomNorm {
    name: String,
    param: Option<f64>,
    eval: Arc<Evaluator>,
}

impl CustomNorm {
    pub fn new(name: impl Into<String>, f: impl Fn(&[Scalar]) -> f64 + Send + Sync + 'static) -> Self {
        CustomNorm {
            name: name.into(),
            param: None,
            eval: Arc::new(f),
        }
    }

    /// Named evaluators available from JSON:
    /// `first-coordinate` (Re x_1, not a norm), `quasi` ((Σ|x_i|^p)^{1/p} for
    /// any p > 0, a norm only for p >= 1), `squared-euclidean` (Σ|x_i|^2, not
    /// a norm), `l1-plus-linf` (‖x‖_1 + ‖x‖_∞, a norm).
    pub fn named(name: &str, param: Option<f64>) -> Result<Self> {
        let f: Arc<Evaluator> = match name {
            "first-coordinate" => Arc::new(|x: &[Scalar]| x[0].re),
            "squared-euclidean" => Arc::new(|x: &[Scalar]| x.iter().map(|c| c.norm_sqr()).sum()),
            "l1-plus-linf" => Arc::new(|x: &[Scalar]| {
                p_norm(x, Exponent::Finite(1.0)) + p_norm(x, Exponent::Infinity)
            }),
            "quasi" => {
                let p = param.ok_or_else(|| Error::InvalidInput("quasi needs \"p\"".into()))?;
                if !(p > 0.0 && p.is_finite()) {
                    return Err(Error::InvalidInput(format!("quasi exponent {p} must be > 0")));
                }
                Arc::new(move |x: &[Scalar]| power_sum(x, p).powf(1.0 / p))
            }
            other => return Err(Error::InvalidInput(format!("unknown custom norm {other:?}"))),
        };
        Ok(CustomNorm {
            name: name.to_string(),
            param,
            eval: f,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CustomNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomNorm({:?})", self.name)
    }
}

impl PartialEq for CustomNorm {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.param == other.param && Arc::ptr_eq(&self.eval, &other.eval)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    P(Exponent),
    Zero(ZeroBasis),
    Custom(CustomNorm),
    /// The dual norm of `inner` under the bilinear pairing.
    Dual(Box<NormSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    kind: NormKind,
    dim: usize,
}

impl NormSpec {
    pub fn p(p: f64, dim: usize) -> Result<Self> {
        Self::with_exponent(Exponent::new(p)?, dim)
    }

    pub fn with_exponent(p: Exponent, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(NormSpec {
            kind: NormKind::P(p),
            dim,
        })
    }

    pub fn sup(dim: usize) -> Self {
        NormSpec {
            kind: NormKind::P(Exponent::Infinity),
            dim: dim.max(1),
        }
    }

    pub fn euclidean(dim: usize) -> Self {
        NormSpec {
            kind: NormKind::P(Exponent::Finite(2.0)),
            dim: dim.max(1),
        }
    }

    /// ‖x‖_0 = max |α_i| where x = Σ α_i basis_i.
    pub fn zero(basis: Vec<Vector>) -> Result<Self> {
        let z = ZeroBasis::new(basis)?;
        let dim = z.basis.len();
        Ok(NormSpec {
            kind: NormKind::Zero(z),
            dim,
        })
    }

    pub fn zero_standard(dim: usize) -> Self {
        NormSpec {
            kind: NormKind::Zero(ZeroBasis::standard(dim.max(1))),
            dim: dim.max(1),
        }
    }

    pub fn custom(
        name: impl Into<String>,
        dim: usize,
        f: impl Fn(&[Scalar]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        NormSpec {
            kind: NormKind::Custom(CustomNorm::new(name, f)),
            dim: dim.max(1),
        }
    }

    pub fn named_custom(name: &str, param: Option<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(NormSpec {
            kind: NormKind::Custom(CustomNorm::named(name, param)?),
            dim,
        })
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The exponent p when this is a p-norm, including the dual of a
    /// p-norm recorded as such.
    pub fn exponent(&self) -> Option<Exponent> {
        match &self.kind {
            NormKind::P(p) => Some(*p),
            NormKind::Dual(inner) => match inner.kind {
                NormKind::P(p) => Some(p.conjugate()),
                _ => None,
            },
            _ => None,
        }
    }

    /// The same norm on K^dim for a different dimension (p-norms only).
    pub fn resized(&self, dim: usize) -> Option<NormSpec> {
        match self.kind {
            NormKind::P(p) => NormSpec::with_exponent(p, dim).ok(),
            _ => None,
        }
    }

    /// Whether [`NormSpec::dual_norm`] is evaluated in closed form rather
    /// than by numerical minimization.
    pub fn has_closed_form_dual(&self) -> bool {
        !matches!(self.kind, NormKind::Custom(_))
    }

    /// True when every datum defining the norm is real.
    pub fn is_real(&self) -> bool {
        match &self.kind {
            NormKind::P(_) | NormKind::Custom(_) => true,
            NormKind::Zero(z) => z.is_real(),
            NormKind::Dual(inner) => inner.is_real(),
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        x.check_dim(self.dim)?;
        Ok(self.eval_slice(x.coords()))
    }

    pub fn eval_slice(&self, x: &[Scalar]) -> f64 {
        match &self.kind {
            NormKind::P(p) => p_norm(x, *p),
            NormKind::Zero(z) => p_norm(&z.coordinates(x), Exponent::Infinity),
            NormKind::Custom(c) => (c.eval)(x),
            NormKind::Dual(inner) => inner.dual_norm(x),
        }
    }

    /// The dual norm, normalized so that dual(dual(N)) = N.
    pub fn dual(&self) -> NormSpec {
        match &self.kind {
            NormKind::P(p) => NormSpec {
                kind: NormKind::P(p.conjugate()),
                dim: self.dim,
            },
            NormKind::Dual(inner) => (**inner).clone(),
            _ => NormSpec {
                kind: NormKind::Dual(Box::new(self.clone())),
                dim: self.dim,
            },
        }
    }

    /// The dual norm recorded as such, so that [`NormSpec::predual`] recovers
    /// `self` exactly.
    pub fn dual_marked(&self) -> NormSpec {
        NormSpec {
            kind: NormKind::Dual(Box::new(self.clone())),
            dim: self.dim,
        }
    }

    /// The norm whose dual this is, when that is recorded.
    pub fn predual(&self) -> Option<NormSpec> {
        match &self.kind {
            NormKind::P(p) => Some(NormSpec {
                kind: NormKind::P(p.conjugate()),
                dim: self.dim,
            }),
            NormKind::Dual(inner) => Some((**inner).clone()),
            _ => None,
        }
    }

    /// sup { |<g, x>| : ‖x‖ <= 1 }.
    pub fn dual_norm(&self, g: &[Scalar]) -> f64 {
        match &self.kind {
            NormKind::P(p) => p_norm(g, p.conjugate()),
            NormKind::Zero(z) => z
                .basis
                .iter()
                .map(|b| b.iter().zip(g).map(|(a, c)| a * c).sum::<Scalar>().norm())
                .sum(),
            NormKind::Custom(_) => numeric_dual(self, g).0,
            NormKind::Dual(inner) => inner.eval_slice(g),
        }
    }

    /// A vector x with ‖x‖ = 1 and <g, x> = dual_norm(g) (up to solver
    /// accuracy for custom norms).
    pub fn norming_vector(&self, g: &[Scalar]) -> Vec<Scalar> {
        let n = g.len();
        if g.iter().all(|c| c.norm() == 0.0) {
            let mut e = vec![Scalar::new(0.0, 0.0); n];
            e[0] = Scalar::new(1.0, 0.0);
            let s = self.eval_slice(&e);
            return e.into_iter().map(|c| c / s).collect();
        }
        match &self.kind {
            NormKind::P(p) => p_norming_vector(g, *p),
            NormKind::Zero(z) => {
                let u: Vec<Scalar> = z
                    .basis
                    .iter()
                    .map(|b| phase(b.iter().zip(g).map(|(a, c)| a * c).sum::<Scalar>()).conj())
                    .collect();
                (0..n)
                    .map(|i| z.basis.iter().zip(&u).map(|(b, uj)| b[i] * uj).sum())
                    .collect()
            }
            NormKind::Custom(_) => numeric_dual(self, g).1,
            NormKind::Dual(inner) => inner.subgradient(g),
        }
    }

    /// A dual vector s with Re <s, y> = ‖y‖ and dual_norm(s) <= 1.
    pub fn subgradient(&self, y: &[Scalar]) -> Vec<Scalar> {
        let n = y.len();
        if y.iter().all(|c| c.norm() == 0.0) {
            return vec![Scalar::new(0.0, 0.0); n];
        }
        match &self.kind {
            NormKind::P(p) => p_norming_vector(y, p.conjugate()),
            NormKind::Zero(z) => {
                let alpha = z.coordinates(y);
                let k = argmax_modulus(&alpha);
                let ph = phase(alpha[k]).conj();
                (0..n).map(|i| ph * z.inverse[(k, i)]).collect()
            }
            NormKind::Custom(c) => {
                let f = |u: &[f64]| {
                    let z: Vec<Scalar> = (0..n).map(|i| Scalar::new(u[i], u[n + i])).collect();
                    (c.eval)(&z)
                };
                let mut u: Vec<f64> = y.iter().map(|c| c.re).collect();
                u.extend(y.iter().map(|c| c.im));
                let g = optim::fd_gradient(&f, &u);
                (0..n).map(|i| Scalar::new(g[i], -g[n + i])).collect()
            }
            NormKind::Dual(inner) => inner.norming_vector(y),
        }
    }
}

/// Real parameters z ↦ x0 + Σ z_k d_k, minimizing ‖·‖ over the affine set.
pub(crate) struct AffineMin {
    pub value: f64,
    pub point: Vec<Scalar>,
    pub lower_bound: f64,
}

pub(crate) fn min_norm_affine(
    norm: &NormSpec,
    x0: &[Scalar],
    dirs: &[Vec<Scalar>],
    tol: f64,
) -> AffineMin {
    let n = x0.len();
    let point = |z: &[f64]| -> Vec<Scalar> {
        let mut x = x0.to_vec();
        for (zk, d) in z.iter().zip(dirs) {
            for i in 0..n {
                x[i] += d[i] * *zk;
            }
        }
        x
    };
    let objective = |z: &[f64]| {
        let x = point(z);
        let v = norm.eval_slice(&x);
        let s = norm.subgradient(&x);
        let g = dirs
            .iter()
            .map(|d| s.iter().zip(d).map(|(a, b)| a * b).sum::<Scalar>().re)
            .collect();
        (v, g)
    };
    let scale = norm.eval_slice(x0).max(1e-300);
    let start = x0.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-12) * 2.0;
    let opts = EllipsoidOptions {
        tol: tol * scale,
        ..Default::default()
    };
    let m = optim::minimize_unbounded(&objective, dirs.len(), start, opts, Growth::UntilInterior);
    AffineMin {
        value: m.value,
        point: point(&m.point),
        lower_bound: m.lower_bound,
    }
}

/// Orthonormal basis (in R^dim) of the complement of span(rows).
pub(crate) fn orthonormal_complement(rows: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::new();
    let gs = |v: &mut Vec<f64>, q: &[Vec<f64>]| {
        for _ in 0..2 {
            for b in q {
                let c: f64 = v.iter().zip(b).map(|(a, b)| a * b).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        v.iter().map(|a| a * a).sum::<f64>().sqrt()
    };
    for r in rows {
        let mut v = r.clone();
        let nv = gs(&mut v, &q);
        if nv > 1e-12 {
            q.push(v.into_iter().map(|a| a / nv).collect());
        }
    }
    let start = q.len();
    let mut cands: Vec<(usize, f64)> = (0..dim)
        .map(|i| {
            let mut v = vec![0.0; dim];
            v[i] = 1.0;
            (i, gs(&mut v, &q))
        })
        .collect();
    cands.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    for (i, _) in cands {
        if q.len() == dim {
            break;
        }
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        let nv = gs(&mut v, &q);
        if nv > 1e-8 {
            q.push(v.into_iter().map(|a| a / nv).collect());
        }
    }
    q.split_off(start)
}

/// Dual norm and norming vector through 1 / min { ‖x‖ : <g, x> = 1 }.
/// Real g is searched over real x.
fn numeric_dual(norm: &NormSpec, g: &[Scalar]) -> (f64, Vec<Scalar>) {
    let n = g.len();
    let gsq: f64 = g.iter().map(|c| c.norm_sqr()).sum();
    let x0: Vec<Scalar> = g.iter().map(|c| c.conj() / gsq).collect();
    let real = g.iter().all(|c| c.im == 0.0);
    let dirs: Vec<Vec<Scalar>> = if real {
        let row: Vec<f64> = g.iter().map(|c| c.re).collect();
        orthonormal_complement(&[row], n)
            .into_iter()
            .map(|v| v.into_iter().map(|a| Scalar::new(a, 0.0)).collect())
            .collect()
    } else {
        // x = u + i v; Re<g,x> and Im<g,x> as rows over (u, v)
        let re_row: Vec<f64> = g.iter().map(|c| c.re).chain(g.iter().map(|c| -c.im)).collect();
        let im_row: Vec<f64> = g.iter().map(|c| c.im).chain(g.iter().map(|c| c.re)).collect();
        orthonormal_complement(&[re_row, im_row], 2 * n)
            .into_iter()
            .map(|v| (0..n).map(|i| Scalar::new(v[i], v[n + i])).collect())
            .collect()
    };
    let m = min_norm_affine(norm, &x0, &dirs, 1e-12);
    let value = 1.0 / m.value;
    let x = m.point.into_iter().map(|c| c * value).collect();
    (value, x)
}

/// Wire format: `{"kind":"p"|"zero"|"custom"|"dual", "p":number|"inf", "dim":n}`
/// plus `basis` for zero norms, `name` for custom norms, `inner` for duals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormSpecRepr {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<ExponentRepr>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<NormSpecRepr>>,
}

impl TryFrom<NormSpecRepr> for NormSpec {
    type Error = Error;

    fn try_from(r: NormSpecRepr) -> Result<Self> {
        let spec = match r.kind.as_str() {
            "p" => NormSpec::p(
                r.p.ok_or_else(|| Error::InvalidInput("p-norm needs \"p\"".into()))?
                    .raw()?,
                r.dim,
            )?,
            "zero" => match r.basis {
                Some(b) => NormSpec::zero(b)?,
                None => NormSpec::zero_standard(r.dim),
            },
            "custom" => {
                let name = r
                    .name
                    .ok_or_else(|| Error::InvalidInput("custom norm needs \"name\"".into()))?;
                // quasi norms read their exponent from "p" when given there
                let param = match (r.param, &r.p) {
                    (Some(v), _) => Some(v),
                    (None, Some(p)) => Some(p.raw()?),
                    (None, None) => None,
                };
                NormSpec::named_custom(&name, param, r.dim)?
            }
            "dual" => {
                let inner: NormSpec = (*r
                    .inner
                    .ok_or_else(|| Error::InvalidInput("dual norm needs \"inner\"".into()))?)
                .try_into()?;
                inner.dual_marked()
            }
            k => return Err(Error::InvalidInput(format!("unknown norm kind {k:?}"))),
        };
        if spec.dim != r.dim {
            return Err(Error::DimensionMismatch {
                expected: r.dim,
                found: spec.dim,
            });
        }
        Ok(spec)
    }
}

impl From<&NormSpec> for NormSpecRepr {
    fn from(n: &NormSpec) -> Self {
        let mut r = NormSpecRepr {
            kind: String::new(),
            p: None,
            dim: n.dim,
            basis: None,
            name: None,
            param: None,
            inner: None,
        };
        match &n.kind {
            NormKind::P(p) => {
                r.kind = "p".into();
                r.p = Some((*p).into());
            }
            NormKind::Zero(z) => {
                r.kind = "zero".into();
                r.basis = Some(z.basis.clone());
            }
            NormKind::Custom(c) => {
                r.kind = "custom".into();
                r.name = Some(c.name.clone());
                r.param = c.param;
            }
            NormKind::Dual(inner) => {
                r.kind = "dual".into();
                r.inner = Some(Box::new(NormSpecRepr::from(&**inner)));
            }
        }
        r
    }
}

impl Serialize for NormSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NormSpecRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        NormSpecRepr::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

/// Checks a norm value produced on a nonzero vector.
pub(crate) fn validate_positive(norm: &NormSpec, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidNorm(format!(
            "evaluator {:?} returned {v} on a nonzero vector",
            NormSpecRepr::from(norm).kind
        )))
    }
}

/// Outcome of one axiom over all samples.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AxiomOutcome {
    pub checked: usize,
    pub violations: usize,
    /// Up to five counterexample vectors (for the triangle axiom, x then y).
    pub examples: Vec<Vector>,
}

impl AxiomOutcome {
    fn record(&mut self, ok: bool, witnesses: &[&Vector]) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.extend(witnesses.iter().map(|v| (*v).clone()));
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub nonnegativity: AxiomOutcome,
    pub definiteness: AxiomOutcome,
    pub homogeneity: AxiomOutcome,
    pub triangle: AxiomOutcome,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.nonnegativity.holds()
            && self.definiteness.holds()
            && self.homogeneity.holds()
            && self.triangle.holds()
    }
}

/// Relative tolerance for algebraic identities (homogeneity, triangle).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Property-fuzz the norm axioms. Built-in norms are exercised on complex
/// samples with complex scalars; custom evaluators on real samples.
pub fn check_norm_axioms(norm: &NormSpec, samples: usize, seed: u64) -> AxiomReport {
    let field = if matches!(norm.kind, NormKind::Custom(_)) {
        Field::Real
    } else {
        Field::Complex
    };
    let mut rng = sampling::rng(seed);
    let n = norm.dim;
    let mut rep = AxiomReport {
        samples,
        nonnegativity: AxiomOutcome::default(),
        definiteness: AxiomOutcome::default(),
        homogeneity: AxiomOutcome::default(),
        triangle: AxiomOutcome::default(),
    };
    let zero = Vector::zeros(n);
    let z0 = norm.eval_slice(zero.coords());
    rep.definiteness.record(z0 == 0.0, &[&zero]);
    for _ in 0..samples {
        let x = sampling::stress_vector(&mut rng, n, field);
        let y = sampling::stress_vector(&mut rng, n, field);
        let alpha = sampling::stress_scalar(&mut rng, field);
        let nx = norm.eval_slice(x.coords());
        let ny = norm.eval_slice(y.coords());
        rep.nonnegativity.record(nx >= 0.0 && !nx.is_nan(), &[&x]);
        if !x.is_zero() {
            rep.definiteness.record(nx > 0.0, &[&x]);
        }
        let nax = norm.eval_slice(x.scale(alpha).coords());
        let expect = alpha.norm() * nx;
        let ok = (nax - expect).abs() <= ALGEBRAIC_TOL * expect.abs().max(nax.abs()) + f64::MIN_POSITIVE;
        rep.homogeneity.record(ok, &[&x]);
        let nxy = norm.eval_slice((&x + &y).coords());
        rep.triangle
            .record(nxy <= (nx + ny) * (1.0 + ALGEBRAIC_TOL) + f64::MIN_POSITIVE, &[&x, &y]);
    }
    rep
}
