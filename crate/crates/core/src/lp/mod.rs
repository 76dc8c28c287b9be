//! Truncated ℓ^p sequences with certified tail bounds, the Hölder and
//! Minkowski inequalities, the ℓ^q–(ℓ^p)′ pairing and ℓ² Cauchy limits.

mod cauchy;
mod dual;
mod inequalities;

pub use cauchy::{cauchy_limit, LimitReport};
pub use dual::{dual_apply, dual_norm, norming_witness, DualFunctional, DualNormReport, DualValue, NormingWitness};
pub use inequalities::{holder_pairing, minkowski_verify, ConjugatePair, InequalityReport, PairingReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::{p_norm, Exponent, ExponentRepr};
use crate::space::{serde_scalars, Scalar};

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Closed-form generators whose ℓ^p tails have analytic bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// ξ_j = j^{−s}, j ≥ 1.
    InversePower(f64),
    /// ξ_j = r^j, j ≥ 1, |r| < 1.
    Geometric(f64),
}

impl Generator {
    pub fn term(&self, j: usize) -> f64 {
        match *self {
            Generator::InversePower(s) => (j as f64).powf(-s),
            Generator::Geometric(r) => r.powi(j as i32),
        }
    }

    /// Upper bound on ‖(ξ_j)_{j>n}‖_p.
    pub fn tail_bound(&self, n: usize, p: Exponent) -> Result<f64> {
        let nf = n as f64;
        let bound = match (*self, p) {
            (Generator::InversePower(s), Exponent::Infinity) => (nf + 1.0).powf(-s),
            (Generator::InversePower(s), Exponent::Finite(p)) => {
                let e = s * p;
                if e <= 1.0 {
                    return Err(Error::InvalidInput(format!("1/j^{s} is not in l^{p}")));
                }
                if n == 0 {
                    // Σ_{j≥1} j^{−e} ≤ 1 + 1/(e − 1)
                    (1.0 + 1.0 / (e - 1.0)).powf(1.0 / p)
                } else {
                    // Σ_{j>n} j^{−e} ≤ ∫_n^∞ t^{−e} dt
                    (nf.powf(1.0 - e) / (e - 1.0)).powf(1.0 / p)
                }
            }
            (Generator::Geometric(r), Exponent::Infinity) => r.abs().powf(nf + 1.0),
            (Generator::Geometric(r), Exponent::Finite(p)) => {
                let a = r.abs().powf(p);
                (a.powf(nf + 1.0) / (1.0 - a)).powf(1.0 / p)
            }
        };
        Ok(bound * (1.0 + 1e-12))
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown generator {s:?}"));
        let s = s.trim();
        if s == "1/j" {
            return Ok(Generator::InversePower(1.0));
        }
        if let Some(e) = s.strip_prefix("1/j^") {
            let e: f64 = e.parse().map_err(|_| bad())?;
            if !(e > 0.0) {
                return Err(bad());
            }
            return Ok(Generator::InversePower(e));
        }
        if let Some(r) = s.strip_suffix("^j") {
            let r: f64 = r.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?;
            if !(r.abs() < 1.0) {
                return Err(Error::InvalidInput(format!("geometric ratio {r} must satisfy |r| < 1")));
            }
            return Ok(Generator::Geometric(r));
        }
        Err(bad())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::InversePower(s) if *s == 1.0 => write!(f, "1/j"),
            Generator::InversePower(s) => write!(f, "1/j^{s}"),
            Generator::Geometric(r) => write!(f, "{r}^j"),
        }
    }
}

/// A finite prefix of an ℓ^p element and a bound on the ℓ^p norm of what
/// was dropped. Arbitrary prefixes have tail bound 0, i.e. finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSequence {
    prefix: Vec<Scalar>,
    p: Exponent,
    tail_bound: f64,
    generator: Option<Generator>,
}

impl TruncatedSequence {
    pub fn finite(prefix: Vec<Scalar>, p: Exponent) -> Result<Self> {
        Self::with_tail(prefix, p, 0.0)
    }

    pub fn from_real(prefix: &[f64], p: f64) -> Result<Self> {
        Self::finite(prefix.iter().map(|&x| Scalar::new(x, 0.0)).collect(), Exponent::new(p)?)
    }

    pub fn with_tail(prefix: Vec<Scalar>, p: Exponent, tail_bound: f64) -> Result<Self> {
        if !(tail_bound >= 0.0) || !tail_bound.is_finite() {
            return Err(Error::InvalidInput(format!("tail bound {tail_bound} must be finite and >= 0")));
        }
        if prefix.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(TruncatedSequence {
            prefix,
            p,
            tail_bound,
            generator: None,
        })
    }

    /// The first `n` terms of a generator, with its analytic tail bound.
    pub fn generated(generator: Generator, n: usize, p: Exponent) -> Result<Self> {
        let tail_bound = generator.tail_bound(n, p)?;
        let prefix = (1..=n).map(|j| Scalar::new(generator.term(j), 0.0)).collect();
        Ok(TruncatedSequence {
            prefix,
            p,
            tail_bound,
            generator: Some(generator),
        })
    }

    pub fn prefix(&self) -> &[Scalar] {
        &self.prefix
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn exponent(&self) -> Exponent {
        self.p
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn generator(&self) -> Option<Generator> {
        self.generator
    }

    pub fn is_finite_support(&self) -> bool {
        self.tail_bound == 0.0
    }

    pub fn is_real(&self) -> bool {
        self.prefix.iter().all(|c| c.im == 0.0)
    }

    /// The j-th term (0-based), zero past the prefix.
    pub fn term(&self, j: usize) -> Scalar {
        self.prefix.get(j).copied().unwrap_or(Scalar::new(0.0, 0.0))
    }

    /// Upper bound on the ℓ^p norm of the terms from index `k` (0-based) on.
    pub fn rest_bound(&self, k: usize) -> f64 {
        let k = k.min(self.prefix.len());
        combine(p_norm(&self.prefix[k..], self.p), self.tail_bound, self.p)
    }

    /// Same exponent, same terms; used when a sequence is read in a
    /// different role (e.g. as a functional).
    pub fn with_exponent(&self, p: Exponent) -> Result<Self> {
        let mut s = self.clone();
        if let Some(g) = self.generator {
            s.tail_bound = g.tail_bound(self.prefix.len(), p)?;
        } else if self.tail_bound > 0.0 {
            return Err(Error::ExponentMismatch(
                "tail bound is only known for the original exponent".into(),
            ));
        }
        s.p = p;
        Ok(s)
    }
}

/// ‖(a, b)‖_p for two nonnegative block norms.
pub(crate) fn combine(a: f64, b: f64, p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => a.max(b),
        Exponent::Finite(p) if p == 1.0 => a + b,
        Exponent::Finite(p) if p == 2.0 => a.hypot(b),
        Exponent::Finite(p) => {
            let m = a.max(b);
            if m == 0.0 {
                0.0
            } else {
                m * ((a / m).powf(p) + (b / m).powf(p)).powf(1.0 / p)
            }
        }
    }
}

/// [prefix-only norm, prefix combined with the tail bound].
pub fn lp_norm(x: &TruncatedSequence) -> Interval {
    let lo = p_norm(&x.prefix, x.p);
    Interval::new(lo, combine(lo, x.tail_bound, x.p).max(lo))
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    p: ExponentRepr,
    #[serde(default, with = "serde_scalars", skip_serializing_if = "Vec::is_empty")]
    prefix: Vec<Scalar>,
    #[serde(default)]
    tail_bound: f64,
    #[serde(default)]
    generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
}

impl TryFrom<SequenceRepr> for TruncatedSequence {
    type Error = Error;
    fn try_from(r: SequenceRepr) -> Result<Self> {
        let p = Exponent::new(r.p.raw()?)?;
        let Some(g) = r.generator else {
            return TruncatedSequence::with_tail(r.prefix, p, r.tail_bound);
        };
        let g: Generator = g.parse()?;
        let n = match r.n {
            Some(n) if !r.prefix.is_empty() && n != r.prefix.len() => {
                return Err(Error::InvalidInput("n disagrees with prefix length".into()))
            }
            Some(n) => n,
            None => r.prefix.len(),
        };
        let mut s = TruncatedSequence::generated(g, n, p)?;
        for (j, (a, b)) in r.prefix.iter().zip(&s.prefix).enumerate() {
            if (a - b).norm() > 1e-12 * b.norm().max(1e-300) {
                return Err(Error::InvalidInput(format!("prefix term {} disagrees with generator {g}", j + 1)));
            }
        }
        if !r.prefix.is_empty() {
            s.prefix = r.prefix;
        }
        s.tail_bound = s.tail_bound.max(r.tail_bound);
        Ok(s)
    }
}

impl Serialize for TruncatedSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceRepr {
            p: self.p.into(),
            prefix: self.prefix.clone(),
            tail_bound: self.tail_bound,
            generator: self.generator.map(|g| g.to_string()),
            n: None,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SequenceRepr::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
