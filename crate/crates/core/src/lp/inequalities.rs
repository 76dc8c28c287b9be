use serde::Serialize;

use super::{lp_norm, Interval, TruncatedSequence};
use crate::error::{Error, Result};
use crate::norm::{p_norm, Exponent, ALGEBRAIC_TOL};
use crate::space::Scalar;

/// Conjugate exponents, 1/p + 1/q = 1. The pair (1, ∞) is admitted as an
/// extension and flagged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugatePair {
    pub p: Exponent,
    pub q: Exponent,
}

impl ConjugatePair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let (pe, qe) = (Exponent::new(p)?, Exponent::new(q)?);
        let ok = match (pe, qe) {
            (Exponent::Finite(a), Exponent::Finite(b)) => (1.0 / a + 1.0 / b - 1.0).abs() <= 1e-12,
            (Exponent::Finite(a), Exponent::Infinity) | (Exponent::Infinity, Exponent::Finite(a)) => a == 1.0,
            _ => false,
        };
        if !ok {
            return Err(Error::ExponentMismatch(format!("{p} and {q} are not conjugate")));
        }
        Ok(ConjugatePair { p: pe, q: qe })
    }

    pub fn from_p(p: f64) -> Result<Self> {
        let pe = Exponent::new(p)?;
        Ok(ConjugatePair { p: pe, q: pe.conjugate() })
    }

    /// True for the endpoint pairs (1, ∞) and (∞, 1).
    pub fn is_extension(&self) -> bool {
        self.p.is_infinite() || self.q.is_infinite()
    }
}

pub(super) fn same_exponent(a: Exponent, b: Exponent) -> bool {
    match (a, b) {
        (Exponent::Finite(x), Exponent::Finite(y)) => (x - y).abs() <= 1e-12 * x.max(y),
        _ => a == b,
    }
}

fn require(name: &str, have: Exponent, want: Exponent) -> Result<()> {
    if same_exponent(have, want) {
        Ok(())
    } else {
        Err(Error::ExponentMismatch(format!("{name} has exponent {have}, expected {want}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport {
    /// Σ |ξ_j η_j| over the common prefix (lo) plus the Hölder bound on the
    /// remainder (hi).
    pub pairing: Interval,
    /// Upper bounds of ‖x‖_p and ‖y‖_q multiplied.
    pub bound: f64,
    pub slack: f64,
    pub holds: bool,
    pub extension: bool,
    /// ξ/‖x‖_p and η/‖y‖_q over the prefixes; absent when a norm vanishes.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_scalars")]
    pub normalized_x: Option<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_scalars")]
    pub normalized_y: Option<Vec<Scalar>>,
    /// Σ|ξ̄_j|^p and Σ|η̄_j|^q (the max modulus for an infinite exponent).
    pub power_sum_x: Option<f64>,
    pub power_sum_y: Option<f64>,
    /// Coordinates breaking |ξ̄η̄| ≤ |ξ̄|^p/p + |η̄|^q/q.
    pub young_violations: usize,
}

mod opt_scalars {
    use super::Scalar;
    use serde::Serializer;
    pub fn serialize<S: Serializer>(v: &Option<Vec<Scalar>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => crate::space::serde_scalars::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

fn power_sum_of(z: &[Scalar], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => z.iter().map(|c| c.norm()).fold(0.0, f64::max),
        Exponent::Finite(p) => z.iter().map(|c| c.norm().powf(p)).sum(),
    }
}

pub fn holder_pairing(x: &TruncatedSequence, y: &TruncatedSequence, pair: ConjugatePair) -> Result<PairingReport> {
    require("x", x.exponent(), pair.p)?;
    require("y", y.exponent(), pair.q)?;
    let k = x.len().min(y.len());
    let head: f64 = x.prefix()[..k]
        .iter()
        .zip(&y.prefix()[..k])
        .map(|(a, b)| (a * b).norm())
        .sum();
    let rest = x.rest_bound(k) * y.rest_bound(k);
    let pairing = Interval::new(head, head + rest);
    let bound = lp_norm(x).hi * lp_norm(y).hi;
    let holds = pairing.hi <= bound * (1.0 + ALGEBRAIC_TOL);

    let nx = p_norm(x.prefix(), x.exponent());
    let ny = p_norm(y.prefix(), y.exponent());
    let (normalized_x, normalized_y) = if nx > 0.0 && ny > 0.0 {
        (
            Some(x.prefix().iter().map(|c| c / nx).collect::<Vec<_>>()),
            Some(y.prefix().iter().map(|c| c / ny).collect::<Vec<_>>()),
        )
    } else {
        (None, None)
    };
    let power_sum_x = normalized_x.as_ref().map(|v| power_sum_of(v, x.exponent()));
    let power_sum_y = normalized_y.as_ref().map(|v| power_sum_of(v, y.exponent()));

    let mut young_violations = 0;
    if let (Some(a), Some(b), Exponent::Finite(p), Exponent::Finite(q)) =
        (&normalized_x, &normalized_y, pair.p, pair.q)
    {
        for (s, t) in a.iter().zip(b) {
            let (s, t) = (s.norm(), t.norm());
            let lhs = s * t;
            let rhs = s.powf(p) / p + t.powf(q) / q;
            if lhs > rhs * (1.0 + ALGEBRAIC_TOL) + f64::MIN_POSITIVE {
                young_violations += 1;
            }
        }
    }

    Ok(PairingReport {
        pairing,
        bound,
        slack: bound - pairing.hi,
        holds,
        extension: pair.is_extension(),
        normalized_x,
        normalized_y,
        power_sum_x,
        power_sum_y,
        young_violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    /// ‖x + y‖_p as an interval.
    pub lhs: Interval,
    /// Upper bound of ‖x‖_p plus upper bound of ‖y‖_p.
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    /// The zero-padded sum with tail bound tail_x + tail_y.
    pub sum: TruncatedSequence,
}

pub fn minkowski_verify(x: &TruncatedSequence, y: &TruncatedSequence) -> Result<InequalityReport> {
    require("y", y.exponent(), x.exponent())?;
    let n = x.len().max(y.len());
    let terms: Vec<Scalar> = (0..n).map(|j| x.term(j) + y.term(j)).collect();
    let sum = TruncatedSequence::with_tail(terms, x.exponent(), x.tail_bound() + y.tail_bound())?;
    let lhs = lp_norm(&sum);
    let rhs = lp_norm(x).hi + lp_norm(y).hi;
    Ok(InequalityReport {
        lhs,
        rhs,
        slack: rhs - lhs.hi,
        holds: lhs.hi <= rhs * (1.0 + ALGEBRAIC_TOL),
        sum,
    })
}
