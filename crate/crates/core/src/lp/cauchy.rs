use serde::Serialize;

use super::TruncatedSequence;
use crate::error::{Error, Result};
use crate::norm::Exponent;
use crate::space::{serde_scalars, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    /// Coordinate-wise limits, taken from the last iterate.
    #[serde(with = "serde_scalars")]
    pub limit: Vec<Scalar>,
    /// ‖x − limit‖₂ ≤ this for the true limit x (the last schedule entry).
    pub limit_radius: f64,
    /// ‖x_m − limit‖₂ over the prefixes, one per input sequence.
    pub distances: Vec<f64>,
    /// Whether distances[m] ≤ eps[m] + tol for every m.
    pub within_schedule: bool,
    /// Pairs (m, n) whose Cauchy condition was checked.
    pub pairs_checked: usize,
    /// max_j |ξ_j^{last} − ξ_j^{last−1}|, bounded by ‖x_last − x_{last−1}‖₂.
    pub last_coordinate_change: f64,
}

fn distance(a: &TruncatedSequence, b: &TruncatedSequence) -> f64 {
    let n = a.len().max(b.len());
    (0..n).map(|j| (a.term(j) - b.term(j)).norm_sqr()).sum::<f64>().sqrt()
}

/// Recover the ℓ² limit of an ε-Cauchy list of sequences: ‖x_m − x_n‖₂ ≤
/// eps[min(m, n)] (0-based) is checked on consecutive pairs, pairs at
/// power-of-two offsets and pairs with the last iterate.
pub fn cauchy_limit(seqs: &[TruncatedSequence], eps: &[f64], tol: f64) -> Result<LimitReport> {
    if seqs.is_empty() {
        return Err(Error::InvalidInput("no sequences".into()));
    }
    if eps.len() != seqs.len() {
        return Err(Error::DimensionMismatch {
            expected: seqs.len(),
            found: eps.len(),
        });
    }
    if let Some(s) = seqs.iter().find(|s| s.exponent() != Exponent::Finite(2.0)) {
        return Err(Error::ExponentMismatch(format!("expected l^2, got l^{}", s.exponent())));
    }
    if eps.iter().any(|e| !(*e > 0.0)) || eps.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidInput("eps schedule must be positive and non-increasing".into()));
    }
    let n = seqs.len();
    let mut pairs_checked = 0;
    let mut check = |m: usize, k: usize| -> Result<()> {
        pairs_checked += 1;
        let d = distance(&seqs[m], &seqs[k]);
        let e = eps[m.min(k)];
        if d > e + tol {
            return Err(Error::CauchyViolation { m, n: k, distance: d, eps: e });
        }
        Ok(())
    };
    for m in 0..n {
        let mut off = 1;
        while m + off < n {
            check(m, m + off)?;
            off *= 2;
        }
        if m + 1 < n && (n - 1 - m) & (n - 2 - m) != 0 {
            check(m, n - 1)?;
        }
    }

    let last = &seqs[n - 1];
    let limit = last.prefix().to_vec();
    let distances: Vec<f64> = seqs.iter().map(|s| distance(s, last)).collect();
    let within_schedule = distances.iter().zip(eps).all(|(d, e)| *d <= e + tol);
    let last_coordinate_change = if n > 1 {
        let prev = &seqs[n - 2];
        (0..last.len().max(prev.len()))
            .map(|j| (last.term(j) - prev.term(j)).norm())
            .fold(0.0, f64::max)
    } else {
        0.0
    };
    Ok(LimitReport {
        limit,
        limit_radius: eps[n - 1],
        distances,
        within_schedule,
        pairs_checked,
        last_coordinate_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic_family(count: usize) -> (Vec<TruncatedSequence>, Vec<f64>) {
        let seqs = (1..=count)
            .map(|m| TruncatedSequence::from_real(&(1..=m).map(|j| 1.0 / j as f64).collect::<Vec<_>>(), 2.0).unwrap())
            .collect();
        let eps = (1..=count).map(|m| 1.0 / (m as f64).sqrt()).collect();
        (seqs, eps)
    }

    #[test]
    fn recovers_harmonic_limit() {
        let (seqs, eps) = harmonic_family(200);
        let r = cauchy_limit(&seqs, &eps, 1e-12).unwrap();
        assert!(r.within_schedule);
        for (j, c) in r.limit.iter().enumerate() {
            assert_eq!(c.re, 1.0 / (j + 1) as f64);
        }
        assert!(r.last_coordinate_change <= 1.0 / 200.0 + 1e-15);
    }

    #[test]
    fn constant_sequence() {
        let x = TruncatedSequence::from_real(&[1.0, -2.0], 2.0).unwrap();
        let r = cauchy_limit(&vec![x; 5], &[1.0, 0.5, 0.25, 0.1, 0.1], 0.0).unwrap();
        assert!(r.distances.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn alternating_is_not_cauchy() {
        let a = TruncatedSequence::from_real(&[0.0], 2.0).unwrap();
        let b = TruncatedSequence::from_real(&[1.0], 2.0).unwrap();
        let seqs: Vec<_> = (0..10).map(|i| if i % 2 == 0 { a.clone() } else { b.clone() }).collect();
        let eps: Vec<f64> = (0..10).map(|i| 2.0 / (i + 1) as f64).collect();
        match cauchy_limit(&seqs, &eps, 1e-12) {
            Err(Error::CauchyViolation { m, n, distance, .. }) => {
                assert_eq!(distance, 1.0);
                assert!(m < n);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subsequence_has_same_limit() {
        let (seqs, eps) = harmonic_family(128);
        let full = cauchy_limit(&seqs, &eps, 1e-12).unwrap();
        let idx: Vec<usize> = (0..128).filter(|i| i % 3 == 0 || *i == 127).collect();
        let sub: Vec<_> = idx.iter().map(|&i| seqs[i].clone()).collect();
        let sub_eps: Vec<_> = idx.iter().map(|&i| eps[i]).collect();
        let thin = cauchy_limit(&sub, &sub_eps, 1e-12).unwrap();
        assert_eq!(full.limit, thin.limit);
    }

    #[test]
    fn bad_schedules() {
        let x = TruncatedSequence::from_real(&[1.0], 2.0).unwrap();
        assert!(cauchy_limit(&[x.clone(), x.clone()], &[0.1, 0.2], 0.0).is_err());
        assert!(cauchy_limit(&[x.clone()], &[0.1, 0.2], 0.0).is_err());
        let y = TruncatedSequence::from_real(&[1.0], 3.0).unwrap();
        assert!(matches!(cauchy_limit(&[y], &[0.1], 0.0), Err(Error::ExponentMismatch(_))));
    }
}
