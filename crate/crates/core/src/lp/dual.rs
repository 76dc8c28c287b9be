use serde::{Deserialize, Serialize};

use super::inequalities::same_exponent;
use super::{lp_norm, TruncatedSequence};
use crate::error::{Error, Result};
use crate::norm::{p_norm, Exponent, NormSpec};
use crate::sampling::{self, SampleMode};
use crate::space::{arg, serde_scalars, Field, Scalar};

/// φ_f(x) = Σ α_n ξ_n for f = (α_n) in ℓ^q acting on ℓ^p, q the conjugate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualFunctional {
    coeffs: TruncatedSequence,
}

impl DualFunctional {
    pub fn new(coeffs: TruncatedSequence) -> Self {
        DualFunctional { coeffs }
    }

    pub fn coeffs(&self) -> &TruncatedSequence {
        &self.coeffs
    }

    /// The exponent q of the coefficient sequence.
    pub fn q(&self) -> Exponent {
        self.coeffs.exponent()
    }

    /// The exponent p of the sequences it acts on.
    pub fn p(&self) -> Exponent {
        self.q().conjugate()
    }
}

/// A complex value known up to an absolute radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualValue {
    #[serde(with = "pair")]
    pub center: Scalar,
    pub radius: f64,
    pub extension: bool,
}

mod pair {
    use super::Scalar;
    use serde::{Serialize, Serializer};
    pub fn serialize<S: Serializer>(z: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }
}

impl DualValue {
    /// Whether `z` lies within the radius, allowing `tol` relative rounding.
    pub fn contains(&self, z: Scalar, tol: f64) -> bool {
        (z - self.center).norm() <= self.radius + tol * z.norm().max(self.center.norm()).max(1.0)
    }
}

pub fn dual_apply(f: &DualFunctional, x: &TruncatedSequence) -> Result<DualValue> {
    if !same_exponent(x.exponent(), f.p()) {
        return Err(Error::ExponentMismatch(format!(
            "functional in l^{} acts on l^{}, got l^{}",
            f.q(),
            f.p(),
            x.exponent()
        )));
    }
    let a = f.coeffs.prefix();
    let k = a.len().min(x.len());
    let center: Scalar = a[..k].iter().zip(&x.prefix()[..k]).map(|(s, t)| s * t).sum();
    let radius = f.coeffs.rest_bound(k) * x.rest_bound(k);
    Ok(DualValue {
        center,
        radius,
        extension: f.q().is_infinite() || f.p().is_infinite(),
    })
}

/// β_k = |α_k|^{q−1} e^{−iθ_k}, the element of ℓ^p on which φ_f attains
/// the truncated ‖f‖_q.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormingWitness {
    #[serde(with = "serde_scalars")]
    pub entries: Vec<Scalar>,
    pub m: usize,
    /// |φ_f(β)| / ‖β‖_p.
    pub ratio: f64,
    /// (Σ_{k≤m} |α_k|^q)^{1/q}.
    pub truncated_norm: f64,
}

pub fn norming_witness(f: &DualFunctional, m: usize) -> Result<NormingWitness> {
    let a = f.coeffs.prefix();
    if m == 0 || m > a.len() {
        return Err(Error::InvalidInput(format!("truncation m = {m} outside 1..={}", a.len())));
    }
    let a = &a[..m];
    let top = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return Err(Error::NoWitness("functional prefix is identically zero"));
    }
    let zero = Scalar::new(0.0, 0.0);
    let entries: Vec<Scalar> = match f.q() {
        // p = 1: a single coordinate at the largest |α_k|
        Exponent::Infinity => {
            let k = a.iter().position(|c| c.norm() == top).unwrap_or(0);
            (0..m)
                .map(|j| if j == k { Scalar::from_polar(1.0, -arg(a[j])) } else { zero })
                .collect()
        }
        Exponent::Finite(q) => a
            .iter()
            .map(|&c| {
                let r = c.norm();
                if r == 0.0 {
                    zero
                } else {
                    Scalar::from_polar(r.powf(q - 1.0), -arg(c))
                }
            })
            .collect(),
    };
    let value: Scalar = a.iter().zip(&entries).map(|(s, t)| s * t).sum();
    let ratio = value.norm() / p_norm(&entries, f.p());
    Ok(NormingWitness {
        entries,
        m,
        ratio,
        truncated_norm: p_norm(a, f.q()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualNormReport {
    /// ‖f‖_q upper bound including the tail; ‖φ_f‖ ≤ this by Hölder.
    pub upper: f64,
    /// Best of the witness ratio and the sampled |φ_f(x)|, ‖x‖_p = 1.
    pub lower: f64,
    pub witness_ratio: f64,
    pub sampled_best: f64,
    pub gap: f64,
    /// Upper bound on ‖(α_k)_{k>m}‖_q.
    pub tail_contribution: f64,
    pub within_bound: bool,
}

/// Slack allowed between the gap and the tail contribution.
pub const DUAL_GAP_SLACK: f64 = 1e-6;

pub fn dual_norm(f: &DualFunctional, m: usize, samples: usize, seed: u64) -> Result<DualNormReport> {
    let w = norming_witness(f, m)?;
    let a = &f.coeffs.prefix()[..m];
    let field = if f.coeffs.is_real() { Field::Real } else { Field::Complex };
    let ball = NormSpec::with_exponent(f.p(), m)?;
    let xs = sampling::sample_unit_vectors(&ball, samples.max(1), SampleMode::OnSphere, field, seed)?;
    let sampled_best = xs
        .iter()
        .map(|x| a.iter().zip(x.iter()).map(|(s, t)| s * t).sum::<Scalar>().norm())
        .fold(0.0, f64::max);
    let upper = lp_norm(&f.coeffs).hi;
    let lower = w.ratio.max(sampled_best);
    let tail_contribution = f.coeffs.rest_bound(m);
    let gap = upper - lower;
    Ok(DualNormReport {
        upper,
        lower,
        witness_ratio: w.ratio,
        sampled_best,
        gap,
        tail_contribution,
        within_bound: gap <= tail_contribution + DUAL_GAP_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::super::Generator;
    use super::*;

    fn functional(v: &[f64], q: f64) -> DualFunctional {
        DualFunctional::new(TruncatedSequence::from_real(v, q).unwrap())
    }

    #[test]
    fn apply_examples() {
        let f = functional(&[1.0, 0.0], 2.0);
        let x = TruncatedSequence::from_real(&[1.0], 2.0).unwrap();
        let v = dual_apply(&f, &x).unwrap();
        assert_eq!((v.center, v.radius), (Scalar::new(1.0, 0.0), 0.0));

        let f = functional(&[3.0, 4.0, 0.0], 2.0);
        let x = TruncatedSequence::from_real(&[0.6, 0.8], 2.0).unwrap();
        let v = dual_apply(&f, &x).unwrap();
        assert!((v.center - Scalar::new(5.0, 0.0)).norm() < 1e-14);
        assert!(v.contains(Scalar::new(5.0, 0.0), 1e-14));
    }

    #[test]
    fn apply_radius_is_tail_bound() {
        let f = DualFunctional::new(
            TruncatedSequence::with_tail(vec![Scalar::new(1.0, 0.0); 3], Exponent::Finite(2.0), 1e-3).unwrap(),
        );
        let x = TruncatedSequence::from_real(&[0.6, 0.0, 0.8], 2.0).unwrap();
        let v = dual_apply(&f, &x).unwrap();
        assert!(v.radius <= 1e-3);
        assert!(dual_apply(&f, &TruncatedSequence::from_real(&[1.0], 3.0).unwrap()).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = norming_witness(&functional(&[3.0, 4.0, 0.0], 2.0), 2).unwrap();
        assert_eq!(w.entries, vec![Scalar::new(3.0, 0.0), Scalar::new(4.0, 0.0)]);
        assert!((w.ratio - 5.0).abs() < 1e-14);

        let w = norming_witness(&functional(&[1.0], 1.5), 1).unwrap();
        assert_eq!(w.ratio, 1.0);

        let f = DualFunctional::new(
            TruncatedSequence::finite(vec![Scalar::new(0.0, 1.0), Scalar::new(0.0, 0.0)], Exponent::Finite(2.0)).unwrap(),
        );
        let w = norming_witness(&f, 1).unwrap();
        assert!((w.entries[0] - Scalar::new(0.0, -1.0)).norm() < 1e-15);
        let pairing = Scalar::new(0.0, 1.0) * w.entries[0];
        assert!((pairing - Scalar::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn witness_modulus_and_ratio_complex() {
        let coeffs: Vec<Scalar> = (1..=20)
            .map(|k| Scalar::from_polar(1.0 / k as f64, 0.37 * k as f64))
            .collect();
        for q in [1.5, 2.0, 3.0] {
            let f = DualFunctional::new(TruncatedSequence::finite(coeffs.clone(), Exponent::Finite(q)).unwrap());
            let w = norming_witness(&f, 20).unwrap();
            for (a, b) in coeffs.iter().zip(&w.entries) {
                assert!((b.norm() - a.norm().powf(q - 1.0)).abs() < 1e-14);
            }
            assert!((w.ratio - w.truncated_norm).abs() <= 1e-10 * w.truncated_norm);
        }
    }

    #[test]
    fn witness_endpoint_exponents() {
        let f = functional(&[1.0, -3.0, 2.0], f64::INFINITY);
        let w = norming_witness(&f, 3).unwrap();
        assert_eq!(w.ratio, 3.0);
        let f = functional(&[1.0, -3.0, 2.0], 1.0);
        let w = norming_witness(&f, 3).unwrap();
        assert_eq!(w.ratio, 6.0);
    }

    #[test]
    fn zero_prefix_has_no_witness() {
        assert!(matches!(
            norming_witness(&functional(&[0.0, 0.0], 2.0), 2),
            Err(Error::NoWitness(_))
        ));
    }

    #[test]
    fn dual_norm_examples() {
        let r = dual_norm(&functional(&[1.0], 2.0), 1, 100, 0).unwrap();
        assert_eq!((r.upper, r.lower), (1.0, 1.0));
        let r = dual_norm(&functional(&[3.0, 4.0, 0.0], 2.0), 3, 100, 0).unwrap();
        assert!((r.upper - 5.0).abs() < 1e-10 && (r.lower - 5.0).abs() < 1e-10);

        let f = DualFunctional::new(TruncatedSequence::generated(Generator::InversePower(2.0), 64, Exponent::Finite(2.0)).unwrap());
        let r = dual_norm(&f, 64, 1000, 1).unwrap();
        assert!(r.gap <= 1e-2 && r.within_bound, "{r:?}");
        assert!(r.sampled_best <= r.witness_ratio * (1.0 + 1e-12));
    }
}
