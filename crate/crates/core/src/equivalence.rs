//! Norm-equivalence constants: a‖x‖₀ ≤ ‖x‖ ≤ b‖x‖₀ for the basis-zero norm
//! ‖·‖₀ of a basis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norm::{NormSpec, ZeroBasis};
use crate::optim::{self, Constraint, EllipsoidOptions, Minimum};
use crate::sampling;
use crate::space::{Field, Scalar, Vector};

/// max |α_i| over the coordinates α of `x` in `basis`.
pub fn basis_zero_norm(basis: &[Vector], x: &Vector) -> Result<f64> {
    check_basis(basis)?;
    x.check_dim(basis[0].dim())?;
    let zb = ZeroBasis::new(basis.to_vec())?;
    Ok(zb.coordinates(x.coords()).iter().map(|c| c.norm()).fold(0.0, f64::max))
}

fn check_basis(basis: &[Vector]) -> Result<()> {
    let n = basis.first().map(Vector::dim).ok_or(Error::EmptyVector)?;
    for b in basis {
        b.check_dim(n)?;
    }
    if basis.len() != n {
        return Err(Error::SingularBasis);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerMethod {
    Grid,
    ConvexDescent,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceConstants {
    pub a: f64,
    /// Σ ‖basis_i‖.
    pub b: f64,
    /// The least upper constant max { ‖x‖ : ‖x‖₀ = 1 }, attained at a sign
    /// vertex; real bases of dimension at most 16 only.
    pub b_sharp: Option<f64>,
    /// Certified lower bound on the least lower constant.
    pub a_lower: f64,
    pub a_witness: Vector,
    pub basis: Vec<Vector>,
    pub basis_norms: Vec<f64>,
    pub norm: NormSpec,
    pub method_a: LowerMethod,
}

fn field_of(basis: &[Vector], norm: &NormSpec) -> Field {
    if basis.iter().all(Vector::is_real) && norm.is_real() {
        Field::Real
    } else {
        Field::Complex
    }
}

fn combine(basis: &[Vector], alpha: &[Scalar]) -> Vec<Scalar> {
    let n = basis[0].dim();
    let mut x = vec![Scalar::new(0.0, 0.0); n];
    for (a, b) in alpha.iter().zip(basis) {
        for i in 0..n {
            x[i] += a * b[i];
        }
    }
    x
}

/// min ‖x‖ over the face of the ‖·‖₀ sphere where coordinate k equals 1.
/// Phase invariance of the norm lets the pinned coordinate be real.
fn face_minimum(basis: &[Vector], norm: &NormSpec, k: usize, field: Field, tol: f64) -> (Minimum, Vec<Scalar>) {
    let n = basis.len();
    let free: Vec<usize> = (0..n).filter(|&j| j != k).collect();
    let m = free.len();
    let alpha = |z: &[f64]| -> Vec<Scalar> {
        let mut a = vec![Scalar::new(0.0, 0.0); n];
        a[k] = Scalar::new(1.0, 0.0);
        for (t, &j) in free.iter().enumerate() {
            a[j] = match field {
                Field::Real => Scalar::new(z[t], 0.0),
                Field::Complex => Scalar::new(z[t], z[m + t]),
            };
        }
        a
    };
    let objective = |z: &[f64]| {
        let x = combine(basis, &alpha(z));
        let v = norm.eval_slice(&x);
        let s = norm.subgradient(&x);
        let proj: Vec<Scalar> = free
            .iter()
            .map(|&j| s.iter().zip(basis[j].iter()).map(|(a, b)| a * b).sum())
            .collect();
        let g = match field {
            Field::Real => proj.iter().map(|c| c.re).collect(),
            Field::Complex => proj.iter().map(|c| c.re).chain(proj.iter().map(|c| -c.im)).collect(),
        };
        (v, g)
    };
    let (d, constraints): (usize, Vec<Constraint>) = match field {
        Field::Real => (
            m,
            (0..m).map(|index| Constraint::Interval { index, lo: -1.0, hi: 1.0 }).collect(),
        ),
        Field::Complex => (
            2 * m,
            (0..m).map(|t| Constraint::Disc { re: t, im: m + t, radius: 1.0 }).collect(),
        ),
    };
    let min = optim::ellipsoid_minimize(
        &objective,
        &constraints,
        &vec![0.0; d],
        (d.max(1) as f64).sqrt() * 1.0001,
        EllipsoidOptions { tol, ..Default::default() },
    );
    let a = alpha(&min.point);
    (min, a)
}

pub fn equivalence_constants(basis: &[Vector], norm: &NormSpec, tol: f64) -> Result<EquivalenceConstants> {
    check_basis(basis)?;
    if basis[0].dim() != norm.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.dim(),
            found: basis[0].dim(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    ZeroBasis::new(basis.to_vec())?;
    let n = basis.len();
    let field = field_of(basis, norm);

    let basis_norms: Vec<f64> = basis.iter().map(|v| norm.eval_slice(v.coords())).collect();
    if let Some(i) = basis_norms.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::InvalidNorm(format!("norm vanishes on basis vector {i}")));
    }
    let b: f64 = basis_norms.iter().sum();

    let scale = basis_norms.iter().cloned().fold(0.0, f64::max);
    let mut best: Option<(f64, f64, Vec<Scalar>)> = None;
    for k in 0..n {
        let (min, alpha) = face_minimum(basis, norm, k, field, tol * scale * 1e-3);
        if best.as_ref().is_none_or(|(v, _, _)| min.value < *v) {
            let lower = best.as_ref().map_or(min.lower_bound, |(_, l, _)| l.min(min.lower_bound));
            best = Some((min.value, lower, alpha));
        } else if let Some(bst) = best.as_mut() {
            bst.1 = bst.1.min(min.lower_bound);
        }
    }
    let (a, a_lower, alpha) = best.expect("nonempty basis");
    if !(a > 0.0) {
        return Err(Error::InvalidNorm("norm vanishes on a nonzero vector".into()));
    }
    let a_witness = Vector::from_vec(combine(basis, &alpha));

    let b_sharp = (field == Field::Real && n <= 16).then(|| {
        (0..1usize << n)
            .map(|mask| {
                let alpha: Vec<Scalar> = (0..n)
                    .map(|i| Scalar::new(if mask >> i & 1 == 1 { -1.0 } else { 1.0 }, 0.0))
                    .collect();
                norm.eval_slice(&combine(basis, &alpha))
            })
            .fold(0.0, f64::max)
    });

    Ok(EquivalenceConstants {
        a,
        b,
        b_sharp,
        a_lower: a_lower.min(a),
        a_witness,
        basis: basis.to_vec(),
        basis_norms,
        norm: norm.clone(),
        method_a: LowerMethod::ConvexDescent,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub samples: usize,
    pub lower_violations: usize,
    pub upper_violations: usize,
    pub worst_lower_ratio: f64,
    pub worst_upper_ratio: f64,
}

impl SandwichReport {
    pub fn pass(&self) -> bool {
        self.lower_violations == 0 && self.upper_violations == 0
    }
}

/// Relative slack on both sides of the sandwich.
pub const SANDWICH_SLACK: f64 = 1e-9;

/// Check a‖x‖₀ ≤ ‖x‖(1 + 1e−9) and ‖x‖ ≤ b‖x‖₀(1 + 1e−9) on random vectors.
pub fn verify_sandwich(c: &EquivalenceConstants, samples: usize, seed: u64) -> Result<SandwichReport> {
    let zb = ZeroBasis::new(c.basis.clone())?;
    let field = field_of(&c.basis, &c.norm);
    let mut rng = sampling::substream(seed, 0xE9_01);
    let mut report = SandwichReport {
        samples,
        lower_violations: 0,
        upper_violations: 0,
        worst_lower_ratio: f64::INFINITY,
        worst_upper_ratio: 0.0,
    };
    for _ in 0..samples {
        let x = sampling::stress_vector(&mut rng, c.norm.dim(), field);
        if x.is_zero() {
            continue;
        }
        let z = zb.coordinates(x.coords()).iter().map(|a| a.norm()).fold(0.0, f64::max);
        let v = c.norm.eval_slice(x.coords());
        if c.a * z > v * (1.0 + SANDWICH_SLACK) {
            report.lower_violations += 1;
        }
        if v > c.b * z * (1.0 + SANDWICH_SLACK) {
            report.upper_violations += 1;
        }
        report.worst_lower_ratio = report.worst_lower_ratio.min(v / z);
        report.worst_upper_ratio = report.worst_upper_ratio.max(v / z);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_basis(n: usize) -> Vec<Vector> {
        (0..n).map(|i| Vector::unit(n, i)).collect()
    }

    #[test]
    fn zero_norm_examples() {
        let x = Vector::from_real(&[2.0, -5.0, 1.0]).unwrap();
        assert_eq!(basis_zero_norm(&std_basis(3), &x).unwrap(), 5.0);
        let basis = vec![Vector::from_real(&[1.0, 0.0]).unwrap(), Vector::from_real(&[1.0, 1.0]).unwrap()];
        let x = Vector::from_real(&[0.0, 1.0]).unwrap();
        assert!((basis_zero_norm(&basis, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((basis_zero_norm(&basis, &basis[0]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_basis_rejected() {
        let basis = vec![Vector::from_real(&[1.0, 2.0]).unwrap(), Vector::from_real(&[2.0, 4.0]).unwrap()];
        assert!(matches!(
            basis_zero_norm(&basis, &basis[0]),
            Err(Error::SingularBasis)
        ));
        assert!(equivalence_constants(&basis, &NormSpec::euclidean(2), 1e-8).is_err());
    }

    #[test]
    fn euclidean_on_standard_basis() {
        let c = equivalence_constants(&std_basis(2), &NormSpec::euclidean(2), 1e-10).unwrap();
        assert_eq!(c.b, 2.0);
        assert!((c.a - 1.0).abs() < 1e-9);
        assert!(c.a_lower <= c.a && c.a_lower > 1.0 - 1e-8);
        assert!((NormSpec::euclidean(2).eval(&c.a_witness).unwrap() - c.a).abs() < 1e-12);
        assert!((c.b_sharp.unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn l1_on_standard_basis() {
        let c = equivalence_constants(&std_basis(2), &NormSpec::p(1.0, 2).unwrap(), 1e-10).unwrap();
        assert_eq!(c.b, 2.0);
        assert!((c.a - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_norm_against_itself() {
        for n in 1..=4 {
            let c = equivalence_constants(&std_basis(n), &NormSpec::zero_standard(n), 1e-10).unwrap();
            assert!((c.a - 1.0).abs() < 1e-9);
            assert_eq!(c.b, n as f64);
            assert_eq!(c.b_sharp, Some(1.0));
        }
    }

    #[test]
    fn skewed_basis_sandwich() {
        let basis = vec![
            Vector::from_real(&[1.0, 0.2, 0.0]).unwrap(),
            Vector::from_real(&[0.5, 1.0, -0.3]).unwrap(),
            Vector::from_real(&[0.0, -0.7, 1.0]).unwrap(),
        ];
        for p in [1.0, 2.0, 3.0, f64::INFINITY] {
            let norm = NormSpec::p(p, 3).unwrap();
            let c = equivalence_constants(&basis, &norm, 1e-10).unwrap();
            assert!(c.a > 0.0 && c.a <= c.b_sharp.unwrap() && c.b_sharp.unwrap() <= c.b);
            let r = verify_sandwich(&c, 5000, 3).unwrap();
            assert!(r.pass(), "p={p}: {r:?}");
            assert!(r.worst_lower_ratio >= c.a * (1.0 - 1e-9));
        }
    }

    #[test]
    fn complex_lower_constant() {
        // basis {(1,0),(1,1)} over C with the euclidean norm: a = min |(1+z, z)|, |z|<=1
        // attained at z = -1/2 with value 1/√2
        let basis = vec![
            Vector::new(vec![Scalar::new(1.0, 0.0), Scalar::new(0.0, 0.0)]).unwrap(),
            Vector::new(vec![Scalar::new(0.0, 1.0), Scalar::new(0.0, 1.0)]).unwrap(),
        ];
        let c = equivalence_constants(&basis, &NormSpec::euclidean(2), 1e-10).unwrap();
        assert!((c.a - 0.5f64.sqrt()).abs() < 1e-8, "{}", c.a);
        assert!(c.b_sharp.is_none());
        assert!(verify_sandwich(&c, 2000, 1).unwrap().pass());
    }

    #[test]
    fn scaling_the_basis() {
        let basis = vec![Vector::from_real(&[1.0, 0.3]).unwrap(), Vector::from_real(&[-0.4, 1.0]).unwrap()];
        let norm = NormSpec::p(1.5, 2).unwrap();
        let c = equivalence_constants(&basis, &norm, 1e-10).unwrap();
        let scaled: Vec<Vector> = basis.iter().map(|v| v.scale_real(3.0)).collect();
        let s = equivalence_constants(&scaled, &norm, 1e-10).unwrap();
        assert!((s.a - 3.0 * c.a).abs() < 1e-8);
        assert!((s.b - 3.0 * c.b).abs() < 1e-12);
        assert!(verify_sandwich(&s, 2000, 2).unwrap().pass());
    }

    #[test]
    fn degenerate_custom_norm() {
        let norm = NormSpec::named_custom("first-coordinate", None, 2).unwrap();
        let basis = vec![Vector::from_real(&[0.0, 1.0]).unwrap(), Vector::from_real(&[1.0, 0.0]).unwrap()];
        assert!(matches!(
            equivalence_constants(&basis, &norm, 1e-8),
            Err(Error::InvalidNorm(_))
        ));
    }
}
