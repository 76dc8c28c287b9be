//! Seeded sampling of vectors, unit spheres and balls.
//!
//! Sphere points are Gaussian draws normalized by the target norm. They cover
//! the sphere but are not uniform with respect to any surface measure.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::norm::{validate_positive, NormSpec};
use crate::space::{Field, Scalar, Vector};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream for a sub-task.
pub fn substream(seed: u64, tag: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn gaussian_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Real => Scalar::new(gaussian(rng), 0.0),
        Field::Complex => Scalar::new(gaussian(rng), gaussian(rng)),
    }
}

pub fn gaussian_vector(rng: &mut impl Rng, dim: usize, field: Field) -> Vector {
    Vector::from_vec((0..dim.max(1)).map(|_| gaussian_scalar(rng, field)).collect())
}

pub fn gaussian_vec_f64(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| gaussian(rng)).collect()
}

/// Gaussian m×n matrix.
pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize, field: Field) -> Matrix {
    let rows = (0..rows)
        .map(|_| (0..cols).map(|_| gaussian_scalar(rng, field)).collect())
        .collect();
    Matrix::from_rows(rows).expect("rectangular")
}

/// Orthogonal (unitary in complex mode) matrix: the Q factor of a Gaussian
/// matrix with the phases of R's diagonal absorbed.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize, field: Field) -> Matrix {
    let g = gaussian_matrix(rng, n, n, field).to_nalgebra();
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let ph = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= ph;
            }
        }
    }
    Matrix::from_nalgebra(&q)
}

/// Permutation matrix of a uniformly random permutation.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rows = perm
        .iter()
        .map(|&j| (0..n).map(|k| Scalar::new(if k == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// Gaussian direction with log-uniform magnitude in [1e-3, 1e3] and a chance
/// of zeroed coordinates, to stress axioms away from the unit scale.
pub fn stress_vector(rng: &mut impl Rng, dim: usize, field: Field) -> Vector {
    let mut v = gaussian_vector(rng, dim, field);
    if dim > 1 && rng.random_bool(0.25) {
        let k = rng.random_range(0..dim);
        v[k] = Scalar::new(0.0, 0.0);
    }
    let scale = 10f64.powf(rng.random_range(-3.0..3.0));
    v.scale_real(scale)
}

pub fn stress_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    let r = 10f64.powf(rng.random_range(-3.0..3.0)) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    match field {
        Field::Real => Scalar::new(r, 0.0),
        Field::Complex => Scalar::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    /// ‖x‖ = 1 after normalization.
    OnSphere,
    /// ‖x‖ <= 1: sphere point scaled by u ∈ [0, 1].
    InBall,
}

/// `count` vectors with ‖x‖ = 1 (on-sphere) or ‖x‖ <= 1 (in-ball),
/// deterministic given the seed.
pub fn sample_unit_vectors(
    norm: &NormSpec,
    count: usize,
    mode: SampleMode,
    field: Field,
    seed: u64,
) -> Result<Vec<Vector>> {
    let mut rng = rng(seed);
    sample_unit_vectors_with(norm, count, mode, field, &mut rng)
}

pub fn sample_unit_vectors_with(
    norm: &NormSpec,
    count: usize,
    mode: SampleMode,
    field: Field,
    rng: &mut impl Rng,
) -> Result<Vec<Vector>> {
    let n = norm.dim();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = gaussian_vector(rng, n, field);
        if g.is_zero() {
            continue;
        }
        let r = validate_positive(norm, norm.eval_slice(g.coords()))?;
        let x = g.scale_real(1.0 / r);
        let x = match mode {
            SampleMode::OnSphere => x,
            SampleMode::InBall => {
                let u: f64 = rng.random_range(0.0..=1.0);
                let y = x.scale_real(u);
                // u = 1 can land a rounding step outside the ball
                let ny = norm.eval_slice(y.coords());
                if ny > 1.0 {
                    y.scale_real(1.0 / ny)
                } else {
                    y
                }
            }
        };
        out.push(x);
    }
    Ok(out)
}
