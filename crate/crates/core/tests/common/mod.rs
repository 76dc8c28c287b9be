//! Reference implementations written independently of the library, used as
//! oracles by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub type C = Complex64;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn normal(r: &mut impl Rng) -> f64 {
    // Box-Muller
    let u: f64 = r.random_range(f64::EPSILON..1.0);
    let v: f64 = r.random_range(0.0..1.0);
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// (Σ|z_i|^p)^{1/p}, or max |z_i| for p = ∞, by the textbook formula with
/// max-scaling.
pub fn pnorm(z: &[C], p: f64) -> f64 {
    let m = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if m == 0.0 || p.is_infinite() {
        return m;
    }
    m * z.iter().map(|c| (c.norm() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn pnorm_real(z: &[f64], p: f64) -> f64 {
    pnorm(&z.iter().map(|&x| C::new(x, 0.0)).collect::<Vec<_>>(), p)
}

/// Largest singular value of a real matrix from cyclic Jacobi rotations on
/// AᵀA, run until every off-diagonal entry is negligible.
pub fn jacobi_sigma_max(a: &[Vec<f64>]) -> f64 {
    let m = a.len();
    let n = a[0].len();
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            s[i][j] = (0..m).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i][j] * s[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| s[i][i] * s[i][i]).sum();
        if off <= 1e-30 * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if s[p][q] == 0.0 {
                    continue;
                }
                let theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (skp, skq) = (s[k][p], s[k][q]);
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let (spk, sqk) = (s[p][k], s[q][k]);
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    (0..n).map(|i| s[i][i]).fold(0.0, f64::max).max(0.0).sqrt()
}

/// Solves B α = x for a square real B given by columns, with partial
/// pivoting.
pub fn solve_columns(cols: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).chain([x[i]]).collect()).collect();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
        a.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..=n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    let mut out = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * out[j]).sum();
        out[i] = (a[i][n] - s) / a[i][i];
    }
    out
}

/// min f over the box [lo, hi]^d by a grid of `res` points per axis and
/// `rounds` of zooming around the incumbent.
pub fn grid_min(f: &dyn Fn(&[f64]) -> f64, lo: &[f64], hi: &[f64], res: usize, rounds: usize) -> (f64, Vec<f64>) {
    let d = lo.len();
    let mut lo = lo.to_vec();
    let mut hi = hi.to_vec();
    let (lo0, hi0) = (lo.clone(), hi.clone());
    let mut best = (f64::INFINITY, vec![0.0; d]);
    for round in 0..=rounds {
        let r = if round == 0 { res } else { 9 };
        let total = (r + 1).pow(d as u32);
        for idx in 0..total {
            let mut k = idx;
            let pt: Vec<f64> = (0..d)
                .map(|i| {
                    let t = (k % (r + 1)) as f64 / r as f64;
                    k /= r + 1;
                    lo[i] + t * (hi[i] - lo[i])
                })
                .collect();
            let v = f(&pt);
            if v < best.0 {
                best = (v, pt);
            }
        }
        for i in 0..d {
            let w = (hi[i] - lo[i]) / r as f64 * 1.5;
            lo[i] = (best.1[i] - w).max(lo0[i]);
            hi[i] = (best.1[i] + w).min(hi0[i]);
        }
    }
    best
}

/// min ‖Σ α_i b_i‖ over max |α_i| = 1, face by face.
pub fn lower_constant_by_grid(basis: &[Vec<f64>], p: f64) -> f64 {
    let n = basis.len();
    let mut best = f64::INFINITY;
    for k in 0..n {
        for sign in [-1.0, 1.0] {
            let f = |free: &[f64]| {
                let mut alpha = Vec::with_capacity(n);
                let mut it = free.iter();
                for i in 0..n {
                    alpha.push(if i == k { sign } else { *it.next().unwrap() });
                }
                let x: Vec<f64> = (0..basis[0].len())
                    .map(|r| (0..n).map(|i| alpha[i] * basis[i][r]).sum())
                    .collect();
                pnorm_real(&x, p)
            };
            let v = if n == 1 {
                f(&[])
            } else {
                grid_min(&f, &vec![-1.0; n - 1], &vec![1.0; n - 1], 96, 30).0
            };
            best = best.min(v);
        }
    }
    best
}
