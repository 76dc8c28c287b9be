//! Independent reference computations used to cross-check the solvers:
//! a dense-SVD spectral norm and exhaustive grid extrema in low dimension.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest singular value from a full dense SVD.
pub fn oracle_svd_sigma_max(m: &Matrix) -> f64 {
    m.to_nalgebra()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Largest dimension the grid oracle accepts.
pub const GRID_MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum GridDomain {
    /// The box `lo <= x <= hi`.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `{ x in R^dim : max |x_i| = 1 }`, covered face by face.
    MaxSphere { dim: usize },
}

impl GridDomain {
    pub fn dim(&self) -> usize {
        match self {
            GridDomain::Box { lo, .. } => lo.len(),
            GridDomain::MaxSphere { dim } => *dim,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub value: f64,
    pub point: Vec<f64>,
    pub evaluations: usize,
}

struct Best {
    kind: Extremum,
    value: f64,
    point: Vec<f64>,
    evaluations: usize,
}

impl Best {
    fn new(kind: Extremum) -> Self {
        let value = match kind {
            Extremum::Min => f64::INFINITY,
            Extremum::Max => f64::NEG_INFINITY,
        };
        Best {
            kind,
            value,
            point: vec![],
            evaluations: 0,
        }
    }

    fn offer(&mut self, v: f64, x: &[f64]) {
        self.evaluations += 1;
        let better = match self.kind {
            Extremum::Min => v < self.value,
            Extremum::Max => v > self.value,
        };
        if better {
            self.value = v;
            self.point = x.to_vec();
        }
    }
}

/// Visit every point of the product grid with `res` subdivisions per free axis.
fn walk_box(lo: &[f64], hi: &[f64], res: usize, mut visit: impl FnMut(&[f64])) {
    let d = lo.len();
    let mut idx = vec![0usize; d];
    let mut x = lo.to_vec();
    loop {
        for k in 0..d {
            x[k] = if res == 0 {
                0.5 * (lo[k] + hi[k])
            } else {
                lo[k] + (hi[k] - lo[k]) * idx[k] as f64 / res as f64
            };
        }
        visit(&x);
        let mut k = 0;
        loop {
            if k == d {
                return;
            }
            idx[k] += 1;
            if idx[k] <= res {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn grid_into(f: &dyn Fn(&[f64]) -> f64, domain: &GridDomain, res: usize, best: &mut Best) {
    match domain {
        GridDomain::Box { lo, hi } => walk_box(lo, hi, res, |x| best.offer(f(x), x)),
        GridDomain::MaxSphere { dim } => {
            let n = *dim;
            for k in 0..n {
                for s in [1.0, -1.0] {
                    let lo = vec![-1.0; n - 1];
                    let hi = vec![1.0; n - 1];
                    let mut full = vec![0.0; n];
                    walk_box(&lo, &hi, res, |y| {
                        full[..k].copy_from_slice(&y[..k]);
                        full[k] = s;
                        full[k + 1..].copy_from_slice(&y[k..]);
                        best.offer(f(&full), &full);
                    });
                }
            }
        }
    }
}

fn check(domain: &GridDomain, resolution: usize) -> Result<()> {
    let d = domain.dim();
    if d == 0 {
        return Err(Error::EmptyVector);
    }
    if d > GRID_MAX_DIM {
        return Err(Error::DimensionGuard(d));
    }
    if resolution == 0 {
        return Err(Error::InvalidInput("grid resolution must be positive".into()));
    }
    if let GridDomain::Box { lo, hi } = domain {
        if lo.len() != hi.len() || lo.iter().zip(hi).any(|(a, b)| !(a <= b)) {
            return Err(Error::InvalidInput("grid box bounds".into()));
        }
    }
    Ok(())
}

/// Extremum of `f` over a regular grid with `resolution` subdivisions per
/// axis. Doubling the resolution refines the grid, so results are monotone
/// in the resolution along powers of two.
pub fn oracle_grid_extremum(
    f: &dyn Fn(&[f64]) -> f64,
    domain: &GridDomain,
    resolution: usize,
    kind: Extremum,
) -> Result<GridResult> {
    check(domain, resolution)?;
    let mut best = Best::new(kind);
    grid_into(f, domain, resolution, &mut best);
    Ok(GridResult {
        value: best.value,
        point: best.point,
        evaluations: best.evaluations,
    })
}

/// Grid search followed by `rounds` of zooming: each round re-grids a box of
/// two cells around the incumbent (clipped to the domain) and halves it.
pub fn oracle_grid_refined(
    f: &dyn Fn(&[f64]) -> f64,
    domain: &GridDomain,
    resolution: usize,
    rounds: usize,
    kind: Extremum,
) -> Result<GridResult> {
    check(domain, resolution)?;
    let mut best = Best::new(kind);
    grid_into(f, domain, resolution, &mut best);
    let d = domain.dim();
    let (lo_dom, hi_dom): (Vec<f64>, Vec<f64>) = match domain {
        GridDomain::Box { lo, hi } => (lo.clone(), hi.clone()),
        GridDomain::MaxSphere { dim } => (vec![-1.0; *dim], vec![1.0; *dim]),
    };
    let mut half: Vec<f64> = (0..d).map(|k| 2.0 * (hi_dom[k] - lo_dom[k]) / resolution as f64).collect();
    let local_res = 8;
    for _ in 0..rounds {
        let center = best.point.clone();
        // on the max-sphere the active coordinate stays pinned
        let pinned = match domain {
            GridDomain::MaxSphere { .. } => center.iter().position(|v| v.abs() == 1.0),
            GridDomain::Box { .. } => None,
        };
        let lo: Vec<f64> = (0..d)
            .map(|k| if Some(k) == pinned { center[k] } else { (center[k] - half[k]).max(lo_dom[k]) })
            .collect();
        let hi: Vec<f64> = (0..d)
            .map(|k| if Some(k) == pinned { center[k] } else { (center[k] + half[k]).min(hi_dom[k]) })
            .collect();
        walk_box(&lo, &hi, local_res, |x| best.offer(f(x), x));
        for h in half.iter_mut() {
            *h *= 0.5;
        }
    }
    Ok(GridResult {
        value: best.value,
        point: best.point,
        evaluations: best.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svd_oracle_on_diagonal() {
        let m = Matrix::diag(&[2.0, -3.0, 1.0]);
        assert!((oracle_svd_sigma_max(&m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn svd_oracle_rank_one() {
        // u v^T has sigma = |u| |v|
        let m = Matrix::from_real_rows(&[vec![3.0, 6.0], vec![4.0, 8.0]]).unwrap();
        assert!((oracle_svd_sigma_max(&m) - 5.0 * 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn grid_minimum_of_l1_on_max_sphere() {
        let f = |x: &[f64]| x.iter().map(|a| a.abs()).sum::<f64>();
        let r = oracle_grid_extremum(&f, &GridDomain::MaxSphere { dim: 3 }, 4, Extremum::Min).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.evaluations, 6 * 25);
    }

    #[test]
    fn grid_maximum_on_box() {
        let f = |x: &[f64]| -(x[0] - 0.25).powi(2) - (x[1] + 0.5).powi(2);
        let dom = GridDomain::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 1.0],
        };
        let r = oracle_grid_extremum(&f, &dom, 8, Extremum::Max).unwrap();
        assert_eq!(r.point, vec![0.25, -0.5]);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn doubling_resolution_never_worsens() {
        let f = |x: &[f64]| (x[0] - 0.3).hypot(2.0 * x[1] + 0.1);
        let dom = GridDomain::MaxSphere { dim: 2 };
        let mut prev = f64::INFINITY;
        for res in [2, 4, 8, 16, 32, 64] {
            let v = oracle_grid_extremum(&f, &dom, res, Extremum::Min).unwrap().value;
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn refinement_converges_on_smooth_minimum() {
        let f = |x: &[f64]| (x[0] - 0.123456).powi(2) + (x[1] - 0.654321).powi(2);
        let dom = GridDomain::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 1.0],
        };
        let r = oracle_grid_refined(&f, &dom, 16, 30, Extremum::Min).unwrap();
        assert!(r.value < 1e-14, "{r:?}");
    }

    #[test]
    fn guards() {
        let f = |_: &[f64]| 0.0;
        assert!(matches!(
            oracle_grid_extremum(&f, &GridDomain::MaxSphere { dim: 5 }, 2, Extremum::Min),
            Err(Error::DimensionGuard(5))
        ));
        assert!(oracle_grid_extremum(&f, &GridDomain::MaxSphere { dim: 2 }, 0, Extremum::Min).is_err());
    }
}
