//! Low-dimensional convex minimization.
//!
//! Every optimization problem in the toolkit that has a convex formulation
//! (distances to subspaces, functional norms, the one-step extension
//! endpoints, face minima for equivalence constants) is solved here with the
//! central-cut ellipsoid method. It needs only values and subgradients, is
//! global for convex objectives, and yields a lower bound alongside the best
//! point, so the reported gap is a real accuracy statement whenever the
//! subgradients are exact.

/// A convex objective: value and one subgradient at a point.
pub type Objective<'a> = dyn Fn(&[f64]) -> (f64, Vec<f64>) + 'a;

/// A convex feasibility constraint on the search variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    /// `lo <= x[index] <= hi`
    Interval { index: usize, lo: f64, hi: f64 },
    /// `|(x[re], x[im])| <= radius`
    Disc { re: usize, im: usize, radius: f64 },
}

impl Constraint {
    /// Gradient (sparse) and depth of the violated constraint, if any.
    fn violation(&self, x: &[f64]) -> Option<(Vec<(usize, f64)>, f64)> {
        match *self {
            Constraint::Interval { index, lo, hi } => {
                if x[index] > hi {
                    Some((vec![(index, 1.0)], x[index] - hi))
                } else if x[index] < lo {
                    Some((vec![(index, -1.0)], lo - x[index]))
                } else {
                    None
                }
            }
            Constraint::Disc { re, im, radius } => {
                let r = x[re].hypot(x[im]);
                if r > radius {
                    Some((vec![(re, x[re] / r), (im, x[im] / r)], r - radius))
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EllipsoidOptions {
    /// Absolute gap at which to stop.
    pub tol: f64,
    pub max_iter: usize,
    /// Largest box half-width tried by [`minimize_unbounded`].
    pub max_radius: f64,
}

impl Default for EllipsoidOptions {
    fn default() -> Self {
        EllipsoidOptions {
            tol: 1e-12,
            max_iter: 40_000,
            max_radius: 1e15,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub value: f64,
    pub point: Vec<f64>,
    /// Lower bound on the constrained minimum (valid for exact subgradients).
    pub lower_bound: f64,
    pub iterations: usize,
}

impl Minimum {
    pub fn gap(&self) -> f64 {
        self.value - self.lower_bound
    }
}

fn feasible(constraints: &[Constraint], x: &[f64]) -> Option<(Vec<(usize, f64)>, f64)> {
    constraints.iter().find_map(|c| c.violation(x))
}

/// Pull a point into the feasible set (used for the returned best point when
/// no iterate was feasible).
fn project(constraints: &[Constraint], x: &mut [f64]) {
    for c in constraints {
        match *c {
            Constraint::Interval { index, lo, hi } => x[index] = x[index].clamp(lo, hi),
            Constraint::Disc { re, im, radius } => {
                let r = x[re].hypot(x[im]);
                if r > radius {
                    x[re] *= radius / r;
                    x[im] *= radius / r;
                }
            }
        }
    }
}

/// Minimize a convex function over `constraints`, starting from the ball of
/// `radius` around `center`, which must contain a minimizer.
pub fn ellipsoid_minimize(
    f: &Objective<'_>,
    constraints: &[Constraint],
    center: &[f64],
    radius: f64,
    opts: EllipsoidOptions,
) -> Minimum {
    let d = center.len();
    match d {
        0 => {
            let (v, _) = f(&[]);
            Minimum {
                value: v,
                point: vec![],
                lower_bound: v,
                iterations: 1,
            }
        }
        1 => bisect(f, constraints, center[0], radius, opts),
        _ => ellipsoid(f, constraints, center, radius, opts),
    }
}

fn bisect(
    f: &Objective<'_>,
    constraints: &[Constraint],
    center: f64,
    radius: f64,
    opts: EllipsoidOptions,
) -> Minimum {
    let mut lo = center - radius;
    let mut hi = center + radius;
    for c in constraints {
        if let Constraint::Interval { lo: l, hi: h, .. } = *c {
            lo = lo.max(l);
            hi = hi.min(h);
        }
    }
    let mut best = {
        let mut x = [center];
        project(constraints, &mut x);
        let (v, _) = f(&x);
        (v, x[0])
    };
    let mut lower = f64::NEG_INFINITY;
    let mut it = 0;
    for &x in &[lo, hi] {
        let (v, _) = f(&[x]);
        if v < best.0 {
            best = (v, x);
        }
    }
    while it < opts.max_iter && hi - lo > 0.0 {
        it += 1;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (v, g) = f(&[mid]);
        if v < best.0 {
            best = (v, mid);
        }
        let g = g[0];
        lower = lower.max(v - g.abs() * (hi - lo));
        if g > 0.0 {
            hi = mid;
        } else if g < 0.0 {
            lo = mid;
        } else {
            lower = v;
            break;
        }
        if best.0 - lower <= opts.tol {
            break;
        }
    }
    Minimum {
        value: best.0,
        point: vec![best.1],
        lower_bound: lower.min(best.0),
        iterations: it,
    }
}

fn ellipsoid(
    f: &Objective<'_>,
    constraints: &[Constraint],
    center: &[f64],
    radius: f64,
    opts: EllipsoidOptions,
) -> Minimum {
    // square-root form: the ellipsoid is {x + A u : |u| <= 1}, which keeps
    // very eccentric ellipsoids representable
    let d = center.len();
    let df = d as f64;
    let mut x = center.to_vec();
    let mut a = vec![0.0; d * d];
    for i in 0..d {
        a[i * d + i] = radius;
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut lower = f64::NEG_INFINITY;
    let mut it = 0;
    let mut at_g = vec![0.0; d];
    let mut p = vec![0.0; d];
    while it < opts.max_iter {
        it += 1;
        let (g, depth, objective_cut) = match feasible(constraints, &x) {
            Some((sparse, h)) => {
                let mut g = vec![0.0; d];
                for (i, v) in sparse {
                    g[i] = v;
                }
                (g, h, false)
            }
            None => {
                let (v, g) = f(&x);
                let b = match &best {
                    Some((b, _)) if *b <= v => *b,
                    _ => {
                        best = Some((v, x.clone()));
                        v
                    }
                };
                (g, v - b, true)
            }
        };
        // at_g = A^T g
        for j in 0..d {
            at_g[j] = (0..d).map(|i| a[i * d + j] * g[i]).sum();
        }
        let s = at_g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(s > 0.0) || !s.is_finite() {
            if objective_cut {
                // zero subgradient: the current point is optimal
                if let Some((b, _)) = &best {
                    lower = lower.max(*b);
                }
            }
            break;
        }
        if objective_cut {
            let v = best.as_ref().map(|(b, _)| *b).unwrap_or(f64::INFINITY) + depth;
            lower = lower.max(v - s);
            if let Some((b, _)) = &best {
                if b - lower <= opts.tol {
                    break;
                }
            }
        }
        let alpha = (depth / s).max(0.0);
        if alpha >= 1.0 {
            // the cut removes the whole ellipsoid: nothing better is left
            if objective_cut {
                if let Some((b, _)) = &best {
                    lower = lower.max(*b);
                }
            }
            break;
        }
        for u in at_g.iter_mut() {
            *u /= s;
        }
        for i in 0..d {
            p[i] = (0..d).map(|j| a[i * d + j] * at_g[j]).sum();
        }
        let tau = (1.0 + df * alpha) / (df + 1.0);
        for i in 0..d {
            x[i] -= tau * p[i];
        }
        let delta = df * df * (1.0 - alpha * alpha) / (df * df - 1.0);
        let sigma = 2.0 * (1.0 + df * alpha) / ((df + 1.0) * (1.0 + alpha));
        let gamma = 1.0 - (1.0 - sigma).max(0.0).sqrt();
        let sd = delta.sqrt();
        for i in 0..d {
            for j in 0..d {
                a[i * d + j] = sd * (a[i * d + j] - gamma * p[i] * at_g[j]);
            }
        }
    }
    let (value, point) = best.unwrap_or_else(|| {
        let mut y = x.clone();
        project(constraints, &mut y);
        (f(&y).0, y)
    });
    Minimum {
        value,
        point,
        lower_bound: lower.min(value),
        iterations: it,
    }
}

/// How [`minimize_unbounded`] decides it has grown the trust region enough.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    /// Coercive objective: stop once the minimizer is well inside the box.
    UntilInterior,
    /// Infimum possibly approached only at infinity: stop when a doubling
    /// improves the value by less than the tolerance.
    UntilStagnant,
}

/// Minimize over all of R^d by solving on boxes `|x_i| <= R` with doubling R.
pub fn minimize_unbounded(
    f: &Objective<'_>,
    d: usize,
    start_radius: f64,
    opts: EllipsoidOptions,
    growth: Growth,
) -> Minimum {
    if d == 0 {
        return ellipsoid_minimize(f, &[], &[], 1.0, opts);
    }
    let mut r = start_radius.max(1e-300);
    let mut prev: Option<Minimum> = None;
    let mut iterations = 0;
    loop {
        let constraints: Vec<Constraint> = (0..d)
            .map(|index| Constraint::Interval { index, lo: -r, hi: r })
            .collect();
        let mut m = ellipsoid_minimize(
            f,
            &constraints,
            &vec![0.0; d],
            r * (d as f64).sqrt() * 1.0001,
            opts,
        );
        iterations += m.iterations;
        m.iterations = iterations;
        let interior = m.point.iter().all(|v| v.abs() <= 0.5 * r);
        let done = match growth {
            Growth::UntilInterior => interior,
            Growth::UntilStagnant => {
                interior
                    || prev
                        .as_ref()
                        .is_some_and(|p| p.value - m.value <= opts.tol)
            }
        };
        let m = match prev {
            Some(p) if p.value < m.value => Minimum {
                iterations,
                ..p
            },
            _ => m,
        };
        if done || 2.0 * r > opts.max_radius {
            if !interior {
                // lower bound only covered the box
                return Minimum {
                    lower_bound: f64::NEG_INFINITY,
                    ..m
                };
            }
            return m;
        }
        prev = Some(m);
        r *= 2.0;
    }
}

/// Central-difference gradient.
pub fn fd_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> Vec<f64> {
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = 1e-6 * x[i].abs().max(1e-3);
            y[i] = x[i] + h;
            let up = f(&y);
            y[i] = x[i] - h;
            let down = f(&y);
            y[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}
