//! Balls: convexity and the closed-ball-is-closure-of-open-ball witness.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norm::NormSpec;
use crate::sampling::{self, SampleMode};
use crate::space::{Field, Vector};

/// Absolute tolerance for geometric identities.
pub const GEOMETRY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BallSpec {
    pub center: Vector,
    pub radius: f64,
    pub norm: NormSpec,
    pub closed: bool,
}

impl BallSpec {
    pub fn new(center: Vector, radius: f64, norm: NormSpec, closed: bool) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!("ball radius must be positive, got {radius}")));
        }
        center.check_dim(norm.dim())?;
        Ok(BallSpec {
            center,
            radius,
            norm,
            closed,
        })
    }

    pub fn distance_to_center(&self, x: &Vector) -> f64 {
        self.norm.eval_slice((x - &self.center).coords())
    }

    /// Membership up to [`GEOMETRY_TOL`].
    pub fn contains(&self, x: &Vector) -> bool {
        let d = self.distance_to_center(x);
        if self.closed {
            d <= self.radius + GEOMETRY_TOL
        } else {
            d < self.radius + GEOMETRY_TOL
        }
    }
}

/// The point z = a + (1 − ε/2γ)(y − a) for a sphere point y, with its two
/// distances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureWitness {
    pub z: Vector,
    pub dist_to_y: f64,
    pub dist_to_center: f64,
}

pub fn closure_witness(ball: &BallSpec, y: &Vector, eps: f64) -> ClosureWitness {
    let a = &ball.center;
    let z = a + &(y - a).scale_real(1.0 - eps / (2.0 * ball.radius));
    ClosureWitness {
        dist_to_y: ball.norm.eval_slice((&z - y).coords()),
        dist_to_center: ball.norm.eval_slice((&z - a).coords()),
        z,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityCounterexample {
    pub x: Vector,
    pub y: Vector,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureCounterexample {
    pub y: Vector,
    pub eps: f64,
    pub witness: ClosureWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub trials: usize,
    pub convexity_counterexamples: Vec<ConvexityCounterexample>,
    pub closure_counterexamples: Vec<ClosureCounterexample>,
    /// max |‖z − y‖ − ε/2|
    pub max_error_to_y: f64,
    /// max |‖z − a‖ − (2γ − ε)/2|
    pub max_error_to_center: f64,
}

impl GeometryReport {
    pub fn pass(&self) -> bool {
        self.convexity_counterexamples.is_empty() && self.closure_counterexamples.is_empty()
    }
}

fn point_in_ball(ball: &BallSpec, rng: &mut impl Rng, field: Field) -> Result<Vector> {
    let u = sampling::sample_unit_vectors_with(&ball.norm, 1, SampleMode::InBall, field, rng)?
        .pop()
        .expect("one sample");
    let mut x = &ball.center + &u.scale_real(ball.radius);
    if !ball.closed && ball.distance_to_center(&x) >= ball.radius {
        x = &ball.center + &u.scale_real(0.5 * ball.radius);
    }
    Ok(x)
}

/// Fuzz convexity of the ball and the closure-witness identities.
pub fn ball_geometry_check(ball: &BallSpec, trials: usize, seed: u64) -> Result<GeometryReport> {
    let field = if ball.center.is_real() && ball.norm.is_real() {
        Field::Real
    } else {
        Field::Complex
    };
    let mut rng = sampling::rng(seed);
    let mut rep = GeometryReport {
        trials,
        convexity_counterexamples: vec![],
        closure_counterexamples: vec![],
        max_error_to_y: 0.0,
        max_error_to_center: 0.0,
    };
    let g = ball.radius;
    for _ in 0..trials {
        let x = point_in_ball(ball, &mut rng, field)?;
        let y = point_in_ball(ball, &mut rng, field)?;
        let t: f64 = rng.random_range(0.0..=1.0);
        if !ball.contains(&x.lerp(&y, t)) && rep.convexity_counterexamples.len() < 5 {
            rep.convexity_counterexamples.push(ConvexityCounterexample { x, y, t });
        }

        let s = sampling::sample_unit_vectors_with(&ball.norm, 1, SampleMode::OnSphere, field, &mut rng)?
            .pop()
            .expect("one sample");
        let y = &ball.center + &s.scale_real(g);
        let mut eps: f64 = rng.random_range(0.0..2.0 * g);
        if eps == 0.0 {
            eps = g;
        }
        let w = closure_witness(ball, &y, eps);
        let e1 = (w.dist_to_y - eps / 2.0).abs();
        let e2 = (w.dist_to_center - (2.0 * g - eps) / 2.0).abs();
        rep.max_error_to_y = rep.max_error_to_y.max(e1);
        rep.max_error_to_center = rep.max_error_to_center.max(e2);
        let inside = w.dist_to_y < g + GEOMETRY_TOL && w.dist_to_center < g + GEOMETRY_TOL;
        if (e1 > GEOMETRY_TOL || e2 > GEOMETRY_TOL || !inside) && rep.closure_counterexamples.len() < 5 {
            rep.closure_counterexamples.push(ClosureCounterexample { y, eps, witness: w });
        }
    }
    Ok(rep)
}
