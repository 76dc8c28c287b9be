//! JSON-in, [`Report`]-out entry points behind each command-line subcommand.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::bilinear::{bilinear_norm_seeded, curry, elementary_tensor_form, uncurry, BilinearForm};
use crate::equivalence::{equivalence_constants, verify_sandwich};
use crate::error::{Error, Result};
use crate::hahn_banach::{
    annihilating_functional, extend_functional, norming_functional, one_step_extension, SubspaceFunctional,
};
use crate::lp::{
    cauchy_limit, dual_norm, holder_pairing, lp_norm, minkowski_verify, ConjugatePair, DualFunctional,
    TruncatedSequence,
};
use crate::norm::{check_norm_axioms, NormSpec};
use crate::operators::{check_bound, isometry_test, operator_norm_with, LinearOperator, OperatorNormOptions};
use crate::oracle::{oracle_grid_refined, oracle_svd_sigma_max, Extremum, GridDomain, GRID_MAX_DIM};
use crate::report::Report;
use crate::sampling;
use crate::space::{Field, Scalar, Vector};
use crate::tensor::{check_factorization, tensor_embed, tensor_linearize, BasisValues, FiniteSupportFunction, Index};
use crate::{equivalence::basis_zero_norm, suite};

pub const COMMANDS: [&str; 16] = [
    "norm",
    "axioms",
    "opnorm",
    "isometry",
    "equiv",
    "lp",
    "holder",
    "minkowski",
    "dual",
    "cauchy",
    "hb-extend",
    "norming",
    "annihilate",
    "bilinear",
    "tensor",
    "suite",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tol: 1e-8,
            samples: 10_000,
        }
    }
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Runs `command` on `input`. Errors are either malformed input or one of
/// the mathematical failures flagged by [`Error::is_mathematical`].
pub fn dispatch(command: &str, input: Value, cfg: &RunConfig) -> Result<Report> {
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::InvalidInput("--tol must be positive".into()));
    }
    if cfg.samples == 0 {
        return Err(Error::InvalidInput("--samples must be positive".into()));
    }
    let r = match command {
        "norm" => norm(input)?,
        "axioms" => axioms(input, cfg)?,
        "opnorm" => opnorm(input, cfg)?,
        "isometry" => isometry(input, cfg)?,
        "equiv" => equiv(input, cfg)?,
        "lp" => lp(input)?,
        "holder" => holder(input)?,
        "minkowski" => minkowski(input)?,
        "dual" => dual(input, cfg)?,
        "cauchy" => cauchy(input, cfg)?,
        "hb-extend" => hb_extend(input, cfg)?,
        "norming" => norming(input, cfg)?,
        "annihilate" => annihilate(input, cfg)?,
        "bilinear" => bilinear(input, cfg)?,
        "tensor" => tensor(input, cfg)?,
        "suite" => {
            let extra = if input.is_null() {
                suite::SuiteInput::default()
            } else {
                parse(input)?
            };
            suite::run_suite(cfg, &extra)
        }
        other => return Err(Error::InvalidInput(format!("unknown command {other:?}"))),
    };
    Ok(r.finish())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormInput {
    norm: NormSpec,
    x: Vector,
}

fn norm(input: Value) -> Result<Report> {
    let i: NormInput = parse(input)?;
    let mut r = Report::new("norm");
    r.value("norm", i.norm.eval(&i.x)?);
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxiomsInput {
    norm: NormSpec,
}

pub(crate) fn axioms_report(norm: &NormSpec, samples: usize, seed: u64) -> Report {
    let a = check_norm_axioms(norm, samples, seed);
    let mut r = Report::new("axioms");
    r.value("samples", a.samples as f64);
    for (name, o) in [
        ("nonnegativity", &a.nonnegativity),
        ("definiteness", &a.definiteness),
        ("homogeneity", &a.homogeneity),
        ("triangle", &a.triangle),
    ] {
        r.value(format!("{name}_violations"), o.violations as f64);
        for (k, v) in o.examples.iter().enumerate() {
            r.witness(format!("{name}_{k}"), v.clone());
        }
        r.require(o.holds(), format!("{name} fails on {} of {} samples", o.violations, o.checked));
    }
    r
}

fn axioms(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: AxiomsInput = parse(input)?;
    Ok(axioms_report(&i.norm, cfg.samples, cfg.seed))
}

fn opnorm(input: Value, cfg: &RunConfig) -> Result<Report> {
    let t: LinearOperator = parse(input)?;
    let res = operator_norm_with(
        &t,
        OperatorNormOptions {
            tol: cfg.tol,
            seed: cfg.seed,
            ..Default::default()
        },
    )?;
    let cert = check_bound(&t, res.value, cfg.samples, cfg.seed);
    let mut r = Report::new("opnorm");
    r.value("value", res.value)
        .value("certified_lower", res.certified_lower)
        .value("sup_closed_ball", res.sup.closed_ball)
        .value("sup_sphere", res.sup.sphere)
        .value("sup_open_ball", res.sup.open_ball)
        .value("bound_violations", cert.violation_count as f64)
        .witness("witness", res.witness.clone());
    if let Some(u) = res.upper_bound {
        r.value("upper_bound", u);
    }
    r.note(format!(
        "method: {}",
        serde_json::to_value(res.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    ));
    if !res.certified {
        r.note("value is the best lower bound found by multistart ascent");
    }
    if t.source().exponent().map(|p| p.value()) == Some(2.0) && t.target().exponent().map(|p| p.value()) == Some(2.0)
    {
        let s = oracle_svd_sigma_max(t.matrix());
        r.value("oracle_svd", s);
        r.require(
            (res.value - s).abs() <= 1e-8 * s.max(f64::MIN_POSITIVE),
            format!("power iteration {} disagrees with the SVD oracle {s}", res.value),
        );
    }
    for (k, v) in cert.violations.iter().enumerate() {
        r.witness(format!("violation_{k}"), v.clone());
    }
    r.require(cert.certified(), "sampled vectors exceed the computed bound");
    r.require(res.sup.agree, "sup over ball, sphere and open ball disagree");
    Ok(r)
}

fn isometry(input: Value, cfg: &RunConfig) -> Result<Report> {
    let t: LinearOperator = parse(input)?;
    let rep = isometry_test(&t, cfg.samples.min(2_000), cfg.seed)?;
    let mut r = Report::new("isometry");
    r.value("rank", rep.rank as f64).value("samples", rep.samples as f64);
    if let Some(n) = rep.operator_norm {
        r.value("operator_norm", n);
    }
    if let Some(c) = rep.counterexample {
        r.witness("counterexample", c);
    }
    r.require(rep.norm_preserved, "norm not preserved");
    r.require(rep.distances_preserved, "distances not preserved");
    r.require(rep.injective, "map is not injective");
    r.require(rep.norm_is_one != Some(false), "operator norm differs from 1");
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivInput {
    basis: Vec<Vector>,
    norm: NormSpec,
}

/// min ‖Σ α_i b_i‖ over max |α_i| = 1 by grid search (real bases, n ≤ 4).
pub fn grid_lower_constant(basis: &[Vector], norm: &NormSpec, resolution: usize) -> Result<(f64, Vec<f64>)> {
    let n = basis.len();
    if n > GRID_MAX_DIM {
        return Err(Error::DimensionGuard(n));
    }
    if !basis.iter().all(Vector::is_real) || !norm.is_real() {
        return Err(Error::ComplexInput("grid oracle works over the reals"));
    }
    let dim = norm.dim();
    let f = |a: &[f64]| {
        let mut x = vec![Scalar::new(0.0, 0.0); dim];
        for (ai, b) in a.iter().zip(basis) {
            for (xk, bk) in x.iter_mut().zip(b.iter()) {
                *xk += bk * *ai;
            }
        }
        norm.eval_slice(&x)
    };
    let g = oracle_grid_refined(&f, &GridDomain::MaxSphere { dim: n }, resolution, 12, Extremum::Min)?;
    Ok((g.value, g.point))
}

fn equiv(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: EquivInput = parse(input)?;
    let c = equivalence_constants(&i.basis, &i.norm, cfg.tol)?;
    let s = verify_sandwich(&c, cfg.samples, cfg.seed)?;
    let mut r = Report::new("equiv");
    r.value("a", c.a)
        .value("a_lower", c.a_lower)
        .value("b", c.b)
        .value("lower_violations", s.lower_violations as f64)
        .value("upper_violations", s.upper_violations as f64)
        .witness("a_witness", c.a_witness.clone());
    if let Some(b) = c.b_sharp {
        r.value("b_sharp", b);
    }
    r.real_witness("basis_norms", &c.basis_norms);
    if c.basis.len() <= 3 && c.a_witness.is_real() && i.norm.is_real() && i.basis.iter().all(Vector::is_real) {
        let (g, _) = grid_lower_constant(&i.basis, &i.norm, 64)?;
        r.value("a_grid", g);
        r.require((g - c.a).abs() <= 1e-3, format!("a = {} differs from the grid oracle {g}", c.a));
    }
    let z = basis_zero_norm(&i.basis, &c.a_witness)?;
    r.value("a_witness_zero_norm", z);
    r.require(s.pass(), "sandwich inequality violated on samples");
    Ok(r)
}

fn lp(input: Value) -> Result<Report> {
    let x: TruncatedSequence = parse(input)?;
    let n = lp_norm(&x);
    let mut r = Report::new("lp");
    r.value("norm_lo", n.lo).value("norm_hi", n.hi).value("width", n.width());
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    x: TruncatedSequence,
    y: TruncatedSequence,
}

fn holder(input: Value) -> Result<Report> {
    let i: PairInput = parse(input)?;
    let pair = ConjugatePair::new(i.x.exponent().value(), i.y.exponent().value())?;
    let h = holder_pairing(&i.x, &i.y, pair)?;
    let mut r = Report::new("holder");
    r.value("pairing_lo", h.pairing.lo)
        .value("pairing_hi", h.pairing.hi)
        .value("bound", h.bound)
        .value("slack", h.slack)
        .value("young_violations", h.young_violations as f64);
    if let Some(s) = h.power_sum_x {
        r.value("power_sum_x", s);
    }
    if let Some(s) = h.power_sum_y {
        r.value("power_sum_y", s);
    }
    if h.extension {
        r.note("p = 1 with q = inf pairs l^1 against bounded sequences");
    }
    r.require(h.holds, "pairing exceeds the Hoelder bound");
    r.require(h.young_violations == 0, "Young's inequality fails on normalized terms");
    Ok(r)
}

fn minkowski(input: Value) -> Result<Report> {
    let i: PairInput = parse(input)?;
    let m = minkowski_verify(&i.x, &i.y)?;
    let mut r = Report::new("minkowski");
    r.value("lhs_lo", m.lhs.lo).value("lhs_hi", m.lhs.hi).value("rhs", m.rhs).value("slack", m.slack);
    r.require(m.holds, "triangle inequality fails");
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DualInput {
    f: TruncatedSequence,
    m: Option<usize>,
}

fn dual(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: DualInput = parse(input)?;
    let m = i.m.unwrap_or(i.f.len());
    let f = DualFunctional::new(i.f);
    let d = dual_norm(&f, m, cfg.samples.min(4_096), cfg.seed)?;
    let mut r = Report::new("dual");
    r.value("upper", d.upper)
        .value("lower", d.lower)
        .value("witness_ratio", d.witness_ratio)
        .value("sampled_best", d.sampled_best)
        .value("gap", d.gap)
        .value("tail_contribution", d.tail_contribution);
    r.require(d.within_bound, "upper - lower exceeds the tail contribution");
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CauchyInput {
    #[serde(default)]
    sequences: Vec<TruncatedSequence>,
    #[serde(default)]
    eps: Vec<f64>,
    /// Shorthand for x_m = (1, 1/2, …, 1/m, 0, …), m = 1..=harmonic, with
    /// schedule 1/√m.
    harmonic: Option<usize>,
}

pub(crate) fn harmonic_family(count: usize) -> Result<(Vec<TruncatedSequence>, Vec<f64>)> {
    let seqs = (1..=count)
        .map(|m| {
            let prefix: Vec<f64> = (1..=m).map(|j| 1.0 / j as f64).collect();
            TruncatedSequence::from_real(&prefix, 2.0)
        })
        .collect::<Result<Vec<_>>>()?;
    let eps = (1..=count).map(|m| 1.0 / (m as f64).sqrt()).collect();
    Ok((seqs, eps))
}

fn cauchy(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: CauchyInput = parse(input)?;
    let (seqs, eps) = match i.harmonic {
        Some(m) if i.sequences.is_empty() && i.eps.is_empty() => harmonic_family(m)?,
        Some(_) => return Err(Error::InvalidInput("give either \"harmonic\" or \"sequences\"".into())),
        None => (i.sequences, i.eps),
    };
    let l = cauchy_limit(&seqs, &eps, cfg.tol.max(1e-10))?;
    let mut r = Report::new("cauchy");
    r.value("limit_radius", l.limit_radius)
        .value("pairs_checked", l.pairs_checked as f64)
        .value("last_coordinate_change", l.last_coordinate_change)
        .value("max_distance", l.distances.iter().cloned().fold(0.0, f64::max));
    if i.harmonic.is_some() {
        let err = l
            .limit
            .iter()
            .enumerate()
            .map(|(j, x)| (x - Scalar::new(1.0 / (j + 1) as f64, 0.0)).norm())
            .fold(0.0, f64::max);
        r.value("max_error_vs_1_over_j", err);
    }
    if let Ok(v) = Vector::new(l.limit.clone()) {
        r.witness("limit", v);
    }
    r.require(l.within_schedule, "distances to the limit exceed the schedule");
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HbInput {
    basis: Vec<Vector>,
    values: Vec<f64>,
    norm: NormSpec,
    x0: Option<Vector>,
}

fn hb_extend(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: HbInput = parse(input)?;
    let tol = cfg.tol;
    let f = SubspaceFunctional::new(i.basis.clone(), i.values.clone(), i.norm.clone(), tol)?;
    let mut r = Report::new("hb-extend");
    r.value("f_norm", f.subspace_norm());
    let (g, ratio) = match i.x0 {
        Some(x0) => {
            let (g, step) = one_step_extension(&f, &x0, tol)?;
            r.value("a", step.a).value("b", step.b).value("c", step.c).value("g_norm", step.g_norm);
            r.require(step.certified, "extended norm exceeds the original");
            let ratio = if step.f_norm > 0.0 { step.g_norm / step.f_norm } else { 1.0 };
            (g, ratio)
        }
        None => {
            let ext = extend_functional(&f, tol)?;
            r.real_witness("coefficients", &ext.coefficients);
            (ext.functional, ext.norm_ratio)
        }
    };
    r.value("norm_ratio", ratio);
    let mut restriction_error: f64 = 0.0;
    for (b, v) in i.basis.iter().zip(&i.values) {
        restriction_error = restriction_error.max((g.eval(b)? - v).abs() / v.abs().max(1.0));
    }
    r.value("restriction_error", restriction_error);
    let n = i.norm.dim() as f64;
    r.require(restriction_error <= 1e-12, "extension does not agree with f on M");
    r.require(ratio <= 1.0 + n * tol, format!("norm ratio {ratio} exceeds 1 + n tol"));
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormingInput {
    x: Vector,
    norm: NormSpec,
}

fn norming(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: NormingInput = parse(input)?;
    let nf = norming_functional(&i.x, &i.norm, cfg.tol)?;
    let mut r = Report::new("norming");
    r.value("norm_of_x", nf.norm_of_x)
        .value("value_at_x", nf.value_at_x)
        .value("pairing", nf.pairing)
        .value("dual_norm", nf.dual_norm)
        .real_witness("coefficients", &nf.coefficients);
    r.require(nf.value_at_x == nf.norm_of_x, "<x, x'> differs from |x|");
    r.require((nf.dual_norm - 1.0).abs() <= 1e-6, format!("dual norm {} is not 1", nf.dual_norm));
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnihilateInput {
    x: Vector,
    basis: Vec<Vector>,
    norm: NormSpec,
}

fn annihilate(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: AnnihilateInput = parse(input)?;
    let a = annihilating_functional(&i.x, &i.basis, &i.norm, cfg.tol)?;
    let mut r = Report::new("annihilate");
    r.value("distance", a.distance)
        .value("value_at_x", a.value_at_x)
        .value("pairing", a.pairing)
        .value("max_on_subspace", a.max_on_subspace)
        .value("dual_norm", a.dual_norm)
        .real_witness("coefficients", &a.coefficients);
    r.require(a.value_at_x == 1.0, "x'(x) differs from 1");
    r.require(a.max_on_subspace <= 1e-8, "x' does not vanish on F");
    r.require(a.norm_certified, "|x'| exceeds 1/d");
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BilinearInput {
    form: Option<BilinearForm>,
    xp: Option<Vector>,
    yp: Option<Vector>,
    left: Option<NormSpec>,
    right: Option<NormSpec>,
}

fn bilinear(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: BilinearInput = parse(input)?;
    let mut r = Report::new("bilinear");
    let phi = match (i.form, i.xp, i.yp, i.left, i.right) {
        (Some(f), None, None, None, None) => f,
        (None, Some(xp), Some(yp), Some(l), Some(rn)) => {
            let phi = elementary_tensor_form(&xp, &yp, l.clone(), rn.clone())?;
            let expected = l.dual_norm(xp.coords()) * rn.dual_norm(yp.coords());
            r.value("dual_norm_product", expected);
            phi
        }
        _ => {
            return Err(Error::InvalidInput(
                "give either \"form\" or all of \"xp\", \"yp\", \"left\", \"right\"".into(),
            ))
        }
    };
    let b = bilinear_norm_seeded(&phi, cfg.tol, cfg.seed)?;
    r.value("value", b.value)
        .value("certified_lower", b.certified_lower)
        .value("upper_bound", b.upper_bound)
        .value("criterion_violations", b.criterion.violations as f64)
        .witness("witness_x", b.witness_x.clone())
        .witness("witness_y", b.witness_y.clone());
    if let Some(&e) = r.values.get("dual_norm_product") {
        r.require(
            (b.value - e).abs() <= 1e-6 * e.max(1.0),
            format!("norm {} differs from the product of dual norms {e}", b.value),
        );
    }
    let t = curry(&phi);
    r.require(uncurry(&t)? == phi, "curry/uncurry round trip is not exact");
    let on = operator_norm_with(
        &t,
        OperatorNormOptions {
            tol: cfg.tol,
            seed: cfg.seed,
            ..Default::default()
        },
    )?;
    r.value("curried_operator_norm", on.value);
    r.require(
        (on.value - b.value).abs() <= 2.0 * cfg.tol * b.value.max(1.0),
        "operator norm of the curried map differs from the bilinear norm",
    );
    r.require(b.criterion.violations == 0, "|phi(x,y)| exceeds |phi| |x| |y| on samples");
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorInput {
    f: Option<FiniteSupportFunction<Scalar>>,
    g: Option<FiniteSupportFunction<Scalar>>,
    psi: Option<std::collections::BTreeMap<String, crate::space::ScalarRepr>>,
    a: Option<Vec<Value>>,
    b: Option<Vec<Value>>,
}

fn index_of(v: &Value) -> Result<Index> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Index::Int)
            .ok_or_else(|| Error::InvalidInput(format!("index {n} is not an integer"))),
        Value::String(s) if !s.contains('|') => s.parse(),
        _ => Err(Error::InvalidInput(format!("bad index {v}"))),
    }
}

fn tensor(input: Value, cfg: &RunConfig) -> Result<Report> {
    let i: TensorInput = parse(input)?;
    let mut r = Report::new("tensor");
    match (i.f, i.g, i.psi, i.a, i.b) {
        (Some(f), Some(g), None, None, None) => {
            let h = tensor_embed(&f, &g)?;
            r.value("support_size", h.len() as f64);
            r.require(h.len() == f.len() * g.len(), "support size is not |supp f| |supp g|");
            r.note(serde_json::to_string(&h).expect("serializable"));
        }
        (None, None, Some(psi), Some(a), Some(b)) => {
            let a = a.iter().map(index_of).collect::<Result<Vec<_>>>()?;
            let b = b.iter().map(index_of).collect::<Result<Vec<_>>>()?;
            let mut values = BasisValues::new();
            for (k, v) in psi {
                match k.parse::<Index>()? {
                    Index::Pair(x, y) => {
                        values.insert((*x, *y), Scalar::from(v));
                    }
                    _ => return Err(Error::InvalidInput(format!("psi key {k:?} is not a pair"))),
                }
            }
            let t = tensor_linearize(&values, &a, &b)?;
            let mut rng = sampling::substream(cfg.seed, 0x7E_45);
            let extra = random_pairs(&a, &b, 100, &mut rng);
            let rep = check_factorization(&t, &values, &extra)?;
            r.value("basis_pairs", rep.basis_pairs as f64)
                .value("random_pairs", rep.random_pairs as f64)
                .value("max_error", rep.max_error);
            r.require(rep.max_error <= 1e-12, "T(Psi0(f, g)) differs from psi(f, g)");
        }
        _ => {
            return Err(Error::InvalidInput(
                "give either \"f\" and \"g\", or \"psi\", \"a\" and \"b\"".into(),
            ))
        }
    }
    Ok(r)
}

/// Random dense functions on A and B with Gaussian values.
pub(crate) fn random_pairs(
    a: &[Index],
    b: &[Index],
    count: usize,
    rng: &mut sampling::SampleRng,
) -> Vec<(FiniteSupportFunction<Scalar>, FiniteSupportFunction<Scalar>)> {
    let mut draw = |set: &[Index]| {
        FiniteSupportFunction::from_pairs(
            set.iter()
                .map(|k| (k.clone(), sampling::gaussian_scalar(&mut *rng, Field::Real)))
                .collect::<Vec<_>>(),
        )
    };
    (0..count).map(|_| (draw(a), draw(b))).collect()
}

/// Result of one command-line run: exit code 0 on pass, 1 on a
/// mathematical failure, 2 on malformed input.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Option<Report>,
    pub error: Option<String>,
}

pub fn execute(command: &str, input: Value, cfg: &RunConfig) -> Outcome {
    match dispatch(command, input, cfg) {
        Ok(r) => Outcome {
            code: if r.pass { 0 } else { 1 },
            report: Some(r),
            error: None,
        },
        Err(e) if e.is_mathematical() => Outcome {
            code: 1,
            report: Some(Report::failure(command, &e)),
            error: None,
        },
        Err(e) => Outcome {
            code: 2,
            report: None,
            error: Some(e.to_string()),
        },
    }
}
