//! Seeded property suite covering every module, run by `normkit suite`.

use rand::Rng;
use serde::Deserialize;

use crate::bilinear::{bilinear_norm_seeded, curry, elementary_tensor_form, square_not_uniformly_continuous, uncurry, BilinearForm};
use crate::commands::{axioms_report, grid_lower_constant, harmonic_family, random_pairs, RunConfig};
use crate::equivalence::{equivalence_constants, verify_sandwich};
use crate::geometry::{ball_geometry_check, BallSpec};
use crate::hahn_banach::{annihilating_functional, extend_functional, norming_functional, SubspaceFunctional};
use crate::lp::{cauchy_limit, dual_norm, holder_pairing, minkowski_verify, ConjugatePair, DualFunctional, TruncatedSequence};
use crate::norm::NormSpec;
use crate::operators::{check_bound, isometry_test, operator_norm_with, LinearOperator, OperatorNormOptions};
use crate::oracle::oracle_svd_sigma_max;
use crate::report::Report;
use crate::sampling::{self, SampleMode, SampleRng};
use crate::space::{Field, Scalar, Vector};
use crate::tensor::{check_factorization, tensor_linearize, BasisValues, Index};

/// Extra norms whose axioms the suite must confirm.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteInput {
    #[serde(default)]
    pub norms: Vec<NormSpec>,
}

fn real_vec(rng: &mut SampleRng, n: usize) -> Vector {
    sampling::gaussian_vector(rng, n, Field::Real)
}

fn p_of(rng: &mut SampleRng) -> f64 {
    [1.0, 1.5, 2.0, 3.0, f64::INFINITY][rng.random_range(0..5)]
}

pub fn run_suite(cfg: &RunConfig, input: &SuiteInput) -> Report {
    let mut r = Report::new("suite");
    let parts: [(&str, fn(&RunConfig) -> Report); 6] = [
        ("core", core),
        ("operators", operators),
        ("equivalence", equivalence),
        ("lp", lp),
        ("hahn_banach", hahn_banach),
        ("bilinear", bilinear),
    ];
    for (name, f) in parts {
        r.absorb(name, f(cfg));
    }
    for (k, n) in input.norms.iter().enumerate() {
        r.absorb(&format!("input_norm_{k}"), axioms_report(n, cfg.samples.min(2_000), cfg.seed));
    }
    r
}

fn fail(r: &mut Report, what: &str, e: crate::error::Error) {
    r.require(false, format!("{what}: {e}"));
}

fn builtin_norms(rng: &mut SampleRng) -> Vec<NormSpec> {
    let mut v: Vec<NormSpec> = [(1.0, 3), (1.5, 2), (2.0, 4), (3.0, 3), (f64::INFINITY, 2)]
        .iter()
        .map(|&(p, n)| NormSpec::p(p, n).expect("valid exponent"))
        .collect();
    v.push(NormSpec::zero_standard(3));
    let basis: Vec<Vector> = (0..3).map(|_| real_vec(rng, 3)).collect();
    if let Ok(z) = NormSpec::zero(basis) {
        v.push(z);
    }
    v.push(NormSpec::named_custom("l1-plus-linf", None, 3).expect("known name"));
    v
}

fn core(cfg: &RunConfig) -> Report {
    let mut r = Report::new("core");
    let mut rng = sampling::substream(cfg.seed, 1);
    let s = (cfg.samples / 10).max(100);
    let norms = builtin_norms(&mut rng);
    let mut axiom_failures = 0;
    let mut sphere_error: f64 = 0.0;
    for (k, n) in norms.iter().enumerate() {
        let a = axioms_report(n, s, cfg.seed.wrapping_add(k as u64));
        if !a.pass {
            axiom_failures += 1;
            r.absorb(&format!("axioms_{k}"), a);
        }
        match sampling::sample_unit_vectors(n, s, SampleMode::OnSphere, Field::Complex, cfg.seed) {
            Ok(xs) => {
                for x in xs {
                    sphere_error = sphere_error.max((n.eval_slice(x.coords()) - 1.0).abs());
                }
            }
            Err(e) => fail(&mut r, "sphere sampling", e),
        }
    }
    r.value("axiom_failures", axiom_failures as f64);
    r.value("sphere_max_error", sphere_error);
    r.require(sphere_error <= 1e-12, "sphere samples are off the unit sphere");

    let mut convexity = 0;
    let mut closure_err: f64 = 0.0;
    for k in 0..6u64 {
        let dim = rng.random_range(1..=4);
        let norm = NormSpec::p(p_of(&mut rng), dim).expect("valid");
        let center = real_vec(&mut rng, dim);
        let radius = 10f64.powf(rng.random_range(-2.0..2.0));
        let ball = BallSpec::new(center, radius, norm, k % 2 == 0).expect("valid ball");
        match ball_geometry_check(&ball, s, cfg.seed.wrapping_add(k)) {
            Ok(g) => {
                convexity += g.convexity_counterexamples.len() + g.closure_counterexamples.len();
                closure_err = closure_err.max(g.max_error_to_y).max(g.max_error_to_center);
            }
            Err(e) => fail(&mut r, "ball geometry", e),
        }
    }
    r.value("geometry_counterexamples", convexity as f64);
    r.value("closure_max_error", closure_err);
    r.require(convexity == 0, "ball geometry counterexamples found");
    r
}

fn operators(cfg: &RunConfig) -> Report {
    let mut r = Report::new("operators");
    let mut rng = sampling::substream(cfg.seed, 2);
    let opts = OperatorNormOptions {
        tol: cfg.tol,
        seed: cfg.seed,
        ..Default::default()
    };
    let s = (cfg.samples / 10).max(100);
    let mut worst_rel: f64 = 0.0;
    let mut violations = 0;
    let mut sup_disagree = 0;
    for _ in 0..12 {
        let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let a = sampling::gaussian_matrix(&mut rng, m, n, Field::Real);
        let t = LinearOperator::new(a.clone(), NormSpec::euclidean(n), NormSpec::euclidean(m)).expect("shapes");
        match operator_norm_with(&t, opts) {
            Ok(res) => {
                let o = oracle_svd_sigma_max(&a);
                worst_rel = worst_rel.max((res.value - o).abs() / o.max(f64::MIN_POSITIVE));
                violations += check_bound(&t, res.value, s, cfg.seed).violation_count;
                sup_disagree += usize::from(!res.sup.agree);
            }
            Err(e) => fail(&mut r, "operator norm", e),
        }
    }
    for _ in 0..4 {
        let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let a = sampling::gaussian_matrix(&mut rng, m, n, Field::Real);
        let src = NormSpec::p(p_of(&mut rng), n).expect("valid");
        let tgt = NormSpec::p(p_of(&mut rng), m).expect("valid");
        let t = LinearOperator::new(a, src, tgt).expect("shapes");
        match operator_norm_with(&t, opts) {
            Ok(res) => {
                violations += check_bound(&t, res.value, s, cfg.seed).violation_count;
                sup_disagree += usize::from(!res.sup.agree);
            }
            Err(e) => fail(&mut r, "operator norm", e),
        }
    }
    r.value("svd_max_rel_error", worst_rel);
    r.value("bound_violations", violations as f64);
    r.value("sup_disagreements", sup_disagree as f64);
    r.require(worst_rel <= 1e-8, "power iteration disagrees with the SVD oracle");
    r.require(violations == 0, "sampled vectors exceed computed operator norms");
    r.require(sup_disagree == 0, "sup variants disagree");

    let mut not_iso = 0;
    let mut norm_err: f64 = 0.0;
    for k in 0..6 {
        let n = rng.random_range(1..=6);
        let (m, norm) = if k % 2 == 0 {
            (sampling::random_orthogonal(&mut rng, n, Field::Real), NormSpec::euclidean(n))
        } else {
            (sampling::random_permutation(&mut rng, n), NormSpec::p(p_of(&mut rng), n).expect("valid"))
        };
        let t = LinearOperator::new(m, norm.clone(), norm).expect("square");
        match isometry_test(&t, s.min(500), cfg.seed) {
            Ok(rep) => {
                not_iso += usize::from(!rep.is_isometry());
                if let Some(v) = rep.operator_norm {
                    norm_err = norm_err.max((v - 1.0).abs());
                }
            }
            Err(e) => fail(&mut r, "isometry", e),
        }
    }
    r.value("isometry_failures", not_iso as f64);
    r.value("isometry_norm_max_error", norm_err);
    r.require(not_iso == 0 && norm_err <= 1e-8, "isometry suite failed");
    r
}

fn equivalence(cfg: &RunConfig) -> Report {
    let mut r = Report::new("equivalence");
    let mut rng = sampling::substream(cfg.seed, 3);
    let s = (cfg.samples / 10).max(100);
    let mut violations = 0;
    let mut b_mismatch = 0;
    let mut worst_grid: f64 = 0.0;
    for _ in 0..4 {
        let n = rng.random_range(2..=3);
        let basis: Vec<Vector> = (0..n).map(|_| real_vec(&mut rng, n)).collect();
        let norm = NormSpec::p(p_of(&mut rng), n).expect("valid");
        let c = match equivalence_constants(&basis, &norm, cfg.tol) {
            Ok(c) => c,
            Err(e) => {
                fail(&mut r, "equivalence constants", e);
                continue;
            }
        };
        let sum: f64 = basis.iter().map(|b| norm.eval_slice(b.coords())).sum();
        b_mismatch += usize::from(c.b != sum);
        match verify_sandwich(&c, s, cfg.seed) {
            Ok(sw) => violations += sw.lower_violations + sw.upper_violations,
            Err(e) => fail(&mut r, "sandwich", e),
        }
        match grid_lower_constant(&basis, &norm, 32) {
            Ok((g, _)) => worst_grid = worst_grid.max((g - c.a).abs()),
            Err(e) => fail(&mut r, "grid oracle", e),
        }
    }
    r.value("sandwich_violations", violations as f64);
    r.value("b_mismatches", b_mismatch as f64);
    r.value("a_grid_max_error", worst_grid);
    r.require(violations == 0, "sandwich violated");
    r.require(b_mismatch == 0, "b differs from the sum of basis norms");
    r.require(worst_grid <= 1e-3, "a differs from the grid oracle");
    r
}

fn random_sequence(rng: &mut SampleRng, len: usize, p: f64) -> TruncatedSequence {
    let prefix: Vec<Scalar> = (0..len).map(|_| sampling::stress_scalar(rng, Field::Complex)).collect();
    let p = crate::norm::Exponent::new(p).expect("valid");
    TruncatedSequence::finite(prefix, p).expect("finite")
}

fn lp(cfg: &RunConfig) -> Report {
    let mut r = Report::new("lp");
    let mut rng = sampling::substream(cfg.seed, 4);
    let trials = (cfg.samples / 10).max(100);
    let mut holder_fail = 0;
    let mut minkowski_fail = 0;
    let mut power_err: f64 = 0.0;
    for _ in 0..trials {
        let p = p_of(&mut rng);
        let pair = ConjugatePair::from_p(p).expect("valid");
        let len = rng.random_range(1..=12);
        let x = random_sequence(&mut rng, len, p);
        let ly = rng.random_range(1..=12);
        let y = random_sequence(&mut rng, ly, pair.q.value());
        match holder_pairing(&x, &y, pair) {
            Ok(h) => {
                holder_fail += usize::from(!h.holds || h.young_violations > 0);
                for s in [h.power_sum_x, h.power_sum_y].into_iter().flatten() {
                    power_err = power_err.max((s - 1.0).abs());
                }
            }
            Err(e) => fail(&mut r, "hoelder", e),
        }
        let lz = rng.random_range(1..=12);
        let z = random_sequence(&mut rng, lz, p);
        match minkowski_verify(&x, &z) {
            Ok(m) => minkowski_fail += usize::from(!m.holds),
            Err(e) => fail(&mut r, "minkowski", e),
        }
    }
    r.value("hoelder_failures", holder_fail as f64);
    r.value("minkowski_failures", minkowski_fail as f64);
    r.value("power_sum_max_error", power_err);
    r.require(holder_fail == 0 && minkowski_fail == 0, "inequality violations");
    r.require(power_err <= 1e-10, "normalized power sums differ from 1");

    let mut dual_fail = 0;
    let mut witness_err: f64 = 0.0;
    for k in 0..6u64 {
        let q = [1.5, 2.0, 3.0][k as usize % 3];
        let f = DualFunctional::new(random_sequence(&mut rng, 64, q));
        match dual_norm(&f, 64, 256, cfg.seed.wrapping_add(k)) {
            Ok(d) => {
                dual_fail += usize::from(!d.within_bound);
                witness_err = witness_err.max((d.witness_ratio - d.upper).abs() / d.upper.max(1.0));
            }
            Err(e) => fail(&mut r, "dual norm", e),
        }
    }
    r.value("dual_failures", dual_fail as f64);
    r.value("witness_max_rel_error", witness_err);
    r.require(dual_fail == 0 && witness_err <= 1e-10, "dual norm witness check failed");

    match harmonic_family(200).and_then(|(s, e)| cauchy_limit(&s, &e, 1e-10)) {
        Ok(l) => {
            r.value("cauchy_limit_radius", l.limit_radius);
            r.require(l.within_schedule, "harmonic family leaves its Cauchy schedule");
        }
        Err(e) => fail(&mut r, "cauchy", e),
    }
    r
}

fn hahn_banach(cfg: &RunConfig) -> Report {
    let mut r = Report::new("hahn_banach");
    let mut rng = sampling::substream(cfg.seed, 5);
    let tol = 1e-6;
    let mut worst_ratio: f64 = 1.0;
    let mut min_ratio: f64 = 1.0;
    let mut restriction: f64 = 0.0;
    for _ in 0..10 {
        let n = rng.random_range(2..=4);
        let k = rng.random_range(1..n);
        let basis: Vec<Vector> = (0..k).map(|_| real_vec(&mut rng, n)).collect();
        let values: Vec<f64> = (0..k).map(|_| sampling::gaussian(&mut rng)).collect();
        let norm = NormSpec::p(p_of(&mut rng), n).expect("valid");
        let res = SubspaceFunctional::new(basis.clone(), values.clone(), norm, tol).and_then(|f| extend_functional(&f, tol));
        match res {
            Ok(ext) => {
                worst_ratio = worst_ratio.max((ext.norm_ratio - 1.0) / n as f64 + 1.0);
                min_ratio = min_ratio.min(ext.norm_ratio);
                for (b, v) in basis.iter().zip(&values) {
                    let fb: f64 = b.iter().zip(&ext.coefficients).map(|(a, c)| a.re * c).sum();
                    restriction = restriction.max((fb - v).abs() / v.abs().max(1.0));
                }
            }
            Err(e) => fail(&mut r, "extension", e),
        }
    }
    r.value("ratio_excess_per_dim", worst_ratio - 1.0);
    r.value("ratio_min", min_ratio);
    r.value("restriction_max_error", restriction);
    r.require(worst_ratio <= 1.0 + tol, "extension increases the norm");
    r.require(min_ratio >= 1.0 - 1e-12, "extension norm below the subspace norm");
    r.require(restriction <= 1e-12, "extension does not restrict to f");

    let mut norming_err: f64 = 0.0;
    let mut exact = true;
    for _ in 0..6 {
        let n = rng.random_range(2..=4);
        let x = real_vec(&mut rng, n);
        let norm = NormSpec::p([1.0, 2.0, 3.0, f64::INFINITY][rng.random_range(0..4)], n).expect("valid");
        match norming_functional(&x, &norm, tol) {
            Ok(nf) => {
                exact &= nf.value_at_x == nf.norm_of_x;
                norming_err = norming_err.max((nf.dual_norm - 1.0).abs());
            }
            Err(e) => fail(&mut r, "norming functional", e),
        }
    }
    r.value("norming_dual_norm_max_error", norming_err);
    r.require(exact && norming_err <= 1e-6, "norming functional check failed");

    let mut vanish: f64 = 0.0;
    let mut at_x = true;
    for _ in 0..4 {
        let n = rng.random_range(2..=4);
        let k = rng.random_range(1..n);
        let basis: Vec<Vector> = (0..k).map(|_| real_vec(&mut rng, n)).collect();
        let x = real_vec(&mut rng, n);
        let norm = NormSpec::p(p_of(&mut rng), n).expect("valid");
        match annihilating_functional(&x, &basis, &norm, tol) {
            Ok(a) => {
                vanish = vanish.max(a.max_on_subspace);
                at_x &= a.value_at_x == 1.0;
            }
            Err(e) => fail(&mut r, "annihilator", e),
        }
    }
    r.value("annihilator_max_on_subspace", vanish);
    r.require(at_x && vanish <= 1e-8, "annihilator check failed");
    r
}

fn bilinear(cfg: &RunConfig) -> Report {
    let mut r = Report::new("bilinear");
    let mut rng = sampling::substream(cfg.seed, 6);
    let mut round_trip = true;
    let mut iso_err: f64 = 0.0;
    let mut violations = 0;
    for _ in 0..4 {
        let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let left = NormSpec::p(p_of(&mut rng), m).expect("valid");
        let right = NormSpec::p(p_of(&mut rng), n).expect("valid");
        let phi = BilinearForm::new(sampling::gaussian_matrix(&mut rng, m, n, Field::Real), left, right).expect("shapes");
        let t = curry(&phi);
        round_trip &= uncurry(&t).map(|b| b == phi).unwrap_or(false);
        match bilinear_norm_seeded(&phi, cfg.tol, cfg.seed) {
            Ok(b) => {
                violations += b.criterion.violations;
                let opts = OperatorNormOptions {
                    tol: cfg.tol,
                    seed: cfg.seed,
                    ..Default::default()
                };
                match operator_norm_with(&t, opts) {
                    Ok(o) => iso_err = iso_err.max((o.value - b.value).abs() / b.value.max(1.0)),
                    Err(e) => fail(&mut r, "curried operator norm", e),
                }
            }
            Err(e) => fail(&mut r, "bilinear norm", e),
        }
    }
    r.value("curry_isometry_max_rel_error", iso_err);
    r.value("criterion_violations", violations as f64);
    r.require(round_trip, "curry/uncurry round trip is not exact");
    r.require(iso_err <= 1e-6, "curried operator norm differs from the bilinear norm");
    r.require(violations == 0, "bilinear norm bound violated on samples");

    let mut tensor_err: f64 = 0.0;
    for _ in 0..6 {
        let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let left = NormSpec::p(p_of(&mut rng), m).expect("valid");
        let right = NormSpec::p(p_of(&mut rng), n).expect("valid");
        let (xp, yp) = (real_vec(&mut rng, m), real_vec(&mut rng, n));
        let want = left.dual_norm(xp.coords()) * right.dual_norm(yp.coords());
        match elementary_tensor_form(&xp, &yp, left, right).and_then(|phi| bilinear_norm_seeded(&phi, cfg.tol, cfg.seed)) {
            Ok(b) => tensor_err = tensor_err.max((b.value - want).abs() / want.max(1.0)),
            Err(e) => fail(&mut r, "elementary tensor", e),
        }
    }
    r.value("elementary_tensor_max_rel_error", tensor_err);
    r.require(tensor_err <= 1e-6, "elementary tensor norm does not factor");

    let mut lin_err: f64 = 0.0;
    for _ in 0..20 {
        let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let phi = BilinearForm::new(
            sampling::gaussian_matrix(&mut rng, m, n, Field::Complex),
            NormSpec::euclidean(m),
            NormSpec::euclidean(n),
        )
        .expect("shapes");
        let (x1, x2) = (sampling::gaussian_vector(&mut rng, m, Field::Complex), sampling::gaussian_vector(&mut rng, m, Field::Complex));
        let (y1, y2) = (sampling::gaussian_vector(&mut rng, n, Field::Complex), sampling::gaussian_vector(&mut rng, n, Field::Complex));
        let a = sampling::gaussian_scalar(&mut rng, Field::Complex);
        let ev = |x: &Vector, y: &Vector| phi.eval(x, y).expect("dims");
        let left = ev(&(&x1 + &x2.scale(a)), &y1) - ev(&x1, &y1) - a * ev(&x2, &y1);
        let right = ev(&x1, &(&y1 + &y2.scale(a))) - ev(&x1, &y1) - a * ev(&x1, &y2);
        lin_err = lin_err.max(left.norm()).max(right.norm());
    }
    r.value("separate_linearity_max_error", lin_err);
    r.require(lin_err <= 1e-10, "form is not linear in each slot");

    let a: Vec<Index> = (1..=4).map(Index::Int).collect();
    let b: Vec<Index> = ["u", "v", "w"].into_iter().map(Index::from).collect();
    let mut psi = BasisValues::new();
    for x in &a {
        for y in &b {
            psi.insert((x.clone(), y.clone()), sampling::gaussian_scalar(&mut rng, Field::Complex));
        }
    }
    match tensor_linearize(&psi, &a, &b) {
        Ok(t) => {
            let extra = random_pairs(&a, &b, 50, &mut rng);
            match check_factorization(&t, &psi, &extra) {
                Ok(rep) => {
                    r.value("linearization_max_error", rep.max_error);
                    r.require(rep.max_error <= 1e-12, "T o Psi0 differs from psi");
                }
                Err(e) => fail(&mut r, "linearization", e),
            }
        }
        Err(e) => fail(&mut r, "linearization", e),
    }

    let squares_ok = [1.0, 1e-2, 1e-4, 1e-6].iter().all(|&d| {
        let (x, y, gap) = square_not_uniformly_continuous(d);
        (x - y).abs() < d && gap > 1.0
    });
    r.require(squares_ok, "x -> x^2 demonstration failed");
    r
}
