//! Acceptance criteria. Each prints one PASS/FAIL line; the process exits
//! nonzero when any criterion fails.

mod common;

use std::time::Instant;

use common::{conjugate, jacobi_sigma_max, lower_constant_by_grid, normal, pnorm, pnorm_real, rng, solve_columns, C};
use normkit::bilinear::{bilinear_norm_seeded, curry, elementary_tensor_form, uncurry, BilinearForm};
use normkit::equivalence::{equivalence_constants, verify_sandwich};
use normkit::geometry::{ball_geometry_check, closure_witness, BallSpec};
use normkit::hahn_banach::{annihilating_functional, extend_functional, norming_functional, one_step_extension, SubspaceFunctional};
use normkit::lp::{cauchy_limit, dual_norm, holder_pairing, minkowski_verify, norming_witness, ConjugatePair, DualFunctional, TruncatedSequence};
use normkit::oracle::oracle_svd_sigma_max;
use normkit::operators::{check_bound, isometry_test, operator_norm, operator_norm_with, LinearOperator, OperatorNormOptions};
use normkit::sampling;
use normkit::tensor::{bilinear_extension, check_factorization, tensor_embed, tensor_linearize, BasisValues, FiniteSupportFunction, Index};
use normkit::{Exponent, Field, Matrix, NormSpec, Vector};
use num_rational::Ratio;
use rand::Rng;

const PS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];

type Outcome = Result<String, String>;

fn real_matrix(r: &mut impl Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..m).map(|_| (0..n).map(|_| normal(r)).collect()).collect()
}

fn vecr(x: &[f64]) -> Vector {
    Vector::from_real(x).unwrap()
}

fn c01_operator_norm_vs_svd() -> Outcome {
    let mut r = rng(101);
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let (m, n) = (r.random_range(1..=32), r.random_range(1..=32));
        let mut a = real_matrix(&mut r, m, n);
        if k % 10 == 0 && m > 1 {
            // rank deficient: duplicate a row
            a[m - 1] = a[0].clone();
        }
        if k % 25 == 1 {
            // tied top singular values
            let q = sampling::random_orthogonal(&mut sampling::rng(k as u64), n, Field::Real);
            a = (0..n).map(|i| (0..n).map(|j| q[(i, j)].re).collect()).collect();
        }
        let mat = Matrix::from_real_rows(&a).unwrap();
        let (rows, cols) = (a.len(), a[0].len());
        let t = LinearOperator::new(mat.clone(), NormSpec::euclidean(cols), NormSpec::euclidean(rows)).unwrap();
        let v = operator_norm(&t, 1e-10).map_err(|e| format!("matrix {k}: {e}"))?.value;
        let jac = jacobi_sigma_max(&a);
        let svd = oracle_svd_sigma_max(&mat);
        if (jac - svd).abs() > 1e-10 * svd {
            return Err(format!("matrix {k}: oracles disagree ({jac} vs {svd})"));
        }
        worst = worst.max((v - jac).abs() / jac);
    }
    if worst <= 1e-8 {
        Ok(format!("200 matrices up to 32x32, worst relative error {worst:.2e}"))
    } else {
        Err(format!("worst relative error {worst:.2e}"))
    }
}

fn c02_bound_certificate() -> Outcome {
    let mut r = rng(202);
    let tol = 1e-8;
    let mut checked = 0;
    for k in 0..40 {
        let (m, n) = (r.random_range(1..=6), r.random_range(1..=6));
        let (p, q) = (PS[r.random_range(0..5)], PS[r.random_range(0..5)]);
        let a = real_matrix(&mut r, m, n);
        let t = LinearOperator::new(
            Matrix::from_real_rows(&a).unwrap(),
            NormSpec::p(p, n).unwrap(),
            NormSpec::p(q, m).unwrap(),
        )
        .unwrap();
        let res = operator_norm_with(
            &t,
            OperatorNormOptions {
                tol,
                seed: k,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        let cert = check_bound(&t, res.value, 10_000, k);
        if !cert.certified() {
            return Err(format!("operator {k} (p={p}, q={q}): {} library-side violations", cert.violation_count));
        }
        // independent sampling with the test's own norms
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..n).map(|_| normal(&mut r) * 10f64.powf(r.random_range(-3.0..3.0))).collect();
            let tx: Vec<f64> = (0..m).map(|i| (0..n).map(|j| a[i][j] * x[j]).sum()).collect();
            if pnorm_real(&tx, q) > res.value * pnorm_real(&x, p) * (1.0 + 1e-9) {
                return Err(format!("operator {k} (p={p}, q={q}): sampled x exceeds the bound"));
            }
            checked += 1;
        }
        let s = &res.sup;
        let spread = s.closed_ball.max(s.sphere).max(s.open_ball) - s.closed_ball.min(s.sphere).min(s.open_ball);
        if !s.agree || spread > tol * res.value.max(1.0) {
            return Err(format!("operator {k}: sup variants {s:?}"));
        }
    }
    Ok(format!("40 operators, {checked} independent samples, sup variants agree"))
}

fn c03_isometries() -> Outcome {
    let mut r = rng(303);
    let mut worst: f64 = 0.0;
    for k in 0..50u64 {
        let n = r.random_range(1..=8);
        let (m, norm) = match k % 3 {
            0 => (sampling::random_orthogonal(&mut sampling::rng(k), n, Field::Real), NormSpec::euclidean(n)),
            1 => (sampling::random_orthogonal(&mut sampling::rng(k), n, Field::Complex), NormSpec::euclidean(n)),
            _ => (sampling::random_permutation(&mut sampling::rng(k), n), NormSpec::p(PS[r.random_range(0..5)], n).unwrap()),
        };
        // oracle: Q*Q = I
        for i in 0..n {
            for j in 0..n {
                let g: C = (0..n).map(|l| m[(l, i)].conj() * m[(l, j)]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - C::new(want, 0.0)).norm() > 1e-12 {
                    return Err(format!("matrix {k} is not unitary"));
                }
            }
        }
        let t = LinearOperator::new(m, norm.clone(), norm).unwrap();
        let rep = isometry_test(&t, 1_000, k).map_err(|e| e.to_string())?;
        let on = rep.operator_norm.ok_or(format!("matrix {k}: no operator norm"))?;
        if !rep.is_isometry() || !rep.injective {
            return Err(format!("matrix {k}: not reported as an isometry"));
        }
        worst = worst.max((on - 1.0).abs());
    }
    if worst <= 1e-8 {
        Ok(format!("50 orthogonal/unitary/permutation maps, max |norm - 1| = {worst:.2e}"))
    } else {
        Err(format!("max |norm - 1| = {worst:.2e}"))
    }
}

fn c04_equivalence() -> Outcome {
    let mut r = rng(404);
    let mut worst_grid: f64 = 0.0;
    for k in 0..20u64 {
        let n = 2 + (k as usize % 3);
        let basis: Vec<Vec<f64>> = loop {
            let b = real_matrix(&mut r, n, n);
            let probe: Vec<f64> = (0..n).map(|i| i as f64 + 1.0).collect();
            let sol = solve_columns(&b, &probe);
            if sol.iter().all(|v| v.is_finite() && v.abs() < 1e3) {
                break b;
            }
        };
        let p = PS[k as usize % 5];
        let norm = NormSpec::p(p, n).unwrap();
        let vbasis: Vec<Vector> = basis.iter().map(|b| vecr(b)).collect();
        let c = equivalence_constants(&vbasis, &norm, 1e-8).map_err(|e| e.to_string())?;
        let sum: f64 = vbasis.iter().map(|b| norm.eval(b).unwrap()).sum();
        if c.b != sum {
            return Err(format!("config {k}: b = {} but sum of basis norms = {sum}", c.b));
        }
        let sw = verify_sandwich(&c, 10_000, k).map_err(|e| e.to_string())?;
        if !sw.pass() {
            return Err(format!("config {k}: library sandwich check failed {sw:?}"));
        }
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..n).map(|_| normal(&mut r)).collect();
            let alpha = solve_columns(&basis, &x);
            let z = alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()));
            let nx = pnorm_real(&x, p);
            if c.a * z > nx * (1.0 + 1e-9) || nx > c.b * z * (1.0 + 1e-9) {
                return Err(format!("config {k}: sandwich fails at {x:?}"));
            }
        }
        if n <= 3 {
            let g = lower_constant_by_grid(&basis, p);
            worst_grid = worst_grid.max((g - c.a).abs());
            if (g - c.a).abs() > 1e-3 {
                return Err(format!("config {k}: a = {} vs grid {g}", c.a));
            }
        }
    }
    Ok(format!("20 configurations, 2x10^4 samples each, max |a - grid| = {worst_grid:.2e}"))
}

fn random_seq(r: &mut impl Rng, p: f64, tail: bool) -> TruncatedSequence {
    let len = r.random_range(1..=128);
    let complex = r.random_bool(0.5);
    let scale = 10f64.powf(r.random_range(-3.0..3.0));
    let prefix: Vec<C> = (0..len)
        .map(|_| {
            if r.random_bool(0.1) {
                C::new(0.0, 0.0)
            } else {
                C::new(normal(r), if complex { normal(r) } else { 0.0 }) * scale
            }
        })
        .collect();
    let tb = if tail { scale * r.random_range(0.0..0.1) } else { 0.0 };
    TruncatedSequence::with_tail(prefix, Exponent::new(p).unwrap(), tb).unwrap()
}

fn c05_holder_minkowski() -> Outcome {
    let mut r = rng(505);
    let mut power_err: f64 = 0.0;
    let trials = 100_000;
    for k in 0..trials {
        let p = PS[k % 5];
        let q = conjugate(p);
        let tail = k % 4 == 3;
        let x = random_seq(&mut r, p, tail);
        let y = random_seq(&mut r, q, tail);
        let h = holder_pairing(&x, &y, ConjugatePair::from_p(p).unwrap()).map_err(|e| e.to_string())?;
        let direct: f64 = x.prefix().iter().zip(y.prefix()).map(|(a, b)| (a * b).norm()).sum();
        let bound = (pnorm(x.prefix(), p) + x.tail_bound()) * (pnorm(y.prefix(), q) + y.tail_bound());
        if !h.holds || h.young_violations > 0 || direct > bound * (1.0 + 1e-12) {
            return Err(format!("trial {k}: Hoelder violated (p={p})"));
        }
        if !tail && pnorm(x.prefix(), p) > 0.0 && pnorm(y.prefix(), q) > 0.0 {
            for s in [h.power_sum_x, h.power_sum_y] {
                let s = s.ok_or(format!("trial {k}: missing power sum"))?;
                power_err = power_err.max((s - 1.0).abs());
            }
        }
        let z = random_seq(&mut r, p, tail);
        let m = minkowski_verify(&x, &z).map_err(|e| e.to_string())?;
        let len = x.len().max(z.len());
        let sum: Vec<C> = (0..len).map(|j| x.term(j) + z.term(j)).collect();
        let rhs = pnorm(x.prefix(), p) + pnorm(z.prefix(), p);
        if !m.holds || pnorm(&sum, p) > rhs * (1.0 + 1e-12) + x.tail_bound() + z.tail_bound() {
            return Err(format!("trial {k}: Minkowski violated (p={p})"));
        }
    }
    if power_err <= 1e-10 {
        Ok(format!("{trials} trials, zero violations, max |power sum - 1| = {power_err:.2e}"))
    } else {
        Err(format!("max |power sum - 1| = {power_err:.2e}"))
    }
}

fn c06_dual_isometry() -> Outcome {
    let mut r = rng(606);
    let mut worst_lower: f64 = 0.0;
    let mut worst_gap_excess = f64::NEG_INFINITY;
    for k in 0..50u64 {
        let q = [1.5, 2.0, 3.0][k as usize % 3];
        let p = conjugate(q);
        let prefix: Vec<C> = (0..64).map(|_| C::new(normal(&mut r), normal(&mut r))).collect();
        let tail = if k % 2 == 0 { 0.0 } else { r.random_range(0.0..1e-3) };
        let f = DualFunctional::new(TruncatedSequence::with_tail(prefix.clone(), Exponent::new(q).unwrap(), tail).unwrap());
        let truncated = pnorm(&prefix, q);
        let w = norming_witness(&f, 64).map_err(|e| e.to_string())?;
        let pairing: C = prefix.iter().zip(&w.entries).map(|(a, b)| a * b).sum();
        let ratio = pairing.norm() / pnorm(&w.entries, p);
        worst_lower = worst_lower.max((ratio - truncated).abs()).max((w.ratio - truncated).abs());
        let d = dual_norm(&f, 64, 1_000, k).map_err(|e| e.to_string())?;
        if !d.within_bound {
            return Err(format!("functional {k}: gap {} exceeds tail {}", d.gap, d.tail_contribution));
        }
        worst_gap_excess = worst_gap_excess.max(d.upper - d.lower - tail);
        if d.upper - d.lower > tail + 1e-6 {
            return Err(format!("functional {k}: gap {} exceeds tail {tail} + 1e-6", d.upper - d.lower));
        }
    }
    if worst_lower <= 1e-10 {
        Ok(format!(
            "50 functionals, max |witness - |f|_q| = {worst_lower:.2e}, max gap - tail = {worst_gap_excess:.2e}"
        ))
    } else {
        Err(format!("max |witness - |f|_q| = {worst_lower:.2e}"))
    }
}

/// ‖g‖ in the dual of a p-norm.
fn dual_of(g: &[f64], p: f64) -> f64 {
    pnorm_real(g, conjugate(p))
}

fn c07_hahn_banach() -> Outcome {
    let mut r = rng(707);
    let tol = 1e-6;
    let mut worst_excess: f64 = 0.0;
    let mut min_ratio: f64 = f64::INFINITY;
    for k in 0..100 {
        let n = 2 + k % 3;
        let dim_m = r.random_range(1..n);
        let p = PS[r.random_range(0..5)];
        let norm = NormSpec::p(p, n).unwrap();
        let basis: Vec<Vector> = (0..dim_m).map(|_| vecr(&real_matrix(&mut r, 1, n)[0])).collect();
        let values: Vec<f64> = (0..dim_m).map(|_| normal(&mut r)).collect();
        let f = SubspaceFunctional::new(basis.clone(), values.clone(), norm.clone(), tol).map_err(|e| e.to_string())?;
        let ext = extend_functional(&f, tol).map_err(|e| format!("config {k}: {e}"))?;
        if ext.functional.values()[..dim_m] != values[..] {
            return Err(format!("config {k}: values on M changed"));
        }
        for (b, v) in basis.iter().zip(&values) {
            let fb: f64 = b.iter().zip(&ext.coefficients).map(|(a, c)| a.re * c).sum();
            if (fb - v).abs() > 1e-12 * v.abs().max(1.0) {
                return Err(format!("config {k}: F(b) = {fb}, f(b) = {v}"));
            }
        }
        // independent upper bound on ‖f‖: sampled quotients never exceed it
        let fnorm = f.subspace_norm();
        for _ in 0..200 {
            let c: Vec<f64> = (0..dim_m).map(|_| normal(&mut r)).collect();
            let y: Vec<f64> = (0..n).map(|i| c.iter().zip(&basis).map(|(cj, b)| cj * b[i].re).sum()).collect();
            let fy: f64 = c.iter().zip(&values).map(|(a, b)| a * b).sum();
            if fy.abs() > fnorm * pnorm_real(&y, p) * (1.0 + 1e-9) {
                return Err(format!("config {k}: subspace norm {fnorm} too small"));
            }
        }
        let ratio = dual_of(&ext.coefficients, p) / fnorm;
        min_ratio = min_ratio.min(ratio);
        worst_excess = worst_excess.max((ratio - 1.0) / n as f64);
        if ratio > 1.0 + n as f64 * tol || ratio < 1.0 - 1e-12 {
            return Err(format!("config {k}: ratio {ratio}"));
        }
    }
    let f = SubspaceFunctional::new(vec![vecr(&[1.0, 0.0])], vec![1.0], NormSpec::sup(2), tol).unwrap();
    let (_, step) = one_step_extension(&f, &vecr(&[0.0, 1.0]), tol).map_err(|e| e.to_string())?;
    if step.c.abs() > 1e-8 {
        return Err(format!("sup-norm hand case: c = {}", step.c));
    }
    Ok(format!(
        "100 configurations, ratio in [{min_ratio:.15}, 1 + {worst_excess:.2e} n]; hand case c = {:.1e}",
        step.c
    ))
}

fn c08_norming_annihilating() -> Outcome {
    let mut r = rng(808);
    let tol = 1e-6;
    let mut worst_dual: f64 = 0.0;
    for k in 0..100 {
        let n = r.random_range(2..=4);
        let p = [1.0, 2.0, f64::INFINITY, 3.0][k % 4];
        let x: Vec<f64> = (0..n).map(|_| normal(&mut r)).collect();
        let nf = norming_functional(&vecr(&x), &NormSpec::p(p, n).unwrap(), tol).map_err(|e| e.to_string())?;
        if nf.value_at_x != nf.norm_of_x {
            return Err(format!("x {k}: <x, x'> = {} but |x| = {}", nf.value_at_x, nf.norm_of_x));
        }
        let pairing: f64 = x.iter().zip(&nf.coefficients).map(|(a, b)| a * b).sum();
        if (pairing - nf.norm_of_x).abs() > 1e-12 * nf.norm_of_x {
            return Err(format!("x {k}: recomputed pairing {pairing}"));
        }
        let d = dual_of(&nf.coefficients, p);
        worst_dual = worst_dual.max((d - 1.0).abs());
        if (d - 1.0).abs() > 1e-6 {
            return Err(format!("x {k}: |x'| = {d}"));
        }
    }
    let mut worst_vanish: f64 = 0.0;
    for k in 0..100 {
        let n = r.random_range(2..=4);
        let dim_f = r.random_range(1..n);
        let p = [1.0, 2.0, f64::INFINITY, 3.0][k % 4];
        let basis: Vec<Vec<f64>> = real_matrix(&mut r, dim_f, n);
        let x: Vec<f64> = (0..n).map(|_| normal(&mut r)).collect();
        let vb: Vec<Vector> = basis.iter().map(|b| vecr(b)).collect();
        let a = annihilating_functional(&vecr(&x), &vb, &NormSpec::p(p, n).unwrap(), tol).map_err(|e| e.to_string())?;
        if a.value_at_x != 1.0 {
            return Err(format!("config {k}: x'(x) = {}", a.value_at_x));
        }
        for b in &basis {
            let v: f64 = b.iter().zip(&a.coefficients).map(|(s, t)| s * t).sum();
            worst_vanish = worst_vanish.max(v.abs() / pnorm_real(b, p));
        }
        if worst_vanish > 1e-8 {
            return Err(format!("config {k}: x' is {worst_vanish:.2e} on F"));
        }
    }
    Ok(format!(
        "100 norming functionals, max ||x'| - 1| = {worst_dual:.2e}; 100 annihilators, max |x'| on F = {worst_vanish:.2e}"
    ))
}

fn c09_cauchy() -> Outcome {
    let m_max = 1000;
    let seqs: Vec<TruncatedSequence> = (1..=m_max)
        .map(|m| TruncatedSequence::from_real(&(1..=m).map(|j| 1.0 / j as f64).collect::<Vec<_>>(), 2.0).unwrap())
        .collect();
    let eps: Vec<f64> = (1..=m_max).map(|m| 1.0 / (m as f64).sqrt()).collect();
    let l = cauchy_limit(&seqs, &eps, 1e-10).map_err(|e| e.to_string())?;
    for (j, v) in l.limit.iter().enumerate() {
        if *v != C::new(1.0 / (j + 1) as f64, 0.0) {
            return Err(format!("limit coordinate {} is {v}", j + 1));
        }
    }
    // ‖x_m − x‖² = Σ_{j>m} 1/j², summed to 10⁶ plus an Euler-Maclaurin tail
    let big = 1_000_000usize;
    let mut tail_from = vec![0.0; m_max + 2];
    let far = 1.0 / big as f64 - 0.5 / (big as f64).powi(2) + 1.0 / (6.0 * (big as f64).powi(3));
    let mut acc = far;
    for j in (m_max + 1..=big).rev() {
        acc += 1.0 / (j as f64 * j as f64);
    }
    tail_from[m_max + 1] = acc;
    for j in (1..=m_max).rev() {
        tail_from[j] = tail_from[j + 1] + 1.0 / (j as f64 * j as f64);
    }
    let mut worst = f64::NEG_INFINITY;
    for m in 1..=m_max {
        let d = tail_from[m + 1].sqrt();
        worst = worst.max(d - 1.0 / (m as f64).sqrt());
        if d > 1.0 / (m as f64).sqrt() + 1e-10 {
            return Err(format!("m = {m}: distance {d}"));
        }
    }
    if !l.within_schedule {
        return Err("library distances exceed the schedule".into());
    }
    Ok(format!("m up to {m_max}, limit is 1/j exactly, max (|x_m - x| - 1/sqrt m) = {worst:.2e}"))
}

fn c10_tensor() -> Outcome {
    let mut r = rng(1010);
    let mut float_err: f64 = 0.0;
    for na in 1..=8i64 {
        for nb in 1..=8i64 {
            let a: Vec<Index> = (1..=na).map(Index::Int).collect();
            let b: Vec<Index> = (1..=nb).map(|j| Index::Str(format!("b{j}"))).collect();
            let mut psi_i = BasisValues::new();
            let mut psi_q = BasisValues::new();
            let mut psi_f = BasisValues::new();
            for x in &a {
                for y in &b {
                    let v = r.random_range(-50i64..=50);
                    psi_i.insert((x.clone(), y.clone()), v);
                    psi_q.insert((x.clone(), y.clone()), Ratio::new(v, r.random_range(1i64..=9)));
                    psi_f.insert((x.clone(), y.clone()), C::new(normal(&mut r), normal(&mut r)));
                }
            }
            let ti = tensor_linearize(&psi_i, &a, &b).map_err(|e| e.to_string())?;
            let tq = tensor_linearize(&psi_q, &a, &b).map_err(|e| e.to_string())?;
            for x in &a {
                for y in &b {
                    let (ex, ey) = (FiniteSupportFunction::<i64>::unit(x.clone()), FiniteSupportFunction::<i64>::unit(y.clone()));
                    if ti.apply(&tensor_embed(&ex, &ey).unwrap()).unwrap() != psi_i[&(x.clone(), y.clone())] {
                        return Err(format!("integer case {na}x{nb} fails at ({x}, {y})"));
                    }
                    let (qx, qy) = (FiniteSupportFunction::<Ratio<i64>>::unit(x.clone()), FiniteSupportFunction::<Ratio<i64>>::unit(y.clone()));
                    if tq.apply(&tensor_embed(&qx, &qy).unwrap()).unwrap() != psi_q[&(x.clone(), y.clone())] {
                        return Err(format!("rational case {na}x{nb} fails at ({x}, {y})"));
                    }
                }
            }
            for _ in 0..20 {
                let f = FiniteSupportFunction::from_pairs(a.iter().map(|k| (k.clone(), r.random_range(-9i64..=9))));
                let g = FiniteSupportFunction::from_pairs(b.iter().map(|k| (k.clone(), r.random_range(-9i64..=9))));
                // oracle: the double sum written out
                let mut want = 0i64;
                for (x, fx) in f.support() {
                    for (y, gy) in g.support() {
                        want += fx * gy * psi_i[&(x.clone(), y.clone())];
                    }
                }
                if ti.apply(&tensor_embed(&f, &g).unwrap()).unwrap() != want || bilinear_extension(&psi_i, &f, &g).unwrap() != want {
                    return Err(format!("integer case {na}x{nb}: T(Psi0(f, g)) differs from psi(f, g)"));
                }
            }
            let tf = tensor_linearize(&psi_f, &a, &b).map_err(|e| e.to_string())?;
            let mut rr = sampling::rng((na * 8 + nb) as u64);
            let extra: Vec<_> = (0..10)
                .map(|_| {
                    let mut draw = |set: &[Index]| {
                        FiniteSupportFunction::from_pairs(set.iter().map(|k| (k.clone(), sampling::gaussian_scalar(&mut rr, Field::Complex))))
                    };
                    (draw(&a), draw(&b))
                })
                .collect();
            let rep = check_factorization(&tf, &psi_f, &extra).map_err(|e| e.to_string())?;
            float_err = float_err.max(rep.max_error);
        }
    }
    if float_err > 1e-12 {
        return Err(format!("floating factorization error {float_err:.2e}"));
    }
    for k in 0..20 {
        let (m, n) = (r.random_range(1..=6), r.random_range(1..=6));
        let phi = BilinearForm::new(
            Matrix::from_real_rows(&real_matrix(&mut r, m, n)).unwrap(),
            NormSpec::p(PS[k % 5], m).unwrap(),
            NormSpec::p(PS[(k / 5) % 5], n).unwrap(),
        )
        .unwrap();
        let t = curry(&phi);
        if uncurry(&t).map_err(|e| e.to_string())? != phi || curry(&uncurry(&t).unwrap()) != t {
            return Err(format!("form {k}: curry round trip is not bit-exact"));
        }
    }
    let mut worst_tensor: f64 = 0.0;
    for k in 0..100u64 {
        let (m, n) = (r.random_range(1..=4), r.random_range(1..=4));
        let (p, q) = (PS[r.random_range(0..5)], PS[r.random_range(0..5)]);
        let xp: Vec<f64> = (0..m).map(|_| normal(&mut r)).collect();
        let yp: Vec<f64> = (0..n).map(|_| normal(&mut r)).collect();
        let phi = elementary_tensor_form(&vecr(&xp), &vecr(&yp), NormSpec::p(p, m).unwrap(), NormSpec::p(q, n).unwrap()).unwrap();
        let got = bilinear_norm_seeded(&phi, 1e-10, k).map_err(|e| e.to_string())?.value;
        let want = dual_of(&xp, p) * dual_of(&yp, q);
        worst_tensor = worst_tensor.max((got - want).abs() / want.max(1.0));
    }
    if worst_tensor > 1e-6 {
        return Err(format!("elementary tensor norm error {worst_tensor:.2e}"));
    }
    Ok(format!(
        "64 index-set sizes exact in i64 and Ratio<i64>, float error {float_err:.1e}; round trips bit-exact; tensor norm error {worst_tensor:.1e}"
    ))
}

fn c11_ball_geometry() -> Outcome {
    let mut r = rng(1111);
    let mut worst: f64 = 0.0;
    for k in 0..10_000 {
        let n = r.random_range(1..=4);
        let p = PS[k % 5];
        let a: Vec<f64> = (0..n).map(|_| 10.0 * normal(&mut r)).collect();
        let gamma = 10f64.powf(r.random_range(-2.0..2.0));
        let u: Vec<f64> = (0..n).map(|_| normal(&mut r)).collect();
        let nu = pnorm_real(&u, p);
        let y: Vec<f64> = (0..n).map(|i| a[i] + gamma * u[i] / nu).collect();
        let eps = r.random_range(0.0..2.0 * gamma);
        if eps == 0.0 {
            continue;
        }
        let ball = BallSpec::new(vecr(&a), gamma, NormSpec::p(p, n).unwrap(), true).unwrap();
        let w = closure_witness(&ball, &vecr(&y), eps);
        let z: Vec<f64> = w.z.iter().map(|c| c.re).collect();
        let zy: Vec<f64> = (0..n).map(|i| z[i] - y[i]).collect();
        let za: Vec<f64> = (0..n).map(|i| z[i] - a[i]).collect();
        let e1 = (pnorm_real(&zy, p) - eps / 2.0).abs();
        let e2 = (pnorm_real(&za, p) - (2.0 * gamma - eps) / 2.0).abs();
        worst = worst.max(e1).max(e2);
        if e1 > 1e-10 || e2 > 1e-10 || pnorm_real(&za, p) >= gamma {
            return Err(format!("trial {k}: errors {e1:.2e}, {e2:.2e}"));
        }
    }
    let mut trials = 0;
    for k in 0..10u64 {
        let n = r.random_range(1..=4);
        let ball = BallSpec::new(
            vecr(&(0..n).map(|_| normal(&mut r)).collect::<Vec<_>>()),
            10f64.powf(r.random_range(-1.0..1.0)),
            NormSpec::p(PS[k as usize % 5], n).unwrap(),
            k % 2 == 0,
        )
        .unwrap();
        let g = ball_geometry_check(&ball, 10_000, k).map_err(|e| e.to_string())?;
        if !g.convexity_counterexamples.is_empty() {
            return Err(format!("ball {k}: {} convexity counterexamples", g.convexity_counterexamples.len()));
        }
        trials += g.trials;
    }
    Ok(format!("10^4 closure witnesses, max error {worst:.2e}; {trials} convexity trials, no counterexamples"))
}

fn c12_cli() -> Outcome {
    use std::process::Command;
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_normkit")).args(args).output().map_err(|e| e.to_string());
    let a = run(&["suite", "--seed", "7"])?;
    let b = run(&["suite", "--seed", "7"])?;
    if a.status.code() != Some(0) {
        return Err(format!("suite exit {:?}:\n{}", a.status.code(), String::from_utf8_lossy(&a.stdout)));
    }
    if a.stdout != b.stdout {
        return Err("suite output differs between runs".into());
    }
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/norms/suite_with_corrupted_norm.json");
    let c = run(&["suite", "--seed", "7", fixture])?;
    if c.status.code() != Some(1) {
        return Err(format!("corrupted fixture exit {:?}", c.status.code()));
    }
    Ok(format!("two runs byte-identical ({} bytes), exit 0; corrupted norm exit 1", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("operator-norm oracle agreement", c01_operator_norm_vs_svd),
        ("bound certificate", c02_bound_certificate),
        ("isometry suite", c03_isometries),
        ("equivalence sandwich", c04_equivalence),
        ("Hoelder/Minkowski fuzzing", c05_holder_minkowski),
        ("dual isometry at truncation", c06_dual_isometry),
        ("Hahn-Banach preservation", c07_hahn_banach),
        ("norming/annihilating functionals", c08_norming_annihilating),
        ("l2 Cauchy recovery", c09_cauchy),
        ("tensor linearization", c10_tensor),
        ("ball geometry", c11_ball_geometry),
        ("CLI determinism", c12_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
