//! Fixture files: a command, its input, the expected outcome and an optional
//! independent oracle to certify the reported numbers against.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use crate::commands::{execute, grid_lower_constant, RunConfig};
use crate::error::{Error, Result};
use crate::norm::NormSpec;
use crate::operators::{sampled_gains, LinearOperator};
use crate::oracle::{oracle_grid_refined, oracle_svd_sigma_max, Extremum, GridDomain};
use crate::report::Report;
use crate::sampling::{self, SampleMode};
use crate::space::{Scalar, Vector};

pub const FIXTURE_DIRS: [&str; 5] = ["norms", "operators", "sequences", "functionals", "tensors"];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub command: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub input: Value,
    #[serde(default)]
    pub expect: Expect,
    #[serde(default)]
    pub oracle: Option<Oracle>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default)]
    pub exit: u8,
    /// name → [expected, absolute tolerance]
    #[serde(default)]
    pub values: BTreeMap<String, [f64; 2]>,
    /// name → [lower, upper]
    #[serde(default)]
    pub ranges: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    pub note_contains: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    /// `value` against the largest singular value.
    Svd,
    /// `value` against the best gain over sampled sphere points.
    SphereSampling,
    /// QᵀQ = I for the operator's matrix.
    Orthogonal,
    /// `a` against a grid search over max |α_i| = 1.
    GridA,
    /// One-step endpoints `a`, `b` against a grid over the subspace
    /// coordinate (one-dimensional subspaces).
    GridHb,
    /// `distance` against a grid search over subspace coordinates.
    GridDistance,
    /// `value` against dual(xp) · dual(yp).
    DualProduct,
}

pub fn load(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Every `*.json` under the fixture subdirectories of `root`, sorted.
pub fn load_dir(root: &Path) -> Result<Vec<(PathBuf, Fixture)>> {
    let mut out = Vec::new();
    for d in FIXTURE_DIRS {
        let dir = root.join(d);
        let Ok(entries) = std::fs::read_dir(&dir) else {
            continue;
        };
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let f = load(&p)?;
            out.push((p, f));
        }
    }
    Ok(out)
}

fn get(r: &Report, k: &str) -> std::result::Result<f64, String> {
    r.values.get(k).copied().ok_or_else(|| format!("report has no value {k:?}"))
}

fn field<T: serde::de::DeserializeOwned>(input: &Value, k: &str) -> std::result::Result<T, String> {
    serde_json::from_value(input.get(k).cloned().unwrap_or(Value::Null)).map_err(|e| format!("{k}: {e}"))
}

/// Runs the fixture and returns the list of mismatches (empty on success).
pub fn check(f: &Fixture, cfg: &RunConfig) -> Vec<String> {
    let mut problems = Vec::new();
    let out = execute(&f.command, f.input.clone(), cfg);
    if out.code != f.expect.exit {
        problems.push(format!(
            "exit code {} (expected {}){}",
            out.code,
            f.expect.exit,
            out.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default()
        ));
    }
    let Some(report) = out.report else {
        if !f.expect.values.is_empty() || f.oracle.is_some() {
            problems.push("no report produced".into());
        }
        return problems;
    };
    for (k, [want, tol]) in &f.expect.values {
        match get(&report, k) {
            Ok(v) if (v - want).abs() <= *tol => {}
            Ok(v) => problems.push(format!("{k} = {v}, expected {want} ± {tol}")),
            Err(e) => problems.push(e),
        }
    }
    for (k, [lo, hi]) in &f.expect.ranges {
        match get(&report, k) {
            Ok(v) if *lo <= v && v <= *hi => {}
            Ok(v) => problems.push(format!("{k} = {v} outside [{lo}, {hi}]")),
            Err(e) => problems.push(e),
        }
    }
    if let Some(s) = &f.expect.note_contains {
        if !report.notes.iter().any(|n| n.contains(s.as_str())) {
            problems.push(format!("no note mentions {s:?}"));
        }
    }
    if let Some(o) = f.oracle {
        if let Err(e) = run_oracle(o, &f.input, &report, cfg) {
            problems.push(format!("oracle {o:?}: {e}"));
        }
    }
    problems
}

fn run_oracle(o: Oracle, input: &Value, r: &Report, cfg: &RunConfig) -> std::result::Result<(), String> {
    let close = |what: &str, got: f64, want: f64, tol: f64| {
        if (got - want).abs() <= tol {
            Ok(())
        } else {
            Err(format!("{what}: solver {got}, oracle {want}"))
        }
    };
    match o {
        Oracle::Svd => {
            let t: LinearOperator = serde_json::from_value(input.clone()).map_err(|e| e.to_string())?;
            let s = oracle_svd_sigma_max(t.matrix());
            close("value", get(r, "value")?, s, 1e-8 * s.max(1.0))
        }
        Oracle::SphereSampling => {
            let t: LinearOperator = serde_json::from_value(input.clone()).map_err(|e| e.to_string())?;
            let mut rng = sampling::rng(cfg.seed);
            let gains = sampled_gains(&t, cfg.samples, SampleMode::OnSphere, &mut rng).map_err(|e| e.to_string())?;
            let best = gains.iter().cloned().fold(0.0, f64::max);
            let v = get(r, "value")?;
            if best > v * (1.0 + 1e-9) || best < 0.95 * v {
                return Err(format!("sampled sup {best} vs value {v}"));
            }
            Ok(())
        }
        Oracle::Orthogonal => {
            let t: LinearOperator = serde_json::from_value(input.clone()).map_err(|e| e.to_string())?;
            let m = t.matrix();
            let n = m.cols();
            for i in 0..n {
                for j in 0..n {
                    let g: Scalar = (0..m.rows()).map(|k| m[(k, i)].conj() * m[(k, j)]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    if (g - Scalar::new(want, 0.0)).norm() > 1e-12 {
                        return Err(format!("Q^T Q differs from I at ({i}, {j})"));
                    }
                }
            }
            Ok(())
        }
        Oracle::GridA => {
            let basis: Vec<Vector> = field(input, "basis")?;
            let norm: NormSpec = field(input, "norm")?;
            let (g, _) = grid_lower_constant(&basis, &norm, 1024.min(4096 / basis.len().max(1)))
                .map_err(|e| e.to_string())?;
            close("a", get(r, "a")?, g, 1e-3)
        }
        Oracle::GridHb => {
            let basis: Vec<Vector> = field(input, "basis")?;
            let values: Vec<f64> = field(input, "values")?;
            let norm: NormSpec = field(input, "norm")?;
            let x0: Vector = field(input, "x0")?;
            if basis.len() != 1 {
                return Err("grid endpoints need a one-dimensional subspace".into());
            }
            let nf = get(r, "f_norm")?;
            let b1 = &basis[0];
            let span = 64.0 * (1.0 + norm.eval_slice(x0.coords()) / norm.eval_slice(b1.coords()));
            let dom = GridDomain::Box {
                lo: vec![-span],
                hi: vec![span],
            };
            let h = |t: f64| norm.eval_slice((&b1.scale_real(t) + &x0).coords());
            let fb = |t: &[f64]| -t[0] * values[0] + nf * h(t[0]);
            let fa = |t: &[f64]| t[0] * values[0] + nf * h(t[0]);
            let b = oracle_grid_refined(&fb, &dom, 4096, 20, Extremum::Min).map_err(|e| e.to_string())?.value;
            let a = -oracle_grid_refined(&fa, &dom, 4096, 20, Extremum::Min).map_err(|e| e.to_string())?.value;
            close("a", get(r, "a")?, a, 1e-6)?;
            close("b", get(r, "b")?, b, 1e-6)
        }
        Oracle::GridDistance => {
            let basis: Vec<Vector> = field(input, "basis")?;
            let norm: NormSpec = field(input, "norm")?;
            let x: Vector = field(input, "x")?;
            let span = 4.0 * norm.eval_slice(x.coords())
                / basis.iter().map(|b| norm.eval_slice(b.coords())).fold(f64::INFINITY, f64::min);
            let k = basis.len();
            let dom = GridDomain::Box {
                lo: vec![-span; k],
                hi: vec![span; k],
            };
            let obj = |c: &[f64]| {
                let mut y = x.clone();
                for (cj, b) in c.iter().zip(&basis) {
                    y = &y - &b.scale_real(*cj);
                }
                norm.eval_slice(y.coords())
            };
            let g = oracle_grid_refined(&obj, &dom, 256, 20, Extremum::Min).map_err(|e| e.to_string())?;
            close("distance", get(r, "distance")?, g.value, 1e-6)
        }
        Oracle::DualProduct => {
            let xp: Vector = field(input, "xp")?;
            let yp: Vector = field(input, "yp")?;
            let left: NormSpec = field(input, "left")?;
            let right: NormSpec = field(input, "right")?;
            let want = left.dual_norm(xp.coords()) * right.dual_norm(yp.coords());
            close("value", get(r, "value")?, want, 1e-6 * want.max(1.0))
        }
    }
}
