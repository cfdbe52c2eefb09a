//! The verification suites behind `qwhit verify`.
//!
//! Every suite walks a deterministic grid (or a seeded sample, for the
//! intertwining and adjointness pairings) and aggregates per-point outcomes
//! into one report per checked family. Tolerances for the numeric
//! degeneration suite are pinned here; everything else is exact.

use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};

use qwhittaker::characters::{
    branching_check, cauchy_check, constant_term_branching, dimension_check, h_eigencheck,
    pieri_check, q0_limit_check, q1_limit_check, q1_recursion_check, splitting_check,
};
use qwhittaker::degeneration::{kernel_limit_check, toda_degeneration_check};
use qwhittaker::lattice::{sorted_window, window, Lcg64};
use qwhittaker::macdonald::{
    generating_series_check, macdonald_eigencheck, orthogonality_check, t_equals_q_schur_check,
};
use qwhittaker::toda::{
    adjoint_check, eigencheck, intertwine_check, j_eigencheck, FiniteTable,
};
use qwhittaker::whittaker::{psi_direct, psi_recursive, psi_tilde, WhittakerEvaluator};
use qwhittaker::{CheckOutcome, RationalFunctionQ};

use crate::report::{Report, Status};

/// Sup-norm tolerance for the operator degeneration at the largest k.
const TODA_TOL: f64 = 1e-3;
/// Scaled tolerance for the kernel factor identities at full depth.
const KERNEL_TOL: f64 = 1e-10;
/// Kernel sample value w; generic (not a power of any tested q).
const KERNEL_SAMPLE: f64 = 1.0 / 3.0;
/// Default degeneration sample point, pairwise distinct and well separated.
const SAMPLE_X: [f64; 4] = [1.0, 1.0 / 3.0, 1.0 / 7.0, 1.0 / 15.0];

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eigen,
    Recursion,
    Intertwine,
    Adjoint,
    Pieri,
    Branching,
    Cauchy,
    Q0,
    Q1,
    Positivity,
    Macdonald,
    Degenerate,
    All,
}

pub struct VerifyConfig {
    pub rank: Option<usize>,
    pub cap: usize,
    pub window: Option<(i64, i64)>,
    pub max_part: Option<i64>,
    pub degree_bound: Option<i64>,
    pub q_value: f64,
    pub k_list: Vec<i64>,
    pub seed: u64,
}

impl VerifyConfig {
    fn rank_or(&self, default: usize) -> Result<usize, String> {
        let n = self.rank.unwrap_or(default);
        if n == 0 {
            return Err("rank must be at least 1".into());
        }
        if n > self.cap {
            return Err(format!(
                "rank {n} exceeds the configured maximum {} (set QWHIT_MAX_RANK to raise it)",
                self.cap
            ));
        }
        Ok(n)
    }

    fn window_or(&self, lo: i64, hi: i64) -> (i64, i64) {
        self.window.unwrap_or((lo, hi))
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    match suite {
        Suite::Eigen => eigen_suite(cfg),
        Suite::Recursion => recursion_suite(cfg),
        Suite::Intertwine => intertwine_suite(cfg),
        Suite::Adjoint => adjoint_suite(cfg),
        Suite::Pieri => pieri_suite(cfg),
        Suite::Branching => branching_suite(cfg),
        Suite::Cauchy => cauchy_suite(cfg),
        Suite::Q0 => q0_suite(cfg),
        Suite::Q1 => q1_suite(cfg),
        Suite::Positivity => positivity_suite(cfg),
        Suite::Macdonald => macdonald_suite(cfg),
        Suite::Degenerate => degenerate_suite(cfg),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Eigen,
                Suite::Recursion,
                Suite::Intertwine,
                Suite::Adjoint,
                Suite::Pieri,
                Suite::Branching,
                Suite::Cauchy,
                Suite::Q0,
                Suite::Q1,
                Suite::Positivity,
                Suite::Macdonald,
                Suite::Degenerate,
            ] {
                out.extend(run_suite(s, cfg)?);
            }
            Ok(out)
        }
    }
}

// ---------------- report plumbing ----------------

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn failures_to_residual(mut failures: Vec<String>) -> String {
    let extra = failures.len().saturating_sub(3);
    failures.truncate(3);
    let mut s = failures.join("; ");
    if extra > 0 {
        s.push_str(&format!(" (+{extra} more)"));
    }
    s
}

fn finish(check: &str, params: Value, start: Instant, failures: Vec<String>) -> Report {
    if failures.is_empty() {
        Report {
            check: check.into(),
            params,
            status: Status::Pass,
            residual: None,
            message: None,
            table: None,
            wall_ms: ms(start),
        }
    } else {
        Report {
            check: check.into(),
            params,
            status: Status::Fail,
            residual: Some(failures_to_residual(failures)),
            message: None,
            table: None,
            wall_ms: ms(start),
        }
    }
}

fn error_report(check: &str, params: Value, start: Instant, message: String) -> Report {
    Report {
        check: check.into(),
        params,
        status: Status::Error,
        residual: None,
        message: Some(message),
        table: None,
        wall_ms: ms(start),
    }
}

/// Runs one exact check per grid point and folds the outcomes into a single
/// report; an operational error aborts the grid and is reported as `error`.
fn grid_report(
    check: &str,
    params: Value,
    grid: &[Vec<i64>],
    mut f: impl FnMut(&[i64]) -> qwhittaker::Result<CheckOutcome>,
) -> Report {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in grid {
        match f(p) {
            Ok(o) if o.pass => {}
            Ok(o) => failures.push(format!(
                "p={p:?}: {}",
                o.residual.unwrap_or_else(|| "failed".into())
            )),
            Err(e) => return error_report(check, params, start, format!("at p={p:?}: {e}")),
        }
    }
    finish(check, params, start, failures)
}

fn one_report(
    check: &str,
    params: Value,
    f: impl FnOnce() -> qwhittaker::Result<CheckOutcome>,
) -> Report {
    let start = Instant::now();
    match f() {
        Ok(o) if o.pass => finish(check, params, start, Vec::new()),
        Ok(o) => finish(
            check,
            params,
            start,
            vec![o.residual.unwrap_or_else(|| "failed".into())],
        ),
        Err(e) => error_report(check, params, start, e.to_string()),
    }
}

fn window_str(lo: i64, hi: i64) -> String {
    format!("{lo}..{hi}")
}

// ---------------- exact suites ----------------

fn eigen_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let (lo, hi) = cfg.window_or(-1, 3);
    let grid = window(n, lo, hi);
    let sorted = sorted_window(n, 0, cfg.max_part.unwrap_or(3));
    let evaluator = WhittakerEvaluator::new();
    let mut out = Vec::new();
    for r in 1..=n {
        out.push(grid_report(
            "eigen-h",
            json!({"n": n, "r": r, "window": window_str(lo, hi), "points": grid.len()}),
            &grid,
            |p| eigencheck(r, p, &evaluator),
        ));
    }
    for r in 1..=n {
        out.push(grid_report(
            "eigen-j",
            json!({"n": n, "r": r, "points": sorted.len()}),
            &sorted,
            |p| j_eigencheck(r, p),
        ));
    }
    Ok(out)
}

fn recursion_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let (lo, hi) = cfg.window_or(-1, 3);
    let grid = window(n, lo, hi);
    Ok(vec![grid_report(
        "recursion",
        json!({"n": n, "window": window_str(lo, hi), "points": grid.len()}),
        &grid,
        |p| {
            let diff = psi_recursive(p).checked_sub(&psi_direct(p))?;
            Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
        },
    )])
}

fn intertwine_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let ranks = match cfg.rank {
        Some(l) => vec![l],
        None => vec![1, 2],
    };
    let (lo, hi) = cfg.window_or(-1, 3);
    let pairs = 30usize;
    let mut rng = Lcg64::new(cfg.seed);
    let mut out = Vec::new();
    for &l in &ranks {
        if l == 0 || l + 1 > cfg.cap {
            return Err(format!(
                "intertwining at lower rank {l} needs upper rank {} within the maximum {}",
                l + 1,
                cfg.cap
            ));
        }
        for k in 1..=l + 1 {
            let start = Instant::now();
            let params =
                json!({"l": l, "k": k, "pairs": pairs, "window": window_str(lo, hi), "seed": cfg.seed});
            let mut failures = Vec::new();
            let mut err = None;
            for _ in 0..pairs {
                let upper: Vec<i64> = (0..=l).map(|_| rng.int_in(lo, hi)).collect();
                let lower: Vec<i64> = (0..l).map(|_| rng.int_in(lo, hi)).collect();
                match intertwine_check(k, &upper, &lower) {
                    Ok(o) if o.pass => {}
                    Ok(o) => failures.push(format!(
                        "upper={upper:?} lower={lower:?}: {}",
                        o.residual.unwrap_or_else(|| "failed".into())
                    )),
                    Err(e) => {
                        err = Some(format!("upper={upper:?} lower={lower:?}: {e}"));
                        break;
                    }
                }
            }
            out.push(match err {
                Some(m) => error_report("intertwine", params, start, m),
                None => finish("intertwine", params, start, failures),
            });
        }
    }
    Ok(out)
}

fn adjoint_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let ranks = match cfg.rank {
        Some(l) => vec![l],
        None => vec![1, 2],
    };
    let (lo, hi) = cfg.window_or(-1, 3);
    let trials = 8usize;
    let support = 4usize;
    let mut rng = Lcg64::new(cfg.seed);
    let mut out = Vec::new();
    for &l in &ranks {
        if l == 0 || l > cfg.cap {
            return Err(format!("rank {l} exceeds the configured maximum {}", cfg.cap));
        }
        for r in 1..=l {
            let start = Instant::now();
            let params = json!({"l": l, "r": r, "trials": trials, "window": window_str(lo, hi), "seed": cfg.seed});
            let mut failures = Vec::new();
            let mut err = None;
            for _ in 0..trials {
                // f lives on the weakly decreasing anti-cone, g on the weakly
                // increasing cone; that is the support class on which the
                // pairing identity is exact for every r (rank 1 is ungated).
                let mut f = FiniteTable::new(l, 0);
                let mut g = FiniteTable::new(l, 0);
                for _ in 0..support {
                    let mut a: Vec<i64> = (0..l).map(|_| rng.int_in(lo, hi)).collect();
                    let mut b: Vec<i64> = (0..l).map(|_| rng.int_in(lo, hi)).collect();
                    a.sort_unstable_by(|x, y| y.cmp(x));
                    b.sort_unstable();
                    let fv = RationalFunctionQ::from_int(rng.int_in(-2, 2));
                    let gv = RationalFunctionQ::from_int(rng.int_in(-2, 2));
                    f.insert(a, qwhittaker::whittaker::WhittakerValue::constant(0, fv));
                    g.insert(b, qwhittaker::whittaker::WhittakerValue::constant(0, gv));
                }
                match adjoint_check(r, &f, &g) {
                    Ok(o) if o.pass => {}
                    Ok(o) => failures.push(format!(
                        "trial supports f={:?} g={:?}: {}",
                        f.support().collect::<Vec<_>>(),
                        g.support().collect::<Vec<_>>(),
                        o.residual.unwrap_or_else(|| "failed".into())
                    )),
                    Err(e) => {
                        err = Some(e.to_string());
                        break;
                    }
                }
            }
            out.push(match err {
                Some(m) => error_report("adjoint", params, start, m),
                None => finish("adjoint", params, start, failures),
            });
        }
    }
    Ok(out)
}

fn pieri_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let maxp = cfg.max_part.unwrap_or(3);
    let grid = sorted_window(n, 0, maxp);
    let mut out = Vec::new();
    for r in 1..=n {
        out.push(grid_report(
            "pieri",
            json!({"n": n, "r": r, "max_part": maxp, "points": grid.len()}),
            &grid,
            |p| pieri_check(r, p),
        ));
    }
    Ok(out)
}

fn branching_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let maxp = cfg.max_part.unwrap_or(3);
    let bound = cfg.degree_bound.unwrap_or(4);
    let grid = sorted_window(n, 0, maxp);
    let mut out = vec![
        grid_report(
            "branching",
            json!({"n": n, "max_part": maxp, "points": grid.len()}),
            &grid,
            |p| branching_check(p),
        ),
        grid_report(
            "branching-constant-term",
            json!({"n": n, "max_part": maxp, "degree_bound": bound, "points": grid.len()}),
            &grid,
            |p| constant_term_branching(p, bound),
        ),
    ];
    for r in 1..=n {
        out.push(one_report("splitting", json!({"n": n, "r": r}), || {
            splitting_check(r, n)
        }));
    }
    Ok(out)
}

fn cauchy_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let bound = cfg.degree_bound.unwrap_or(4);
    let mut out = Vec::new();
    for (a, b) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
        if a > cfg.cap || b > cfg.cap {
            continue;
        }
        out.push(one_report(
            "cauchy",
            json!({"n": a, "m": b, "degree_bound": bound}),
            || cauchy_check(a, b, bound),
        ));
    }
    Ok(out)
}

fn q0_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let maxp = cfg.max_part.unwrap_or(4);
    let grid = sorted_window(n, 0, maxp);
    Ok(vec![grid_report(
        "q0-limit",
        json!({"n": n, "max_part": maxp, "points": grid.len()}),
        &grid,
        |p| q0_limit_check(p),
    )])
}

fn q1_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let maxp = cfg.max_part.unwrap_or(3);
    let grid = sorted_window(n, 0, maxp);
    let mut out = vec![grid_report(
        "q1-limit",
        json!({"n": n, "max_part": maxp, "points": grid.len()}),
        &grid,
        |p| q1_limit_check(p),
    )];
    for r in 1..=n {
        out.push(grid_report(
            "q1-eigen",
            json!({"n": n, "r": r, "points": grid.len()}),
            &grid,
            |p| h_eigencheck(r, p),
        ));
    }
    out.push(grid_report(
        "q1-recursion",
        json!({"n": n, "points": grid.len()}),
        &grid,
        |p| q1_recursion_check(p),
    ));
    out.push(grid_report(
        "q1-dimension",
        json!({"n": n, "points": grid.len()}),
        &grid,
        |p| dimension_check(p),
    ));
    Ok(out)
}

fn positivity_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let maxp = cfg.max_part.unwrap_or(4);
    let grid = sorted_window(n, 0, maxp);
    Ok(vec![grid_report(
        "positivity",
        json!({"n": n, "max_part": maxp, "points": grid.len()}),
        &grid,
        |p| {
            let v = psi_tilde(p);
            for (e, c) in v.terms() {
                let natural = c
                    .as_polynomial()
                    .map(|poly| poly.has_natural_coeffs())
                    .unwrap_or(false);
                if !natural {
                    return Ok(CheckOutcome::failed(format!(
                        "coefficient of z^{e:?} is {c}, not in N[q]"
                    )));
                }
            }
            Ok(CheckOutcome::passed())
        },
    )])
}

fn macdonald_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    let bound = cfg.degree_bound.unwrap_or(4);
    if !(1..=5).contains(&bound) {
        return Err(format!(
            "the Macdonald suite accepts degree bounds 1..=5, got {bound}"
        ));
    }
    let lambdas = ascending_lambdas(n, bound);
    let mut out = Vec::new();

    let start = Instant::now();
    let params = json!({"n": n, "degree_bound": bound, "lambdas": lambdas.len()});
    let mut failures = Vec::new();
    let mut err = None;
    'outer: for lam in &lambdas {
        for r in 1..=n {
            match macdonald_eigencheck(lam, r, n) {
                Ok(e) if e.outcome.pass => {}
                Ok(e) => failures.push(format!(
                    "lambda={lam:?} r={r}: measured {} expected {}",
                    e.measured, e.expected
                )),
                Err(e) => {
                    err = Some(format!("lambda={lam:?} r={r}: {e}"));
                    break 'outer;
                }
            }
        }
    }
    out.push(match err {
        Some(m) => error_report("macdonald-eigen", params, start, m),
        None => finish("macdonald-eigen", params, start, failures),
    });

    out.push(family_report("macdonald-schur", n, bound, &lambdas, |lam| {
        t_equals_q_schur_check(lam, n)
    }));
    out.push(family_report("macdonald-series", n, bound, &lambdas, |lam| {
        generating_series_check(lam, n)
    }));
    for d in 1..=bound {
        out.push(one_report(
            "macdonald-orthogonality",
            json!({"n": n, "degree": d}),
            || orthogonality_check(d, n),
        ));
    }
    Ok(out)
}

fn family_report(
    check: &str,
    n: usize,
    bound: i64,
    lambdas: &[Vec<i64>],
    mut f: impl FnMut(&[i64]) -> qwhittaker::Result<CheckOutcome>,
) -> Report {
    let start = Instant::now();
    let params = json!({"n": n, "degree_bound": bound, "lambdas": lambdas.len()});
    let mut failures = Vec::new();
    for lam in lambdas {
        match f(lam) {
            Ok(o) if o.pass => {}
            Ok(o) => failures.push(format!(
                "lambda={lam:?}: {}",
                o.residual.unwrap_or_else(|| "failed".into())
            )),
            Err(e) => return error_report(check, params, start, format!("lambda={lam:?}: {e}")),
        }
    }
    finish(check, params, start, failures)
}

/// Weakly increasing nonnegative vectors of length n with 1 <= sum <= bound.
fn ascending_lambdas(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, min: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().any(|v| *v > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for v in min..=left {
            cur[i] = v;
            rec(i + 1, v, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, 0, bound, &mut cur, &mut out);
    out.sort();
    out
}

// ---------------- numeric suite ----------------

fn degenerate_suite(cfg: &VerifyConfig) -> Result<Vec<Report>, String> {
    let n = cfg.rank_or(2)?;
    if n > SAMPLE_X.len() {
        return Err(format!(
            "the degeneration suite has default sample points up to rank {}",
            SAMPLE_X.len()
        ));
    }
    let q = cfg.q_value;
    if !(q > 0.0 && q < 1.0) {
        return Err(format!("q must lie strictly between 0 and 1, got {q}"));
    }
    let k = &cfg.k_list;
    if k.is_empty() || k.iter().any(|v| *v < 0) || k.windows(2).any(|w| w[1] <= w[0]) {
        return Err("k list must be nonnegative and strictly increasing".into());
    }
    let x = &SAMPLE_X[..n];
    let mut out = Vec::new();
    for r in 1..=n {
        let start = Instant::now();
        let params =
            json!({"n": n, "r": r, "q": q, "x": x, "k": k, "tolerance": TODA_TOL});
        match toda_degeneration_check(r, n, q, k, x, TODA_TOL) {
            Ok(rep) => {
                let table = json!({"k": rep.k_list, "sup_deviation": rep.deviations});
                out.push(Report {
                    check: "degenerate-toda".into(),
                    params,
                    status: if rep.outcome.pass { Status::Pass } else { Status::Fail },
                    residual: rep.outcome.residual,
                    message: None,
                    table: Some(table),
                    wall_ms: ms(start),
                });
            }
            Err(e) => out.push(error_report("degenerate-toda", params, start, e.to_string())),
        }
    }

    let kp: Vec<i64> = k.iter().copied().filter(|v| *v >= 1).collect();
    if !kp.is_empty() {
        let depth = kernel_depth(q, *kp.last().expect("nonempty"));
        let start = Instant::now();
        let params = json!({
            "q": q, "k": kp, "w": KERNEL_SAMPLE, "depth": depth, "tolerance": KERNEL_TOL
        });
        match kernel_limit_check(depth, q, &kp, KERNEL_SAMPLE, KERNEL_TOL) {
            Ok(rep) => {
                let table = json!({
                    "k": rep.k_list,
                    "sup_deviation": rep.full_deviations,
                    "half_depth": rep.half_depth,
                    "half_depth_deviation": rep.half_deviations,
                });
                out.push(Report {
                    check: "degenerate-kernel".into(),
                    params,
                    status: if rep.outcome.pass { Status::Pass } else { Status::Fail },
                    residual: rep.outcome.residual,
                    message: None,
                    table: Some(table),
                    wall_ms: ms(start),
                });
            }
            Err(e) => out.push(error_report("degenerate-kernel", params, start, e.to_string())),
        }
    }
    Ok(out)
}

/// Depth that pushes the slowest factor tail (the doubly shifted one, of
/// order w q^{depth - 2k}) safely below the kernel tolerance.
fn kernel_depth(q: f64, k_max: i64) -> usize {
    let per_step = -(q.ln());
    let needed = (34.0 * std::f64::consts::LN_2 / per_step).ceil() as usize;
    (2 * k_max as usize + needed + 10).min(20_000)
}
