//! Acceptance suite: twelve end-to-end properties, one test and one printed
//! verdict line each. Every grid, tolerance, and time budget is pinned here;
//! oracles that matter are recomputed locally rather than trusted from the
//! library internals they certify.

use std::time::{Duration, Instant};

use qwhittaker::characters::{
    branching_check, cauchy_check, dimension_check, h_eigencheck, pieri_check, q0_limit_check,
    q1_limit_check, q1_recursion_check,
};
use qwhittaker::degeneration::toda_degeneration_check;
use qwhittaker::lattice::{sorted_window, window, Lcg64};
use qwhittaker::macdonald::{
    generating_series_check, macdonald_eigencheck, orthogonality_check, t_equals_q_schur_check,
};
use qwhittaker::qcomb::q_factorial;
use qwhittaker::toda::{
    adjoint_check, eigencheck, intertwine_check, j_eigencheck, FiniteTable,
};
use qwhittaker::whittaker::{
    psi_direct, psi_recursive, psi_tilde, WhittakerEvaluator, WhittakerValue,
};
use qwhittaker::{PolynomialQ, RationalFunctionQ};

const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(1);
const EIGEN_BUDGET: Duration = Duration::from_secs(120);
const RECURSION_BUDGET: Duration = Duration::from_secs(60);
const DEGENERATION_BUDGET: Duration = Duration::from_secs(5);
const DEGENERATION_TOL: f64 = 1e-3;
const SAMPLE_SEED: u64 = 2024;

fn conclude(idx: usize, desc: &str, start: Instant, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!(
        "acceptance {idx:02}: {} - {desc} ({:.0} ms)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64() * 1000.0
    );
    assert!(ok, "{}", failures.join("\n"));
}

fn budget(failures: &mut Vec<String>, start: Instant, limit: Duration) {
    let took = start.elapsed();
    if took > limit {
        failures.push(format!("took {took:?}, budget {limit:?}"));
    }
}

/// Rank-2 closed form: on the cone, a single interlacing index k runs from
/// p1 to p2 and contributes z1^k z2^{p1+p2-k} over the two gap q-factorials;
/// off the cone the function vanishes.
fn gl2_oracle(p1: i64, p2: i64) -> qwhittaker::Result<WhittakerValue> {
    if p1 > p2 {
        return Ok(WhittakerValue::zero(2));
    }
    let mut acc = WhittakerValue::zero(2);
    for k in p1..=p2 {
        let den = &q_factorial(k - p1)? * &q_factorial(p2 - k)?;
        let coeff = RationalFunctionQ::new(PolynomialQ::one(), den)?;
        acc = acc.checked_add(&WhittakerValue::monomial(2, vec![k, p1 + p2 - k], coeff))?;
    }
    Ok(acc)
}

#[test]
fn acceptance_01_gl2_closed_form() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let grid = window(2, -2, 3);
    for p in &grid {
        match gl2_oracle(p[0], p[1]) {
            Ok(expected) => {
                if psi_direct(p) != expected {
                    failures.push(format!("closed form mismatch at {p:?}"));
                }
            }
            Err(e) => failures.push(format!("oracle error at {p:?}: {e}")),
        }
    }
    budget(&mut failures, start, CLOSED_FORM_BUDGET);
    conclude(1, "rank-2 closed form over [-2,3]^2, exact", start, failures);
}

#[test]
fn acceptance_02_eigenfunction_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=4usize {
        let evaluator = WhittakerEvaluator::new();
        for p in window(n, -1, 3) {
            for r in 1..=n {
                match eigencheck(r, &p, &evaluator) {
                    Ok(o) if o.pass => {}
                    Ok(_) => failures.push(format!("H_{r} eigen fails at n={n} p={p:?}")),
                    Err(e) => failures.push(format!("n={n} r={r} p={p:?}: {e}")),
                }
            }
        }
    }
    budget(&mut failures, start, EIGEN_BUDGET);
    conclude(
        2,
        "H_r Psi = e_r Psi for n in 2..4 over [-1,3]^n, exact",
        start,
        failures,
    );
}

#[test]
fn acceptance_03_recursion_matches_direct() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=4usize {
        for p in window(n, -1, 3) {
            if psi_recursive(&p) != psi_direct(&p) {
                failures.push(format!("recursion mismatch at n={n} p={p:?}"));
            }
        }
    }
    budget(&mut failures, start, RECURSION_BUDGET);
    conclude(
        3,
        "kernel recursion equals the pattern sum for n in 2..4 over [-1,3]^n",
        start,
        failures,
    );
}

#[test]
fn acceptance_04_conjugated_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=3usize {
        for p in sorted_window(n, 0, 3) {
            for r in 1..=n {
                match j_eigencheck(r, &p) {
                    Ok(o) if o.pass => {}
                    Ok(_) => failures.push(format!("J_{r} eigen fails at n={n} p={p:?}")),
                    Err(e) => failures.push(format!("n={n} r={r} p={p:?}: {e}")),
                }
            }
        }
    }
    conclude(
        4,
        "J_r Psi~ = e_r Psi~ on weakly increasing p in [0,3]^n, n <= 3",
        start,
        failures,
    );
}

#[test]
fn acceptance_05_q0_triple_equality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=4usize {
        for p in sorted_window(n, 0, 4) {
            match q0_limit_check(&p) {
                Ok(o) if o.pass => {}
                Ok(o) => failures.push(format!(
                    "n={n} p={p:?}: {}",
                    o.residual.unwrap_or_default()
                )),
                Err(e) => failures.push(format!("n={n} p={p:?}: {e}")),
            }
        }
    }
    conclude(
        5,
        "q=0 value = pattern character = Jacobi-Trudi Schur, sorted [0,4]^n, n <= 4",
        start,
        failures,
    );
}

#[test]
fn acceptance_06_pieri_and_branching() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=4usize {
        for p in sorted_window(n, 0, 3) {
            for r in 1..=n {
                match pieri_check(r, &p) {
                    Ok(o) if o.pass => {}
                    Ok(_) => failures.push(format!("Pieri fails at n={n} r={r} p={p:?}")),
                    Err(e) => failures.push(format!("pieri n={n} r={r} p={p:?}: {e}")),
                }
            }
        }
    }
    for n in 2..=4usize {
        for p in sorted_window(n, 0, 3) {
            match branching_check(&p) {
                Ok(o) if o.pass => {}
                Ok(_) => failures.push(format!("branching fails at n={n} p={p:?}")),
                Err(e) => failures.push(format!("branching n={n} p={p:?}: {e}")),
            }
        }
    }
    conclude(
        6,
        "Pieri and branching rules, n <= 4, parts <= 3, exact",
        start,
        failures,
    );
}

#[test]
fn acceptance_07_cauchy_truncations() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, m) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
        match cauchy_check(n, m, 4) {
            Ok(o) if o.pass => {}
            Ok(o) => failures.push(format!(
                "({n},{m}): {}",
                o.residual.unwrap_or_default()
            )),
            Err(e) => failures.push(format!("({n},{m}): {e}")),
        }
    }
    conclude(
        7,
        "Cauchy expansion for (n,m) in {(1,1),(2,1),(2,2),(3,2)} up to degree 4",
        start,
        failures,
    );
}

#[test]
fn acceptance_08_positivity_of_the_character_form() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=4usize {
        for p in sorted_window(n, 0, 4) {
            let v = psi_tilde(&p);
            for (e, c) in v.terms() {
                let natural = c
                    .as_polynomial()
                    .map(|poly| poly.has_natural_coeffs())
                    .unwrap_or(false);
                if !natural {
                    failures.push(format!("n={n} p={p:?}: coefficient of z^{e:?} is {c}"));
                }
            }
        }
    }
    conclude(
        8,
        "Psi~ has natural-number q-coefficients on sorted [0,4]^n, n <= 4",
        start,
        failures,
    );
}

#[test]
fn acceptance_09_q1_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    fn run(
        failures: &mut Vec<String>,
        label: String,
        out: qwhittaker::Result<qwhittaker::CheckOutcome>,
    ) {
        match out {
            Ok(o) if o.pass => {}
            Ok(o) => failures.push(format!("{label}: {}", o.residual.unwrap_or_default())),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    for n in 1..=3usize {
        for p in sorted_window(n, 0, 3) {
            run(&mut failures, format!("q1 limit n={n} p={p:?}"), q1_limit_check(&p));
            for r in 1..=n {
                run(&mut failures, format!("q1 eigen n={n} r={r} p={p:?}"), h_eigencheck(r, &p));
            }
            if n >= 2 {
                run(&mut failures, format!("q1 recursion n={n} p={p:?}"), q1_recursion_check(&p));
            }
            run(&mut failures, format!("q1 dimension n={n} p={p:?}"), dimension_check(&p));
        }
    }
    conclude(
        9,
        "q=1 limit: closed form, eigen-equations, recursions, dimensions, n <= 3",
        start,
        failures,
    );
}

#[test]
fn acceptance_10_intertwining_and_adjointness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = Lcg64::new(SAMPLE_SEED);
    for l in 1..=2usize {
        for k in 1..=l + 1 {
            for _ in 0..150 {
                let upper: Vec<i64> = (0..=l).map(|_| rng.int_in(-1, 3)).collect();
                let lower: Vec<i64> = (0..l).map(|_| rng.int_in(-1, 3)).collect();
                match intertwine_check(k, &upper, &lower) {
                    Ok(o) if o.pass => {}
                    Ok(_) => failures.push(format!(
                        "intertwine l={l} k={k} upper={upper:?} lower={lower:?}"
                    )),
                    Err(e) => failures.push(format!("intertwine l={l} k={k}: {e}")),
                }
            }
        }
        for r in 1..=l {
            for _ in 0..12 {
                let mut f = FiniteTable::new(l, 0);
                let mut g = FiniteTable::new(l, 0);
                for _ in 0..4 {
                    let mut a: Vec<i64> = (0..l).map(|_| rng.int_in(-1, 3)).collect();
                    let mut b: Vec<i64> = (0..l).map(|_| rng.int_in(-1, 3)).collect();
                    a.sort_unstable_by(|x, y| y.cmp(x));
                    b.sort_unstable();
                    f.insert(
                        a,
                        WhittakerValue::constant(0, RationalFunctionQ::from_int(rng.int_in(-2, 2))),
                    );
                    g.insert(
                        b,
                        WhittakerValue::constant(0, RationalFunctionQ::from_int(rng.int_in(-2, 2))),
                    );
                }
                match adjoint_check(r, &f, &g) {
                    Ok(o) if o.pass => {}
                    Ok(o) => failures.push(format!(
                        "adjoint l={l} r={r}: {}",
                        o.residual.unwrap_or_default()
                    )),
                    Err(e) => failures.push(format!("adjoint l={l} r={r}: {e}")),
                }
            }
        }
    }
    conclude(
        10,
        "intertwining and adjointness, one lattice convention, l in {1,2}",
        start,
        failures,
    );
}

#[test]
fn acceptance_11_macdonald_lab() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=3usize {
        for d in 1..=4i64 {
            match orthogonality_check(d, n) {
                Ok(o) if o.pass => {}
                Ok(o) => failures.push(format!(
                    "orthogonality n={n} d={d}: {}",
                    o.residual.unwrap_or_default()
                )),
                Err(e) => failures.push(format!("orthogonality n={n} d={d}: {e}")),
            }
        }
        for lam in ascending_lambdas(n, 4) {
            for r in 1..=n {
                match macdonald_eigencheck(&lam, r, n) {
                    Ok(e) if e.outcome.pass => {}
                    Ok(e) => failures.push(format!(
                        "eigen n={n} lambda={lam:?} r={r}: measured {} expected {}",
                        e.measured, e.expected
                    )),
                    Err(e) => failures.push(format!("eigen n={n} lambda={lam:?} r={r}: {e}")),
                }
            }
            match t_equals_q_schur_check(&lam, n) {
                Ok(o) if o.pass => {}
                Ok(_) => failures.push(format!("t=q Schur n={n} lambda={lam:?}")),
                Err(e) => failures.push(format!("t=q Schur n={n} lambda={lam:?}: {e}")),
            }
            match generating_series_check(&lam, n) {
                Ok(o) if o.pass => {}
                Ok(_) => failures.push(format!("series n={n} lambda={lam:?}")),
                Err(e) => failures.push(format!("series n={n} lambda={lam:?}: {e}")),
            }
        }
    }
    conclude(
        11,
        "Macdonald orthogonality, t=q Schur collapse, eigenvalue series, |L| <= 4, n <= 3",
        start,
        failures,
    );
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

#[test]
fn acceptance_12_operator_degeneration() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let x = [1.0, 1.0 / 3.0];
    for r in [1usize, 2] {
        match toda_degeneration_check(r, 2, 0.5, &[4, 8, 12], &x, DEGENERATION_TOL) {
            Ok(report) => {
                if !report.outcome.pass {
                    failures.push(format!(
                        "r={r}: {}",
                        report.outcome.residual.unwrap_or_default()
                    ));
                }
                if r == 1 {
                    let d = &report.deviations;
                    if !(d[0] > d[1] && d[1] > d[2] && d[2] < DEGENERATION_TOL) {
                        failures.push(format!("r=1 deviations not strictly decreasing: {d:?}"));
                    }
                }
            }
            Err(e) => failures.push(format!("r={r}: {e}")),
        }
    }
    budget(&mut failures, start, DEGENERATION_BUDGET);
    conclude(
        12,
        "Macdonald-to-Toda degeneration at q=1/2, x=(1,1/3), k=4,8,12",
        start,
        failures,
    );
}
