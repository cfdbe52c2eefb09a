//! Numeric degeneration of the Macdonald operators to the q-Toda chain.
//!
//! This module is deliberately floating-point. The limit sends t = q^{-k} to
//! infinity along integer k, so the intermediate operator coefficients live at
//! wildly different scales and exact arithmetic would buy nothing: the claim
//! being tested is an asymptotic statement, and the honest observable is a
//! deviation that shrinks as k grows. Both checks therefore evaluate in f64,
//! report a deviation per k, and judge convergence; they do not prove it.
//!
//! `toda_degeneration_check` rescales the r-th Macdonald operator by
//! x_i -> x_i t^{-i} and conjugates by the diagonal monomial that absorbs the
//! growing t-powers, then compares the resulting shift coefficients against
//! the q-Toda coefficients on a dictionary of monomial shift-evaluations.
//! `kernel_limit_check` tests the four infinite-product factor identities
//! behind the Whittaker kernel limit at truncation depth N against their
//! finite product limits.

use crate::{CheckOutcome, Error, Result};

/// Per-k deviation table for an operator degeneration run.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub k_list: Vec<i64>,
    /// Sup-norm deviation over the shift dictionary, aligned with `k_list`.
    pub deviations: Vec<f64>,
    pub outcome: CheckOutcome,
}

/// Deviation table for the kernel factor identities at half and full depth.
#[derive(Clone, Debug)]
pub struct KernelLimitReport {
    pub k_list: Vec<i64>,
    pub half_depth: usize,
    pub full_depth: usize,
    /// Worst scaled deviation over the four factor types at `half_depth`.
    pub half_deviations: Vec<f64>,
    /// Worst scaled deviation over the four factor types at `full_depth`.
    pub full_deviations: Vec<f64>,
    pub outcome: CheckOutcome,
}

/// Deviations below this are indistinguishable from float noise; a run whose
/// every deviation sits under it counts as converged even without strict
/// decrease (the full-rank operator cancels identically at every k).
const NOISE_FLOOR: f64 = 1e-12;

/// Compares the rescaled r-th Macdonald operator at t = q^{-k} against the
/// r-th q-Toda operator, both evaluated at the sample point `x`.
///
/// For each k the Macdonald shift coefficients are taken in the variables
/// x_i t^{-i} and multiplied by t^{r(r-1)/2 - sum_{i in I}(n-i)}, which is the
/// conjugation by the diagonal monomial prod x_i^{-k(n-i)}. Each subset
/// coefficient then tends to the q-Toda coefficient prod 1 - x_i/x_{i-1} over
/// the i in I whose predecessor is outside I. The deviation at k is the sup
/// over monomial exponents p in {0,1,2}^n of the difference between the two
/// operators' scalar actions sum_I c_I q^{sum_{i in I} p_i}.
///
/// Passes when the deviations strictly decrease along `k_list` and the last
/// one is below `tol`, or when every deviation is already below the noise
/// floor. k = 0 is legal input and serves as a far-from-limit anchor.
pub fn toda_degeneration_check(
    r: usize,
    n: usize,
    q: f64,
    k_list: &[i64],
    x: &[f64],
    tol: f64,
) -> Result<ConvergenceReport> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::RankOutOfRange(format!(
            "operator index {r} for rank {n}"
        )));
    }
    if x.len() != n {
        return Err(Error::VariableMismatch(x.len(), n));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Parse(format!(
            "q must lie strictly between 0 and 1, got {q}"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    if x.iter().any(|v| !v.is_finite() || *v == 0.0) {
        return Err(Error::Parse(
            "sample coordinates must be finite and nonzero".into(),
        ));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if x[i] == x[j] {
                return Err(Error::CoincidentCoordinates(i + 1, j + 1));
            }
        }
    }
    if k_list.is_empty() {
        return Err(Error::Parse("k list must be nonempty".into()));
    }
    if k_list.iter().any(|k| *k < 0) || k_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parse(
            "k list must be nonnegative and strictly increasing".into(),
        ));
    }

    let subsets = subsets_one_based(n, r);
    let limit_coeffs: Vec<f64> = subsets.iter().map(|s| toda_limit_coefficient(s, x)).collect();
    let dict = exponent_dictionary(n);

    let mut deviations = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let t = q.powi(-(k as i32));
        let xt: Vec<f64> = (0..n).map(|m| x[m] * t.powi(-((m + 1) as i32))).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                if xt[i] == xt[j] {
                    return Err(Error::CoincidentCoordinates(i + 1, j + 1));
                }
            }
        }
        let finite_coeffs: Vec<f64> = subsets
            .iter()
            .map(|s| rescaled_coefficient(s, n, r, t, &xt))
            .collect();

        let mut dev = 0.0f64;
        for p in &dict {
            let mut finite_val = 0.0;
            let mut limit_val = 0.0;
            for (s, (cf, cl)) in subsets
                .iter()
                .zip(finite_coeffs.iter().zip(limit_coeffs.iter()))
            {
                let e: i64 = s.iter().map(|&i| p[i - 1]).sum();
                let shift = q.powi(e as i32);
                finite_val += cf * shift;
                limit_val += cl * shift;
            }
            dev = dev.max((finite_val - limit_val).abs());
        }
        deviations.push(dev);
    }

    let all_noise = deviations.iter().all(|d| *d < NOISE_FLOOR);
    let strictly_decreasing = deviations.windows(2).all(|w| w[1] < w[0]);
    let final_ok = *deviations.last().expect("nonempty k list") < tol;
    let outcome = if all_noise || (strictly_decreasing && final_ok) {
        CheckOutcome::passed()
    } else {
        CheckOutcome::failed(format!(
            "deviations {:?} over k {:?} (need strict decrease, final < {tol:e})",
            deviations, k_list
        ))
    };

    Ok(ConvergenceReport {
        k_list: k_list.to_vec(),
        deviations,
        outcome,
    })
}

/// Tests the four kernel factor identities at truncation `depth` = N:
///
///   prod_{m<N} (1 - w q^{m-k}) /(1 - w q^m)      -> prod_{j=1..k}  (1 - w q^{-j})
///   prod_{m<N} (1 - w q^m)    /(1 - w q^{m+k})   -> prod_{j=1..k}  (1 - w q^{j-1})
///   prod_{m<N} (1 - w q^{m-2k})/(1 - w q^{m-k})  -> prod_{j=k+1..2k} (1 - w q^{-j})
///   prod_{m<N} (1 - w q^{m+k}) /(1 - w q^{m+2k}) -> prod_{j=k+1..2k} (1 - w q^{j-1})
///
/// where w stands for the kernel argument product. Each left side telescopes,
/// so at finite depth the deviation is pure truncation error; the check
/// evaluates every identity at depth N/2 and N and demands the deviation not
/// grow with depth and end below `tol`. The deviation is scaled,
/// |L - R| / (1 + |R|), because the negative-exponent identities have right
/// sides that grow like q^{-k^2}.
pub fn kernel_limit_check(
    depth: usize,
    q: f64,
    k_list: &[i64],
    w: f64,
    tol: f64,
) -> Result<KernelLimitReport> {
    if depth < 2 {
        return Err(Error::Parse(format!(
            "truncation depth must be at least 2, got {depth}"
        )));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Parse(format!(
            "q must lie strictly between 0 and 1, got {q}"
        )));
    }
    if !w.is_finite() {
        return Err(Error::Parse(format!("sample value must be finite, got {w}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    if k_list.is_empty() {
        return Err(Error::Parse("k list must be nonempty".into()));
    }
    if k_list.iter().any(|k| *k < 1) || k_list.windows(2).any(|v| v[1] <= v[0]) {
        return Err(Error::Parse(
            "k list must be positive and strictly increasing".into(),
        ));
    }

    let half = depth / 2;
    let mut half_deviations = Vec::with_capacity(k_list.len());
    let mut full_deviations = Vec::with_capacity(k_list.len());
    for &k in k_list {
        half_deviations.push(worst_factor_deviation(half, q, k, w)?);
        full_deviations.push(worst_factor_deviation(depth, q, k, w)?);
    }

    let mut failures = Vec::new();
    for (i, &k) in k_list.iter().enumerate() {
        let grew = full_deviations[i] > half_deviations[i] + 1e-15;
        let over = full_deviations[i] >= tol;
        if grew || over {
            failures.push(format!(
                "k={k}: dev {:.3e} at depth {half}, {:.3e} at depth {depth} (tol {tol:e})",
                half_deviations[i], full_deviations[i]
            ));
        }
    }
    let outcome = if failures.is_empty() {
        CheckOutcome::passed()
    } else {
        CheckOutcome::failed(failures.join("; "))
    };

    Ok(KernelLimitReport {
        k_list: k_list.to_vec(),
        half_depth: half,
        full_depth: depth,
        half_deviations,
        full_deviations,
        outcome,
    })
}

/// Worst scaled deviation |L - R| / (1 + |R|) over the four factor types.
fn worst_factor_deviation(depth: usize, q: f64, k: i64, w: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for ty in 0..4 {
        let (l, r) = factor_pair(ty, depth, q, k, w)?;
        worst = worst.max((l - r).abs() / (1.0 + r.abs()));
    }
    Ok(worst)
}

/// Truncated left product and exact finite right product for one factor type.
///
/// When w is an exact power of q the shifted products can each contain an
/// exactly-zero factor; one zero upstairs against one downstairs is a
/// removable cancellation (the same 1 - w q^e expression at two different m),
/// so matched zero factors are struck in pairs. An unmatched zero downstairs
/// is a genuine pole of the truncation and is reported as an error.
fn factor_pair(ty: usize, depth: usize, q: f64, k: i64, w: f64) -> Result<(f64, f64)> {
    let term = |e: i64| 1.0 - w * q.powi(e as i32);
    let mut left = 1.0f64;
    let mut zeros_up = 0usize;
    let mut zeros_down = 0usize;
    for m in 0..depth as i64 {
        let (num_e, den_e) = match ty {
            0 => (m - k, m),
            1 => (m, m + k),
            2 => (m - 2 * k, m - k),
            _ => (m + k, m + 2 * k),
        };
        let num = term(num_e);
        let den = term(den_e);
        if num == 0.0 {
            zeros_up += 1;
        } else {
            left *= num;
        }
        if den == 0.0 {
            zeros_down += 1;
        } else {
            left /= den;
        }
    }
    if zeros_down > zeros_up {
        return Err(Error::PoleAt(format!(
            "a power of {q} equal to 1/w inside the truncated kernel product"
        )));
    }
    if zeros_up > zeros_down {
        left = 0.0;
    }
    let mut right = 1.0f64;
    let (lo, hi, neg) = match ty {
        0 => (1, k, true),
        1 => (1, k, false),
        2 => (k + 1, 2 * k, true),
        _ => (k + 1, 2 * k, false),
    };
    for j in lo..=hi {
        right *= term(if neg { -j } else { j - 1 });
    }
    if !left.is_finite() || !right.is_finite() {
        return Err(Error::Parse(
            "kernel factor evaluation overflowed; reduce k or the sample value".into(),
        ));
    }
    Ok((left, right))
}

/// q-Toda coefficient at `x` for shift subset `s`: a factor 1 - x_i/x_{i-1}
/// for each i in s whose predecessor i-1 is absent, with no factor at i = 1.
fn toda_limit_coefficient(s: &[usize], x: &[f64]) -> f64 {
    let mut c = 1.0;
    for &i in s {
        if i >= 2 && !s.contains(&(i - 1)) {
            c *= 1.0 - x[i - 1] / x[i - 2];
        }
    }
    c
}

/// Rescaled Macdonald coefficient for subset `s` at the already-substituted
/// point `xt` (xt[m-1] = x_m t^{-m}). The net t-power collects the standard
/// t^{r(r-1)/2} prefactor and the diagonal conjugation t^{-(n-i)} per member.
fn rescaled_coefficient(s: &[usize], n: usize, r: usize, t: f64, xt: &[f64]) -> f64 {
    let mut net: i64 = (r * (r - 1) / 2) as i64;
    for &i in s {
        net -= (n - i) as i64;
    }
    let mut c = t.powi(net as i32);
    for &i in s {
        for j in 1..=n {
            if !s.contains(&j) {
                c *= (t * xt[i - 1] - xt[j - 1]) / (xt[i - 1] - xt[j - 1]);
            }
        }
    }
    c
}

/// All size-r subsets of {1..n}, each ascending, in lexicographic order.
fn subsets_one_based(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(1, n, r, &mut cur, &mut out);
    out
}

/// Monomial exponent dictionary {0,1,2}^n.
fn exponent_dictionary(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for p in &out {
            for e in 0..3i64 {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_first_operator_converges() {
        let report =
            toda_degeneration_check(1, 2, 0.5, &[4, 8, 12], &[1.0, 1.0 / 3.0], 1e-3).unwrap();
        assert!(report.outcome.pass, "{:?}", report.outcome.residual);
        let d = &report.deviations;
        assert!(d[0] > d[1] && d[1] > d[2]);
        assert!(d[2] < 1e-3);
        // decay rate is one power of t = 2^k per step of 4 in k
        assert!(d[0] > 1e-3 && d[0] < 1e-1);
        assert!(d[2] > 1e-6);
    }

    #[test]
    fn full_rank_operator_is_exact_at_every_k() {
        for (r, n, x) in [(2usize, 2usize, vec![1.0, 0.4]), (3, 3, vec![1.0, 0.5, 0.2])] {
            let report = toda_degeneration_check(r, n, 0.5, &[0, 4, 8], &x, 1e-9).unwrap();
            assert!(report.outcome.pass);
            assert!(report.deviations.iter().all(|d| *d < 1e-12));
        }
    }

    #[test]
    fn k_zero_is_a_far_anchor() {
        let report =
            toda_degeneration_check(1, 2, 0.5, &[0, 4, 8], &[1.0, 1.0 / 3.0], 1e-2).unwrap();
        assert!(report.deviations[0] > 0.1);
        assert!(report.outcome.pass, "{:?}", report.outcome.residual);
    }

    #[test]
    fn rank_three_middle_operator_converges() {
        let x = [1.0, 1.0 / 3.0, 1.0 / 7.0];
        for r in [1usize, 2] {
            let report = toda_degeneration_check(r, 3, 0.5, &[4, 8, 12], &x, 1e-2).unwrap();
            assert!(report.outcome.pass, "r={r}: {:?}", report.outcome.residual);
        }
    }

    #[test]
    fn degeneration_input_validation() {
        let x = [1.0, 0.5];
        assert!(matches!(
            toda_degeneration_check(1, 2, 0.5, &[4], &[1.0, 1.0], 1e-3),
            Err(Error::CoincidentCoordinates(1, 2))
        ));
        assert!(matches!(
            toda_degeneration_check(0, 2, 0.5, &[4], &x, 1e-3),
            Err(Error::RankOutOfRange(_))
        ));
        assert!(matches!(
            toda_degeneration_check(3, 2, 0.5, &[4], &x, 1e-3),
            Err(Error::RankOutOfRange(_))
        ));
        assert!(matches!(
            toda_degeneration_check(1, 2, 1.5, &[4], &x, 1e-3),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            toda_degeneration_check(1, 2, 0.5, &[4, 4], &x, 1e-3),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            toda_degeneration_check(1, 2, 0.5, &[4], &[1.0], 1e-3),
            Err(Error::VariableMismatch(1, 2))
        ));
    }

    #[test]
    fn kernel_identities_hold_at_modest_depth() {
        let report = kernel_limit_check(40, 0.5, &[3], 1.0 / 3.0, 1e-10).unwrap();
        assert!(report.outcome.pass, "{:?}", report.outcome.residual);
    }

    #[test]
    fn kernel_truncation_floor_at_removable_sample() {
        // w = q^2 puts a matched zero pair inside the third factor type, and
        // that type's tail also dominates: w q^{N-2k} (1 - q^k)/(1 - q) is
        // about 4.5e-10 at depth 40, so a 1e-10 tolerance needs more depth.
        let shallow = kernel_limit_check(40, 0.5, &[5], 0.25, 1e-10).unwrap();
        assert!(!shallow.outcome.pass);
        assert!(shallow.full_deviations[0] > 1e-10 && shallow.full_deviations[0] < 1e-9);
        let deep = kernel_limit_check(48, 0.5, &[5], 0.25, 1e-10).unwrap();
        assert!(deep.outcome.pass, "{:?}", deep.outcome.residual);
        assert!(deep.full_deviations[0] < 1e-11);
    }

    #[test]
    fn kernel_zero_sample_is_exact() {
        let report = kernel_limit_check(20, 0.5, &[1, 2, 5], 0.0, 1e-14).unwrap();
        assert!(report.outcome.pass);
        assert!(report.full_deviations.iter().all(|d| *d == 0.0));
    }

    #[test]
    fn kernel_validation() {
        assert!(matches!(
            kernel_limit_check(1, 0.5, &[3], 0.1, 1e-10),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            kernel_limit_check(40, 1.0, &[3], 0.1, 1e-10),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            kernel_limit_check(40, 0.5, &[0], 0.1, 1e-10),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            kernel_limit_check(40, 0.5, &[5, 3], 0.1, 1e-10),
            Err(Error::Parse(_))
        ));
    }
}

