//! q-combinatorics: factorials, binomials, Gelfand-Zetlin patterns.
//!
//! Conventions, used verbatim everywhere downstream:
//!
//!   (n)_q!     = (1 - q)(1 - q^2) ... (1 - q^n),  (0)_q! = 1
//!   (n, k)_q   = (n)_q! / ((n - k)_q! (k)_q!),    zero outside 0 <= k <= n
//!   Theta(n)   = 1 if n >= 0 else 0
//!
//! A Gelfand-Zetlin pattern for gl(n) has rows k = 1..n, row k of length k,
//! subject to p_{k+1,i} <= p_{k,i} <= p_{k+1,i+1}. The top row (length n) is
//! the boundary; every row is then automatically weakly increasing. Entries
//! may be negative: patterns live on the whole lattice, not on partitions.

use crate::polyq::PolynomialQ;
use crate::{Error, Result};
use std::sync::Mutex;

/// Theta(n): the indicator of n >= 0.
pub fn theta(n: i64) -> bool {
    n >= 0
}

static FACTORIALS: Mutex<Vec<PolynomialQ>> = Mutex::new(Vec::new());

/// (n)_q!; errors for negative n.
pub fn q_factorial(n: i64) -> Result<PolynomialQ> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    let n = n as usize;
    let mut memo = FACTORIALS.lock().unwrap();
    if memo.is_empty() {
        memo.push(PolynomialQ::one());
    }
    while memo.len() <= n {
        let j = memo.len();
        let next = memo.last().unwrap() * &PolynomialQ::one_minus_q_pow(j);
        memo.push(next);
    }
    Ok(memo[n].clone())
}

/// Gaussian binomial (n, k)_q; zero outside 0 <= k <= n (including n < 0).
pub fn q_binomial(n: i64, k: i64) -> PolynomialQ {
    if n < 0 || k < 0 || k > n {
        return PolynomialQ::zero();
    }
    let num = q_factorial(n).expect("nonnegative");
    let dk = q_factorial(k).expect("nonnegative");
    let dnk = q_factorial(n - k).expect("nonnegative");
    num.div_exact(&(&dk * &dnk))
}

/// True when s interlaces p: len(s) + 1 = len(p) and p_i <= s_i <= p_{i+1}.
pub fn interlaces(s: &[i64], p: &[i64]) -> bool {
    s.len() + 1 == p.len()
        && s.iter()
            .enumerate()
            .all(|(i, &x)| p[i] <= x && x <= p[i + 1])
}

/// All rows of length n-1 interlacing p, in lexicographic order.
/// Empty when p is not weakly increasing.
pub fn enumerate_interlacing(p: &[i64]) -> Vec<Vec<i64>> {
    if !crate::lattice::is_weakly_increasing(p) || p.is_empty() {
        return Vec::new();
    }
    let m = p.len() - 1;
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    fn rec(p: &[i64], i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for x in p[i]..=p[i + 1] {
            cur[i] = x;
            rec(p, i + 1, cur, out);
        }
    }
    if m == 0 {
        // gl(1) boundary: the single empty row below it.
        return vec![Vec::new()];
    }
    rec(p, 0, &mut cur, &mut out);
    out
}

/// A Gelfand-Zetlin pattern. `rows[k]` has length k + 1; `rows.last()` is the
/// boundary row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GZPattern {
    rows: Vec<Vec<i64>>,
}

impl GZPattern {
    /// Validates shape and interlacing.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Parse("empty pattern".into()));
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::Parse(format!(
                    "row {} has length {}, expected {}",
                    k + 1,
                    row.len(),
                    k + 1
                )));
            }
        }
        for k in 0..rows.len() - 1 {
            if !interlaces(&rows[k], &rows[k + 1]) {
                return Err(Error::Parse(format!("rows {} and {} do not interlace", k + 1, k + 2)));
            }
        }
        Ok(GZPattern { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn top(&self) -> &[i64] {
        self.rows.last().unwrap()
    }

    /// s_k: sum of the length-k row; s_0 = 0.
    pub fn row_sum(&self, k: usize) -> i64 {
        if k == 0 {
            0
        } else {
            self.rows[k - 1].iter().sum()
        }
    }

    /// The z-exponent vector (s_1 - s_0, s_2 - s_1, ..., s_n - s_{n-1}).
    pub fn weight(&self) -> Vec<i64> {
        (1..=self.rank())
            .map(|k| self.row_sum(k) - self.row_sum(k - 1))
            .collect()
    }
}

/// All GZ patterns with the given boundary row, top-down lexicographic DFS
/// order, deterministic. Empty when the boundary is not weakly increasing.
pub fn enumerate_gz(top: &[i64]) -> Vec<GZPattern> {
    if top.is_empty() || !crate::lattice::is_weakly_increasing(top) {
        return Vec::new();
    }
    let n = top.len();
    let mut out = Vec::new();
    // rows_rev collects rows from the top (length n) down to length 1.
    let mut rows_rev: Vec<Vec<i64>> = vec![top.to_vec()];
    fn rec(rows_rev: &mut Vec<Vec<i64>>, out: &mut Vec<GZPattern>) {
        let above = rows_rev.last().unwrap().clone();
        if above.len() == 1 {
            let mut rows = rows_rev.clone();
            rows.reverse();
            out.push(GZPattern { rows });
            return;
        }
        let m = above.len() - 1;
        let mut row = vec![0i64; m];
        fn fill(
            above: &[i64],
            i: usize,
            row: &mut Vec<i64>,
            rows_rev: &mut Vec<Vec<i64>>,
            out: &mut Vec<GZPattern>,
        ) {
            if i == row.len() {
                rows_rev.push(row.clone());
                rec(rows_rev, out);
                rows_rev.pop();
                return;
            }
            for x in above[i]..=above[i + 1] {
                row[i] = x;
                fill(above, i + 1, row, rows_rev, out);
            }
        }
        fill(&above, 0, &mut row, rows_rev, out);
    }
    rec(&mut rows_rev, &mut out);
    debug_assert!(out.iter().all(|p| p.rank() == n));
    out
}
