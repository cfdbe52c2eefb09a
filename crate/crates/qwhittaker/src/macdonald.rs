//! Small-rank Macdonald polynomials over Q(q, t).
//!
//! The polynomials are built the classical way: Gram-Schmidt of the monomial
//! symmetric basis under the (q, t) power-sum inner product, processed in a
//! dominance-compatible order and subtracting only dominance-lower terms.
//! The computation runs at the level of symmetric functions: all partitions
//! of the degree participate, in `degree`-many formal variables where the
//! monomial-to-power-sum change of basis is faithful, and only afterwards is
//! the result projected to n variables by dropping monomial symmetric terms
//! with too many parts. Projecting first would silently change the inner
//! product whenever the degree exceeds n.
//!
//! The first-kind Macdonald-Ruijsenaars operators
//!   H_r = sum_{|I|=r} t^{r(r-1)/2} prod_{i in I, j not in I}
//!         (t x_i - x_j)/(x_i - x_j) prod_{i in I} T_i,    T_i: x_i -> q x_i,
//! are applied over a common denominator prod_{a<b}(x_a - x_b) and divided
//! back out exactly, so the result is certified polynomial.
//!
//! Eigenvalues are measured as the proportionality scalar of H_r P and then
//! compared with e_r of the multiset {q^{Lambda_i} t^{i-1}} built from the
//! ascending partition. The generating-series identity
//!   xi^n + sum_r c^r xi^{n-r} = prod_i (xi + q^{Lambda_i} t^{i-1})
//! re-checks the same multiset against all measured eigenvalues at once.

use crate::laurent::LaurentPolynomial;
use crate::polyqt::{PolynomialQT, RationalFunctionQT};
use crate::rational::{rat, Rational};
use crate::ratfun::RationalFunctionQ;
use crate::{CheckOutcome, Error, Result};
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// Symmetric Laurent polynomial in x_1..x_n over Q(q, t).
pub type SymmetricPolynomial = LaurentPolynomial<RationalFunctionQT>;

/// Homogeneous symmetric function in the monomial basis: partition -> coeff.
type MExpansion = BTreeMap<Vec<i64>, RationalFunctionQT>;

fn qt_monomial(qe: usize, te: usize) -> RationalFunctionQT {
    RationalFunctionQT::from_poly(PolynomialQT::monomial(Rational::one(), qe, te))
}

/// Validate an ascending partition and return its nonzero parts descending.
fn to_parts(lambda: &[i64]) -> Result<Vec<i64>> {
    for w in lambda.windows(2) {
        if w[0] > w[1] {
            return Err(Error::OutsideDominantCone(lambda.to_vec()));
        }
    }
    if lambda.first().is_some_and(|&x| x < 0) {
        return Err(Error::OutsideDominantCone(lambda.to_vec()));
    }
    Ok(lambda.iter().rev().cloned().filter(|&x| x > 0).collect())
}

/// Partitions of exactly d with positive descending parts, lex descending:
/// [d], [d-1,1], ..., [1,...,1]. Lex order refines dominance for the degrees
/// used here.
fn partitions_of(d: i64) -> Vec<Vec<i64>> {
    fn rec(left: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=max.min(left)).rev() {
            cur.push(v);
            rec(left - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Dominance order on partitions of equal size.
fn dominates(a: &[i64], b: &[i64]) -> bool {
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0i64, 0i64);
    for i in 0..len {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

fn next_perm(a: &mut [i64]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All distinct arrangements of a multiset, ascending lex.
fn distinct_perms(values: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = values.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_perm(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn monomial_sym_parts(parts: &[i64], n: usize) -> SymmetricPolynomial {
    if parts.len() > n {
        return SymmetricPolynomial::zero(n);
    }
    let mut padded = parts.to_vec();
    padded.resize(n, 0);
    let mut acc = SymmetricPolynomial::zero(n);
    for perm in distinct_perms(&padded) {
        acc = acc
            .checked_add(&SymmetricPolynomial::monomial(
                n,
                perm,
                RationalFunctionQT::one(),
            ))
            .expect("same variable count");
    }
    acc
}

/// Monomial symmetric polynomial m_Lambda in n variables: the sum over the
/// distinct permutations of the exponent tuple.
pub fn monomial_sym(lambda: &[i64], n: usize) -> Result<SymmetricPolynomial> {
    let parts = to_parts(lambda)?;
    if parts.len() > n {
        return Err(Error::RankOutOfRange(format!(
            "partition with {} parts in {n} variables",
            parts.len()
        )));
    }
    Ok(monomial_sym_parts(&parts, n))
}

/// Power sum pi_k = x_1^k + ... + x_n^k.
fn power_sum(k: i64, n: usize) -> SymmetricPolynomial {
    let mut acc = SymmetricPolynomial::zero(n);
    for i in 0..n {
        let mut expo = vec![0i64; n];
        expo[i] = k;
        acc = acc
            .checked_add(&SymmetricPolynomial::monomial(
                n,
                expo,
                RationalFunctionQT::one(),
            ))
            .expect("same variable count");
    }
    acc
}

/// Product of power sums pi_Lambda = pi_{Lambda_1} pi_{Lambda_2} ... over the
/// nonzero parts.
pub fn power_sum_product(lambda: &[i64], n: usize) -> Result<SymmetricPolynomial> {
    let parts = to_parts(lambda)?;
    let mut acc = SymmetricPolynomial::one(n);
    for &p in &parts {
        acc = acc.checked_mul(&power_sum(p, n))?;
    }
    Ok(acc)
}

/// z_Lambda(q, t) = prod_v v^{m_v} m_v! * prod_k (1 - q^{Lambda_k})/(1 - t^{Lambda_k}).
fn z_lambda(parts: &[i64]) -> RationalFunctionQT {
    let mut mult: BTreeMap<i64, i64> = BTreeMap::new();
    for &p in parts {
        *mult.entry(p).or_insert(0) += 1;
    }
    let mut comb = Rational::one();
    for (&v, &m) in &mult {
        for j in 1..=m {
            comb *= rat(v) * rat(j);
        }
    }
    let mut acc = RationalFunctionQT::from_rational(comb);
    for &p in parts {
        let f = RationalFunctionQT::new(
            PolynomialQT::one_minus_qt(p as usize, 0),
            PolynomialQT::one_minus_qt(0, p as usize),
        )
        .expect("nonzero denominator");
        acc = acc * f;
    }
    acc
}

/// Per-degree change of basis between monomial and power-sum symmetric
/// functions, computed once in degree-many variables (faithful there).
struct DegreeBasis {
    parts: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Inverse of the transposed pi-to-m matrix: c = minv_t . f maps m-basis
    /// coordinates f to pi-basis coordinates c. Entries are rational numbers.
    minv_t: Vec<Vec<Rational>>,
}

static BASIS_CACHE: Mutex<Option<HashMap<i64, std::sync::Arc<DegreeBasis>>>> = Mutex::new(None);

fn degree_basis(d: i64) -> std::sync::Arc<DegreeBasis> {
    let mut guard = BASIS_CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(b) = cache.get(&d) {
        return b.clone();
    }
    let parts = partitions_of(d);
    let count = parts.len();
    let nv = d as usize;
    // Expand each pi_Lambda in nv variables with rational coefficients and
    // read off the m-coordinates at descending representative exponents.
    let mut m = vec![vec![Rational::zero(); count]; count];
    for (li, lam) in parts.iter().enumerate() {
        let mut expanded: LaurentPolynomial<Rational> = LaurentPolynomial::one(nv);
        for &p in lam {
            let mut ps = LaurentPolynomial::zero(nv);
            for i in 0..nv {
                let mut expo = vec![0i64; nv];
                expo[i] = p;
                ps = ps
                    .checked_add(&LaurentPolynomial::monomial(nv, expo, Rational::one()))
                    .unwrap();
            }
            expanded = expanded.checked_mul(&ps).unwrap();
        }
        for (mi, mu) in parts.iter().enumerate() {
            let mut repr = mu.clone();
            repr.resize(nv, 0);
            m[li][mi] = expanded.coefficient_of(&repr);
        }
    }
    // Invert the transpose by Gauss-Jordan, exactly.
    let mut a = vec![vec![Rational::zero(); count]; count];
    for i in 0..count {
        for j in 0..count {
            a[i][j] = m[j][i].clone();
        }
    }
    let mut inv = vec![vec![Rational::zero(); count]; count];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    for col in 0..count {
        let pivot = (col..count)
            .find(|&r| !a[r][col].is_zero())
            .expect("basis matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].clone();
        for j in 0..count {
            a[col][j] /= scale.clone();
            inv[col][j] /= scale.clone();
        }
        for r in 0..count {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..count {
                let av = a[col][j].clone() * factor.clone();
                a[r][j] -= av;
                let iv = inv[col][j].clone() * factor.clone();
                inv[r][j] -= iv;
            }
        }
    }
    let index = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let basis = std::sync::Arc::new(DegreeBasis {
        parts,
        index,
        minv_t: inv,
    });
    cache.insert(d, basis.clone());
    basis
}

/// m-coordinates -> pi-coordinates at degree d.
fn pi_coords(f: &MExpansion, basis: &DegreeBasis) -> Vec<RationalFunctionQT> {
    let count = basis.parts.len();
    let mut fv = vec![RationalFunctionQT::zero(); count];
    for (parts, c) in f {
        let i = basis.index[parts];
        fv[i] = c.clone();
    }
    let mut out = vec![RationalFunctionQT::zero(); count];
    for (i, row) in basis.minv_t.iter().enumerate() {
        let mut acc = RationalFunctionQT::zero();
        for (j, entry) in row.iter().enumerate() {
            if entry.is_zero() || fv[j].is_zero() {
                continue;
            }
            acc = acc + RationalFunctionQT::from_rational(entry.clone()) * fv[j].clone();
        }
        out[i] = acc;
    }
    out
}

/// Function-level inner product of two degree-d m-expansions.
fn ip_fn(f: &MExpansion, g: &MExpansion, d: i64) -> RationalFunctionQT {
    if d == 0 {
        let fc = f.get(&vec![]).cloned().unwrap_or_else(RationalFunctionQT::zero);
        let gc = g.get(&vec![]).cloned().unwrap_or_else(RationalFunctionQT::zero);
        return fc * gc;
    }
    let basis = degree_basis(d);
    let fc = pi_coords(f, &basis);
    let gc = pi_coords(g, &basis);
    let mut acc = RationalFunctionQT::zero();
    for i in 0..basis.parts.len() {
        if fc[i].is_zero() || gc[i].is_zero() {
            continue;
        }
        acc = acc + fc[i].clone() * gc[i].clone() * z_lambda(&basis.parts[i]);
    }
    acc
}

const FUNCTION_DEGREE_CAP: i64 = 5;

/// Function-level Macdonald polynomials of degree d, one per partition of d,
/// keyed by descending parts. Memoized.
fn macdonald_fn_level(d: i64) -> Result<std::sync::Arc<Vec<(Vec<i64>, MExpansion)>>> {
    static CACHE: Mutex<Option<HashMap<i64, std::sync::Arc<Vec<(Vec<i64>, MExpansion)>>>>> =
        Mutex::new(None);
    if d > FUNCTION_DEGREE_CAP {
        return Err(Error::DegreeBound(format!(
            "Macdonald degree {d} exceeds the supported cap {FUNCTION_DEGREE_CAP}"
        )));
    }
    {
        let mut guard = CACHE.lock().unwrap();
        if let Some(v) = guard.get_or_insert_with(HashMap::new).get(&d) {
            return Ok(v.clone());
        }
    }
    // Dominance-ascending pass so every subtracted P is already final.
    let mut order = partitions_of(d);
    order.reverse();
    let mut computed: Vec<(Vec<i64>, MExpansion)> = Vec::new();
    for lam in order {
        let mut p: MExpansion = BTreeMap::new();
        p.insert(lam.clone(), RationalFunctionQT::one());
        let m_lam = p.clone();
        for (mu, pmu) in &computed {
            if mu != &lam && dominates(&lam, mu) {
                let num = ip_fn(&m_lam, pmu, d);
                if num.is_zero() {
                    continue;
                }
                let den = ip_fn(pmu, pmu, d);
                let scale = num / den;
                for (key, c) in pmu {
                    let delta = scale.clone() * c.clone();
                    let entry = p.entry(key.clone()).or_insert_with(RationalFunctionQT::zero);
                    *entry = entry.clone() - delta;
                    if entry.is_zero() {
                        p.remove(key);
                    }
                }
            }
        }
        computed.push((lam, p));
    }
    computed.reverse();
    let arc = std::sync::Arc::new(computed);
    let mut guard = CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert(d, arc.clone());
    Ok(arc)
}

/// Macdonald polynomial P_Lambda in n variables: monic on m_Lambda,
/// orthogonal to everything dominance-lower.
pub fn macdonald_poly(lambda: &[i64], n: usize) -> Result<SymmetricPolynomial> {
    let parts = to_parts(lambda)?;
    if parts.len() > n {
        return Err(Error::RankOutOfRange(format!(
            "partition with {} parts in {n} variables",
            parts.len()
        )));
    }
    let d: i64 = parts.iter().sum();
    if d == 0 {
        return Ok(SymmetricPolynomial::one(n));
    }
    let table = macdonald_fn_level(d)?;
    let entry = table
        .iter()
        .find(|(key, _)| key == &parts)
        .expect("partition present at its degree");
    let mut acc = SymmetricPolynomial::zero(n);
    for (mu, c) in &entry.1 {
        let m = monomial_sym_parts(mu, n);
        if m.is_zero() {
            continue;
        }
        acc = acc.checked_add(&m.scalar_mul(c))?;
    }
    Ok(acc)
}

fn homogeneous_degree(f: &SymmetricPolynomial) -> Result<Option<i64>> {
    let mut degree: Option<i64> = None;
    for (expo, _) in f.terms() {
        let d: i64 = expo.iter().sum();
        match degree {
            None => degree = Some(d),
            Some(existing) if existing != d => {
                return Err(Error::DegreeBound(
                    "inner product needs homogeneous arguments".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(degree)
}

fn to_m_expansion(f: &SymmetricPolynomial, d: i64) -> MExpansion {
    let n = f.nvars();
    let mut out = MExpansion::new();
    if d == 0 {
        let c = f.coefficient_of(&vec![0; n]);
        if !c.is_zero() {
            out.insert(vec![], c);
        }
        return out;
    }
    for parts in partitions_of(d) {
        if parts.len() > n {
            continue;
        }
        let mut repr = parts.clone();
        repr.resize(n, 0);
        let c = f.coefficient_of(&repr);
        if !c.is_zero() {
            out.insert(parts, c);
        }
    }
    out
}

/// The (q, t) inner product of two symmetric polynomials in n variables via
/// power-sum expansion. Demands homogeneity; arguments of different degrees
/// are orthogonal. The expansion is faithful only while the degree does not
/// exceed the variable count, and the degree bound is enforced on top.
pub fn inner_product_qt(
    f: &SymmetricPolynomial,
    g: &SymmetricPolynomial,
    n: usize,
    degree_bound: i64,
) -> Result<RationalFunctionQT> {
    if f.nvars() != n {
        return Err(Error::VariableMismatch(f.nvars(), n));
    }
    if g.nvars() != n {
        return Err(Error::VariableMismatch(g.nvars(), n));
    }
    if !f.is_symmetric() || !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let (df, dg) = (homogeneous_degree(f)?, homogeneous_degree(g)?);
    let (df, dg) = match (df, dg) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(RationalFunctionQT::zero()),
    };
    if df != dg {
        return Ok(RationalFunctionQT::zero());
    }
    if df > degree_bound {
        return Err(Error::DegreeBound(format!(
            "degree {df} exceeds the configured bound {degree_bound}"
        )));
    }
    if df > n as i64 {
        return Err(Error::DegreeBound(format!(
            "degree {df} in {n} variables: power-sum expansion is not faithful"
        )));
    }
    Ok(ip_fn(&to_m_expansion(f, df), &to_m_expansion(g, df), df))
}

/// 0-based r-subsets of {0..n-1}, ascending within and lexicographic across.
fn index_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, 0, &mut Vec::new(), &mut out);
    out
}

/// Multiply every term by q^{sum of exponents over I}: the shift prod T_i.
fn apply_shifts(f: &SymmetricPolynomial, idx: &[usize]) -> SymmetricPolynomial {
    let n = f.nvars();
    let mut acc = SymmetricPolynomial::zero(n);
    for (expo, c) in f.terms() {
        let e: i64 = idx.iter().map(|&i| expo[i]).sum();
        debug_assert!(e >= 0, "Macdonald operators act on polynomials");
        let shifted = c.clone() * qt_monomial(e as usize, 0);
        acc = acc
            .checked_add(&SymmetricPolynomial::monomial(n, expo.to_vec(), shifted))
            .expect("same variable count");
    }
    acc
}

/// x_a - x_b as a symmetric-polynomial building block (not itself symmetric).
fn x_diff(n: usize, a: usize, b: usize, t_on_a: bool) -> SymmetricPolynomial {
    let mut ea = vec![0i64; n];
    ea[a] = 1;
    let mut eb = vec![0i64; n];
    eb[b] = 1;
    let ca = if t_on_a {
        qt_monomial(0, 1)
    } else {
        RationalFunctionQT::one()
    };
    SymmetricPolynomial::monomial(n, ea, ca)
        .checked_sub(&SymmetricPolynomial::monomial(n, eb, RationalFunctionQT::one()))
        .expect("same variable count")
}

/// Exact division by (x_a - x_b), synthetic in x_a. Panics on a nonzero
/// remainder: the Macdonald numerators are constructed to cancel.
fn div_exact_linear(f: &SymmetricPolynomial, a: usize, b: usize) -> SymmetricPolynomial {
    let n = f.nvars();
    if f.is_zero() {
        return f.clone();
    }
    let mut levels: BTreeMap<i64, SymmetricPolynomial> = BTreeMap::new();
    for (expo, c) in f.terms() {
        let e = expo[a];
        assert!(e >= 0, "expected polynomial exponents");
        let mut rest = expo.to_vec();
        rest[a] = 0;
        let entry = levels
            .entry(e)
            .or_insert_with(|| SymmetricPolynomial::zero(n));
        *entry = entry
            .checked_add(&SymmetricPolynomial::monomial(n, rest, c.clone()))
            .expect("same variable count");
    }
    let top = *levels.keys().next_back().unwrap();
    let mut xb = vec![0i64; n];
    xb[b] = 1;
    let mut carry = SymmetricPolynomial::zero(n);
    let mut quotient = SymmetricPolynomial::zero(n);
    for e in (1..=top).rev() {
        let fe = levels
            .remove(&e)
            .unwrap_or_else(|| SymmetricPolynomial::zero(n));
        let ge = fe
            .checked_add(&carry.mul_monomial(&xb, &RationalFunctionQT::one()))
            .expect("same variable count");
        let mut xa_pow = vec![0i64; n];
        xa_pow[a] = e - 1;
        quotient = quotient
            .checked_add(&ge.mul_monomial(&xa_pow, &RationalFunctionQT::one()))
            .expect("same variable count");
        carry = ge;
    }
    let f0 = levels
        .remove(&0)
        .unwrap_or_else(|| SymmetricPolynomial::zero(n));
    let rem = f0
        .checked_add(&carry.mul_monomial(&xb, &RationalFunctionQT::one()))
        .expect("same variable count");
    assert!(
        rem.is_zero(),
        "Macdonald operator denominator failed to cancel"
    );
    quotient
}

/// Apply the r-th Macdonald-Ruijsenaars operator to a symmetric polynomial.
/// The result is exact and certified polynomial.
pub fn macdonald_operator_apply(
    r: usize,
    n: usize,
    f: &SymmetricPolynomial,
) -> Result<SymmetricPolynomial> {
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("H_{r} in {n} variables")));
    }
    if f.nvars() != n {
        return Err(Error::VariableMismatch(f.nvars(), n));
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let tfac = qt_monomial(0, r * (r - 1) / 2);
    let mut num_acc = SymmetricPolynomial::zero(n);
    for idx in index_subsets(n, r) {
        let in_set = |m: usize| idx.contains(&m);
        let mut term = apply_shifts(f, &idx);
        let mut negative = false;
        for a in 0..n {
            for b in (a + 1)..n {
                match (in_set(a), in_set(b)) {
                    (true, false) => {
                        // split pair, member first: (t x_a - x_b)/(x_a - x_b)
                        term = term.checked_mul(&x_diff(n, a, b, true))?;
                    }
                    (false, true) => {
                        // split pair, member second: (t x_b - x_a)/(x_b - x_a)
                        // and (x_b - x_a) = -(x_a - x_b) flips the sign.
                        term = term.checked_mul(&x_diff(n, b, a, true))?;
                        negative = !negative;
                    }
                    _ => {
                        term = term.checked_mul(&x_diff(n, a, b, false))?;
                    }
                }
            }
        }
        let signed = if negative {
            term.scalar_mul(&(-RationalFunctionQT::one()))
        } else {
            term
        };
        num_acc = num_acc.checked_add(&signed)?;
    }
    let mut acc = num_acc.scalar_mul(&tfac);
    for a in 0..n {
        for b in (a + 1)..n {
            acc = div_exact_linear(&acc, a, b);
        }
    }
    Ok(acc)
}

/// Left-pad an ascending partition with zeros to length n.
fn pad_ascending(lambda: &[i64], n: usize) -> Result<Vec<i64>> {
    if lambda.len() > n {
        return Err(Error::RankOutOfRange(format!(
            "partition of length {} in {n} variables",
            lambda.len()
        )));
    }
    let mut out = vec![0i64; n - lambda.len()];
    out.extend_from_slice(lambda);
    Ok(out)
}

/// e_r of the multiset {q^{Lambda_i} t^{i-1}} for the ascending partition,
/// zeros included. This pairing reproduces every measured eigenvalue.
pub fn eigenvalue_formula(lambda: &[i64], r: usize, n: usize) -> Result<RationalFunctionQT> {
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("e_{r} of {n} spectral values")));
    }
    let padded = pad_ascending(lambda, n)?;
    to_parts(&padded)?;
    let spectrum: Vec<RationalFunctionQT> = padded
        .iter()
        .enumerate()
        .map(|(i, &l)| qt_monomial(l as usize, i))
        .collect();
    let mut acc = RationalFunctionQT::zero();
    for idx in index_subsets(n, r) {
        let mut prod = RationalFunctionQT::one();
        for &i in &idx {
            prod = prod * spectrum[i].clone();
        }
        acc = acc + prod;
    }
    Ok(acc)
}

/// Measured eigenvalue of H_r on P_Lambda, with the comparison outcome.
pub struct MacdonaldEigen {
    pub measured: RationalFunctionQT,
    pub expected: RationalFunctionQT,
    pub outcome: CheckOutcome,
}

fn measure_eigenvalue(
    p: &SymmetricPolynomial,
    hp: &SymmetricPolynomial,
) -> std::result::Result<RationalFunctionQT, String> {
    let (expo, base) = p.terms().next().expect("nonzero polynomial");
    let c = hp.coefficient_of(expo) / base.clone();
    let residual = hp
        .checked_sub(&p.scalar_mul(&c))
        .expect("same variable count");
    if residual.is_zero() {
        Ok(c)
    } else {
        Err(format!("not an eigenfunction, residual {residual}"))
    }
}

/// H_r P_Lambda = c P_Lambda: measure c, compare with the spectrum formula.
pub fn macdonald_eigencheck(lambda: &[i64], r: usize, n: usize) -> Result<MacdonaldEigen> {
    let p = macdonald_poly(&pad_ascending(lambda, n)?, n)?;
    let hp = macdonald_operator_apply(r, n, &p)?;
    let expected = eigenvalue_formula(lambda, r, n)?;
    match measure_eigenvalue(&p, &hp) {
        Ok(measured) => {
            let outcome = if measured == expected {
                CheckOutcome::passed()
            } else {
                CheckOutcome::failed(format!(
                    "measured {measured} differs from expected {expected}"
                ))
            };
            Ok(MacdonaldEigen {
                measured,
                expected,
                outcome,
            })
        }
        Err(msg) => Ok(MacdonaldEigen {
            measured: RationalFunctionQT::zero(),
            expected,
            outcome: CheckOutcome::failed(msg),
        }),
    }
}

/// The generating-series factorization: measured eigenvalues of H_1..H_n on
/// one P_Lambda are the elementary symmetric functions of the n spectral
/// values q^{Lambda_i} t^{i-1}. Checks the whole xi-polynomial at once.
pub fn generating_series_check(lambda: &[i64], n: usize) -> Result<CheckOutcome> {
    let p = macdonald_poly(&pad_ascending(lambda, n)?, n)?;
    let mut measured = Vec::with_capacity(n);
    for r in 1..=n {
        let hp = macdonald_operator_apply(r, n, &p)?;
        match measure_eigenvalue(&p, &hp) {
            Ok(c) => measured.push(c),
            Err(msg) => return Ok(CheckOutcome::failed(format!("H_{r}: {msg}"))),
        }
    }
    // prod_i (xi + s_i) coefficient of xi^{n-r} is e_r(s).
    let padded = pad_ascending(lambda, n)?;
    let mut es = vec![RationalFunctionQT::one()];
    for (i, &l) in padded.iter().enumerate() {
        let s = qt_monomial(l as usize, i);
        let mut next = Vec::with_capacity(es.len() + 1);
        next.push(RationalFunctionQT::one());
        for j in 1..=es.len() {
            let lower = es[j - 1].clone() * s.clone();
            let same = if j < es.len() {
                es[j].clone()
            } else {
                RationalFunctionQT::zero()
            };
            next.push(same + lower);
        }
        es = next;
    }
    for r in 1..=n {
        if es[r] != measured[r - 1] {
            return Ok(CheckOutcome::failed(format!(
                "xi^{} coefficient: factorization gives {}, measured {}",
                n - r,
                es[r],
                measured[r - 1]
            )));
        }
    }
    Ok(CheckOutcome::passed())
}

/// At t = q every P_Lambda collapses to the Schur polynomial; the pattern
/// generating function is the independent oracle.
pub fn t_equals_q_schur_check(lambda: &[i64], n: usize) -> Result<CheckOutcome> {
    let padded = pad_ascending(lambda, n)?;
    let p = macdonald_poly(&padded, n)?;
    let specialized: LaurentPolynomial<RationalFunctionQ> =
        p.try_map_coeffs(|c| c.specialize_t_to_q())?;
    let schur = crate::characters::char_gz(&padded)
        .map_coeffs(|c| RationalFunctionQ::from_rational(c.clone()));
    let diff = specialized.checked_sub(&schur)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Pairwise orthogonality of the degree-d Macdonald polynomials whose
/// partitions fit n variables, at the symmetric-function level.
pub fn orthogonality_check(d: i64, n: usize) -> Result<CheckOutcome> {
    let table = macdonald_fn_level(d)?;
    let fitting: Vec<&(Vec<i64>, MExpansion)> =
        table.iter().filter(|(parts, _)| parts.len() <= n).collect();
    for (i, (pa, fa)) in fitting.iter().enumerate() {
        let norm = ip_fn(fa, fa, d);
        if norm.is_zero() {
            return Ok(CheckOutcome::failed(format!("degenerate norm at {pa:?}")));
        }
        for (pb, fb) in fitting.iter().skip(i + 1) {
            let cross = ip_fn(fa, fb, d);
            if !cross.is_zero() {
                return Ok(CheckOutcome::failed(format!(
                    "nonzero pairing of {pa:?} and {pb:?}: {cross}"
                )));
            }
        }
    }
    Ok(CheckOutcome::passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rfqt(num: PolynomialQT, den: PolynomialQT) -> RationalFunctionQT {
        RationalFunctionQT::new(num, den).unwrap()
    }

    fn one_plus_qt(qe: usize, te: usize) -> PolynomialQT {
        // 1 + q^qe t^te
        &PolynomialQT::one() + &PolynomialQT::monomial(Rational::one(), qe, te)
    }

    #[test]
    fn monomial_and_power_bases() {
        let m01 = monomial_sym(&[0, 1], 2).unwrap();
        assert_eq!(m01.num_terms(), 2);
        assert!(m01.coefficient_of(&[1, 0]).is_one());
        assert!(m01.coefficient_of(&[0, 1]).is_one());
        // Repeated parts must not double-count.
        let m11 = monomial_sym(&[1, 1], 2).unwrap();
        assert_eq!(m11.num_terms(), 1);
        assert!(m11.coefficient_of(&[1, 1]).is_one());
        let p2 = power_sum_product(&[0, 2], 2).unwrap();
        assert_eq!(p2.num_terms(), 2);
        assert!(p2.coefficient_of(&[2, 0]).is_one());
        // m_{(1,2)} in three variables: six distinct monomials.
        let m12 = monomial_sym(&[0, 1, 2], 3).unwrap();
        assert_eq!(m12.num_terms(), 6);
    }

    #[test]
    fn inner_product_examples() {
        let n = 2;
        let pi1 = power_sum_product(&[0, 1], n).unwrap();
        let got = inner_product_qt(&pi1, &pi1, n, 4).unwrap();
        let expected = rfqt(
            PolynomialQT::one_minus_qt(1, 0),
            PolynomialQT::one_minus_qt(0, 1),
        );
        assert_eq!(got, expected);
        // Distinct power-sum partitions are orthogonal.
        let pi2 = power_sum_product(&[0, 2], n).unwrap();
        let pi11 = power_sum_product(&[1, 1], n).unwrap();
        assert!(inner_product_qt(&pi2, &pi11, n, 4).unwrap().is_zero());
        // <pi_{11}, pi_{11}> = 2 ((1-q)/(1-t))^2.
        let got = inner_product_qt(&pi11, &pi11, n, 4).unwrap();
        let ratio = rfqt(
            PolynomialQT::one_minus_qt(1, 0),
            PolynomialQT::one_minus_qt(0, 1),
        );
        let expected = RationalFunctionQT::from_rational(rat(2)) * ratio.clone() * ratio;
        assert_eq!(got, expected);
    }

    #[test]
    fn inner_product_guards() {
        let n = 2;
        let pi1 = power_sum_product(&[0, 1], n).unwrap();
        let pi2 = power_sum_product(&[0, 2], n).unwrap();
        // Degree above the variable count is refused, not silently wrong.
        let pi3 = power_sum_product(&[0, 3], n).unwrap();
        assert!(matches!(
            inner_product_qt(&pi3, &pi3, n, 4),
            Err(Error::DegreeBound(_))
        ));
        // Mixed degrees are orthogonal by homogeneity.
        assert!(inner_product_qt(&pi1, &pi2, n, 4).unwrap().is_zero());
        // Non-homogeneous input is an error.
        let mixed = pi1.checked_add(&pi2).unwrap();
        assert!(matches!(
            inner_product_qt(&mixed, &mixed, n, 4),
            Err(Error::DegreeBound(_))
        ));
        // Asymmetric input is rejected.
        let skew = SymmetricPolynomial::monomial(n, vec![1, 0], RationalFunctionQT::one());
        assert!(matches!(
            inner_product_qt(&skew, &skew, n, 4),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn macdonald_small_polynomials() {
        // Nothing below a single-column or single-box partition.
        let p01 = macdonald_poly(&[0, 1], 2).unwrap();
        assert_eq!(p01, monomial_sym(&[0, 1], 2).unwrap());
        let p11 = macdonald_poly(&[1, 1], 2).unwrap();
        assert_eq!(p11, monomial_sym(&[1, 1], 2).unwrap());
        // P_{(0,2)} = m_{(0,2)} + (1+q)(1-t)/(1-qt) m_{(1,1)}. The transposed
        // coefficient (1-q)(1+t)/(1-qt) fails the eigenfunction property, so
        // the value here is pinned by the operator, not by convention.
        let p02 = macdonald_poly(&[0, 2], 2).unwrap();
        let u = p02.coefficient_of(&[1, 1]);
        let expected = rfqt(
            &one_plus_qt(1, 0) * &PolynomialQT::one_minus_qt(0, 1),
            PolynomialQT::one_minus_qt(1, 1),
        );
        assert_eq!(u, expected);
        assert!(p02.coefficient_of(&[2, 0]).is_one());
    }

    #[test]
    fn operator_examples() {
        let n = 2;
        // H_1 (x1 + x2) = (1 + qt)(x1 + x2).
        let f = monomial_sym(&[0, 1], n).unwrap();
        let hf = macdonald_operator_apply(1, n, &f).unwrap();
        let scale = RationalFunctionQT::from_poly(one_plus_qt(1, 1));
        assert_eq!(hf, f.scalar_mul(&scale));
        // H_2 = t T_1 T_2 so H_2(x1 x2) = t q^2 x1 x2.
        let g = monomial_sym(&[1, 1], n).unwrap();
        let hg = macdonald_operator_apply(2, n, &g).unwrap();
        assert_eq!(hg, g.scalar_mul(&qt_monomial(2, 1)));
        // H_1 (1) = 1 + t by partial-fraction cancellation.
        let one = SymmetricPolynomial::one(n);
        let h1 = macdonald_operator_apply(1, n, &one).unwrap();
        assert_eq!(
            h1,
            one.scalar_mul(&RationalFunctionQT::from_poly(one_plus_qt(0, 1)))
        );
    }

    #[test]
    fn operator_preserves_symmetry_and_degree() {
        let n = 3;
        for lam in [vec![0, 0, 1], vec![0, 1, 1], vec![0, 1, 2], vec![1, 1, 2]] {
            let p = macdonald_poly(&lam, n).unwrap();
            for r in 1..=n {
                let hp = macdonald_operator_apply(r, n, &p).unwrap();
                assert!(hp.is_symmetric(), "H_{r} of {lam:?}");
                assert_eq!(
                    homogeneous_degree(&hp).unwrap(),
                    homogeneous_degree(&p).unwrap(),
                    "H_{r} of {lam:?}"
                );
            }
        }
    }

    #[test]
    fn eigenvalue_examples() {
        // Lambda = (0,1), r = 1: c = 1 + qt.
        let e = macdonald_eigencheck(&[0, 1], 1, 2).unwrap();
        assert!(e.outcome.pass, "{:?}", e.outcome.residual);
        assert_eq!(e.measured, RationalFunctionQT::from_poly(one_plus_qt(1, 1)));
        // Lambda = (0,0), r = 1: c = 1 + t.
        let e = macdonald_eigencheck(&[0, 0], 1, 2).unwrap();
        assert!(e.outcome.pass, "{:?}", e.outcome.residual);
        assert_eq!(e.measured, RationalFunctionQT::from_poly(one_plus_qt(0, 1)));
        // Lambda = (1,1), r = 2: c = t q^2.
        let e = macdonald_eigencheck(&[1, 1], 2, 2).unwrap();
        assert!(e.outcome.pass, "{:?}", e.outcome.residual);
        assert_eq!(e.measured, qt_monomial(2, 1));
    }

    #[test]
    fn eigencheck_degree_window() {
        for n in 2..=3usize {
            for lam in partition_window(4, n) {
                for r in 1..=n {
                    let e = macdonald_eigencheck(&lam, r, n).unwrap();
                    assert!(
                        e.outcome.pass,
                        "Lambda={lam:?} r={r} n={n}: {:?}",
                        e.outcome.residual
                    );
                }
            }
        }
    }

    fn partition_window(max_size: i64, n: usize) -> Vec<Vec<i64>> {
        // Ascending partitions with at most n parts and size <= max_size.
        let mut out = Vec::new();
        for d in 0..=max_size {
            for parts in partitions_of(d) {
                if parts.len() <= n {
                    let mut asc: Vec<i64> = parts.iter().rev().cloned().collect();
                    while asc.len() < n {
                        asc.insert(0, 0);
                    }
                    out.push(asc);
                }
            }
        }
        out
    }

    #[test]
    fn generating_series_examples() {
        for n in 2..=3usize {
            for lam in partition_window(3, n) {
                let out = generating_series_check(&lam, n).unwrap();
                assert!(out.pass, "Lambda={lam:?} n={n}: {:?}", out.residual);
            }
        }
    }

    #[test]
    fn t_equals_q_collapses_to_schur() {
        for n in 2..=3usize {
            for lam in partition_window(4, n) {
                let out = t_equals_q_schur_check(&lam, n).unwrap();
                assert!(out.pass, "Lambda={lam:?} n={n}: {:?}", out.residual);
            }
        }
    }

    #[test]
    fn orthogonality_small_degrees() {
        for d in 1..=4i64 {
            for n in 2..=3usize {
                let out = orthogonality_check(d, n).unwrap();
                assert!(out.pass, "d={d} n={n}: {:?}", out.residual);
            }
        }
    }

    #[test]
    fn degree_cap_is_reported() {
        assert!(matches!(
            macdonald_poly(&[0, 0, 6], 3),
            Err(Error::DegreeBound(_))
        ));
    }
}
