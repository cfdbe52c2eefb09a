//! Degenerations of the Whittaker functions at q = 0 and q = 1.
//!
//! At q = 0 the functions become gl(n) characters. `char_gz` computes the
//! character as the generating function of Gelfand-Zetlin patterns, and a
//! Jacobi-Trudi determinant serves as an independent Schur oracle. On top of
//! the characters sit the classical identities: Pieri (multiplication by an
//! elementary symmetric polynomial), branching to gl(n-1), the truncated
//! Cauchy identity, a constant-term inversion of branching, and the splitting
//! of elementary symmetric polynomials.
//!
//! At q = 1 the functions collapse to products of powers of the principally
//! specialized characters chi_k = chi at z = (1,..,1), i.e. numbers counting
//! pattern slices; `psi_q1` is that closed form, checked against the q -> 1
//! specialization, the pure-shift eigenrelation, two recursions, and a
//! dimension count.

use crate::lattice::is_weakly_increasing;
use crate::laurent::LaurentPolynomial;
use crate::qcomb::{enumerate_gz, enumerate_interlacing};
use crate::rational::{binomial, rat, Rational};
use crate::ratfun::RationalFunctionQ;
use crate::whittaker::{psi_direct, psi_tilde, WhittakerValue};
use crate::{CheckOutcome, Error, Result};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// Characters as Laurent polynomials with rational coefficients.
pub type CharValue = LaurentPolynomial<Rational>;

/// gl(n) character of highest weight P, as the Gelfand-Zetlin generating
/// function sum over patterns of z^weight. Zero when P is not weakly
/// increasing.
pub fn char_gz(p: &[i64]) -> CharValue {
    let n = p.len();
    let mut acc = CharValue::zero(n);
    for pattern in enumerate_gz(p) {
        acc = acc
            .checked_add(&CharValue::monomial(n, pattern.weight(), Rational::one()))
            .expect("weight length");
    }
    acc
}

/// Complete homogeneous symmetric polynomial h_k(z_1..z_n), memoized.
fn h_complete(k: i64, n: usize) -> CharValue {
    static CACHE: Mutex<Option<HashMap<(i64, usize), CharValue>>> = Mutex::new(None);
    if k < 0 {
        return CharValue::zero(n);
    }
    if k == 0 {
        return CharValue::one(n);
    }
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(v) = cache.get(&(k, n)) {
        return v.clone();
    }
    // All monomials of total degree k in n variables.
    let mut acc = CharValue::zero(n);
    let mut expo = vec![0i64; n];
    fn rec(acc: &mut CharValue, expo: &mut Vec<i64>, pos: usize, left: i64, n: usize) {
        if pos == n - 1 {
            expo[pos] = left;
            *acc = acc
                .checked_add(&CharValue::monomial(n, expo.clone(), Rational::one()))
                .unwrap();
            return;
        }
        for e in 0..=left {
            expo[pos] = e;
            rec(acc, expo, pos + 1, left - e, n);
        }
    }
    rec(&mut acc, &mut expo, 0, k, n);
    cache.insert((k, n), acc.clone());
    acc
}

/// Determinant of a square matrix of Laurent polynomials, by cofactor
/// expansion along the first row. Sizes here stay tiny.
fn det(m: &[Vec<CharValue>], n: usize) -> CharValue {
    let size = m.len();
    if size == 0 {
        return CharValue::one(n);
    }
    if size == 1 {
        return m[0][0].clone();
    }
    let mut acc = CharValue::zero(n);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<CharValue>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut contrib = entry.checked_mul(&det(&minor, n)).unwrap();
        if j % 2 == 1 {
            contrib = contrib.scalar_mul(&rat(-1));
        }
        acc = acc.checked_add(&contrib).unwrap();
    }
    acc
}

/// Schur polynomial for the weakly increasing weight P, via the Jacobi-Trudi
/// determinant det(h_{lambda_i - i + j}) with lambda = reverse(P). Independent
/// of the pattern enumeration.
pub fn schur_jacobi_trudi(p: &[i64]) -> Result<CharValue> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let n = p.len();
    if p.iter().any(|&x| x < 0) {
        // Shift into partition territory and divide by (z_1..z_n)^shift later;
        // Jacobi-Trudi needs nonnegative parts.
        let shift = -p.iter().min().unwrap();
        let moved: Vec<i64> = p.iter().map(|x| x + shift).collect();
        let s = schur_jacobi_trudi(&moved)?;
        return Ok(s.mul_monomial(&vec![-shift; n], &Rational::one()));
    }
    let lambda: Vec<i64> = p.iter().rev().cloned().collect();
    let m: Vec<Vec<CharValue>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h_complete(lambda[i] - i as i64 + j as i64, n))
                .collect()
        })
        .collect();
    Ok(det(&m, n))
}

/// Specialize every q in a Whittaker value to a rational number.
pub fn eval_at_q(v: &WhittakerValue, q0: &Rational) -> Result<CharValue> {
    v.try_map_coeffs(|c: &RationalFunctionQ| c.eval_at_q(q0))
}

/// Triple equality at q = 0: the Whittaker sum evaluated at q = 0, the
/// pattern generating function, and (on the cone) the Jacobi-Trudi Schur
/// polynomial all agree. Off the cone both sides vanish.
pub fn q0_limit_check(p: &[i64]) -> Result<CheckOutcome> {
    let gz = char_gz(p);
    let direct0 = eval_at_q(&psi_direct(p), &Rational::zero())?;
    if gz != direct0 {
        return Ok(CheckOutcome::failed(format!(
            "pattern sum and q=0 evaluation disagree at {p:?}"
        )));
    }
    if is_weakly_increasing(p) {
        let schur = schur_jacobi_trudi(p)?;
        if gz != schur {
            return Ok(CheckOutcome::failed(format!(
                "pattern sum and Jacobi-Trudi disagree at {p:?}"
            )));
        }
    }
    Ok(CheckOutcome::passed())
}

/// Elementary symmetric polynomial e_r(z_1..z_n) over the rationals.
pub fn elementary_symmetric_char(r: usize, n: usize) -> Result<CharValue> {
    let v = crate::toda::elementary_symmetric(r, n)?;
    eval_at_q(&v, &Rational::zero())
}

/// Pieri rule: e_r(z) chi_P = sum over r-subsets I of chi_{P + e_I}, with
/// unsorted shifted weights contributing zero.
pub fn pieri_check(r: usize, p: &[i64]) -> Result<CheckOutcome> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let n = p.len();
    let lhs = elementary_symmetric_char(r, n)?.checked_mul(&char_gz(p))?;
    let mut rhs = CharValue::zero(n);
    for idx in r_subsets(n, r) {
        let mut moved = p.to_vec();
        for &i in &idx {
            moved[i - 1] += 1;
        }
        rhs = rhs.checked_add(&char_gz(&moved))?;
    }
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

fn r_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, r, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 1, &mut cur, &mut out);
    out
}

/// Branching: chi^{(n)}_P(z_1..z_n) = sum over mu interlacing P of
/// z_n^{|P| - |mu|} chi^{(n-1)}_mu(z_1..z_{n-1}).
pub fn branching_check(p: &[i64]) -> Result<CheckOutcome> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let n = p.len();
    if n < 2 {
        return Err(Error::RankOutOfRange("branching needs rank >= 2".into()));
    }
    let lhs = char_gz(p);
    let psum: i64 = p.iter().sum();
    let mut rhs = CharValue::zero(n);
    for mu in enumerate_interlacing(p) {
        let msum: i64 = mu.iter().sum();
        let mut expo = vec![0i64; n];
        expo[n - 1] = psum - msum;
        let lifted = char_gz(&mu).lift(n);
        rhs = rhs.checked_add(&lifted.mul_monomial(&expo, &Rational::one()))?;
    }
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Truncated Cauchy identity in x-degree <= bound:
///   prod_{i,j} 1/(1 - x_i y_j)  =  sum_Lambda chi_{0-padded Lambda}(x) chi_Lambda(y),
/// the sum over partitions Lambda with at most m parts and |Lambda| <= bound,
/// padded by prepending zeros to length n. Both sides live in n + m variables
/// (x first), with every term filtered to total x-degree <= bound.
pub fn cauchy_check(n: usize, m: usize, bound: i64) -> Result<CheckOutcome> {
    if m > n {
        return Err(Error::RankOutOfRange(format!(
            "cauchy needs m <= n, got n={n} m={m}"
        )));
    }
    let vars = n + m;
    // Left side: expand prod 1/(1 - x_i y_j) = prod sum_k (x_i y_j)^k.
    let mut lhs = CharValue::one(vars);
    for i in 0..n {
        for j in 0..m {
            let mut factor = CharValue::zero(vars);
            for k in 0..=bound {
                let mut expo = vec![0i64; vars];
                expo[i] = k;
                expo[n + j] = k;
                factor = factor.checked_add(&CharValue::monomial(
                    vars,
                    expo,
                    Rational::one(),
                ))?;
            }
            lhs = lhs.checked_mul(&factor)?;
            lhs = truncate_x_degree(&lhs, n, bound);
        }
    }
    // Right side: sum over partitions.
    let mut rhs = CharValue::zero(vars);
    for lambda in partitions_up_to(bound, m) {
        // lambda is weakly decreasing with at most m parts; weights ascend.
        let mut y_weight: Vec<i64> = lambda.iter().rev().cloned().collect();
        while y_weight.len() < m {
            y_weight.insert(0, 0);
        }
        let mut x_weight = vec![0i64; n - m];
        x_weight.extend(&y_weight);
        let cx = char_gz(&x_weight);
        let cy = char_gz(&y_weight);
        // Embed cx into the first n slots and cy into the last m.
        let ex = cx.embed(vars, 0);
        let ey = cy.embed(vars, n);
        rhs = rhs.checked_add(&ex.checked_mul(&ey)?)?;
    }
    let rhs = truncate_x_degree(&rhs, n, bound);
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

fn truncate_x_degree(v: &CharValue, n: usize, bound: i64) -> CharValue {
    v.filter_terms(|expo| expo[..n].iter().sum::<i64>() <= bound)
}

/// Partitions of every size 0..=total with at most `parts` parts, weakly
/// decreasing.
fn partitions_up_to(total: i64, parts: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut cur: Vec<i64> = Vec::new();
    fn rec(left: i64, max: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == parts {
            return;
        }
        for v in (1..=max.min(left)).rev() {
            cur.push(v);
            out.push(cur.clone());
            rec(left - v, v, parts, cur, out);
            cur.pop();
        }
    }
    rec(total, total, parts, &mut cur, &mut out);
    out
}

/// Vandermonde-type product Delta(y) = prod_{i != j} (1 - y_i / y_j)
/// as a Laurent polynomial in l variables.
fn weyl_denominator(l: usize) -> CharValue {
    let mut acc = CharValue::one(l);
    for i in 0..l {
        for j in 0..l {
            if i == j {
                continue;
            }
            let mut expo = vec![0i64; l];
            expo[i] = 1;
            expo[j] = -1;
            let factor = CharValue::one(l)
                .checked_sub(&CharValue::monomial(l, expo, Rational::one()))
                .unwrap();
            acc = acc.checked_mul(&factor).unwrap();
        }
    }
    acc
}

/// Constant-term recovery of a character from one rank down:
///   chi^{(n)}_P(x) = (1/l!) CT_y [ C_{n,l}(x, y^{-1}) chi^{(l)}_lambda(y) Delta(y) ],
/// l = n - 1, where C_{n,l}(x, y^{-1}) = prod_{i,j} 1/(1 - x_i / y_j) is
/// expanded as a geometric series truncated at total x-degree <= bound,
/// lambda is P normalized to first entry 0 (translation covariance restores
/// the rest) with the leading zero dropped, and CT takes the coefficient of
/// y^0. Needs bound >= |lambda|; a smaller bound is reported as a failure
/// with the required value.
pub fn constant_term_branching(p: &[i64], bound: i64) -> Result<CheckOutcome> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let n = p.len();
    if n < 2 {
        return Err(Error::RankOutOfRange("branching needs rank >= 2".into()));
    }
    let l = n - 1;
    let base = p[0];
    let lam: Vec<i64> = p.iter().map(|x| x - base).collect();
    let lam_y: Vec<i64> = lam[1..].to_vec();
    let size: i64 = lam.iter().sum();
    if bound < size {
        return Ok(CheckOutcome::failed(format!(
            "degree bound {bound} below required {size} for P={p:?}"
        )));
    }
    let vars = n + l;
    // Truncated kernel prod_{i,j} sum_k x_i^k y_j^{-k}; x slots 0..n-1,
    // y slots n..n+l-1. Nonnegative x-degrees make stepwise truncation exact.
    let mut kernel = CharValue::one(vars);
    for i in 0..n {
        for j in 0..l {
            let mut factor = CharValue::zero(vars);
            for k in 0..=bound {
                let mut expo = vec![0i64; vars];
                expo[i] = k;
                expo[n + j] = -k;
                factor = factor.checked_add(&CharValue::monomial(vars, expo, Rational::one()))?;
            }
            kernel = kernel.checked_mul(&factor)?;
            kernel = truncate_x_degree(&kernel, n, bound);
        }
    }
    let prod = kernel
        .checked_mul(&char_gz(&lam_y).embed(vars, n))?
        .checked_mul(&weyl_denominator(l).embed(vars, n))?;
    // Constant term in y, then scale by 1/l! and restore the translation.
    let fact: i64 = (1..=l as i64).product();
    let mut recovered = CharValue::zero(n);
    for (expo, c) in prod.terms() {
        if expo[n..].iter().all(|&e| e == 0) {
            recovered = recovered.checked_add(&CharValue::monomial(
                n,
                expo[..n].to_vec(),
                c / rat(fact),
            ))?;
        }
    }
    let recovered = recovered.mul_monomial(&vec![base; n], &Rational::one());
    let diff = char_gz(p).checked_sub(&recovered)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Splitting of the elementary symmetric polynomials off the last variable:
/// e_r(z_1..z_n) = e_r(z_1..z_{n-1}) + z_n e_{r-1}(z_1..z_{n-1}).
pub fn splitting_check(r: usize, n: usize) -> Result<CheckOutcome> {
    if n < 2 || r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("e_{r} split in {n} variables")));
    }
    let lhs = elementary_symmetric_char(r, n)?;
    let mut rhs = CharValue::zero(n);
    if r < n {
        rhs = rhs.checked_add(&elementary_symmetric_char(r, n - 1)?.lift(n))?;
    }
    let prev = if r == 1 {
        CharValue::one(n - 1)
    } else {
        elementary_symmetric_char(r - 1, n - 1)?
    };
    let mut zn = vec![0i64; n];
    zn[n - 1] = 1;
    rhs = rhs.checked_add(&prev.lift(n).mul_monomial(&zn, &Rational::one()))?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

// ================= q = 1 =================

/// Principal specialization chi_k(1,..,1) of the fundamental characters: the
/// value of char at the 0/1 weight with k ones is binom(n, k), so only the
/// count enters. `chi_fundamental_dim(n, k)` = binom(n, k).
fn chi_fundamental_dim(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n as i64, k as i64))
}

/// Fundamental character chi_{omega_k}(z_1..z_n) = e_k(z): the character of
/// the weight (0,..,0,1,..,1) with k trailing ones.
fn chi_fundamental(n: usize, k: usize) -> CharValue {
    if k == 0 {
        return CharValue::one(n);
    }
    elementary_symmetric_char(k, n).expect("valid k")
}

/// Closed form of the Whittaker function at q = 1:
///   psi(p) = chi_n^{p_1} prod_{i=1}^{n-1} chi_{n-i}^{p_{i+1} - p_i},
/// valid on the weakly increasing cone; the i-th gap pairs with the
/// fundamental character chi_{n-i}. Exponents are nonnegative there, so the
/// value is a genuine Laurent polynomial.
pub fn psi_q1(p: &[i64]) -> Result<CharValue> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let n = p.len();
    let mut acc = CharValue::monomial(n, vec![p[0]; n], Rational::one());
    for i in 1..n {
        let gap = (p[i] - p[i - 1]) as usize;
        acc = acc.checked_mul(&chi_fundamental(n, n - i).pow(gap))?;
    }
    Ok(acc)
}

/// q -> 1 specialization of the binomial form agrees with the closed form.
pub fn q1_limit_check(p: &[i64]) -> Result<CheckOutcome> {
    let lhs = eval_at_q(&psi_tilde(p), &Rational::one())?;
    let rhs = psi_q1(p)?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Pure-shift eigenrelation at q = 1: h_r = T_{n+1-r} .. T_n satisfies
/// h_r psi = e_r(z) psi on points staying inside the cone.
pub fn h_eigencheck(r: usize, p: &[i64]) -> Result<CheckOutcome> {
    let n = p.len();
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("h_{r} on rank {n}")));
    }
    let mut moved = p.to_vec();
    for i in (n - r)..n {
        moved[i] += 1;
    }
    let lhs = psi_q1(&moved)?;
    let rhs = elementary_symmetric_char(r, n)?.checked_mul(&psi_q1(p)?)?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Two recursions at q = 1 for the closed form.
///
/// The binomial recursion descends through interlacing mu with ordinary
/// binomial weights:
///   psi^{(n)}(p) = sum_{mu interlacing p} [prod_i C(p_{i+1} - p_i, mu_i - p_i)]
///                  z_n^{|p| - |mu|} psi^{(n-1)}(mu).
///
/// The plain recursion drops the binomial factor and instead divides by the
/// gap factorials:
///   psi^{(n)}(p) = sum_mu z_n^{|p|-|mu|} psi^{(n-1)}(mu)
///                  prod_{i<=l-1} (mu_{i+1} - mu_i)! / prod_{i<=l} gaps of mu in p,
/// concretely numerator over interior gaps of mu and denominator over the
/// interlacing gap factorials (mu_i - p_i)! (p_{i+1} - mu_i)!.
pub fn q1_recursion_check(p: &[i64]) -> Result<CheckOutcome> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let n = p.len();
    if n < 2 {
        return Err(Error::RankOutOfRange("recursion needs rank >= 2".into()));
    }
    let target = psi_q1(p)?;
    let psum: i64 = p.iter().sum();

    // Binomial form.
    let mut bin_acc = CharValue::zero(n);
    for mu in enumerate_interlacing(p) {
        let msum: i64 = mu.iter().sum();
        let mut coeff = Rational::one();
        for i in 0..(n - 1) {
            coeff *= Rational::from_integer(binomial(p[i + 1] - p[i], mu[i] - p[i]));
        }
        if coeff.is_zero() {
            continue;
        }
        let mut expo = vec![0i64; n];
        expo[n - 1] = psum - msum;
        bin_acc = bin_acc.checked_add(
            &psi_q1(&mu)?
                .lift(n)
                .mul_monomial(&expo, &coeff),
        )?;
    }
    let bin_diff = target.checked_sub(&bin_acc)?;
    if !bin_diff.is_zero() {
        return Ok(CheckOutcome::failed(format!(
            "binomial recursion residual {bin_diff} at {p:?}"
        )));
    }

    // Factorial form, stated for the renormalization phi(x) = psi(x) / G(x)
    // with G(x) the product of gap factorials: the recursion weight is
    // G(mu) / [interlacing gap factorials], and the G(mu) in the weight
    // cancels the one inside phi(mu).
    fn gap_factorials(x: &[i64]) -> Rational {
        let mut g = Rational::one();
        for i in 1..x.len() {
            g *= Rational::from_integer(crate::rational::factorial(x[i] - x[i - 1]));
        }
        g
    }
    let phi_target = target.scalar_mul(&(Rational::one() / gap_factorials(p)));
    let mut fac_acc = CharValue::zero(n);
    for mu in enumerate_interlacing(p) {
        let msum: i64 = mu.iter().sum();
        let mut den = Rational::one();
        for i in 0..(n - 1) {
            den *= Rational::from_integer(crate::rational::factorial(mu[i] - p[i]));
            den *= Rational::from_integer(crate::rational::factorial(p[i + 1] - mu[i]));
        }
        let coeff = gap_factorials(&mu) / den;
        let phi_mu = psi_q1(&mu)?.scalar_mul(&(Rational::one() / gap_factorials(&mu)));
        let mut expo = vec![0i64; n];
        expo[n - 1] = psum - msum;
        fac_acc = fac_acc.checked_add(&phi_mu.lift(n).mul_monomial(&expo, &coeff))?;
    }
    let fac_diff = phi_target.checked_sub(&fac_acc)?;
    if !fac_diff.is_zero() {
        return Ok(CheckOutcome::failed(format!(
            "factorial recursion residual {fac_diff} at {p:?}"
        )));
    }
    Ok(CheckOutcome::passed())
}

/// Dimension count at q = 1, z = 1:
///   psi(p)(1,..,1) = prod_i binom(n, n - i)^{p_{i+1} - p_i} (independent of
/// p_1, since chi_n(1,..,1) = 1).
pub fn dimension_check(p: &[i64]) -> Result<CheckOutcome> {
    let n = p.len();
    let value = psi_q1(p)?.eval_all_ones();
    let mut expected = Rational::one();
    for i in 1..n {
        let gap = (p[i] - p[i - 1]) as u32;
        let base = chi_fundamental_dim(n, n - i);
        let mut powed = Rational::one();
        for _ in 0..gap {
            powed *= base.clone();
        }
        expected *= powed;
    }
    if value == expected && !value.is_negative() {
        Ok(CheckOutcome::passed())
    } else {
        Ok(CheckOutcome::failed(format!(
            "dimension {value} != {expected} at {p:?}"
        )))
    }
}
