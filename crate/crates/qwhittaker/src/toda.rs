//! q-Toda difference operators and their structural identities.
//!
//! Operators are reified as data: a list of terms, each a product of primitive
//! coefficient factors (1 - q^{p_a - p_b + offset}) together with an integer
//! shift vector. Reification keeps them printable and lets the dual action and
//! the adjointness sums inspect the same data the forward action uses.
//!
//! Three families act on rank-n lattice functions:
//!
//! * `build_h`: the Toda Hamiltonians H_r. Over each ordered r-subset
//!   I = (i_1 < ... < i_r) of {1..n} the coefficient is
//!   X_{i_1}^{1-d(i_1,1)} X_{i_2}^{1-d(i_2-i_1,1)} ... X_{i_r}^{1-d(i_r-i_{r-1},1)}
//!   with X_i(p) = 1 - q^{p_i - p_{i-1} + 1} and X_1 = 1 (d is the Kronecker
//!   delta); the shift raises the entries at I. H_r psi = e_r(z) psi.
//! * `build_h_tilde`: the dual Hamiltonians on the lower slot. The delta looks
//!   at the *next* chosen index, with the convention i_{r+1} = n + 1, and the
//!   factors are Ytilde_i(u) = 1 - q^{u_i - u_{i+1} + 1}, Ytilde_n = 1. In the
//!   braiding they act on the lower argument of the interlacing kernel through
//!   `apply_at_negated`: coefficients evaluated at -s, shifts pushing s down.
//! * `build_j`: the conjugated Hamiltonians J_r = Delta o H_r o Delta^{-1}
//!   acting on the binomial form, same forward-looking delta pattern with
//!   Xtilde_i(p) = 1 - q^{p_{i+1} - p_i}. J_r psi_tilde = e_r(z) psi_tilde.
//!
//! `intertwine_check` verifies the braiding
//!   H_k(P) Q(P, s) = (Htilde_{k-1} + Htilde_k)(-s) Q(P, s),
//! with Htilde_0 the identity and Htilde_{l+1} = 0, and `adjoint_check` the
//! pairing identity <f, H_r g> = <Htilde_r f, g> under
//! <f, g> = sum_p Delta'(p) f(-p) g(p). The pairing identity holds when g is
//! supported on the weakly increasing cone and f on the weakly decreasing
//! anti-cone (it can fail on the cone boundary otherwise, and the check
//! reports whatever it finds; r = rank and rank 1 are unconditional).

use crate::lattice::{negated, shifted};
use crate::ratfun::RationalFunctionQ;
use crate::whittaker::{delta_prime, psi_tilde, WhittakerEvaluator, WhittakerValue};
use crate::{CheckOutcome, Error, Result};
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;

/// One primitive coefficient factor: 1 - q^{p_a - p_b + offset}, 1-based a, b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffFactor {
    pub a: usize,
    pub b: usize,
    pub offset: i64,
}

impl CoeffFactor {
    fn eval(&self, p: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::one_minus_q_pow(p[self.a - 1] - p[self.b - 1] + self.offset)
    }
}

/// One operator term: a product of factors in front of a lattice shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<CoeffFactor>,
    pub shift: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceOperator {
    rank: usize,
    terms: Vec<Term>,
}

impl DifferenceOperator {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The zero operator (no terms).
    pub fn zero(rank: usize) -> Self {
        DifferenceOperator {
            rank,
            terms: Vec::new(),
        }
    }

    /// The identity operator.
    pub fn identity(rank: usize) -> Self {
        DifferenceOperator {
            rank,
            terms: vec![Term {
                factors: Vec::new(),
                shift: vec![0; rank],
            }],
        }
    }

    /// Coefficient of one term at a lattice point.
    pub fn term_coefficient(&self, term: &Term, p: &[i64]) -> RationalFunctionQ {
        let mut acc = RationalFunctionQ::one();
        for f in &term.factors {
            let v = f.eval(p);
            if v.is_zero() {
                return RationalFunctionQ::zero();
            }
            acc = acc * v;
        }
        acc
    }
}

impl fmt::Display for DifferenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for t in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            for fac in &t.factors {
                write!(f, "(1 - q^(p{} - p{}{:+}))", fac.a, fac.b, fac.offset)?;
            }
            let moved: Vec<String> = t
                .shift
                .iter()
                .enumerate()
                .filter(|(_, &s)| s != 0)
                .map(|(i, &s)| {
                    if s == 1 {
                        format!("T{}", i + 1)
                    } else {
                        format!("T{}^{}", i + 1, s)
                    }
                })
                .collect();
            if moved.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&moved.join(""))?;
            }
        }
        Ok(())
    }
}

/// Ordered r-subsets of {1..n}, ascending, in lexicographic order.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(r);
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

fn unit_shift(n: usize, idx: &[usize]) -> Vec<i64> {
    let mut s = vec![0i64; n];
    for &i in idx {
        s[i - 1] = 1;
    }
    s
}

/// Toda Hamiltonian H_r on rank n. Requires 1 <= r <= n.
pub fn build_h(r: usize, n: usize) -> Result<DifferenceOperator> {
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("H_{r} on rank {n}")));
    }
    let mut terms = Vec::new();
    for idx in subsets(n, r) {
        let mut factors = Vec::new();
        for (k, &i) in idx.iter().enumerate() {
            let gap = if k == 0 { i } else { i - idx[k - 1] };
            // X_i enters unless the backward gap is 1 (X_1 never enters).
            if gap != 1 {
                factors.push(CoeffFactor {
                    a: i,
                    b: i - 1,
                    offset: 1,
                });
            }
        }
        terms.push(Term {
            factors,
            shift: unit_shift(n, &idx),
        });
    }
    Ok(DifferenceOperator { rank: n, terms })
}

/// Dual Hamiltonian Htilde_r on rank n. Accepts the braiding conventions
/// r = 0 (identity) and r = n + 1 (zero) besides 1 <= r <= n.
pub fn build_h_tilde(r: usize, n: usize) -> Result<DifferenceOperator> {
    if r == 0 {
        return Ok(DifferenceOperator::identity(n));
    }
    if r == n + 1 {
        return Ok(DifferenceOperator::zero(n));
    }
    if r > n {
        return Err(Error::RankOutOfRange(format!("Htilde_{r} on rank {n}")));
    }
    let mut terms = Vec::new();
    for idx in subsets(n, r) {
        let mut factors = Vec::new();
        for (k, &i) in idx.iter().enumerate() {
            let next = if k + 1 < idx.len() { idx[k + 1] } else { n + 1 };
            // Ytilde_i enters unless the forward gap is 1 (Ytilde_n never
            // enters: its forward gap to the virtual index n + 1 is 1).
            if next - i != 1 {
                factors.push(CoeffFactor {
                    a: i,
                    b: i + 1,
                    offset: 1,
                });
            }
        }
        terms.push(Term {
            factors,
            shift: unit_shift(n, &idx),
        });
    }
    Ok(DifferenceOperator { rank: n, terms })
}

/// Conjugated Hamiltonian J_r = Delta o H_r o Delta^{-1} on rank n.
pub fn build_j(r: usize, n: usize) -> Result<DifferenceOperator> {
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("J_{r} on rank {n}")));
    }
    let mut terms = Vec::new();
    for idx in subsets(n, r) {
        let mut factors = Vec::new();
        for (k, &i) in idx.iter().enumerate() {
            let next = if k + 1 < idx.len() { idx[k + 1] } else { n + 1 };
            // Xtilde_i = 1 - q^{p_{i+1} - p_i}, same forward-looking pattern.
            if next - i != 1 {
                factors.push(CoeffFactor {
                    a: i + 1,
                    b: i,
                    offset: 0,
                });
            }
        }
        terms.push(Term {
            factors,
            shift: unit_shift(n, &idx),
        });
    }
    Ok(DifferenceOperator { rank: n, terms })
}

/// Elementary symmetric polynomial e_r(z_1..z_n) as a Laurent value.
pub fn elementary_symmetric(r: usize, n: usize) -> Result<WhittakerValue> {
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange(format!("e_{r} in {n} variables")));
    }
    let mut acc = WhittakerValue::zero(n);
    for idx in subsets(n, r) {
        let term = WhittakerValue::monomial(n, unit_shift(n, &idx), RationalFunctionQ::one());
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// A lattice function: total evaluation rule with a fixed value ring.
pub trait LatticeFunction {
    /// Number of z variables in every value.
    fn value_vars(&self) -> usize;
    fn eval(&self, p: &[i64]) -> WhittakerValue;
}

/// Finite-support table; evaluates to zero off its support.
pub struct FiniteTable {
    rank: usize,
    value_vars: usize,
    entries: HashMap<Vec<i64>, WhittakerValue>,
}

impl FiniteTable {
    pub fn new(rank: usize, value_vars: usize) -> Self {
        FiniteTable {
            rank,
            value_vars,
            entries: HashMap::new(),
        }
    }

    /// Scalar-valued table (zero z variables) from point/value pairs.
    pub fn scalar(rank: usize, entries: &[(Vec<i64>, RationalFunctionQ)]) -> Self {
        let mut t = Self::new(rank, 0);
        for (p, v) in entries {
            t.insert(p.clone(), WhittakerValue::constant(0, v.clone()));
        }
        t
    }

    /// The indicator of a single point.
    pub fn indicator(point: &[i64]) -> Self {
        Self::scalar(point.len(), &[(point.to_vec(), RationalFunctionQ::one())])
    }

    pub fn insert(&mut self, point: Vec<i64>, value: WhittakerValue) {
        assert_eq!(point.len(), self.rank, "point rank");
        assert_eq!(value.nvars(), self.value_vars, "value variables");
        if value.is_zero() {
            self.entries.remove(&point);
        } else {
            self.entries.insert(point, value);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.entries.keys()
    }
}

impl LatticeFunction for FiniteTable {
    fn value_vars(&self) -> usize {
        self.value_vars
    }
    fn eval(&self, p: &[i64]) -> WhittakerValue {
        self.entries
            .get(p)
            .cloned()
            .unwrap_or_else(|| WhittakerValue::zero(self.value_vars))
    }
}

/// The Whittaker function at a fixed rank, backed by a shared evaluator.
pub struct PsiRule<'a> {
    pub evaluator: &'a WhittakerEvaluator,
    pub rank: usize,
}

impl LatticeFunction for PsiRule<'_> {
    fn value_vars(&self) -> usize {
        self.rank
    }
    fn eval(&self, p: &[i64]) -> WhittakerValue {
        debug_assert_eq!(p.len(), self.rank);
        self.evaluator.psi(p)
    }
}

/// The binomial form at a fixed rank.
pub struct PsiTildeRule {
    pub rank: usize,
}

impl LatticeFunction for PsiTildeRule {
    fn value_vars(&self) -> usize {
        self.rank
    }
    fn eval(&self, p: &[i64]) -> WhittakerValue {
        debug_assert_eq!(p.len(), self.rank);
        psi_tilde(p)
    }
}

/// Forward action: (op f)(p) = sum_t coeff_t(p) f(p + shift_t).
pub fn apply(op: &DifferenceOperator, f: &dyn LatticeFunction, p: &[i64]) -> Result<WhittakerValue> {
    if p.len() != op.rank {
        return Err(Error::VariableMismatch(p.len(), op.rank));
    }
    let mut acc = WhittakerValue::zero(f.value_vars());
    for term in &op.terms {
        let c = op.term_coefficient(term, p);
        if c.is_zero() {
            continue;
        }
        let moved = f.eval(&shifted(p, &term.shift));
        acc = acc.checked_add(&moved.scalar_mul(&c))?;
    }
    Ok(acc)
}

/// Reflected action: (op f)(-p) = sum_t coeff_t(-p) f(-p + shift_t).
/// This is how the dual Hamiltonians reach the lower kernel slot.
pub fn apply_at_negated(
    op: &DifferenceOperator,
    f: &dyn LatticeFunction,
    p: &[i64],
) -> Result<WhittakerValue> {
    apply(op, f, &negated(p))
}

/// Eigenrelation H_r psi = e_r(z) psi at one lattice point, exact.
pub fn eigencheck(r: usize, p: &[i64], evaluator: &WhittakerEvaluator) -> Result<CheckOutcome> {
    let n = p.len();
    let h = build_h(r, n)?;
    let rule = PsiRule {
        evaluator,
        rank: n,
    };
    let lhs = apply(&h, &rule, p)?;
    let rhs = elementary_symmetric(r, n)?.checked_mul(&evaluator.psi(p))?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Eigenrelation J_r psi_tilde = e_r(z) psi_tilde at one lattice point.
pub fn j_eigencheck(r: usize, p: &[i64]) -> Result<CheckOutcome> {
    let n = p.len();
    let j = build_j(r, n)?;
    let rule = PsiTildeRule { rank: n };
    let lhs = apply(&j, &rule, p)?;
    let rhs = elementary_symmetric(r, n)?.checked_mul(&psi_tilde(p))?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Braiding of the interlacing kernel:
///   sum_I Hcoeff_I(upper) Q(upper + e_I, lower)
///     = Q-action of Htilde_{k-1} + Htilde_k on the lower slot
/// for 1 <= k <= len(upper). Exact in Q(q).
pub fn intertwine_check(k: usize, upper: &[i64], lower: &[i64]) -> Result<CheckOutcome> {
    let n = upper.len();
    if n < 2 || lower.len() + 1 != n {
        return Err(Error::VariableMismatch(upper.len(), lower.len() + 1));
    }
    let l = n - 1;
    let h = build_h(k, n)?;
    let mut lhs = RationalFunctionQ::zero();
    for term in h.terms() {
        let c = h.term_coefficient(term, upper);
        if c.is_zero() {
            continue;
        }
        let up = shifted(upper, &term.shift);
        lhs = lhs + c * crate::whittaker::kernel_q(&up, lower)?;
    }
    let mut rhs = RationalFunctionQ::zero();
    for j in [k - 1, k] {
        if j > l {
            continue;
        }
        let ht = build_h_tilde(j, l)?;
        for term in ht.terms() {
            let c = ht.term_coefficient(term, &negated(lower));
            if c.is_zero() {
                continue;
            }
            let down: Vec<i64> = lower.iter().zip(&term.shift).map(|(a, s)| a - s).collect();
            rhs = rhs + c * crate::whittaker::kernel_q(upper, &down)?;
        }
    }
    let diff = lhs - rhs;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}

/// Pairing sum_p Delta'(p) f(-p) rhs(p), over the finite set where f(-p) is
/// possibly nonzero.
fn pair_against(
    f: &FiniteTable,
    mut rhs: impl FnMut(&[i64]) -> Result<WhittakerValue>,
    value_vars: usize,
) -> Result<WhittakerValue> {
    let mut acc = WhittakerValue::zero(value_vars);
    let mut points: Vec<Vec<i64>> = f.support().map(|s| negated(s)).collect();
    points.sort();
    for p in points {
        let gate = delta_prime(&p);
        if gate.is_zero() {
            continue;
        }
        let fv = f.eval(&negated(&p));
        let rv = rhs(&p)?;
        let prod = fv
            .checked_mul(&rv)?
            .scalar_mul(&RationalFunctionQ::from_poly(gate));
        acc = acc.checked_add(&prod)?;
    }
    Ok(acc)
}

/// Adjointness of H_r and Htilde_r under the gated pairing:
///   sum_p Delta'(p) f(-p) (H_r g)(p) = sum_p Delta'(p) (Htilde_r f)(-p) g(p).
/// Exact sums over the finite supports; see the module notes for the support
/// classes on which the identity is a theorem.
pub fn adjoint_check(r: usize, f: &FiniteTable, g: &FiniteTable) -> Result<CheckOutcome> {
    let n = f.rank();
    if g.rank() != n {
        return Err(Error::VariableMismatch(n, g.rank()));
    }
    let h = build_h(r, n)?;
    let ht = build_h_tilde(r, n)?;
    let lhs = pair_against(f, |p| apply(&h, g, p), g.value_vars())?;
    // RHS support: points where g is nonzero.
    let mut rhs = WhittakerValue::zero(g.value_vars());
    let mut points: Vec<Vec<i64>> = g.support().cloned().collect();
    points.sort();
    for p in points {
        let gate = delta_prime(&p);
        if gate.is_zero() {
            continue;
        }
        let hf = apply_at_negated(&ht, f, &p)?;
        let prod = hf
            .checked_mul(&g.eval(&p))?
            .scalar_mul(&RationalFunctionQ::from_poly(gate));
        rhs = rhs.checked_add(&prod)?;
    }
    let diff = lhs.checked_sub(&rhs)?;
    Ok(CheckOutcome::from_residual(&diff, diff.is_zero()))
}
