//! Sparse Laurent polynomials in n variables z_1..z_n.
//!
//! Exponent vectors are signed machine integers keyed in lexicographic order
//! (BTreeMap on Vec<i64>), coefficients live in any commutative ring: rational
//! functions of q for Whittaker values, plain rationals for characters, and
//! rational functions of (q, t) in the Macdonald lab. Zero coefficients are
//! never stored, so structural equality is mathematical equality.

use crate::rational::{int_from_decimal, int_to_decimal, Rational};
use crate::ratfun::RationalFunctionQ;
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring bound: exact, clonable, with ring operations.
pub trait Coefficient:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}
impl<T> Coefficient for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

#[derive(Clone, PartialEq)]
pub struct LaurentPolynomial<C: Coefficient> {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Coefficient> LaurentPolynomial<C> {
    // ---- Constructors ----

    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: C) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// The single variable z_i (1-based) in an nvars-variable ring.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        Self::monomial(nvars, exps, C::one())
    }

    // ---- Inspection ----

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient_of(&self, exps: &[i64]) -> C {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// True when the coefficients are invariant under permuting the variables.
    /// Adjacent transpositions generate the full symmetric group.
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.nvars.saturating_sub(1) {
            for (e, c) in &self.terms {
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                if self.coefficient_of(&swapped) != *c {
                    return false;
                }
            }
        }
        true
    }

    // ---- Arithmetic ----

    fn insert_term(terms: &mut BTreeMap<Vec<i64>, C>, exps: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.nvars != rhs.nvars {
            return Err(Error::VariableMismatch(self.nvars, rhs.nvars));
        }
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&(-rhs.clone()))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.nvars != rhs.nvars {
            return Err(Error::VariableMismatch(self.nvars, rhs.nvars));
        }
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut terms, exps, ca.clone() * cb.clone());
            }
        }
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            let prod = a.clone() * c.clone();
            if !prod.is_zero() {
                terms.insert(e.clone(), prod);
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Multiply by the monomial c * z^exps in place of a full product.
    pub fn mul_monomial(&self, exps: &[i64], c: &C) -> Self {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            let prod = a.clone() * c.clone();
            if prod.is_zero() {
                continue;
            }
            let shifted: Vec<i64> = e.iter().zip(exps).map(|(x, s)| x + s).collect();
            terms.insert(shifted, prod);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same variable count");
        }
        acc
    }

    /// Keep only the terms whose exponent vector satisfies the predicate.
    pub fn filter_terms(&self, mut pred: impl FnMut(&[i64]) -> bool) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if pred(e) {
                terms.insert(e.clone(), c.clone());
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Re-embed into a ring with `total` variables, original variables placed
    /// at positions offset+1 .. offset+nvars.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= total, "embedding range");
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; total];
            exps[offset..offset + self.nvars].copy_from_slice(e);
            terms.insert(exps, c.clone());
        }
        LaurentPolynomial {
            nvars: total,
            terms,
        }
    }

    /// Append unused variables: an n-variable value viewed in `total` variables.
    pub fn lift(&self, total: usize) -> Self {
        self.embed(total, 0)
    }

    /// Map coefficients through a ring morphism, dropping images of zero.
    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> LaurentPolynomial<D> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let img = f(c);
            if !img.is_zero() {
                terms.insert(e.clone(), img);
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Fallible coefficient map; used for evaluation maps that can hit poles.
    pub fn try_map_coeffs<D: Coefficient>(
        &self,
        mut f: impl FnMut(&C) -> Result<D>,
    ) -> Result<LaurentPolynomial<D>> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let img = f(c)?;
            if !img.is_zero() {
                terms.insert(e.clone(), img);
            }
        }
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Sum of all coefficients: evaluation at z_1 = ... = z_n = 1.
    pub fn eval_all_ones(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc = acc + c.clone();
        }
        acc
    }
}

impl<C: Coefficient> Add for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn add(self, rhs: Self) -> LaurentPolynomial<C> {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<C: Coefficient> Sub for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<C> {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<C: Coefficient> Mul for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: Self) -> LaurentPolynomial<C> {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl<C: Coefficient> Neg for LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> LaurentPolynomial<C> {
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| (e, -c))
            .collect();
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{}", i + 1, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial[{} vars]({self})", self.nvars)
    }
}

// ---- JSON: coefficient rings that serialize as a num/den string pair ----

pub trait CoeffText: Coefficient {
    fn num_string(&self) -> String;
    fn den_string(&self) -> String;
    fn from_num_den(num: &str, den: &str) -> Result<Self>;
}

impl CoeffText for RationalFunctionQ {
    fn num_string(&self) -> String {
        self.numerator().to_q_string()
    }
    fn den_string(&self) -> String {
        self.denominator().to_q_string()
    }
    fn from_num_den(num: &str, den: &str) -> Result<Self> {
        RationalFunctionQ::new(
            crate::polyq::PolynomialQ::from_q_string(num)?,
            crate::polyq::PolynomialQ::from_q_string(den)?,
        )
    }
}

impl CoeffText for Rational {
    fn num_string(&self) -> String {
        int_to_decimal(self.numer())
    }
    fn den_string(&self) -> String {
        int_to_decimal(self.denom())
    }
    fn from_num_den(num: &str, den: &str) -> Result<Self> {
        let bad = || Error::Parse("bad rational coefficient".into());
        let n = int_from_decimal(num).ok_or_else(bad)?;
        let d = int_from_decimal(den).ok_or_else(bad)?;
        if d == crate::rational::Integer::from(0) {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::new(n, d))
    }
}

impl<C: CoeffText> LaurentPolynomial<C> {
    /// `[{"z": [e1..en], "coeff": {"num": "...", "den": "..."}}, ...]` with
    /// monomials in lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "z": e,
                    "coeff": {"num": c.num_string(), "den": c.den_string()},
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(nvars: usize, v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("bad Laurent polynomial JSON".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut out = Self::zero(nvars);
        for t in arr {
            let z = t.get("z").and_then(|z| z.as_array()).ok_or_else(bad)?;
            if z.len() != nvars {
                return Err(Error::VariableMismatch(z.len(), nvars));
            }
            let exps: Option<Vec<i64>> = z.iter().map(|x| x.as_i64()).collect();
            let coeff = t.get("coeff").ok_or_else(bad)?;
            let num = coeff.get("num").and_then(|x| x.as_str()).ok_or_else(bad)?;
            let den = coeff.get("den").and_then(|x| x.as_str()).ok_or_else(bad)?;
            let c = C::from_num_den(num, den)?;
            let term = Self::monomial(nvars, exps.ok_or_else(bad)?, c);
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    type L = LaurentPolynomial<Rational>;

    fn mono(e: &[i64], c: i64) -> L {
        L::monomial(e.len(), e.to_vec(), rat(c))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = mono(&[1, 0], 1); // z1
        let b = mono(&[0, 1], 1); // z2
        let s = &a + &b;
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coefficient_of(&[1, 0]), rat(1));
        let p = &s * &s;
        assert_eq!(p.coefficient_of(&[1, 1]), rat(2));
        assert_eq!(p.coefficient_of(&[2, 0]), rat(1));
        assert!( (&p - &p).is_zero() );
        // (z1 + z2) - z1 leaves a single term.
        assert_eq!((&s - &a), b);
    }

    #[test]
    fn negative_exponents_and_monomial_shift() {
        let a = mono(&[-1, 2], 3);
        let shifted = a.mul_monomial(&[2, -2], &rat(2));
        assert_eq!(shifted.coefficient_of(&[1, 0]), rat(6));
        assert_eq!(shifted.num_terms(), 1);
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = mono(&[1], 1);
        let b = mono(&[1, 0], 1);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn symmetry_detection() {
        let sym = &mono(&[1, 0], 1) + &mono(&[0, 1], 1);
        assert!(sym.is_symmetric());
        let asym = &mono(&[1, 0], 1) + &mono(&[0, 1], 2);
        assert!(!asym.is_symmetric());
    }

    #[test]
    fn embed_and_lift() {
        let a = mono(&[1, 2], 5);
        let lifted = a.lift(4);
        assert_eq!(lifted.coefficient_of(&[1, 2, 0, 0]), rat(5));
        let placed = a.embed(4, 2);
        assert_eq!(placed.coefficient_of(&[0, 0, 1, 2]), rat(5));
    }

    #[test]
    fn json_round_trip_rational_coeffs() {
        let a = &mono(&[-1, 0], 2) + &mono(&[0, 3], -7);
        let v = a.to_json();
        let back = L::from_json(2, &v).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn json_round_trip_ratfun_coeffs() {
        use crate::ratfun::RationalFunctionQ as RF;
        let c = RF::new(
            crate::polyq::PolynomialQ::one_minus_q_pow(2),
            crate::polyq::PolynomialQ::one_minus_q_pow(1),
        )
        .unwrap();
        let a: LaurentPolynomial<RF> =
            LaurentPolynomial::monomial(3, vec![0, -2, 1], c);
        let v = a.to_json();
        let back = LaurentPolynomial::<RF>::from_json(3, &v).unwrap();
        assert_eq!(back, a);
    }
}
