//! Polynomials and rational functions in two parameters (q, t).
//!
//! Used by the Macdonald lab, where coefficients live in Q(q, t). Polynomials
//! are sparse maps keyed t-major; rational functions are kept canonical the
//! same way as in one variable: numerator and denominator coprime, integer
//! coefficients with no shared content, and a positive leading denominator
//! coefficient in the t-major term order. The bivariate gcd projects q to a
//! sample point first: a degree-zero projected gcd certifies the answer is
//! pure q-content, and only the rare remaining cases run a primitive
//! remainder sequence in t.

use crate::polyq::PolynomialQ;
use crate::rational::{rat, Rational};
use crate::ratfun::RationalFunctionQ;
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Sparse polynomial in q and t, keys are (t_exponent, q_exponent).
#[derive(Clone, PartialEq, Eq)]
pub struct PolynomialQT {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl PolynomialQT {
    // ---- Constructors ----

    pub fn zero() -> Self {
        PolynomialQT {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// c * q^qe * t^te.
    pub fn monomial(c: Rational, qe: usize, te: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((te, qe), c);
        }
        PolynomialQT { terms }
    }

    /// 1 - q^a t^b; zero when a = b = 0.
    pub fn one_minus_qt(a: usize, b: usize) -> Self {
        &Self::one() - &Self::monomial(Rational::one(), a, b)
    }

    /// Embed a polynomial in q alone.
    pub fn from_polyq(p: &PolynomialQ) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert((0, k), c.clone());
            }
        }
        PolynomialQT { terms }
    }

    // ---- Inspection ----

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.terms.iter().map(|(&(te, qe), c)| (qe, te, c))
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|&(te, _)| te)
    }

    /// (t-degree, q-degree), both 0 for the zero polynomial.
    pub fn degrees(&self) -> (usize, usize) {
        let mut td = 0;
        let mut qd = 0;
        for (&(te, qe), _) in &self.terms {
            td = td.max(te);
            qd = qd.max(qe);
        }
        (td, qd)
    }

    /// Leading coefficient in the t-major order.
    fn leading_coeff(&self) -> Rational {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    // ---- Conversions ----

    /// Coefficients of powers of t, each a polynomial in q, ascending in t.
    pub fn t_coefficients(&self) -> Vec<PolynomialQ> {
        let deg = match self.degree_t() {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![PolynomialQ::zero(); deg + 1];
        for (&(te, qe), c) in &self.terms {
            out[te] = &out[te] + &PolynomialQ::monomial(c.clone(), qe);
        }
        out
    }

    pub fn from_t_coefficients(coeffs: &[PolynomialQ]) -> Self {
        let mut terms = BTreeMap::new();
        for (te, p) in coeffs.iter().enumerate() {
            for (qe, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((te, qe), c.clone());
                }
            }
        }
        PolynomialQT { terms }
    }

    /// Substitute t = q.
    pub fn specialize_t_to_q(&self) -> PolynomialQ {
        let mut out = PolynomialQ::zero();
        for (&(te, qe), c) in &self.terms {
            out = &out + &PolynomialQ::monomial(c.clone(), te + qe);
        }
        out
    }

    pub fn eval(&self, q0: &Rational, t0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(te, qe), c) in &self.terms {
            acc += c
                * num::pow::pow(q0.clone(), qe)
                * num::pow::pow(t0.clone(), te);
        }
        acc
    }

    // ---- gcd machinery ----

    /// Content over Q[q]: monic gcd of the t-coefficients.
    fn content_q(&self) -> PolynomialQ {
        let mut g = PolynomialQ::zero();
        for p in self.t_coefficients() {
            g = PolynomialQ::gcd(&g, &p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division; panics when the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let q = uni_div_exact(&to_uni(self), &to_uni(d));
        // The quotient of an exact division in Q[q][t] has polynomial
        // coefficients, so no denominator clearing may happen here.
        let coeffs: Vec<PolynomialQ> = q
            .iter()
            .map(|f| f.as_polynomial().expect("polynomial quotient"))
            .collect();
        PolynomialQT::from_t_coefficients(&coeffs)
    }

    /// Bivariate gcd, normalized primitive over Z with positive leading
    /// coefficient in the t-major order. gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return normalize_primitive(b);
        }
        if b.is_zero() {
            return normalize_primitive(a);
        }
        if a.is_one() || b.is_one() {
            return Self::one();
        }
        if a == b {
            return normalize_primitive(a);
        }
        let ca = a.content_q();
        let cb = b.content_q();
        let content_gcd = PolynomialQ::gcd(&ca, &cb);
        let xa = a.t_coefficients();
        let xb = b.t_coefficients();
        // A single q-evaluation with both leading t-coefficients alive gives
        // an upper bound on the gcd's t-degree; degree zero proves the gcd is
        // pure q-content. This settles nearly every call cheaply.
        let t_coprime = xa.len() == 1
            || xb.len() == 1
            || projected_t_gcd_degree(&xa, &xb) == Some(0);
        if t_coprime {
            return normalize_primitive(&Self::from_polyq(&content_gcd));
        }
        let mut x = strip_content(xa);
        let mut y = strip_content(xb);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = t_pseudo_rem(&x, &y);
            x = y;
            y = strip_content(r);
        }
        let gp = PolynomialQT::from_t_coefficients(&x);
        let prod = &gp * &Self::from_polyq(&content_gcd);
        normalize_primitive(&prod)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn rfq(p: &PolynomialQ) -> RationalFunctionQ {
    RationalFunctionQ::from_poly(p.clone())
}

/// Ascending-in-t coefficients over the field Q(q).
fn to_uni(p: &PolynomialQT) -> Vec<RationalFunctionQ> {
    p.t_coefficients().into_iter().map(|c| rfq(&c)).collect()
}

fn uni_trim(v: &mut Vec<RationalFunctionQ>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_trim(v: &mut Vec<PolynomialQ>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Divide the t-coefficients by their common q-content; trimmed.
fn strip_content(coeffs: Vec<PolynomialQ>) -> Vec<PolynomialQ> {
    let mut v = coeffs;
    poly_trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut g = PolynomialQ::zero();
    for c in &v {
        g = PolynomialQ::gcd(&g, c);
        if g.is_one() {
            return v;
        }
    }
    v.into_iter().map(|c| c.div_exact(&g)).collect()
}

/// The t-degree of the gcd after substituting one sample value for q, when a
/// sample keeping both leading coefficients nonzero exists. The projected
/// degree can only overshoot the true one, never undershoot it.
fn projected_t_gcd_degree(x: &[PolynomialQ], y: &[PolynomialQ]) -> Option<usize> {
    for q0 in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
        let q0 = rat(q0);
        if x.last().unwrap().eval(&q0).is_zero() || y.last().unwrap().eval(&q0).is_zero() {
            continue;
        }
        let a: Vec<Rational> = x.iter().map(|c| c.eval(&q0)).collect();
        let b: Vec<Rational> = y.iter().map(|c| c.eval(&q0)).collect();
        return Some(rational_poly_gcd_degree(a, b));
    }
    None
}

/// Degree of the gcd of two nonzero rational-coefficient polynomials given
/// ascending, top-trimmed coefficients.
fn rational_poly_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    while !b.is_empty() {
        let db = b.len() - 1;
        let lead = b[db].clone();
        while a.len() > db {
            let c = a.last().unwrap() / &lead;
            let shift = a.len() - 1 - db;
            for (i, bc) in b.iter().enumerate() {
                let s = bc * &c;
                a[shift + i] -= s;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Fraction-free remainder in t with Q[q] coefficients, up to content: the
/// dividend is scaled by the divisor's leading coefficient instead of
/// dividing, and the common q-content is stripped after every elimination
/// step to stop the coefficients from swelling. Gcd use only.
fn t_pseudo_rem(a: &[PolynomialQ], d: &[PolynomialQ]) -> Vec<PolynomialQ> {
    let dd = d.len() - 1;
    let lc = d.last().expect("nonzero divisor").clone();
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let c = r.last().unwrap().clone();
        for entry in r.iter_mut() {
            *entry = &*entry * &lc;
        }
        for (i, dc) in d.iter().enumerate() {
            let sub = dc * &c;
            r[shift + i] = &r[shift + i] - &sub;
        }
        r = strip_content(r);
    }
    r
}

fn uni_div_exact(a: &[RationalFunctionQ], b: &[RationalFunctionQ]) -> Vec<RationalFunctionQ> {
    let mut r: Vec<RationalFunctionQ> = a.to_vec();
    uni_trim(&mut r);
    let mut b = b.to_vec();
    uni_trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = b[db].recip().expect("nonzero leading coefficient");
    if r.is_empty() {
        return Vec::new();
    }
    let mut q = vec![RationalFunctionQ::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let c = r.last().unwrap().clone() * lead_inv.clone();
        let shift = r.len() - 1 - db;
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = c.clone() * bc.clone();
            r[shift + i] = r[shift + i].clone() - t;
        }
        uni_trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Scale to integer coefficients, content 1, positive leading coefficient.
fn normalize_primitive(p: &PolynomialQT) -> PolynomialQT {
    if p.is_zero() {
        return PolynomialQT::zero();
    }
    let mut denom_lcm = crate::rational::Integer::one();
    for (_, _, c) in p.terms() {
        denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
    }
    let mut content = crate::rational::Integer::zero();
    for (_, _, c) in p.terms() {
        content = num::integer::gcd(content, c.numer() * (&denom_lcm / c.denom()));
    }
    if p.leading_coeff().is_negative() {
        content = -content;
    }
    let scale = Rational::new(denom_lcm, content);
    let terms = p
        .terms
        .iter()
        .map(|(k, c)| (*k, c * &scale))
        .collect();
    PolynomialQT { terms }
}

impl Add for &PolynomialQT {
    type Output = PolynomialQT;
    fn add(self, rhs: &PolynomialQT) -> PolynomialQT {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            let entry = terms.entry(*k).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        PolynomialQT { terms }
    }
}

impl Sub for &PolynomialQT {
    type Output = PolynomialQT;
    fn sub(self, rhs: &PolynomialQT) -> PolynomialQT {
        self + &(-rhs)
    }
}

impl Neg for &PolynomialQT {
    type Output = PolynomialQT;
    fn neg(self) -> PolynomialQT {
        PolynomialQT {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &PolynomialQT {
    type Output = PolynomialQT;
    fn mul(self, rhs: &PolynomialQT) -> PolynomialQT {
        let mut terms: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(ta, qa), ca) in &self.terms {
            for (&(tb, qb), cb) in &rhs.terms {
                let k = (ta + tb, qa + qb);
                let entry = terms.entry(k).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PolynomialQT { terms }
    }
}

impl fmt::Display for PolynomialQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(te, qe), c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || (qe == 0 && te == 0) {
                if a.denom().is_one() {
                    parts.push(a.numer().to_string());
                } else {
                    parts.push(format!("{}/{}", a.numer(), a.denom()));
                }
            }
            if qe == 1 {
                parts.push("q".into());
            } else if qe > 1 {
                parts.push(format!("q^{qe}"));
            }
            if te == 1 {
                parts.push("t".into());
            } else if te > 1 {
                parts.push(format!("t^{te}"));
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolynomialQT({self})")
    }
}

/// Rational function in (q, t), canonical at all times.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunctionQT {
    num: PolynomialQT,
    den: PolynomialQT,
}

impl RationalFunctionQT {
    pub fn new(num: PolynomialQT, den: PolynomialQT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RationalFunctionQT { num, den };
        f.canonicalize();
        Ok(f)
    }

    pub fn from_poly(p: PolynomialQT) -> Self {
        Self::new(p, PolynomialQT::one()).expect("denominator one")
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(PolynomialQT::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(crate::rational::rat(c))
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolynomialQT::one();
            return;
        }
        if !self.num.is_one() && !self.den.is_one() {
            let g = PolynomialQT::gcd(&self.num, &self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(&g);
                self.den = self.den.div_exact(&g);
            }
        }
        // Shared rational scale: both parts integer-primitive jointly.
        let pn = normalize_primitive(&self.num);
        let pd = normalize_primitive(&self.den);
        // Recover the scales sn, sd with num = sn*pn etc. via leading coefficients.
        let sn = self.num.leading_coeff() / pn.leading_coeff();
        let sd = self.den.leading_coeff() / pd.leading_coeff();
        let s = sn / sd;
        self.num = scale_qt(&pn, &Rational::from_integer(s.numer().clone()));
        self.den = scale_qt(&pd, &Rational::from_integer(s.denom().clone()));
    }

    pub fn numerator(&self) -> &PolynomialQT {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialQT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// ((t, q) degrees of numerator, (t, q) degrees of denominator).
    pub fn num_den_degrees(&self) -> ((usize, usize), (usize, usize)) {
        (self.num.degrees(), self.den.degrees())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Substitute t = q; errors when the denominator collapses to zero.
    pub fn specialize_t_to_q(&self) -> Result<RationalFunctionQ> {
        let den = self.den.specialize_t_to_q();
        if den.is_zero() {
            return Err(Error::PoleAt("t = q".into()));
        }
        RationalFunctionQ::new(self.num.specialize_t_to_q(), den)
    }

    pub fn eval(&self, q0: &Rational, t0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0, t0);
        if d.is_zero() {
            return Err(Error::PoleAt(format!("(q, t) = ({q0}, {t0})")));
        }
        Ok(self.num.eval(q0, t0) / d)
    }
}

fn scale_qt(p: &PolynomialQT, c: &Rational) -> PolynomialQT {
    if c.is_zero() {
        return PolynomialQT::zero();
    }
    PolynomialQT {
        terms: p.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
    }
}

impl Add for RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        // Combine over the least common denominator so the closing reduction
        // has little left to cancel.
        let g = PolynomialQT::gcd(&self.den, &rhs.den);
        let (la, lb) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (rhs.den.div_exact(&g), self.den.div_exact(&g))
        };
        let num = &(&self.num * &la) + &(&rhs.num * &lb);
        let den = &self.den * &la;
        RationalFunctionQT::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn neg(self) -> Self {
        RationalFunctionQT {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-cancel first; both inputs are canonical, so what remains is
        // coprime and the closing reduction is certified cheap.
        let g1 = PolynomialQT::gcd(&self.num, &rhs.den);
        let g2 = PolynomialQT::gcd(&rhs.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num, rhs.den)
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num, self.den)
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RationalFunctionQT::new(&n1 * &n2, &d1 * &d2).expect("nonzero denominator")
    }
}

impl Div for RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero rational function")
    }
}

impl Zero for RationalFunctionQT {
    fn zero() -> Self {
        RationalFunctionQT {
            num: PolynomialQT::zero(),
            den: PolynomialQT::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunctionQT {
    fn one() -> Self {
        RationalFunctionQT {
            num: PolynomialQT::one(),
            den: PolynomialQT::one(),
        }
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
}

impl fmt::Display for RationalFunctionQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunctionQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQT({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    fn one_minus(a: usize, b: usize) -> PolynomialQT {
        PolynomialQT::one_minus_qt(a, b)
    }

    // ================= polynomial layer =================

    #[test]
    fn mul_and_specialize() {
        // (1 - q t)(1 + t) = 1 + t - q t - q t^2
        let p = &one_minus(1, 1) * &(&PolynomialQT::one() + &PolynomialQT::monomial(rat(1), 0, 1));
        assert_eq!(p.eval(&rat_frac(1, 2), &rat(2)), rat(0) * rat(3) / rat(1)); // (1 - 1)(3) = 0
        assert_eq!(p.eval(&rat(2), &rat(3)), rat(-5) * rat(4)); // (1-6)(1+3)
        // t = q sends 1 - q t^2 to 1 - q^3.
        let s = one_minus(1, 2).specialize_t_to_q();
        assert_eq!(s, PolynomialQ::one_minus_q_pow(3));
    }

    #[test]
    fn gcd_pulls_out_common_factor() {
        let a = &one_minus(1, 1) * &one_minus(0, 1); // (1 - qt)(1 - t)
        let b = &one_minus(1, 1) * &one_minus(1, 0); // (1 - qt)(1 - q)
        let g = PolynomialQT::gcd(&a, &b);
        // Primitive positive-leading form of +-(1 - q t).
        let target = normalize_primitive(&one_minus(1, 1));
        assert_eq!(g, target);
        // Coprime pair gives a constant.
        let g2 = PolynomialQT::gcd(&one_minus(1, 0), &one_minus(0, 1));
        assert_eq!(g2, PolynomialQT::one());
    }

    #[test]
    fn div_exact_round_trips() {
        let a = &one_minus(2, 1) * &one_minus(1, 2);
        let q = a.div_exact(&one_minus(1, 2));
        assert_eq!(q, one_minus(2, 1));
    }

    // ================= rational function layer =================

    #[test]
    fn canonical_cancellation() {
        // (1 - q^2 t^2)/(1 - q t) = 1 + q t.
        let num = one_minus(2, 2);
        let f = RationalFunctionQT::new(num, one_minus(1, 1)).unwrap();
        assert!(f.denominator().is_one());
        let expect = &PolynomialQT::one() + &PolynomialQT::monomial(rat(1), 1, 1);
        assert_eq!(f.numerator(), &expect);
    }

    #[test]
    fn arithmetic_and_field_axioms() {
        let u = RationalFunctionQT::new(
            &one_minus(1, 0) * &(&PolynomialQT::one() + &PolynomialQT::monomial(rat(1), 0, 1)),
            one_minus(1, 1),
        )
        .unwrap(); // (1-q)(1+t)/(1-qt)
        let v = RationalFunctionQT::from_poly(one_minus(0, 1));
        let w = u.clone() * v.clone() / v.clone();
        assert_eq!(w, u);
        let z = u.clone() - u.clone();
        assert!(z.is_zero());
        let s = u.clone() + v.clone();
        // Evaluate both sides at a generic point.
        let q0 = rat_frac(1, 3);
        let t0 = rat_frac(1, 5);
        assert_eq!(
            s.eval(&q0, &t0).unwrap(),
            u.eval(&q0, &t0).unwrap() + v.eval(&q0, &t0).unwrap()
        );
    }

    #[test]
    fn t_to_q_specialization() {
        let f = RationalFunctionQT::new(one_minus(1, 1), one_minus(0, 1)).unwrap();
        // (1 - q t)/(1 - t) at t = q is (1 - q^2)/(1 - q) = 1 + q.
        let g = f.specialize_t_to_q().unwrap();
        assert_eq!(
            g,
            RationalFunctionQ::from_poly(PolynomialQ::from_coeffs(vec![rat(1), rat(1)]))
        );
    }
}
