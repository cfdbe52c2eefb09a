//! q-deformed gl(n) Whittaker functions on the integer lattice.
//!
//! The spectral variables enter only through z_k = q^{lambda_k}, so a value at
//! a lattice point p in Z^n is a Laurent polynomial in z_1..z_n over Q(q).
//! Three independent evaluation routes are implemented and cross-checked:
//!
//! * `psi_direct`: the sum over Gelfand-Zetlin patterns with boundary p, each
//!   pattern weighted by z^{(s_1-s_0, ..., s_n-s_{n-1})} times a ratio of
//!   q-factorials (interior-row gaps above, interlacing gaps below);
//! * `psi_tilde`: the same sum after clearing the boundary factorials, with
//!   the pattern weight collapsing to a product of q-binomial coefficients,
//!   so coefficients are polynomials in q with nonnegative integer entries;
//! * `WhittakerEvaluator::psi` (and `psi_recursive`): the rank recursion that
//!   sums over rows interlacing the boundary, with the rank n variable paying
//!   z_n^{sum(p) - sum(s)} and the lower rank evaluated recursively.
//!
//! psi_tilde = delta_factor * psi_direct, and the recursion agrees with the
//! direct sum everywhere, including points off the dominant cone where every
//! route gives zero.

use crate::lattice::{is_weakly_increasing, sum};
use crate::laurent::LaurentPolynomial;
use crate::polyq::PolynomialQ;
use crate::qcomb::{enumerate_gz, enumerate_interlacing, q_binomial, q_factorial, theta};
use crate::ratfun::RationalFunctionQ;
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// A Whittaker value: Laurent polynomial in z_1..z_n over Q(q).
pub type WhittakerValue = LaurentPolynomial<RationalFunctionQ>;

/// Boundary factorial product (p_2 - p_1)_q! ... (p_n - p_{n-1})_q!.
/// Errors off the dominant cone.
pub fn delta_factor(p: &[i64]) -> Result<PolynomialQ> {
    if !is_weakly_increasing(p) {
        return Err(Error::OutsideDominantCone(p.to_vec()));
    }
    let mut acc = PolynomialQ::one();
    for w in p.windows(2) {
        acc = &acc * &q_factorial(w[1] - w[0])?;
    }
    Ok(acc)
}

/// Theta-gated variant of `delta_factor`: zero off the cone instead of an
/// error. Used as the lattice measure density.
pub fn delta_prime(p: &[i64]) -> PolynomialQ {
    if !is_weakly_increasing(p) {
        return PolynomialQ::zero();
    }
    delta_factor(p).expect("on the cone")
}

/// Interlacing kernel Q(upper, lower): the reciprocal of the interlacing-gap
/// factorials, gated to zero unless lower interlaces upper.
/// Errors unless len(lower) + 1 = len(upper).
pub fn kernel_q(upper: &[i64], lower: &[i64]) -> Result<RationalFunctionQ> {
    if lower.len() + 1 != upper.len() {
        return Err(Error::VariableMismatch(upper.len(), lower.len() + 1));
    }
    let mut den = PolynomialQ::one();
    for (i, &s) in lower.iter().enumerate() {
        let a = s - upper[i];
        let b = upper[i + 1] - s;
        if !theta(a) || !theta(b) {
            return Ok(RationalFunctionQ::zero());
        }
        den = &den * &q_factorial(a)?;
        den = &den * &q_factorial(b)?;
    }
    RationalFunctionQ::new(PolynomialQ::one(), den)
}

/// Direct Gelfand-Zetlin sum. Zero off the dominant cone.
pub fn psi_direct(p: &[i64]) -> WhittakerValue {
    let n = p.len();
    let mut acc = WhittakerValue::zero(n);
    for pat in enumerate_gz(p) {
        let rows = pat.rows();
        // Interior-row numerator: rows of length 2..n-1.
        let mut num = PolynomialQ::one();
        for row in rows.iter().take(n.saturating_sub(1)).skip(1) {
            for w in row.windows(2) {
                num = &num * &q_factorial(w[1] - w[0]).expect("interlacing gap");
            }
        }
        // Interlacing-gap denominator between consecutive rows.
        let mut den = PolynomialQ::one();
        for k in 0..n - 1 {
            let (lo, hi) = (&rows[k], &rows[k + 1]);
            for i in 0..lo.len() {
                den = &den * &q_factorial(lo[i] - hi[i]).expect("interlacing gap");
                den = &den * &q_factorial(hi[i + 1] - lo[i]).expect("interlacing gap");
            }
        }
        let coeff = RationalFunctionQ::new(num, den).expect("nonzero denominator");
        acc = acc
            .checked_add(&WhittakerValue::monomial(n, pat.weight(), coeff))
            .expect("same rank");
    }
    acc
}

/// Binomial form: delta_factor(p) * psi_direct(p), computed directly as a sum
/// of q-binomial products over patterns. Coefficients are polynomials in q
/// with nonnegative integer coefficients. Zero off the dominant cone.
pub fn psi_tilde(p: &[i64]) -> WhittakerValue {
    let n = p.len();
    let mut acc = WhittakerValue::zero(n);
    for pat in enumerate_gz(p) {
        let rows = pat.rows();
        let mut coeff = PolynomialQ::one();
        for k in 0..n - 1 {
            let (lo, hi) = (&rows[k], &rows[k + 1]);
            for i in 0..lo.len() {
                coeff = &coeff * &q_binomial(hi[i + 1] - hi[i], lo[i] - hi[i]);
            }
        }
        acc = acc
            .checked_add(&WhittakerValue::monomial(
                n,
                pat.weight(),
                RationalFunctionQ::from_poly(coeff),
            ))
            .expect("same rank");
    }
    acc
}

/// Rank-recursive evaluator with memoization keyed by (rank, point). Values at
/// rank m are stored in m variables and lifted when the rank above consumes
/// them. Shared immutable use is thread-safe.
pub struct WhittakerEvaluator {
    cache: Mutex<HashMap<(usize, Vec<i64>), WhittakerValue>>,
}

impl Default for WhittakerEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl WhittakerEvaluator {
    pub fn new() -> Self {
        WhittakerEvaluator {
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Whittaker value at p via the interlacing recursion.
    pub fn psi(&self, p: &[i64]) -> WhittakerValue {
        let n = p.len();
        assert!(n >= 1, "rank must be at least 1");
        let key = (n, p.to_vec());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let value = self.compute(p);
        self.cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| value.clone());
        value
    }

    fn compute(&self, p: &[i64]) -> WhittakerValue {
        let n = p.len();
        if n == 1 {
            return WhittakerValue::monomial(1, vec![p[0]], RationalFunctionQ::one());
        }
        let mut acc = WhittakerValue::zero(n);
        // Off-cone boundaries admit no interlacing row: the sum is empty.
        for s in enumerate_interlacing(p) {
            let kernel = kernel_q(p, &s).expect("length checked");
            debug_assert!(!kernel.is_zero(), "enumerated row interlaces");
            let gaps = delta_factor(&s).expect("interlacing row is sorted");
            let scale = RationalFunctionQ::from_poly(gaps) * kernel;
            let lower = self.psi(&s).lift(n);
            let mut weight = vec![0i64; n];
            weight[n - 1] = sum(p) - sum(&s);
            let term = lower.mul_monomial(&weight, &scale);
            acc = acc.checked_add(&term).expect("same rank");
        }
        acc
    }
}

/// One-shot recursive evaluation (a fresh evaluator per call).
pub fn psi_recursive(p: &[i64]) -> WhittakerValue {
    WhittakerEvaluator::new().psi(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{sorted_window, window};
    use crate::rational::rat;

    fn rf_poly(coeffs: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::from_poly(PolynomialQ::from_coeffs(
            coeffs.iter().map(|&c| rat(c)).collect(),
        ))
    }

    fn inv_fact(gaps: &[i64]) -> RationalFunctionQ {
        let mut den = PolynomialQ::one();
        for &g in gaps {
            den = &den * &q_factorial(g).unwrap();
        }
        RationalFunctionQ::new(PolynomialQ::one(), den).unwrap()
    }

    /// Independent rank-2 formula: a single sum over the middle entry.
    fn gl2_oracle(p1: i64, p2: i64) -> WhittakerValue {
        let mut acc = WhittakerValue::zero(2);
        if p1 > p2 {
            return acc;
        }
        for x in p1..=p2 {
            let coeff = inv_fact(&[x - p1, p2 - x]);
            let term = WhittakerValue::monomial(2, vec![x, p1 + p2 - x], coeff);
            acc = acc.checked_add(&term).unwrap();
        }
        acc
    }

    // ================= delta factors and kernel =================

    #[test]
    fn delta_factor_values_and_cone_error() {
        assert!(delta_factor(&[5]).unwrap().is_one());
        assert_eq!(delta_factor(&[0, 2]).unwrap(), q_factorial(2).unwrap());
        assert_eq!(
            delta_factor(&[-1, 1, 2]).unwrap(),
            &q_factorial(2).unwrap() * &q_factorial(1).unwrap()
        );
        assert!(matches!(
            delta_factor(&[1, 0]),
            Err(Error::OutsideDominantCone(_))
        ));
        assert_eq!(delta_prime(&[1, 0]), PolynomialQ::zero());
        assert_eq!(delta_prime(&[0, 2]), q_factorial(2).unwrap());
    }

    #[test]
    fn kernel_gates_and_values() {
        // Q((0,2),(1)) = 1/((1)_q!(1)_q!).
        assert_eq!(kernel_q(&[0, 2], &[1]).unwrap(), inv_fact(&[1, 1]));
        // Outside the interlacing window the kernel vanishes.
        assert!(kernel_q(&[0, 2], &[3]).unwrap().is_zero());
        assert!(kernel_q(&[0, 2], &[-1]).unwrap().is_zero());
        // Length contract.
        assert!(kernel_q(&[0, 2], &[0, 1]).is_err());
        // Frozen window: a single admissible row with trivial factorials.
        assert!(kernel_q(&[1, 1], &[1]).unwrap().is_one());
    }

    // ================= direct sum =================

    #[test]
    fn rank_one_is_a_monomial() {
        for p in [-2i64, 0, 3] {
            let v = psi_direct(&[p]);
            assert_eq!(v.num_terms(), 1);
            assert!(v.coefficient_of(&[p]).is_one());
        }
    }

    #[test]
    fn rank_two_hand_values() {
        // psi(0,0) = 1.
        let v = psi_direct(&[0, 0]);
        assert_eq!(v, WhittakerValue::one(2));
        // psi(0,1) = (z1 + z2)/(1-q).
        let v = psi_direct(&[0, 1]);
        assert_eq!(v.num_terms(), 2);
        assert_eq!(v.coefficient_of(&[1, 0]), inv_fact(&[1]));
        assert_eq!(v.coefficient_of(&[0, 1]), inv_fact(&[1]));
        // psi(0,2): z1^2/(2)!, z1 z2/(1)!(1)!, z2^2/(2)!.
        let v = psi_direct(&[0, 2]);
        assert_eq!(v.coefficient_of(&[2, 0]), inv_fact(&[2]));
        assert_eq!(v.coefficient_of(&[1, 1]), inv_fact(&[1, 1]));
        assert_eq!(v.coefficient_of(&[0, 2]), inv_fact(&[2]));
        // Off the cone the function vanishes identically.
        assert!(psi_direct(&[1, 0]).is_zero());
        assert!(psi_direct(&[0, 2, 1]).is_zero());
    }

    #[test]
    fn rank_two_matches_single_sum_oracle() {
        for p in window(2, -2, 2) {
            assert_eq!(psi_direct(&p), gl2_oracle(p[0], p[1]), "p {p:?}");
        }
    }

    // ================= binomial form =================

    #[test]
    fn tilde_hand_value_and_positivity() {
        // psi_tilde(0,2) = z1^2 + (1+q) z1 z2 + z2^2.
        let v = psi_tilde(&[0, 2]);
        assert_eq!(v.coefficient_of(&[2, 0]), rf_poly(&[1]));
        assert_eq!(v.coefficient_of(&[1, 1]), rf_poly(&[1, 1]));
        assert_eq!(v.coefficient_of(&[0, 2]), rf_poly(&[1]));
        assert_eq!(v.num_terms(), 3);
    }

    #[test]
    fn tilde_equals_delta_times_direct() {
        for n in 1..=3usize {
            for p in sorted_window(n, -1, 2) {
                let delta = RationalFunctionQ::from_poly(delta_factor(&p).unwrap());
                let lhs = psi_tilde(&p);
                let rhs = psi_direct(&p).scalar_mul(&delta);
                assert_eq!(lhs, rhs, "p {p:?}");
            }
        }
    }

    #[test]
    fn tilde_coefficients_are_natural_and_symmetric() {
        for p in sorted_window(3, 0, 3) {
            let v = psi_tilde(&p);
            assert!(v.is_symmetric(), "p {p:?}");
            for (_, c) in v.terms() {
                let poly = c.as_polynomial().expect("polynomial coefficient");
                assert!(poly.has_natural_coeffs(), "p {p:?}");
            }
        }
    }

    // ================= grading and covariance =================

    #[test]
    fn weight_grading() {
        // Every monomial of psi(p) has total z-degree sum(p).
        for p in [vec![0, 2], vec![-1, 1, 2], vec![0, 1, 3]] {
            let v = psi_direct(&p);
            let total: i64 = p.iter().sum();
            for (e, _) in v.terms() {
                assert_eq!(e.iter().sum::<i64>(), total, "p {p:?}");
            }
        }
    }

    #[test]
    fn translation_covariance() {
        // psi(p + k) = (z1...zn)^k psi(p).
        for (p, k) in [(vec![0i64, 2], 3i64), (vec![0, 1, 2], -2), (vec![-1, 0, 1], 1)] {
            let n = p.len();
            let shifted: Vec<i64> = p.iter().map(|&x| x + k).collect();
            let det = WhittakerValue::monomial(n, vec![k; n], RationalFunctionQ::one());
            assert_eq!(psi_direct(&shifted), &psi_direct(&p) * &det);
        }
    }

    // ================= recursion =================

    #[test]
    fn recursion_base_case() {
        let v = psi_recursive(&[3]);
        assert_eq!(v.num_terms(), 1);
        assert!(v.coefficient_of(&[3]).is_one());
    }

    #[test]
    fn recursion_matches_direct_rank_two_and_three() {
        let eval = WhittakerEvaluator::new();
        for p in window(2, -1, 2) {
            assert_eq!(eval.psi(&p), psi_direct(&p), "p {p:?}");
        }
        for p in window(3, 0, 2) {
            assert_eq!(eval.psi(&p), psi_direct(&p), "p {p:?}");
        }
        // A negative-coordinate spot check at rank 3.
        let p = vec![-2, 0, 1];
        assert_eq!(eval.psi(&p), psi_direct(&p));
    }

    #[test]
    fn evaluator_memoization_is_stable() {
        let eval = WhittakerEvaluator::new();
        let a = eval.psi(&[0, 1, 2]);
        let b = eval.psi(&[0, 1, 2]);
        assert_eq!(a, b);
    }
}
