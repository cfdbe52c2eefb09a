//! Lattice point utilities: window enumeration, cone predicates, and a tiny
//! deterministic generator for sampling test data reproducibly.

/// All points of [lo, hi]^n in lexicographic order. Empty when lo > hi.
pub fn window(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if lo > hi {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut p = vec![lo; n];
    loop {
        out.push(p.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if p[i] < hi {
                p[i] += 1;
                for x in p.iter_mut().skip(i + 1) {
                    *x = lo;
                }
                break;
            }
        }
    }
}

/// Weakly increasing points of [lo, hi]^n.
pub fn sorted_window(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    window(n, lo, hi)
        .into_iter()
        .filter(|p| is_weakly_increasing(p))
        .collect()
}

pub fn is_weakly_increasing(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] <= w[1])
}

pub fn is_strictly_increasing(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] < w[1])
}

pub fn is_weakly_decreasing(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

/// p + shift, componentwise.
pub fn shifted(p: &[i64], shift: &[i64]) -> Vec<i64> {
    debug_assert_eq!(p.len(), shift.len());
    p.iter().zip(shift).map(|(a, b)| a + b).collect()
}

/// -p, componentwise.
pub fn negated(p: &[i64]) -> Vec<i64> {
    p.iter().map(|&x| -x).collect()
}

pub fn sum(p: &[i64]) -> i64 {
    p.iter().sum()
}

/// Splitmix-style deterministic generator; quality is plenty for sampling
/// test lattice data and must stay identical across platforms.
#[derive(Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 {
            state: seed.wrapping_add(0x9e3779b97f4a7c15),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi] inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_counts() {
        assert_eq!(window(2, -1, 1).len(), 9);
        assert_eq!(window(3, 0, 2).len(), 27);
        assert_eq!(window(1, 2, 2), vec![vec![2]]);
        assert!(window(2, 1, 0).is_empty());
        // Lexicographic order.
        let w = window(2, 0, 1);
        assert_eq!(w, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn sorted_window_counts_multisets() {
        // Weakly increasing tuples from a 3-letter alphabet: C(3+2-1, 2) = 6.
        assert_eq!(sorted_window(2, 0, 2).len(), 6);
        // C(5+4-1, 4) = 70.
        assert_eq!(sorted_window(4, 0, 4).len(), 70);
    }

    #[test]
    fn cone_predicates() {
        assert!(is_weakly_increasing(&[0, 0, 1]));
        assert!(!is_weakly_increasing(&[1, 0]));
        assert!(is_strictly_increasing(&[-1, 0, 4]));
        assert!(!is_strictly_increasing(&[0, 0]));
        assert!(is_weakly_decreasing(&[2, 2, -1]));
    }

    #[test]
    fn generator_is_deterministic() {
        let mut a = Lcg64::new(42);
        let mut b = Lcg64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = Lcg64::new(7);
        let draws: Vec<i64> = (0..200).map(|_| c.int_in(-1, 3)).collect();
        assert!(draws.iter().all(|&x| (-1..=3).contains(&x)));
        // All five values appear over 200 draws.
        for v in -1..=3 {
            assert!(draws.contains(&v));
        }
    }
}
