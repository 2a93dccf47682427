use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{binomial, int, Rational};

/// Bernoulli numbers with `B₁ = −1/2`, the coefficients of `x/(eˣ−1) = Σ Bₙ xⁿ/n!`.
pub fn bernoulli_table(upto: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(upto + 1);
    b.push(int(1));
    for m in 1..=upto {
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m + 1, k)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(i: usize) -> Rational {
    bernoulli_table(i).pop().expect("non-empty table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, frac};

    /// Power-series reciprocal of (eˣ−1)/x, independent of the recurrence.
    fn oracle(upto: usize) -> Vec<Rational> {
        let f: Vec<Rational> = (0..=upto).map(|n| Rational::new(1.into(), factorial(n + 1))).collect();
        let mut g = vec![Rational::zero(); upto + 1];
        g[0] = int(1) / &f[0];
        for n in 1..=upto {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += &f[k] * &g[n - k];
            }
            g[n] = -s / &f[0];
        }
        g.into_iter().enumerate().map(|(n, c)| c * Rational::from_integer(factorial(n))).collect()
    }

    #[test]
    fn low_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), frac(-1, 30));
    }

    #[test]
    fn matches_generating_function() {
        assert_eq!(bernoulli_table(24), oracle(24));
    }

    #[test]
    fn odd_values_vanish() {
        let t = bernoulli_table(21);
        for k in 1..=10 {
            assert!(t[2 * k + 1].is_zero(), "B_{}", 2 * k + 1);
        }
    }
}
