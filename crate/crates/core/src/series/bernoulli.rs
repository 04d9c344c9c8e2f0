use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binom, int, Rat};
use crate::series::Poly;

/// B_0..=B_n from Σ_{j<m} C(m, j) B_j = 0 (m >= 2), with B_1 = -1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b = Bernoulli::new();
    b.extend_to(n);
    b.b
}

/// Growable table of Bernoulli numbers owned by the caller.
#[derive(Clone, Debug, Default)]
pub struct Bernoulli {
    b: Vec<Rat>,
}

impl Bernoulli {
    pub fn new() -> Self {
        Bernoulli { b: vec![int(1)] }
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.b.len() <= n {
            let k = self.b.len();
            // C(k+1, k) B_k = -Σ_{j<k} C(k+1, j) B_j
            let s: Rat = (0..k).map(|j| &self.b[j] * Rat::from_integer(binom(k as u64 + 1, j as u64))).sum();
            self.b.push(-s / int(k as i64 + 1));
        }
    }

    pub fn get(&mut self, k: usize) -> Rat {
        self.extend_to(k);
        self.b[k].clone()
    }

    pub fn table(&mut self, n: usize) -> &[Rat] {
        self.extend_to(n);
        &self.b[..=n]
    }
}

/// B_k(x) = Σ_j C(k, j) B_j x^{k-j}.
pub fn bernoulli_poly(k: usize) -> Poly {
    let b = bernoulli_numbers(k);
    Poly::new((0..=k).map(|i| &b[k - i] * Rat::from_integer(binom(k as u64, i as u64))).collect())
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::from(1);
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j - 1] + &row[j] * BigInt::from(j);
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, valuation};

    #[test]
    fn small_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn polynomials() {
        assert_eq!(bernoulli_poly(0), Poly::one());
        assert_eq!(bernoulli_poly(2), Poly::new(vec![rat(1, 6), int(-1), int(1)]));
        assert_eq!(bernoulli_poly(3).eval(&int(0)), int(0));
        for n in 1..=20usize {
            let b = bernoulli_poly(n);
            assert_eq!(b.deriv(), bernoulli_poly(n - 1).scale(&int(n as i64)));
            assert_eq!(b.delta(&int(1)), Poly::monomial(int(n as i64), n - 1));
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling2(5, 5), BigInt::from(1));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(3, 0), BigInt::from(0));
        assert_eq!(stirling2(0, 3), BigInt::from(0));
    }

    #[test]
    fn staudt_clausen_bound() {
        let b = bernoulli_numbers(40);
        for p in crate::primes::primes_up_to(37) {
            for (n, bn) in b.iter().enumerate() {
                if let Some(v) = valuation(bn, p) {
                    assert!(v >= -1, "|B_{n}|_{p} > {p}");
                }
            }
        }
    }
}
