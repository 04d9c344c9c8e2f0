//! The denominator quantities den(α)·∏ q^{1/(q-1)} and their integral
//! truncations den(α)^N·∏ q^{⌊N/(q-1)⌋}.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binom_rat, den_vec, int, is_integer, Rat};
use crate::error::{invariant, Result};
use crate::logexpr::LogExpr;
use crate::primes::factorize;

/// Symbolic `den·∏_{q | den} q^{1/(q-1)}`. The real value is irrational in
/// general and is only ever exposed as a [`LogExpr`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuValue {
    #[serde(with = "crate::json::biguint_str")]
    pub den: BigUint,
    /// Prime factorization of `den`, ascending.
    #[serde(with = "crate::json::factor_list")]
    pub factors: Vec<(BigUint, u32)>,
}

impl MuValue {
    pub fn of(alphas: &[Rat]) -> Result<MuValue> {
        let den = den_vec(alphas)?.magnitude().clone();
        let factors = factorize(&den);
        Ok(MuValue { den, factors })
    }

    /// μ_N = den^N · ∏ q^{⌊N/(q-1)⌋}.
    pub fn mu_n(&self, n: u64) -> BigInt {
        let mut r = num_traits::pow(BigInt::from_biguint(Sign::Plus, self.den.clone()), n as usize);
        for (q, _) in &self.factors {
            let qm1 = q - 1u32;
            let e = BigUint::from(n) / qm1;
            let e: usize = e.try_into().expect("exponent fits");
            r *= num_traits::pow(BigInt::from_biguint(Sign::Plus, q.clone()), e);
        }
        r
    }

    /// ln μ = ln den + Σ ln q/(q-1).
    pub fn real_log(&self) -> LogExpr {
        let mut e = LogExpr::ln_int(&self.den);
        for (q, _) in &self.factors {
            let qm1 = Rat::from_integer(BigInt::from_biguint(Sign::Plus, q - 1u32));
            e = e.add(&LogExpr::ln_prime(q, qm1.recip()));
        }
        e
    }

    /// v_p(μ) = v_p(den) + 1/(p-1) when p divides den.
    pub fn vp(&self, p: u64) -> Rat {
        let pb = BigUint::from(p);
        match self.factors.iter().find(|(q, _)| *q == pb) {
            Some((_, e)) => int(*e as i64) + Rat::new(BigInt::one(), BigInt::from(p - 1)),
            None => Rat::zero(),
        }
    }

    /// ln |μ|_p = -v_p(μ)·ln p.
    pub fn log_abs_p(&self, p: u64) -> LogExpr {
        LogExpr::ln_prime(&BigUint::from(p), -self.vp(p))
    }

    /// Exact real value when every irrational factor is integral (only q = 2).
    pub fn exact_value(&self) -> Option<BigUint> {
        if self.factors.iter().all(|(q, _)| *q == BigUint::from(2u32)) {
            let twos = if self.factors.is_empty() { 1u32 } else { 2u32 };
            Some(&self.den * BigUint::from(twos))
        } else {
            None
        }
    }
}

/// μ_N of a list of shifts.
pub fn mu_n(alphas: &[Rat], n: u64) -> Result<BigInt> {
    Ok(MuValue::of(alphas)?.mu_n(n))
}

/// Returns the integer μ_n(α)·(α)_k/k!, failing if it is not integral.
pub fn clears_pochhammer(alpha: &Rat, n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return crate::error::arg(format!("k = {k} exceeds n = {n}"));
    }
    // (α)_k/k! = C(α+k-1, k)
    let v = binom_rat(&(alpha + int(k as i64 - 1)), k) * Rat::from_integer(mu_n(std::slice::from_ref(alpha), n)?);
    if !is_integer(&v) {
        return invariant(format!("μ_{n}({alpha})·({alpha})_{k}/{k}! = {v} is not an integer"));
    }
    Ok(v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{pochhammer, rat};

    #[test]
    fn examples() {
        assert_eq!(MuValue::of(&[rat(1, 2)]).unwrap().exact_value(), Some(4u32.into()));
        assert!(MuValue::of(&[int(0)]).unwrap().real_log().is_zero());
        assert_eq!(MuValue::of(&[rat(1, 3)]).unwrap().vp(3), rat(3, 2));
        assert_eq!(mu_n(&[rat(1, 2)], 2).unwrap(), BigInt::from(16));
        assert_eq!(mu_n(&[rat(7, 9)], 0).unwrap(), BigInt::from(1));
        assert_eq!(mu_n(&[rat(1, 3)], 5).unwrap(), BigInt::from(2187));
        assert_eq!(clears_pochhammer(&rat(1, 2), 2, 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn pochhammer_cleared_exhaustively() {
        for den in 1..=12i64 {
            for num in 0..den {
                let a = rat(num, den);
                for n in 0..=20u64 {
                    for k in 0..=n {
                        let v = pochhammer(&a, k) / Rat::from_integer(crate::arith::factorial(k))
                            * Rat::from_integer(mu_n(std::slice::from_ref(&a), n).unwrap());
                        assert!(is_integer(&v), "α={a} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn log_mu_n_over_n_converges() {
        for a in [rat(1, 2), rat(1, 3), rat(5, 6), rat(3, 10)] {
            let m = MuValue::of(&[a]).unwrap();
            let bound: f64 = m.factors.iter().map(|(q, _)| crate::arith::to_f64(&Rat::from_integer(BigInt::from(q.clone()))).ln()).sum();
            let ml = m.real_log().approx();
            for n in 1..40u64 {
                let lhs = crate::arith::ln_abs_f64(&Rat::from_integer(m.mu_n(n))) / n as f64;
                assert!((lhs - ml).abs() <= bound / n as f64 + 1e-12);
            }
        }
    }
}
