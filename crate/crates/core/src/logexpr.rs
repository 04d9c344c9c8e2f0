//! Exact Q-linear combinations of 1 and logarithms of primes.
//!
//! Every threshold quantity in the criteria has this shape, so equality
//! is decidable symbolically and strict comparisons can be certified by
//! evaluating intervals at increasing precision.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Rat;
use crate::interval::Interval;
use crate::primes::factorize;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LogExpr {
    pub constant: Rat,
    /// prime -> coefficient of ln(prime)
    pub logs: BTreeMap<BigUint, Rat>,
}

impl LogExpr {
    pub fn zero() -> Self {
        LogExpr { constant: Rat::zero(), logs: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        LogExpr { constant: c, logs: BTreeMap::new() }
    }

    /// c * ln(q) for a prime q.
    pub fn ln_prime(q: &BigUint, c: Rat) -> Self {
        let mut e = Self::zero();
        e.add_log(q.clone(), c);
        e
    }

    /// ln(n) for a positive integer.
    pub fn ln_int(n: &BigUint) -> Self {
        assert!(!n.is_zero(), "ln(0)");
        let mut e = Self::zero();
        for (q, k) in factorize(n) {
            e.add_log(q, Rat::from_integer(BigInt::from(k)));
        }
        e
    }

    /// ln|x| for a nonzero rational.
    pub fn ln_rat(x: &Rat) -> Self {
        assert!(!x.is_zero(), "ln(0)");
        let n = x.numer().magnitude();
        let d = x.denom().magnitude();
        Self::ln_int(n).sub(&Self::ln_int(d))
    }

    fn add_log(&mut self, q: BigUint, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.logs.entry(q.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.logs.remove(&q);
        }
    }

    pub fn add(&self, o: &LogExpr) -> LogExpr {
        let mut r = self.clone();
        r.constant += &o.constant;
        for (q, c) in &o.logs {
            r.add_log(q.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &LogExpr) -> LogExpr {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> LogExpr {
        if c.is_zero() {
            return Self::zero();
        }
        LogExpr {
            constant: &self.constant * c,
            logs: self.logs.iter().map(|(q, k)| (q.clone(), k * c)).collect(),
        }
    }

    /// Exact zero test. Logarithms of distinct primes are linearly
    /// independent over Q together with 1, so this is also the real test.
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.logs.is_empty()
    }

    pub fn eval(&self, bits: u32) -> Interval {
        let mut acc = Interval::point(self.constant.clone());
        for (q, c) in &self.logs {
            let l = Interval::ln(&Rat::from_integer(BigInt::from_biguint(Sign::Plus, q.clone())), bits);
            acc = acc.add(&l.scale(c));
        }
        acc
    }

    pub fn approx(&self) -> f64 {
        self.eval(64).midpoint_f64()
    }

    /// Sign of the real value, certified by escalating precision.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::NoSign;
        }
        let mut bits = 64;
        loop {
            let v = self.eval(bits);
            if v.lo.is_positive() {
                return Sign::Plus;
            }
            if v.hi.is_negative() {
                return Sign::Minus;
            }
            // Nonzero by independence of prime logarithms; precision must
            // eventually separate it from 0.
            bits *= 2;
            assert!(bits <= 1 << 20, "sign undecided at {bits} bits");
        }
    }

    pub fn is_one_term(&self) -> bool {
        self.constant.is_one() && self.logs.is_empty()
    }
}

impl std::fmt::Display for LogExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() || self.logs.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (q, c) in &self.logs {
            parts.push(if c.is_one() { format!("ln {q}") } else { format!("({c})·ln {q}") });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for LogExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of a strict inequality `lhs > rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

/// Decides `lhs > rhs`, doubling precision from 64 bits up to `max_bits`.
/// Returns the verdict together with the final enclosures.
pub fn compare(lhs: &LogExpr, rhs: &LogExpr, max_bits: u32) -> (Verdict, Interval, Interval) {
    let diff = lhs.sub(rhs);
    let mut bits = 64;
    loop {
        let (l, r) = (lhs.eval(bits), rhs.eval(bits));
        if diff.is_zero() {
            return (Verdict::Fails, l, r);
        }
        match l.gt(&r) {
            Some(true) => return (Verdict::Holds, l, r),
            Some(false) => return (Verdict::Fails, l, r),
            None if bits >= max_bits => return (Verdict::Indeterminate, l, r),
            None => bits = (bits * 2).min(max_bits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn canonical_form() {
        let a = LogExpr::ln_int(&BigUint::from(12u32));
        let b = LogExpr::ln_int(&BigUint::from(4u32)).add(&LogExpr::ln_int(&BigUint::from(3u32)));
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
        assert!(LogExpr::ln_rat(&rat(3, 3)).is_zero());
    }

    #[test]
    fn signs() {
        // ln 3 - ln 2 > 0; 2 ln 2 - ln 4 = 0; 1 - ln 3 < 0
        let e = LogExpr::ln_int(&3u32.into()).sub(&LogExpr::ln_int(&2u32.into()));
        assert_eq!(e.sign(), Sign::Plus);
        let e = LogExpr::constant(int(1)).sub(&LogExpr::ln_int(&3u32.into()));
        assert_eq!(e.sign(), Sign::Minus);
    }

    #[test]
    fn compare_strict() {
        let l = LogExpr::ln_int(&4u32.into());
        let r = LogExpr::ln_int(&2u32.into()).scale(&int(2));
        assert_eq!(compare(&l, &r, 1024).0, Verdict::Fails);
        let r = LogExpr::ln_int(&3u32.into());
        assert_eq!(compare(&l, &r, 1024).0, Verdict::Holds);
    }
}
