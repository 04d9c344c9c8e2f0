use num_traits::{One, Zero};

use crate::arith::{binom_rat, factorial, int, Rat};
use crate::error::{arg, Result};

/// Power series in z known modulo z^{N+1}; `coeffs.len() == N + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Panics on an empty coefficient list: at least the constant term
    /// must be known.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs truncation order >= 0");
        PowerSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rat::zero(); n + 1])
    }

    pub fn one(n: usize) -> Self {
        let mut c = vec![Rat::zero(); n + 1];
        c[0] = Rat::one();
        Self::new(c)
    }

    /// Embeds a finite coefficient list, padding with zeros to order `n`.
    pub fn from_coeffs(c: &[Rat], n: usize) -> Self {
        Self::new((0..=n).map(|k| c.get(k).cloned().unwrap_or_else(Rat::zero)).collect())
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.trunc_order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=n].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.trunc_order().min(o.trunc_order());
        Self::new((0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.trunc_order().min(o.trunc_order());
        Self::new((0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect())
    }

    pub fn scale(&self, a: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.trunc_order().min(o.trunc_order());
        let mut c = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.trunc_order()), |acc, _| acc.mul(self))
    }

    /// Multiplies by z; the known window grows by one.
    pub fn mul_z(&self) -> Self {
        let mut c = vec![Rat::zero()];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Divides by z; requires a zero constant term and loses one order.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return arg("division by z of a series with nonzero constant term");
        }
        if self.coeffs.len() < 2 {
            return arg("division by z would leave no known coefficients");
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// g(h(z)) for h(0) = 0, by Horner's scheme.
    pub fn compose(&self, h: &Self) -> Result<Self> {
        if !h.coeffs[0].is_zero() {
            return arg("composition needs h(0) = 0");
        }
        let n = self.trunc_order().min(h.trunc_order());
        let h = h.truncate(n);
        let mut acc = Self::zero(n);
        for a in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&h);
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    pub fn exp(n: usize) -> Self {
        Self::new((0..=n).map(|k| Rat::new(1.into(), factorial(k as u64))).collect())
    }

    /// e^z - 1
    pub fn exp_minus_one(n: usize) -> Self {
        let mut s = Self::exp(n);
        s.coeffs[0] = Rat::zero();
        s
    }

    /// log(1 + z)
    pub fn log1p(n: usize) -> Self {
        Self::new(
            (0..=n)
                .map(|k| if k == 0 { Rat::zero() } else { Rat::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, (k as i64).into()) })
                .collect(),
        )
    }

    /// (1 + z)^a
    pub fn binomial(a: &Rat, n: usize) -> Self {
        Self::new((0..=n).map(|k| binom_rat(a, k as u64)).collect())
    }

    /// 1/(1 - z)
    pub fn geometric(n: usize) -> Self {
        Self::new(vec![int(1); n + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exp_of_log_is_identity() {
        let l = PowerSeries::log1p(12);
        let e = PowerSeries::exp_minus_one(12).compose(&l).unwrap();
        assert_eq!(e, PowerSeries::from_coeffs(&[int(0), int(1)], 12));
    }

    #[test]
    fn binomial_half_squared() {
        let h = PowerSeries::binomial(&rat(1, 2), 10);
        assert_eq!(h.mul(&h), PowerSeries::from_coeffs(&[int(1), int(1)], 10));
    }

    #[test]
    fn window_is_intersection() {
        let a = PowerSeries::one(3);
        let b = PowerSeries::geometric(7);
        assert_eq!(a.mul(&b).trunc_order(), 3);
        assert_eq!(a.add(&b).trunc_order(), 3);
        assert_eq!(b.mul_z().trunc_order(), 8);
        assert!(a.div_z().is_err());
    }
}
