use num_traits::{One, Zero};

use crate::arith::{binom_signed, int, Rat};
use crate::series::Poly;

/// Truncated Laurent series Σ c_k z^{-k} in 1/z.
///
/// Coefficients with `k < low` are exactly zero, those with
/// `low <= k <= depth` are stored, and nothing is known past `depth`.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    low: i64,
    coeffs: Vec<Rat>,
}

impl LaurentSeries {
    pub fn new(low: i64, coeffs: Vec<Rat>) -> Self {
        LaurentSeries { low, coeffs }
    }

    /// All-zero series known on `low..=depth`.
    pub fn zero(low: i64, depth: i64) -> Self {
        let n = (depth - low + 1).max(0) as usize;
        Self::new(low, vec![Rat::zero(); n])
    }

    /// A polynomial in z, known exactly down to z^{-depth}.
    pub fn from_poly(p: &Poly, depth: i64) -> Self {
        let deg = p.degree().unwrap_or(0) as i64;
        let mut s = Self::zero(-deg, depth);
        for (i, a) in p.coeffs().iter().enumerate() {
            s.set(-(i as i64), a.clone());
        }
        s
    }

    /// a·z^{-k} known to `depth`.
    pub fn monomial(a: Rat, k: i64, depth: i64) -> Self {
        let mut s = Self::zero(k.min(depth + 1), depth);
        if k <= depth {
            s.set(k, a);
        }
        s
    }

    /// (z + a)^{-j} for j >= 0, expanded in 1/z.
    pub fn inv_linear_pow(a: &Rat, j: u64, depth: i64) -> Self {
        Self::monomial(Rat::one(), j as i64, depth).shift(a)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Largest index whose coefficient is known.
    pub fn depth(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of z^{-k}: zero below the window, `None` past `depth`.
    pub fn coeff(&self, k: i64) -> Option<Rat> {
        if k < self.low {
            Some(Rat::zero())
        } else if k > self.depth() {
            None
        } else {
            Some(self.coeffs[(k - self.low) as usize].clone())
        }
    }

    fn at(&self, k: i64) -> &Rat {
        &self.coeffs[(k - self.low) as usize]
    }

    fn set(&mut self, k: i64, v: Rat) {
        let i = (k - self.low) as usize;
        self.coeffs[i] = v;
    }

    fn add_at(&mut self, k: i64, v: &Rat) {
        let i = (k - self.low) as usize;
        self.coeffs[i] += v;
    }

    /// Index of the first nonzero coefficient; `None` if the series
    /// vanishes on its whole known window.
    pub fn ord(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.low + i as i64)
    }

    /// True if every coefficient of index < k is known and zero.
    pub fn ord_at_least(&self, k: i64) -> bool {
        if self.depth() < k - 1 {
            return false;
        }
        match self.ord() {
            Some(o) => o >= k,
            None => true,
        }
    }

    pub fn truncate(&self, depth: i64) -> Self {
        assert!(depth <= self.depth(), "cannot extend a truncated series");
        let n = (depth - self.low + 1).max(0) as usize;
        Self::new(self.low, self.coeffs[..n].to_vec())
    }

    pub fn scale(&self, a: &Rat) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| c * a).collect())
    }

    fn combine(&self, o: &Self, sign: i64) -> Self {
        let low = self.low.min(o.low);
        let depth = self.depth().min(o.depth());
        let mut s = Self::zero(low, depth);
        for k in low..=depth {
            let a = self.coeff(k).unwrap();
            let b = o.coeff(k).unwrap();
            s.set(k, if sign > 0 { a + b } else { a - b });
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let low = self.low + o.low;
        let depth = (self.depth() + o.low).min(o.depth() + self.low);
        let mut s = Self::zero(low, depth);
        for i in self.low..=self.depth() {
            let a = self.at(i);
            if a.is_zero() {
                continue;
            }
            for j in o.low..=o.depth() {
                if i + j > depth {
                    break;
                }
                s.add_at(i + j, &(a * o.at(j)));
            }
        }
        s
    }

    /// Product with an exact polynomial; loses `deg p` orders of depth.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        if p.is_zero() {
            return Self::zero(self.low, self.depth());
        }
        let deg = p.degree().unwrap() as i64;
        let low = self.low - deg;
        let depth = self.depth() - deg;
        let mut s = Self::zero(low, depth);
        for (e, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in self.low..=self.depth() {
                let t = k - e as i64;
                if t > depth {
                    break;
                }
                s.add_at(t, &(a * self.at(k)));
            }
        }
        s
    }

    /// τ_a: f(z) -> f(z + a), using (z+a)^{-k} = Σ_i C(-k, i) a^i z^{-k-i}.
    pub fn shift(&self, a: &Rat) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let depth = self.depth();
        let mut s = Self::zero(self.low, depth);
        for k in self.low..=depth {
            let c = self.at(k);
            if c.is_zero() {
                continue;
            }
            let mut ai = Rat::one();
            for i in 0..=(depth - k) {
                let b = binom_signed(-k, i as u64);
                if k <= 0 && i > -k {
                    break;
                }
                s.add_at(k + i, &(c * &ai * Rat::from_integer(b)));
                ai *= a;
            }
        }
        s
    }

    /// Δ_a = τ_a - 1.
    pub fn delta(&self, a: &Rat) -> Self {
        self.shift(a).sub(self)
    }

    /// d/dz, which knows one more coefficient than its input.
    pub fn deriv(&self) -> Self {
        let mut s = Self::zero(self.low + 1, self.depth() + 1);
        for k in self.low..=self.depth() {
            s.set(k + 1, self.at(k) * int(-k));
        }
        s
    }

    /// Evaluates the polynomial part (indices <= 0) exactly, if the series
    /// has no nonzero coefficient of positive index in its window.
    pub fn polynomial_part(&self) -> Poly {
        let top = (-self.low).max(0) as usize;
        Poly::new((0..=top).map(|d| self.coeff(-(d as i64)).unwrap_or_else(Rat::zero)).collect())
    }
}

/// Equal windows and equal coefficients; leading stored zeros do not matter.
impl PartialEq for LaurentSeries {
    fn eq(&self, o: &Self) -> bool {
        self.depth() == o.depth() && (self.low.min(o.low)..=self.depth()).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl Eq for LaurentSeries {}

/// Σ v_m w^m (m <= depth) times w/(1 + j w), in place.
fn div_linear(v: &mut Vec<Rat>, j: i64) {
    let jr = int(j);
    for m in 1..v.len() {
        let t = &v[m - 1] * &jr;
        v[m] -= t;
    }
    v.pop();
    v.insert(0, Rat::zero());
}

/// 1/(z)_{k+1} = 1/(z(z+1)⋯(z+k)) expanded to z^{-depth}.
pub fn inv_pochhammer(k: u64, depth: i64) -> LaurentSeries {
    let n = depth.max(0) as usize + 1;
    let mut v = vec![Rat::zero(); n];
    v[0] = Rat::one();
    for j in 0..=k as i64 {
        div_linear(&mut v, j);
    }
    LaurentSeries::new(0, v).truncate(depth)
}

/// Σ_{k} c_k/(z)_{k+1} by Horner nesting, to z^{-depth}.
pub(crate) fn pochhammer_sum(c: &[Rat], depth: i64) -> LaurentSeries {
    let n = depth.max(0) as usize + 1;
    let mut v = vec![Rat::zero(); n];
    for (k, ck) in c.iter().enumerate().rev() {
        v[0] += ck;
        div_linear(&mut v, k as i64);
    }
    LaurentSeries::new(0, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn geometric_check(s: &LaurentSeries, a: &Rat) {
        // 1/(z+a) = Σ (-a)^i z^{-1-i}
        for k in 1..=s.depth() {
            assert_eq!(s.coeff(k).unwrap(), crate::arith::rat_pow(&-a, k - 1));
        }
    }

    #[test]
    fn inverse_linear() {
        let s = LaurentSeries::inv_linear_pow(&rat(1, 2), 1, 10);
        geometric_check(&s, &rat(1, 2));
        assert_eq!(s.ord(), Some(1));
    }

    #[test]
    fn delta_of_inverse_z() {
        // Δ_1(1/z) = -1/(z(z+1)) = -1/z² + 1/z³ - ...
        let d = LaurentSeries::monomial(int(1), 1, 10).delta(&int(1));
        assert_eq!(d.ord(), Some(2));
        for k in 2..=10 {
            assert_eq!(d.coeff(k).unwrap(), if k % 2 == 0 { int(-1) } else { int(1) });
        }
        let s = LaurentSeries::monomial(int(3), 2, 9);
        assert_eq!(s.shift(&int(0)), s);
    }

    #[test]
    fn exp_of_derivative_is_shift() {
        let a = rat(1, 2);
        for n in 1..=3 {
            let f = LaurentSeries::monomial(int(1), n, 12);
            let mut acc = f.clone();
            let mut term = f.clone();
            let mut fact = Rat::one();
            for k in 1..=12 {
                term = term.deriv();
                fact *= &a / int(k);
                acc = acc.add(&term.scale(&fact).truncate(12));
            }
            assert_eq!(acc, f.shift(&a));
        }
    }

    #[test]
    fn pochhammer_inverse() {
        // 1/(z(z+1)) = 1/z² - 1/z³ + ...
        let s = inv_pochhammer(1, 8);
        assert_eq!(s.ord(), Some(2));
        for k in 2..=8 {
            assert_eq!(s.coeff(k).unwrap(), if k % 2 == 0 { int(1) } else { int(-1) });
        }
        // product check: (z)_3 · 1/(z)_3 = 1
        let p = Poly::pochhammer(&int(0), 3);
        let one = inv_pochhammer(2, 12).mul_poly(&p);
        assert_eq!(one.coeff(0), Some(int(1)));
        assert!((1..=one.depth()).all(|k| one.coeff(k).unwrap().is_zero()));
    }

    #[test]
    fn windows() {
        let a = LaurentSeries::monomial(int(1), 1, 5);
        let b = LaurentSeries::monomial(int(1), 2, 9);
        let c = a.mul(&b);
        assert_eq!((c.low(), c.depth()), (3, 7));
        assert_eq!(a.add(&b).depth(), 5);
        assert_eq!(a.deriv().depth(), 6);
        let p = Poly::new(vec![int(1), int(1)]);
        let m = b.mul_poly(&p);
        assert_eq!((m.low(), m.depth()), (1, 8));
    }
}
