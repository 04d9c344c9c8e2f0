use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{int, Rat};

/// Dense univariate polynomial over Q, lowest degree first, with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(a: Rat) -> Self {
        Self::new(vec![a])
    }

    /// `a·z^k`
    pub fn monomial(a: Rat, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    /// The linear polynomial `z + a`.
    pub fn linear(a: Rat) -> Self {
        Self::new(vec![a, Rat::one()])
    }

    /// Rising factorial `(z + a)_n`.
    pub fn pochhammer(a: &Rat, n: u64) -> Self {
        let mut p = Self::one();
        for i in 0..n {
            p = &p * &Self::linear(a + int(i as i64));
        }
        p
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    /// Coefficient of z^k, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, a: &Rat) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Poly { c: self.c.iter().map(|x| x * a).collect() }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
    }

    /// p(z + a), by in-place repeated synthetic division.
    pub fn shift(&self, a: &Rat) -> Self {
        if a.is_zero() || self.c.len() < 2 {
            return self.clone();
        }
        let mut c = self.c.clone();
        let d = c.len() - 1;
        for i in 0..d {
            for j in (i..d).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Δ_a p = p(z + a) - p(z).
    pub fn delta(&self, a: &Rat) -> Self {
        &self.shift(a) - self
    }

    /// Δ_a applied k times.
    pub fn delta_pow(&self, a: &Rat, k: u64) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.delta(a);
        }
        p
    }

    pub fn deriv(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a * int(k as i64)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lead;
            if !f.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &f * b;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let l = self.c.iter().fold(num_bigint::BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let g = self.c.iter().fold(num_bigint::BigInt::zero(), |acc, a| acc.gcd(&(a * Rat::from_integer(l.clone())).to_integer()));
        let mut s = Rat::new(l, g);
        if self.leading() < Rat::zero() {
            s = -s;
        }
        self.scale(&s)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Poly {
    /// Renders with `var` as the indeterminate.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| match k {
                0 => a.to_string(),
                1 => format!("({a})*{var}"),
                _ => format!("({a})*{var}^{k}"),
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("z"))
    }
}
