//! Elements of Q_p at explicit finite precision, the Teichmüller character,
//! the Iwasawa logarithm, and the p-adic series built on them.

mod functions;
mod remainder;
mod teich;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{valuation, Rat};
use crate::error::{arg, Error, Result};
use crate::primes::is_prime_u64;

pub use functions::{eval_gp, eval_r_series, eval_zeta, gp_functional_equation, polygamma_side, PadicSeriesResult};
pub use remainder::{remainder_valuation, remainder_valuation_slope, RemainderValuation, SlopeReport};
pub use teich::{angle, iwasawa_log, log_rat, q_p, teichmuller, teichmuller_exact};

/// p^val·unit + O(p^{val+prec}). When `prec` is 0 the element is
/// indistinguishable from zero and stands for O(p^val).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdic {
    p: u64,
    val: i64,
    /// In [0, p^prec), prime to p when prec > 0.
    unit: BigInt,
    prec: u32,
}

pub(crate) fn ppow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Inverse of `a` modulo `m`; `a` must be prime to `m`.
pub(crate) fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn width(prec: i64) -> u32 {
    u32::try_from(prec.max(0)).expect("precision overflow")
}

impl PAdic {
    /// O(p^abs).
    pub fn zero(p: u64, abs: i64) -> Self {
        PAdic { p, val: abs, unit: BigInt::zero(), prec: 0 }
    }

    /// x + O(p^abs).
    pub fn from_rat(x: &Rat, p: u64, abs: i64) -> Result<Self> {
        if !is_prime_u64(p) {
            return arg(format!("{p} is not prime"));
        }
        Ok(Self::from_rat_unchecked(x, p, abs))
    }

    pub(crate) fn from_rat_unchecked(x: &Rat, p: u64, abs: i64) -> Self {
        let Some(v) = valuation(x, p) else { return Self::zero(p, abs) };
        if v >= abs {
            return Self::zero(p, abs);
        }
        let prec = width(abs - v);
        let m = ppow(p, prec);
        let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
        let pb = BigInt::from(p);
        if v > 0 {
            num /= num_traits::pow(pb.clone(), v as usize);
        } else if v < 0 {
            den /= num_traits::pow(pb, (-v) as usize);
        }
        let unit = (num.mod_floor(&m) * modinv(&den, &m)).mod_floor(&m);
        PAdic { p, val: v, unit, prec }
    }

    pub fn from_int(n: i64, p: u64, abs: i64) -> Self {
        Self::from_rat_unchecked(&Rat::from_integer(n.into()), p, abs)
    }

    /// Builds p^base·s + O(p^abs) from an integer s known modulo p^{abs-base}.
    pub(crate) fn normalize(p: u64, base: i64, s: BigInt, abs: i64) -> Self {
        if abs <= base {
            return Self::zero(p, abs);
        }
        let m = ppow(p, width(abs - base));
        let mut s = s.mod_floor(&m);
        if s.is_zero() {
            return Self::zero(p, abs);
        }
        let pb = BigInt::from(p);
        let mut val = base;
        while s.is_multiple_of(&pb) {
            s /= &pb;
            val += 1;
        }
        PAdic { p, val, unit: s, prec: width(abs - val) }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// True when no digit is known to be nonzero.
    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// `None` for an element indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// The valuation if known, else the absolute precision, which bounds it.
    pub fn valuation_lower_bound(&self) -> i64 {
        self.val
    }

    pub fn abs_precision(&self) -> i64 {
        self.val + self.prec as i64
    }

    pub fn rel_precision(&self) -> u32 {
        self.prec
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// The representative p^val·unit.
    pub fn to_rat(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        Rat::from_integer(self.unit.clone()) * crate::arith::rat_pow(&Rat::from_integer(self.p.into()), self.val)
    }

    /// The same element known only to O(p^abs).
    pub fn reduce_to(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(self.p, abs);
        }
        Self::normalize(self.p, self.val, self.unit.clone(), abs)
    }

    fn same_prime(&self, o: &PAdic) {
        assert_eq!(self.p, o.p, "mixing p-adic numbers for different primes");
    }

    pub fn add(&self, o: &PAdic) -> PAdic {
        self.same_prime(o);
        let abs = self.abs_precision().min(o.abs_precision());
        if self.is_zero() {
            return o.reduce_to(abs);
        }
        if o.is_zero() {
            return self.reduce_to(abs);
        }
        let base = self.val.min(o.val);
        let pb = BigInt::from(self.p);
        let a = &self.unit * num_traits::pow(pb.clone(), (self.val - base) as usize);
        let b = &o.unit * num_traits::pow(pb, (o.val - base) as usize);
        Self::normalize(self.p, base, a + b, abs)
    }

    pub fn neg(&self) -> PAdic {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.prec);
        PAdic { unit: &m - &self.unit, ..self.clone() }
    }

    pub fn sub(&self, o: &PAdic) -> PAdic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PAdic) -> PAdic {
        self.same_prime(o);
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Self::zero(self.p, self.val + o.val),
            (true, false) => Self::zero(self.p, self.val + o.val),
            (false, true) => Self::zero(self.p, self.val + o.val),
            (false, false) => {
                let prec = self.prec.min(o.prec);
                let m = ppow(self.p, prec);
                PAdic { p: self.p, val: self.val + o.val, unit: (&self.unit * &o.unit).mod_floor(&m), prec }
            }
        }
    }

    pub fn inv(&self) -> Result<PAdic> {
        if self.is_zero() {
            return Err(Error::Domain(format!("inverting O({}^{})", self.p, self.val)));
        }
        let m = ppow(self.p, self.prec);
        Ok(PAdic { p: self.p, val: -self.val, unit: modinv(&self.unit, &m), prec: self.prec })
    }

    pub fn div(&self, o: &PAdic) -> Result<PAdic> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<PAdic> {
        if e == 0 {
            return Ok(PAdic::from_int(1, self.p, self.prec as i64));
        }
        let mut b = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = b.clone();
        let mut k = e.unsigned_abs() - 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, c: &Rat) -> PAdic {
        if c.is_zero() {
            return Self::zero(self.p, i64::MAX / 4);
        }
        let v = valuation(c, self.p).unwrap();
        let cp = Self::from_rat_unchecked(c, self.p, v + self.prec.max(1) as i64);
        if self.is_zero() {
            return Self::zero(self.p, self.val + v);
        }
        self.mul(&cp)
    }

    /// Both sides known to O(p^n) and equal there.
    pub fn agrees_to(&self, o: &PAdic, n: i64) -> bool {
        self.abs_precision() >= n && o.abs_precision() >= n && self.sub(o).valuation_lower_bound() >= n
    }

    /// Base-p digits of the representative from p^val up to p^{abs-1}.
    pub fn digits(&self) -> Vec<u64> {
        let pb = BigInt::from(self.p);
        let mut u = self.unit.clone();
        (0..self.prec)
            .map(|_| {
                let (q, r) = u.div_mod_floor(&pb);
                u = q;
                num_traits::ToPrimitive::to_u64(&r).unwrap()
            })
            .collect()
    }
}

impl std::fmt::Display for PAdic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.val)
        } else {
            write!(f, "{}·{}^{} + O({}^{})", self.unit, self.p, self.val, self.p, self.abs_precision())
        }
    }
}

impl Serialize for PAdic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Wire {
            p: u64,
            valuation: Option<i64>,
            unit: String,
            abs_precision: i64,
            digits: Vec<u64>,
            display: String,
        }
        Wire {
            p: self.p,
            valuation: self.valuation(),
            unit: self.unit.to_string(),
            abs_precision: self.abs_precision(),
            digits: self.digits(),
            display: self.to_string(),
        }
        .serialize(s)
    }
}

/// Smallest k >= 0 with p^k > n, i.e. ⌊log_p n⌋ + 1 for n >= 1.
pub(crate) fn log_p_ceil(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut q: u128 = 1;
    while q <= n as u128 {
        q *= p as u128;
        k += 1;
    }
    k
}

/// ⌊log_p n⌋ for n >= 1.
pub(crate) fn log_p_floor(p: u64, n: u64) -> i64 {
    log_p_ceil(p, n) - 1
}
