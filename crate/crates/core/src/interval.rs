//! Closed intervals with exact rational endpoints.
//!
//! Arithmetic on endpoints is exact. Only the transcendental functions
//! approximate, and they round outward to a dyadic grid of `bits`
//! significant bits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, Rat};

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

/// floor(log2 |x|) for nonzero x.
fn ilog2(x: &Rat) -> i64 {
    let n = x.numer().abs();
    let d = x.denom();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // 2^e <= |x| < 2^(e+1) after at most one correction.
    if e >= 0 {
        if n < (d << e as u64) {
            e -= 1;
        }
    } else if (n.clone() << (-e) as u64) < *d {
        e -= 1;
    }
    e
}

fn pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(BigInt::one() << e as u64)
    } else {
        Rat::new(BigInt::one(), BigInt::one() << (-e) as u64)
    }
}

pub fn round_down(x: &Rat, bits: u32) -> Rat {
    if x.is_zero() {
        return x.clone();
    }
    let scale = pow2(bits as i64 - ilog2(x));
    let y = x * &scale;
    Rat::from_integer(y.numer().div_floor(y.denom())) / scale
}

pub fn round_up(x: &Rat, bits: u32) -> Rat {
    -round_down(&-x, bits)
}

impl Interval {
    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Outward rounding of both endpoints.
    pub fn round(&self, bits: u32) -> Interval {
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    /// `Some(true)` if every point of `self` exceeds every point of `o`,
    /// `Some(false)` if no point of `self` exceeds any point of `o`.
    pub fn gt(&self, o: &Interval) -> Option<bool> {
        if self.lo > o.hi {
            Some(true)
        } else if self.hi <= o.lo {
            Some(false)
        } else {
            None
        }
    }

    /// Outward f64 enclosure, for display.
    pub fn to_f64(&self) -> (f64, f64) {
        let lo = crate::arith::to_f64(&self.lo).next_down();
        let hi = crate::arith::to_f64(&self.hi).next_up();
        (lo, hi)
    }

    pub fn midpoint_f64(&self) -> f64 {
        crate::arith::to_f64(&((&self.lo + &self.hi) / int(2)))
    }

    /// Encloses ln(x) for rational x > 0.
    pub fn ln(x: &Rat, bits: u32) -> Interval {
        assert!(x.is_positive(), "ln of a nonpositive number");
        if x.is_one() {
            return Interval::zero();
        }
        let k = ilog2(x);
        let y = x / pow2(k);
        let ln_y = atanh2((&y - int(1)) / (&y + int(1)), bits + 8);
        let r = if k == 0 { ln_y } else { ln2(bits + 8).scale(&int(k)).add(&ln_y) };
        r.round(bits)
    }

    /// Encloses exp over the whole interval.
    pub fn exp(&self, bits: u32) -> Interval {
        Interval { lo: exp_point(&self.lo, bits).lo, hi: exp_point(&self.hi, bits).hi }
    }

    /// Encloses the positive k-th root of an interval of positive numbers.
    pub fn root(&self, k: u64, bits: u32) -> Interval {
        assert!(self.lo.is_positive(), "root of a nonpositive interval");
        let lo = Interval::ln(&self.lo, bits + 8).lo / int(k as i64);
        let hi = Interval::ln(&self.hi, bits + 8).hi / int(k as i64);
        Interval { lo: exp_point(&lo, bits).lo, hi: exp_point(&hi, bits).hi }
    }
}

fn ln2(bits: u32) -> Interval {
    atanh2(Rat::new(1.into(), 3.into()), bits)
}

/// Encloses 2*atanh(u) for rational 0 <= u <= 1/3.
fn atanh2(u: Rat, bits: u32) -> Interval {
    if u.is_zero() {
        return Interval::zero();
    }
    let w = bits + 16;
    let u2_lo = round_down(&(&u * &u), w);
    let u2_hi = round_up(&(&u * &u), w);
    let mut p_lo = round_down(&u, w);
    let mut p_hi = round_up(&u, w);
    let mut s_lo = Rat::zero();
    let mut s_hi = Rat::zero();
    let eps = pow2(-(bits as i64) - 4);
    let mut j: i64 = 0;
    loop {
        let d = int(2 * j + 1);
        s_lo += round_down(&(&p_lo / &d), w);
        s_hi += round_up(&(&p_hi / &d), w);
        p_lo = round_down(&(&p_lo * &u2_lo), w);
        p_hi = round_up(&(&p_hi * &u2_hi), w);
        j += 1;
        if p_hi < eps {
            break;
        }
    }
    // Remaining terms are bounded by p/(2j+1) * 1/(1-u^2) <= 9/8 p.
    let tail = round_up(&(&p_hi * Rat::new(9.into(), 8.into()) / int(2 * j + 1)), w);
    s_hi += tail;
    Interval { lo: round_down(&(s_lo * int(2)), bits), hi: round_up(&(s_hi * int(2)), bits) }
}

/// Encloses exp(x) for a rational point.
fn exp_point(x: &Rat, bits: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Rat::one());
    }
    if x.is_negative() {
        let e = exp_point(&-x, bits + 4);
        return Interval { lo: round_down(&e.hi.recip(), bits), hi: round_up(&e.lo.recip(), bits) };
    }
    // x = k ln2 + r with r in a small interval around [0, ln2).
    let k = (crate::arith::to_f64(x) / std::f64::consts::LN_2).floor() as i64;
    let extra = 8 + (64 - (k.unsigned_abs()).leading_zeros());
    let l2 = ln2(bits + extra + 8);
    let r = Interval::point(x.clone()).sub(&l2.scale(&int(k)));
    let lo = exp_small(&r.lo.clone().max(Rat::zero()), bits + 8, false);
    let hi = exp_small(&r.hi.clone().max(Rat::zero()), bits + 8, true);
    let lo = if r.lo.is_negative() { exp_point(&r.lo, bits + 8).lo } else { lo };
    Interval { lo: round_down(&(lo * pow2(k)), bits), hi: round_up(&(hi * pow2(k)), bits) }
}

/// exp(r) for 0 <= r < 1, rounded in the requested direction.
fn exp_small(r: &Rat, bits: u32, upper: bool) -> Rat {
    let w = bits + 16;
    let rnd = |v: &Rat| if upper { round_up(v, w) } else { round_down(v, w) };
    let eps = pow2(-(bits as i64) - 4);
    let mut term = Rat::one();
    let mut sum = Rat::one();
    let mut j: i64 = 1;
    while term >= eps || j < 3 {
        term = rnd(&(&term * r / int(j)));
        sum += &term;
        j += 1;
    }
    if upper {
        // Geometric tail with ratio r/(j+1) <= 1/2.
        sum += &term * int(2);
        round_up(&sum, bits)
    } else {
        round_down(&sum, bits)
    }
}

/// JSON: exact endpoints as fraction strings plus a float rendering.
impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (lo, hi) = self.to_f64();
        let mut st = s.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("loApprox", &lo)?;
        st.serialize_field("hiApprox", &hi)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn close(i: &Interval, v: f64) {
        let (lo, hi) = i.to_f64();
        assert!(lo <= v && v <= hi, "{v} not in [{lo}, {hi}]");
        assert!(hi - lo < 1e-12 * v.abs().max(1.0), "too wide: [{lo}, {hi}]");
    }

    #[test]
    fn logs() {
        close(&Interval::ln(&int(2), 80), std::f64::consts::LN_2);
        close(&Interval::ln(&int(10), 80), 10f64.ln());
        close(&Interval::ln(&rat(1, 7), 80), (1.0f64 / 7.0).ln());
        close(&Interval::ln(&int(1_000_000_007), 80), 1_000_000_007f64.ln());
        assert_eq!(Interval::ln(&int(1), 80), Interval::zero());
    }

    #[test]
    fn exps() {
        close(&Interval::point(int(1)).exp(80), std::f64::consts::E);
        close(&Interval::point(rat(-5, 2)).exp(80), (-2.5f64).exp());
        close(&Interval::point(int(40)).exp(80), 40f64.exp());
    }

    #[test]
    fn roots() {
        close(&Interval::point(int(27)).root(3, 80), 3.0);
        close(&Interval::point(rat(1, 2)).root(2, 80), 0.5f64.sqrt());
    }

    #[test]
    fn rounding_is_outward() {
        let x = rat(1, 3);
        assert!(round_down(&x, 10) <= x && x <= round_up(&x, 10));
        assert!(round_down(&-&x, 10) <= -&x);
    }

    #[test]
    fn ordering() {
        let a = Interval::new(int(2), int(3));
        let b = Interval::new(int(0), int(1));
        assert_eq!(a.gt(&b), Some(true));
        assert_eq!(b.gt(&a), Some(false));
        assert_eq!(a.gt(&Interval::new(rat(5, 2), int(4))), None);
        assert_eq!(Interval::point(int(1)).gt(&Interval::point(int(1))), Some(false));
    }
}
