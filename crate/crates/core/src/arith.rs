//! Rational scalars and the integer combinatorics used everywhere else.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{arg, Result};
use crate::primes::is_prime_u64;

/// Exact rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"a/b"`, `"-a/b"` or `"a"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    let n: BigInt = num.parse().map_err(|_| crate::Error::Argument(format!("bad rational {s:?}")))?;
    let d: BigInt = den.parse().map_err(|_| crate::Error::Argument(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return arg(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// `num/den`, with the denominator omitted when it is 1.
pub fn fmt_rat(x: &Rat) -> String {
    x.to_string()
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient for nonnegative arguments; 0 when `k > n`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Binomial coefficient with a signed top argument: n(n-1)..(n-k+1)/k!.
pub fn binom_signed(n: i64, k: u64) -> BigInt {
    if n >= 0 {
        return binom(n as u64, k);
    }
    // C(-m, k) = (-1)^k C(m+k-1, k)
    let m = (-n) as u64;
    let c = binom(m + k - 1, k);
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Generalized binomial a(a-1)..(a-k+1)/k! for rational `a`.
pub fn binom_rat(a: &Rat, k: u64) -> Rat {
    let mut r = Rat::one();
    for i in 0..k {
        r = r * (a - int(i as i64)) / int(i as i64 + 1);
    }
    r
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: &Rat, n: u64) -> Rat {
    let mut r = Rat::one();
    for i in 0..n {
        r *= a + int(i as i64);
    }
    r
}

pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation with `p` assumed prime; `None` stands for +infinity.
pub fn valuation(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(vp_int(x.numer(), p) - vp_int(x.denom(), p))
    }
}

/// Checked p-adic valuation; `None` stands for +infinity.
pub fn vp(x: &Rat, p: u64) -> Result<Option<i64>> {
    if !is_prime_u64(p) {
        return arg(format!("{p} is not prime"));
    }
    Ok(valuation(x, p))
}

pub fn vp_bigint(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        None
    } else {
        Some(vp_int(n, p))
    }
}

/// d_N = lcm(1, ..., N).
pub fn lcm_up_to(n: u64) -> Result<BigInt> {
    if n == 0 {
        return arg("lcm_up_to needs N >= 1");
    }
    Ok((1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k))))
}

/// Least positive integer clearing every denominator.
pub fn den_vec(alphas: &[Rat]) -> Result<BigInt> {
    if alphas.is_empty() {
        return arg("den_vec needs a nonempty list");
    }
    Ok(alphas.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom())))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn harmonic(m: u64) -> Rat {
    (1..=m).fold(Rat::zero(), |acc, j| acc + rat(1, j as i64))
}

pub fn sign_pow(e: u64) -> Rat {
    if e.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Natural log of |x| as f64, valid for huge numerators and denominators.
pub fn ln_abs_f64(x: &Rat) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        if bits < 1000 {
            return n.abs().to_f64().unwrap().ln();
        }
        let shift = bits - 64;
        let top: BigInt = n.abs() >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(x.numer()) - ln_big(x.denom())
}

pub fn sign_of(x: &Rat) -> Sign {
    x.numer().sign()
}

pub mod serde_rat {
    //! Rationals as `"num/den"` strings.
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&fmt_rat(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| parse_rat(s).map_err(D::Error::custom)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&int(50), 5).unwrap(), Some(2));
        assert_eq!(vp(&int(0), 7).unwrap(), None);
        assert_eq!(vp(&rat(1, 2), 2).unwrap(), Some(-1));
        assert!(vp(&int(3), 4).is_err());
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_up_to(1).unwrap(), BigInt::from(1));
        assert_eq!(lcm_up_to(6).unwrap(), BigInt::from(60));
        assert_eq!(lcm_up_to(10).unwrap(), BigInt::from(2520));
        assert!(lcm_up_to(0).is_err());
    }

    #[test]
    fn den_values() {
        assert_eq!(den_vec(&[rat(1, 2)]).unwrap(), BigInt::from(2));
        assert_eq!(den_vec(&[rat(1, 2), rat(1, 3)]).unwrap(), BigInt::from(6));
        assert_eq!(den_vec(&[int(0)]).unwrap(), BigInt::from(1));
        assert!(den_vec(&[]).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("+7").unwrap(), int(7));
        assert_eq!(fmt_rat(&rat(4, 2)), "2");
        assert_eq!(fmt_rat(&rat(-1, 6)), "-1/6");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(2, 5), BigInt::from(0));
        assert_eq!(binom_signed(-2, 3), BigInt::from(-4));
        assert_eq!(binom_rat(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }
}
