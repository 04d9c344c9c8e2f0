//! The Teichmüller character ω, ⟨x⟩ = x/ω(x), and the Iwasawa logarithm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{int, rat_pow, valuation, Rat};
use crate::error::{arg, Error, Result};
use crate::padic::{log_p_floor, modinv, ppow, PAdic};
use crate::primes::is_prime_u64;

/// q_p = p for odd p, 4 for p = 2.
pub fn q_p(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

fn split(x: &Rat, p: u64) -> Result<(i64, Rat)> {
    if !is_prime_u64(p) {
        return arg(format!("{p} is not prime"));
    }
    let Some(v) = valuation(x, p) else { return arg("the Teichmüller character is undefined at 0") };
    Ok((v, x / rat_pow(&int(p as i64), v)))
}

/// u mod p^k for a p-adic unit rational u.
fn unit_residue(u: &Rat, p: u64, k: u32) -> BigInt {
    let m = ppow(p, k);
    (u.numer().mod_floor(&m) * modinv(u.denom(), &m)).mod_floor(&m)
}

/// ω of a unit residue u mod p^k: the fixed point of y -> y^p (p odd), or
/// ±1 with u ≡ ω mod 4 (p = 2).
fn omega_unit(u: &BigInt, p: u64, k: u32) -> BigInt {
    let m = ppow(p, k);
    if p == 2 {
        return if u.mod_floor(&BigInt::from(4)) == BigInt::one() { BigInt::one() } else { &m - 1 };
    }
    let pb = BigInt::from(p);
    let mut y = u.mod_floor(&m);
    loop {
        let next = y.modpow(&pb, &m);
        if next == y {
            return y;
        }
        y = next;
    }
}

/// ω(x) = p^{v_p(x)} ω(unit part), with the unit part known to relative
/// precision `prec`.
pub fn teichmuller(x: &Rat, p: u64, prec: u32) -> Result<PAdic> {
    let (v, u) = split(x, p)?;
    let w = omega_unit(&unit_residue(&u, p, prec), p, prec);
    Ok(PAdic::normalize(p, v, w, v + prec as i64))
}

/// ω(x) as an exact rational when it is one, i.e. when the unit part is
/// ≡ ±1 mod p (always for p = 2).
pub fn teichmuller_exact(x: &Rat, p: u64) -> Result<Option<Rat>> {
    let (v, u) = split(x, p)?;
    let pv = rat_pow(&int(p as i64), v);
    let r = unit_residue(&u, p, if p == 2 { 2 } else { 1 }).to_u64().unwrap();
    Ok(if p == 2 {
        Some(if r == 1 { pv } else { -pv })
    } else if r == 1 {
        Some(pv)
    } else if r == p - 1 {
        Some(-pv)
    } else {
        None
    })
}

/// ⟨x⟩ = x/ω(x) ∈ 1 + q_p Z_p, to relative precision `prec`.
pub fn angle(x: &Rat, p: u64, prec: u32) -> Result<PAdic> {
    let (_, u) = split(x, p)?;
    let res = unit_residue(&u, p, prec);
    let w = omega_unit(&res, p, prec);
    let m = ppow(p, prec);
    Ok(PAdic::normalize(p, 0, res * modinv(&w, &m), prec as i64))
}

/// Iwasawa logarithm: log_p(p) = 0, log_p(ω) = 0, and the usual series on
/// ⟨x⟩. The result is known to O(p^r), r the relative precision of `x`.
pub fn iwasawa_log(x: &PAdic) -> Result<PAdic> {
    if x.is_zero() {
        return Err(Error::Domain("log_p of a p-adic zero".into()));
    }
    let p = x.prime();
    let r = x.rel_precision();
    let floor_vy: i64 = if p == 2 { 2 } else { 1 };
    // terms t > T satisfy t·v(y) - v_p(t) >= r since t - ⌊log_p t⌋ is nondecreasing
    let mut t_max: u64 = 1;
    while (t_max as i64 + 1) * floor_vy - log_p_floor(p, t_max + 1) < r as i64 {
        t_max += 1;
    }
    let guard = log_p_floor(p, t_max) as u32 + 1;
    let k = r + guard;
    let m = ppow(p, k);
    let u: BigInt = x.unit().clone();
    let w = omega_unit(&u, p, k);
    let y: BigInt = (u * modinv(&w, &m) - BigInt::one()).mod_floor(&m);
    let out_mod = ppow(p, r);
    let pb = BigInt::from(p);
    let mut acc = BigInt::zero();
    let mut yt = BigInt::one();
    for t in 1..=t_max {
        yt = (&yt * &y).mod_floor(&m);
        let (mut e, mut t1) = (0u32, t);
        while t1 % p == 0 {
            t1 /= p;
            e += 1;
        }
        let q = &yt / num_traits::pow(pb.clone(), e as usize);
        let term = (q * modinv(&BigInt::from(t1), &m)).mod_floor(&out_mod);
        if t % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(PAdic::normalize(p, 0, acc, r as i64))
}

/// log_p(x) + O(p^prec) for a nonzero rational x.
pub fn log_rat(x: &Rat, p: u64, prec: u32) -> Result<PAdic> {
    let (v, _) = split(x, p)?;
    iwasawa_log(&PAdic::from_rat(x, p, v + prec as i64)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn examples() {
        let w = teichmuller(&int(2), 5, 2).unwrap();
        assert_eq!(w.unit(), &BigInt::from(7));
        assert_eq!(teichmuller_exact(&rat(1, 5), 5).unwrap(), Some(rat(1, 5)));
        assert_eq!(teichmuller_exact(&int(3), 2).unwrap(), Some(int(-1)));
        assert_eq!(teichmuller_exact(&int(2), 5).unwrap(), None);
        assert!(teichmuller(&int(0), 5, 3).is_err());
    }

    #[test]
    fn omega_is_a_root_of_unity() {
        for p in [3u64, 5, 7] {
            for u in 1..(3 * p as i64) {
                if u % p as i64 == 0 {
                    continue;
                }
                let w = teichmuller(&int(u), p, 12).unwrap();
                assert!(w.pow((p - 1) as i64).unwrap().agrees_to(&PAdic::from_int(1, p, 12), 12));
                let a = angle(&int(u), p, 12).unwrap();
                assert!(a.sub(&PAdic::from_int(1, p, 12)).valuation_lower_bound() >= 1);
            }
        }
        let a = angle(&int(7), 2, 10).unwrap();
        assert!(a.sub(&PAdic::from_int(1, 2, 10)).valuation_lower_bound() >= 2);
    }

    #[test]
    fn log_values() {
        assert!(log_rat(&int(5), 5, 10).unwrap().is_zero());
        assert!(log_rat(&int(1), 5, 10).unwrap().is_zero());
        // log(6) = Σ (-1)^{t+1} 5^t/t, summed exactly far past the precision
        let mut s = Rat::zero();
        for t in 1..40i64 {
            let term = rat_pow(&int(5), t) / int(t);
            s += if t % 2 == 1 { term } else { -term };
        }
        let l = log_rat(&int(6), 5, 6).unwrap();
        assert!(l.agrees_to(&PAdic::from_rat(&s, 5, 6).unwrap(), 6));
        assert_eq!(l.valuation(), Some(1));
        // additivity through ω: log(2·3) = log 2 + log 3
        let a = log_rat(&int(2), 7, 10).unwrap().add(&log_rat(&int(3), 7, 10).unwrap());
        assert!(a.agrees_to(&log_rat(&int(6), 7, 10).unwrap(), 10));
        let b = log_rat(&int(3), 2, 12).unwrap().add(&log_rat(&int(5), 2, 12).unwrap());
        assert!(b.agrees_to(&log_rat(&int(15), 2, 12).unwrap(), 12));
    }
}
