//! Root moduli of characteristic polynomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{binom, int, Rat};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::primes::factorize;
use crate::series::Poly;

/// Divisor enumeration is skipped when either end coefficient has more
/// divisors than this.
const MAX_DIVISORS: usize = 4096;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let f = factorize(n.magnitude());
    let count: usize = f.iter().map(|(_, e)| *e as usize + 1).product();
    if count > MAX_DIVISORS {
        return None;
    }
    let mut ds = vec![BigUint::one()];
    for (q, e) in f {
        let mut next = Vec::new();
        for d in &ds {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &q;
            }
        }
        ds = next;
    }
    Some(ds.into_iter().map(BigInt::from).collect())
}

/// Rational roots with multiplicity, and the cofactor left after removing
/// them. Returns `None` when the divisor search is too large.
pub fn rational_roots(p: &Poly) -> Option<(Vec<Rat>, Poly)> {
    let mut rest = p.primitive();
    let mut roots = Vec::new();
    while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
        roots.push(Rat::zero());
        rest = Poly::new(rest.coeffs()[1..].to_vec());
    }
    if rest.degree().unwrap_or(0) == 0 {
        return Some((roots, rest));
    }
    let a0 = rest.coeff(0).to_integer();
    let an = rest.leading().to_integer();
    let (nums, dens) = (divisors(&a0)?, divisors(&an)?);
    let mut cands: Vec<Rat> = Vec::new();
    for a in &nums {
        for b in &dens {
            if a.gcd(b).is_one() {
                cands.push(Rat::new(a.clone(), b.clone()));
                cands.push(Rat::new(-a.clone(), b.clone()));
            }
        }
    }
    for r in cands {
        loop {
            if rest.degree().unwrap_or(0) == 0 || !rest.eval(&r).is_zero() {
                break;
            }
            rest = rest.div_rem(&Poly::new(vec![-r.clone(), int(1)])).0;
            roots.push(r.clone());
        }
    }
    Some((roots, rest.primitive()))
}

/// One Graeffe step: q(T^2) = (-1)^d p(T) p(-T).
fn graeffe(p: &[Rat]) -> Vec<Rat> {
    let d = p.len() - 1;
    let neg: Vec<Rat> = p.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    let prod = &Poly::new(p.to_vec()) * &Poly::new(neg);
    let sign = if d % 2 == 1 { int(-1) } else { int(1) };
    (0..=d).map(|i| prod.coeff(2 * i) * &sign).collect()
}

/// Encloses the largest root modulus of a polynomial with nonzero constant
/// term, via `steps` Graeffe squarings and coefficient bounds on the result.
fn graeffe_enclosure(p: &Poly, steps: u32, bits: u32) -> Interval {
    let d = p.degree().unwrap();
    let mut c: Vec<Rat> = p.coeffs().to_vec();
    for _ in 0..steps {
        c = graeffe(&c);
        // keep sizes down: the root set is invariant under scaling
        let lead = c[d].clone();
        c.iter_mut().for_each(|x| *x /= &lead);
    }
    let mut lo = Interval::zero();
    let mut hi = Interval::zero();
    for i in 1..=d {
        let e = c[d - i].abs();
        // Fujiwara: ρ <= 2 max |a_{d-i}/a_d|^{1/i}
        let up = Interval::point(e.clone()).root(i as u64, bits).scale(&int(2));
        if up.hi > hi.hi {
            hi = up;
        }
        // |e_i| <= C(d,i) ρ^i
        let down = Interval::point(e / Rat::from_integer(binom(d as u64, i as u64))).root(i as u64, bits);
        if down.lo > lo.lo {
            lo = down;
        }
    }
    let k = 1u64 << steps;
    Interval::new(lo.lo, hi.hi).root(k, bits)
}

/// An enclosure of max |root|. Rational roots are found exactly; the rest
/// is bounded by Graeffe iteration. When the largest rational root provably
/// dominates, the result is a point.
pub fn dominant_root_modulus(p: &Poly) -> Result<Interval> {
    let Some(d) = p.degree() else { return Err(Error::Domain("zero polynomial".into())) };
    if d == 0 {
        return Err(Error::Domain("constant polynomial has no roots".into()));
    }
    let bits = 64;
    let steps = 10;
    let (roots, rest) = match rational_roots(p) {
        Some(x) => x,
        None => (Vec::new(), p.primitive()),
    };
    let exact = roots.iter().map(|r| r.abs()).max();
    let rest_enc = match rest.degree() {
        Some(k) if k > 0 => Some(graeffe_enclosure(&rest, steps, bits)),
        _ => None,
    };
    Ok(match (exact, rest_enc) {
        (Some(r), None) => Interval::point(r),
        (None, Some(e)) => e,
        (Some(r), Some(e)) if e.hi < r => Interval::point(r),
        (Some(r), Some(e)) => Interval::new(r.clone().max(e.lo), r.max(e.hi)),
        (None, None) => unreachable!(),
    })
}

fn lin(a: i64, b: i64) -> Poly {
    Poly::new(vec![int(a), int(b)])
}

/// The expected characteristic polynomial for M = 1..=7 as factors with
/// multiplicities, single-shift case.
pub fn expected_char_poly(m: usize) -> Option<Vec<(Poly, u32)>> {
    let e = |c: &[i64]| Poly::new(c.iter().map(|&x| int(x)).collect());
    Some(match m {
        1 => vec![(lin(-1, 1), 1), (lin(1, 1), 1)],
        2 => vec![(lin(-1, 1), 2), (lin(-1, 4), 1)],
        3 => vec![(lin(-1, 1), 1), (lin(1, 1), 1), (e(&[1, 0, 27]), 1)],
        4 => vec![(lin(-1, 1), 2), (lin(-1, 16), 1), (lin(1, 4), 2)],
        5 => vec![(lin(-1, 1), 1), (lin(1, 1), 1), (e(&[1, 0, 625, 0, 3125]), 1)],
        6 => vec![(lin(-1, 1), 4), (lin(-1, 64), 1), (lin(1, 27), 2)],
        7 => vec![(lin(-1, 1), 1), (lin(1, 1), 1), (e(&[1, 0, 12005, 0, 6000099, 0, 823543]), 1)],
        _ => return None,
    })
}

/// True when `p` equals c·∏ f^k for a nonzero constant c, checked by exact
/// division.
pub fn matches_factored(p: &Poly, factors: &[(Poly, u32)]) -> bool {
    let mut rest = p.clone();
    for (f, k) in factors {
        for _ in 0..*k {
            let (q, r) = rest.div_rem(f);
            if !r.is_zero() {
                return false;
            }
            rest = q;
        }
    }
    rest.degree() == Some(0)
}

pub fn expand_factors(factors: &[(Poly, u32)]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, (f, k)| &acc * &f.pow(*k))
}
