//! p-adic values of R_{α,s}, Diamond's G_p and ζ_p(s, x), each summed to a
//! certified tail valuation.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binom_signed, factorial, int, rat, rat_pow, valuation, Rat};
use crate::error::{Error, Result};
use crate::padic::{angle, log_p_floor, log_rat, q_p, PAdic};
use crate::phi::{r_coeffs, RSpec};
use crate::primes::is_prime_u64;
use crate::series::Bernoulli;

/// A series value with the certificate for its truncation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PadicSeriesResult {
    pub value: PAdic,
    /// Every omitted term has valuation at least this.
    pub tail_valuation: i64,
    pub terms_used: usize,
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    Ok(())
}

fn val(x: &Rat, p: u64) -> Result<i64> {
    valuation(x, p).ok_or_else(|| Error::Domain("evaluation point is 0".into()))
}

/// Repeats `f(extra)` with more working digits until the result is known to
/// O(p^target), then trims it there.
fn to_precision(target: i64, mut f: impl FnMut(i64) -> Result<PAdic>) -> Result<PAdic> {
    let mut extra = 4;
    for _ in 0..12 {
        let v = f(extra)?;
        if v.abs_precision() >= target {
            return Ok(v.reduce_to(target));
        }
        extra += (target - v.abs_precision()).max(1) + 4;
    }
    Err(Error::Invariant(format!("could not reach precision O(p^{target})")))
}

/// Smallest k >= start with bound(k) >= target; `bound` must be nondecreasing.
fn first_reaching(start: usize, target: i64, bound: impl Fn(usize) -> i64) -> usize {
    let mut k = start;
    while bound(k) < target {
        k += 1;
    }
    k
}

/// R_{α,s}(x) + O(p^prec).
///
/// For s >= 2 this is R_s(x+α) = Σ_k (k-s+3)_{s-2} B_{k-s+2} (-1)^{k+1}/(x+α)^{k+1},
/// which needs |x+α|_p > 1. For s = 1 the expansion in 1/x needs
/// |x|_p > max(1, |α|_p).
pub fn eval_r_series(spec: &RSpec, x: &Rat, p: u64, prec: i64) -> Result<PadicSeriesResult> {
    check_prime(p)?;
    if spec.s >= 2 {
        let y = x + &spec.alpha;
        let vy = val(&y, p)?;
        if vy >= 0 {
            return Err(Error::Domain(format!("R_{} needs |x+α|_{p} > 1", spec.s)));
        }
        // |B_j|_p <= p and the Pochhammer factor is an integer
        let bound = |k: usize| -1 - (k as i64 + 1) * vy;
        let terms = first_reaching(0, prec, bound);
        let f = r_coeffs(&RSpec::new(Rat::zero(), spec.s)?, terms.max(1));
        let yi = y.recip();
        let mut s = Rat::zero();
        let mut pw = yi.clone();
        for c in f.iter().take(terms) {
            s += c * &pw;
            pw *= &yi;
        }
        return Ok(PadicSeriesResult { value: PAdic::from_rat(&s, p, prec)?, tail_valuation: bound(terms), terms_used: terms });
    }
    let vx = val(x, p)?;
    let va = valuation(&spec.alpha, p).expect("α ≠ 0 when s = 1");
    if vx >= va.min(0) {
        return Err(Error::Domain(format!("R_{{α,1}} needs |x|_{p} > max(1, |α|_{p})")));
    }
    // v(B_n(α) - B_n) >= -1 + min(v(α), n·v(α)), then divide by n = k+1
    let bound = |k: usize| {
        let n = k as i64 + 1;
        -1 + va.min(n * va) - log_p_floor(p, n as u64) - n * vx
    };
    let terms = first_reaching(0, prec, bound);
    let f = r_coeffs(spec, terms.max(1));
    let xi = x.recip();
    let mut s = Rat::zero();
    let mut pw = xi.clone();
    for c in f.iter().take(terms) {
        s += c * &pw;
        pw *= &xi;
    }
    Ok(PadicSeriesResult { value: PAdic::from_rat(&s, p, prec)?, tail_valuation: bound(terms), terms_used: terms })
}

/// Diamond's log-gamma
/// G_p(x) = (x - 1/2) log_p(x) - x + Σ_{k>=1} B_{k+1}/(k(k+1)) x^{-k}, |x|_p > 1.
pub fn eval_gp(x: &Rat, p: u64, prec: i64) -> Result<PAdic> {
    check_prime(p)?;
    let vx = val(x, p)?;
    if vx >= 0 {
        return Err(Error::Domain(format!("G_p needs |x|_{p} > 1")));
    }
    let mut b = Bernoulli::new();
    to_precision(prec, |extra| {
        let work = prec + extra;
        // only one of k, k+1 is divisible by p, and it is at most k+1
        let bound = |k: usize| -1 - log_p_floor(p, k as u64 + 1) - k as i64 * vx;
        let terms = first_reaching(1, work, bound);
        let mut s = Rat::zero();
        for k in 1..terms {
            let kk = k as i64;
            s += b.get(k + 1) / int(kk * (kk + 1)) * rat_pow(x, -kk);
        }
        let sum = PAdic::from_rat(&s, p, work)?;
        let log = log_rat(x, p, (work - vx + 2) as u32)?;
        let lin = PAdic::from_rat(&(x - rat(1, 2)), p, work + 2)?;
        Ok(lin.mul(&log).sub(&PAdic::from_rat(x, p, work)?).add(&sum))
    })
}

/// G_p(x+1) - G_p(x) - log_p(x), which vanishes identically.
pub fn gp_functional_equation(x: &Rat, p: u64, prec: i64) -> Result<PAdic> {
    let l = log_rat(x, p, prec as u32 + 2)?;
    Ok(eval_gp(&(x + int(1)), p, prec)?.sub(&eval_gp(x, p, prec)?).sub(&l).reduce_to(prec))
}

/// ζ_p(s, x) = ⟨x⟩^{1-s}/(s-1) Σ_k C(1-s, k) B_k x^{-k} + O(p^prec) for
/// integer s ≠ 1 and |x|_p >= q_p. For s <= 0 the sum is finite.
pub fn eval_zeta(s: i64, x: &Rat, p: u64, prec: i64) -> Result<PAdic> {
    check_prime(p)?;
    if s == 1 {
        return Err(Error::Pole("ζ_p(s, x) has a pole at s = 1".into()));
    }
    let vx = val(x, p)?;
    let need = if p == 2 { -2 } else { -1 };
    if vx > need {
        return Err(Error::Domain(format!("ζ_p(s, x) needs |x|_{p} >= q_p = {}", q_p(p))));
    }
    let e = 1 - s;
    let mut b = Bernoulli::new();
    to_precision(prec, |extra| {
        let work = prec + extra;
        let (sum, known) = if e >= 0 {
            let s: Rat = (0..=e as u64).map(|k| Rat::from_integer(binom_signed(e, k)) * b.get(k as usize) * rat_pow(x, -(k as i64))).sum();
            (s, work)
        } else {
            // C(1-s, k) ∈ Z, |B_k|_p <= p
            let bound = |k: usize| -1 - k as i64 * vx;
            let terms = first_reaching(0, work, bound);
            let s: Rat = (0..terms as u64).map(|k| Rat::from_integer(binom_signed(e, k)) * b.get(k as usize) * rat_pow(x, -(k as i64))).sum();
            (s, bound(terms))
        };
        let a = angle(x, p, (work + 2) as u32)?.pow(e)?;
        Ok(PAdic::from_rat(&sum, p, known)?.mul(&a).scale(&Rat::new(1.into(), (s - 1).into())))
    })
}

/// (-1)^{s+1}/(s-1)! · R_s(x), the right side of the ζ_p–R_s link.
pub fn polygamma_side(s: u32, x: &Rat, p: u64, prec: i64) -> Result<PAdic> {
    let r = eval_r_series(&RSpec::new(Rat::zero(), s)?, x, p, prec + 2)?.value;
    let c = Rat::new(if s % 2 == 1 { 1.into() } else { (-1).into() }, factorial(s as u64 - 1));
    Ok(r.scale(&c).reduce_to(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{teichmuller, teichmuller_exact};
    use crate::series::{bernoulli_poly, LaurentSeries};

    #[test]
    fn r_series_examples() {
        let r = eval_r_series(&RSpec::new(Rat::zero(), 2).unwrap(), &rat(1, 5), 5, 30).unwrap();
        assert!(r.tail_valuation >= 30);
        // leading term -1/x has valuation -1; the next one is B_1/x^2 = -25/2
        assert_eq!(r.value.valuation(), Some(1));
        let twice = eval_r_series(&RSpec::new(Rat::zero(), 2).unwrap(), &rat(1, 5), 5, 60).unwrap();
        assert!(twice.value.agrees_to(&r.value, 30));
        assert!(eval_r_series(&RSpec::new(Rat::zero(), 2).unwrap(), &int(1), 5, 10).is_err());
        assert!(eval_r_series(&RSpec::new(rat(1, 3), 2).unwrap(), &rat(1, 5), 5, 20).is_ok());
        assert!(eval_r_series(&RSpec::new(rat(1, 5), 1).unwrap(), &rat(1, 5), 5, 20).is_err());
        assert!(eval_r_series(&RSpec::new(rat(1, 5), 1).unwrap(), &rat(1, 25), 5, 20).is_ok());
    }

    #[test]
    fn r_series_first_weight_matches_difference() {
        // R_{α,1}(x+1) - R_{α,1}(x) = α/(x(x+α)) at p = 5, α = 1, x = 1/25
        let spec = RSpec::new(int(1), 1).unwrap();
        let x = rat(1, 25);
        let a = eval_r_series(&spec, &(&x + int(1)), 5, 20).unwrap().value;
        let b = eval_r_series(&spec, &x, 5, 20).unwrap().value;
        let want = PAdic::from_rat(&(int(1) / (&x * (&x + int(1)))), 5, 20).unwrap();
        assert!(a.sub(&b).agrees_to(&want, 20));
    }

    #[test]
    fn gp_functional_equation_holds() {
        for (x, p) in [(rat(1, 5), 5u64), (rat(2, 7), 7), (rat(3, 4), 2)] {
            let d = gp_functional_equation(&x, p, 20).unwrap();
            assert!(d.is_zero() && d.abs_precision() >= 20, "{x} {p}: {d}");
        }
        assert!(eval_gp(&int(3), 5, 10).is_err());
    }

    #[test]
    fn second_derivative_of_gp_is_minus_r2() {
        // Laurent part of G_p: (z - 1/2) log z - z contributes 1/z + 1/(2z^2)
        let depth = 30;
        let mut b = Bernoulli::new();
        let mut c = vec![Rat::zero(); depth as usize];
        c[0] = int(1);
        c[1] = rat(1, 2);
        for k in 1..(depth as usize - 1) {
            // d²/dz² B_{k+1}/(k(k+1)) z^{-k} = B_{k+1} z^{-k-2}
            c[k + 1] += b.get(k + 1);
        }
        let g2 = LaurentSeries::new(1, c);
        let r2 = crate::phi::r_series(&RSpec::new(Rat::zero(), 2).unwrap(), depth);
        assert_eq!(g2.scale(&int(-1)), r2);
    }

    #[test]
    fn zeta_interpolation_and_links() {
        let (p, x, n) = (5u64, rat(1, 5), 15);
        assert!(matches!(eval_zeta(1, &x, p, n), Err(Error::Pole(_))));
        assert!(eval_zeta(2, &int(1), p, n).is_err());
        // ζ_p(1-k, x) = -ω(x)^{-k} B_k(x)/k
        let w = teichmuller_exact(&x, p).unwrap().unwrap();
        for k in 1..=4i64 {
            let want = -rat_pow(&w, -k) * bernoulli_poly(k as usize).eval(&x) / int(k);
            assert!(eval_zeta(1 - k, &x, p, n).unwrap().agrees_to(&PAdic::from_rat(&want, p, n).unwrap(), n), "k={k}");
        }
        for s in [2u32, 3] {
            let ws = teichmuller(&x, p, 20).unwrap().pow(1 - s as i64).unwrap();
            let lhs = ws.mul(&eval_zeta(s as i64, &x, p, n + 2).unwrap());
            assert!(lhs.agrees_to(&polygamma_side(s, &x, p, n).unwrap(), n), "s={s}");
            let d = eval_zeta(s as i64, &(&x + int(1)), p, n).unwrap().sub(&eval_zeta(s as i64, &x, p, n).unwrap());
            let rhs = teichmuller(&x, p, 20).unwrap().pow(s as i64 - 1).unwrap().mul(&PAdic::from_rat(&rat_pow(&x, -(s as i64)), p, 30).unwrap()).neg();
            assert!(d.agrees_to(&rhs, n), "s={s}");
        }
    }

    #[test]
    fn zeta_translation_at_non_rational_omega() {
        // x = 2/7 at p = 7: ω(2) is not rational
        let (p, x, n) = (7u64, rat(2, 7), 12);
        for s in [2i64, 3] {
            let d = eval_zeta(s, &(&x + int(1)), p, n).unwrap().sub(&eval_zeta(s, &x, p, n).unwrap());
            let rhs = teichmuller(&x, p, 20).unwrap().pow(s - 1).unwrap().mul(&PAdic::from_rat(&rat_pow(&x, -s), p, 30).unwrap()).neg();
            assert!(d.agrees_to(&rhs, n), "s={s}");
        }
    }
}
