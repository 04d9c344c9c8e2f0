//! p-adic size of the Padé remainders at a rational point,
//! ℜ(x) = Σ_{k>=n} c_k/(x)_{k+1} with c_k = k!/(k-n)! · φ((t+n)_{k-n} A(t)).

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factorial, int, valuation, Rat};
use crate::error::{Error, Result};
use crate::mu::MuValue;
use crate::pade::{build_a, Index, PadeConfig};
use crate::padic::log_p_ceil;
use crate::phi::PhiFunctional;
use crate::series::Poly;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RemainderValuation {
    pub n: u64,
    /// Certified lower bound on v_p(ℜ(x)).
    #[serde(with = "crate::arith::serde_rat")]
    pub lower_bound: Rat,
    /// True when the partial sum's valuation lies below the tail bound, so
    /// `lower_bound` is the exact valuation.
    pub exact: bool,
    pub terms_used: u64,
    #[serde(with = "crate::arith::serde_rat")]
    pub tail_bound: Rat,
}

/// 1/ln p <= 3/2 for every prime, used in the slope condition.
fn inv_ln_p_upper() -> Rat {
    Rat::new(3.into(), 2.into())
}

/// v_p(ℜ_{n,i,s,ℓ}(x)) by exact partial sums and the termwise bound
/// v(term_k) >= -c_A - ν(k + c_1) - (s-1) log_p(k + c_1) - (k+1) v(x),
/// with ν = v_p(μ(α_i)), c_1 = Mn + ℓ + 1 and c_A = Σ_j (m_j+1) v_p(μ_n(α_j)).
/// Requires |x|_p |μ(α_i)|_p > 1.
pub fn remainder_valuation(config: &PadeConfig, ix: Index, ell: u64, n: u64, x: &Rat, p: u64) -> Result<RemainderValuation> {
    let spec = config.spec(ix);
    let vx = valuation(x, p).ok_or_else(|| Error::Domain("x = 0".into()))?;
    let nu = MuValue::of(std::slice::from_ref(&spec.alpha))?.vp(p);
    let delta = -&nu - int(vx);
    if delta <= Rat::zero() {
        return Err(Error::Domain(format!("need |x|_{p}·|μ(α_i)|_{p} > 1, got v(x) = {vx}, v(μ) = {nu}")));
    }
    if ell > config.big_m() as u64 {
        return Err(Error::Argument(format!("ℓ = {ell} exceeds M")));
    }
    let mut c_a = 0i64;
    for (a, &w) in config.alphas.iter().zip(&config.weights) {
        let mn = MuValue::of(std::slice::from_ref(a))?.mu_n(n);
        c_a += (w as i64 + 1) * crate::arith::vp_bigint(&mn, p).unwrap_or(0);
    }
    let c1 = config.big_m() as u64 * n + ell + 1;
    let s1 = spec.s as i64 - 1;
    let c0 = int(-c_a) - &nu * int(c1 as i64) - int(vx);
    // tail from K on: slope condition δ >= (s-1)(3/2)/(K + c_1), value at K
    let tail = |k: u64| -> Option<Rat> {
        if int(s1) * inv_ln_p_upper() > &delta * int((k + c1) as i64) {
            return None;
        }
        Some(&c0 + &delta * int(k as i64) - int(s1 * log_p_ceil(p, k + c1)))
    };

    let mut phi = PhiFunctional::new(spec);
    let mut f = build_a(config, n, ell);
    let mut pochx = (0..=n).fold(Rat::from_integer(1.into()), |acc, j| acc * (x + int(j as i64)));
    let mut sum = Rat::zero();
    let mut k = n;
    let cap = n + 400;
    loop {
        let c = Rat::from_integer(factorial(k) / factorial(k - n)) * phi.apply(&f);
        sum += c / &pochx;
        k += 1;
        f = &f * &Poly::linear(int(k as i64 - 1));
        pochx *= x + int(k as i64);
        if let Some(t) = tail(k) {
            let vs = valuation(&sum, p);
            let exact = matches!(vs, Some(v) if int(v) < t);
            if exact || k >= cap {
                let lower = match vs {
                    Some(v) if int(v) < t => int(v),
                    _ => t.clone(),
                };
                return Ok(RemainderValuation { n, lower_bound: lower, exact, terms_used: k - n, tail_bound: t });
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SlopeReport {
    pub rows: Vec<RemainderValuation>,
    /// 1/(p-1) - v(x) - (M+1) v(μ(α_i)) - Σ_k (m_k+1) v(μ(α_k)).
    #[serde(with = "crate::arith::serde_rat")]
    pub predicted_slope: Rat,
    /// Smallest C with v_p(ℜ_n) >= n·slope - C·ln(n+1) on the computed rows.
    pub required_constant: f64,
}

pub fn remainder_valuation_slope(config: &PadeConfig, ix: Index, ell: u64, x: &Rat, p: u64, n_max: u64) -> Result<SlopeReport> {
    let rows = (1..=n_max).map(|n| remainder_valuation(config, ix, ell, n, x, p)).collect::<Result<Vec<_>>>()?;
    let vx = valuation(x, p).unwrap();
    let big_m = config.big_m() as i64;
    let mut pred = Rat::new(1.into(), (p as i64 - 1).into()) - int(vx) - MuValue::of(&[config.spec(ix).alpha])?.vp(p) * int(big_m + 1);
    for (a, &w) in config.alphas.iter().zip(&config.weights) {
        pred -= MuValue::of(std::slice::from_ref(a))?.vp(p) * int(w as i64 + 1);
    }
    let ps = crate::arith::to_f64(&pred);
    let required_constant = rows
        .iter()
        .map(|r| (r.n as f64 * ps - crate::arith::to_f64(&r.lower_bound)) / ((r.n + 1) as f64).ln())
        .fold(0.0, f64::max);
    Ok(SlopeReport { rows, predicted_slope: pred, required_constant })
}
