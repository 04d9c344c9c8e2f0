use num_traits::Zero;

use crate::arith::{factorial, Rat};
use crate::error::{arg, Result};
use crate::series::laurent::pochhammer_sum;
use crate::series::{LaurentSeries, PowerSeries};

/// Modified Laplace transform: Σ a_k z^k/k! -> Σ a_k z^k.
pub fn laplace(f: &PowerSeries) -> PowerSeries {
    PowerSeries::new(f.coeffs().iter().enumerate().map(|(k, a)| a * Rat::from_integer(factorial(k as u64))).collect())
}

/// Modified inverse Mellin transform
/// g = Σ a_k z^k -> Σ (-1)^{k+1} a_k k!/(z)_{k+1}, expanded to z^{-depth}.
///
/// Terms beyond the truncation order of `g` would first contribute at
/// index N+2, so the result is known to `min(depth, N+1)`.
pub fn mellin_inv(g: &PowerSeries, depth: i64) -> LaurentSeries {
    let depth = depth.min(g.trunc_order() as i64 + 1).max(0);
    let kmax = (depth - 1).max(-1);
    let c: Vec<Rat> = (0..=kmax)
        .map(|k| {
            let a = g.coeff(k as usize) * Rat::from_integer(factorial(k as u64));
            if k % 2 == 0 {
                -a
            } else {
                a
            }
        })
        .collect();
    let s = pochhammer_sum(&c, depth);
    LaurentSeries::new(1, s.coeffs()[1..].to_vec())
}

/// Applies g(Δ_1) = Σ g_j Δ_1^j to a series in (1/z)·Q[[1/z]].
pub fn mellin_hat(g: &PowerSeries, target: &LaurentSeries, depth: i64) -> Result<LaurentSeries> {
    if target.low() < 1 {
        return arg("g(Δ_1) needs a target without polynomial part");
    }
    let low = target.low();
    // Δ_1^j raises the order by j, so unknown g_{N+1} first matters at low+N+1.
    let depth = depth.min(target.depth()).min(low + g.trunc_order() as i64);
    let mut acc = LaurentSeries::zero(low, depth);
    let mut term = target.truncate(depth);
    for j in 0..=g.trunc_order() {
        if low + j as i64 > depth {
            break;
        }
        let gj = g.coeff(j);
        if !gj.is_zero() {
            acc = acc.add(&term.scale(gj));
        }
        term = term.delta(&Rat::from_integer(1.into()));
    }
    Ok(acc)
}
