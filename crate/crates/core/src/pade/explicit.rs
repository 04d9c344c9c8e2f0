//! Closed-form coefficients of P and Q, used to cross-check the operator
//! construction.

use num_traits::Zero;

use crate::arith::{binom, binom_rat, factorial, int, Rat};
use crate::error::{invariant, Result};
use crate::pade::{Index, PadeConfig, PadeSystem};
use crate::phi::{from_rising_factorial_basis, g_coeffs};
use crate::series::Poly;

/// p_{n,j,ℓ} = Σ_{k=n}^{j+n} C(j+n,k) (-1)^{n-k} C(k,ℓ) ∏_r C(k-α_r, n)^{m_r+1},
/// for j = 0..=Mn+ℓ. P = Σ_j p_j (z)_j/j!.
pub fn explicit_p_coeffs(config: &PadeConfig, n: u64, ell: u64) -> Vec<Rat> {
    let top = config.big_m() as u64 * n + ell;
    // Values at the integer points k of the weight factor.
    let w: Vec<Rat> = (0..=top + n)
        .map(|k| {
            let mut v = Rat::from_integer(binom(k, ell));
            for (a, &m) in config.alphas.iter().zip(&config.weights) {
                let b = binom_rat(&(int(k as i64) - a), n);
                v *= num_traits::pow(b, m as usize + 1);
            }
            v
        })
        .collect();
    (0..=top)
        .map(|j| {
            (n..=j + n)
                .map(|k| {
                    let t = Rat::from_integer(binom(j + n, k)) * &w[k as usize];
                    if (n + k) % 2 == 1 {
                        -t
                    } else {
                        t
                    }
                })
                .sum()
        })
        .collect()
}

pub fn explicit_p(config: &PadeConfig, n: u64, ell: u64) -> Poly {
    from_rising_factorial_basis(&explicit_p_coeffs(config, n, ell))
}

/// Q_{i,s} = Σ_{j>=1} p_j (Σ_{k<j} (-1)^{k+1} a_{i,s,k} k!/(z)_{k+1}) (z)_j/j!,
/// with (z)_j/(z)_{k+1} = (z+k+1)_{j-k-1}.
pub fn explicit_q(config: &PadeConfig, n: u64, ell: u64, ix: Index) -> Result<Poly> {
    let p = explicit_p_coeffs(config, n, ell);
    let spec = config.spec(ix);
    let a = g_coeffs(&spec.alpha, spec.s, p.len())?;
    let mut q = Poly::zero();
    for (j, pj) in p.iter().enumerate().skip(1) {
        if pj.is_zero() {
            continue;
        }
        let mut inner = Poly::zero();
        for (k, ak) in a.iter().enumerate().take(j) {
            let c = ak * Rat::from_integer(factorial(k as u64));
            let c = if k % 2 == 0 { -c } else { c };
            inner = &inner + &Poly::pochhammer(&int(k as i64 + 1), (j - k - 1) as u64).scale(&c);
        }
        q = &q + &inner.scale(&(pj / Rat::from_integer(factorial(j as u64))));
    }
    Ok(q)
}

/// Fails unless the closed forms agree with the operator construction.
pub fn verify_explicit(sys: &PadeSystem) -> Result<()> {
    let p = explicit_p(&sys.config, sys.n, sys.ell);
    if p != sys.p {
        return invariant(format!("explicit P differs from Δ^n A for {} n={} ℓ={}", sys.config, sys.n, sys.ell));
    }
    for (&ix, q) in &sys.q {
        if explicit_q(&sys.config, sys.n, sys.ell, ix)? != *q {
            return invariant(format!("explicit Q{ix:?} differs for {} n={} ℓ={}", sys.config, sys.n, sys.ell));
        }
    }
    Ok(())
}
