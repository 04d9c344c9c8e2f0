//! The ℓ-free auxiliary polynomials P̂_n = Δ_{-1}^{n-M} Â_n and the
//! decomposition of every P_{n,ℓ} over the shifts P̂_n(z - j).


use crate::arith::{binom, factorial, int, sign_pow, Rat};
use crate::error::{arg, invariant, Result};
use crate::pade::{Index, PadeConfig, PadeSystem};
use crate::phi::PhiFunctional;
use crate::series::Poly;

fn need_n_ge_m(config: &PadeConfig, n: u64) -> Result<u64> {
    let m = config.big_m() as u64;
    if n < m {
        return arg(format!("auxiliary polynomials need n >= M = {m}, got n = {n}"));
    }
    Ok(m)
}

/// Â_n = (-1)^{n-M} ∏_i ((z+α_i)_n/n!)^{m_i+1}.
pub fn aux_a(config: &PadeConfig, n: u64) -> Result<Poly> {
    let m = need_n_ge_m(config, n)?;
    let inv = Rat::new(1.into(), factorial(n));
    let mut a = Poly::constant(sign_pow(n - m));
    for (al, &w) in config.alphas.iter().zip(&config.weights) {
        a = &a * &Poly::pochhammer(al, n).scale(&inv).pow(w + 1);
    }
    Ok(a)
}

/// P̂_n = Δ_{-1}^{n-M} Â_n.
pub fn aux_p(config: &PadeConfig, n: u64) -> Result<Poly> {
    let m = need_n_ge_m(config, n)?;
    Ok(aux_a(config, n)?.delta_pow(&int(-1), n - m))
}

/// Q̂_{n,i,s} = φ_{α_i,s}((P̂_n(z) - P̂_n(t))/(z - t)).
pub fn aux_q(config: &PadeConfig, n: u64, ix: Index) -> Result<Poly> {
    let p = aux_p(config, n)?;
    Ok(PhiFunctional::new(config.spec(ix)).apply_divided_difference(&p))
}

/// P̂_n(z) from the expanded difference Σ_k C(n-M,k) (-1)^{n-M-k} Â_n(z-k),
/// without forming the polynomial P̂_n.
pub fn aux_p_value(config: &PadeConfig, n: u64, z: &Rat) -> Result<Rat> {
    let m = need_n_ge_m(config, n)?;
    let e = n - m;
    let inv = Rat::new(1.into(), factorial(n));
    let a_at = |w: &Rat| -> Rat {
        let mut v = sign_pow(e);
        for (al, &wt) in config.alphas.iter().zip(&config.weights) {
            let f = crate::arith::pochhammer(&(w + al), n) * &inv;
            v *= num_traits::pow(f, wt as usize + 1);
        }
        v
    };
    Ok((0..=e)
        .map(|k| Rat::from_integer(binom(e, k)) * sign_pow(e - k) * a_at(&(z - int(k as i64))))
        .sum())
}

/// a_j(n, z) = Σ_{k=0}^{M-j} C(n,k) C(M-k,j) (-1)^{j+k+ℓ+Mn}/ℓ! · Δ_{-1}^k (z-n+k)_ℓ
/// for j = 0..=M.
pub fn decomposition_coeffs(config: &PadeConfig, n: u64, ell: u64) -> Result<Vec<Poly>> {
    let m = need_n_ge_m(config, n)?;
    if ell > m {
        return arg(format!("ℓ = {ell} exceeds M = {m}"));
    }
    let inv = Rat::new(1.into(), factorial(ell));
    Ok((0..=m)
        .map(|j| {
            let mut aj = Poly::zero();
            for k in 0..=(m - j) {
                let c = Rat::from_integer(binom(n, k) * binom(m - k, j)) * sign_pow(j + k + ell + m * n) * &inv;
                let t = Poly::pochhammer(&int(k as i64 - n as i64), ell).delta_pow(&int(-1), k);
                aj = &aj + &t.scale(&c);
            }
            aj
        })
        .collect())
}

/// P_{n,ℓ}(z) = Σ_j a_j(n,z) P̂_n(z - j), checked exactly.
pub fn verify_decomposition(config: &PadeConfig, n: u64, ell: u64) -> Result<()> {
    let a = decomposition_coeffs(config, n, ell)?;
    let ph = aux_p(config, n)?;
    let mut acc = Poly::zero();
    for (j, aj) in a.iter().enumerate() {
        acc = &acc + &(aj * &ph.shift(&int(-(j as i64))));
    }
    let p = PadeSystem::build(config, n, ell)?.p;
    let diff = &acc - &p;
    if !diff.is_zero() {
        return invariant(format!("decomposition fails for {config} n={n} ℓ={ell}: difference {diff}"));
    }
    Ok(())
}
