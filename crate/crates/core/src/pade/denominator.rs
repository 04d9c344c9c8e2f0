//! A common denominator for the values P_{n,ℓ}(x), Q_{n,i,s,ℓ}(x).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_integer, lcm_up_to, Rat};
use crate::error::{arg, invariant, Result};
use crate::mu::mu_n;
use crate::pade::{build_family, PadeConfig};

/// D_n(α,x) = μ_N(x) ∏_{i>=2} μ_n(α_i)^{m_i+1} μ_N(α) d_N ∏_{k=1}^{m} d_{⌊N/k⌋}
/// with N = Mn + M and m the largest weight.
pub fn denominator_bound(config: &PadeConfig, n: u64, x: &Rat) -> Result<BigInt> {
    if x.is_zero() {
        return arg("the evaluation point must be nonzero");
    }
    let big_m = config.big_m() as u64;
    let big_n = big_m * n + big_m;
    let mut d = mu_n(std::slice::from_ref(x), big_n)? * mu_n(&config.alphas, big_n)? * lcm_up_to(big_n)?;
    for (a, &w) in config.alphas.iter().zip(&config.weights).skip(1) {
        d *= num_traits::pow(mu_n(std::slice::from_ref(a), n)?, w as usize + 1);
    }
    for k in 1..=config.max_weight() as u64 {
        d *= lcm_up_to(big_n / k)?;
    }
    Ok(d)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenominatorCert {
    pub n: u64,
    #[serde(with = "crate::arith::serde_rat")]
    pub x: Rat,
    #[serde(with = "crate::json::bigint_str")]
    pub d: BigInt,
    /// D_n·P_{n,ℓ}(x) for ℓ = 0..=M.
    #[serde(with = "crate::json::bigint_vec")]
    pub p_values: Vec<BigInt>,
    /// D_n·Q_{n,i,s,ℓ}(x), one row per ℓ in index-set order.
    #[serde(with = "crate::json::bigint_rows")]
    pub q_values: Vec<Vec<BigInt>>,
}

/// Computes D_n and checks that it clears every P_{n,ℓ}(x) and Q_{n,i,s,ℓ}(x).
pub fn denominator_cert(config: &PadeConfig, n: u64, x: &Rat) -> Result<DenominatorCert> {
    let d = denominator_bound(config, n, x)?;
    let dr = Rat::from_integer(d.clone());
    let clear = |v: Rat, what: &str| -> Result<BigInt> {
        let w = v * &dr;
        if !is_integer(&w) {
            return invariant(format!("D_{n}·{what} = {w} is not an integer ({config}, x = {x})"));
        }
        Ok(w.to_integer())
    };
    let mut p_values = Vec::new();
    let mut q_values = Vec::new();
    for sys in build_family(config, n)? {
        p_values.push(clear(sys.p.eval(x), &format!("P_ℓ={}", sys.ell))?);
        let row = sys
            .q
            .iter()
            .map(|(ix, q)| clear(q.eval(x), &format!("Q{ix:?}_ℓ={}", sys.ell)))
            .collect::<Result<Vec<_>>>()?;
        q_values.push(row);
    }
    Ok(DenominatorCert { n, x: x.clone(), d, p_values, q_values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn single_shift_bound() {
        // M = 1, n = 1: N = 2, μ_2(1/5) = 25, μ_2(0) = 1, d_2 = 2 twice
        let d = denominator_bound(&PadeConfig::single(1), 1, &rat(1, 5)).unwrap();
        assert_eq!(d, BigInt::from(25 * 2 * 2));
        assert!(denominator_bound(&PadeConfig::single(1), 1, &int(0)).is_err());
    }

    #[test]
    fn certificates() {
        let two = PadeConfig::new(vec![int(0), rat(1, 2)], vec![1, 1]).unwrap();
        for x in [rat(1, 3), rat(1, 5), rat(2, 7), int(3)] {
            for c in [PadeConfig::single(1), PadeConfig::single(2), two.clone()] {
                for n in 0..=4 {
                    denominator_cert(&c, n, &x).unwrap();
                }
            }
        }
    }
}
