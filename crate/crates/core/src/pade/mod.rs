//! Padé-type approximants (P, Q_{i,s}) of the family R_{α_i,s}, their
//! explicit forms, remainders, determinants and denominators.

mod auxiliary;
mod denominator;
mod det;
mod explicit;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, int, is_integer, Rat};
use crate::error::{arg, invariant, Result};
use crate::phi::{r_series, PhiFunctional, RSpec};
use crate::series::{inv_pochhammer, LaurentSeries, Poly};

pub use auxiliary::{aux_a, aux_p, aux_p_value, aux_q, decomposition_coeffs, verify_decomposition};
pub use denominator::{denominator_bound, denominator_cert, DenominatorCert};
pub use det::{bareiss_det, conjecture_check, matp_det, matp_from_theta, theta, ConjectureReport};
pub use explicit::{explicit_p, explicit_p_coeffs, explicit_q, verify_explicit};

/// Index (i, s) with `i` 1-based, as in the family R_{α_i, s}.
pub type Index = (usize, u32);

/// Shift vector α (α_1 = 0) and weights m_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadeConfig {
    #[serde(with = "crate::arith::serde_rat::vec")]
    pub alphas: Vec<Rat>,
    pub weights: Vec<u32>,
}

impl PadeConfig {
    pub fn new(alphas: Vec<Rat>, weights: Vec<u32>) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != weights.len() {
            return arg("need as many weights as shifts, at least one");
        }
        if !alphas[0].is_zero() {
            return arg("the first shift must be 0");
        }
        if weights[0] == 0 {
            return arg("the first weight must be >= 1");
        }
        for i in 0..alphas.len() {
            for j in 0..i {
                if is_integer(&(&alphas[i] - &alphas[j])) {
                    return arg(format!("shifts {} and {} differ by an integer", alphas[j], alphas[i]));
                }
            }
        }
        Ok(PadeConfig { alphas, weights })
    }

    /// Single shift 0 with weight m.
    pub fn single(m: u32) -> Self {
        Self::new(vec![Rat::zero()], vec![m]).expect("valid")
    }

    pub fn d(&self) -> usize {
        self.alphas.len()
    }

    /// M = d - 1 + Σ m_i, the number of approximated series.
    pub fn big_m(&self) -> usize {
        self.d() - 1 + self.weights.iter().map(|&m| m as usize).sum::<usize>()
    }

    pub fn max_weight(&self) -> u32 {
        *self.weights.iter().max().unwrap()
    }

    /// I = {(i, s) : 1 <= s <= m_i + 1} minus (1, 1).
    pub fn index_set(&self) -> Vec<Index> {
        let mut v = Vec::new();
        for (i, &m) in self.weights.iter().enumerate() {
            for s in 1..=m + 1 {
                if (i, s) != (0, 1) {
                    v.push((i + 1, s));
                }
            }
        }
        v
    }

    pub fn spec(&self, (i, s): Index) -> RSpec {
        RSpec::new(self.alphas[i - 1].clone(), s).expect("index from index_set")
    }

    pub fn functionals(&self) -> Vec<(Index, PhiFunctional)> {
        self.index_set().into_iter().map(|ix| (ix, PhiFunctional::new(self.spec(ix)))).collect()
    }

    /// ∏_i ((-1)^n (z+α_i)_n/n!)^{m_i+1}
    pub fn weight_poly(&self, n: u64) -> Poly {
        let c = Rat::new(if n.is_multiple_of(2) { 1.into() } else { (-1).into() }, factorial(n));
        let mut w = Poly::one();
        for (a, &m) in self.alphas.iter().zip(&self.weights) {
            let f = Poly::pochhammer(a, n).scale(&c);
            w = &w * &f.pow(m + 1);
        }
        w
    }
}

impl std::fmt::Display for PadeConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.alphas.iter().map(|x| x.to_string()).collect();
        write!(f, "α=({}) m={:?}", a.join(","), self.weights)
    }
}

/// A_{n,ℓ} = (-1)^ℓ (z)_ℓ/ℓ! · ∏_i ((-1)^n (z+α_i)_n/n!)^{m_i+1}.
pub fn build_a(config: &PadeConfig, n: u64, ell: u64) -> Poly {
    let c = Rat::new(if ell.is_multiple_of(2) { 1.into() } else { (-1).into() }, factorial(ell));
    (&Poly::pochhammer(&Rat::zero(), ell).scale(&c)) * &config.weight_poly(n)
}

/// The approximant for one (n, ℓ): A, P = Δ_{-1}^n A and every Q_{i,s}.
#[derive(Clone, Debug)]
pub struct PadeSystem {
    pub config: PadeConfig,
    pub n: u64,
    pub ell: u64,
    pub a: Poly,
    pub p: Poly,
    pub q: BTreeMap<Index, Poly>,
}

impl PadeSystem {
    pub fn build(config: &PadeConfig, n: u64, ell: u64) -> Result<Self> {
        if ell > config.big_m() as u64 {
            return arg(format!("ℓ = {ell} exceeds M = {}", config.big_m()));
        }
        let a = build_a(config, n, ell);
        let p = a.delta_pow(&int(-1), n);
        let q = config.functionals().into_iter().map(|(ix, mut phi)| (ix, phi.apply_divided_difference(&p))).collect();
        Ok(PadeSystem { config: config.clone(), n, ell, a, p, q })
    }

    pub fn q_of(&self, ix: Index) -> &Poly {
        &self.q[&ix]
    }

    /// P·R_{α_i,s} - Q_{i,s} by direct series arithmetic, known to `depth`.
    pub fn remainder_series(&self, ix: Index, depth: i64) -> LaurentSeries {
        let deg = self.p.degree().unwrap_or(0) as i64;
        let r = r_series(&self.config.spec(ix), depth + deg);
        r.mul_poly(&self.p).sub(&LaurentSeries::from_poly(&self.q[&ix], depth))
    }

    /// ord(P·R - Q) >= n+1 for every index, checked to `depth`.
    pub fn verify_order(&self, depth: i64) -> Result<()> {
        let need = self.n as i64 + 1;
        for &ix in self.q.keys() {
            let rem = self.remainder_series(ix, depth.max(need));
            if !rem.ord_at_least(need) {
                return invariant(format!(
                    "{} n={} ℓ={} {:?}: ord(P·R - Q) = {:?} < {need}",
                    self.config, self.n, self.ell, ix, rem.ord()
                ));
            }
        }
        Ok(())
    }

    /// k!/(k-n)! · φ_{α_i,s}((t+n)_{k-n} A(t)), the coefficient of 1/(z)_{k+1}
    /// in the remainder.
    pub fn remainder_coeff(&self, ix: Index, k: u64) -> Result<Rat> {
        if k < self.n {
            return arg(format!("remainder coefficient index {k} is below n = {}", self.n));
        }
        let mut phi = PhiFunctional::new(self.config.spec(ix));
        Ok(remainder_coeff_with(&mut phi, &self.a, self.n, k))
    }

    /// The remainder rebuilt from its coefficients in the basis 1/(z)_{k+1}.
    pub fn remainder_via_formula(&self, ix: Index, depth: i64) -> LaurentSeries {
        let mut phi = PhiFunctional::new(self.config.spec(ix));
        let mut acc = LaurentSeries::zero(1, depth);
        for k in self.n..(depth.max(0) as u64) {
            let c = remainder_coeff_with(&mut phi, &self.a, self.n, k);
            if !c.is_zero() {
                acc = acc.add(&inv_pochhammer(k, depth).scale(&c));
            }
        }
        acc
    }

    /// t^k P(t) lies in ker φ_{α_i,s} for k < n.
    pub fn verify_kernel_membership(&self) -> Result<()> {
        for (ix, mut phi) in self.config.functionals() {
            for k in 0..self.n as usize {
                let v = phi.apply(&(&Poly::monomial(Rat::one(), k) * &self.p));
                if !v.is_zero() {
                    return invariant(format!("φ{ix:?}(t^{k} P) = {v} ≠ 0 for {} n={} ℓ={}", self.config, self.n, self.ell));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn remainder_coeff_with(phi: &mut PhiFunctional, a: &Poly, n: u64, k: u64) -> Rat {
    let poly = &Poly::pochhammer(&int(n as i64), k - n) * a;
    let c = Rat::from_integer(factorial(k)) / Rat::from_integer(factorial(k - n));
    phi.apply(&poly) * c
}

/// All approximants ℓ = 0..=M for one n.
pub fn build_family(config: &PadeConfig, n: u64) -> Result<Vec<PadeSystem>> {
    (0..=config.big_m() as u64).map(|ell| PadeSystem::build(config, n, ell)).collect()
}

/// The configurations used by the acceptance sweeps: d = 1 with m <= `max_m`,
/// and d = 2 with second shift in {1/2, 1/3}, m_1 in 1..=max_m, m_2 in 0..=max_m.
pub fn sweep_configs(max_m: u32) -> Vec<PadeConfig> {
    let mut v: Vec<PadeConfig> = (1..=max_m).map(PadeConfig::single).collect();
    for a2 in [Rat::new(1.into(), 2.into()), Rat::new(1.into(), 3.into())] {
        for m1 in 1..=max_m {
            for m2 in 0..=max_m {
                v.push(PadeConfig::new(vec![Rat::zero(), a2.clone()], vec![m1, m2]).unwrap());
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn anchor_case() {
        let c = PadeConfig::single(1);
        let s = PadeSystem::build(&c, 1, 0).unwrap();
        assert_eq!(s.a, p(&[0, 0, 1]));
        assert_eq!(s.p, p(&[1, -2]));
        assert_eq!(s.q_of((1, 2)), &p(&[2]));
        let rem = s.remainder_series((1, 2), 6);
        assert_eq!(rem.ord(), Some(2));
        assert_eq!(rem.coeff(2).unwrap(), rat(-1, 6));
        assert_eq!(s.remainder_coeff((1, 2), 1).unwrap(), rat(-1, 6));
        assert_eq!(s.remainder_via_formula((1, 2), 10), s.remainder_series((1, 2), 10));
    }

    #[test]
    fn degenerate_n_zero() {
        let c = PadeConfig::single(2);
        let s = PadeSystem::build(&c, 0, 0).unwrap();
        assert_eq!(s.a, Poly::one());
        assert_eq!(s.p, s.a);
        assert!(s.q.values().all(|q| q.is_zero()));
    }

    #[test]
    fn shapes() {
        let c = PadeConfig::new(vec![int(0), rat(1, 2)], vec![1, 1]).unwrap();
        assert_eq!(c.big_m(), 3);
        assert_eq!(c.index_set(), vec![(1, 2), (2, 1), (2, 2)]);
        let s = PadeSystem::build(&c, 1, 0).unwrap();
        let want = &p(&[0, 0, 1]) * &Poly::new(vec![rat(1, 2), int(1)]).pow(2);
        assert_eq!(s.a, want);
        let s = PadeSystem::build(&c, 2, 1).unwrap();
        assert_eq!(s.p.degree(), Some(7));
        assert_eq!(s.a.degree(), Some(9));
        assert!(PadeConfig::new(vec![int(0), int(2)], vec![1, 1]).is_err());
        assert!(PadeConfig::new(vec![rat(1, 2)], vec![1]).is_err());
        assert!(PadeSystem::build(&c, 1, 4).is_err());
    }

    #[test]
    fn order_small_range() {
        for c in sweep_configs(1) {
            for n in 0..=3 {
                for s in build_family(&c, n).unwrap() {
                    s.verify_order(n as i64 + 4).unwrap();
                    s.verify_kernel_membership().unwrap();
                }
            }
        }
    }

    #[test]
    fn remainder_two_paths() {
        let c = PadeConfig::single(1);
        let s = PadeSystem::build(&c, 2, 0).unwrap();
        let direct = s.remainder_series((1, 2), 12);
        assert_eq!(s.remainder_via_formula((1, 2), 12), direct);
        assert!(s.remainder_coeff((1, 2), 1).is_err());
    }
}
