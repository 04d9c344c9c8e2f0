//! Determinants: Θ_n, det Matp(z), and the conjectured closed form in the
//! single-shift case.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{factorial, Rat};
use crate::error::{arg, invariant, Result};
use crate::pade::{build_a, build_family, PadeConfig};
use crate::phi::{PhiFunctional, RSpec};
use crate::series::Poly;

/// Fraction-free (Bareiss) elimination with row pivoting. Over Q every
/// division is exact, and the final pivot is the determinant.
pub fn bareiss_det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut sign = Rat::one();
    let mut prev = Rat::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Rat::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Θ_n = det(φ_{α_i,s}(A_{n,ℓ}))_{ℓ < M, (i,s) ∈ I}; fails if zero.
pub fn theta(config: &PadeConfig, n: u64) -> Result<Rat> {
    let mut phis = config.functionals();
    let m = config.big_m();
    let rows: Vec<Vec<Rat>> = (0..m as u64)
        .map(|ell| {
            let a = build_a(config, n, ell);
            phis.iter_mut().map(|(_, phi)| phi.apply(&a)).collect()
        })
        .collect();
    let d = bareiss_det(rows);
    if d.is_zero() {
        return invariant(format!("Θ_{n} vanishes for {config}"));
    }
    Ok(d)
}

/// Determinant of a square polynomial matrix by cofactor expansion along
/// rows, memoized on the set of columns still in play.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    fn go(m: &[Vec<Poly>], row: usize, mask: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        let n = m.len();
        if row == n {
            return Poly::one();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Poly::zero();
        let mut parity = 0;
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = go(m, row + 1, mask | (1 << c), memo);
                let t = &m[row][c] * &minor;
                acc = if parity % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            parity += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    assert!(m.len() < 64, "matrix too large for cofactor expansion");
    go(m, 0, 0, &mut HashMap::new())
}

/// det of the matrix with columns (P_ℓ, Q_{i,s,ℓ}), ℓ = 0..=M. Fails unless
/// it is a nonzero constant; returns that constant.
pub fn matp_det(config: &PadeConfig, n: u64) -> Result<Rat> {
    if n == 0 {
        return arg("det Matp needs n >= 1");
    }
    let fam = build_family(config, n)?;
    let idx = config.index_set();
    let mut rows = vec![fam.iter().map(|s| s.p.clone()).collect::<Vec<_>>()];
    for ix in &idx {
        rows.push(fam.iter().map(|s| s.q_of(*ix).clone()).collect());
    }
    let d = poly_det(&rows);
    match d.degree() {
        Some(0) => Ok(d.leading()),
        None => invariant(format!("det Matp vanishes for {config} n={n}")),
        Some(k) => invariant(format!("det Matp has degree {k} for {config} n={n}")),
    }
}

/// |det Matp| = (n!)^M |lc(P_{n,M})| |Θ_n|.
pub fn matp_from_theta(config: &PadeConfig, n: u64) -> Result<Rat> {
    let m = config.big_m();
    let lc = crate::pade::PadeSystem::build(config, n, m as u64)?.p.leading();
    let f = Rat::from_integer(num_traits::pow(factorial(n), m));
    Ok((f * lc * theta(config, n)?).abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub m: usize,
    pub nvec: Vec<u64>,
    #[serde(with = "crate::arith::serde_rat")]
    pub lhs: Rat,
    /// The conjectured value, sign included.
    #[serde(with = "crate::arith::serde_rat")]
    pub rhs: Rat,
    pub magnitude_match: bool,
    pub sign_match: bool,
}

/// det(φ_s((t)_ℓ/ℓ! · ∏_j (t)_{n_j}/n_j!))_{ℓ < m, 2 <= s <= m+1} against
/// (-1)^{m-1} m! ∏ n_j!/(Σ n_j + m)!.
pub fn conjecture_check(m: usize, nvec: &[u64]) -> Result<ConjectureReport> {
    if m == 0 || nvec.len() != m + 1 {
        return arg("need m >= 1 and m+1 entries");
    }
    let zero = Rat::zero();
    let mut base = Poly::one();
    for &nj in nvec {
        base = &base * &Poly::pochhammer(&zero, nj).scale(&Rat::new(1.into(), factorial(nj)));
    }
    let mut phis: Vec<PhiFunctional> = (2..=m as u32 + 1).map(|s| PhiFunctional::new(RSpec::new(zero.clone(), s).unwrap())).collect();
    let rows: Vec<Vec<Rat>> = (0..m as u64)
        .map(|ell| {
            let row_poly = &Poly::pochhammer(&zero, ell).scale(&Rat::new(1.into(), factorial(ell))) * &base;
            phis.iter_mut().map(|phi| phi.apply(&row_poly)).collect()
        })
        .collect();
    let lhs = bareiss_det(rows);
    let total: u64 = nvec.iter().sum::<u64>() + m as u64;
    let num = nvec.iter().fold(factorial(m as u64), |acc, &nj| acc * factorial(nj));
    let mut rhs = Rat::new(num, factorial(total));
    if m.is_multiple_of(2) {
        rhs = -rhs;
    }
    Ok(ConjectureReport {
        m,
        nvec: nvec.to_vec(),
        magnitude_match: lhs.abs() == rhs.abs(),
        sign_match: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![vec![int(0), int(2), int(1)], vec![rat(1, 2), int(3), int(-1)], vec![int(4), int(0), rat(2, 3)]];
        let pm: Vec<Vec<Poly>> = m.iter().map(|r| r.iter().map(|x| Poly::constant(x.clone())).collect()).collect();
        assert_eq!(Poly::constant(bareiss_det(m)), poly_det(&pm));
        assert_eq!(bareiss_det(vec![vec![int(1), int(2)], vec![int(2), int(4)]]), int(0));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&PadeConfig::single(1), 1).unwrap(), rat(-1, 6));
        assert!(!theta(&PadeConfig::single(2), 1).unwrap().is_zero());
        let c = PadeConfig::new(vec![int(0), rat(1, 2)], vec![1, 1]).unwrap();
        assert!(!theta(&c, 1).unwrap().is_zero());
    }

    #[test]
    fn matp_is_constant_and_tied_to_theta() {
        for c in [PadeConfig::single(1), PadeConfig::single(2), PadeConfig::new(vec![int(0), rat(1, 2)], vec![1, 1]).unwrap()] {
            for n in 1..=2 {
                let d = matp_det(&c, n).unwrap();
                assert_eq!(d.abs(), matp_from_theta(&c, n).unwrap(), "{c} n={n}");
            }
        }
        assert!(matp_det(&PadeConfig::single(1), 0).is_err());
    }

    #[test]
    fn conjecture_examples() {
        let r = conjecture_check(1, &[1, 1]).unwrap();
        assert_eq!(r.lhs, rat(-1, 6));
        assert_eq!(r.rhs, rat(1, 6));
        assert!(r.magnitude_match && !r.sign_match);
        let r = conjecture_check(1, &[0, 0]).unwrap();
        assert_eq!(r.lhs, int(-1));
        assert!(r.magnitude_match);
        assert!(conjecture_check(2, &[1, 1, 1]).unwrap().magnitude_match);
    }
}
