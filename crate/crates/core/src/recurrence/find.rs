//! Recurrence discovery: exact nullspace of the ansatz system
//! Σ_{j,e,f} c_{j,e,f} n^e z^f u(n+j) = 0, with a modular rank prefilter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, Rat};
use crate::recurrence::Recurrence;
use crate::series::Poly;

/// Held-out rows per series used only for validation.
const HELD_OUT: usize = 5;
const MODULUS: u64 = (1 << 61) - 1;

/// Exact samples u_z(start + i) for one or more parameter values z.
#[derive(Clone, Debug)]
pub struct Samples {
    pub start: u64,
    pub series: Vec<(Rat, Vec<Rat>)>,
}

impl Samples {
    pub fn fixed(z: Rat, start: u64, values: Vec<Rat>) -> Self {
        Samples { start, series: vec![(z, values)] }
    }
}

/// Smallest (J, D) in lexicographic order, J in 1..=max_order and D in
/// 0..=max_degree, admitting a recurrence of z-degree <= `z_degree` that
/// holds on every sample, the held-out ones included.
pub fn find_recurrence(samples: &Samples, max_order: usize, max_degree: usize, z_degree: usize) -> Option<Recurrence> {
    for j in 1..=max_order {
        for d in 0..=max_degree {
            if let Some(r) = try_shape(samples, j, d, z_degree) {
                return Some(r);
            }
        }
    }
    None
}

fn row(samples: &Samples, z: &Rat, u: &[Rat], i: usize, j_max: usize, d: usize, fz: usize) -> Vec<Rat> {
    let n = int((samples.start + i as u64) as i64);
    let mut out = Vec::with_capacity((j_max + 1) * (d + 1) * (fz + 1));
    for j in 0..=j_max {
        let mut ne = u[i + j].clone();
        for _ in 0..=d {
            let mut zf = ne.clone();
            for _ in 0..=fz {
                out.push(zf.clone());
                zf *= z;
            }
            ne *= &n;
        }
    }
    out
}

fn try_shape(samples: &Samples, j: usize, d: usize, fz: usize) -> Option<Recurrence> {
    let unknowns = (j + 1) * (d + 1) * (fz + 1);
    let mut fit = Vec::new();
    let mut held = Vec::new();
    for (z, u) in &samples.series {
        let rows = u.len().checked_sub(j)?;
        if rows <= HELD_OUT {
            return None;
        }
        for i in 0..rows {
            let r = row(samples, z, u, i, j, d, fz);
            if i < rows - HELD_OUT {
                fit.push(r);
            } else {
                held.push(r);
            }
        }
    }
    if fit.len() < unknowns {
        return None;
    }
    if let Some(rank) = rank_mod_p(&fit, unknowns) {
        if rank == unknowns {
            return None;
        }
    }
    let c = nullspace_vector(&fit, unknowns)?;
    let dot = |r: &Vec<Rat>| r.iter().zip(&c).map(|(a, b)| a * b).sum::<Rat>();
    if held.iter().chain(&fit).any(|r| !dot(r).is_zero()) {
        return None;
    }
    // unpack c_{j,e,f} into coeffs[j][f] = Σ_e c n^e
    let coeffs: Vec<Vec<Poly>> = (0..=j)
        .map(|jj| {
            (0..=fz)
                .map(|f| Poly::new((0..=d).map(|e| c[(jj * (d + 1) + e) * (fz + 1) + f].clone()).collect()))
                .collect()
        })
        .collect();
    Recurrence::new(coeffs, samples.start).ok()
}

fn mod_p(x: &Rat) -> Option<u64> {
    let p = BigInt::from(MODULUS);
    let num = x.numer().mod_floor(&p).to_u64()?;
    let den = x.denom().mod_floor(&p).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mulmod(num, powmod(den, MODULUS - 2)))
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

/// Rank over F_p; a lower bound for the rank over Q. `None` if some
/// denominator vanishes mod p.
fn rank_mod_p(rows: &[Vec<Rat>], ncols: usize) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(mod_p).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, pr);
        let inv = powmod(m[rank][c], MODULUS - 2);
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below.iter_mut().filter(|r| r[c] != 0) {
            let f = mulmod(row[c], inv);
            for (x, &y) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                *x = (*x + MODULUS - mulmod(f, y)) % MODULUS;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// One nonzero primitive integer vector in the right nullspace, by
/// fraction-free elimination; `None` if the matrix has full column rank.
fn nullspace_vector(rows: &[Vec<Rat>], ncols: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let (top, rest) = m.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            for k in c + 1..ncols {
                row[k] = (&piv[c] * &row[k] - &row[c] * &piv[k]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv[c].clone();
        pivots.push(c);
        r += 1;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); ncols];
    x[free] = Rat::one();
    for (ri, &pc) in pivots.iter().enumerate().rev() {
        let s: Rat = (pc + 1..ncols).map(|k| Rat::from_integer(m[ri][k].clone()) * &x[k]).sum();
        x[pc] = -s / Rat::from_integer(m[ri][pc].clone());
    }
    let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let g = x.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&(v * Rat::from_integer(l.clone())).to_integer()));
    let s = Rat::new(l, g);
    let lead_neg = x.iter().rev().find(|v| !v.is_zero()).map(|v| v.is_negative()).unwrap_or(false);
    Some(x.into_iter().map(|v| if lead_neg { -(v * &s) } else { v * &s }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::pade::PadeConfig;
    use crate::recurrence::{aux_p_sequence, printed_m1, shifted};

    #[test]
    fn constant_sequence() {
        let s = Samples::fixed(int(0), 0, vec![int(7); 12]);
        let r = find_recurrence(&s, 3, 3, 0).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.char_poly().unwrap(), Poly::new(vec![int(-1), int(1)]));
    }

    #[test]
    fn factorial_sequence() {
        let u: Vec<Rat> = (0..20u64).map(|n| Rat::from_integer(crate::arith::factorial(n))).collect();
        let r = find_recurrence(&Samples::fixed(int(0), 0, u), 2, 2, 0).unwrap();
        assert_eq!((r.order(), r.n_degree()), (1, 1));
    }

    #[test]
    fn recovers_m1_up_to_scalar() {
        let c = PadeConfig::single(1);
        let z = rat(1, 3);
        let u = aux_p_sequence(&c, &z, 1, 20).unwrap();
        let r = find_recurrence(&Samples::fixed(z.clone(), 1, u), 3, 3, 0).unwrap();
        assert!(shifted(&printed_m1()).at(&z).proportional(&r).is_some());
        let series = [rat(1, 3), rat(1, 4), rat(2, 5)]
            .into_iter()
            .map(|z| {
                let u = aux_p_sequence(&c, &(&z + int(2)), 1, 16).unwrap();
                (z, u)
            })
            .collect();
        let r = find_recurrence(&Samples { start: 1, series }, 3, 3, 1).unwrap();
        assert!(printed_m1().proportional(&r).is_some());
    }

    #[test]
    fn gives_up_within_bounds() {
        let u: Vec<Rat> = (0..14u64).map(|n| Rat::from_integer(crate::arith::factorial(n * n))).collect();
        assert!(find_recurrence(&Samples::fixed(int(0), 0, u), 2, 2, 0).is_none());
    }
}
