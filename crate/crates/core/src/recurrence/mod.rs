//! Linear recurrences with polynomial coefficients: exact verification,
//! discovery by ansatz, characteristic polynomials and growth rates.

mod find;
mod roots;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binom, int, ln_abs_f64, rat_pow, Rat};
use crate::error::{arg, Error, Result};
use crate::pade::{aux_p_value, aux_q, Index, PadeConfig};
use crate::series::Poly;

pub use find::{find_recurrence, Samples};
pub use roots::{dominant_root_modulus, expand_factors, expected_char_poly, matches_factored, rational_roots};

/// a_J(n,z) u(n+J) + ... + a_0(n,z) u(n) = 0 for n >= `valid_from`.
///
/// `coeffs[j][f]` is the coefficient of z^f in a_j, a polynomial in n. A
/// recurrence with no z-dependence has a single entry per j.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub coeffs: Vec<Vec<Poly>>,
    pub valid_from: u64,
}

impl Recurrence {
    pub fn new(coeffs: Vec<Vec<Poly>>, valid_from: u64) -> Result<Self> {
        if coeffs.len() < 2 {
            return arg("a recurrence needs at least two coefficients");
        }
        if coeffs.last().unwrap().iter().all(Poly::is_zero) {
            return arg("leading coefficient of the recurrence vanishes identically");
        }
        Ok(Recurrence { coeffs, valid_from })
    }

    /// From z-free coefficients a_0(n), ..., a_J(n).
    pub fn fixed(coeffs: Vec<Poly>, valid_from: u64) -> Result<Self> {
        Self::new(coeffs.into_iter().map(|p| vec![p]).collect(), valid_from)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn z_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len()).max().unwrap_or(1) - 1
    }

    pub fn n_degree(&self) -> usize {
        self.coeffs.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// a_j(n, z).
    pub fn coeff_at(&self, j: usize, n: &Rat, z: &Rat) -> Rat {
        let mut zp = Rat::one();
        let mut acc = Rat::zero();
        for p in &self.coeffs[j] {
            acc += p.eval(n) * &zp;
            zp *= z;
        }
        acc
    }

    /// The z-free recurrence obtained by substituting z.
    pub fn at(&self, z: &Rat) -> Recurrence {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let mut zp = Rat::one();
                let mut acc = Poly::zero();
                for p in c {
                    acc = &acc + &p.scale(&zp);
                    zp *= z;
                }
                vec![acc]
            })
            .collect();
        Recurrence { coeffs, valid_from: self.valid_from }
    }

    /// a_j(n, z + c).
    pub fn shift_z(&self, c: &Rat) -> Recurrence {
        let coeffs = self
            .coeffs
            .iter()
            .map(|cf| {
                (0..cf.len())
                    .map(|g| {
                        let mut acc = Poly::zero();
                        for (f, p) in cf.iter().enumerate().skip(g) {
                            let w = Rat::from_integer(binom(f as u64, g as u64)) * rat_pow(c, (f - g) as i64);
                            acc = &acc + &p.scale(&w);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Recurrence { coeffs, valid_from: self.valid_from }
    }

    /// The residual Σ_j a_j(n,z) u(n+j), where `u[i]` = u(start + i).
    pub fn residual(&self, z: &Rat, start: u64, u: &[Rat], n: u64) -> Result<Rat> {
        if n < start || (n - start) as usize + self.order() >= u.len() {
            return arg(format!("sequence does not cover n = {n}..{}", n + self.order() as u64));
        }
        let i = (n - start) as usize;
        let nr = int(n as i64);
        Ok((0..=self.order()).map(|j| self.coeff_at(j, &nr, z) * &u[i + j]).sum())
    }

    /// First n in `from..=to` where the relation fails, or `None` if it holds
    /// throughout.
    pub fn first_failure(&self, z: &Rat, start: u64, u: &[Rat], from: u64, to: u64) -> Result<Option<u64>> {
        for n in from..=to {
            if !self.residual(z, start, u, n)?.is_zero() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Some nonzero c with other = c·self, coefficientwise.
    pub fn proportional(&self, other: &Recurrence) -> Option<Rat> {
        if self.order() != other.order() {
            return None;
        }
        let flat = |r: &Recurrence| -> Vec<Rat> {
            let zd = r.z_degree().max(other.z_degree()).max(self.z_degree());
            let nd = r.n_degree().max(other.n_degree()).max(self.n_degree());
            let mut v = Vec::new();
            for c in &r.coeffs {
                for f in 0..=zd {
                    let p = c.get(f).cloned().unwrap_or_else(Poly::zero);
                    v.extend((0..=nd).map(|e| p.coeff(e)));
                }
            }
            v
        };
        let (a, b) = (flat(self), flat(other));
        let k = a.iter().position(|x| !x.is_zero())?;
        let c = &b[k] / &a[k];
        if c.is_zero() || a.iter().zip(&b).any(|(x, y)| &(x * &c) != y) {
            return None;
        }
        Some(c)
    }

    /// χ(T) = Σ_j b_j T^j with b_j the coefficient of n^{dmax} in a_j,
    /// made primitive with positive leading coefficient.
    pub fn char_poly(&self) -> Result<Poly> {
        let d = self.n_degree();
        for c in &self.coeffs {
            if c.iter().skip(1).any(|p| !p.coeff(d).is_zero()) {
                return Err(Error::Domain("the characteristic polynomial depends on z".into()));
            }
        }
        let b = Poly::new(self.coeffs.iter().map(|c| c.first().map(|p| p.coeff(d)).unwrap_or_default()).collect());
        if b.degree() != Some(self.order()) {
            return Err(Error::Domain("a_J has lower degree than the recurrence".into()));
        }
        Ok(b.primitive())
    }

    pub fn to_json(&self) -> RecurrenceJson {
        let strs = |p: &Poly, d: usize| (0..=d).map(|e| p.coeff(e).to_string()).collect::<Vec<_>>();
        let d = self.n_degree();
        let zero = Poly::zero();
        RecurrenceJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| strs(c.first().unwrap_or(&zero), d)).collect(),
            valid_from: self.valid_from,
            z_coeffs: (self.z_degree() > 0)
                .then(|| self.coeffs.iter().map(|c| c.iter().map(|p| strs(p, d)).collect()).collect()),
        }
    }
}

/// Wire form: `coeffs[j][e]` is the n^e coefficient of a_j; z-dependent
/// recurrences add `zCoeffs[j][f][e]` for z^f n^e (and `coeffs` holds f = 0).
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecurrenceJson {
    pub order: usize,
    pub coeffs: Vec<Vec<String>>,
    pub valid_from: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_coeffs: Option<Vec<Vec<Vec<String>>>>,
}

fn p(c: &[i64]) -> Poly {
    Poly::new(c.iter().map(|&x| int(x)).collect())
}

fn prod(ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::one(), |acc, q| &acc * q)
}

/// The M = 1 recurrence as printed. It annihilates n -> P̂_n(z + 2), n >= 1.
pub fn printed_m1() -> Recurrence {
    Recurrence::new(
        vec![vec![p(&[0, -1, -1])], vec![p(&[-12, -8]), p(&[-6, -4])], vec![p(&[6, 5, 1])]],
        1,
    )
    .unwrap()
}

/// The M = 2 recurrence as printed. It annihilates n -> P̂_n(z + 2), n >= 2.
pub fn printed_m2() -> Recurrence {
    let a3 = prod(&[p(&[2]), p(&[5, 3]), p(&[4, 1]), p(&[7, 2]), p(&[3, 1]), p(&[3, 1])]);
    let f = p(&[-7, -3]);
    let a2 = vec![
        &f * &p(&[840, 976, 381, 74, 9]),
        &f * &p(&[600, 585, 135]),
        &f * &p(&[120, 117, 27]),
    ];
    let a1 = prod(&[p(&[0, 2]), p(&[1, 1]), p(&[43, 80, 48, 9])]);
    let a0 = prod(&[p(&[0, -1]), p(&[8, 3]), p(&[-1, 1]), p(&[1, 1]), p(&[1, 1])]);
    Recurrence::new(vec![vec![a0], vec![a1], a2, vec![a3]], 2).unwrap()
}

/// The printed recurrence rewritten for n -> P̂_n(z) itself (z replaced by z - 2).
pub fn shifted(printed: &Recurrence) -> Recurrence {
    printed.shift_z(&int(-2))
}

/// P̂_n(z) for n in `from..from+count`.
pub fn aux_p_sequence(config: &PadeConfig, z: &Rat, from: u64, count: usize) -> Result<Vec<Rat>> {
    (from..from + count as u64).map(|n| aux_p_value(config, n, z)).collect()
}

/// Q̂_{n,i,s}(z) for n in `from..from+count`.
pub fn aux_q_sequence(config: &PadeConfig, ix: Index, z: &Rat, from: u64, count: usize) -> Result<Vec<Rat>> {
    (from..from + count as u64).map(|n| Ok(aux_q(config, n, ix)?.eval(z))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    /// (n, log|u(n)|/n); zero terms are skipped.
    pub samples: Vec<(u64, f64)>,
    /// Least-squares slope of log|u(n)| against n.
    pub slope: f64,
    /// log|u(n)|/n at the last nonzero term.
    pub last: f64,
}

/// Growth statistics for `u[i]` = u(start + i).
pub fn growth_slope(start: u64, u: &[Rat]) -> Result<GrowthReport> {
    let pts: Vec<(f64, f64)> = u
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| ((start + i as u64) as f64, ln_abs_f64(v)))
        .collect();
    if pts.len() < 2 {
        return arg("growth estimate needs two nonzero terms");
    }
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    let samples: Vec<(u64, f64)> = pts.iter().filter(|(x, _)| *x > 0.0).map(|&(x, y)| (x as u64, y / x)).collect();
    let last = samples.last().map(|s| s.1).unwrap_or(0.0);
    Ok(GrowthReport { samples, slope: num / den, last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn printed_recurrences_need_the_shift() {
        let c1 = PadeConfig::single(1);
        for z in [rat(1, 3), rat(1, 4)] {
            let u = aux_p_sequence(&c1, &(&z + int(2)), 1, 15).unwrap();
            assert_eq!(printed_m1().first_failure(&z, 1, &u, 1, 12).unwrap(), None);
            let v = aux_p_sequence(&c1, &z, 1, 15).unwrap();
            assert!(printed_m1().first_failure(&z, 1, &v, 1, 12).unwrap().is_some());
            assert_eq!(shifted(&printed_m1()).first_failure(&z, 1, &v, 1, 12).unwrap(), None);
        }
        let c2 = PadeConfig::single(2);
        let z = rat(1, 4);
        let u = aux_p_sequence(&c2, &(&z + int(2)), 2, 14).unwrap();
        assert_eq!(printed_m2().first_failure(&z, 2, &u, 2, 10).unwrap(), None);
        let v = aux_p_sequence(&c2, &z, 2, 14).unwrap();
        assert_eq!(shifted(&printed_m2()).first_failure(&z, 2, &v, 2, 10).unwrap(), None);
    }

    #[test]
    fn shifted_m1_is_simple() {
        let s = shifted(&printed_m1());
        assert_eq!(s.coeffs[1], vec![Poly::zero(), p(&[-6, -4])]);
        assert_eq!(s.shift_z(&int(2)), printed_m1());
    }

    #[test]
    fn char_polys() {
        assert_eq!(printed_m1().char_poly().unwrap(), p(&[-1, 0, 1]));
        assert_eq!(printed_m2().char_poly().unwrap(), p(&[-1, 6, -9, 4]));
        let triv = Recurrence::fixed(vec![p(&[-1]), p(&[1])], 0).unwrap();
        assert_eq!(triv.char_poly().unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn proportionality() {
        let a = printed_m2();
        let b = Recurrence { coeffs: a.coeffs.iter().map(|c| c.iter().map(|q| q.scale(&rat(-3, 2))).collect()).collect(), valid_from: 0 };
        assert_eq!(a.proportional(&b), Some(rat(-3, 2)));
        assert_eq!(a.proportional(&printed_m1()), None);
    }

    #[test]
    fn growth_calibration() {
        let u: Vec<Rat> = (0..30).map(|n| rat_pow(&int(2), n)).collect();
        let g = growth_slope(0, &u).unwrap();
        assert!((g.slope - 2f64.ln()).abs() < 1e-12);
        assert!(growth_slope(0, &[int(0), int(1)]).is_err());
    }

    #[test]
    fn short_sequence_is_an_argument_error() {
        assert!(printed_m1().residual(&int(0), 1, &[int(1), int(2)], 1).is_err());
    }
}
