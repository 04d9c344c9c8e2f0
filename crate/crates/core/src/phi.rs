//! The series R_{α,s}, their coefficient generators, and the linear
//! functionals φ_{α,s}: t^k -> k-th coefficient of R_{α,s}.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binom, binom_rat, factorial, int, rat_pow, Rat};
use crate::error::{arg, invariant, Result};
use crate::series::{Bernoulli, LaurentSeries, Poly, PowerSeries};

/// Identifies R_{α,s}; the pair (0, 1) is rejected since φ_{0,1} = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RSpec {
    #[serde(with = "crate::arith::serde_rat")]
    pub alpha: Rat,
    pub s: u32,
}

impl RSpec {
    pub fn new(alpha: Rat, s: u32) -> Result<Self> {
        if s == 0 {
            return arg("weight s must be >= 1");
        }
        if s == 1 && alpha.is_zero() {
            return arg("(α, s) = (0, 1) gives the zero functional");
        }
        Ok(RSpec { alpha, s })
    }
}

/// Coefficients of R_s = R_{0,s} for s >= 2:
/// f_k = (k-s+3)_{s-2} B_{k-s+2} (-1)^{k+1} for k >= s-2, else 0.
fn r0_coeffs(s: u32, kmax: usize, b: &mut Bernoulli) -> Vec<Rat> {
    let s = s as i64;
    (0..=kmax as i64)
        .map(|k| {
            if k < s - 2 {
                return Rat::zero();
            }
            let poch = crate::arith::pochhammer(&int(k - s + 3), (s - 2) as u64);
            let v = poch * b.get((k - s + 2) as usize);
            if k % 2 == 0 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// f_0..=f_kmax for R_{α,s}.
pub fn r_coeffs(spec: &RSpec, kmax: usize) -> Vec<Rat> {
    let mut b = Bernoulli::new();
    b.extend_to(kmax + 2);
    if spec.s == 1 {
        // (B_{k+1}(α) - B_{k+1})/(k+1) · (-1)^{k+1}
        return (0..=kmax)
            .map(|k| {
                let n = k + 1;
                let mut acc = Rat::zero();
                let mut apow = spec.alpha.clone();
                for j in (0..n).rev() {
                    acc += Rat::from_integer(binom(n as u64, j as u64)) * b.get(j) * &apow;
                    apow *= &spec.alpha;
                }
                let v = acc / int(n as i64);
                if k % 2 == 0 {
                    -v
                } else {
                    v
                }
            })
            .collect();
    }
    let f0 = r0_coeffs(spec.s, kmax, &mut b);
    if spec.alpha.is_zero() {
        return f0;
    }
    // Σ_j f_j/(z+α)^{j+1}: coefficient of z^{-(k+1)} is Σ_j f_j C(k, j) (-α)^{k-j}.
    let na = -&spec.alpha;
    let pw: Vec<Rat> = (0..=kmax).map(|e| rat_pow(&na, e as i64)).collect();
    (0..=kmax)
        .map(|k| (0..=k).filter(|&j| !f0[j].is_zero()).map(|j| &f0[j] * Rat::from_integer(binom(k as u64, j as u64)) * &pw[k - j]).sum())
        .collect()
}

/// Single coefficient f_k of R_{α,s}.
pub fn r_series_coeff(spec: &RSpec, k: usize) -> Rat {
    r_coeffs(spec, k).pop().unwrap()
}

/// R_{α,s} as a Laurent series known to z^{-depth}.
pub fn r_series(spec: &RSpec, depth: i64) -> LaurentSeries {
    let kmax = (depth - 1).max(0) as usize;
    let f = r_coeffs(spec, kmax);
    LaurentSeries::new(1, f[..(depth.max(0) as usize)].to_vec())
}

/// a_{i,s,k} for k = 0..=kmax, the Taylor coefficients of
/// (1+z)^α log^{s-1}(1+z)/z.
pub fn g_coeffs(alpha: &Rat, s: u32, kmax: usize) -> Result<Vec<Rat>> {
    RSpec::new(alpha.clone(), s)?;
    if s == 1 {
        return Ok((0..=kmax).map(|k| binom_rat(alpha, k as u64 + 1)).collect());
    }
    // Composition sum: coefficient of z^{k-s+2} in (log(1+z)/z)^{s-1}.
    let base: Vec<Rat> = (0..=kmax).map(|l| Rat::new(if l % 2 == 0 { 1.into() } else { (-1).into() }, (l as i64 + 1).into())).collect();
    let mut comp = vec![Rat::zero(); kmax + 1];
    comp[0] = Rat::one();
    for _ in 0..(s - 1) {
        let mut next = vec![Rat::zero(); kmax + 1];
        for (i, a) in comp.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().enumerate().take(kmax + 1 - i) {
                next[i + j] += a * b;
            }
        }
        comp = next;
    }
    let shift = (s - 2) as usize;
    let a1: Vec<Rat> = (0..=kmax).map(|k| if k >= shift { comp[k - shift].clone() } else { Rat::zero() }).collect();
    if alpha.is_zero() {
        return Ok(a1);
    }
    let c: Vec<Rat> = (0..=kmax).map(|j| binom_rat(alpha, j as u64)).collect();
    Ok((0..=kmax).map(|k| (0..=k).map(|j| &c[j] * &a1[k - j]).sum()).collect())
}

pub fn g_series_coeff(alpha: &Rat, s: u32, k: usize) -> Result<Rat> {
    Ok(g_coeffs(alpha, s, k)?.pop().unwrap())
}

/// g_{α,s} = (1+z)^α log^{s-1}(1+z)/z as a power series known to z^n,
/// built from series arithmetic (independent of [`g_coeffs`]).
pub fn g_series(alpha: &Rat, s: u32, n: usize) -> Result<PowerSeries> {
    RSpec::new(alpha.clone(), s)?;
    let l = PowerSeries::log1p(n + 1);
    let mut g = PowerSeries::binomial(alpha, n + 1);
    if s == 1 {
        g = g.sub(&PowerSeries::one(n + 1));
    } else {
        g = g.mul(&l.pow(s - 1));
    }
    g.div_z()
}

/// φ_{α,s}, caching the coefficients it has needed so far.
#[derive(Clone, Debug)]
pub struct PhiFunctional {
    pub spec: RSpec,
    coeffs: Vec<Rat>,
}

impl PhiFunctional {
    pub fn new(spec: RSpec) -> Self {
        PhiFunctional { spec, coeffs: Vec::new() }
    }

    /// Makes f_0..=f_kmax available.
    pub fn ensure(&mut self, kmax: usize) {
        if self.coeffs.len() <= kmax {
            self.coeffs = r_coeffs(&self.spec, (kmax + 1).max(2 * self.coeffs.len()));
        }
    }

    /// φ(t^k) = f_k.
    pub fn moment(&mut self, k: usize) -> Rat {
        self.ensure(k);
        self.coeffs[k].clone()
    }

    pub fn moments(&mut self, kmax: usize) -> &[Rat] {
        self.ensure(kmax);
        &self.coeffs[..=kmax]
    }

    /// φ(P) = Σ P_k f_k over the monomial basis.
    pub fn apply(&mut self, p: &Poly) -> Rat {
        let Some(d) = p.degree() else { return Rat::zero() };
        self.ensure(d);
        p.coeffs().iter().zip(&self.coeffs).map(|(a, f)| a * f).sum()
    }

    /// φ_t((P(z) - P(t))/(z - t)) by synthetic division:
    /// the coefficient of z^a is Σ_{j>a} P_j f_{j-1-a}.
    pub fn apply_divided_difference(&mut self, p: &Poly) -> Poly {
        let Some(d) = p.degree() else { return Poly::zero() };
        if d == 0 {
            return Poly::zero();
        }
        self.ensure(d);
        let pc = p.coeffs();
        Poly::new((0..d).map(|a| ((a + 1)..=d).map(|j| &pc[j] * &self.coeffs[j - 1 - a]).sum()).collect())
    }
}

/// φ_{α,s}(P) evaluated in the rising-factorial basis:
/// φ((t)_j/j!) = (-1)^{j+1} a_{α,s,j}.
pub fn phi_apply_factorial_basis(spec: &RSpec, p: &Poly) -> Result<Rat> {
    let Some(d) = p.degree() else { return Ok(Rat::zero()) };
    let c = to_rising_factorial_basis(p);
    let a = g_coeffs(&spec.alpha, spec.s, d)?;
    Ok(c.iter().zip(&a).enumerate().map(|(j, (cj, aj))| if j % 2 == 0 { -(cj * aj) } else { cj * aj }).sum())
}

/// Coordinates of P in the basis (t)_j/j!, by Newton interpolation at
/// t = 0, -1, -2, ...: P = Σ_j c_j (t)_j/j! with c_j = (-1)^j Δ_{-1}^j P (0).
pub fn to_rising_factorial_basis(p: &Poly) -> Vec<Rat> {
    let Some(d) = p.degree() else { return Vec::new() };
    let mut out = Vec::with_capacity(d + 1);
    let mut q = p.clone();
    for j in 0..=d {
        let v = q.eval(&Rat::zero());
        out.push(if j % 2 == 0 { v } else { -v });
        q = q.delta(&int(-1));
    }
    out
}

/// Polynomial Σ_j c_j (t)_j/j!.
pub fn from_rising_factorial_basis(c: &[Rat]) -> Poly {
    let mut acc = Poly::zero();
    let mut basis = Poly::one();
    for (j, cj) in c.iter().enumerate() {
        acc = &acc + &basis.scale(cj);
        basis = (&basis * &Poly::linear(int(j as i64))).scale(&Rat::new(1.into(), (j as i64 + 1).into()));
    }
    acc
}

/// Checks Δ_1 R_{α,s} = (-1)^s (s-1)!/(z+α)^s (s >= 2) or α/(z(z+α)) (s = 1)
/// to `depth`; returns the first mismatching index on failure.
pub fn verify_difference_equation(spec: &RSpec, depth: i64) -> Result<()> {
    if depth < spec.s as i64 + 2 {
        return arg("depth must be at least s + 2");
    }
    let lhs = r_series(spec, depth).delta(&int(1));
    let rhs = if spec.s == 1 {
        LaurentSeries::inv_linear_pow(&spec.alpha, 1, depth)
            .mul(&LaurentSeries::monomial(Rat::one(), 1, depth))
            .scale(&spec.alpha)
    } else {
        let c = Rat::from_integer(factorial(spec.s as u64 - 1));
        let c = if spec.s.is_multiple_of(2) { c } else { -c };
        LaurentSeries::inv_linear_pow(&spec.alpha, spec.s as u64, depth).scale(&c)
    };
    let d = lhs.depth().min(rhs.depth());
    for k in 1..=d {
        if lhs.coeff(k) != rhs.coeff(k) {
            return invariant(format!("difference equation for R_({}, {}) fails at z^-{k}", spec.alpha, spec.s));
        }
    }
    Ok(())
}

/// An element of ker φ_{α,s}: Δ_{-1}((t+α)^s Q) for s >= 2,
/// Δ_{-1}(t (t+α) Q) for s = 1.
pub fn kernel_generator(spec: &RSpec, q: &Poly) -> Poly {
    let lin = Poly::linear(spec.alpha.clone());
    let base = if spec.s == 1 { &Poly::linear(Rat::zero()) * &lin } else { lin.pow(spec.s) };
    (&base * q).delta(&int(-1))
}

/// The kernel form of φ_{α,s}∘Δ_{-1}: (-1)^s (d/dt)^{s-1} P at t = -α,
/// or P(0) - P(-α) when s = 1.
pub fn phi_after_difference(spec: &RSpec, p: &Poly) -> Rat {
    if spec.s == 1 {
        return p.eval(&Rat::zero()) - p.eval(&-&spec.alpha);
    }
    let mut d = p.clone();
    for _ in 1..spec.s {
        d = d.deriv();
    }
    let v = d.eval(&-&spec.alpha);
    if spec.s.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn spec(a: Rat, s: u32) -> RSpec {
        RSpec::new(a, s).unwrap()
    }

    #[test]
    fn r_coefficient_examples() {
        assert_eq!(r_coeffs(&spec(int(0), 2), 4), vec![int(-1), rat(-1, 2), rat(-1, 6), int(0), rat(1, 30)]);
        let a = rat(2, 7);
        assert_eq!(r_series_coeff(&spec(a.clone(), 1), 0), -a);
        assert_eq!(r_series_coeff(&spec(int(0), 3), 0), int(0));
        assert!(RSpec::new(int(0), 1).is_err());
    }

    #[test]
    fn g_coefficient_examples() {
        assert_eq!(g_series_coeff(&int(0), 2, 2).unwrap(), rat(1, 3));
        assert_eq!(g_series_coeff(&rat(1, 3), 1, 0).unwrap(), rat(1, 3));
        assert_eq!(g_series_coeff(&rat(1, 2), 2, 1).unwrap(), int(0));
        assert!(g_series_coeff(&int(0), 1, 1).is_err());
    }

    #[test]
    fn phi_examples() {
        let mut phi = PhiFunctional::new(spec(int(0), 2));
        let t2 = Poly::monomial(int(1), 2);
        assert_eq!(phi.apply(&t2), rat(-1, 6));
        assert_eq!(phi.apply(&t2.delta(&int(-1))), int(0));
        let t3 = Poly::monomial(int(1), 3);
        let a = rat(1, 2);
        let mut phia = PhiFunctional::new(spec(a.clone(), 2));
        assert_eq!(phia.apply(&t3), phi.apply(&t3.shift(&-a)));
    }

    #[test]
    fn difference_equations() {
        verify_difference_equation(&spec(int(0), 2), 10).unwrap();
        verify_difference_equation(&spec(rat(1, 2), 3), 10).unwrap();
        verify_difference_equation(&spec(rat(1, 3), 1), 10).unwrap();
    }

    #[test]
    fn kernel_examples() {
        let one = Poly::one();
        let t = Poly::monomial(int(1), 1);
        for (a, s, q) in [(int(0), 2, &one), (rat(1, 2), 1, &t), (rat(1, 2), 3, &one)] {
            let sp = spec(a, s);
            let k = kernel_generator(&sp, q);
            assert_eq!(PhiFunctional::new(sp).apply(&k), int(0));
        }
        assert_eq!(kernel_generator(&spec(int(0), 2), &one), Poly::new(vec![int(1), int(-2)]));
    }

    #[test]
    fn factorial_basis_round_trip() {
        let p = Poly::new(vec![rat(1, 3), int(-2), int(0), rat(5, 4)]);
        assert_eq!(from_rising_factorial_basis(&to_rising_factorial_basis(&p)), p);
    }
}
