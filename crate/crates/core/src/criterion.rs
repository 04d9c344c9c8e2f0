//! Threshold quantities and the linear-independence inequalities.
//!
//! Both sides of every inequality are exact [`LogExpr`]s. Verdicts come from
//! outward-rounded interval evaluation at escalating precision, so "holds"
//! is only reported when the enclosures are strictly separated.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{harmonic, int, rat, valuation, Rat};
use crate::error::{arg, invariant, Error, Result};
use crate::interval::Interval;
use crate::logexpr::{compare, LogExpr, Verdict};
use crate::mu::MuValue;
use crate::pade::{denominator_cert, DenominatorCert, PadeConfig};
use crate::padic::{eval_r_series, PadicSeriesResult};
use crate::primes::{is_prime, is_prime_u64, next_prime};

/// Precision cap for verdicts. Margins in the tables are around 1e-3, far
/// above what this resolves.
pub const MAX_BITS: u32 = 1 << 14;

fn ln_u(n: u64) -> LogExpr {
    LogExpr::ln_int(&BigUint::from(n))
}

fn ln_p(p: u64, c: Rat) -> LogExpr {
    LogExpr::ln_prime(&BigUint::from(p), c)
}

/// g(M) = 0 for M <= 2, else (M+1)(ln 2 + (M+1) ln(M+1) - M ln M).
pub fn g_of_m(m: u64) -> LogExpr {
    assert!(m >= 1, "g is defined for M >= 1");
    if m <= 2 {
        return LogExpr::zero();
    }
    let mi = m as i64;
    let inner = ln_u(2).add(&ln_u(m + 1).scale(&int(mi + 1))).sub(&ln_u(m).scale(&int(mi)));
    inner.scale(&int(mi + 1))
}

/// f(α, m) = g(M) + M(1 + H_m) + ln(μ(α)^M ∏_{i>=2} μ(α_i)^{m_i+1}) - ln|μ(α)|_p
/// with m the largest weight.
pub fn f_threshold(config: &PadeConfig, p: u64) -> Result<LogExpr> {
    let big_m = config.big_m() as u64;
    let h = harmonic(config.max_weight() as u64);
    let mu = MuValue::of(&config.alphas)?;
    let mut f = g_of_m(big_m)
        .add(&LogExpr::constant(int(big_m as i64) * (int(1) + h)))
        .add(&mu.real_log().scale(&int(big_m as i64)))
        .sub(&mu.log_abs_p(p));
    for (a, &w) in config.alphas.iter().zip(&config.weights).skip(1) {
        f = f.add(&MuValue::of(std::slice::from_ref(a))?.real_log().scale(&int(w as i64 + 1)));
    }
    Ok(f)
}

/// One named hypothesis and whether it holds.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl HypothesisCheck {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        HypothesisCheck { name: name.into(), ok, detail: detail.into() }
    }
}

/// A prime, a shift configuration and an evaluation point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionInput {
    pub p: u64,
    #[serde(flatten)]
    pub config: PadeConfig,
    #[serde(with = "crate::arith::serde_rat")]
    pub x: Rat,
}

impl CriterionInput {
    pub fn new(p: u64, config: PadeConfig, x: Rat) -> Self {
        CriterionInput { p, config, x }
    }

    /// Every hypothesis of the main criterion, checked independently so a
    /// failure report names all of them.
    pub fn hypotheses(&self) -> Vec<HypothesisCheck> {
        let p = self.p;
        let a = &self.config.alphas;
        let mut out = vec![HypothesisCheck::new("p prime", is_prime_u64(p), format!("p = {p}"))];
        out.push(HypothesisCheck::new("first shift is 0", a.first().is_some_and(Zero::is_zero), format!("α_1 = {}", a[0])));
        let mut clash = None;
        for i in 0..a.len() {
            for j in 0..i {
                if crate::arith::is_integer(&(&a[i] - &a[j])) {
                    clash = Some((j + 1, i + 1));
                }
            }
        }
        out.push(HypothesisCheck::new(
            "shift differences are not integers",
            clash.is_none(),
            clash.map_or("ok".into(), |(j, i)| format!("α_{i} - α_{j} is an integer")),
        ));
        // |x|_p >= q_p max(1, |α_i|_p), in valuations: -v(x) >= e + max(0, -v(α_i)).
        let e = if p == 2 { 2 } else { 1 };
        let worst = a.iter().filter_map(|al| valuation(al, p)).map(|v| -v).max().unwrap_or(0).max(0);
        let detail;
        let ok = match valuation(&self.x, p) {
            None => {
                detail = "x = 0".to_string();
                false
            }
            Some(v) if is_prime_u64(p) => {
                detail = format!("-v_p(x) = {} against required {}", -v, e + worst);
                -v >= e + worst
            }
            Some(_) => {
                detail = "p is not prime".to_string();
                false
            }
        };
        out.push(HypothesisCheck::new("|x|_p >= q_p·max(1, |α_i|_p)", ok, detail));
        out
    }

    fn require(&self) -> Result<()> {
        let failed: Vec<String> =
            self.hypotheses().into_iter().filter(|h| !h.ok).map(|h| format!("{} ({})", h.name, h.detail)).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Hypothesis(failed.join("; ")))
        }
    }

    fn mu_x(&self) -> Result<MuValue> {
        MuValue::of(std::slice::from_ref(&self.x))
    }
}

/// Result of one strict inequality `lhs > rhs`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionVerdict {
    pub verdict: Verdict,
    pub lhs: Interval,
    pub rhs: Interval,
    pub lhs_expr: LogExpr,
    pub rhs_expr: LogExpr,
    pub parameters: BTreeMap<String, String>,
    /// The values shown independent when the verdict holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<Vec<String>>,
}

impl CriterionVerdict {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn verdict(lhs: LogExpr, rhs: LogExpr, parameters: BTreeMap<String, String>) -> CriterionVerdict {
    let (v, l, r) = compare(&lhs, &rhs, MAX_BITS);
    CriterionVerdict { verdict: v, lhs: l, rhs: r, lhs_expr: lhs, rhs_expr: rhs, parameters, conclusion: None }
}

/// The two sides ln p/(p-1) + ln|x|_p and M ln(μ(x)|μ(x)|_p) + f(α, m).
pub fn main_sides(input: &CriterionInput) -> Result<(LogExpr, LogExpr)> {
    input.require()?;
    let p = input.p;
    let vx = valuation(&input.x, p).expect("x checked nonzero");
    let lhs = ln_p(p, rat(1, p as i64 - 1) - int(vx));
    let mu_x = input.mu_x()?;
    let big_m = int(input.config.big_m() as i64);
    let rhs = mu_x.real_log().add(&mu_x.log_abs_p(p)).scale(&big_m).add(&f_threshold(&input.config, p)?);
    Ok((lhs, rhs))
}

/// Decides the main inequality. On "holds" the conclusion lists
/// 1 and G_p^{(s)}(x + α_i) for 2 <= s <= m_i + 1.
pub fn check_main_theorem(input: &CriterionInput) -> Result<CriterionVerdict> {
    let (lhs, rhs) = main_sides(input)?;
    // The parameter form must be the same inequality, symbolically.
    let t = technical_parameters(input)?;
    let tech = t.delta.add(&t.rho_p).sub(&t.beta).sub(&t.rho_inf);
    if !tech.sub(&lhs.sub(&rhs)).is_zero() {
        return invariant("parameter form of the criterion disagrees with the direct form");
    }
    let mut params = BTreeMap::new();
    params.insert("p".into(), input.p.to_string());
    params.insert("x".into(), input.x.to_string());
    params.insert("config".into(), input.config.to_string());
    params.insert("M".into(), input.config.big_m().to_string());
    let mut v = verdict(lhs, rhs, params);
    if v.holds() {
        let mut values = vec!["1".to_string()];
        for (a, &w) in input.config.alphas.iter().zip(&input.config.weights) {
            let y = &input.x + a;
            for s in 2..=w + 1 {
                values.push(format!("G_p^({s})({y})"));
            }
        }
        v.conclusion = Some(values);
    }
    Ok(v)
}

/// The growth and decay exponents feeding the abstract criterion.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TechnicalParameters {
    pub beta: LogExpr,
    pub rho_inf: LogExpr,
    pub rho_p: LogExpr,
    pub delta: LogExpr,
}

/// β = g(M), ρ_∞ = M(1+H_m) + ln Λ, ρ_p = -ln|Λ|_p and
/// δ = ln p/(p-1) + ln|x μ(α)^{M+1} ∏ μ(α_i)^{m_i+1}|_p,
/// where Λ = μ(x)^M μ(α)^M ∏_{i>=2} μ(α_i)^{m_i+1}.
pub fn technical_parameters(input: &CriterionInput) -> Result<TechnicalParameters> {
    input.require()?;
    let p = input.p;
    let cfg = &input.config;
    let big_m = cfg.big_m() as i64;
    let mu_x = input.mu_x()?;
    let mu_a = MuValue::of(&cfg.alphas)?;
    let mut prod_real = LogExpr::zero();
    let mut prod_p = LogExpr::zero();
    for (a, &w) in cfg.alphas.iter().zip(&cfg.weights).skip(1) {
        let mu = MuValue::of(std::slice::from_ref(a))?;
        prod_real = prod_real.add(&mu.real_log().scale(&int(w as i64 + 1)));
        prod_p = prod_p.add(&mu.log_abs_p(p).scale(&int(w as i64 + 1)));
    }
    let lam_real = mu_x.real_log().add(&mu_a.real_log()).scale(&int(big_m)).add(&prod_real);
    let lam_p = mu_x.log_abs_p(p).add(&mu_a.log_abs_p(p)).scale(&int(big_m)).add(&prod_p);
    let vx = valuation(&input.x, p).expect("x checked nonzero");
    let delta = ln_p(p, rat(1, p as i64 - 1) - int(vx)).add(&mu_a.log_abs_p(p).scale(&int(big_m + 1))).add(&prod_p);
    Ok(TechnicalParameters {
        beta: g_of_m(big_m as u64),
        rho_inf: LogExpr::constant(int(big_m) * (int(1) + harmonic(cfg.max_weight() as u64))).add(&lam_real),
        rho_p: lam_p.scale(&int(-1)),
        delta,
    })
}

/// Strict test β + ρ_∞ < δ + ρ_p. Equality is never "holds".
pub fn technical_criterion(beta: &LogExpr, rho_inf: &LogExpr, rho_p: &LogExpr, delta: &LogExpr) -> CriterionVerdict {
    verdict(delta.add(rho_p), beta.add(rho_inf), BTreeMap::new())
}

/// Decides `lhs(bits) > rhs(bits)` for enclosures that tighten with `bits`,
/// when no symbolic form is at hand.
fn decide(f: impl Fn(u32) -> (Interval, Interval)) -> (Verdict, Interval, Interval) {
    let mut bits = 64;
    loop {
        let (l, r) = f(bits);
        match l.gt(&r) {
            Some(true) => return (Verdict::Holds, l, r),
            Some(false) => return (Verdict::Fails, l, r),
            None if bits >= MAX_BITS => return (Verdict::Indeterminate, l, r),
            None => bits *= 2,
        }
    }
}

fn big_rat(n: &BigUint) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

/// Least integer P >= lo with `holds(P)`, for a predicate that is monotone
/// from `lo` on.
fn least_integer(lo: BigUint, holds: impl Fn(&BigUint) -> Result<bool>) -> Result<BigUint> {
    if holds(&lo)? {
        return Ok(lo);
    }
    let mut hi = &lo * 2u32;
    let mut lo = lo;
    while !holds(&hi)? {
        lo = hi.clone();
        hi *= 2u32;
        if hi.bits() > 4096 {
            return invariant("threshold search diverged");
        }
    }
    // holds(hi), !holds(lo)
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) / 2u32;
        if holds(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn strict(v: Verdict, what: &str) -> Result<bool> {
    match v {
        Verdict::Holds => Ok(true),
        Verdict::Fails => Ok(false),
        Verdict::Indeterminate => invariant(format!("{what}: undecided at {MAX_BITS} bits")),
    }
}

/// (r + 1/(p-1)) ln p, for integer p >= 2.
fn single_shift_lhs(p: &BigUint, r: u64, bits: u32) -> Interval {
    let pr = big_rat(p);
    let c = int(r as i64) + (&pr - int(1)).recip();
    Interval::ln(&pr, bits).scale(&c)
}

/// g(m) + m + m·H_m.
pub fn single_shift_rhs(m: u64) -> LogExpr {
    g_of_m(m).add(&LogExpr::constant(int(m as i64) * (int(1) + harmonic(m))))
}

/// Does (r + 1/(p-1)) ln p > g(m) + m + m·H_m hold at the integer p?
pub fn single_shift_condition(p: &BigUint, r: u64, m: u64) -> Result<bool> {
    let rhs = single_shift_rhs(m);
    strict(decide(|b| (single_shift_lhs(p, r, b), rhs.eval(b))).0, "single-shift condition")
}

/// Checks that (r + 1/(p-1)) ln p is increasing for p >= from.
///
/// Its derivative has the sign of k(p) = r(p-1)^2 + (p-1) - p ln p, and
/// k'(p) = 2r(p-1) - ln p > 0 for p >= 2, so k(from) > 0 suffices.
fn single_shift_increasing(from: &BigUint, r: u64) -> Result<bool> {
    let p = big_rat(from);
    let pm1 = &p - int(1);
    let poly = int(r as i64) * &pm1 * &pm1 + &pm1;
    strict(decide(|b| (Interval::point(poly.clone()), Interval::ln(&p, b).scale(&p))).0, "monotonicity")
}

/// Least integer P >= 2 with (r + 1/(p-1)) ln p > g(m) + m + m·H_m for all
/// p >= P, with the monotonicity that makes "for all" true re-checked.
pub fn single_shift_threshold(m: u64, r: u64) -> Result<BigUint> {
    if m == 0 || r == 0 {
        return arg("m and r must be positive");
    }
    let two = BigUint::from(2u32);
    if !single_shift_increasing(&two, r)? {
        return invariant("left side not increasing in p");
    }
    least_integer(two, |p| single_shift_condition(p, r, m))
}

/// ⌈exp((1 + ln 2)(m+1)^2)⌉: the least integer P with ln P >= (1 + ln 2)(m+1)^2.
pub fn classical_threshold(m: u64) -> Result<BigUint> {
    let k = int(((m + 1) * (m + 1)) as i64);
    let mut bits = 128;
    while bits <= MAX_BITS {
        let c = LogExpr::constant(k.clone()).add(&ln_u(2).scale(&k)).eval(bits + 32);
        let e = c.exp(bits + 32);
        let (lo, hi) = (e.lo.ceil().to_integer(), e.hi.ceil().to_integer());
        // exp of a nonzero rational combination of 1 and ln 2 is never an integer.
        if lo == hi && !crate::arith::is_integer(&e.lo) {
            return Ok(lo.to_biguint().expect("positive"));
        }
        bits *= 2;
    }
    invariant("classical threshold undecided")
}

/// Published crude orders of magnitude for m = 1..8 as (new, classical).
const REFERENCE_ORDERS: [(f64, f64); 8] = [
    (5.0, 874.0),
    (144.0, 4148779.0),
    (7e6, 6e11),
    (1e9, 2e18),
    (3e11, 3e26),
    (7e13, 1e36),
    (2e16, 1e47),
    (8e18, 4e59),
];

/// Order-of-magnitude agreement: ratio within [1/10, 10].
fn deviates(computed: &BigUint, reference: f64) -> bool {
    let c = computed.to_f64().unwrap_or(f64::INFINITY);
    let ratio = c / reference;
    !(0.1..=10.0).contains(&ratio)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRow {
    pub m: u64,
    #[serde(with = "crate::json::biguint_str")]
    pub new_threshold: BigUint,
    #[serde(with = "crate::json::biguint_str")]
    pub classical_threshold: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_new: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_classical: Option<f64>,
    /// Computed value is not within a factor 10 of the reference order.
    pub new_deviates: bool,
    pub classical_deviates: bool,
}

/// Thresholds of the single-shift condition and of the classical
/// ln p >= (1 + ln 2)(m+1)^2 condition, one row per m. The classical
/// condition only concerns r = 1.
pub fn corollary_table(ms: impl IntoIterator<Item = u64>, r: u64) -> Result<Vec<TableRow>> {
    let ms: Vec<u64> = ms.into_iter().collect();
    ms.par_iter()
        .map(|&m| {
            let new = single_shift_threshold(m, r)?;
            let classical = classical_threshold(m)?;
            let reference = (1..=8).contains(&m).then(|| REFERENCE_ORDERS[m as usize - 1]);
            let (reference_new, reference_classical) = match reference {
                Some((a, b)) if r == 1 => (Some(a), Some(b)),
                _ => (None, None),
            };
            Ok(TableRow {
                m,
                new_deviates: reference_new.is_some_and(|v| deviates(&new, v)),
                classical_deviates: reference_classical.is_some_and(|v| deviates(&classical, v)),
                new_threshold: new,
                classical_threshold: classical,
                reference_new,
                reference_classical,
            })
        })
        .collect()
}

/// Setup of the two-shift family: α = (0, p^{-b}), weights (m, m), x = p^{-a}.
pub fn two_shift_input(p: u64, a: u64, b: u64, m: u64) -> Result<CriterionInput> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::Hypothesis(format!("p = {p} must be an odd prime")));
    }
    if a == 0 || b == 0 || m == 0 {
        return Err(Error::Hypothesis("a, b, m must be positive".into()));
    }
    if a as i128 - 3 * (m as i128 + 1) * b as i128 <= 0 {
        return Err(Error::Hypothesis(format!("a - 3(m+1)b = {} must be positive", a as i128 - 3 * (m as i128 + 1) * b as i128)));
    }
    let pb = crate::arith::rat_pow(&int(p as i64), -(b as i64));
    let x = crate::arith::rat_pow(&int(p as i64), -(a as i64));
    let config = PadeConfig::new(vec![Rat::zero(), pb], vec![m as u32, m as u32])?;
    Ok(CriterionInput::new(p, config, x))
}

/// (δ - (3m+2)/(p-1)) ln p and g(2m+1) + (2m+1)(1 + H_m), δ = a - 3(m+1)b.
fn two_shift_sides(p: &Rat, a: u64, b: u64, m: u64, bits: u32) -> (Interval, Interval) {
    let delta = int(a as i64 - 3 * (m as i64 + 1) * b as i64);
    let c = delta - int(3 * m as i64 + 2) / (p - int(1));
    let rhs = two_shift_rhs(m);
    (Interval::ln(p, bits).scale(&c), rhs.eval(bits))
}

fn two_shift_rhs(m: u64) -> LogExpr {
    g_of_m(2 * m + 1).add(&LogExpr::constant(int(2 * m as i64 + 1) * (int(1) + harmonic(m))))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoShiftVerdict {
    #[serde(flatten)]
    pub verdict: CriterionVerdict,
    /// Least prime at which the condition holds for these a, b, m.
    #[serde(with = "crate::json::biguint_str")]
    pub minimal_prime: BigUint,
}

/// The two-shift condition at p, through the general criterion.
///
/// With α = (0, p^{-b}) and x = p^{-a} the general inequality reduces to
/// (δ - (3m+2)/(p-1)) ln p > g(2m+1) + (2m+1)(1 + H_m); the reduction is
/// checked symbolically on every call.
pub fn check_two_shift_corollary(p: u64, a: u64, b: u64, m: u64) -> Result<TwoShiftVerdict> {
    let input = two_shift_input(p, a, b, m)?;
    let mut v = check_main_theorem(&input)?;
    let delta = int(a as i64 - 3 * (m as i64 + 1) * b as i64);
    let reduced = ln_p(p, delta - rat(3 * m as i64 + 2, p as i64 - 1)).sub(&two_shift_rhs(m));
    if !reduced.sub(&v.lhs_expr.sub(&v.rhs_expr)).is_zero() {
        return invariant("two-shift reduction disagrees with the general criterion");
    }
    for (k, val) in [("a", a), ("b", b), ("m", m)] {
        v.parameters.insert(k.into(), val.to_string());
    }
    if let Some(c) = v.conclusion.as_mut() {
        *c = std::iter::once("1".to_string())
            .chain((2..=m + 1).map(|s| format!("ζ_p({s}, {p}^-{a})")))
            .chain((2..=m + 1).map(|s| format!("ζ_p({s}, {p}^-{a} + {p}^-{b})")))
            .collect();
    }
    Ok(TwoShiftVerdict { verdict: v, minimal_prime: two_shift_minimal_prime(a, b, m)? })
}

/// Least odd prime at which the two-shift condition holds. Once
/// δ - (3m+2)/(p-1) > 0 both factors increase with p, so the condition is
/// monotone from there.
pub fn two_shift_minimal_prime(a: u64, b: u64, m: u64) -> Result<BigUint> {
    two_shift_input(3, a, b, m)?;
    let delta = a - 3 * (m + 1) * b;
    // δ(p-1) > 3m+2 from p0 on.
    let p0 = BigUint::from((3 * m + 2) / delta + 2);
    let holds = |p: &BigUint| {
        let pr = big_rat(p);
        strict(decide(|bits| two_shift_sides(&pr, a, b, m, bits)).0, "two-shift condition")
    };
    let least = least_integer(p0.max(BigUint::from(3u32)), holds)?;
    let p = next_prime(&least);
    debug_assert!(is_prime(&p));
    Ok(p)
}

/// A "holds" verdict together with the objects behind it: exact approximant
/// values cleared by D_n for n = 1..=n_max and the p-adic values of every
/// R_{α_i,s}(x).
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MainCertificate {
    pub verdict: CriterionVerdict,
    pub approximants: Vec<DenominatorCert>,
    pub values: Vec<LabeledValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledValue {
    pub label: String,
    pub result: PadicSeriesResult,
}

pub fn main_theorem_certificate(input: &CriterionInput, n_max: u64, prec: i64) -> Result<MainCertificate> {
    let verdict = check_main_theorem(input)?;
    let approximants = (1..=n_max).map(|n| denominator_cert(&input.config, n, &input.x)).collect::<Result<Vec<_>>>()?;
    let values = input
        .config
        .index_set()
        .into_iter()
        .map(|ix| {
            let spec = input.config.spec(ix);
            Ok(LabeledValue {
                label: format!("R_{{α_{},{}}}(x)", ix.0, ix.1),
                result: eval_r_series(&spec, &input.x, input.p, prec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MainCertificate { verdict, approximants, values })
}
