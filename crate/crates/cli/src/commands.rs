use anyhow::{bail, Context, Result};
use polypade::criterion::{
    check_two_shift_corollary, corollary_table, main_theorem_certificate, CriterionInput,
};
use polypade::pade::{build_family, conjecture_check, matp_det, matp_from_theta, theta, verify_explicit, PadeSystem};
use polypade::padic::{eval_r_series, eval_zeta, polygamma_side, remainder_valuation_slope, teichmuller, teichmuller_exact};
use polypade::recurrence::{
    aux_p_sequence, aux_q_sequence, dominant_root_modulus, expected_char_poly, find_recurrence, matches_factored,
    printed_m1, printed_m2, shifted, Recurrence, Samples,
};
use polypade::{Error, PadeConfig, Poly, RSpec, Rat};
use serde_json::{json, Value};

use crate::config::{load, rat};
use crate::{Cli, Command, CriterionCmd, DetCmd, PadeCmd, PadicCmd, PointArgs, RecurCmd};

/// What a command prints, and whether its asserted invariants held.
pub struct Report {
    pub ok: bool,
    pub summary: Vec<String>,
    pub json: Value,
}

impl Report {
    fn new(ok: bool, summary: Vec<String>, json: Value) -> Self {
        Report { ok, summary, json }
    }
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn poly_json(p: &Poly) -> Value {
    json!(strs(p.coeffs()))
}

/// Library invariant failures become report rows; usage errors abort.
fn soft<T>(r: polypade::Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::Invariant(_)) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let config = load(g.config.as_deref())?;
    match &cli.command {
        Command::Pade(c) => pade(c, &config, g.nmax, g.depth),
        Command::Det(c) => det(c, &config, g.nmax),
        Command::Recur(c) => recur(c, &config, g.nmax),
        Command::Padic(c) => padic(c, &config, g.precision, g.nmax),
        Command::Criterion(c) => criterion(c, &config, g.precision, g.nmax),
    }
}

fn pade(cmd: &PadeCmd, config: &PadeConfig, nmax: Option<u64>, depth: Option<i64>) -> Result<Report> {
    match cmd {
        PadeCmd::Build { n, ell } => {
            let sys = PadeSystem::build(config, *n, *ell)?;
            let depth = depth.unwrap_or(*n as i64 + 4);
            let q: Vec<Value> = sys.q.iter().map(|(ix, q)| json!({"index": [ix.0, ix.1], "q": poly_json(q)})).collect();
            let rem: Vec<Value> = sys
                .q
                .keys()
                .map(|&ix| {
                    let r = sys.remainder_series(ix, depth);
                    json!({"index": [ix.0, ix.1], "ord": r.ord(), "low": r.low(), "coeffs": strs(r.coeffs())})
                })
                .collect();
            let mut summary = vec![format!("{config} n={n} ℓ={ell}"), format!("A = {}", sys.a), format!("P = {}", sys.p)];
            for (ix, qp) in &sys.q {
                summary.push(format!("Q{ix:?} = {qp}"));
            }
            let ok = soft(sys.verify_order(depth))?.is_ok();
            let json = json!({"config": config, "n": n, "ell": ell, "a": poly_json(&sys.a), "p": poly_json(&sys.p), "q": q, "remainders": rem, "orderOk": ok});
            Ok(Report::new(ok, summary, json))
        }
        PadeCmd::VerifyOrder => {
            let nmax = nmax.unwrap_or(6);
            let mut failures = Vec::new();
            let mut checked = 0;
            for n in 1..=nmax {
                for sys in build_family(config, n)? {
                    checked += 1;
                    if let Err(msg) = soft(sys.verify_order(depth.unwrap_or(0)))? {
                        failures.push(msg);
                    }
                }
            }
            let ok = failures.is_empty();
            let summary = vec![format!("{config}: {checked} systems, n <= {nmax}: {}", if ok { "order ok" } else { "FAILED" })]
                .into_iter()
                .chain(failures.iter().cloned())
                .collect();
            Ok(Report::new(ok, summary, json!({"config": config, "nmax": nmax, "systems": checked, "failures": failures})))
        }
        PadeCmd::ExplicitCheck => {
            let nmax = nmax.unwrap_or(6);
            let mut failures = Vec::new();
            let mut checked = 0;
            for n in 1..=nmax {
                for sys in build_family(config, n)? {
                    checked += 1;
                    if let Err(msg) = soft(verify_explicit(&sys))? {
                        failures.push(msg);
                    }
                }
            }
            let ok = failures.is_empty();
            let summary = vec![format!("{config}: {checked} systems, closed forms {}", if ok { "agree" } else { "DISAGREE" })]
                .into_iter()
                .chain(failures.iter().cloned())
                .collect();
            Ok(Report::new(ok, summary, json!({"config": config, "nmax": nmax, "systems": checked, "failures": failures})))
        }
    }
}

fn det(cmd: &DetCmd, config: &PadeConfig, nmax: Option<u64>) -> Result<Report> {
    match cmd {
        DetCmd::Theta => {
            let nmax = nmax.unwrap_or(6);
            let mut rows = Vec::new();
            let mut summary = vec![format!("{config}")];
            let mut ok = true;
            for n in 1..=nmax {
                match soft(theta(config, n))? {
                    Ok(v) => {
                        summary.push(format!("Θ_{n} = {v}"));
                        rows.push(json!({"n": n, "theta": v.to_string()}));
                    }
                    Err(msg) => {
                        ok = false;
                        summary.push(format!("Θ_{n}: {msg}"));
                        rows.push(json!({"n": n, "error": msg}));
                    }
                }
            }
            Ok(Report::new(ok, summary, json!({"config": config, "rows": rows})))
        }
        DetCmd::Matp => {
            let nmax = nmax.unwrap_or(3);
            let mut rows = Vec::new();
            let mut summary = vec![format!("{config}")];
            let mut ok = true;
            for n in 1..=nmax {
                match soft(matp_det(config, n))? {
                    Ok(d) => {
                        let expect = matp_from_theta(config, n)?;
                        let agree = d.clone() * d.clone() == expect.clone() * expect.clone();
                        ok &= agree;
                        summary.push(format!("n={n}: det = {d}, |det| from Θ = {expect}{}", if agree { "" } else { "  MISMATCH" }));
                        rows.push(json!({"n": n, "det": d.to_string(), "fromTheta": expect.to_string(), "agree": agree}));
                    }
                    Err(msg) => {
                        ok = false;
                        summary.push(format!("n={n}: {msg}"));
                        rows.push(json!({"n": n, "error": msg}));
                    }
                }
            }
            Ok(Report::new(ok, summary, json!({"config": config, "rows": rows})))
        }
        DetCmd::Conjecture { m, max_entry } => {
            let mut reports = Vec::new();
            let mut nvec = vec![0u64; m + 1];
            loop {
                reports.push(conjecture_check(*m, &nvec)?);
                let Some(i) = nvec.iter().position(|&v| v < *max_entry) else { break };
                nvec[i] += 1;
                nvec[..i].iter_mut().for_each(|v| *v = 0);
            }
            let magnitude = reports.iter().filter(|r| r.magnitude_match).count();
            let sign = reports.iter().filter(|r| r.sign_match).count();
            let ok = magnitude == reports.len();
            let summary = vec![format!(
                "m={m}, entries <= {max_entry}: {} cases, magnitude agrees in {magnitude}, sign agrees in {sign}",
                reports.len()
            )];
            Ok(Report::new(ok, summary, json!({"m": m, "maxEntry": max_entry, "cases": reports})))
        }
    }
}

fn known_recurrence(config: &PadeConfig) -> Result<Recurrence> {
    if *config == PadeConfig::single(1) {
        Ok(printed_m1())
    } else if *config == PadeConfig::single(2) {
        Ok(printed_m2())
    } else {
        bail!(Error::Argument("known recurrences exist for α=(0) with m=1 or m=2 only".into()))
    }
}

/// Enough terms for every shape up to (J, D) plus validation rows.
fn sample_count(max_order: usize, max_degree: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + max_order + 10
}

fn found_recurrence(config: &PadeConfig, z: &Rat, max_order: usize, max_degree: usize) -> Result<Option<Recurrence>> {
    let start = config.big_m() as u64;
    let u = aux_p_sequence(config, z, start, sample_count(max_order, max_degree))?;
    Ok(find_recurrence(&Samples::fixed(z.clone(), start, u), max_order, max_degree, 0))
}

fn recur(cmd: &RecurCmd, config: &PadeConfig, nmax: Option<u64>) -> Result<Report> {
    match cmd {
        RecurCmd::Verify { z } => {
            let z = rat(z)?;
            let printed = known_recurrence(config)?;
            let from = printed.valid_from;
            let nmax = nmax.unwrap_or(if from == 1 { 12 } else { 10 });
            let count = (nmax - from) as usize + printed.order() + 1;
            let z2 = &z + Rat::from_integer(2.into());
            let mut checks = Vec::new();
            let mut push = |name: String, rec: &Recurrence, u: Vec<Rat>| -> Result<()> {
                let fail = rec.first_failure(&z, from, &u, from, nmax)?;
                checks.push((name, fail));
                Ok(())
            };
            push("printed form on P̂_n(z+2)".into(), &printed, aux_p_sequence(config, &z2, from, count)?)?;
            push("shifted form on P̂_n(z)".into(), &shifted(&printed), aux_p_sequence(config, &z, from, count)?)?;
            for ix in config.index_set() {
                push(format!("printed form on Q̂_n{ix:?}(z+2)"), &printed, aux_q_sequence(config, ix, &z2, from, count)?)?;
                push(format!("shifted form on Q̂_n{ix:?}(z)"), &shifted(&printed), aux_q_sequence(config, ix, &z, from, count)?)?;
            }
            let ok = checks.iter().all(|(_, f)| f.is_none());
            let summary = checks
                .iter()
                .map(|(name, f)| match f {
                    None => format!("{name}: holds for {from} <= n <= {nmax}"),
                    Some(n) => format!("{name}: FAILS at n = {n}"),
                })
                .collect();
            let rows: Vec<Value> = checks.iter().map(|(name, f)| json!({"check": name, "firstFailure": f})).collect();
            let json = json!({"config": config, "z": z.to_string(), "nmax": nmax, "printed": printed.to_json(), "shifted": shifted(&printed).to_json(), "checks": rows});
            Ok(Report::new(ok, summary, json))
        }
        RecurCmd::Find { z, max_order, max_degree } => {
            let z = rat(z)?;
            let Some(rec) = found_recurrence(config, &z, *max_order, *max_degree)? else {
                let summary = vec![format!("no recurrence with order <= {max_order}, degree <= {max_degree}")];
                return Ok(Report::new(false, summary, json!({"config": config, "z": z.to_string(), "found": null})));
            };
            let known = known_recurrence(config).ok().map(|p| shifted(&p).at(&z).proportional(&rec).map(|c| c.to_string()));
            let mut summary = vec![format!("order {}, degree {} in n", rec.order(), rec.n_degree())];
            for (j, c) in rec.coeffs.iter().enumerate() {
                summary.push(format!("  a_{j}(n) = {}", c[0].display_in("n")));
            }
            let mut ok = true;
            if let Some(k) = &known {
                ok = k.is_some();
                summary.push(match k {
                    Some(c) => format!("proportional to the known recurrence (factor {c})"),
                    None => "NOT proportional to the known recurrence".into(),
                });
            }
            let json = json!({"config": config, "z": z.to_string(), "found": rec.to_json(), "knownRatio": known});
            Ok(Report::new(ok, summary, json))
        }
        RecurCmd::Charpoly { z, max_order, max_degree } => {
            let z = rat(z)?;
            let Some(rec) = found_recurrence(config, &z, *max_order, *max_degree)? else {
                let summary = vec![format!("no recurrence with order <= {max_order}, degree <= {max_degree}")];
                return Ok(Report::new(false, summary, json!({"config": config, "found": null})));
            };
            let cp = rec.char_poly()?;
            let modulus = dominant_root_modulus(&cp)?;
            let big_m = config.big_m();
            let expected = if config.d() == 1 { expected_char_poly(big_m) } else { None };
            let matches = expected.as_ref().map(|f| matches_factored(&cp, f));
            let (lo, hi) = modulus.to_f64();
            let mut summary = vec![format!("char poly: {}", cp.display_in("T")), format!("dominant root modulus in [{lo:.6}, {hi:.6}]")];
            if let Some(m) = matches {
                summary.push(format!("tabulated factorization for M={big_m}: {}", if m { "matches" } else { "differs (reported)" }));
            }
            let json = json!({
                "config": config,
                "recurrence": rec.to_json(),
                "charPoly": poly_json(&cp),
                "dominantRootModulus": modulus,
                "matchesTabulated": matches,
            });
            Ok(Report::new(true, summary, json))
        }
    }
}

fn point(pt: &PointArgs) -> Result<(u64, Rat)> {
    Ok((pt.p, rat(&pt.x)?))
}

fn padic(cmd: &PadicCmd, config: &PadeConfig, prec: i64, nmax: Option<u64>) -> Result<Report> {
    match cmd {
        PadicCmd::Omega(pt) => {
            let (p, x) = point(pt)?;
            let w = teichmuller(&x, p, prec.max(1) as u32)?;
            let exact = teichmuller_exact(&x, p)?;
            let mut summary = vec![format!("ω({x}) = {w}")];
            if let Some(e) = &exact {
                summary.push(format!("exactly {e}"));
            }
            Ok(Report::new(true, summary, json!({"p": p, "x": x.to_string(), "omega": w, "exact": exact.map(|e| e.to_string())})))
        }
        PadicCmd::Zeta { point: pt, s } => {
            let (p, x) = point(pt)?;
            let z = eval_zeta(*s, &x, p, prec)?;
            let mut summary = vec![format!("ζ_{p}({s}, {x}) = {z}")];
            let mut ok = true;
            let mut cross = Value::Null;
            if *s >= 2 {
                // ω(x)^{1-s} ζ_p(s, x) = (-1)^{s+1}/(s-1)! R_s(x)
                let w = teichmuller(&x, p, prec.max(1) as u32 + 8)?;
                let lhs = w.pow(1 - s)?.mul(&eval_zeta(*s, &x, p, prec + 2)?);
                let rhs = polygamma_side(*s as u32, &x, p, prec)?;
                let n = prec;
                ok = lhs.agrees_to(&rhs, n);
                summary.push(format!("polygamma side {} to O({p}^{n})", if ok { "agrees" } else { "DISAGREES" }));
                cross = json!({"lhs": lhs, "rhs": rhs, "agree": ok});
            }
            Ok(Report::new(ok, summary, json!({"p": p, "s": s, "x": x.to_string(), "zeta": z, "polygammaCheck": cross})))
        }
        PadicCmd::Rseries { point: pt, s, alpha } => {
            let (p, x) = point(pt)?;
            let spec = RSpec::new(rat(alpha)?, *s)?;
            let r = eval_r_series(&spec, &x, p, prec)?;
            let summary = vec![format!("R_{{{},{s}}}({x}) = {} ({} terms)", spec.alpha, r.value, r.terms_used)];
            Ok(Report::new(true, summary, json!({"p": p, "x": x.to_string(), "alpha": spec.alpha.to_string(), "s": s, "result": r})))
        }
        PadicCmd::Slope { point: pt, index, ell } => {
            let (p, x) = point(pt)?;
            let ix = parse_index(index)?;
            if !config.index_set().contains(&ix) {
                bail!(Error::Argument(format!("index {ix:?} is not in the index set of {config}")));
            }
            let nmax = nmax.unwrap_or(15);
            let rep = remainder_valuation_slope(config, ix, *ell, &x, p, nmax)?;
            let mut summary: Vec<String> = rep
                .rows
                .iter()
                .map(|r| format!("n={:>3}: v_{p} {} {}", r.n, if r.exact { "=" } else { ">=" }, r.lower_bound))
                .collect();
            summary.push(format!("predicted slope {}, constant needed {:.4}", rep.predicted_slope, rep.required_constant));
            Ok(Report::new(true, summary, json!({"config": config, "p": p, "x": x.to_string(), "report": rep})))
        }
    }
}

fn parse_index(s: &str) -> Result<(usize, u32)> {
    let (i, t) = s.split_once(',').context("index must look like \"i,s\"")?;
    Ok((i.trim().parse()?, t.trim().parse()?))
}

fn criterion(cmd: &CriterionCmd, config: &PadeConfig, prec: i64, nmax: Option<u64>) -> Result<Report> {
    match cmd {
        CriterionCmd::Main(pt) => {
            let (p, x) = point(pt)?;
            let input = CriterionInput::new(p, config.clone(), x);
            let cert = main_theorem_certificate(&input, nmax.unwrap_or(6), prec)?;
            let v = &cert.verdict;
            let (l0, l1) = v.lhs.to_f64();
            let (r0, r1) = v.rhs.to_f64();
            let mut summary = vec![
                format!("{config}, p = {p}, x = {}", input.x),
                format!("lhs = {} in [{l0:.6}, {l1:.6}]", v.lhs_expr),
                format!("rhs = {} in [{r0:.6}, {r1:.6}]", v.rhs_expr),
                format!("verdict: {}", serde_json::to_value(v.verdict)?.as_str().unwrap_or("?")),
            ];
            if let Some(c) = &v.conclusion {
                summary.push(format!("linearly independent over Q: {}", c.join(", ")));
            }
            summary.push(format!("{} approximant certificates (D_n·P, D_n·Q integral)", cert.approximants.len()));
            Ok(Report::new(v.holds(), summary, serde_json::to_value(&cert)?))
        }
        CriterionCmd::Table { m_min, m_max, r } => {
            if m_min > m_max || *m_min == 0 {
                bail!(Error::Argument("need 1 <= m-min <= m-max".into()));
            }
            let rows = corollary_table(*m_min..=*m_max, *r)?;
            let fmt_ref = |v: Option<f64>| v.map_or("-".to_string(), |x| if x < 1e7 { format!("{x:.0}") } else { format!("{x:.0e}") });
            let mut summary = vec![format!("{:>3}  {:>30} {:>8}  {:>62} {:>8}", "m", "new", "ref", "classical", "ref")];
            for row in &rows {
                summary.push(format!(
                    "{:>3}  {:>30} {:>8}{} {:>62} {:>8}{}",
                    row.m,
                    row.new_threshold,
                    fmt_ref(row.reference_new),
                    if row.new_deviates { "*" } else { " " },
                    row.classical_threshold,
                    fmt_ref(row.reference_classical),
                    if row.classical_deviates { "*" } else { " " },
                ));
            }
            summary.push("* computed value is off the reference order of magnitude by more than 10x".into());
            Ok(Report::new(true, summary, json!({"r": r, "rows": rows})))
        }
        CriterionCmd::TwoShift { p, a, b, m } => {
            let v = check_two_shift_corollary(*p, *a, *b, *m)?;
            let (l0, l1) = v.verdict.lhs.to_f64();
            let (r0, r1) = v.verdict.rhs.to_f64();
            let mut summary = vec![
                format!("p = {p}, a = {a}, b = {b}, m = {m}"),
                format!("lhs in [{l0:.6}, {l1:.6}], rhs in [{r0:.6}, {r1:.6}]"),
                format!("verdict: {}", serde_json::to_value(v.verdict.verdict)?.as_str().unwrap_or("?")),
                format!("least prime satisfying the condition: {}", v.minimal_prime),
            ];
            if let Some(c) = &v.verdict.conclusion {
                summary.push(format!("linearly independent over Q: {}", c.join(", ")));
            }
            Ok(Report::new(v.verdict.holds(), summary, serde_json::to_value(&v)?))
        }
    }
}
