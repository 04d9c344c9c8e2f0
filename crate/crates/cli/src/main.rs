//! Command-line front end for the `polypade` library.
//!
//! Exit codes: 0 when every asserted invariant holds, 1 on an assertion
//! failure, 2 on a bad argument or an unmet hypothesis.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Report;

#[derive(Parser, Debug)]
#[command(name = "polypade", version, about = "Exact Padé-type approximants of p-adic polygamma series")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Shift configuration: a JSON file path or inline JSON such as
    /// '{"alphas":["0","1/2"],"weights":[1,1]}'. Defaults to α=(0), m=(1).
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// Laurent depth for series checks.
    #[arg(long, global = true)]
    pub depth: Option<i64>,
    /// p-adic absolute precision (digits).
    #[arg(long, global = true, default_value_t = 15)]
    pub precision: i64,
    /// Largest n in sweeps.
    #[arg(long, global = true)]
    pub nmax: Option<u64>,
    /// Emit the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Approximant construction and checks.
    #[command(subcommand)]
    Pade(PadeCmd),
    /// Determinants of the approximant systems.
    #[command(subcommand)]
    Det(DetCmd),
    /// Recurrences of the auxiliary sequences.
    #[command(subcommand)]
    Recur(RecurCmd),
    /// p-adic values and valuations.
    #[command(subcommand)]
    Padic(PadicCmd),
    /// Linear-independence criteria.
    #[command(subcommand)]
    Criterion(CriterionCmd),
}

#[derive(Subcommand, Debug)]
pub enum PadeCmd {
    /// Builds A, P and every Q for one (n, ℓ).
    Build {
        #[arg(short, long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        ell: u64,
    },
    /// Checks ord(P·R - Q) >= n+1 for n = 1..=nmax and every ℓ.
    VerifyOrder,
    /// Checks the closed forms against the operator construction.
    ExplicitCheck,
}

#[derive(Subcommand, Debug)]
pub enum DetCmd {
    /// Θ_n for n = 1..=nmax; asserts it is nonzero.
    Theta,
    /// det of the full approximant matrix for n = 1..=nmax; asserts a nonzero
    /// constant agreeing with the Θ_n formula.
    Matp,
    /// The closed-form determinant conjecture for all vectors with entries
    /// up to --max-entry.
    Conjecture {
        #[arg(short, long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        max_entry: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum RecurCmd {
    /// Checks the known recurrences (d=1, m ∈ {1,2}) on P̂_n and Q̂_n.
    Verify {
        #[arg(short, long, default_value = "1/3")]
        z: String,
    },
    /// Searches for a recurrence of n -> P̂_n(z).
    Find {
        #[arg(short, long, default_value = "1/3")]
        z: String,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 14)]
        max_degree: usize,
    },
    /// Characteristic polynomial and dominant root modulus of the recurrence
    /// found for n -> P̂_n(z).
    Charpoly {
        #[arg(short, long, default_value = "1/3")]
        z: String,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 14)]
        max_degree: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    #[arg(short, long)]
    pub p: u64,
    #[arg(short, long)]
    pub x: String,
}

#[derive(Subcommand, Debug)]
pub enum PadicCmd {
    /// Teichmüller representative ω(x).
    Omega(PointArgs),
    /// ζ_p(s, x); for s >= 2 also checks it against the polygamma side.
    Zeta {
        #[command(flatten)]
        point: PointArgs,
        #[arg(short, long, allow_hyphen_values = true)]
        s: i64,
    },
    /// R_{α,s}(x).
    Rseries {
        #[command(flatten)]
        point: PointArgs,
        #[arg(short, long)]
        s: u32,
        #[arg(long, default_value = "0")]
        alpha: String,
    },
    /// v_p of the remainders for n = 1..=nmax and their slope.
    Slope {
        #[command(flatten)]
        point: PointArgs,
        /// Index (i, s) as "i,s".
        #[arg(long, default_value = "1,2")]
        index: String,
        #[arg(long, default_value_t = 0)]
        ell: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CriterionCmd {
    /// The general criterion at (p, x) for the configured shifts.
    Main(PointArgs),
    /// Thresholds of the single-shift condition for m in a range.
    Table {
        #[arg(long, default_value_t = 1)]
        m_min: u64,
        #[arg(long, default_value_t = 8)]
        m_max: u64,
        #[arg(short, long, default_value_t = 1)]
        r: u64,
    },
    /// The two-shift condition with x = p^-a and second shift p^-b.
    TwoShift {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        a: u64,
        #[arg(short, long)]
        b: u64,
        #[arg(short, long)]
        m: u64,
    },
}

fn emit(report: &Report, json: bool) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"))
    } else {
        report.summary.iter().try_for_each(|line| writeln!(out, "{line}"))
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            emit(&report, cli.global.json);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = match e.downcast_ref::<polypade::Error>() {
                Some(err) => err.is_usage(),
                None => true,
            };
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
