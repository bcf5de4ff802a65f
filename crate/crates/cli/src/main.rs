mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use carlitz_core::verify::{Suite, M_CAP};
use carlitz_core::Error;

use commands::{Method, ZetaArgs};
use config::{GlobalArgs, RunConfig};

/// Exact computations over F_q[θ]: Bernoulli-Goss numbers, π-adic
/// L-functions, Stickelberger series, the Sinnott map, invariants.
///
/// Exit codes: 0 ok, 1 a check failed, 2 invalid input,
/// 3 guard failure, 4 unresolved.
#[derive(Parser, Debug)]
#[command(name = "carlitz", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// β(j) for 0 ≤ j ≤ jmax, with v_π(β(j)) when --prime is given
    Bernoulli {
        #[arg(long)]
        jmax: u64,
    },
    /// Coefficients of L_π(X, y, ω^i) mod π^M
    Lfunction {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        /// Also print L(1) and L'(1)
        #[arg(long)]
        at_one: bool,
    },
    /// Θ_n(X, ω^i) mod p, or Θ_n^# with --sharp
    Stickelberger {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long)]
        sharp: bool,
        /// Evaluate at X = 1
        #[arg(long)]
        at_one: bool,
    },
    /// N(i), m(i), m(-i) and the inequality N(i) ≤ m(-i)
    Invariants {
        /// A single character (default: every 1 ≤ i ≤ q^d - 2)
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = M_CAP)]
        m_cap: u32,
        #[arg(long)]
        m_init: Option<u32>,
    },
    /// A kernel witness of the Sinnott map at level n (default 1)
    Sinnott {
        /// Also compare s_n(Θ_n) with the L-function for this character
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
    },
    /// ζ_A(-j) exactly, or ζ_A(x, y) at x = θ^X in F_q((1/θ))
    Zeta {
        #[arg(long, conflicts_with_all = ["x", "y"])]
        j: Option<u64>,
        /// Exponent k of x = θ^k
        #[arg(long, allow_hyphen_values = true)]
        x: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<i64>,
        /// Absolute precision in t = 1/θ (default 8)
        #[arg(long, allow_hyphen_values = true)]
        target: Option<i64>,
        /// Compare with the Euler product over primes of degree ≤ D
        #[arg(long, value_name = "D")]
        euler: Option<usize>,
    },
    /// Run verification suites; JSON summary with --json
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Valuations of L(1, y) and L'(1, y) over every y mod p^m
    Lvaluations {
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
    },
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Unresolved(_) => 4,
        e if e.is_guard_failure() => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(output::Report, i32, config::Format), Error> {
    let cfg = RunConfig::resolve(&cli.global)?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    }
    let (report, code) = match cli.command {
        Command::Bernoulli { jmax } => commands::bernoulli(&cfg, jmax)?,
        Command::Lfunction { i, y, method, at_one } => commands::lfunction(&cfg, i, y, method, at_one)?,
        Command::Stickelberger { i, sharp, at_one } => commands::stickelberger(&cfg, i, sharp, at_one)?,
        Command::Invariants { i, n_max, m_cap, m_init } => commands::invariants(&cfg, i, n_max, m_cap, m_init)?,
        Command::Sinnott { i } => commands::sinnott(&cfg, i)?,
        Command::Zeta { j, x, y, target, euler } => commands::zeta(&cfg, &ZetaArgs { j, x, y, target, euler })?,
        Command::Verify { suite } => commands::verify(&cfg, suite)?,
        Command::Lvaluations { i } => commands::lvaluations(&cfg, i)?,
    };
    Ok((report, code, cfg.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, code, format)) => {
            report.emit(format);
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
