//! `cfk`: involutive invariants of the pretzel knots `P(−2, m, n)`.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cfk", version, about = "Involutive concordance invariants of P(-2,m,n) pretzel knots")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute (V0, V0_lower, V0_upper) and compare with the closed form.
    Invariants {
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
        /// Use the mirror image.
        #[arg(long)]
        mirror: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Check every odd pair 3 <= n <= m <= m_max in both chiralities.
    Verify {
        #[arg(long)]
        m_max: i64,
        /// Cap on n; defaults to m_max.
        #[arg(long)]
        n_max: Option<i64>,
        /// Worker threads; 0 picks one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Knot Floer homology of the full complex.
    Hfk {
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
        #[arg(long)]
        mirror: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Render a complex.
    Show {
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
        #[arg(long)]
        mirror: bool,
        #[arg(long, value_enum, default_value_t = Which::Full)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Worked examples: trefoil, left-trefoil, figure-eight, lspace <w1 w2 ...>.
    Examples {
        #[arg(value_enum)]
        name: Example,
        /// Alexander exponents for `lspace`, e.g. `1` or `1,3,4`.
        #[arg(num_args = 0.., allow_negative_numbers = true)]
        w: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
    Ascii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Full,
    Model,
    #[value(name = "A0", alias = "a0")]
    A0,
    Cone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Trefoil,
    LeftTrefoil,
    FigureEight,
    Lspace,
}

/// How a command ended, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments: exit 2.
    Usage(String),
    /// A computed value disagrees with its expectation: exit 1.
    Mismatch(String),
    /// The computation itself failed: exit 1.
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<cfk_core::Error> for Failure {
    fn from(e: cfk_core::Error) -> Self {
        match e {
            cfk_core::Error::InvalidParams { .. } | cfk_core::Error::Parse(_) | cfk_core::Error::NonIncreasing(_) => {
                Failure::Usage(e.to_string())
            }
            cfk_core::Error::EmptySteps => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.into()),
        }
    }
}

/// Text produced by a command, plus whether its checks all passed.
pub struct Output {
    pub text: String,
    pub verdict: Result<(), String>,
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Invariants { m, n, mirror, format } => commands::invariants(m, n, mirror, format),
        Command::Verify { m_max, n_max, jobs, format } => commands::verify(m_max, n_max, jobs, format),
        Command::Hfk { m, n, mirror, format } => commands::hfk(m, n, mirror, format),
        Command::Show { m, n, mirror, which, format } => commands::show(m, n, mirror, which, format),
        Command::Examples { name, w, format } => commands::examples(name, &w, format),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CFK_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(o) => {
            if let Err(e) = emit(out.as_ref(), &o.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            match o.verdict {
                Ok(()) => ExitCode::SUCCESS,
                Err(msg) => {
                    eprintln!("{msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
