use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;

use qk_core::cli::{
    cmd_derive, cmd_divides, cmd_kring, cmd_landman, cmd_lqel, cmd_lqel_enumerate, cmd_severi,
    cmd_verify_ring, DeriveParams,
};
use qk_core::report::{Report, ReportFormat};
use qk_core::Error;

/// --cert-dir falls back to the QK_CERT_DIR environment variable.
fn cert_dir_or_env(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("QK_CERT_DIR").map(PathBuf::from))
}

/// Exact K-theory workbench for complex quadrics: certified ring tables,
/// integer divisibility oracles, and symbolic exact-sequence elimination.
#[derive(Parser)]
#[command(name = "qk", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format: text or json
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print basis, rank and the multiplication table of K(F) for the
    /// (m-1)-dimensional quadric
    Kring {
        /// Ambient projective dimension (m >= 3)
        #[arg(long)]
        m: usize,
        /// Directory with oracle certificate files (`m<N>.json`)
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        /// Force a fresh oracle run at this degree bound
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Decide whether 1 + O(1) divides the integer l in K(F)
    Divides {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
    },
    /// Divisibility verdict for an n-dimensional secant-deficient manifold
    /// of type delta
    Lqel {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
    },
    /// Enumerate admissible (n, delta) pairs with delta >= 3 up to n-max
    LqelEnum {
        #[arg(long, default_value_t = 200)]
        n_max: u64,
        /// Limit lattice cross-checks to delta <= this value
        /// (default: cross-check every enumerated pair)
        #[arg(long)]
        cross_check_max: Option<u64>,
    },
    /// Enumerate the possible dimensions of Severi varieties up to n-max
    Severi {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
    /// Parity verdict for the dual deficiency of an n-dimensional variety
    Landman {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
    },
    /// Run a named exact-sequence elimination preset and print the derived
    /// identity with its certificate
    Derive {
        /// One of: lqel, refined, dual, scroll
        #[arg(long)]
        preset: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        l: Option<i64>,
        /// Base dimension for the scroll preset
        #[arg(long)]
        m: Option<i64>,
    },
    /// Re-certify the ring structure of K(F) against the representation-ring
    /// oracle for a range of m
    VerifyRing {
        #[arg(long, default_value_t = 3)]
        m_min: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        /// Directory with oracle certificate files; also the target of --save-certs
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        /// Fixed degree bound for the oracle (default: m + 2, doubling on failure)
        #[arg(long)]
        degree_bound: Option<usize>,
        /// Write the freshly computed certificates into --cert-dir
        #[arg(long, default_value_t = false)]
        save_certs: bool,
    },
}

fn run(cmd: Command) -> Result<Report, Error> {
    match cmd {
        Command::Kring {
            m,
            cert_dir,
            degree_bound,
        } => cmd_kring(m, cert_dir_or_env(cert_dir).as_deref(), degree_bound),
        Command::Divides { m, l } => {
            let l: BigInt = l
                .parse()
                .map_err(|_| Error::InvalidInput(format!("--l expects an integer, got `{}`", l)))?;
            cmd_divides(m, &l)
        }
        Command::Lqel { n, delta } => cmd_lqel(n, delta),
        Command::LqelEnum {
            n_max,
            cross_check_max,
        } => cmd_lqel_enumerate(n_max, cross_check_max),
        Command::Severi { n_max } => cmd_severi(n_max),
        Command::Landman { n, k } => cmd_landman(n, k),
        Command::Derive {
            preset,
            n,
            delta,
            k,
            l,
            m,
        } => cmd_derive(&preset, DeriveParams { n, delta, k, l, m }),
        Command::VerifyRing {
            m_min,
            m_max,
            cert_dir,
            degree_bound,
            save_certs,
        } => cmd_verify_ring(
            m_min,
            m_max,
            cert_dir_or_env(cert_dir).as_deref(),
            degree_bound,
            save_certs,
        ),
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_)
            | Error::UnsupportedDimension { .. }
            | Error::UnknownPreset(_)
            | Error::DimensionMismatch(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.output.format.as_str() {
        "text" => ReportFormat::Text,
        "json" => ReportFormat::Json,
        other => {
            eprintln!("error: unknown format `{}` (expected text or json)", other);
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            let rendered = report.render(format);
            if let Some(path) = &cli.output.output {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(1);
                }
            } else {
                use std::io::Write;
                // Tolerate a closed pipe (e.g. piping into head).
                let _ = writeln!(std::io::stdout(), "{}", rendered);
            }
            if report.has_failure() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            if is_usage_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
