//! Command-line front end. Exit codes: 0 success, 1 failed check, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sphdet_core::hessians::{tr_inv_laplacian_s3, TraceRoute};
use sphdet_core::kernels::{alpha_seq_detl, alpha_seq_s3_f};
use sphdet_core::{ExactScalar, Sign, SphereSpec};

use crate::acceptance;
use crate::format::{mismatches, render_cells, OutputFormat, ScalarJson, DEFAULT_DIGITS};
use crate::table::{conjecture_table_parallel, thread_count};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance for agreement between the two trace routes.
const ROUTE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "sphdet", version, about = "Exact spectral determinant Hessians on round spheres")]
struct Cli {
    /// Worker threads (defaults to SPHDET_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Digits after the decimal point in approximate values.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Route {
    Spectral,
    Kernel,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Functional {
    /// log det′Δ on S³.
    Detprime,
    /// log det L on Sⁿ.
    #[value(name = "detL", alias = "detl")]
    DetL,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regularized trace of the inverse Laplacian on Sⁿ.
    Z1 {
        #[arg(long)]
        n: u32,
    },
    /// TR Δ⁻¹ on S³ by the kernel route, the spectral route, or both.
    TrInvLaplacian {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, value_enum)]
        route: Option<Route>,
    },
    /// Fourier weights of the singular product kernel.
    Alpha {
        #[arg(long, value_enum)]
        functional: Functional,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        #[arg(long, default_value = "md")]
        format: OutputFormat,
    },
    /// Signs of the conformal Hessian on H_k next to the predicted signs.
    ConjectureTable {
        #[arg(long, default_value_t = 17)]
        n_max: u32,
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        #[arg(long, default_value = "md")]
        format: OutputFormat,
    },
    /// Run every acceptance criterion.
    Selftest,
}

enum CliError {
    Usage(String),
    Failure(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn failure(e: impl ToString) -> CliError {
    CliError::Failure(e.to_string())
}

fn odd_spec(n: u32) -> Result<SphereSpec, CliError> {
    SphereSpec::new(n).map_err(|_| CliError::Usage(format!("--n must be odd and at least 3, got {n}")))
}

#[derive(Serialize)]
struct AlphaRow {
    k: u64,
    value: ScalarJson,
    positive: bool,
}

fn render_alpha(values: &[ExactScalar], format: OutputFormat, digits: usize) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            let rows: Vec<AlphaRow> = values
                .iter()
                .enumerate()
                .map(|(k, v)| AlphaRow { k: k as u64, value: ScalarJson::encode(v, digits), positive: v.sign() == Sign::Positive })
                .collect();
            out = serde_json::to_string_pretty(&rows).expect("plain data serializes");
            out.push('\n');
        }
        OutputFormat::Csv => {
            out.push_str("k,value_exact,value_approx,positive\n");
            for (k, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{k},\"{v}\",{},{}", v.to_decimal_string(digits), v.sign() == Sign::Positive);
            }
        }
        OutputFormat::Md => {
            out.push_str("| k | exact | approx | positive |\n|---|---|---|---|\n");
            for (k, v) in values.iter().enumerate() {
                let _ = writeln!(out, "| {k} | {v} | {} | {} |", v.to_decimal_string(digits), v.sign() == Sign::Positive);
            }
        }
    }
    out
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let digits = cli.digits;
    let threads = thread_count(cli.threads).map_err(CliError::Usage)?;
    let mut text = String::new();
    match cli.command {
        Command::Z1 { n } => {
            let z = ExactScalar::from_rational(odd_spec(n)?.z1());
            let _ = writeln!(text, "{z}\n{}", z.to_decimal_string(digits));
        }
        Command::TrInvLaplacian { n, route } => {
            if n != 3 {
                return usage(format!("tr-inv-laplacian is only available for n = 3, got {n}"));
            }
            let kernel = || -> Result<ExactScalar, CliError> {
                tr_inv_laplacian_s3(TraceRoute::Kernel)
                    .map_err(failure)?
                    .0
                    .ok_or_else(|| failure("kernel route produced no exact value"))
            };
            let spectral = || tr_inv_laplacian_s3(TraceRoute::Spectral).map(|v| v.1).map_err(failure);
            match route {
                Some(Route::Kernel) => {
                    let _ = writeln!(text, "{}", kernel()?);
                }
                Some(Route::Spectral) => {
                    let _ = writeln!(text, "{:.*}", digits, spectral()?);
                }
                None => {
                    let k = kernel()?;
                    let s = spectral()?;
                    let _ = writeln!(text, "kernel   {k}\nspectral {s:.digits$}");
                    let dev = (k.to_f64() - s).abs();
                    if dev >= ROUTE_TOLERANCE {
                        out.write_all(text.as_bytes()).map_err(failure)?;
                        return Err(failure(format!("routes disagree by {dev:e}")));
                    }
                    let _ = writeln!(text, "agree within {ROUTE_TOLERANCE:e}");
                }
            }
        }
        Command::Alpha { functional, n, k_max, format } => {
            let seq = match functional {
                Functional::Detprime => {
                    if n != 3 {
                        return usage(format!("--functional detprime requires --n 3, got {n}"));
                    }
                    alpha_seq_s3_f()
                }
                Functional::DetL => {
                    odd_spec(n)?;
                    alpha_seq_detl(n).map_err(failure)?
                }
            };
            text = render_alpha(&seq.terms(k_max), format, digits);
        }
        Command::ConjectureTable { n_max, k_max, format } => {
            if n_max < 3 {
                return usage(format!("--n-max must be at least 3, got {n_max}"));
            }
            if k_max < 2 {
                return usage(format!("--k-max must be at least 2, got {k_max}"));
            }
            let cells = conjecture_table_parallel(n_max, k_max, threads).map_err(failure)?;
            text = render_cells(&cells, format, digits);
            if !mismatches(&cells).is_empty() {
                eprintln!("warning: {} cells differ from the predicted sign", mismatches(&cells).len());
            }
        }
        Command::Selftest => {
            let outcomes = acceptance::run_all(threads, |o| {
                let _ = writeln!(out, "{}", o.line());
            });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let _ = writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed);
            if failed > 0 {
                return Err(CliError::Failure(format!("{failed} acceptance criteria failed")));
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(failure)
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILURE
        }
    }
}
