//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 when a computation ran
//! out of budget (evaluation caps, digit terms, or grid refinements).

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::cauchy::beta;
use crate::diagonal::Diagonal;
use crate::elem_expr::{Budget, ZeroPow, DEFAULT_MAX_BITS, DEFAULT_MAX_NODES};
use crate::enumeration::{Code, Enumeration};
use crate::error::Error;
use crate::exact::{decimal, fraction, parse_fraction};
use crate::io::{load_cache, load_domain, save_cache};
use crate::semialg::{approximate_volume, riemann_volume, DEFAULT_MAX_DEPTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Places used for the display-only decimal rendering of volumes.
const DECIMAL_PLACES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZeroPowArg {
    One,
    Indeterminate,
}

impl From<ZeroPowArg> for ZeroPow {
    fn from(z: ZeroPowArg) -> Self {
        match z {
            ZeroPowArg::One => ZeroPow::One,
            ZeroPowArg::Indeterminate => ZeroPow::Indeterminate,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nonperiod", version, about = "Exact computations with a non-elementary real and semi-algebraic volumes")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Cap on the bit length of intermediate values.
    #[arg(long, global = true, env = "NONPERIOD_BUDGET_BITS", default_value_t = DEFAULT_MAX_BITS,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_bits: u64,

    /// Cap on evaluation steps per expression.
    #[arg(long, global = true, env = "NONPERIOD_BUDGET_NODES", default_value_t = DEFAULT_MAX_NODES,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: u64,

    /// JSON file holding the decode table; loaded if present, saved afterwards.
    #[arg(long, global = true)]
    decode_cache: Option<PathBuf>,

    /// Value of 0^0 in enumerated functions.
    #[arg(long, global = true, value_enum, default_value = "indeterminate")]
    zero_pow: ZeroPowArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render the expression f_e.
    Decode {
        e: u64,
        /// Use "-." for modified subtraction.
        #[arg(long)]
        ascii: bool,
    },
    /// Evaluate f_e(x).
    Eval { e: u64, x: BigUint },
    /// The rational g_e(n).
    G { e: u64, n: u64 },
    /// The enforced value ḡ_e(n) with its certified radius.
    Beta {
        e: u64,
        #[arg(long)]
        index: u64,
    },
    /// Bits ε_1..ε_N of the diagonal real.
    Epsilons {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Certified decimal digits of α/2.
    AlphaDigits {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        digits: u64,
        /// Cap on ternary terms; defaults to 4·digits + 16.
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// Inner grid approximation of a domain's volume.
    #[command(group(ArgGroup::new("mode").required(true).args(["n", "tol"])))]
    Volume {
        #[arg(long)]
        domain: PathBuf,
        /// Fixed grid resolution.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        /// Stop once successive doublings differ by less than tol/2.
        #[arg(long)]
        tol: Option<String>,
        #[arg(long, env = "NONPERIOD_MAX_DEPTH", default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: u32,
        #[arg(long, default_value_t = 4096)]
        max_n: u64,
        /// Starting grid for --tol.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        n0: u64,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Parses `argv` (including the program name), runs one subcommand and
/// returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn enumeration(cli: &Cli) -> Result<Enumeration, Failure> {
    let decoder = match &cli.decode_cache {
        Some(path) if path.exists() => load_cache(path).map_err(|e| Failure::Usage(format!("--decode-cache: {e}")))?,
        _ => Default::default(),
    };
    Ok(Enumeration::with_decoder(decoder, cli.zero_pow.into()))
}

fn persist(cli: &Cli, enumeration: &Enumeration) -> Result<(), Failure> {
    if let Some(path) = &cli.decode_cache {
        save_cache(path, enumeration.decoder()).map_err(|e| Failure::Usage(format!("--decode-cache: {e}")))?;
    }
    Ok(())
}

/// Indeterminate values print as the word `indeterminate` rather than failing.
fn or_indeterminate<T>(r: crate::Result<T>, show: impl FnOnce(T) -> String) -> Result<String, Failure> {
    match r {
        Ok(v) => Ok(show(v)),
        Err(Error::Indeterminate) => Ok("indeterminate".into()),
        Err(e) => Err(e.into()),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let budget = Budget { max_bits: cli.budget_bits, max_nodes: cli.budget_nodes };
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Decode { e, ascii } => {
            let en = enumeration(cli)?;
            let text = en.decode(Code(*e)).render(*ascii);
            persist(cli, &en)?;
            if json {
                emit(out, json!({ "e": e, "expr": text }))
            } else {
                emit(out, text)
            }
        }
        Command::Eval { e, x } => {
            let en = enumeration(cli)?;
            let v = or_indeterminate(en.f(Code(*e), x, &budget), |v| v.to_string())?;
            persist(cli, &en)?;
            if json {
                emit(out, json!({ "e": e, "x": x.to_string(), "value": v }))
            } else {
                emit(out, v)
            }
        }
        Command::G { e, n } => {
            let en = enumeration(cli)?;
            let v = or_indeterminate(en.g(Code(*e), *n, &budget), |v| fraction(&v))?;
            persist(cli, &en)?;
            if json {
                emit(out, json!({ "e": e, "n": n, "value": v }))
            } else {
                emit(out, v)
            }
        }
        Command::Beta { e, index } => {
            let en = enumeration(cli)?;
            let v = or_indeterminate(beta(&en, Code(*e), *index, &budget), |b| fraction(&b.value))?;
            persist(cli, &en)?;
            let radius = format!("1/(6*7^{index})");
            if json {
                emit(out, json!({ "e": e, "index": index, "value": v, "radius": radius }))
            } else if v == "indeterminate" {
                emit(out, v)
            } else {
                emit(out, format!("{v} ± {radius}"))
            }
        }
        Command::Epsilons { count } => {
            let en = enumeration(cli)?;
            let mut diag = Diagonal::new(en, budget);
            let eps = diag.epsilons(*count)?;
            persist(cli, diag.enumeration())?;
            if json {
                emit(out, json!({ "epsilons": eps }))
            } else {
                let words: Vec<String> = eps.iter().map(u8::to_string).collect();
                emit(out, words.join(" "))
            }
        }
        Command::AlphaDigits { digits, max_terms } => {
            let en = enumeration(cli)?;
            let count = *digits as usize;
            let mut diag = Diagonal::new(en, budget);
            let d = match max_terms {
                Some(m) => diag.half_alpha_digits_with(count, *m),
                None => diag.half_alpha_digits(count),
            }?;
            persist(cli, diag.enumeration())?;
            if json {
                emit(out, json!({ "digits": d }))
            } else {
                emit(out, format!("0.{d}"))
            }
        }
        Command::Volume { domain, n, tol, max_depth, max_n, n0 } => {
            let dom = load_domain(domain).map_err(|e| Failure::Usage(format!("--domain: {e}")))?;
            let (value, unknown, n_used) = match (n, tol) {
                (Some(n), _) => {
                    let s = riemann_volume(&dom, *n, *max_depth)?;
                    (s.volume, s.unknown_count, s.n)
                }
                (None, Some(tol)) => {
                    let tol = parse_fraction(tol).map_err(|e| Failure::Usage(format!("--tol: {e}")))?;
                    let a = approximate_volume(&dom, &tol, *n0, *max_n, *max_depth)?;
                    (a.value, a.unknown_count, a.n_used)
                }
                (None, None) => return Err(Failure::Usage("one of --n or --tol is required".into())),
            };
            let (exact, dec) = (fraction(&value), decimal(&value, DECIMAL_PLACES));
            if json {
                emit(
                    out,
                    json!({ "volume": exact, "decimal": dec, "unknown_count": unknown, "n_used": n_used }),
                )
            } else {
                emit(out, format!("volume {exact}\ndecimal {dec}\nunknown_count {unknown}\nn_used {n_used}"))
            }
        }
    }
}
