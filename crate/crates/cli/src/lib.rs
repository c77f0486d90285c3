//! Command-line front end: parses flags, runs one command, emits JSON or CSV.
//!
//! Exit codes: 0 on success, 1 on a failed verification or a library error,
//! 2 on a usage error. Every failure writes one JSON line
//! `{"error": kind, "message": text}` to stderr.

pub mod presets;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fakemu::analysis::{main_term_model_with, ResidueOptions};
use fakemu::factor::{factorize, verify_factorization, ORACLE_MAX_N};
use fakemu::scan::{extrema, scan, sign_changes, write_csv, Envelope, Grid, ScanOptions};
use fakemu::{gap_check_example31, EpsilonSequence, Error, Factorization};
use serde_json::{json, Value};

pub use presets::parse_eps;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "FAKEMU_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "fakemu",
    version,
    about = "Zeta-factorizations and error-term scans for fake mu's"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (falls back to FAKEMU_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Suppress the version banner and summaries on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct EpsArg {
    /// Preset (mu, lambda, tanaka:k, kfree:k, apostol:k, kfull:k, bege:k,m,
    /// gk:k, lcm:k,k2) or inline `prefix=[..];period=[..]`.
    #[arg(long)]
    eps: String,
}

#[derive(Debug, Args)]
struct FactorArgs {
    #[command(flatten)]
    eps: EpsArg,
    /// Truncation order of the residual factor (default max(2l+16, 64)).
    #[arg(long)]
    jmax: Option<usize>,
}

#[derive(Debug, Args)]
struct ResidueArgs {
    /// Agreement required between successive quadrature node counts.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Contour radius as a fraction of the distance to the nearest other pole.
    #[arg(long, default_value_t = 0.25)]
    radius_scale: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type of the sequence.
    Classify(EpsArg),
    /// Partial zeta-factorization, optionally checked against f(n) for n <= N.
    Factorize {
        #[command(flatten)]
        fac: FactorArgs,
        #[arg(long, value_name = "N")]
        verify: Option<u64>,
    },
    /// Compare the factorization's Dirichlet coefficients with f(n), n <= N.
    Verify {
        #[command(flatten)]
        fac: FactorArgs,
        #[arg(long = "N", value_name = "N")]
        n: u64,
    },
    /// Main-term polynomials P_j as a list of {j, xi, poly}.
    Residues {
        #[command(flatten)]
        fac: FactorArgs,
        #[command(flatten)]
        res: ResidueArgs,
    },
    /// Sample E(x) = F(x) - G(x) up to x_max.
    Scan {
        #[command(flatten)]
        fac: FactorArgs,
        #[command(flatten)]
        res: ResidueArgs,
        #[arg(long)]
        xmax: u64,
        /// Points of the geometric grid.
        #[arg(long, default_value_t = 1000, conflicts_with = "step")]
        points: usize,
        /// Use every step-th integer instead of a geometric grid.
        #[arg(long)]
        step: Option<u64>,
        /// Skip the exact sign-change neighbourhoods.
        #[arg(long)]
        no_refine: bool,
        /// Reference curves, as `c=..,C=..`.
        #[arg(long)]
        envelope: Option<String>,
    },
    /// Euler-factor bound at the first zero of zeta over the 81 cases.
    Gapcheck,
}

/// A failed run: exit code plus the error line.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::InvalidEntry(_) | Error::EmptyPeriod => "usage",
            Error::OutOfRange(_) => "out_of_range",
            Error::Budget { .. } => "budget",
            Error::InsufficientTruncation { .. } => "truncation",
            Error::Unsupported(_) => "unsupported",
            Error::CriticalIndexCap(_) => "critical_index_cap",
            Error::Consistency(_) => "consistency",
            Error::Overflow => "overflow",
            Error::Pole(_) => "pole",
            Error::Convergence { .. } => "convergence",
            Error::Tolerance { .. } => "tolerance",
            Error::Numerical(_) => "numerical",
            Error::Io(_) => "io",
        };
        let code = if kind == "usage" { 2 } else { 1 };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// The artifact produced by a command, plus an optional stderr summary.
struct Output {
    body: Vec<u8>,
    summary: Option<Value>,
    /// Set when the command ran but its check failed.
    failure: Option<Failure>,
}

impl Output {
    fn json(v: &Value) -> Self {
        let mut body = serde_json::to_vec_pretty(v).expect("serializable");
        body.push(b'\n');
        Self {
            body,
            summary: None,
            failure: None,
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing the artifact
/// to `out` (or `--out`) and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            return report(err, Failure::usage(first.trim_start_matches("error: ")));
        }
    };
    if !cli.quiet {
        let _ = writeln!(err, "fakemu {}", env!("CARGO_PKG_VERSION"));
    }
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(f) => return report(err, f),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            return report(
                err,
                Failure {
                    code: 1,
                    kind: "threads",
                    message: e.to_string(),
                },
            )
        }
    };
    let result = pool.install(|| execute(&cli));
    match result {
        Ok(output) => {
            if let Err(f) = emit(&cli, &output.body, out) {
                return report(err, f);
            }
            if let (Some(s), false) = (&output.summary, cli.quiet) {
                let _ = writeln!(err, "{s}");
            }
            match output.failure {
                Some(f) => report(err, f),
                None => 0,
            }
        }
        Err(f) => report(err, f),
    }
}

fn report(err: &mut dyn Write, f: Failure) -> i32 {
    let line = json!({ "error": f.kind, "message": f.message });
    let _ = writeln!(err, "{line}");
    f.code
}

/// 0 means "let rayon decide".
fn thread_count(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{THREADS_ENV}='{v}' is not a thread count"))),
        _ => Ok(0),
    }
}

fn emit(cli: &Cli, body: &[u8], out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::from(Error::Io(e.to_string()));
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::from(Error::Io(format!("{}: {e}", path.display())))),
        None => out.write_all(body).and_then(|_| out.flush()).map_err(io),
    }
}

fn eps_of(arg: &EpsArg) -> Result<EpsilonSequence, Failure> {
    parse_eps(&arg.eps).map_err(Failure::usage)
}

fn factorization(fac: &FactorArgs) -> Result<(EpsilonSequence, Factorization), Failure> {
    let eps = eps_of(&fac.eps)?;
    if fac.jmax == Some(0) {
        return Err(Failure::usage("--jmax must be positive"));
    }
    let fz = factorize(&eps, fac.jmax)?;
    Ok((eps, fz))
}

fn residue_options(res: &ResidueArgs) -> Result<ResidueOptions, Failure> {
    if res.tol.is_nan() || res.tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    Ok(ResidueOptions {
        tol: res.tol,
        radius_scale: res.radius_scale,
        ..ResidueOptions::default()
    })
}

fn json_only(cli: &Cli) -> Result<(), Failure> {
    match cli.format {
        Some(Format::Csv) => Err(Failure::usage("--format csv is only available for scan")),
        _ => Ok(()),
    }
}

fn positive(name: &str, v: u64) -> Result<u64, Failure> {
    if v == 0 {
        Err(Failure::usage(format!("{name} must be positive")))
    } else {
        Ok(v)
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify(arg) => {
            json_only(cli)?;
            let eps = eps_of(arg)?;
            Ok(Output::json(&json!(eps.classify())))
        }
        Command::Factorize { fac, verify } => {
            json_only(cli)?;
            let (eps, fz) = factorization(fac)?;
            let mut v = serde_json::to_value(&fz).expect("serializable");
            v["classification"] = json!(fz.classification());
            let mut failure = None;
            if let Some(n) = *verify {
                let n = positive("--verify", n)?;
                let rep = verify_factorization(&eps, &fz, n)?;
                if !rep.ok {
                    failure = Some(mismatch(&rep.first_mismatch));
                }
                v["verified"] = json!(rep.ok);
                v["verification"] = json!(rep);
            }
            Ok(Output {
                failure,
                ..Output::json(&v)
            })
        }
        Command::Verify { fac, n } => {
            json_only(cli)?;
            let n = positive("--N", *n)?;
            if n > ORACLE_MAX_N {
                return Err(Error::Budget {
                    requested: n,
                    budget: ORACLE_MAX_N,
                }
                .into());
            }
            let (eps, fz) = factorization(fac)?;
            let rep = verify_factorization(&eps, &fz, n)?;
            let failure = (!rep.ok).then(|| mismatch(&rep.first_mismatch));
            Ok(Output {
                failure,
                ..Output::json(&json!(rep))
            })
        }
        Command::Residues { fac, res } => {
            json_only(cli)?;
            let (_, fz) = factorization(fac)?;
            let model = main_term_model_with(&fz, &residue_options(res)?)?;
            let terms: Vec<Value> = model
                .terms
                .iter()
                .map(|t| json!({ "j": t.j, "xi": t.xi, "poly": t.poly }))
                .collect();
            let mut out = Output::json(&Value::Array(terms));
            if !model.vanishing_residual.is_empty() {
                out.summary = Some(json!({ "vanishing_residual": model.vanishing_residual }));
            }
            Ok(out)
        }
        Command::Scan {
            fac,
            res,
            xmax,
            points,
            step,
            no_refine,
            envelope,
        } => {
            let x_max = positive("--xmax", *xmax)?;
            let (eps, fz) = factorization(fac)?;
            let env = match envelope {
                Some(text) => {
                    let (c, big_c) = parse_envelope(text)?;
                    Some(Envelope::for_factorization(&fz, c, big_c)?)
                }
                None => None,
            };
            let model = main_term_model_with(&fz, &residue_options(res)?)?;
            let grid = match step {
                Some(s) => Grid::Linear {
                    step: positive("--step", *s)?,
                },
                None => {
                    if *points < 2 {
                        return Err(Failure::usage("--points must be at least 2"));
                    }
                    Grid::Geometric { points: *points }
                }
            };
            let opts = ScanOptions {
                grid,
                refine: !no_refine,
                ..ScanOptions::default()
            };
            let records = scan(&eps, &fz, &model, x_max, &opts)?;
            let flips = sign_changes(&records);
            let ext = extrema(&records)?;
            let summary =
                json!({ "records": records.len(), "sign_changes": flips.len(), "extrema": ext });
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut body = Vec::new();
                    write_csv(&records, env.as_ref(), &mut body)?;
                    Ok(Output {
                        body,
                        summary: Some(summary),
                        failure: None,
                    })
                }
                Format::Json => {
                    let v = json!({
                        "records": records,
                        "sign_changes": flips,
                        "extrema": ext,
                    });
                    Ok(Output {
                        summary: Some(summary),
                        ..Output::json(&v)
                    })
                }
            }
        }
        Command::Gapcheck => {
            json_only(cli)?;
            let g = gap_check_example31()?;
            Ok(Output::json(
                &json!({ "min_margin": g.min_margin, "argmin": g.argmin }),
            ))
        }
    }
}

fn mismatch(first: &Option<u64>) -> Failure {
    Failure {
        code: 1,
        kind: "verification",
        message: match first {
            Some(n) => format!("coefficients differ first at n = {n}"),
            None => "coefficients differ".into(),
        },
    }
}

/// `c=..,C=..` in either order; both are required.
fn parse_envelope(text: &str) -> Result<(f64, f64), Failure> {
    let mut c = None;
    let mut big_c = None;
    for part in text.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("bad envelope part '{part}'")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad envelope value '{v}'")))?;
        match k.trim() {
            "c" => c = Some(v),
            "C" => big_c = Some(v),
            other => {
                return Err(Failure::usage(format!(
                    "unknown envelope constant '{other}'"
                )))
            }
        }
    }
    match (c, big_c) {
        (Some(c), Some(big_c)) => Ok((c, big_c)),
        _ => Err(Failure::usage("--envelope needs both c=.. and C=..")),
    }
}
