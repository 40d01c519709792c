//! Command-line front end. Exit codes: 0 clean, 1 violation found, 2 usage or I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{bound_blockmatrix, bound_cor1, BoundMatrixKind};
use crate::error::{Error, Result};
use crate::harness::report::ReportBuilder;
use crate::harness::{emit, replay, run_suite, total_violations, BoundReport, MatrixJson, OutputFormat, RunConfig, TrialInputs, SUITES};
use crate::matrix::{operator_norm, BlockMatrix};
use crate::poly::{bound_abd, bound_companion_cor1, bound_estpoly, max_root_modulus, roots, PolySpec};
use crate::radius::{spectral_radius, w};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "radius-bounds",
    version,
    about = "Numerical, spectral and Berezin radius bounds with exact oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        /// One of: numrad-chain, spectral, poly, berezin, oracle-selftest, kronecker, operator-corollaries.
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated dimensions overriding the suite defaults.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Relative slack for inequality checks.
        #[arg(long, default_value_t = 1e-8)]
        slack: f64,
        #[arg(long, default_value = "human")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-evaluate the trials stored in a JSON report or inputs file.
    Replay {
        file: PathBuf,
        /// Overrides the slack stored with each report.
        #[arg(long)]
        slack: Option<f64>,
        #[arg(long, default_value = "human")]
        format: OutputFormat,
    },
    /// Every applicable block bound for a matrix in JSON form.
    Bounds {
        /// File with {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated block sizes, e.g. `2,3`.
        #[arg(long)]
        blocks: String,
        #[arg(long, default_value_t = 1e-8)]
        slack: f64,
        #[arg(long, default_value = "human")]
        format: OutputFormat,
    },
    /// Roots and root-modulus bounds of a polynomial.
    Roots {
        /// Coefficients from the highest power down, e.g. `1,0,1,1` or `1,2-1i,0.5i`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<String>,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

/// Parses `3`, `-2.5e-1`, `1.5+2i`, `-i`, `4j`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::BadSpec(format!("cannot parse `{s}` as a complex number"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

/// Parses `2,3,1` into block sizes.
pub fn parse_blocks(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::BadSpec(format!("bad block size `{p}` in `{spec}`")))
        })
        .collect()
}

fn open_out(out: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(reports: &[BoundReport], format: OutputFormat, out: &mut dyn Write) -> Result<u8> {
    emit(reports, format, &mut *out)?;
    out.flush()?;
    Ok(if total_violations(reports) > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

/// All block bounds of a user matrix, checked against its numerical radius.
pub fn matrix_bounds(m: &BlockMatrix, slack: f64) -> Result<BoundReport> {
    let t = m.flatten();
    let mut r = ReportBuilder::new("bounds", "w(T)", w(&t)?, slack);
    r.dominates("NORM", operator_norm(&t)?, "w(T)", r.oracle_value());
    let rt = spectral_radius(&t)?;
    r.dominates("w(T)", r.oracle_value(), "r(T)", rt);
    for kind in BoundMatrixKind::ALL {
        match bound_blockmatrix(m, kind) {
            Ok(v) => {
                r.upper(kind.name(), v);
            }
            Err(Error::UnsupportedKind(_, why)) => {
                r.skip(kind.name(), "w(T)", why);
            }
            Err(e) => return Err(e),
        }
    }
    if m.n() == 2 {
        r.upper("COR1", bound_cor1(m.block(0, 0), m.block(0, 1), m.block(1, 0), m.block(1, 1))?);
    }
    Ok(r.finish(
        TrialInputs::new("bounds", "matrix", "bounds")
            .with_matrix("T", &t)
            .with_dims(m.row_dims().to_vec()),
    ))
}

#[derive(Serialize)]
struct RootsReport {
    degree: usize,
    roots: Vec<[f64; 2]>,
    max_root_modulus: f64,
    alpha: f64,
    estpoly: f64,
    abd: f64,
    companion_cor1: f64,
}

fn roots_report(coeffs: &[String]) -> Result<RootsReport> {
    let c = coeffs.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>>>()?;
    let p = PolySpec::from_high_to_low(&c)?;
    Ok(RootsReport {
        degree: p.degree(),
        roots: roots(&p)?.iter().map(|z| [z.re, z.im]).collect(),
        max_root_modulus: max_root_modulus(&p)?,
        alpha: p.alpha(),
        estpoly: bound_estpoly(&p),
        abd: bound_abd(&p),
        companion_cor1: bound_companion_cor1(&p)?,
    })
}

fn write_roots(r: &RootsReport, json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut *out, r)?;
        writeln!(out)?;
    } else {
        writeln!(out, "degree {}", r.degree)?;
        for [re, im] in &r.roots {
            writeln!(out, "  root {re:+.12} {im:+.12}i   |z| = {:.12}", re.hypot(*im))?;
        }
        writeln!(out, "max |root|      {:.12}", r.max_root_modulus)?;
        writeln!(out, "refined bound   {:.12}", r.estpoly)?;
        writeln!(out, "baseline bound  {:.12}", r.abd)?;
        writeln!(out, "alpha           {:.12}", r.alpha)?;
    }
    out.flush()?;
    Ok(())
}

/// Executes a parsed command and returns the exit code.
pub fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify {
            suite,
            trials,
            seed,
            dims,
            slack,
            format,
            out,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::UnknownSuite(suite));
            }
            let cfg = RunConfig {
                trials,
                master_seed: seed,
                slack_rel: slack,
                dims,
                format,
            };
            let start = Instant::now();
            let reports = run_suite(&suite, &cfg)?;
            let mut w = open_out(out.as_ref())?;
            let code = finish(&reports, cfg.format, &mut *w)?;
            eprintln!(
                "{suite}: {} reports, {} violations, {:.2} s",
                reports.len(),
                total_violations(&reports),
                start.elapsed().as_secs_f64()
            );
            Ok(code)
        }
        Command::Replay { file, slack, format } => {
            let reports = replay(&file, slack)?;
            if reports.is_empty() {
                eprintln!("{}: no stored trial inputs to replay", file.display());
            }
            finish(&reports, format, &mut *open_out(None)?)
        }
        Command::Bounds {
            matrix,
            blocks,
            slack,
            format,
        } => {
            let text = std::fs::read_to_string(&matrix).map_err(|e| Error::Io(format!("{}: {e}", matrix.display())))?;
            let mj: MatrixJson = serde_json::from_str(&text)?;
            let m = BlockMatrix::partition(&mj.to_matrix()?, &parse_blocks(&blocks)?)?;
            let report = matrix_bounds(&m, slack)?;
            finish(std::slice::from_ref(&report), format, &mut *open_out(None)?)
        }
        Command::Roots { coeffs, json } => {
            write_roots(&roots_report(&coeffs)?, json, &mut *open_out(None)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn main() -> ExitCode {
    ExitCode::from(run_with_args(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2.5e-1").unwrap(), c(-0.25, 0.0));
        assert_eq!(parse_complex("1.5+2i").unwrap(), c(1.5, 2.0));
        assert_eq!(parse_complex("1.5 - 2i").unwrap(), c(1.5, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("4j").unwrap(), c(0.0, 4.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn block_specs() {
        assert_eq!(parse_blocks("2, 3").unwrap(), vec![2, 3]);
        assert!(parse_blocks("2,0").is_err());
        assert!(parse_blocks("a").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_with_args(["radius-bounds", "verify"]), EXIT_USAGE);
        assert_eq!(run_with_args(["radius-bounds", "verify", "nope", "--trials", "1"]), EXIT_USAGE);
        assert_eq!(run_with_args(["radius-bounds", "verify", "poly", "--trials", "0"]), EXIT_USAGE);
    }
}
