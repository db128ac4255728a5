//! The `abfourier` command line.
//!
//! Exit codes: `0` success, `1` a checked failure (a law does not hold, the
//! operator is not essentially Fourier, or recovery disagrees with a truth
//! file), `2` a usage or input-format error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench;
use crate::characterize::{
    build_reference_operator, check_hypotheses, recover, Form, HypothesisReport, RecoverOptions,
};
use crate::group::{random_automorphism, Automorphism, Group};
use crate::io::{read_json, write_json, FunctionFile, OperatorFile, ReportFile, TruthFile, TOOL_NAME};
use crate::transform::{GFunction, DEFAULT_SUPPORT_TOL_REL};
use crate::{Error, Result, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest group for which `gen-operator` writes a dense matrix.
pub const MAX_MATRIX_SIZE: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "abfourier", version, about = "Fourier analysis on finite abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PsiChoice {
    Identity,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "U", alias = "u")]
    U,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::T => Form::T,
            FormArg::U => Form::U,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier transform of a function file; the output side is flipped.
    Transform {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Use the direct O(|G|²) sum.
        #[arg(long)]
        naive: bool,
        /// Inverse transform (input must be on the dual side).
        #[arg(long)]
        inverse: bool,
    },
    /// Convolution of two functions on the same group and side.
    #[command(group(ArgGroup::new("path").args(["direct", "fft"])))]
    Convolve {
        f: PathBuf,
        g: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        direct: bool,
        /// Transform, multiply, inverse transform (default).
        #[arg(long)]
        fft: bool,
    },
    /// Write the matrix of a reference operator plus a truth sidecar.
    GenOperator {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        orders: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        conjugate: bool,
        #[arg(long, value_enum, default_value = "T")]
        form: FormArg,
        #[arg(long, value_enum, default_value = "random")]
        psi: PsiChoice,
        #[arg(short, long)]
        output: PathBuf,
        /// Truth sidecar path; defaults to `<output stem>.truth.json`.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Check the algebraic laws on an operator file.
    Check {
        operator: PathBuf,
        #[arg(long, default_value_t = 16)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recover ψ and the conjugation flag from an operator file.
    Recover {
        operator: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Support threshold relative to the sup norm.
        #[arg(long, default_value_t = DEFAULT_SUPPORT_TOL_REL)]
        support_tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs for the hypothesis check embedded in the report.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// Truth sidecar to compare against.
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Evaluate the operator from a single thread.
        #[arg(long)]
        serial: bool,
    },
    /// Time the fast transform against the direct sum.
    Bench {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        orders: Vec<i64>,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Recovery(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Transform { input, output, naive, inverse } => cmd_transform(&input, &output, naive, inverse),
        Command::Convolve { f, g, output, direct, .. } => cmd_convolve(&f, &g, &output, direct),
        Command::GenOperator { orders, seed, conjugate, form, psi, output, truth } => {
            let truth = truth.unwrap_or_else(|| truth_path_for(&output));
            cmd_gen_operator(&orders, seed, conjugate, form.into(), psi, &output, &truth)
        }
        Command::Check { operator, trials, tol, seed } => cmd_check(&operator, trials, tol, seed, out),
        Command::Recover { operator, output, tol, support_tol, seed, trials, truth, serial } => {
            let options = RecoverOptions {
                tol,
                support_tol_rel: support_tol,
                seed,
                parallel: !serial,
                ..RecoverOptions::default()
            };
            cmd_recover(&operator, &output, &options, trials, truth.as_deref(), out)
        }
        Command::Bench { orders, reps, seed } => cmd_bench(&orders, reps, seed, out),
    }
}

/// `dir/op.json` → `dir/op.truth.json`
pub fn truth_path_for(output: &Path) -> PathBuf {
    let stem = output.file_stem().unwrap_or_default().to_string_lossy();
    output.with_file_name(format!("{stem}.truth.json"))
}

pub fn cmd_transform(input: &Path, output: &Path, naive: bool, inverse: bool) -> Result<i32> {
    let f = read_json::<FunctionFile>(input)?.to_function()?;
    let result = match (inverse, naive) {
        (false, false) => f.fft_forward()?,
        (false, true) => f.dft_naive()?,
        (true, false) => f.fft_inverse()?,
        (true, true) => f.idft_naive()?,
    };
    write_json(output, &FunctionFile::from_function(&result)?)?;
    Ok(EXIT_OK)
}

pub fn cmd_convolve(f: &Path, g: &Path, output: &Path, direct: bool) -> Result<i32> {
    let f = read_json::<FunctionFile>(f)?.to_function()?;
    let g = read_json::<FunctionFile>(g)?.to_function()?;
    let result = if direct { f.convolve(&g)? } else { f.convolve_fast(&g)? };
    write_json(output, &FunctionFile::from_function(&result)?)?;
    Ok(EXIT_OK)
}

pub fn cmd_gen_operator(
    orders: &[i64],
    seed: u64,
    conjugate: bool,
    form: Form,
    psi: PsiChoice,
    output: &Path,
    truth: &Path,
) -> Result<i32> {
    let group = Group::from_signed(orders)?;
    if group.size() > MAX_MATRIX_SIZE {
        return Err(Error::GroupTooLarge { size: group.size(), limit: MAX_MATRIX_SIZE });
    }
    let psi = match psi {
        PsiChoice::Identity => Automorphism::identity(&group),
        PsiChoice::Random => random_automorphism(&group, seed)?,
    };
    let op = build_reference_operator(&group, &psi, conjugate, form)?.with_captured_matrix(conjugate)?;
    write_json(output, &OperatorFile::from_operator(&op)?)?;
    write_json(
        truth,
        &TruthFile {
            group: group.record(),
            form,
            psi: psi.perm().to_vec(),
            conjugation: conjugate,
            seed,
        },
    )?;
    Ok(EXIT_OK)
}

fn write_hypothesis_lines(report: &HypothesisReport, out: &mut dyn Write) -> Result<()> {
    for (name, err, pass) in [
        ("a", report.max_err_a, report.pass_a),
        ("b", report.max_err_b, report.pass_b),
        ("c", report.max_err_c, report.pass_c),
    ] {
        writeln!(out, "hypothesis_{name} max_err={err:e} pass={pass}")?;
    }
    Ok(())
}

pub fn cmd_check(operator: &Path, trials: usize, tol: f64, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let op = read_json::<OperatorFile>(operator)?.to_operator()?;
    let report = check_hypotheses(&op, trials.max(1), seed, tol)?;
    write_hypothesis_lines(&report, out)?;
    let status = if report.passed() { "pass" } else { "fail" };
    writeln!(out, "status {status}")?;
    let fragment = json!({
        "tool": TOOL_NAME,
        "version": VERSION,
        "seed": seed,
        "hypotheses": report,
    });
    writeln!(out, "{fragment}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_recover(
    operator: &Path,
    output: &Path,
    options: &RecoverOptions,
    trials: usize,
    truth: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let op = read_json::<OperatorFile>(operator)?.to_operator()?;
    let truth = truth.map(read_json::<TruthFile>).transpose()?;
    let report = match recover(&op, options) {
        Ok(report) => report,
        Err(Error::Recovery(failure)) => {
            writeln!(out, "status not-essentially-fourier")?;
            writeln!(out, "reason {failure}")?;
            return Ok(EXIT_CHECK_FAILED);
        }
        Err(e) => return Err(e),
    };
    let hypotheses = check_hypotheses(&op, trials.max(1), options.seed, options.tol)?;
    write_json(output, &ReportFile::from_report(&report, Some(hypotheses))?)?;
    writeln!(out, "psi {:?}", report.psi.perm())?;
    writeln!(out, "conjugation {}", report.conjugation)?;
    writeln!(out, "residual {:e}", report.residual)?;
    if let Some(truth) = truth {
        let expected = truth.automorphism()?;
        if !report.matches(&expected, truth.conjugation) {
            writeln!(out, "status truth-mismatch")?;
            return Ok(EXIT_CHECK_FAILED);
        }
        writeln!(out, "truth match")?;
    }
    writeln!(out, "status recovered")?;
    Ok(EXIT_OK)
}

pub fn cmd_bench(orders: &[i64], reps: usize, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let group = Group::from_signed(orders)?;
    let result = bench::run(&group, reps, seed)?;
    writeln!(out, "{:>10} {:>6} {:>14} {:>14} {:>10}", "size", "reps", "fft", "naive", "speedup")?;
    let naive = result
        .naive_median
        .map_or_else(|| "skipped".to_string(), |d| format!("{d:.3?}"));
    let speedup = result.speedup().map_or_else(|| "-".to_string(), |s| format!("{s:.1}x"));
    writeln!(
        out,
        "{:>10} {:>6} {:>14} {:>14} {:>10}",
        result.size,
        result.reps,
        format!("{:.3?}", result.fft_median),
        naive,
        speedup
    )?;
    writeln!(out, "checksum {:e} {:e}", result.checksum.re, result.checksum.im)?;
    Ok(EXIT_OK)
}

/// Convenience for reading a function file into memory.
pub fn load_function(path: &Path) -> Result<GFunction> {
    read_json::<FunctionFile>(path)?.to_function()
}
