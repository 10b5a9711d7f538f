//! Command-line front end for steady-state input synthesis.
//!
//! Four subcommands share one JSON problem file: `synth` computes the input
//! whose forced response tracks the desired output, `respond` goes the other
//! way, `verify` synthesizes and then confirms the result by simulation, and
//! `check` reports stability and mode gains without committing to anything.
//!
//! Exit codes: 0 on success (and a passing `verify`), 1 for unusable input
//! (bad flags, unreadable or invalid files, rejected plant or simulation
//! settings), 2 when `verify` runs fine but the tracking check fails, 3 when
//! synthesis or simulation breaks down (unstable plant, transmission zero at
//! a requested mode, diverging state).

mod problem;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use steadytrack::{synthesize_input, verify_tracking, Error, ModeSum, SignalTerm, SimConfig};

use problem::{CliError, GainRecord, ProblemFile, ResultFile, TermRecord};

#[derive(Parser)]
#[command(
    name = "steadytrack",
    version,
    about = "Steady-state input synthesis and verification for stable SISO LTI plants"
)]
struct Cli {
    /// Path to the JSON problem file
    #[arg(long, global = true, value_name = "PATH")]
    problem: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the input whose forced response tracks the desired output
    Synth {
        /// Write the machine-readable result file here
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Compute the steady-state response to the given input
    Respond {
        /// Write the machine-readable result file here
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Synthesize the input, simulate the plant, and measure the tail error
    Verify {
        /// Simulation horizon in seconds
        #[arg(long = "t-final", value_name = "SECONDS")]
        t_final: Option<f64>,
        /// Fixed integration step in seconds
        #[arg(long, value_name = "SECONDS")]
        dt: Option<f64>,
        /// Fraction of the horizon treated as settled, in (0, 1)
        #[arg(long, value_name = "FRACTION")]
        tail: Option<f64>,
        /// Pass threshold on the maximum tail relative error
        #[arg(long, value_name = "TOL")]
        tol: Option<f64>,
        /// Write the sampled trace as CSV
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        /// Write the machine-readable result file here
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Report stability and mode gains without synthesizing
    Check,
}

fn main() -> ExitCode {
    ExitCode::from(run())
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let Some(path) = cli.problem else {
        eprintln!("error: --problem <PATH> is required");
        return 1;
    };
    let outcome = problem::load(&path).and_then(|p| match cli.command {
        Command::Synth { out } => cmd_synth(&p, out.as_deref()),
        Command::Respond { out } => cmd_respond(&p, out.as_deref()),
        Command::Verify {
            t_final,
            dt,
            tail,
            tol,
            trace,
            out,
        } => {
            let flags = VerifyFlags {
                t_final,
                dt,
                tail,
                tol,
            };
            cmd_verify(&p, &flags, trace.as_deref(), out.as_deref())
        }
        Command::Check => cmd_check(&p),
    });
    match outcome {
        Ok(code) => code,
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Lib(err)) => {
            eprintln!("error[{}]: {err}", err.name());
            exit_code_for(&err)
        }
    }
}

/// Sorts library failures into "fix your input" (1) and "the math refused"
/// (3). Step-size and configuration complaints count as input problems since
/// the caller picked those numbers.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ZeroDenominator
        | Error::ImproperTransferFunction { .. }
        | Error::DimensionMismatch(_)
        | Error::DegreeTooLarge { .. }
        | Error::InvalidSignalTerm(_)
        | Error::InvalidSimConfig(_)
        | Error::StepSizeTooLarge(_) => 1,
        Error::ZeroLeadingDenominator
        | Error::NotAsymptoticallyStable { .. }
        | Error::TransmissionZeroAtMode { .. }
        | Error::PoleAtEvaluationPoint { .. }
        | Error::NonFiniteState(_) => 3,
    }
}

fn cmd_synth(problem: &ProblemFile, out: Option<&Path>) -> Result<u8, CliError> {
    let (w, _) = problem.plant()?;
    let desired = ModeSum::from_terms(&problem.desired_terms()?);
    let synthesis = synthesize_input(&w, &desired)?;
    let input_records = TermRecord::from_mode_sum(&synthesis.input);

    report::print_plant(&w);
    report::print_warnings(&synthesis.warnings);
    report::print_terms("input terms tracking the desired output", &input_records);
    report::print_gains(&synthesis.per_mode_gain);
    println!("amplification: {:.6e}", synthesis.amplification);

    if let Some(path) = out {
        let result = ResultFile {
            input: Some(input_records),
            per_mode_gain: Some(GainRecord::from_mode_gains(&synthesis.per_mode_gain)),
            warnings: Some(synthesis.warnings.clone()),
            ..ResultFile::default()
        };
        problem::write_result(path, &result)?;
    }
    Ok(0)
}

fn cmd_respond(problem: &ProblemFile, out: Option<&Path>) -> Result<u8, CliError> {
    let (w, _) = problem.plant()?;
    let input = ModeSum::from_terms(&problem.input_terms()?);
    let response = steadytrack::steady_state_response(&w, &input)?;
    let response_records = TermRecord::from_mode_sum(&response);

    report::print_plant(&w);
    report::print_terms("steady-state response terms", &response_records);

    if let Some(path) = out {
        let result = ResultFile {
            response: Some(response_records),
            ..ResultFile::default()
        };
        problem::write_result(path, &result)?;
    }
    Ok(0)
}

struct VerifyFlags {
    t_final: Option<f64>,
    dt: Option<f64>,
    tail: Option<f64>,
    tol: Option<f64>,
}

fn sim_config(problem: &ProblemFile, flags: &VerifyFlags) -> SimConfig {
    let mut cfg = SimConfig::default();
    if let Some(block) = &problem.sim {
        if let Some(v) = block.t_final {
            cfg.t_final = v;
        }
        if let Some(v) = block.dt {
            cfg.dt = v;
        }
        if let Some(v) = block.tail_fraction {
            cfg.tail_fraction = v;
        }
        if let Some(v) = block.tol {
            cfg.tol = v;
        }
    }
    if let Some(v) = flags.t_final {
        cfg.t_final = v;
    }
    if let Some(v) = flags.dt {
        cfg.dt = v;
    }
    if let Some(v) = flags.tail {
        cfg.tail_fraction = v;
    }
    if let Some(v) = flags.tol {
        cfg.tol = v;
    }
    cfg
}

fn cmd_verify(
    problem: &ProblemFile,
    flags: &VerifyFlags,
    trace_path: Option<&Path>,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let (w, ss) = problem.plant()?;
    let desired = ModeSum::from_terms(&problem.desired_terms()?);
    let cfg = sim_config(problem, flags);

    report::print_plant(&w);
    let verdict = verify_tracking(&ss, &desired, &cfg)?;
    report::print_verify(&verdict, &cfg);

    if let Some(path) = trace_path {
        report::write_trace_csv(path, &verdict.trace)?;
    }
    if let Some(path) = out {
        let result = ResultFile {
            input: Some(TermRecord::from_mode_sum(&verdict.synthesis.input)),
            per_mode_gain: Some(GainRecord::from_mode_gains(
                &verdict.synthesis.per_mode_gain,
            )),
            warnings: Some(verdict.synthesis.warnings.clone()),
            max_tail_rel_err: Some(verdict.max_tail_rel_err),
            pass: Some(verdict.passed),
            ..ResultFile::default()
        };
        problem::write_result(path, &result)?;
    }
    Ok(if verdict.passed { 0 } else { 2 })
}

fn cmd_check(problem: &ProblemFile) -> Result<u8, CliError> {
    let (w, ss) = problem.plant()?;
    report::print_plant(&w);
    println!("state dimension: {}", ss.order());
    match w.eval(Complex64::new(0.0, 0.0)) {
        Ok(gain) => println!("W(0) = {:.12e} (DC gain)", gain.re),
        Err(_) => println!("W(0) undefined (pole at s = 0)"),
    }
    if let Some(records) = &problem.desired {
        let terms = records
            .iter()
            .map(TermRecord::to_signal)
            .collect::<Result<Vec<SignalTerm>, _>>()?;
        let desired = ModeSum::from_terms(&terms);
        if !desired.modes().is_empty() {
            println!("mode gains for desired terms:");
        }
        for mode in desired.modes() {
            match w.eval(mode.lambda) {
                Ok(gain) => println!(
                    "  lambda = {}: |W(lambda)| = {:.6e}",
                    report::fmt_lambda(mode.lambda),
                    gain.norm()
                ),
                Err(_) => println!(
                    "  lambda = {}: pole at this mode",
                    report::fmt_lambda(mode.lambda)
                ),
            }
        }
    }
    Ok(0)
}
