//! Problem and result file schemas.
//!
//! Both files are JSON. Polynomial coefficients are ascending powers
//! (`coeffs[i]` multiplies `s^i`), matching the library convention, and all
//! angles are radians. A problem file names the plant either as a transfer
//! function or as state-space matrices, carries the signal to track (or the
//! input to respond to) as a list of term records, and may pin simulation
//! settings that command-line flags can still override.

use std::fmt;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};
use steadytrack::{Error, ModeGain, ModeSum, SignalTerm, StateSpace, TransferFunction};

/// Failures surfaced to the user, split by who is at fault.
///
/// `Invalid` covers unreadable files, schema violations, and bad flags; the
/// process exits 1. `Lib` wraps a library error and exits with the code for
/// its class (see `exit_code_for` in `main.rs`).
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Lib(err)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "{msg}"),
            CliError::Lib(err) => write!(f, "{err}"),
        }
    }
}

/// Top-level problem file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub system: SystemSpec,
    pub desired: Option<Vec<TermRecord>>,
    pub input: Option<Vec<TermRecord>>,
    pub sim: Option<SimBlock>,
}

/// Plant description: exactly one of the two forms must be present.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub tf: Option<TfSpec>,
    pub ss: Option<SsSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TfSpec {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

/// State-space matrices as nested row-major arrays. `B` is a single column,
/// `C` a single row, `D` a 1x1 matrix (or empty for no feedthrough).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<f64>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<f64>>,
}

/// One additive signal term: `amplitude * t^degree * e^(growth t)` times
/// `sin(omega t + phase)` when `omega` is nonzero. Every field except the
/// amplitude defaults to zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    #[serde(default)]
    pub degree: usize,
    #[serde(default)]
    pub growth: f64,
    #[serde(default)]
    pub omega: f64,
    pub amplitude: f64,
    #[serde(default)]
    pub phase: f64,
}

/// Optional simulation settings; anything absent falls back to the defaults,
/// and explicit command-line flags win over the file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimBlock {
    pub t_final: Option<f64>,
    pub dt: Option<f64>,
    pub tail_fraction: Option<f64>,
    pub tol: Option<f64>,
}

/// Machine-readable output written by `--out`. Which fields are filled
/// depends on the command: `synth` writes `input`, `respond` writes
/// `response`, `verify` adds the tail error and verdict.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Vec<TermRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub response: Option<Vec<TermRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_mode_gain: Option<Vec<GainRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warnings: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_tail_rel_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

/// Plant gain at one requested mode, with the mode spelled in the same
/// growth/omega language as the term records.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainRecord {
    pub growth: f64,
    pub omega: f64,
    pub gain: f64,
}

impl GainRecord {
    pub fn from_mode_gains(gains: &[ModeGain]) -> Vec<GainRecord> {
        gains
            .iter()
            .map(|g| GainRecord {
                growth: g.lambda.re,
                omega: g.lambda.im,
                gain: g.gain,
            })
            .collect()
    }
}

impl TermRecord {
    pub fn to_signal(&self) -> Result<SignalTerm, Error> {
        SignalTerm::new(
            self.degree,
            self.growth,
            self.omega,
            self.amplitude,
            self.phase,
        )
    }

    pub fn from_signal(term: &SignalTerm) -> Self {
        TermRecord {
            degree: term.degree(),
            growth: term.growth(),
            omega: term.omega(),
            amplitude: term.amplitude(),
            phase: term.phase(),
        }
    }

    pub fn from_mode_sum(sum: &ModeSum) -> Vec<TermRecord> {
        sum.to_terms().iter().map(Self::from_signal).collect()
    }
}

pub fn load(path: &Path) -> Result<ProblemFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let problem: ProblemFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("invalid problem file {}: {e}", path.display())))?;
    if problem.desired.is_some() && problem.input.is_some() {
        return Err(CliError::Invalid(
            "problem file must contain exactly one of `desired` and `input`, found both".into(),
        ));
    }
    Ok(problem)
}

pub fn write_result(path: &Path, result: &ResultFile) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(result).expect("result file serializes");
    fs::write(path, text + "\n")
        .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))
}

impl ProblemFile {
    /// Builds both plant forms. The form given in the file is kept verbatim
    /// as the simulation target; the other is derived from it, so synthesis
    /// and simulation never share a single hand-written representation.
    pub fn plant(&self) -> Result<(TransferFunction, StateSpace), CliError> {
        match (&self.system.tf, &self.system.ss) {
            (Some(tf), None) => {
                let w = TransferFunction::new(tf.num.clone(), tf.den.clone())?;
                let ss = w.to_state_space();
                Ok((w, ss))
            }
            (None, Some(spec)) => {
                let ss = spec.build()?;
                let w = ss.to_transfer_function();
                Ok((w, ss))
            }
            (Some(_), Some(_)) => Err(CliError::Invalid(
                "system must contain exactly one of `tf` and `ss`, found both".into(),
            )),
            (None, None) => Err(CliError::Invalid(
                "system must contain one of `tf` and `ss`".into(),
            )),
        }
    }

    pub fn desired_terms(&self) -> Result<Vec<SignalTerm>, CliError> {
        match &self.desired {
            Some(records) => terms_from_records(records),
            None => Err(CliError::Invalid(
                "problem file has no `desired` terms (required by this command)".into(),
            )),
        }
    }

    pub fn input_terms(&self) -> Result<Vec<SignalTerm>, CliError> {
        match &self.input {
            Some(records) => terms_from_records(records),
            None => Err(CliError::Invalid(
                "problem file has no `input` terms (required by this command)".into(),
            )),
        }
    }
}

fn terms_from_records(records: &[TermRecord]) -> Result<Vec<SignalTerm>, CliError> {
    records
        .iter()
        .map(|r| r.to_signal().map_err(CliError::from))
        .collect()
}

impl SsSpec {
    fn build(&self) -> Result<StateSpace, CliError> {
        let a = matrix("A", &self.a)?;
        let b = matrix("B", &self.b)?;
        let c = matrix("C", &self.c)?;
        let d = matrix("D", &self.d)?;
        if b.ncols() > 1 {
            return Err(CliError::Invalid(format!(
                "B must be a single column, got {} columns",
                b.ncols()
            )));
        }
        if c.nrows() > 1 {
            return Err(CliError::Invalid(format!(
                "C must be a single row, got {} rows",
                c.nrows()
            )));
        }
        let d = match d.shape() {
            (0, 0) => 0.0,
            (1, 1) => d[(0, 0)],
            (rows, cols) => {
                return Err(CliError::Invalid(format!(
                    "D must be a 1x1 matrix, got {rows}x{cols}"
                )));
            }
        };
        let b = DVector::from_vec(b.iter().copied().collect());
        let c = RowDVector::from_row_slice(&c.iter().copied().collect::<Vec<_>>());
        StateSpace::new(a, b, c, d).map_err(CliError::from)
    }
}

fn matrix(name: &str, rows: &[Vec<f64>]) -> Result<DMatrix<f64>, CliError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(CliError::Invalid(format!(
            "matrix {name} must be rectangular"
        )));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}
