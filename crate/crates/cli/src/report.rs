//! Human-readable reporting and CSV trace output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use steadytrack::{ModeGain, SimConfig, Trace, TransferFunction, VerifyReport};

use crate::problem::{CliError, TermRecord};

pub fn fmt_lambda(lambda: Complex64) -> String {
    format!("{:.6}{:+.6}j", lambda.re, lambda.im)
}

/// Renders one term the way it reads in handwritten notation, with the phase
/// shown in both radians and degrees.
pub fn describe_term(rec: &TermRecord) -> String {
    let mut out = format!("{:.12e}", rec.amplitude);
    match rec.degree {
        0 => {}
        1 => out.push_str(" * t"),
        k => out.push_str(&format!(" * t^{k}")),
    }
    if rec.growth != 0.0 {
        out.push_str(&format!(" * e^({:.6} t)", rec.growth));
    }
    if rec.omega != 0.0 {
        out.push_str(&format!(
            " * sin({:.6} t {:+.6} rad [{:+.3} deg])",
            rec.omega,
            rec.phase,
            rec.phase.to_degrees()
        ));
    }
    out
}

pub fn print_plant(w: &TransferFunction) {
    println!("plant: order {}, {:?}", w.order(), w.stability());
}

pub fn print_terms(title: &str, records: &[TermRecord]) {
    println!("{title}:");
    if records.is_empty() {
        println!("  (zero signal)");
    }
    for rec in records {
        println!("  {}", describe_term(rec));
    }
}

pub fn print_gains(gains: &[ModeGain]) {
    if gains.is_empty() {
        return;
    }
    println!("mode gains:");
    for g in gains {
        println!(
            "  lambda = {}: |W(lambda)| = {:.6e}",
            fmt_lambda(g.lambda),
            g.gain
        );
    }
}

pub fn print_warnings(warnings: &[String]) {
    for w in warnings {
        println!("warning: {w}");
    }
}

pub fn print_verify(report: &VerifyReport, cfg: &SimConfig) {
    print_warnings(&report.synthesis.warnings);
    print_terms(
        "synthesized input",
        &TermRecord::from_mode_sum(&report.synthesis.input),
    );
    println!(
        "max tail relative error = {:.6e} over t in [{:.3}, {:.3}]",
        report.max_tail_rel_err, report.transient_end, cfg.t_final
    );
    println!(
        "abs err min/max/final = {:.3e}/{:.3e}/{:.3e} over {} samples",
        report.summary.min_abs_err,
        report.summary.max_abs_err,
        report.summary.final_abs_err,
        report.trace.samples.len()
    );
    if report.passed {
        println!("PASS (tol = {:.3e})", cfg.tol);
    } else {
        println!("FAIL (tol = {:.3e})", cfg.tol);
    }
}

/// Writes the trace as CSV. The header is fixed and every value carries
/// thirteen significant digits so the file reloads without visible loss.
pub fn write_trace_csv(path: &Path, trace: &Trace) -> Result<(), CliError> {
    let fail =
        |e: std::io::Error| CliError::Invalid(format!("cannot write {}: {e}", path.display()));
    let file = File::create(path).map_err(fail)?;
    let mut out = BufWriter::new(file);
    let written = (|| {
        writeln!(out, "t,u,y,y_desired,abs_err")?;
        for s in &trace.samples {
            writeln!(
                out,
                "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                s.t, s.u, s.y, s.y_desired, s.abs_err
            )?;
        }
        out.flush()
    })();
    written.map_err(fail)
}
