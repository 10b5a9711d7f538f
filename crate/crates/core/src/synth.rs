//! The steady-state maps: forward (input signal to forced output) and
//! inverse (desired output to required input).
//!
//! For a stable plant W and a mode `lambda`, driving with
//! `u = t^m e^{lambda t}` forces, once transients die, the output
//! `y = sum_{i=0..m} binom(m,i) W^(i)(lambda) t^{m-i} e^{lambda t}`:
//! every derivative of W taken trades one power of t. Stacking the envelope
//! coefficients makes the per-mode map upper triangular with `W(lambda)` on
//! the diagonal, so the forward direction is a weighted sum and the inverse
//! is a single back-substitution. Oscillatory modes ride along unchanged by
//! linearity of the imaginary-part convention. A mode with `W(lambda) = 0`
//! is a transmission zero: no bounded input in the class can produce output
//! there, and synthesis refuses it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lti::{ModeDerivatives, Stability, TransferFunction};
use crate::signal::{CanonicalMode, ModeSum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Below this |W(lambda)| a mode counts as a transmission zero and synthesis
/// fails: the required amplitudes would exceed 1e9 and double precision can
/// no longer honor the round-trip guarantees.
pub const TRANSMISSION_ZERO_TOL: f64 = 1e-9;

/// Gains between [`TRANSMISSION_ZERO_TOL`] and this bound synthesize fine
/// but produce a warning about the amplification involved.
pub const NEAR_ZERO_WARN_TOL: f64 = 1e-6;

/// Result of an input synthesis: the input signal plus conditioning data.
#[derive(Debug, Clone)]
pub struct SynthesisReport {
    /// The computed steady-state input.
    pub input: ModeSum,
    /// |W(lambda)| for each desired mode, in mode order.
    pub per_mode_gain: Vec<ModeGain>,
    /// Near-transmission-zero notices.
    pub warnings: Vec<String>,
    /// Worst-case input blow-up: max over modes of 1 / |W(lambda)|.
    pub amplification: f64,
}

/// Gain magnitude of the plant at one mode point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGain {
    pub lambda: Complex64,
    pub gain: f64,
}

/// Binomial coefficient by the Pascal recurrence, exact in doubles for the
/// degree range this crate admits.
fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut row = vec![1.0f64];
    for _ in 0..n {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

fn require_stable(tf: &TransferFunction) -> Result<()> {
    let verdict = tf.stability();
    if verdict != Stability::Stable {
        return Err(Error::NotAsymptoticallyStable { verdict });
    }
    Ok(())
}

/// Forward map for one mode: envelope coefficients of the forced output
/// given envelope coefficients p of the input.
fn mode_response(md: &ModeDerivatives, p: &[Complex64]) -> Vec<Complex64> {
    let k = p.len() - 1;
    let mut q = vec![ZERO; k + 1];
    for n in 0..=k {
        for m in n..=k {
            q[n] += p[m] * binomial(m, m - n) * md.derivative(m - n);
        }
    }
    q
}

/// Inverse map for one mode: back-substitution on the upper-triangular
/// forward map, highest power first.
fn mode_inverse(md: &ModeDerivatives, q: &[Complex64]) -> Vec<Complex64> {
    let k = q.len() - 1;
    let w0 = md.gain();
    let mut p = vec![ZERO; k + 1];
    for n in (0..=k).rev() {
        let mut acc = q[n];
        for m in n + 1..=k {
            acc -= p[m] * binomial(m, m - n) * md.derivative(m - n);
        }
        p[n] = acc / w0;
    }
    p
}

/// Steady-state (forced) output of a stable plant driven by `input`.
///
/// Each input mode maps to an output mode at the same `lambda`; the output
/// envelope coefficient of `t^n` is
/// `q_n = sum_{m=n..K} p_m binom(m, m-n) W^(m-n)(lambda)`.
pub fn steady_state_response(tf: &TransferFunction, input: &ModeSum) -> Result<ModeSum> {
    require_stable(tf)?;
    let mut modes = Vec::with_capacity(input.modes().len());
    for mode in input.modes() {
        let md = tf.taylor_at(mode.lambda, mode.degree())?;
        modes.push(CanonicalMode {
            lambda: mode.lambda,
            poly: mode_response(&md, &mode.poly),
        });
    }
    Ok(ModeSum::new(modes))
}

/// Compute the input whose forced response equals `desired`.
///
/// Works mode by mode: the forward map is upper triangular with `W(lambda)`
/// on the diagonal, so the envelope coefficients come from one
/// back-substitution per mode. Fails on unstable plants and on transmission
/// zeros at a desired mode; warns when a mode gain is small enough that the
/// input amplitudes blow up past 1e6.
pub fn synthesize_input(tf: &TransferFunction, desired: &ModeSum) -> Result<SynthesisReport> {
    require_stable(tf)?;
    let mut modes = Vec::with_capacity(desired.modes().len());
    let mut per_mode_gain = Vec::with_capacity(desired.modes().len());
    let mut warnings = Vec::new();
    let mut amplification: f64 = 0.0;
    for mode in desired.modes() {
        let md = tf.taylor_at(mode.lambda, mode.degree())?;
        let gain = md.gain().norm();
        if gain < TRANSMISSION_ZERO_TOL {
            return Err(Error::TransmissionZeroAtMode {
                lambda: mode.lambda,
                gain,
            });
        }
        if gain < NEAR_ZERO_WARN_TOL {
            warnings.push(format!(
                "near transmission zero at lambda = {}: amplification = {:.3e}",
                mode.lambda,
                1.0 / gain
            ));
        }
        amplification = amplification.max(1.0 / gain);
        per_mode_gain.push(ModeGain {
            lambda: mode.lambda,
            gain,
        });
        modes.push(CanonicalMode {
            lambda: mode.lambda,
            poly: mode_inverse(&md, &mode.poly),
        });
    }
    Ok(SynthesisReport {
        input: ModeSum::new(modes),
        per_mode_gain,
        warnings,
        amplification,
    })
}

/// Input tracking `t^k`, built by explicit residual cancellation instead of
/// back-substitution.
///
/// Starts from the candidate `t^k / W(0)`, subtracts that candidate's full
/// forced response from the residual target, and repeats on the highest
/// power left. Algebraically this is the same triangular solve as
/// [`synthesize_input`], walked one cancellation at a time; it exists as an
/// independent route for cross-checking the two implementations against
/// each other.
pub fn synthesize_monomial_by_cancellation(tf: &TransferFunction, k: usize) -> Result<ModeSum> {
    require_stable(tf)?;
    let md = tf.taylor_at(ZERO, k)?;
    let w0 = md.gain();
    if w0.norm() < TRANSMISSION_ZERO_TOL {
        return Err(Error::TransmissionZeroAtMode {
            lambda: ZERO,
            gain: w0.norm(),
        });
    }
    let mut residual = vec![ZERO; k + 1];
    residual[k] = Complex64::new(1.0, 0.0);
    let mut input = vec![ZERO; k + 1];
    for p in (0..=k).rev() {
        let coeff = residual[p];
        if coeff == ZERO {
            continue;
        }
        let u_p = coeff / w0;
        input[p] += u_p;
        // subtract the forced response of u_p t^p from what is left to track
        for i in 0..=p {
            residual[p - i] -= u_p * binomial(p, i) * md.derivative(i);
        }
    }
    Ok(ModeSum::new(vec![CanonicalMode {
        lambda: ZERO,
        poly: input,
    }]))
}
