//! Real signal terms and their canonical complex-mode form.
//!
//! Every signal handled by this crate is a finite sum of terms
//! `Y * t^k * e^{a t} * sin(omega t + psi)`; constants, polynomials, plain
//! exponentials and sinusoids are the degenerate cases. Internally each term
//! is folded into a complex mode at `lambda = a + j omega` carrying a
//! polynomial envelope in `t`. That single shape is what the steady-state
//! maps operate on: a sinusoidal family becomes one complex coefficient via
//! `Y sin(omega t + psi) = Im{ Y e^{j psi} e^{j omega t} }`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest supported envelope degree.
///
/// The synthesis weights grow like binomial(k, i) * k!; capping the degree
/// keeps them exactly representable in doubles.
pub const MAX_DEGREE: usize = 30;

/// One real signal term `amplitude * t^degree * e^{growth t} *
/// sin(omega t + phase)`.
///
/// Convention: `omega == 0` means the term is the aperiodic envelope
/// `amplitude * t^degree * e^{growth t}` and the phase is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalTerm {
    degree: usize,
    growth: f64,
    omega: f64,
    amplitude: f64,
    phase: f64,
}

impl SignalTerm {
    /// Build a term, rejecting degrees above [`MAX_DEGREE`] and non-finite
    /// parameters.
    pub fn new(degree: usize, growth: f64, omega: f64, amplitude: f64, phase: f64) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        for (name, value) in [
            ("growth", growth),
            ("omega", omega),
            ("amplitude", amplitude),
            ("phase", phase),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidSignalTerm(format!(
                    "{name} must be finite, got {value}"
                )));
            }
        }
        Ok(SignalTerm {
            degree,
            growth,
            omega,
            amplitude,
            phase,
        })
    }

    /// Constant signal of the given value.
    pub fn constant(amplitude: f64) -> Self {
        Self::new(0, 0.0, 0.0, amplitude, 0.0).expect("arguments are finite")
    }

    /// `amplitude * t^degree`.
    pub fn monomial(amplitude: f64, degree: usize) -> Result<Self> {
        Self::new(degree, 0.0, 0.0, amplitude, 0.0)
    }

    /// `amplitude * e^{growth t}`.
    pub fn exponential(amplitude: f64, growth: f64) -> Self {
        Self::new(0, growth, 0.0, amplitude, 0.0).expect("arguments are finite")
    }

    /// `amplitude * sin(omega t + phase)`.
    pub fn sinusoid(amplitude: f64, omega: f64, phase: f64) -> Self {
        Self::new(0, 0.0, omega, amplitude, phase).expect("arguments are finite")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn growth(&self) -> f64 {
        self.growth
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Evaluate the term directly from its real-parameter form.
    pub fn eval(&self, t: f64) -> f64 {
        let envelope = self.amplitude * t.powi(self.degree as i32) * (self.growth * t).exp();
        if self.omega == 0.0 {
            envelope
        } else {
            envelope * (self.omega * t + self.phase).sin()
        }
    }
}

/// One canonical mode: a polynomial envelope attached to the complex
/// frequency `lambda = a + j omega` with `omega >= 0`.
///
/// Evaluation convention: an oscillatory mode (`omega > 0`) contributes
/// `Im{ sum_m poly[m] t^m e^{lambda t} }`; a mode with `omega == 0` has real
/// coefficients and contributes the real value directly.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalMode {
    pub lambda: Complex64,
    /// `poly[m]` multiplies `t^m`.
    pub poly: Vec<Complex64>,
}

impl CanonicalMode {
    pub fn is_oscillatory(&self) -> bool {
        self.lambda.im != 0.0
    }

    /// Degree of the envelope polynomial.
    pub fn degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }

    /// Real contribution of this mode at time `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let envelope = self.poly.iter().rev().fold(ZERO, |acc, &c| acc * t + c);
        let z = envelope * (self.lambda * t).exp();
        if self.is_oscillatory() {
            z.im
        } else {
            z.re
        }
    }
}

/// A signal in canonical form: a sum of modes with pairwise distinct
/// `lambda`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModeSum {
    modes: Vec<CanonicalMode>,
}

impl ModeSum {
    /// Normalize raw modes: fold negative frequencies onto `omega >= 0`,
    /// merge modes sharing `lambda` exactly, drop zero coefficients and
    /// empty modes. First-seen mode order is kept.
    pub fn new(modes: Vec<CanonicalMode>) -> Self {
        let mut merged: Vec<CanonicalMode> = Vec::new();
        for mut mode in modes {
            if mode.lambda.im < 0.0 {
                // Im{c e^{conj(lambda) t}} = Im{-conj(c) e^{lambda t}}
                mode.lambda = mode.lambda.conj();
                for c in &mut mode.poly {
                    *c = -c.conj();
                }
            }
            match merged.iter_mut().find(|m| m.lambda == mode.lambda) {
                Some(existing) => {
                    if existing.poly.len() < mode.poly.len() {
                        existing.poly.resize(mode.poly.len(), ZERO);
                    }
                    for (i, c) in mode.poly.iter().enumerate() {
                        existing.poly[i] += c;
                    }
                }
                None => merged.push(mode),
            }
        }
        for mode in &mut merged {
            while mode.poly.last() == Some(&ZERO) {
                mode.poly.pop();
            }
        }
        merged.retain(|m| !m.poly.is_empty());
        ModeSum { modes: merged }
    }

    /// Canonicalize a list of real terms.
    ///
    /// An oscillatory term contributes `amplitude * e^{j phase}` at envelope
    /// index `degree` of mode `growth + j|omega|`; a negative omega is
    /// flipped via `sin(-omega t + phase) = -sin(omega t - phase)`. A term
    /// with `omega == 0` contributes its real amplitude at mode `growth`.
    pub fn from_terms(terms: &[SignalTerm]) -> Self {
        let modes = terms
            .iter()
            .map(|term| {
                let mut poly = vec![ZERO; term.degree + 1];
                if term.omega == 0.0 {
                    poly[term.degree] = Complex64::new(term.amplitude, 0.0);
                    CanonicalMode {
                        lambda: Complex64::new(term.growth, 0.0),
                        poly,
                    }
                } else {
                    poly[term.degree] = if term.omega > 0.0 {
                        Complex64::from_polar(term.amplitude, term.phase)
                    } else {
                        -Complex64::from_polar(term.amplitude, -term.phase)
                    };
                    CanonicalMode {
                        lambda: Complex64::new(term.growth, term.omega.abs()),
                        poly,
                    }
                }
            })
            .collect();
        Self::new(modes)
    }

    pub fn modes(&self) -> &[CanonicalMode] {
        &self.modes
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Evaluate the signal at time `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.modes.iter().map(|m| m.eval(t)).sum()
    }

    /// Convert back to human-readable real terms.
    ///
    /// Oscillatory coefficients are emitted in polar form, so their
    /// amplitudes are nonnegative with phases in (-pi, pi]. Aperiodic terms
    /// carry the sign in the amplitude (the phase slot is unused there).
    pub fn to_terms(&self) -> Vec<SignalTerm> {
        let mut terms = Vec::new();
        for mode in &self.modes {
            for (m, &c) in mode.poly.iter().enumerate() {
                if c == ZERO {
                    continue;
                }
                let term = if mode.is_oscillatory() {
                    SignalTerm::new(m, mode.lambda.re, mode.lambda.im, c.norm(), c.arg())
                } else {
                    SignalTerm::new(m, mode.lambda.re, 0.0, c.re, 0.0)
                };
                terms.push(term.expect("canonical modes stay within the degree cap"));
            }
        }
        terms
    }
}
