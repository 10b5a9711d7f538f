//! Closed-form steady-state input synthesis for stable SISO LTI systems.
//!
//! Given a plant (state space or transfer function) and a desired output
//! built from polynomial, exponential, sinusoidal and pseudo-periodic terms,
//! this crate computes, in closed form, the input whose forced response
//! equals the desired output exactly. The construction inverts an
//! upper-triangular per-mode map built from the local Taylor data of the
//! transfer function, so there is no optimization and no simulation in the
//! synthesis path. A fixed-step RK4 simulator is included as an independent
//! oracle: it drives the plant with the synthesized input and measures how
//! closely the output tracks the desired signal once transients die out.
//!
//! ```
//! use steadytrack::{
//!     lti::TransferFunction,
//!     signal::{ModeSum, SignalTerm},
//!     sim::{verify_tracking, SimConfig},
//!     synth::synthesize_input,
//! };
//!
//! // W(s) = 1/(s^2 + 3s + 2), desired output 2 sin(3t)
//! let w = TransferFunction::new(vec![1.0], vec![2.0, 3.0, 1.0]).unwrap();
//! let desired = ModeSum::from_terms(&[SignalTerm::sinusoid(2.0, 3.0, 0.0)]);
//!
//! // closed-form input, in the same term language
//! let report = synthesize_input(&w, &desired).unwrap();
//! assert_eq!(report.input.to_terms().len(), 1);
//!
//! // independent check by direct integration
//! let cfg = SimConfig { t_final: 30.0, tol: 1e-4, ..SimConfig::default() };
//! let verdict = verify_tracking(&w.to_state_space(), &desired, &cfg).unwrap();
//! assert!(verdict.passed);
//! ```

// Index loops throughout mirror the degree indices of the formulas they
// implement; enumerate/skip chains would hide that correspondence.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod lti;
pub mod poly;
pub mod signal;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
pub use lti::{ModeDerivatives, Stability, StateSpace, TransferFunction};
pub use poly::Polynomial;
pub use signal::{CanonicalMode, ModeSum, SignalTerm, MAX_DEGREE};
pub use sim::{
    simulate, simulate_tracking, verify_tracking, SimConfig, Trace, TraceSample, TraceSummary,
    VerifyReport,
};
pub use synth::{
    steady_state_response, synthesize_input, synthesize_monomial_by_cancellation, ModeGain,
    SynthesisReport,
};
