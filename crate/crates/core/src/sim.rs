//! Brute-force verification by direct numerical integration.
//!
//! The synthesized inputs are exact closed forms, so the honest way to check
//! them is to integrate x' = Ax + Bu, y = Cx + Du and watch the output
//! settle onto the desired signal. Classical fixed-step RK4 is used on
//! purpose: the inputs are smooth, the plants are small, and a deterministic
//! oracle matters more than an adaptive one. The initial state is zero, so
//! the run starts with a transient; the plant is stable, the transient
//! decays, and tracking error is measured only over the tail window.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lti::StateSpace;
use crate::signal::ModeSum;
use crate::synth::{synthesize_input, SynthesisReport};

/// Integration and verification settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Simulation horizon.
    pub t_final: f64,
    /// Fixed integration step.
    pub dt: f64,
    /// Fraction of the horizon treated as transient and excluded from the
    /// error measurement; the tail window is [tail_fraction * t_final,
    /// t_final].
    pub tail_fraction: f64,
    /// Pass threshold on the maximum tail relative error.
    pub tol: f64,
    /// Initial state; zero when omitted.
    pub x0: Option<DVector<f64>>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            t_final: 50.0,
            dt: 1e-3,
            tail_fraction: 0.5,
            tol: 1e-3,
            x0: None,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite()
            && self.t_final.is_finite()
            && 0.0 < self.dt
            && self.dt < self.t_final)
        {
            return Err(Error::InvalidSimConfig(format!(
                "need 0 < dt < t_final, got dt = {}, t_final = {}",
                self.dt, self.t_final
            )));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction < 1.0) {
            return Err(Error::InvalidSimConfig(format!(
                "tail_fraction must lie in (0, 1), got {}",
                self.tail_fraction
            )));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidSimConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// One sampled instant of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub t: f64,
    pub u: f64,
    pub y: f64,
    pub y_desired: f64,
    pub abs_err: f64,
}

/// Uniformly sampled time series of a run; floor(t_final/dt) + 1 samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub samples: Vec<TraceSample>,
}

/// Min, max and final absolute error over a whole trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSummary {
    pub min_abs_err: f64,
    pub max_abs_err: f64,
    pub final_abs_err: f64,
}

impl TraceSummary {
    fn from_trace(trace: &Trace) -> Self {
        let mut min = f64::INFINITY;
        let mut max = 0.0f64;
        for s in &trace.samples {
            min = min.min(s.abs_err);
            max = max.max(s.abs_err);
        }
        TraceSummary {
            min_abs_err: min,
            max_abs_err: max,
            final_abs_err: trace.samples.last().map_or(0.0, |s| s.abs_err),
        }
    }
}

/// Outcome of an end-to-end synthesis check.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// max over the tail window of |y - y_d| / max(1, |y_d|).
    pub max_tail_rel_err: f64,
    /// Whether the tail error stayed within `cfg.tol`.
    pub passed: bool,
    /// Start of the tail window.
    pub transient_end: f64,
    pub summary: TraceSummary,
    /// The synthesis that produced the simulated input.
    pub synthesis: SynthesisReport,
    pub trace: Trace,
}

fn infinity_norm(a: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.nrows() {
        let row_sum: f64 = (0..a.ncols()).map(|j| a[(i, j)].abs()).sum();
        worst = worst.max(row_sum);
    }
    worst
}

fn state_derivative(
    out: &mut DVector<f64>,
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    x: &DVector<f64>,
    u: f64,
) {
    out.gemv(1.0, a, x, 0.0);
    out.axpy(u, b, 1.0);
}

fn run(
    ss: &StateSpace,
    input: &ModeSum,
    desired: Option<&ModeSum>,
    cfg: &SimConfig,
) -> Result<Trace> {
    cfg.validate()?;
    let n = ss.order();
    let (a, b, c, d) = (ss.a(), ss.b(), ss.c(), ss.d());
    let stiffness = cfg.dt * infinity_norm(a);
    if stiffness > 0.5 {
        return Err(Error::StepSizeTooLarge(stiffness));
    }
    let mut x = match &cfg.x0 {
        Some(v) => {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "x0 has {} entries but the state dimension is {n}",
                    v.len()
                )));
            }
            v.clone()
        }
        None => DVector::zeros(n),
    };
    let dt = cfg.dt;
    let steps = (cfg.t_final / dt).floor() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut k1 = DVector::zeros(n);
    let mut k2 = DVector::zeros(n);
    let mut k3 = DVector::zeros(n);
    let mut k4 = DVector::zeros(n);
    let mut xs = DVector::zeros(n);
    for i in 0..=steps {
        let t = i as f64 * dt;
        let u = input.eval(t);
        let y = c.iter().zip(x.iter()).map(|(ci, xi)| ci * xi).sum::<f64>() + d * u;
        if !y.is_finite() {
            return Err(Error::NonFiniteState(t));
        }
        let y_desired = desired.map_or(0.0, |sig| sig.eval(t));
        samples.push(TraceSample {
            t,
            u,
            y,
            y_desired,
            abs_err: (y - y_desired).abs(),
        });
        if i == steps {
            break;
        }
        let u_mid = input.eval(t + 0.5 * dt);
        let u_end = input.eval(t + dt);
        state_derivative(&mut k1, a, b, &x, u);
        xs.copy_from(&x);
        xs.axpy(0.5 * dt, &k1, 1.0);
        state_derivative(&mut k2, a, b, &xs, u_mid);
        xs.copy_from(&x);
        xs.axpy(0.5 * dt, &k2, 1.0);
        state_derivative(&mut k3, a, b, &xs, u_mid);
        xs.copy_from(&x);
        xs.axpy(dt, &k3, 1.0);
        state_derivative(&mut k4, a, b, &xs, u_end);
        x.axpy(dt / 6.0, &k1, 1.0);
        x.axpy(dt / 3.0, &k2, 1.0);
        x.axpy(dt / 3.0, &k3, 1.0);
        x.axpy(dt / 6.0, &k4, 1.0);
    }
    Ok(Trace { samples })
}

/// Integrate the plant driven by `input` from the configured initial state.
///
/// The desired-output column of the trace is zero here (nothing is being
/// tracked), so `abs_err` is just |y|.
pub fn simulate(ss: &StateSpace, input: &ModeSum, cfg: &SimConfig) -> Result<Trace> {
    run(ss, input, None, cfg)
}

/// Like [`simulate`], but fills the desired-output column and the pointwise
/// error |y - y_desired|.
pub fn simulate_tracking(
    ss: &StateSpace,
    input: &ModeSum,
    desired: &ModeSum,
    cfg: &SimConfig,
) -> Result<Trace> {
    run(ss, input, Some(desired), cfg)
}

/// End-to-end check: synthesize the input for `desired`, simulate it, and
/// measure the pointwise relative error e(t) = |y - y_d| / max(1, |y_d|)
/// over the tail window.
///
/// The relative floor of 1 keeps both growing exponentials and
/// zero-crossing sinusoids measured sensibly. Synthesis runs on the
/// transfer function derived from `ss` while the integration runs on `ss`
/// itself, so the two routes stay independent.
pub fn verify_tracking(
    ss: &StateSpace,
    desired: &ModeSum,
    cfg: &SimConfig,
) -> Result<VerifyReport> {
    cfg.validate()?;
    let tf = ss.to_transfer_function();
    let synthesis = synthesize_input(&tf, desired)?;
    let trace = simulate_tracking(ss, &synthesis.input, desired, cfg)?;
    let transient_end = cfg.tail_fraction * cfg.t_final;
    let mut max_tail_rel_err = 0.0f64;
    for s in trace.samples.iter().filter(|s| s.t >= transient_end) {
        max_tail_rel_err = max_tail_rel_err.max(s.abs_err / s.y_desired.abs().max(1.0));
    }
    Ok(VerifyReport {
        max_tail_rel_err,
        passed: max_tail_rel_err <= cfg.tol,
        transient_end,
        summary: TraceSummary::from_trace(&trace),
        synthesis,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::TransferFunction;
    use crate::signal::SignalTerm;
    use std::f64::consts::FRAC_PI_4;

    fn first_order_ss() -> StateSpace {
        TransferFunction::new(vec![1.0], vec![1.0, 1.0])
            .unwrap()
            .to_state_space()
    }

    fn cfg(t_final: f64, dt: f64) -> SimConfig {
        SimConfig {
            t_final,
            dt,
            ..SimConfig::default()
        }
    }

    #[test]
    fn zero_input_zero_state_is_identically_zero() {
        let trace = simulate(&first_order_ss(), &ModeSum::default(), &cfg(1.0, 0.01)).unwrap();
        assert!(trace.samples.iter().all(|s| s.y == 0.0 && s.u == 0.0));
    }

    #[test]
    fn trace_length_matches_floor_rule() {
        let trace = simulate(&first_order_ss(), &ModeSum::default(), &cfg(1.0, 0.1)).unwrap();
        assert_eq!(trace.samples.len(), 11);
        let trace = simulate(&first_order_ss(), &ModeSum::default(), &cfg(0.5, 0.3)).unwrap();
        assert_eq!(trace.samples.len(), 2);
        assert!(trace.samples.windows(2).all(|w| w[0].t < w[1].t));
    }

    #[test]
    fn step_response_first_order() {
        let input = ModeSum::from_terms(&[SignalTerm::constant(1.0)]);
        let trace = simulate(&first_order_ss(), &input, &cfg(5.0, 1e-3)).unwrap();
        let last = trace.samples.last().unwrap();
        assert!((last.t - 5.0).abs() < 1e-12);
        assert!((last.y - (1.0 - (-5.0f64).exp())).abs() < 1e-4);
    }

    #[test]
    fn sine_input_settles_on_shifted_sine() {
        let input = ModeSum::from_terms(&[SignalTerm::sinusoid(1.0, 1.0, 0.0)]);
        let trace = simulate(&first_order_ss(), &input, &cfg(20.0, 1e-3)).unwrap();
        for s in trace.samples.iter().filter(|s| s.t >= 10.0) {
            let expected = 0.5f64.sqrt() * (s.t - FRAC_PI_4).sin();
            assert!((s.y - expected).abs() < 1e-4, "t = {}", s.t);
        }
    }

    #[test]
    fn pure_feedthrough_is_exact() {
        let ss = TransferFunction::new(vec![2.0], vec![1.0])
            .unwrap()
            .to_state_space();
        let input = ModeSum::from_terms(&[SignalTerm::sinusoid(1.0, 1.0, 0.0)]);
        let trace = simulate(&ss, &input, &cfg(3.0, 0.01)).unwrap();
        for s in &trace.samples {
            assert_eq!(s.y, 2.0 * s.t.sin());
        }
    }

    #[test]
    fn halving_dt_cuts_error_sixteen_fold() {
        let input = ModeSum::from_terms(&[SignalTerm::constant(1.0)]);
        let exact = 1.0 - (-1.0f64).exp();
        let mut errs = Vec::new();
        for dt in [0.1, 0.05] {
            let trace = simulate(&first_order_ss(), &input, &cfg(1.0, dt)).unwrap();
            errs.push((trace.samples.last().unwrap().y - exact).abs());
        }
        let ratio = errs[0] / errs[1];
        assert!((12.0..=20.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn determinism_bit_identical() {
        let input = ModeSum::from_terms(&[
            SignalTerm::sinusoid(1.0, 2.0, 0.3),
            SignalTerm::monomial(0.5, 2).unwrap(),
        ]);
        let a = simulate(&first_order_ss(), &input, &cfg(5.0, 1e-3)).unwrap();
        let b = simulate(&first_order_ss(), &input, &cfg(5.0, 1e-3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_oversized_step() {
        let err = simulate(&first_order_ss(), &ModeSum::default(), &cfg(10.0, 1.0)).unwrap_err();
        assert_eq!(err, Error::StepSizeTooLarge(1.0));
    }

    #[test]
    fn rejects_bad_config() {
        let ss = first_order_ss();
        assert!(matches!(
            simulate(&ss, &ModeSum::default(), &cfg(1.0, 0.0)),
            Err(Error::InvalidSimConfig(_))
        ));
        assert!(matches!(
            simulate(&ss, &ModeSum::default(), &cfg(1.0, 2.0)),
            Err(Error::InvalidSimConfig(_))
        ));
        let bad_tail = SimConfig {
            tail_fraction: 1.0,
            ..SimConfig::default()
        };
        assert!(matches!(
            simulate(&ss, &ModeSum::default(), &bad_tail),
            Err(Error::InvalidSimConfig(_))
        ));
        let bad_tol = SimConfig {
            tol: 0.0,
            ..SimConfig::default()
        };
        assert!(matches!(
            verify_tracking(&ss, &ModeSum::default(), &bad_tol),
            Err(Error::InvalidSimConfig(_))
        ));
    }

    #[test]
    fn rejects_mismatched_initial_state() {
        let bad = SimConfig {
            x0: Some(DVector::from_row_slice(&[1.0, 2.0])),
            ..cfg(1.0, 0.01)
        };
        assert!(matches!(
            simulate(&first_order_ss(), &ModeSum::default(), &bad),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn divergence_reports_non_finite_state() {
        // x' = 10x from x0 = 1 overflows well before t = 100
        let ss = StateSpace::new(
            DMatrix::from_row_slice(1, 1, &[10.0]),
            DVector::from_row_slice(&[0.0]),
            nalgebra::RowDVector::from_row_slice(&[1.0]),
            0.0,
        )
        .unwrap();
        let diverging = SimConfig {
            x0: Some(DVector::from_row_slice(&[1.0])),
            ..cfg(100.0, 0.04)
        };
        assert!(matches!(
            simulate(&ss, &ModeSum::default(), &diverging),
            Err(Error::NonFiniteState(_))
        ));
    }

    #[test]
    fn verify_sine_tracking_passes() {
        let desired = ModeSum::from_terms(&[SignalTerm::sinusoid(1.0, 1.0, 0.0)]);
        let report = verify_tracking(&first_order_ss(), &desired, &SimConfig::default()).unwrap();
        assert!(report.passed);
        assert!(report.max_tail_rel_err < 1e-4);
        assert_eq!(report.transient_end, 25.0);
    }

    #[test]
    fn verify_growing_exponential_passes() {
        let desired = ModeSum::from_terms(&[SignalTerm::exponential(1.0, 0.2)]);
        let cfg = SimConfig {
            t_final: 30.0,
            ..SimConfig::default()
        };
        let report = verify_tracking(&first_order_ss(), &desired, &cfg).unwrap();
        assert!(report.passed);
        assert!(report.max_tail_rel_err < 1e-4);
    }

    #[test]
    fn verify_gates_on_stability() {
        let ss = TransferFunction::new(vec![1.0], vec![-1.0, 1.0])
            .unwrap()
            .to_state_space();
        let desired = ModeSum::from_terms(&[SignalTerm::constant(1.0)]);
        assert!(matches!(
            verify_tracking(&ss, &desired, &SimConfig::default()),
            Err(Error::NotAsymptoticallyStable { .. })
        ));
    }

    #[test]
    fn verify_propagates_transmission_zero() {
        let ss = TransferFunction::new(vec![0.0, 1.0], vec![1.0, 1.0])
            .unwrap()
            .to_state_space();
        let desired = ModeSum::from_terms(&[SignalTerm::constant(1.0)]);
        assert!(matches!(
            verify_tracking(&ss, &desired, &SimConfig::default()),
            Err(Error::TransmissionZeroAtMode { .. })
        ));
    }

    #[test]
    fn tracking_trace_reports_error_column() {
        let desired = ModeSum::from_terms(&[SignalTerm::sinusoid(1.0, 1.0, 0.0)]);
        let input = ModeSum::from_terms(&[SignalTerm::sinusoid(2.0f64.sqrt(), 1.0, FRAC_PI_4)]);
        let trace =
            simulate_tracking(&first_order_ss(), &input, &desired, &cfg(20.0, 1e-3)).unwrap();
        let late: Vec<_> = trace.samples.iter().filter(|s| s.t >= 15.0).collect();
        assert!(!late.is_empty());
        for s in late {
            assert!((s.abs_err - (s.y - s.y_desired).abs()).abs() < 1e-15);
            assert!(s.abs_err < 1e-4);
        }
    }
}
