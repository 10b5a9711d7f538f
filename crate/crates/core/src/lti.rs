//! Plant representations and analysis: transfer function and state space,
//! conversions in both directions, pointwise and local Taylor evaluation of
//! W(s), and a Routh-Hurwitz stability gate that needs no root finding.

use nalgebra::{DMatrix, DVector, RowDVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{series_div, Polynomial};

/// Stability verdict for a plant, decided on its denominator polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// All poles have strictly negative real part.
    Stable,
    /// The Routh array shows a zero pivot or zero row without any prior sign
    /// change: poles on the imaginary axis (or a degenerate symmetric root
    /// pattern), never strictly in the right half plane.
    Marginal,
    /// At least one pole with positive real part.
    Unstable,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stability::Stable => "Stable",
            Stability::Marginal => "Marginal",
            Stability::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

/// Proper or biproper rational transfer function with real coefficients and
/// monic denominator.
///
/// Coefficient vectors are ascending powers, matching [`Polynomial`]. The
/// denominator is normalized to be monic at construction so equality checks
/// and coefficient tolerances are well defined.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction {
    num: Polynomial,
    den: Polynomial,
}

impl TransferFunction {
    /// Build W(s) = num(s)/den(s) from real coefficients in ascending powers.
    ///
    /// Rejects a zero denominator and improper fractions
    /// (deg num > deg den); both forms fall outside the state-space model
    /// the rest of the crate assumes.
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        let num = Polynomial::from_real(&num);
        let den = Polynomial::from_real(&den);
        let den_deg = match den.degree() {
            Some(d) => d,
            None => return Err(Error::ZeroDenominator),
        };
        if let Some(num_deg) = num.degree() {
            if num_deg > den_deg {
                return Err(Error::ImproperTransferFunction {
                    num_degree: num_deg,
                    den_degree: den_deg,
                });
            }
        }
        let lead = den.coeff(den_deg);
        let inv = Complex64::new(1.0, 0.0) / lead;
        Ok(TransferFunction {
            num: num.scale(inv),
            den: den.scale(inv),
        })
    }

    /// Numerator polynomial (real coefficients, ascending powers).
    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    /// Monic denominator polynomial.
    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Plant order: degree of the denominator.
    pub fn order(&self) -> usize {
        self.den.degree().unwrap_or(0)
    }

    /// Evaluate W at a complex point.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let n = self.num.eval(s);
        let d = self.den.eval(s);
        if d.norm() < 1e-12 * n.norm().max(1.0) {
            return Err(Error::PoleAtEvaluationPoint { point: s });
        }
        Ok(n / d)
    }

    /// Local Taylor data of W about `lambda`: coefficients
    /// `W^(i)(lambda)/i!` for `i = 0..=order`.
    ///
    /// Both numerator and denominator are recentered at `lambda` and the
    /// truncated power series are divided; no symbolic differentiation.
    pub fn taylor_at(&self, lambda: Complex64, order: usize) -> Result<ModeDerivatives> {
        let n0 = self.num.eval(lambda);
        let d0 = self.den.eval(lambda);
        if d0.norm() < 1e-12 * n0.norm().max(1.0) {
            return Err(Error::PoleAtEvaluationPoint { point: lambda });
        }
        let num_local = self.num.taylor_shift(lambda, order);
        let den_local = self.den.taylor_shift(lambda, order);
        let coeffs = series_div(&num_local, &den_local, order)?;
        Ok(ModeDerivatives { lambda, coeffs })
    }

    /// Routh-Hurwitz verdict on the denominator.
    pub fn stability(&self) -> Stability {
        let desc: Vec<f64> = self.den.coeffs().iter().rev().map(|c| c.re).collect();
        routh_verdict(&desc)
    }

    /// Controllable canonical realization.
    ///
    /// Biproper plants split off the feedthrough D = lead(num)/lead(den)
    /// first; an order-zero plant becomes pure feedthrough.
    pub fn to_state_space(&self) -> StateSpace {
        let n = self.order();
        let d = self.num.coeff(n).re;
        if n == 0 {
            return StateSpace {
                a: DMatrix::zeros(0, 0),
                b: DVector::zeros(0),
                c: RowDVector::zeros(0),
                d,
            };
        }
        let strict = &self.num - &self.den.scale(Complex64::new(d, 0.0));
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n - 1 {
            a[(i, i + 1)] = 1.0;
        }
        for j in 0..n {
            a[(n - 1, j)] = -self.den.coeff(j).re;
        }
        let mut b = DVector::zeros(n);
        b[n - 1] = 1.0;
        let mut c = RowDVector::zeros(n);
        for j in 0..n {
            c[j] = strict.coeff(j).re;
        }
        StateSpace { a, b, c, d }
    }
}

/// Local Taylor data of W(s) about one mode point.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeDerivatives {
    /// Expansion point a + j omega.
    pub lambda: Complex64,
    /// `coeffs[i] = W^(i)(lambda) / i!`.
    pub coeffs: Vec<Complex64>,
}

impl ModeDerivatives {
    /// Highest derivative order held.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// W(lambda) itself.
    pub fn gain(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// The i-th derivative W^(i)(lambda), recovered from the Taylor
    /// coefficient by multiplying the factorial back in.
    pub fn derivative(&self, i: usize) -> Complex64 {
        let mut fact = 1.0;
        for k in 2..=i {
            fact *= k as f64;
        }
        self.coeffs[i] * fact
    }
}

/// SISO state-space plant: x' = Ax + Bu, y = Cx + Du.
///
/// Order zero (empty A) is allowed and means pure feedthrough y = Du.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    a: DMatrix<f64>,
    b: DVector<f64>,
    c: RowDVector<f64>,
    d: f64,
}

impl StateSpace {
    /// Build from matrices, checking that A is square and B, C match its
    /// dimension.
    pub fn new(a: DMatrix<f64>, b: DVector<f64>, c: RowDVector<f64>, d: f64) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "A must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "B has {} entries but the state dimension is {n}",
                b.len()
            )));
        }
        if c.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "C has {} entries but the state dimension is {n}",
                c.len()
            )));
        }
        Ok(StateSpace { a, b, c, d })
    }

    /// State dimension n.
    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn c(&self) -> &RowDVector<f64> {
        &self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Transfer function C(sI - A)^{-1}B + D via the Leverrier-Faddeev
    /// resolvent recurrence.
    ///
    /// The recurrence yields the characteristic polynomial of A (the monic
    /// denominator) and the resolvent numerator in one pass, with no
    /// eigendecomposition.
    pub fn to_transfer_function(&self) -> TransferFunction {
        let n = self.order();
        if n == 0 {
            return TransferFunction::new(vec![self.d], vec![1.0])
                .expect("constant plant is always proper");
        }
        let mut m = DMatrix::<f64>::identity(n, n);
        let mut den_desc = vec![0.0; n + 1];
        den_desc[0] = 1.0;
        let mut num_desc = vec![0.0; n];
        for k in 1..=n {
            num_desc[k - 1] = (&self.c * &m * &self.b)[(0, 0)];
            let am = &self.a * &m;
            let ck = -am.trace() / k as f64;
            den_desc[k] = ck;
            m = am;
            for i in 0..n {
                m[(i, i)] += ck;
            }
        }
        let den_asc: Vec<f64> = den_desc.into_iter().rev().collect();
        let mut num_asc: Vec<f64> = num_desc.into_iter().rev().collect();
        num_asc.resize(n + 1, 0.0);
        for i in 0..=n {
            num_asc[i] += self.d * den_asc[i];
        }
        TransferFunction::new(num_asc, den_asc).expect("characteristic polynomial is monic")
    }

    /// Routh-Hurwitz verdict on the characteristic polynomial of A.
    pub fn stability(&self) -> Stability {
        self.to_transfer_function().stability()
    }
}

/// Routh-Hurwitz test on a real polynomial given in descending powers with
/// positive leading coefficient.
///
/// Rows are generated by the cross-multiplication recurrence; a zero first
/// column pivot or an all-zero row stops the array. Sign changes in the
/// first column count right-half-plane roots, so a degenerate array with a
/// prior sign change is still Unstable, and without one it is classified
/// Marginal (no epsilon perturbation: that guesses on near-marginal data).
fn routh_verdict(desc: &[f64]) -> Stability {
    let n = desc.len() - 1;
    if n == 0 {
        return Stability::Stable;
    }
    let width = n / 2 + 1;
    let row_at = |offset: usize| -> Vec<f64> {
        (0..width)
            .map(|i| desc.get(2 * i + offset).copied().unwrap_or(0.0))
            .collect()
    };
    let mut prev = row_at(0);
    let mut curr = row_at(1);
    let mut scale: f64 = prev
        .iter()
        .chain(curr.iter())
        .fold(0.0, |m, v| m.max(v.abs()));
    let mut sign_changes = 0usize;
    let mut last_sign = 1.0;
    for _ in 1..=n {
        let pivot = curr[0];
        if pivot.abs() <= 1e-12 * scale {
            return if sign_changes == 0 {
                Stability::Marginal
            } else {
                Stability::Unstable
            };
        }
        if pivot.signum() != last_sign {
            sign_changes += 1;
            last_sign = pivot.signum();
        }
        let mut next = vec![0.0; width];
        for j in 0..width - 1 {
            let x1 = prev.get(j + 1).copied().unwrap_or(0.0);
            let y1 = curr.get(j + 1).copied().unwrap_or(0.0);
            next[j] = (pivot * x1 - prev[0] * y1) / pivot;
            scale = scale.max(next[j].abs());
        }
        prev = curr;
        curr = next;
    }
    if sign_changes == 0 {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tf(num: &[f64], den: &[f64]) -> TransferFunction {
        TransferFunction::new(num.to_vec(), den.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn construction_rejects_zero_denominator() {
        let err = TransferFunction::new(vec![1.0], vec![0.0, 0.0]).unwrap_err();
        assert_eq!(err, Error::ZeroDenominator);
    }

    #[test]
    fn construction_rejects_improper() {
        let err = TransferFunction::new(vec![0.0, 0.0, 1.0], vec![1.0, 1.0]).unwrap_err();
        assert_eq!(
            err,
            Error::ImproperTransferFunction {
                num_degree: 2,
                den_degree: 1
            }
        );
    }

    #[test]
    fn construction_normalizes_monic() {
        let w = tf(&[2.0], &[4.0, 2.0]);
        assert_eq!(w.den().coeff(1), c(1.0, 0.0));
        assert_eq!(w.den().coeff(0), c(2.0, 0.0));
        assert_eq!(w.num().coeff(0), c(1.0, 0.0));
    }

    #[test]
    fn eval_dc_gain() {
        let w = tf(&[1.0], &[1.0, 1.0]);
        assert_eq!(w.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn eval_frequency_response() {
        // W(j) = 1/(1+j) = (1-j)/2: gain 1/sqrt(2), phase -pi/4
        let w = tf(&[1.0], &[1.0, 1.0]);
        let v = w.eval(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.5, -0.5)).norm() < 1e-15);
        assert!((v.norm() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((v.arg() + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn eval_constant_plant() {
        let w = tf(&[3.0], &[1.0]);
        assert_eq!(w.eval(c(-7.0, 2.0)).unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn eval_at_pole_fails() {
        let w = tf(&[1.0], &[1.0, 1.0]);
        let err = w.eval(c(-1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::PoleAtEvaluationPoint { .. }));
    }

    #[test]
    fn taylor_geometric_at_origin() {
        let w = tf(&[1.0], &[1.0, 1.0]);
        let md = w.taylor_at(c(0.0, 0.0), 2).unwrap();
        assert_eq!(md.coeffs, vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn taylor_at_shifted_point() {
        // 1/(s+1) about s=1 is 1/(2+u)
        let w = tf(&[1.0], &[1.0, 1.0]);
        let md = w.taylor_at(c(1.0, 0.0), 2).unwrap();
        assert!((md.coeffs[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((md.coeffs[1] - c(-0.25, 0.0)).norm() < 1e-15);
        assert!((md.coeffs[2] - c(0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn taylor_order_zero_matches_eval() {
        let w = tf(&[1.0, 2.0], &[3.0, 1.0, 1.0]);
        let s = c(0.3, 1.7);
        let md = w.taylor_at(s, 0).unwrap();
        assert!((md.gain() - w.eval(s).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn taylor_at_pole_fails() {
        let w = tf(&[1.0], &[1.0, 1.0]);
        assert!(matches!(
            w.taylor_at(c(-1.0, 0.0), 3),
            Err(Error::PoleAtEvaluationPoint { .. })
        ));
    }

    #[test]
    fn derivative_recovers_factorial() {
        // W = 1/(s+1): W''(0) = 2
        let w = tf(&[1.0], &[1.0, 1.0]);
        let md = w.taylor_at(c(0.0, 0.0), 2).unwrap();
        assert!((md.derivative(1) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((md.derivative(2) - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn stability_verdicts() {
        assert_eq!(tf(&[1.0], &[1.0, 1.0]).stability(), Stability::Stable);
        assert_eq!(tf(&[1.0], &[-1.0, 1.0]).stability(), Stability::Unstable);
        assert_eq!(
            tf(&[1.0], &[1.0, 0.0, 1.0]).stability(),
            Stability::Marginal
        );
    }

    #[test]
    fn stability_higher_order() {
        // s^3 + 2s^2 + 3s + 1: all Routh pivots positive
        assert_eq!(
            tf(&[1.0], &[1.0, 3.0, 2.0, 1.0]).stability(),
            Stability::Stable
        );
        // (s+1)(s-2)(s+3) = s^3 + 2s^2 - 5s - 6
        assert_eq!(
            tf(&[1.0], &[-6.0, -5.0, 2.0, 1.0]).stability(),
            Stability::Unstable
        );
        // (s^2+1)(s-1): zero row after a sign change
        assert_eq!(
            tf(&[1.0], &[-1.0, 1.0, -1.0, 1.0]).stability(),
            Stability::Unstable
        );
        // (s^2+1)(s^2+2): zero row immediately, no sign change
        assert_eq!(
            tf(&[1.0], &[2.0, 0.0, 3.0, 0.0, 1.0]).stability(),
            Stability::Marginal
        );
    }

    #[test]
    fn ss_to_tf_scalar() {
        let ss = StateSpace::new(
            DMatrix::from_row_slice(1, 1, &[-1.0]),
            DVector::from_row_slice(&[1.0]),
            RowDVector::from_row_slice(&[1.0]),
            0.0,
        )
        .unwrap();
        let w = ss.to_transfer_function();
        assert_eq!(w, tf(&[1.0], &[1.0, 1.0]));
    }

    #[test]
    fn ss_to_tf_pure_feedthrough() {
        let ss = StateSpace::new(
            DMatrix::zeros(0, 0),
            DVector::zeros(0),
            RowDVector::zeros(0),
            3.0,
        )
        .unwrap();
        let w = ss.to_transfer_function();
        assert_eq!(w, tf(&[3.0], &[1.0]));
        assert_eq!(w.order(), 0);
    }

    #[test]
    fn ss_to_tf_two_pole_sum() {
        // 1/(s+1) + 1/(s+2) = (2s+3)/(s^2+3s+2)
        let ss = StateSpace::new(
            DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -2.0]),
            DVector::from_row_slice(&[1.0, 1.0]),
            RowDVector::from_row_slice(&[1.0, 1.0]),
            0.0,
        )
        .unwrap();
        let w = ss.to_transfer_function();
        let want = tf(&[3.0, 2.0], &[2.0, 3.0, 1.0]);
        for i in 0..3 {
            assert!((w.num().coeff(i) - want.num().coeff(i)).norm() < 1e-12);
            assert!((w.den().coeff(i) - want.den().coeff(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn tf_to_ss_first_order() {
        let ss = tf(&[1.0], &[1.0, 1.0]).to_state_space();
        assert_eq!(ss.a()[(0, 0)], -1.0);
        assert_eq!(ss.b()[0], 1.0);
        assert_eq!(ss.c()[0], 1.0);
        assert_eq!(ss.d(), 0.0);
    }

    #[test]
    fn tf_to_ss_constant() {
        let ss = tf(&[3.0], &[1.0]).to_state_space();
        assert_eq!(ss.order(), 0);
        assert_eq!(ss.d(), 3.0);
    }

    #[test]
    fn tf_to_ss_controllable_form() {
        let ss = tf(&[3.0, 2.0], &[2.0, 3.0, 1.0]).to_state_space();
        assert_eq!(
            ss.a(),
            &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -2.0, -3.0])
        );
        assert_eq!(ss.b(), &DVector::from_row_slice(&[0.0, 1.0]));
        assert_eq!(ss.c(), &RowDVector::from_row_slice(&[3.0, 2.0]));
        assert_eq!(ss.d(), 0.0);
    }

    #[test]
    fn tf_to_ss_biproper() {
        // (s+2)/(s+1): feedthrough 1, strict part 1/(s+1)
        let w = tf(&[2.0, 1.0], &[1.0, 1.0]);
        let ss = w.to_state_space();
        assert_eq!(ss.d(), 1.0);
        assert_eq!(ss.c()[0], 1.0);
        let back = ss.to_transfer_function();
        for i in 0..2 {
            assert!((back.num().coeff(i) - w.num().coeff(i)).norm() < 1e-12);
            assert!((back.den().coeff(i) - w.den().coeff(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn state_space_dimension_checks() {
        let err = StateSpace::new(
            DMatrix::zeros(2, 3),
            DVector::zeros(2),
            RowDVector::zeros(2),
            0.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
        let err = StateSpace::new(
            DMatrix::zeros(2, 2),
            DVector::zeros(1),
            RowDVector::zeros(2),
            0.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }
}
