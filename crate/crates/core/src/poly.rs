//! Dense univariate polynomials and truncated power series over complex
//! scalars.
//!
//! Coefficients are stored in ascending powers: `coeffs[i]` multiplies `s^i`.
//! This is the algebra substrate for transfer-function evaluation and for the
//! local Taylor data behind the steady-state maps; degrees stay small (plant
//! order and signal degree are both bounded well below 100), so a dense
//! representation is the right one.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense polynomial with complex coefficients, ascending powers.
///
/// The zero polynomial is stored as the empty list; `trim` removes
/// exactly-zero high coefficients so the highest stored coefficient of a
/// nonzero polynomial is always nonzero. No epsilon trimming is performed:
/// a tiny but nonzero leading coefficient changes the degree and is taken
/// literally.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Build from complex coefficients in ascending powers.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    /// Build from real coefficients in ascending powers.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Stored coefficients (highest one nonzero unless the polynomial is zero).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `s^i`; zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or(ZERO)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&ZERO) {
            self.coeffs.pop();
        }
    }

    /// Evaluate at `z` by Horner's scheme.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// First `order + 1` Taylor coefficients about `z0`: returns `a` with
    /// `p(z0 + u) = sum a[i] u^i`, i.e. `a[i] = p^(i)(z0) / i!`.
    ///
    /// Computed by repeated synthetic division (Ruffini-Horner), which is
    /// exact for `z0 = 0` and backward-stable for the small degrees used here.
    pub fn taylor_shift(&self, z0: Complex64, order: usize) -> Vec<Complex64> {
        let mut shifted = self.coeffs.clone();
        let len = shifted.len();
        if z0 != ZERO && len > 1 {
            for i in 0..len - 1 {
                for j in (i..len - 1).rev() {
                    let high = shifted[j + 1];
                    shifted[j] += z0 * high;
                }
            }
        }
        shifted.resize(order + 1, ZERO);
        shifted
    }

    /// Multiply every coefficient by `k`.
    pub fn scale(&self, k: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Truncated power-series quotient `num / den` up to `u^order`.
///
/// The result `q` satisfies the convolution identity
/// `sum_{j <= i} q[j] * den[i-j] = num[i]` for all `i <= order`.
/// Inputs are read as series coefficients (missing entries are zero).
pub fn series_div(num: &[Complex64], den: &[Complex64], order: usize) -> Result<Vec<Complex64>> {
    let d0 = den.first().copied().unwrap_or(ZERO);
    if d0 == ZERO {
        return Err(Error::ZeroLeadingDenominator);
    }
    let mut q = vec![ZERO; order + 1];
    for i in 0..=order {
        let mut acc = num.get(i).copied().unwrap_or(ZERO);
        for j in 1..=i.min(den.len().saturating_sub(1)) {
            acc -= den[j] * q[i - j];
        }
        q[i] = acc / d0;
    }
    Ok(q)
}
