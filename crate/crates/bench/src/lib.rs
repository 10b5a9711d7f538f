//! Shared benchmark fixtures: plants and signals sized like the problems
//! the library is built for, fixed so runs stay comparable over time.

use steadytrack::{ModeSum, SignalTerm, TransferFunction};

/// Two poles, no finite zeros: W(s) = 1/(s^2 + 3s + 2).
pub fn second_order_plant() -> TransferFunction {
    TransferFunction::new(vec![1.0], vec![2.0, 3.0, 1.0]).unwrap()
}

/// Order six with a spread of pole speeds and two finite zeros:
/// W(s) = (s^2 + 2s + 5) / ((s+0.3)(s+1)(s+2)(s+4)(s^2 + s + 1)).
pub fn sixth_order_plant() -> TransferFunction {
    let den = [
        &[0.3, 1.0][..],
        &[1.0, 1.0],
        &[2.0, 1.0],
        &[4.0, 1.0],
        &[1.0, 1.0, 1.0],
    ]
    .iter()
    .fold(vec![1.0], |acc, f| conv(&acc, f));
    TransferFunction::new(vec![5.0, 2.0, 1.0], den).unwrap()
}

/// Three modes mixing every supported shape: a cubic ramp, a growing
/// sinusoid with a quadratic envelope, and a plain fast sinusoid.
pub fn mixed_desired() -> ModeSum {
    ModeSum::from_terms(&[
        SignalTerm::monomial(0.5, 3).unwrap(),
        SignalTerm::new(2, 0.1, 1.0, 1.0, 0.3).unwrap(),
        SignalTerm::sinusoid(2.0, 4.0, -0.5),
    ])
}

fn conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
