//! Thin wrappers around rustfft for coefficient/sample conversions.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::symbol::CoefficientSequence;

/// Values `Σ c_k e^{ikθ_j}` at `θ_j = 2πj/n`. Coefficients are folded mod `n`,
/// so the result is exact sampling even when the support exceeds `n`.
pub(crate) fn synthesize(coeffs: &CoefficientSequence, n: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let modulus = n as i64;
    for (k, c) in coeffs.iter() {
        buf[k.rem_euclid(modulus) as usize] += c;
    }
    inverse_unnormalized(&mut buf);
    buf
}

/// In place `x_j ← Σ_k x_k e^{+2πijk/n}`.
pub(crate) fn inverse_unnormalized(buf: &mut [Complex64]) {
    if buf.len() <= 1 {
        return;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(buf.len()).process(buf);
}

/// Fourier coefficients `c_k = (1/n) Σ_j x_j e^{-2πijk/n}` indexed by `k mod n`.
pub(crate) fn analyze(samples: &[Complex64]) -> Vec<Complex64> {
    let mut buf = samples.to_vec();
    let n = buf.len();
    if n > 1 {
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(n).process(&mut buf);
    }
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// Linear convolution of `a` and `b` through a zero-padded power-of-two FFT.
pub(crate) fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let zero = Complex64::new(0.0, 0.0);
    let mut fa = a.to_vec();
    fa.resize(size, zero);
    let mut fb = b.to_vec();
    fb.resize(size, zero);

    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(size);
    forward.process(&mut fa);
    forward.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    planner.plan_fft_inverse(size).process(&mut fa);
    let scale = 1.0 / size as f64;
    fa.truncate(out_len);
    fa.iter_mut().for_each(|v| *v *= scale);
    fa
}
