//! Hardy-space operators realized on Fourier coefficients.
//!
//! `P` keeps the nonnegative frequencies, `Q = I - P` the negative ones and
//! the Cauchy singular integral acts as `S = 2P - I`. Toeplitz operators
//! `T_a f = P(af)` are available both as dense finite sections and as a
//! convolution acting on analytic polynomials.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fft;
use crate::symbol::{CoefficientSequence, PiecewiseSymbol};

/// Minimum distance between a winding query point and the curve.
pub const WINDING_DISTANCE_TOLERANCE: f64 = 1e-8;

/// Upper bound on `r^{k_cut}` accepted by [`poisson_extension`].
pub const POISSON_TAIL_BOUND: f64 = 1e-14;

/// Below this many multiply-adds [`apply_toeplitz`] convolves directly.
const DIRECT_CONVOLUTION_LIMIT: usize = 1 << 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Riesz projection: zeroes every coefficient with `k < 0`.
pub fn riesz_project(c: &CoefficientSequence) -> CoefficientSequence {
    map_by_index(c, |k, v| if k < 0 { ZERO } else { v })
}

/// Complementary projection `Q = I - P`: keeps `k < 0` only.
pub fn complementary_project(c: &CoefficientSequence) -> CoefficientSequence {
    map_by_index(c, |k, v| if k < 0 { v } else { ZERO })
}

/// Cauchy singular integral `S = 2P - I`: negates the `k < 0` coefficients.
pub fn cauchy_singular(c: &CoefficientSequence) -> CoefficientSequence {
    map_by_index(c, |k, v| if k < 0 { -v } else { v })
}

fn map_by_index(
    c: &CoefficientSequence,
    f: impl Fn(i64, Complex64) -> Complex64,
) -> CoefficientSequence {
    CoefficientSequence::new(c.k_min(), c.iter().map(|(k, v)| f(k, v)).collect())
}

/// Dense `n × n` truncation of a Toeplitz matrix, `entry(j, k) = a_{j-k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzSection {
    entries: DMatrix<Complex64>,
}

impl ToeplitzSection {
    /// Builds the section from coefficients covering `[-(n-1), n-1]`.
    pub fn from_coefficients(a: &CoefficientSequence, n: usize) -> Result<Self> {
        Self::from_coefficients_with(a, n, Execution::default())
    }

    pub fn from_coefficients_with(
        a: &CoefficientSequence,
        n: usize,
        exec: Execution,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::Size { size: n, min: 1 });
        }
        // Column k holds a_{j-k}, j = 0..n; DMatrix is column-major.
        let columns = exec.map_range(0..n, |k| {
            (0..n)
                .map(|j| a.get(j as i64 - k as i64))
                .collect::<Vec<_>>()
        });
        let data: Vec<Complex64> = columns.into_iter().flatten().collect();
        Ok(Self {
            entries: DMatrix::from_vec(n, n, data),
        })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j, k)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_column_slice(x);
        (&self.entries * v).iter().copied().collect()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.n();
        (0..n).all(|j| (0..n).all(|k| (self.entry(j, k) - self.entry(k, j).conj()).norm() <= tol))
    }
}

/// The `n × n` finite section of `T_a`.
pub fn toeplitz_section(symbol: &PiecewiseSymbol, n: usize) -> Result<ToeplitzSection> {
    toeplitz_section_with(symbol, n, Execution::default())
}

pub fn toeplitz_section_with(
    symbol: &PiecewiseSymbol,
    n: usize,
    exec: Execution,
) -> Result<ToeplitzSection> {
    if n < 1 {
        return Err(Error::Size { size: n, min: 1 });
    }
    let reach = n as i64 - 1;
    let a = symbol.fourier_coefficients_with(-reach, reach, exec);
    ToeplitzSection::from_coefficients_with(&a, n, exec)
}

/// Coefficients `0..=out_degree` of `P(a f)` for an analytic polynomial `f`.
pub fn apply_toeplitz(
    symbol: &PiecewiseSymbol,
    f: &CoefficientSequence,
    out_degree: usize,
) -> Result<CoefficientSequence> {
    apply_toeplitz_with(symbol, f, out_degree, Execution::default())
}

pub fn apply_toeplitz_with(
    symbol: &PiecewiseSymbol,
    f: &CoefficientSequence,
    out_degree: usize,
    exec: Execution,
) -> Result<CoefficientSequence> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    let out = out_degree as i64;
    let Some((lo, hi)) = f.support() else {
        return Ok(CoefficientSequence::new(0, vec![ZERO; out_degree + 1]));
    };
    // (T_a f)_k = Σ_m a_{k-m} f_m needs a_j for j ∈ [-hi, out - lo].
    let a = symbol.fourier_coefficients_with(-hi, out - lo, exec);
    let fs: Vec<Complex64> = (lo..=hi).map(|m| f.get(m)).collect();

    let work = (out_degree + 1).saturating_mul(fs.len());
    let coeffs = if work <= DIRECT_CONVOLUTION_LIMIT {
        (0..=out)
            .map(|k| (lo..=hi).map(|m| a.get(k - m) * f.get(m)).sum())
            .collect()
    } else {
        // conv[i] pairs a_{-hi + i1} with f_{lo + i2}, i = i1 + i2, so the
        // output frequency is k = i - hi + lo.
        let conv = fft::convolve(a.coeffs(), &fs);
        (0..=out)
            .map(|k| {
                let i = k + hi - lo;
                conv.get(i as usize).copied().unwrap_or(ZERO)
            })
            .collect()
    };
    Ok(CoefficientSequence::new(0, coeffs))
}

/// `‖f‖_{H^p}` of an analytic polynomial.
///
/// For `p = 2` this is Parseval's sum; otherwise a uniform trapezoid rule on
/// `grid_size` points, which must be at least `4 (deg f + 1)`.
pub fn hardy_norm(f: &CoefficientSequence, p: f64, grid_size: usize) -> Result<f64> {
    check_norm_arguments(f, p, grid_size)?;
    if p == 2.0 {
        return Ok(f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt());
    }
    Ok(lp_mean(&fft::synthesize(f, grid_size), p))
}

/// [`hardy_norm`] by quadrature for every `p`, including `p = 2`.
pub fn hardy_norm_by_quadrature(f: &CoefficientSequence, p: f64, grid_size: usize) -> Result<f64> {
    check_norm_arguments(f, p, grid_size)?;
    Ok(lp_mean(&fft::synthesize(f, grid_size), p))
}

fn check_norm_arguments(f: &CoefficientSequence, p: f64, grid_size: usize) -> Result<()> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    let degree = f.support().map(|(_, hi)| hi).unwrap_or(0) as usize;
    let required = 4 * (degree + 1);
    if grid_size < required {
        return Err(Error::GridTooCoarse {
            grid: grid_size,
            required,
        });
    }
    Ok(())
}

fn lp_mean(values: &[Complex64], p: f64) -> f64 {
    let n = values.len() as f64;
    if p == 1.0 {
        values.iter().map(|v| v.norm()).sum::<f64>() / n
    } else {
        (values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / n).powf(1.0 / p)
    }
}

/// Smallest `k_cut` with `r^{k_cut}` below [`POISSON_TAIL_BOUND`].
pub fn poisson_cutoff(r: f64) -> usize {
    if r <= 0.0 {
        return 0;
    }
    let mut k = (POISSON_TAIL_BOUND.ln() / r.ln()).floor().max(0.0) as usize;
    while r.powi(k as i32) >= POISSON_TAIL_BOUND {
        k += 1;
    }
    k
}

/// Harmonic extension `Σ_{|k| ≤ k_cut} a_k r^{|k|} e^{ikθ}` of the symbol.
pub fn poisson_extension(
    symbol: &PiecewiseSymbol,
    r: f64,
    theta: f64,
    k_cut: usize,
) -> Result<Complex64> {
    check_poisson(r, k_cut)?;
    let kc = k_cut as i64;
    let a = symbol.fourier_coefficients(-kc, kc);
    Ok(a.iter()
        .map(|(k, c)| c * r.powi(k.unsigned_abs() as i32) * Complex64::cis(k as f64 * theta))
        .sum())
}

fn check_poisson(r: f64, k_cut: usize) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidRadius(r));
    }
    let bound = if r == 0.0 { 0.0 } else { r.powi(k_cut as i32) };
    if bound >= POISSON_TAIL_BOUND {
        return Err(Error::Truncation { k_cut, bound });
    }
    Ok(())
}

/// Harmonic extension at radius `r` on the uniform grid `θ_j = 2πj/grid`,
/// from coefficients spanning at least `[-poisson_cutoff(r), poisson_cutoff(r)]`.
pub(crate) fn poisson_on_circle(
    a: &CoefficientSequence,
    r: f64,
    grid: usize,
) -> Result<Vec<Complex64>> {
    let k_cut = a.k_max().min(-a.k_min()).max(0) as usize;
    check_poisson(r, k_cut)?;
    let kc = k_cut as i64;
    let damped = CoefficientSequence::new(
        -kc,
        (-kc..=kc)
            .map(|k| a.get(k) * r.powi(k.unsigned_abs() as i32))
            .collect(),
    );
    Ok(fft::synthesize(&damped, grid))
}

/// Ordered complex samples of a curve; a closed curve returns to its first
/// sample without repeating it.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve {
    pub points: Vec<Complex64>,
    pub closed: bool,
}

impl SampledCurve {
    pub fn open(points: Vec<Complex64>) -> Self {
        Self {
            points,
            closed: false,
        }
    }

    pub fn closed(points: Vec<Complex64>) -> Self {
        Self {
            points,
            closed: true,
        }
    }

    /// Closed curve `θ ↦ f(θ)` sampled at `n` uniform angles.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self::closed((0..n).map(|j| f(TAU * j as f64 / n as f64)).collect())
    }
}

/// Winding number of a closed sampled curve around `w`.
///
/// Sums principal-branch increments of `arg(z - w)` over consecutive samples,
/// including the closing step. Any increment of magnitude `π` or more makes
/// the sampling ambiguous and is rejected.
pub fn winding_number(curve: &SampledCurve, w: Complex64) -> Result<i64> {
    if !curve.closed {
        return Err(Error::OpenCurve);
    }
    if curve.points.is_empty() {
        return Err(Error::Empty);
    }
    let distance = curve
        .points
        .iter()
        .map(|z| (z - w).norm())
        .fold(f64::INFINITY, f64::min);
    if distance <= WINDING_DISTANCE_TOLERANCE {
        return Err(Error::TooClose { distance });
    }
    let n = curve.points.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = curve.points[i] - w;
        let b = curve.points[(i + 1) % n] - w;
        let turn = (b / a).arg();
        if turn.abs() >= PI {
            return Err(Error::UnderResolved { turn });
        }
        total += turn;
    }
    Ok((total / TAU).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> CoefficientSequence {
        CoefficientSequence::from_pairs(&[(-1, c(5.0, 0.0)), (0, c(1.0, 0.0)), (2, c(3.0, 0.0))])
    }

    fn identity() -> PiecewiseSymbol {
        PiecewiseSymbol::trig_polynomial(CoefficientSequence::monomial(1))
    }

    #[test]
    fn projection_examples() {
        let s = sample();
        let p = riesz_project(&s);
        assert_eq!(
            p,
            CoefficientSequence::from_pairs(&[(0, c(1.0, 0.0)), (2, c(3.0, 0.0))])
        );
        assert_eq!(
            complementary_project(&s),
            CoefficientSequence::from_pairs(&[(-1, c(5.0, 0.0))])
        );
        let analytic = CoefficientSequence::from_pairs(&[(0, c(1.0, 1.0)), (3, c(2.0, 0.0))]);
        assert_eq!(riesz_project(&analytic), analytic);
        assert_eq!(
            complementary_project(&analytic),
            CoefficientSequence::zero()
        );
        assert_eq!(cauchy_singular(&analytic), analytic);
        let two = CoefficientSequence::from_pairs(&[(-1, c(5.0, 0.0)), (0, c(1.0, 0.0))]);
        assert_eq!(
            cauchy_singular(&two),
            CoefficientSequence::from_pairs(&[(-1, c(-5.0, 0.0)), (0, c(1.0, 0.0))])
        );
    }

    #[test]
    fn section_examples() {
        let t = toeplitz_section(&identity(), 3).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let expected = if j == k + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert!((t.entry(j, k) - expected).norm() < 1e-15);
            }
        }
        let id = toeplitz_section(&PiecewiseSymbol::constant(c(1.0, 0.0)), 5).unwrap();
        assert_eq!(id.into_matrix(), DMatrix::identity(5, 5));
        assert!(matches!(
            toeplitz_section(&identity(), 0),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn sign_section_pattern() {
        let t = toeplitz_section(&PiecewiseSymbol::sign(), 2).unwrap();
        let a1 = c(2.0, 0.0) / c(0.0, PI);
        assert!(t.entry(0, 0).norm() < 1e-15 && t.entry(1, 1).norm() < 1e-15);
        assert!((t.entry(1, 0) - a1).norm() < 1e-15);
        assert!((t.entry(0, 1) + a1).norm() < 1e-15);
        assert!(t.is_hermitian(1e-15));
    }

    #[test]
    fn apply_examples() {
        let f = CoefficientSequence::from_pairs(&[
            (0, c(1.0, 0.0)),
            (1, c(0.5, -0.5)),
            (4, c(0.0, 2.0)),
        ]);
        let one = PiecewiseSymbol::constant(c(1.0, 0.0));
        assert!(apply_toeplitz(&one, &f, 6).unwrap().max_abs_diff(&f) < 1e-15);
        let z = apply_toeplitz(&identity(), &CoefficientSequence::monomial(0), 3).unwrap();
        assert!(z.max_abs_diff(&CoefficientSequence::monomial(1)) < 1e-15);
        assert_eq!(apply_toeplitz(&one, &sample(), 3), Err(Error::NotAnalytic));
    }

    #[test]
    fn apply_sign_to_one_plus_z_matches_dense_convolution() {
        let sgn = PiecewiseSymbol::sign();
        let f = CoefficientSequence::new(0, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let out = apply_toeplitz(&sgn, &f, 4).unwrap();
        // Oracle: full product coefficients a_k + a_{k-1} from the closed form.
        let a = |k: i64| {
            if k % 2 != 0 {
                c(2.0, 0.0) / c(0.0, PI * k as f64)
            } else {
                c(0.0, 0.0)
            }
        };
        for k in 0..=4 {
            assert!((out.get(k) - (a(k) + a(k - 1))).norm() < 1e-15);
        }
        assert_eq!(out.k_min(), 0);
        assert_eq!(out.k_max(), 4);
    }

    #[test]
    fn fft_and_direct_paths_agree() {
        let sgn = PiecewiseSymbol::sign();
        let f = CoefficientSequence::new(0, (0..300).map(|k| c((k as f64).cos(), 0.1)).collect());
        let fast = apply_toeplitz(&sgn, &f, 400).unwrap();
        const { assert!(401 * 300 > DIRECT_CONVOLUTION_LIMIT) };
        let section = toeplitz_section(&sgn, 401).unwrap();
        let mut x = f.restricted(0, 400).coeffs().to_vec();
        x.resize(401, c(0.0, 0.0));
        let dense = section.mul_vec(&x);
        for (k, v) in dense.iter().enumerate() {
            assert!((fast.get(k as i64) - v).norm() < 1e-12);
        }
    }

    #[test]
    fn norm_examples() {
        for n in [0, 1, 7] {
            let z = CoefficientSequence::monomial(n);
            for p in [1.0, 1.5, 2.0, 3.0] {
                let v = hardy_norm(&z, p, 64).unwrap();
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
        let f = CoefficientSequence::new(0, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            hardy_norm(&f, 1.0, 7),
            Err(Error::GridTooCoarse { .. })
        ));
        assert!(matches!(
            hardy_norm(&f, 0.5, 64),
            Err(Error::InvalidExponent(_))
        ));
        assert_eq!(hardy_norm(&sample(), 1.0, 64), Err(Error::NotAnalytic));
    }

    #[test]
    fn norm_of_one_plus_z_converges_to_four_over_pi() {
        // Oracle: refine the trapezoid rule for (1/2π)∫ 2|cos(θ/2)| dθ.
        let exact_integrand = |th: f64| 2.0 * (th / 2.0).cos().abs();
        let mut prev = f64::NAN;
        for m in [1 << 10, 1 << 12, 1 << 14] {
            let q: f64 = (0..m)
                .map(|j| exact_integrand(TAU * j as f64 / m as f64))
                .sum::<f64>()
                / m as f64;
            if prev.is_finite() {
                assert!((q - prev).abs() < 1e-5);
            }
            prev = q;
        }
        assert!((prev - 4.0 / PI).abs() < 1e-6);
        let f = CoefficientSequence::new(0, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let v = hardy_norm(&f, 1.0, 1 << 14).unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-6);
        assert!((v - prev).abs() < 1e-9);
    }

    #[test]
    fn parseval_matches_quadrature() {
        let f = CoefficientSequence::new(
            0,
            (0..20)
                .map(|k| c(1.0 / (k as f64 + 1.0), (k as f64).sin()))
                .collect(),
        );
        let exact = hardy_norm(&f, 2.0, 80).unwrap();
        let quad = hardy_norm_by_quadrature(&f, 2.0, 80).unwrap();
        assert!((exact - quad).abs() < 1e-10);
    }

    #[test]
    fn poisson_examples() {
        let one = PiecewiseSymbol::constant(c(1.0, 0.0));
        let v = poisson_extension(&one, 0.7, 1.3, poisson_cutoff(0.7)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
        let z = poisson_extension(&identity(), 0.5, 0.0, 60).unwrap();
        assert!((z - c(0.5, 0.0)).norm() < 1e-15);
        assert!(matches!(
            poisson_extension(&identity(), 0.9, 0.0, 10),
            Err(Error::Truncation { .. })
        ));
        assert!(matches!(
            poisson_extension(&identity(), 1.0, 0.0, 10),
            Err(Error::InvalidRadius(_))
        ));
        assert_eq!(
            poisson_extension(&identity(), 0.0, 0.0, 0).unwrap(),
            c(0.0, 0.0)
        );
    }

    /// Direct Poisson-kernel quadrature, trapezoid rule per piece.
    fn poisson_oracle(symbol: &PiecewiseSymbol, r: f64, theta: f64, per_piece: usize) -> Complex64 {
        let kernel = |phi: f64| (1.0 - r * r) / (1.0 - 2.0 * r * (theta - phi).cos() + r * r);
        let mut total = c(0.0, 0.0);
        for p in symbol.pieces() {
            let h = p.length() / per_piece as f64;
            let g = |phi: f64| p.eval(phi) * kernel(phi);
            let mut s = (g(p.start) + g(p.end)) * 0.5;
            for j in 1..per_piece {
                s += g(p.start + h * j as f64);
            }
            total += s * h;
        }
        total / TAU
    }

    #[test]
    fn sign_extension_matches_kernel_quadrature() {
        let sgn = PiecewiseSymbol::sign();
        let r = 0.9;
        let v = poisson_extension(&sgn, r, PI / 2.0, poisson_cutoff(r)).unwrap();
        let oracle = poisson_oracle(&sgn, r, PI / 2.0, 200_000);
        assert!((v - oracle).norm() < 1e-8);
        assert!((v - c(1.0, 0.0)).norm() < 0.07);
        let closer = poisson_extension(&sgn, 0.999, PI / 2.0, poisson_cutoff(0.999)).unwrap();
        assert!((closer - c(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn grid_extension_matches_pointwise() {
        let sgn = PiecewiseSymbol::sign();
        let r = 0.8;
        let kc = poisson_cutoff(r) as i64;
        let a = sgn.fourier_coefficients(-kc, kc);
        let grid = poisson_on_circle(&a, r, 16).unwrap();
        for (j, v) in grid.iter().enumerate() {
            let th = TAU * j as f64 / 16.0;
            let p = poisson_extension(&sgn, r, th, kc as usize).unwrap();
            assert!((v - p).norm() < 1e-12);
        }
    }

    #[test]
    fn winding_examples() {
        let circle = SampledCurve::from_fn(1024, Complex64::cis);
        assert_eq!(winding_number(&circle, c(0.0, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&circle, c(3.0, 0.0)).unwrap(), 0);
        let double = SampledCurve::from_fn(1024, |t| Complex64::cis(2.0 * t));
        assert_eq!(winding_number(&double, c(0.0, 0.0)).unwrap(), 2);
        let reversed = SampledCurve::from_fn(1024, |t| Complex64::cis(-3.0 * t));
        assert_eq!(winding_number(&reversed, c(0.0, 0.0)).unwrap(), -3);
    }

    #[test]
    fn winding_errors() {
        let circle = SampledCurve::from_fn(64, Complex64::cis);
        assert!(matches!(
            winding_number(&circle, c(1.0, 0.0)),
            Err(Error::TooClose { .. })
        ));
        let coarse = SampledCurve::from_fn(2, Complex64::cis);
        assert!(matches!(
            winding_number(&coarse, c(0.0, 0.0)),
            Err(Error::UnderResolved { .. })
        ));
        let open = SampledCurve::open(circle.points.clone());
        assert_eq!(winding_number(&open, c(0.0, 0.0)), Err(Error::OpenCurve));
    }
}
