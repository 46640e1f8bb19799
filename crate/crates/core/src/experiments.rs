//! Numerical experiments probing boundedness and Fredholmness through finite
//! data.
//!
//! None of these certify anything; they record ladders whose trends can be
//! compared against the exact statements implemented elsewhere.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fft;
use crate::hardy::{self, ToeplitzSection};
use crate::spectra::{self, DISTANCE_TOLERANCE};
use crate::symbol::{CoefficientSequence, PiecewiseSymbol};

/// Largest test polynomial degree accepted by [`h1_growth_experiment`].
pub const GROWTH_MAX_N: usize = 1 << 15;
/// Largest section accepted by [`finite_section_probe`].
pub const PROBE_MAX_N: usize = 2048;
/// Relative change in `‖T_a f_n‖_{H^1}` below which the truncation of
/// `P(a f_n)` is accepted.
pub const TAIL_TOLERANCE: f64 = 1e-3;
/// Highest output degree tried while the truncated norm is still moving.
const MAX_OUT_DEGREE: usize = 1 << 23;

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    /// `‖T_a f_n‖_{H^1} / ‖f_n‖_{H^1}`.
    pub ratio: f64,
    /// Degree at which `P(a f_n)` was truncated.
    pub out_degree: usize,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    pub fn ratios(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.ratio).collect()
    }
}

fn check_ladder(n_list: &[usize], max: usize) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidLadder("ladder must be nonempty".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLadder(
            "ladder must be strictly increasing".into(),
        ));
    }
    if n_list[0] == 0 {
        return Err(Error::InvalidLadder(
            "ladder entries must be positive".into(),
        ));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n > max) {
        return Err(Error::Budget(format!("n = {n} exceeds {max}")));
    }
    Ok(())
}

/// `H^1` norm ratios of `T_a` on the truncated Cauchy kernels
/// `f_n = Σ_{k=0}^{n} z^k`.
///
/// `P(a f_n)` is truncated at degree `4n`, doubled until the `H^1` norm
/// moves by less than [`TAIL_TOLERANCE`]. Both norms are taken with the same
/// quadrature grid, so a constant symbol gives a ratio of exactly one up to
/// rounding.
pub fn h1_growth_experiment(symbol: &PiecewiseSymbol, n_list: &[usize]) -> Result<GrowthTable> {
    h1_growth_experiment_with(symbol, n_list, Execution::default())
}

pub fn h1_growth_experiment_with(
    symbol: &PiecewiseSymbol,
    n_list: &[usize],
    exec: Execution,
) -> Result<GrowthTable> {
    check_ladder(n_list, GROWTH_MAX_N)?;
    let rows = exec.map(n_list, |&n| growth_row(symbol, n));
    Ok(GrowthTable {
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn growth_row(symbol: &PiecewiseSymbol, n: usize) -> Result<GrowthRow> {
    let started = Instant::now();
    let f = CoefficientSequence::new(0, vec![Complex64::new(1.0, 0.0); n + 1]);
    let mut out_degree = 4 * n;
    let mut previous: Option<f64> = None;
    loop {
        let grid = (4 * (out_degree + 1)).next_power_of_two();
        // The inner kernels stay sequential; parallelism is across the ladder.
        let image = hardy::apply_toeplitz_with(symbol, &f, out_degree, Execution::Sequential)?;
        let ratio = hardy::hardy_norm(&image, 1.0, grid)? / hardy::hardy_norm(&f, 1.0, grid)?;
        if let Some(prev) = previous {
            if (ratio - prev).abs() <= TAIL_TOLERANCE * prev.abs() {
                return Ok(GrowthRow {
                    n,
                    ratio,
                    out_degree,
                    wall_time: started.elapsed(),
                });
            }
        }
        if out_degree * 2 > MAX_OUT_DEGREE {
            return Err(Error::Budget(format!(
                "truncation of P(a f_n) for n = {n} did not settle by degree {out_degree}"
            )));
        }
        previous = Some(ratio);
        out_degree *= 2;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub n: usize,
    pub sigma_min: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeTable {
    pub rows: Vec<ProbeRow>,
}

impl ProbeTable {
    pub fn sigma_min(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.sigma_min).collect()
    }
}

/// Smallest singular value of `T_n(a - λ)` for each `n`.
pub fn finite_section_probe(
    symbol: &PiecewiseSymbol,
    lambda: Complex64,
    n_list: &[usize],
) -> Result<ProbeTable> {
    finite_section_probe_with(symbol, lambda, n_list, Execution::default())
}

pub fn finite_section_probe_with(
    symbol: &PiecewiseSymbol,
    lambda: Complex64,
    n_list: &[usize],
    exec: Execution,
) -> Result<ProbeTable> {
    check_ladder(n_list, PROBE_MAX_N)?;
    let shifted = symbol.shifted(lambda);
    let reach = n_list[n_list.len() - 1] as i64 - 1;
    let coeffs = shifted.fourier_coefficients_with(-reach, reach, exec);
    let rows = exec.map(n_list, |&n| {
        let section = ToeplitzSection::from_coefficients_with(&coeffs, n, Execution::Sequential)?;
        Ok(ProbeRow {
            n,
            sigma_min: smallest_singular_value(section.into_matrix()),
        })
    });
    Ok(ProbeTable {
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn smallest_singular_value(m: DMatrix<Complex64>) -> f64 {
    m.singular_values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Fredholm index from the arc-completed winding compared with the winding
/// of `a - λ` read off its zeros in the unit disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub geometric: i64,
    pub analytic: i64,
}

impl IndexReport {
    pub fn matches(&self) -> bool {
        self.geometric == self.analytic
    }
}

/// Compares both index routes for a single-piece trigonometric polynomial.
pub fn index_consistency(symbol: &PiecewiseSymbol, lambda: Complex64) -> Result<IndexReport> {
    if !symbol.is_single_piece() {
        return Err(Error::NotTrigPolynomial);
    }
    if spectra::is_in_essential_spectrum(symbol, 2.0, lambda, DISTANCE_TOLERANCE)? {
        return Err(Error::InSpectrum);
    }
    let geometric = spectra::fredholm_index(symbol, 2.0, lambda)?;
    let shifted = symbol.pieces()[0].value.plus_constant(-lambda);
    Ok(IndexReport {
        geometric,
        analytic: -analytic_winding(&shifted),
    })
}

/// Winding number of `Σ c_k e^{ikθ}` around zero, assuming no zeros on the
/// circle: `k_lo` plus the number of zeros of `z^{-k_lo} Σ c_k z^k` in the
/// open unit disk.
pub fn analytic_winding(c: &CoefficientSequence) -> i64 {
    let scale = c.coeffs().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let significant = |v: &Complex64| v.norm() > 1e-14 * scale;
    let Some(lo) = c.iter().find(|(_, v)| significant(v)).map(|(k, _)| k) else {
        return 0;
    };
    let hi = c
        .iter()
        .rev()
        .find(|(_, v)| significant(v))
        .map(|(k, _)| k)
        .unwrap_or(lo);
    let q: Vec<Complex64> = (lo..=hi).map(|k| c.get(k)).collect();
    let inside = polynomial_roots(&q)
        .iter()
        .filter(|z| z.norm() < 1.0)
        .count();
    lo + inside as i64
}

/// Roots of `Σ q_j z^j` via the eigenvalues of the companion matrix.
fn polynomial_roots(q: &[Complex64]) -> Vec<Complex64> {
    let degree = q.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = q[degree];
    let mut companion = DMatrix::<Complex64>::zeros(degree, degree);
    for j in 0..degree {
        companion[(0, j)] = -q[degree - 1 - j] / lead;
        if j + 1 < degree {
            companion[(j + 1, j)] = Complex64::new(1.0, 0.0);
        }
    }
    let schur = companion.schur();
    let (_, t) = schur.unpack();
    (0..degree).map(|i| t[(i, i)]).collect()
}

/// Boundary-limit estimates of a polynomial from both sides of `e^{it}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LindelofReport {
    pub t: f64,
    /// `f(e^{it})`.
    pub boundary_value: Complex64,
    /// Extrapolated limit along `(1 - 1/m) e^{i(t - 1/m)}`.
    pub left_limit: Complex64,
    /// Extrapolated limit along `(1 - 1/m) e^{i(t + 1/m)}`.
    pub right_limit: Complex64,
    pub difference: f64,
    /// `(m, f(left point), f(right point))`.
    pub ladder: Vec<(f64, Complex64, Complex64)>,
}

/// `m = 10^{1 + j/4}`, `j = 0..=12`.
pub fn default_lindelof_ladder() -> Vec<f64> {
    (0..=12).map(|j| 10f64.powf(1.0 + j as f64 / 4.0)).collect()
}

/// Number of ladder points (smallest step sizes) used for extrapolation.
const EXTRAPOLATION_POINTS: usize = 4;

/// Evaluates an analytic polynomial along two approach paths to `e^{it}`
/// and extrapolates both sequences to the boundary.
pub fn lindelof_demo(f: &CoefficientSequence, t: f64, ladder: &[f64]) -> Result<LindelofReport> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    if ladder.len() < 2 {
        return Err(Error::InvalidLadder(
            "need at least two ladder points".into(),
        ));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) || ladder[0] <= 1.0 {
        return Err(Error::InvalidLadder(
            "ladder must increase and start above 1".into(),
        ));
    }
    let approach = |m: f64, side: f64| {
        let z = Complex64::from_polar(1.0 - 1.0 / m, t + side / m);
        f.eval_at(z)
    };
    let rows: Vec<(f64, Complex64, Complex64)> = ladder
        .iter()
        .map(|&m| (m, approach(m, -1.0), approach(m, 1.0)))
        .collect();

    let tail = &rows[rows.len().saturating_sub(EXTRAPOLATION_POINTS)..];
    let steps: Vec<f64> = tail.iter().map(|r| 1.0 / r.0).collect();
    let left = extrapolate_to_zero(&steps, &tail.iter().map(|r| r.1).collect::<Vec<_>>());
    let right = extrapolate_to_zero(&steps, &tail.iter().map(|r| r.2).collect::<Vec<_>>());
    Ok(LindelofReport {
        t,
        boundary_value: f.eval(t),
        left_limit: left,
        right_limit: right,
        difference: (left - right).norm(),
        ladder: rows,
    })
}

/// Neville's scheme for the interpolating polynomial through `(h_i, y_i)`
/// evaluated at `h = 0`.
fn extrapolate_to_zero(h: &[f64], y: &[Complex64]) -> Complex64 {
    let mut p = y.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let j = i + level;
            p[i] = (p[i + 1] * h[i] - p[i] * h[j]) / (h[i] - h[j]);
        }
    }
    p[0]
}

/// Single-piece trigonometric truncation of `θ ↦ 1 / log(8 / |e^{iθ} - 1|)`,
/// a continuous function with a logarithmic modulus of continuity at `θ = 0`.
pub fn lip_log_exemplar(degree: usize) -> PiecewiseSymbol {
    const SAMPLES: usize = 1 << 16;
    let samples: Vec<Complex64> = (0..SAMPLES)
        .map(|j| {
            let theta = TAU * j as f64 / SAMPLES as f64;
            let d = 2.0 * (theta / 2.0).sin().abs();
            let v = if d == 0.0 { 0.0 } else { 1.0 / (8.0 / d).ln() };
            Complex64::new(v, 0.0)
        })
        .collect();
    let spectrum = fft::analyze(&samples);
    let d = degree as i64;
    let coeffs = (-d..=d)
        .map(|k| spectrum[k.rem_euclid(SAMPLES as i64) as usize])
        .collect();
    PiecewiseSymbol::trig_polynomial(CoefficientSequence::new(-d, coeffs))
}
