//! Mean-oscillation seminorms on sampled circle functions and the `H^1`
//! boundedness verdict.
//!
//! Suprema over subarcs are taken over the dyadic family: lengths
//! `n, n/2, …, 2` at offsets that are multiples of half the length, so every
//! sample boundary is interior to some arc of each length. Arc length is
//! `|I| = 2π·len/n`, so the logarithmic weight `log(4π/|I|) = log(2n/len)`
//! never drops below `log 2`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fft;
use crate::symbol::{CoefficientSequence, JumpPoint, PiecewiseSymbol};

/// Largest number of points the `Lip_log` pair scan visits.
pub const LIP_LOG_MAX_POINTS: usize = 4096;

/// Samples `f(θ_j)` at `θ_j = 2πj/n`, `n` a power of two, `n ≥ 8`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let n = values.len();
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(n));
        }
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(|j| f(TAU * j as f64 / n as f64)).collect())
    }

    /// Exact samples of a trigonometric polynomial.
    pub fn from_coefficients(c: &CoefficientSequence, n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(n));
        }
        Self::new(fft::synthesize(c, n))
    }

    /// Samples of the symbol itself (right limits at jumps).
    pub fn from_symbol(symbol: &PiecewiseSymbol, n: usize) -> Result<Self> {
        Self::from_fn(n, |t| symbol.evaluate(t))
    }

    /// `Q a` truncated to frequencies `-n/2 ≤ k ≤ -1`, sampled on `n` points.
    pub fn anti_analytic_part(symbol: &PiecewiseSymbol, n: usize) -> Result<Self> {
        let half = (n / 2) as i64;
        Self::from_coefficients(&symbol.fourier_coefficients(-half, -1), n)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn scaled(&self, alpha: Complex64, beta: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| alpha * v + beta).collect(),
        }
    }
}

/// Discrete `(1/|I|) ∫_I |f - f_I|` over `length` samples starting at
/// `start`, wrapping around the circle.
pub fn mean_oscillation(f: &GridFunction, start: usize, length: usize) -> Result<f64> {
    let n = f.n();
    if length < 1 || length > n {
        return Err(Error::Length { length, n });
    }
    Ok(oscillation(&f.values, start % n, length))
}

fn oscillation(values: &[Complex64], start: usize, length: usize) -> f64 {
    let n = values.len();
    // Centring on the first sample makes constants give exactly zero.
    let origin = values[start % n];
    let sample = |i: usize| values[(start + i) % n] - origin;
    let mean: Complex64 = (0..length).map(sample).sum::<Complex64>() / length as f64;
    (0..length).map(|i| (sample(i) - mean).norm()).sum::<f64>() / length as f64
}

/// `log(4π/|I|)` for an arc of `length` samples out of `n`.
pub fn log_weight(length: usize, n: usize) -> f64 {
    (2.0 * n as f64 / length as f64).ln()
}

/// Largest mean oscillation at every dyadic level, longest arcs first.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillationProfile {
    pub n: usize,
    /// `(length, max over dyadic offsets of the mean oscillation)`.
    pub levels: Vec<(usize, f64)>,
}

impl OscillationProfile {
    pub fn bmo(&self) -> f64 {
        self.levels.iter().map(|l| l.1).fold(0.0, f64::max)
    }

    pub fn bmo_log(&self) -> f64 {
        self.levels
            .iter()
            .map(|&(len, osc)| log_weight(len, self.n) * osc)
            .fold(0.0, f64::max)
    }
}

pub fn oscillation_profile(f: &GridFunction) -> OscillationProfile {
    oscillation_profile_with(f, Execution::default())
}

pub fn oscillation_profile_with(f: &GridFunction, exec: Execution) -> OscillationProfile {
    let n = f.n();
    let levels = dyadic_lengths(n)
        .map(|len| {
            let step = offset_step(len);
            let worst = exec.max_range(0..n / step, |i| oscillation(&f.values, i * step, len));
            (len, worst)
        })
        .collect();
    OscillationProfile { n, levels }
}

fn dyadic_lengths(n: usize) -> impl Iterator<Item = usize> {
    std::iter::successors(Some(n), |&l| (l > 2).then_some(l / 2))
}

/// Offsets of dyadic arcs of length `len` are multiples of this; the whole
/// circle is a single arc.
fn offset_step(len: usize) -> usize {
    (len / 2).max(1)
}

/// Sup of the mean oscillation over the dyadic family.
pub fn bmo_seminorm(f: &GridFunction) -> f64 {
    oscillation_profile(f).bmo()
}

/// Sup of `log(4π/|I|) · mean oscillation` over the dyadic family.
pub fn bmo_log_seminorm(f: &GridFunction) -> f64 {
    oscillation_profile(f).bmo_log()
}

/// Small-arc oscillation suprema, without and with the logarithmic weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VmoDefect {
    pub plain: f64,
    pub log_weighted: f64,
}

/// Sup over dyadic arcs with `|I| < delta`; zero when no arc is that short.
pub fn vmo_defect(f: &GridFunction, delta: f64) -> Result<VmoDefect> {
    if !(delta > 0.0 && delta <= TAU) {
        return Err(Error::Delta(delta));
    }
    let profile = oscillation_profile(f);
    let n = f.n();
    let short = profile
        .levels
        .iter()
        .filter(|&&(len, _)| TAU * len as f64 / (n as f64) < delta);
    let mut out = VmoDefect {
        plain: 0.0,
        log_weighted: 0.0,
    };
    for &(len, osc) in short {
        out.plain = out.plain.max(osc);
        out.log_weighted = out.log_weighted.max(log_weight(len, n) * osc);
    }
    Ok(out)
}

/// `sup log(4/|w - z|) |f(w) - f(z)|` over sample pairs, `|w - z|` chordal.
///
/// Grids finer than [`LIP_LOG_MAX_POINTS`] are subsampled with a uniform
/// stride first.
pub fn lip_log_seminorm(f: &GridFunction) -> f64 {
    lip_log_seminorm_with(f, Execution::default())
}

pub fn lip_log_seminorm_with(f: &GridFunction, exec: Execution) -> f64 {
    let n = f.n();
    let stride = (n / LIP_LOG_MAX_POINTS).max(1);
    let points: Vec<Complex64> = f.values.iter().step_by(stride).copied().collect();
    let m = points.len();
    let step = TAU * stride as f64 / n as f64;
    // Chordal distance depends only on the index gap.
    let weights: Vec<f64> = (0..m)
        .map(|d| {
            let chord = 2.0 * (0.5 * step * d as f64).sin().abs();
            if d == 0 {
                0.0
            } else {
                (4.0 / chord).ln()
            }
        })
        .collect();
    exec.max_range(0..m, |i| {
        let mut best = 0.0f64;
        for j in i + 1..m {
            best = best.max(weights[j - i] * (points[i] - points[j]).norm());
        }
        best
    })
}

/// Outcome of checking `(1/|I|)∫_I|f - f_I| ≤ ‖f‖_{BMO_log} / log(4π/|I|)`
/// on every dyadic arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingReport {
    pub seminorm: f64,
    /// Largest ratio of the left side to the right side; `0` when the
    /// seminorm vanishes.
    pub worst_ratio: f64,
    pub intervals: usize,
}

pub fn embedding_check(f: &GridFunction) -> EmbeddingReport {
    let n = f.n();
    let seminorm = bmo_log_seminorm(f);
    let mut worst = 0.0f64;
    let mut intervals = 0;
    for len in dyadic_lengths(n) {
        let bound = seminorm / log_weight(len, n);
        let step = if len == n { n } else { offset_step(len) };
        for i in 0..n / step {
            let osc = oscillation(&f.values, i * step, len);
            intervals += 1;
            if seminorm > 0.0 {
                worst = worst.max(osc / bound);
            }
        }
    }
    EmbeddingReport {
        seminorm,
        worst_ratio: worst,
        intervals,
    }
}

/// Growth hint attached to an [`OscillationReport`]. Never a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Stable,
    Diverging,
}

/// Seminorm estimates for one function across a ladder of grid sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillationReport {
    pub resolutions: Vec<usize>,
    pub bmo: Vec<f64>,
    pub bmo_log: Vec<f64>,
    /// Plain VMO defect at `delta = VMO_DELTA`.
    pub vmo_defect: Vec<f64>,
    /// Log-weighted VMO defect at `delta = VMO_DELTA`.
    pub vmo_log_defect: Vec<f64>,
    pub hint: Trend,
}

/// Arc-length threshold used for the report's VMO columns.
pub const VMO_DELTA: f64 = TAU / 64.0;

/// Ladder used when a verdict has to fall back to a report.
pub const DEFAULT_LADDER: [usize; 5] = [1 << 8, 1 << 9, 1 << 10, 1 << 11, 1 << 12];

/// A `BMO_log` ladder counts as diverging when it rises at every step and
/// by at least this factor overall.
const DIVERGENCE_FACTOR: f64 = 1.05;

/// Report for `Q a` over the given grid sizes.
pub fn anti_analytic_report(
    symbol: &PiecewiseSymbol,
    resolutions: &[usize],
) -> Result<OscillationReport> {
    let mut report = OscillationReport {
        resolutions: resolutions.to_vec(),
        bmo: Vec::new(),
        bmo_log: Vec::new(),
        vmo_defect: Vec::new(),
        vmo_log_defect: Vec::new(),
        hint: Trend::Stable,
    };
    for &n in resolutions {
        let f = GridFunction::anti_analytic_part(symbol, n)?;
        let profile = oscillation_profile(&f);
        let vmo = vmo_defect(&f, VMO_DELTA)?;
        report.bmo.push(profile.bmo());
        report.bmo_log.push(profile.bmo_log());
        report.vmo_defect.push(vmo.plain);
        report.vmo_log_defect.push(vmo.log_weighted);
    }
    let rising = report.bmo_log.windows(2).all(|w| w[1] > w[0]);
    let overall = match (report.bmo_log.first(), report.bmo_log.last()) {
        (Some(&a), Some(&b)) if a > 0.0 => b / a,
        _ => 1.0,
    };
    if report.bmo_log.len() >= 2 && rising && overall >= DIVERGENCE_FACTOR {
        report.hint = Trend::Diverging;
    }
    Ok(report)
}

/// Whether `T_a` is bounded on `H^1`, decided only where a structural
/// certificate exists.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// The symbol is a single trigonometric polynomial, so `Q a` is one too.
    Bounded { certificate: String },
    /// The symbol has a jump; bounded `H^1` Toeplitz symbols have none.
    Unbounded { jump: JumpPoint },
    /// Neither certificate applies; the report is a heuristic only.
    Unknown { report: OscillationReport },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Bounded { .. } => "Bounded",
            Verdict::Unbounded { .. } => "Unbounded",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

pub fn h1_boundedness_verdict(symbol: &PiecewiseSymbol) -> Result<Verdict> {
    if let Some(jump) = symbol.jumps().first() {
        return Ok(Verdict::Unbounded { jump: *jump });
    }
    if symbol.is_single_piece() {
        return Ok(Verdict::Bounded {
            certificate: "trigonometric polynomial".into(),
        });
    }
    Ok(Verdict::Unknown {
        report: anti_analytic_report(symbol, &DEFAULT_LADDER)?,
    })
}
