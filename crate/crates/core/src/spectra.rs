//! Essential spectra and Fredholm indices on `H^p`, `1 < p < ∞`.
//!
//! The essential spectrum of `T_a` for a piecewise continuous symbol is the
//! range of `a` (one-sided limits included) together with, for every jump
//! `t`, the arc of points `ζ` satisfying
//!
//! ```text
//! arg((a(t-0) - ζ) / (a(t+0) - ζ)) = 2π/p,      arg ∈ [0, 2π).
//! ```
//!
//! For `p = 2` the arc is the open chord; for `p > 2` and `p < 2` it bulges
//! to opposite sides. The Möbius ray
//! `ζ(r) = (z₋ - r e^{iα} z₊) / (1 - r e^{iα})`, `r ∈ (0, ∞)`, `α = 2π/p`,
//! satisfies the arg condition identically and is used for sampling.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hardy::{self, SampledCurve};
use crate::symbol::{normalize_angle, PiecewiseSymbol, JUMP_TOLERANCE};

/// Default angular tolerance for arc membership.
pub const ARC_TOLERANCE: f64 = 1e-9;

/// Default distance tolerance for proximity to the range.
pub const DISTANCE_TOLERANCE: f64 = 1e-8;

/// Cap on the sampling used while building arc-completed curves.
const MAX_INDEX_RESOLUTION: usize = 1 << 18;

fn check_exponent(p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

/// The `p`-circular arc joining `a(t-0)` to `a(t+0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcP {
    pub z_minus: Complex64,
    pub z_plus: Complex64,
    pub p: f64,
}

impl ArcP {
    pub fn new(z_minus: Complex64, z_plus: Complex64, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if (z_minus - z_plus).norm() <= JUMP_TOLERANCE {
            return Err(Error::Degenerate);
        }
        Ok(Self { z_minus, z_plus, p })
    }

    /// The viewing angle `2π/p`.
    pub fn angle(&self) -> f64 {
        TAU / self.p
    }

    /// `(z₋ - ζ) / (z₊ - ζ)`; equals `r e^{iα}` on the arc.
    fn ratio(&self, zeta: Complex64) -> Complex64 {
        (self.z_minus - zeta) / (self.z_plus - zeta)
    }

    /// Whether `ζ` sees the chord at angle `2π/p` within `tol` radians.
    pub fn contains(&self, zeta: Complex64, tol: f64) -> Result<bool> {
        if (zeta - self.z_minus).norm() <= tol || (zeta - self.z_plus).norm() <= tol {
            return Err(Error::Endpoint);
        }
        let arg = normalize_angle(self.ratio(zeta).arg());
        let d = (arg - self.angle()).abs();
        Ok(d.min(TAU - d) <= tol)
    }

    /// Arc parameter `r = |ratio|` recovered from a point; `r ∈ (0, ∞)`
    /// strictly between the endpoints.
    pub fn parameter_of(&self, zeta: Complex64) -> f64 {
        self.ratio(zeta).norm()
    }

    pub fn point_at(&self, r: f64) -> Complex64 {
        let w = Complex64::from_polar(r, self.angle());
        (self.z_minus - w * self.z_plus) / (Complex64::new(1.0, 0.0) - w)
    }

    /// Ray parameters for `m` interior samples, bracketed by `0` and `∞`.
    pub fn parameters(m: usize) -> Vec<f64> {
        let mut rs = Vec::with_capacity(m + 2);
        rs.push(0.0);
        rs.extend((1..=m).map(|j| {
            let s = j as f64 / (m + 1) as f64;
            s / (1.0 - s)
        }));
        rs.push(f64::INFINITY);
        rs
    }

    /// Open curve `z₋ → z₊` with `m` interior samples on a uniform grid in
    /// `s = r / (1 + r)`.
    pub fn sample(&self, m: usize) -> Result<SampledCurve> {
        if m < 1 {
            return Err(Error::Size { size: m, min: 1 });
        }
        let params = Self::parameters(m);
        let mut points = Vec::with_capacity(params.len());
        points.push(self.z_minus);
        points.extend(params[1..=m].iter().map(|&r| self.point_at(r)));
        points.push(self.z_plus);
        Ok(SampledCurve::open(points))
    }
}

/// Membership test for a single arc; see [`ArcP::contains`].
pub fn arc_membership(arc: &ArcP, zeta: Complex64, tol: f64) -> Result<bool> {
    arc.contains(zeta, tol)
}

/// Samples of an arc; see [`ArcP::sample`].
pub fn arc_points(arc: &ArcP, m: usize) -> Result<SampledCurve> {
    arc.sample(m)
}

/// Where a spectrum segment comes from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Provenance {
    /// Values of piece `i` over its closed arc.
    RangePiece(usize),
    /// The `p`-arc filling the jump at `t`.
    JumpArc(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSegment {
    pub curve: SampledCurve,
    /// Sample angle for range pieces, ray parameter `r` for arcs.
    pub params: Vec<f64>,
    pub provenance: Provenance,
}

/// Sampled description of an essential spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumDescription {
    pub segments: Vec<SpectrumSegment>,
    /// `None` when the spectrum does not depend on `p`.
    pub p: Option<f64>,
    pub resolution: usize,
}

impl SpectrumDescription {
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.segments
            .iter()
            .flat_map(|s| s.curve.points.iter().copied())
    }
}

/// Range pieces plus one `p`-arc per jump, each sampled at `resolution` points.
pub fn essential_spectrum(
    symbol: &PiecewiseSymbol,
    p: f64,
    resolution: usize,
) -> Result<SpectrumDescription> {
    check_exponent(p)?;
    if resolution < 16 {
        return Err(Error::Size {
            size: resolution,
            min: 16,
        });
    }
    let mut segments = range_segments(symbol, resolution);
    for jump in symbol.jumps() {
        let arc = ArcP::new(jump.left_limit, jump.right_limit, p)?;
        segments.push(SpectrumSegment {
            curve: arc.sample(resolution)?,
            params: ArcP::parameters(resolution),
            provenance: Provenance::JumpArc(jump.t),
        });
    }
    Ok(SpectrumDescription {
        segments,
        p: Some(p),
        resolution,
    })
}

/// `a(𝕋)` for a symbol without jumps.
pub fn essential_spectrum_continuous(
    symbol: &PiecewiseSymbol,
    resolution: usize,
) -> Result<SpectrumDescription> {
    if symbol.has_jumps() {
        return Err(Error::HasJumps(symbol.jumps().len()));
    }
    if resolution < 16 {
        return Err(Error::Size {
            size: resolution,
            min: 16,
        });
    }
    Ok(SpectrumDescription {
        segments: range_segments(symbol, resolution),
        p: None,
        resolution,
    })
}

fn range_segments(symbol: &PiecewiseSymbol, resolution: usize) -> Vec<SpectrumSegment> {
    symbol
        .pieces()
        .iter()
        .enumerate()
        .map(|(i, piece)| {
            let thetas: Vec<f64> = (0..resolution)
                .map(|j| piece.start + piece.length() * j as f64 / (resolution - 1) as f64)
                .collect();
            let points: Vec<Complex64> = thetas.iter().map(|&t| piece.eval(t)).collect();
            let constant = points.iter().all(|z| *z == points[0]);
            let (points, params) = if constant {
                (vec![points[0]], vec![thetas[0]])
            } else {
                (points, thetas)
            };
            SpectrumSegment {
                curve: SampledCurve::open(points),
                params,
                provenance: Provenance::RangePiece(i),
            }
        })
        .collect()
}

/// Distance from `λ` to the range of the symbol, one-sided limits included.
///
/// Each piece is scanned on a grid fine enough that the curve moves less
/// than its sampled distance budget between samples, then every candidate
/// local minimum is refined by golden-section search.
pub fn distance_to_range(symbol: &PiecewiseSymbol, lambda: Complex64) -> f64 {
    symbol
        .pieces()
        .iter()
        .map(|piece| {
            let speed: f64 = piece
                .value
                .iter()
                .map(|(k, c)| k.unsigned_abs() as f64 * c.norm())
                .sum();
            let freq = piece.value.max_frequency() as f64;
            let m = ((piece.length() / TAU) * 64.0 * (freq + 1.0))
                .ceil()
                .max(16.0) as usize;
            let h = piece.length() / m as f64;
            let theta = |j: usize| {
                if j == m {
                    piece.end
                } else {
                    piece.start + h * j as f64
                }
            };
            let dist = |t: f64| (piece.eval(t) - lambda).norm();
            let samples: Vec<f64> = (0..=m).map(|j| dist(theta(j))).collect();
            let best = samples.iter().copied().fold(f64::INFINITY, f64::min);
            let slack = speed * h;
            let mut result = best;
            for j in 0..=m {
                let local_min = (j == 0 || samples[j] <= samples[j - 1])
                    && (j == m || samples[j] <= samples[j + 1]);
                if !local_min || samples[j] > best + slack {
                    continue;
                }
                let lo = theta(j.saturating_sub(1));
                let hi = theta((j + 1).min(m));
                result = result.min(golden_section_min(dist, lo, hi));
            }
            result
        })
        .fold(f64::INFINITY, f64::min)
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = f(lo).min(f(hi)).min(f1).min(f2);
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            best = best.min(f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            best = best.min(f2);
        }
    }
    best
}

/// Whether `λ` lies in the essential spectrum of `T_a` on `H^p`.
///
/// `tol` is a distance for the range and the one-sided limits, and an angle
/// for the jump arcs.
pub fn is_in_essential_spectrum(
    symbol: &PiecewiseSymbol,
    p: f64,
    lambda: Complex64,
    tol: f64,
) -> Result<bool> {
    check_exponent(p)?;
    for jump in symbol.jumps() {
        if (jump.left_limit - lambda).norm() <= tol || (jump.right_limit - lambda).norm() <= tol {
            return Ok(true);
        }
    }
    if distance_to_range(symbol, lambda) <= tol {
        return Ok(true);
    }
    for jump in symbol.jumps() {
        let arc = ArcP::new(jump.left_limit, jump.right_limit, p)?;
        let r = arc.parameter_of(lambda);
        if r > 0.0 && r.is_finite() && arc.contains(lambda, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Closed curve: every piece's values in increasing `θ`, with the `p`-arc
/// from `a(t-0)` to `a(t+0)` inserted at each jump.
pub fn arc_completed_curve(
    symbol: &PiecewiseSymbol,
    p: f64,
    resolution: usize,
) -> Result<SampledCurve> {
    check_exponent(p)?;
    let mut points = Vec::new();
    for (i, piece) in symbol.pieces().iter().enumerate() {
        if let Some(jump) = symbol.jumps().iter().find(|j| j.t == piece.start) {
            let arc = ArcP::new(jump.left_limit, jump.right_limit, p)?;
            let curve = arc.sample(resolution)?;
            // Endpoints coincide with neighbouring range samples.
            points.extend_from_slice(&curve.points[1..curve.points.len() - 1]);
        }
        let m = ((piece.length() / TAU) * resolution as f64).ceil().max(2.0) as usize;
        let last = i + 1 == symbol.pieces().len();
        let count = if last { m } else { m + 1 };
        points.extend((0..count).map(|j| {
            let t = if j == m {
                piece.end
            } else {
                piece.start + piece.length() * j as f64 / m as f64
            };
            piece.eval(t)
        }));
        if last {
            // θ = 2π coincides with θ = 0 unless a jump sits there.
            if symbol.jumps().first().map(|j| j.t) == Some(0.0) {
                points.push(piece.eval(piece.end));
            }
        }
    }
    Ok(SampledCurve::closed(points))
}

/// `Ind T_{a-λ}` on `H^p`: minus the winding number of the arc-completed
/// range around `λ`.
pub fn fredholm_index(symbol: &PiecewiseSymbol, p: f64, lambda: Complex64) -> Result<i64> {
    if is_in_essential_spectrum(symbol, p, lambda, DISTANCE_TOLERANCE)? {
        return Err(Error::InSpectrum);
    }
    let mut resolution = (512usize).max(64 * (symbol.max_frequency() as usize + 1));
    loop {
        let curve = arc_completed_curve(symbol, p, resolution)?;
        match hardy::winding_number(&curve, lambda) {
            Ok(w) => return Ok(-w),
            Err(Error::UnderResolved { .. }) if resolution < MAX_INDEX_RESOLUTION => {
                resolution *= 4;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Sampled image of the annulus `ρ ∈ [r, 1 - 1/grid]` under the harmonic
/// extension, for one radius of the ladder.
#[derive(Clone, Debug, PartialEq)]
pub struct DouglasRung {
    pub r: f64,
    pub points: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DouglasEstimate {
    pub rungs: Vec<DouglasRung>,
}

impl DouglasEstimate {
    /// The rung for the largest radius.
    pub fn innermost(&self) -> &DouglasRung {
        self.rungs.last().expect("estimate has at least one rung")
    }
}

/// Most radial samples taken per rung.
const MAX_RADIAL_SAMPLES: usize = 32;

/// Approximates `⋂_r closure a(𝔻 ∖ r𝔻)` by sampling each annulus image of
/// the harmonic extension for every `r` in `radii`.
pub fn douglas_spectrum_estimate(
    symbol: &PiecewiseSymbol,
    radii: &[f64],
    grid: usize,
) -> Result<DouglasEstimate> {
    douglas_spectrum_estimate_with(symbol, radii, grid, Execution::default())
}

pub fn douglas_spectrum_estimate_with(
    symbol: &PiecewiseSymbol,
    radii: &[f64],
    grid: usize,
    exec: Execution,
) -> Result<DouglasEstimate> {
    if radii.is_empty() {
        return Err(Error::InvalidLadder("radii must be nonempty".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLadder(
            "radii must be strictly increasing".into(),
        ));
    }
    if let Some(&bad) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::InvalidRadius(bad));
    }
    if grid < 8 {
        return Err(Error::Size { size: grid, min: 8 });
    }
    let rho_max = radii[radii.len() - 1].max(1.0 - 1.0 / grid as f64);
    let kc = hardy::poisson_cutoff(rho_max) as i64;
    let coeffs = symbol.fourier_coefficients_with(-kc, kc, exec);

    let rungs = radii
        .iter()
        .map(|&r| {
            let rhos = radial_samples(r, rho_max, grid);
            let rings = exec.map(&rhos, |&rho| hardy::poisson_on_circle(&coeffs, rho, grid));
            let mut points = Vec::with_capacity(rhos.len() * grid);
            for ring in rings {
                points.extend(ring?);
            }
            Ok(DouglasRung { r, points })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DouglasEstimate { rungs })
}

fn radial_samples(r: f64, rho_max: f64, grid: usize) -> Vec<f64> {
    if rho_max <= r {
        return vec![r];
    }
    let count = (((rho_max - r) * grid as f64).ceil() as usize + 1).clamp(2, MAX_RADIAL_SAMPLES);
    (0..count)
        .map(|i| r + (rho_max - r) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn sampled_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    sampled_hausdorff_with(a, b, Execution::default())
}

pub fn sampled_hausdorff_with(a: &[Complex64], b: &[Complex64], exec: Execution) -> f64 {
    let directed = |from: &[Complex64], to: &[Complex64]| {
        exec.max_range(0..from.len(), |i| {
            to.iter()
                .map(|z| (z - from[i]).norm_sqr())
                .fold(f64::INFINITY, f64::min)
        })
    };
    directed(a, b).max(directed(b, a)).sqrt()
}
