//! Piecewise continuous symbols on the unit circle.
//!
//! A [`PiecewiseSymbol`] partitions `[0, 2π)` into consecutive arcs, each
//! carrying a trigonometric polynomial. Jump points and one-sided limits are
//! derived at construction time; Fourier coefficients are computed piecewise
//! in closed form.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;

/// A boundary is a jump iff the one-sided values differ by more than this.
pub const JUMP_TOLERANCE: f64 = 1e-10;

/// Slack allowed when matching piece endpoints.
const ANGLE_SLACK: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Reduce an angle into `[0, 2π)`.
pub fn normalize_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Finitely supported doubly indexed Fourier coefficients.
///
/// Coefficients outside `[k_min, k_max]` are zero. Equality compares the
/// represented sequences, so two values with different stored ranges but the
/// same nonzero entries are equal.
#[derive(Clone, Debug)]
pub struct CoefficientSequence {
    k_min: i64,
    coeffs: Vec<Complex64>,
}

impl CoefficientSequence {
    pub fn new(k_min: i64, coeffs: Vec<Complex64>) -> Self {
        Self { k_min, coeffs }
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, vec![c])
    }

    /// `z^k` as a coefficient sequence.
    pub fn monomial(k: i64) -> Self {
        Self::new(k, vec![Complex64::new(1.0, 0.0)])
    }

    /// Builds the contiguous range spanned by `pairs`; repeated indices add up.
    pub fn from_pairs(pairs: &[(i64, Complex64)]) -> Self {
        let Some(lo) = pairs.iter().map(|p| p.0).min() else {
            return Self::zero();
        };
        let hi = pairs.iter().map(|p| p.0).max().unwrap_or(lo);
        let mut coeffs = vec![ZERO; (hi - lo + 1) as usize];
        for &(k, c) in pairs {
            coeffs[(k - lo) as usize] += c;
        }
        Self::new(lo, coeffs)
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    /// Last stored index; `k_min - 1` for an empty sequence.
    pub fn k_max(&self) -> i64 {
        self.k_min + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, k: i64) -> Complex64 {
        if k < self.k_min || k > self.k_max() {
            ZERO
        } else {
            self.coeffs[(k - self.k_min) as usize]
        }
    }

    pub fn iter(
        &self,
    ) -> impl DoubleEndedIterator<Item = (i64, Complex64)> + ExactSizeIterator + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.k_min + i as i64, c))
    }

    /// Smallest and largest index holding a nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.iter().find(|(_, c)| *c != ZERO)?.0;
        let hi = self.iter().rev().find(|(_, c)| *c != ZERO)?.0;
        Some((lo, hi))
    }

    /// Copy with zero coefficients trimmed from both ends.
    pub fn trimmed(&self) -> Self {
        match self.support() {
            Some((lo, hi)) => Self::new(lo, (lo..=hi).map(|k| self.get(k)).collect()),
            None => Self::zero(),
        }
    }

    /// Copy restricted (or zero-extended) to `[k_min, k_max]`.
    pub fn restricted(&self, k_min: i64, k_max: i64) -> Self {
        if k_max < k_min {
            return Self::new(k_min, Vec::new());
        }
        Self::new(k_min, (k_min..=k_max).map(|k| self.get(k)).collect())
    }

    /// True when every coefficient at a negative index is zero.
    pub fn is_analytic(&self) -> bool {
        self.iter().all(|(k, c)| k >= 0 || c == ZERO)
    }

    /// Largest `|k|` with a nonzero coefficient.
    pub fn max_frequency(&self) -> u64 {
        self.support()
            .map(|(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()))
            .unwrap_or(0)
    }

    /// `Σ c_k e^{ikθ}`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.iter()
            .filter(|(_, c)| *c != ZERO)
            .map(|(k, c)| c * Complex64::cis(k as f64 * theta))
            .sum()
    }

    /// `Σ c_k z^k` at an interior point, `z ≠ 0` when negative indices are present.
    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.k_min as i32)
    }

    /// Coefficients of the complex conjugate function: `b_k = conj(c_{-k})`.
    pub fn conjugate(&self) -> Self {
        let coeffs = self.coeffs.iter().rev().map(|c| c.conj()).collect();
        Self::new(-self.k_max(), coeffs)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::new(self.k_min, self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Adds `c` to the constant coefficient, extending the range if needed.
    pub fn plus_constant(&self, c: Complex64) -> Self {
        let lo = self.k_min.min(0);
        let hi = self.k_max().max(0);
        let mut out = self.restricted(lo, hi);
        out.coeffs[(-lo) as usize] += c;
        out
    }

    /// `max_k |self_k - other_k|` over the union of both ranges.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let (lo, hi) = self.union_range(other);
        (lo..=hi)
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(0.0, f64::max)
    }

    fn union_range(&self, other: &Self) -> (i64, i64) {
        let lo = self.k_min.min(other.k_min);
        let hi = self.k_max().max(other.k_max());
        (lo, hi)
    }
}

impl PartialEq for CoefficientSequence {
    fn eq(&self, other: &Self) -> bool {
        let (lo, hi) = self.union_range(other);
        (lo..=hi).all(|k| self.get(k) == other.get(k))
    }
}

/// One arc `[start, end)` of a piecewise symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub value: CoefficientSequence,
}

impl Piece {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.value.eval(theta)
    }

    fn is_full_circle(&self) -> bool {
        self.start == 0.0 && self.end == TAU
    }
}

/// A boundary point where the one-sided values of the symbol differ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpPoint {
    pub t: f64,
    /// `a(t - 0)`, the limit from smaller angles (mod 2π).
    pub left_limit: Complex64,
    /// `a(t + 0)`.
    pub right_limit: Complex64,
}

impl JumpPoint {
    pub fn size(&self) -> f64 {
        (self.left_limit - self.right_limit).norm()
    }
}

impl fmt::Display for JumpPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "jump at t={:.3}", self.t)
    }
}

/// A symbol on the unit circle given by trigonometric polynomials on
/// consecutive arcs.
///
/// Evaluating at a jump returns the right limit.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseSymbol {
    pieces: Vec<Piece>,
    jumps: Vec<JumpPoint>,
}

impl PiecewiseSymbol {
    /// Validates and normalizes `(start, end, value)` triples.
    ///
    /// Angles are reduced mod 2π. A piece whose end precedes its start wraps
    /// through `0` and is split there; the resulting boundary at `0` is
    /// removable.
    pub fn new(pieces: Vec<(f64, f64, CoefficientSequence)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Empty);
        }
        let mut arcs = Vec::with_capacity(pieces.len() + 1);
        for (start, end, value) in pieces {
            for a in [start, end] {
                if !a.is_finite() {
                    return Err(Error::InvalidAngle(a));
                }
            }
            let mut span = end - start;
            if span <= ANGLE_SLACK {
                span += TAU;
            }
            if span > TAU + ANGLE_SLACK || span <= ANGLE_SLACK {
                return Err(Error::Overlap(format!(
                    "piece [{start}, {end}] has invalid length"
                )));
            }
            let mut s = normalize_angle(start);
            if TAU - s <= ANGLE_SLACK {
                s = 0.0;
            }
            let e = s + span;
            if e > TAU + ANGLE_SLACK {
                arcs.push(Piece {
                    start: s,
                    end: TAU,
                    value: value.clone(),
                });
                arcs.push(Piece {
                    start: 0.0,
                    end: e - TAU,
                    value,
                });
            } else {
                arcs.push(Piece {
                    start: s,
                    end: e.min(TAU),
                    value,
                });
            }
        }
        arcs.sort_by(|a, b| a.start.total_cmp(&b.start));

        if arcs[0].start > ANGLE_SLACK {
            return Err(Error::Overlap(format!("gap before {}", arcs[0].start)));
        }
        arcs[0].start = 0.0;
        for i in 1..arcs.len() {
            let prev_end = arcs[i - 1].end;
            let start = arcs[i].start;
            if prev_end > start + ANGLE_SLACK {
                return Err(Error::Overlap(format!("pieces overlap at {start}")));
            }
            if prev_end < start - ANGLE_SLACK {
                return Err(Error::Overlap(format!(
                    "gap between {prev_end} and {start}"
                )));
            }
            arcs[i].start = prev_end;
        }
        let last = arcs.len() - 1;
        if (arcs[last].end - TAU).abs() > ANGLE_SLACK {
            return Err(Error::Overlap(format!("gap after {}", arcs[last].end)));
        }
        arcs[last].end = TAU;
        if let Some(p) = arcs.iter().find(|p| p.length() <= ANGLE_SLACK) {
            return Err(Error::Overlap(format!("empty piece at {}", p.start)));
        }

        let jumps = classify_boundaries(&arcs);
        Ok(Self {
            pieces: arcs,
            jumps,
        })
    }

    /// Single-piece symbol with the given trigonometric polynomial.
    pub fn trig_polynomial(value: CoefficientSequence) -> Self {
        Self::new(vec![(0.0, TAU, value)]).expect("one full piece is a valid partition")
    }

    pub fn constant(c: Complex64) -> Self {
        Self::trig_polynomial(CoefficientSequence::constant(c))
    }

    /// `+1` on `[0, π)`, `-1` on `[π, 2π)`.
    pub fn sign() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::new(vec![
            (
                0.0,
                std::f64::consts::PI,
                CoefficientSequence::constant(one),
            ),
            (
                std::f64::consts::PI,
                TAU,
                CoefficientSequence::constant(-one),
            ),
        ])
        .expect("two half circles partition the circle")
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn jumps(&self) -> &[JumpPoint] {
        &self.jumps
    }

    pub fn has_jumps(&self) -> bool {
        !self.jumps.is_empty()
    }

    pub fn is_single_piece(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Largest `|k|` appearing in any piece.
    pub fn max_frequency(&self) -> u64 {
        self.pieces
            .iter()
            .map(|p| p.value.max_frequency())
            .max()
            .unwrap_or(0)
    }

    fn piece_index(&self, t: f64) -> usize {
        let t = normalize_angle(t);
        self.pieces
            .partition_point(|p| p.start <= t)
            .saturating_sub(1)
    }

    fn boundary_index(&self, t: f64) -> Option<usize> {
        let t = normalize_angle(t);
        self.pieces.iter().position(|p| {
            let d = (p.start - t).abs();
            d <= 1e-12 || TAU - d <= 1e-12
        })
    }

    /// Value at `t`; the right limit at a jump.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        let t = normalize_angle(t);
        self.pieces[self.piece_index(t)].eval(t)
    }

    /// `(a(t - 0), a(t + 0))`; both entries are equal away from jumps.
    pub fn one_sided_limits(&self, t: f64) -> (Complex64, Complex64) {
        match self.boundary_index(t) {
            Some(i) => {
                let b = self.pieces[i].start;
                match self.jumps.iter().find(|j| j.t == b) {
                    Some(j) => (j.left_limit, j.right_limit),
                    None => {
                        let v = self.pieces[i].eval(b);
                        (v, v)
                    }
                }
            }
            None => {
                let v = self.evaluate(t);
                (v, v)
            }
        }
    }

    /// `a_k = (1/2π) ∫ a(e^{iθ}) e^{-ikθ} dθ` for `k ∈ [k_min, k_max]`.
    pub fn fourier_coefficients(&self, k_min: i64, k_max: i64) -> CoefficientSequence {
        self.fourier_coefficients_with(k_min, k_max, Execution::default())
    }

    pub fn fourier_coefficients_with(
        &self,
        k_min: i64,
        k_max: i64,
        exec: Execution,
    ) -> CoefficientSequence {
        if k_max < k_min {
            return CoefficientSequence::new(k_min, Vec::new());
        }
        let count = (k_max - k_min + 1) as usize;
        let coeffs = exec.map_range(0..count, |i| self.fourier_coefficient(k_min + i as i64));
        CoefficientSequence::new(k_min, coeffs)
    }

    fn fourier_coefficient(&self, k: i64) -> Complex64 {
        let mut total = ZERO;
        for piece in &self.pieces {
            if piece.is_full_circle() {
                total += piece.value.get(k);
                continue;
            }
            for (m, c) in piece.value.iter() {
                if c == ZERO {
                    continue;
                }
                total += c * arc_integral(m - k, piece.start, piece.end) / TAU;
            }
        }
        total
    }

    /// Applies `f` to every piece's coefficients and re-derives the jumps.
    pub fn map_pieces(&self, f: impl Fn(&CoefficientSequence) -> CoefficientSequence) -> Self {
        let pieces: Vec<Piece> = self
            .pieces
            .iter()
            .map(|p| Piece {
                start: p.start,
                end: p.end,
                value: f(&p.value),
            })
            .collect();
        let jumps = classify_boundaries(&pieces);
        Self { pieces, jumps }
    }

    /// The symbol `a - λ`.
    pub fn shifted(&self, lambda: Complex64) -> Self {
        self.map_pieces(|v| v.plus_constant(-lambda))
    }

    /// The symbol `c · a`.
    pub fn scaled(&self, factor: Complex64) -> Self {
        self.map_pieces(|v| v.scaled(factor))
    }

    /// The symbol `conj(a)`.
    pub fn conjugate(&self) -> Self {
        self.map_pieces(CoefficientSequence::conjugate)
    }
}

/// `∫_s^e e^{ijθ} dθ`.
fn arc_integral(j: i64, s: f64, e: f64) -> Complex64 {
    if j == 0 {
        Complex64::new(e - s, 0.0)
    } else {
        let jf = j as f64;
        (Complex64::cis(jf * e) - Complex64::cis(jf * s)) / Complex64::new(0.0, jf)
    }
}

fn classify_boundaries(pieces: &[Piece]) -> Vec<JumpPoint> {
    let n = pieces.len();
    (0..n)
        .filter_map(|i| {
            let prev = &pieces[(i + n - 1) % n];
            let cur = &pieces[i];
            let t = cur.start;
            let left = prev.eval(if i == 0 { prev.end } else { t });
            let right = cur.eval(t);
            ((left - right).norm() > JUMP_TOLERANCE).then_some(JumpPoint {
                t,
                left_limit: left,
                right_limit: right,
            })
        })
        .collect()
}
