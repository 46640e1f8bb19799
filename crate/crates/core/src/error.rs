use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a symbol needs at least one piece")]
    Empty,
    #[error("pieces do not partition the circle: {0}")]
    Overlap(String),
    #[error("angle {0} is not finite")]
    InvalidAngle(f64),
    #[error("size {size} is below the minimum {min}")]
    Size { size: usize, min: usize },
    #[error("sequence has nonzero coefficients at negative indices")]
    NotAnalytic,
    #[error("exponent p = {0} is outside the admissible range")]
    InvalidExponent(f64),
    #[error("grid of {grid} points is too coarse, need at least {required}")]
    GridTooCoarse { grid: usize, required: usize },
    #[error("radius {0} is outside [0, 1)")]
    InvalidRadius(f64),
    #[error("truncation at |k| <= {k_cut} leaves a tail bound {bound:e} above 1e-14")]
    Truncation { k_cut: usize, bound: f64 },
    #[error("point lies within {distance:e} of the curve")]
    TooClose { distance: f64 },
    #[error("curve is under-resolved: a sample step turns by {turn} radians")]
    UnderResolved { turn: f64 },
    #[error("winding number needs a closed curve")]
    OpenCurve,
    #[error("query point coincides with an arc endpoint")]
    Endpoint,
    #[error("arc endpoints coincide")]
    Degenerate,
    #[error("lambda in essential spectrum")]
    InSpectrum,
    #[error("symbol has {0} jump(s)")]
    HasJumps(usize),
    #[error("symbol is not a single trigonometric polynomial")]
    NotTrigPolynomial,
    #[error("interval length {length} is outside [1, {n}]")]
    Length { length: usize, n: usize },
    #[error("delta {0} is outside (0, 2π]")]
    Delta(f64),
    #[error("grid size {0} must be a power of two and at least 8")]
    InvalidGrid(usize),
    #[error("{0}")]
    InvalidLadder(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}
