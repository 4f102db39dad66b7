use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// A series coefficient is NaN or infinite.
    NonFiniteCoefficient { index: usize },
    /// A series needs at least the constant coefficient.
    EmptySeries,
    /// Evaluation requested outside the open unit disk.
    OutsideDisk { modulus: f64 },
    /// Evaluation requested beyond the trusted truncation radius.
    OutsideTrustedRadius { modulus: f64, r_max: f64 },
    /// Series division with a near-zero leading denominator coefficient.
    DivisionSingular { leading: f64 },
    /// Affine normalization with |b1| >= 1.
    AffineNormalizationSingular { b1: f64 },
    /// Affine shear factor with |c| >= 1.
    AffineFactorTooLarge { c: f64 },
    /// Jacobian non-positive where sense-preservation was required.
    NotSensePreserving { location: [f64; 2] },
    /// h'(z) + e^{i theta} g'(z) vanished at a sampled point.
    SliceDerivativeVanishes { location: [f64; 2], theta: f64 },
    /// h'(z) vanished where a locally univalent analytic part was required.
    DerivativeVanishes { location: [f64; 2] },
    /// Negative-power integral mean with the modulus dipping to zero.
    MeanUndefined { min_modulus: f64 },
    /// Coefficient-growth fit over a window of all-zero coefficients.
    DegenerateTail,
    /// Catch-all for argument validation.
    InvalidParameter(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NonFiniteCoefficient { index } => {
                write!(f, "coefficient {index} is not finite")
            }
            CoreError::EmptySeries => write!(f, "series must have at least one coefficient"),
            CoreError::OutsideDisk { modulus } => {
                write!(f, "|z| = {modulus} lies outside the open unit disk")
            }
            CoreError::OutsideTrustedRadius { modulus, r_max } => {
                write!(f, "outside trusted radius: |z| = {modulus} > r_max = {r_max}")
            }
            CoreError::DivisionSingular { leading } => {
                write!(f, "series division singular: |den[0]| = {leading}")
            }
            CoreError::AffineNormalizationSingular { b1 } => {
                write!(f, "affine normalization singular: |b1| = {b1} >= 1")
            }
            CoreError::AffineFactorTooLarge { c } => {
                write!(f, "affine factor must satisfy |c| < 1, got |c| = {c}")
            }
            CoreError::NotSensePreserving { location } => {
                write!(
                    f,
                    "not sense-preserving: J <= 0 near z = {}+{}i",
                    location[0], location[1]
                )
            }
            CoreError::SliceDerivativeVanishes { location, theta } => {
                write!(
                    f,
                    "slice derivative vanishes: not locally univalent at sampled point z = {}+{}i, theta = {theta}",
                    location[0], location[1]
                )
            }
            CoreError::DerivativeVanishes { location } => {
                write!(
                    f,
                    "derivative vanishes; not locally univalent here (z = {}+{}i)",
                    location[0], location[1]
                )
            }
            CoreError::MeanUndefined { min_modulus } => {
                write!(f, "mean undefined (zero on circle): min |f| = {min_modulus}")
            }
            CoreError::DegenerateTail => {
                write!(f, "degenerate tail: all coefficients vanish in the fit window")
            }
            CoreError::InvalidParameter(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CoreError {}

pub type Result<T> = std::result::Result<T, CoreError>;
