//! Central tolerance and default constants.
//!
//! Every threshold used by the library is named here so that nothing is an
//! ad-hoc magic number at a call site.

/// Series division and dilatation denominators below this are singular.
pub const EPS_DIV: f64 = 1e-12;

/// Relative convergence tolerance for sup-type estimates (grid + refinement).
pub const TOL_SUP: f64 = 1e-3;

/// Absolute slack accepted by inequality checks.
pub const TOL_CHECK: f64 = 1e-6;

/// Truncation-tail budget: |c_N| r^N r/(1-r) must stay below this for a
/// radius to be trusted.
pub const TAIL_TOL: f64 = 1e-8;

/// Default truncation order for ingested coefficient data.
pub const DEFAULT_ORDER: usize = 256;

/// Default evaluation radius for closed-form-backed fixtures.
pub const DEFAULT_RMAX: f64 = 0.999;

/// Hard cap on any evaluation radius; the open disk is never touched at 1.
pub const MAX_RADIUS: f64 = 0.999_999;

/// Negative-power integral means require at least this modulus on the circle.
pub const NEG_P_MIN_MODULUS: f64 = 1e-6;

/// Absolute tolerance target for circle quadrature (integral means).
pub const MEAN_ABS_TOL: f64 = 1e-7;

/// Absolute tolerance for adaptive quadrature on radial integrals.
pub const QUAD_ABS_TOL: f64 = 1e-8;

/// Margin used by the boundedness-criterion verdict: the trajectory must sit
/// below -2 by at least this much before the criterion is reported.
pub const BOUNDEDNESS_MARGIN: f64 = 0.1;
