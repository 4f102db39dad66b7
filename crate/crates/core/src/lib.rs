//! Numerical toolkit for planar harmonic mappings `f = h + conj(g)` on the
//! unit disk, held as truncated power series.
//!
//! The crate computes and verifies the quantitative theory of uniformly
//! locally univalent harmonic mappings:
//!
//! * pre-Schwarzian derivatives of theta-slices and their hyperbolic
//!   sup-norm ([`preschwarzian`]),
//! * certified univalence radii from a sup-norm bound ([`preschwarzian`]),
//! * the extremal family `H_lambda` with sharp distortion, growth, covering,
//!   Hoelder and boundedness checks ([`extremal`]),
//! * integral means, Hardy/Bloch diagnostics and coefficient-growth
//!   exponents ([`analysis`]),
//! * hyperbolic-disk geometry and Moebius pullbacks ([`hyperbolic`]),
//! * a named fixture corpus with provenance-tagged ground truth
//!   ([`fixtures`]).
//!
//! Sup-type quantities are certified from below (grid sampling plus
//! golden-section refinement) and carry convergence flags; limsup-type
//! quantities are reported as finite-window fits with residuals. All
//! operations are pure functions over immutable values.

pub mod analysis;
pub mod error;
pub mod extremal;
pub mod fixtures;
pub mod hmap;
pub mod hyperbolic;
pub mod io;
pub mod preschwarzian;
pub mod quad;
pub mod report;
pub mod series;
mod sup;
pub mod tol;

pub use error::{CoreError, Result};
pub use hmap::{GridSpec, HarmonicMap, PointwiseInvariants, QcEstimate};
pub use num_complex::Complex64;
pub use preschwarzian::{NormEstimate, UnivalenceCertificate};
pub use report::{CheckRecord, VerificationReport};
pub use series::ComplexSeries;
