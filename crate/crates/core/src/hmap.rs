//! The harmonic-mapping data model `f = h + conj(g)` and its pointwise
//! differential invariants, plus the affine and normalizing transforms.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::series::ComplexSeries;
use crate::sup::{polar_sup, PolarObjective, RingBest};
use crate::tol::{EPS_DIV, TOL_SUP};

/// Polar sampling grid for sup-type estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_radial: usize,
    pub n_angular: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_radial: 64,
            n_angular: 256,
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n_radial, self.n_angular)
    }
}

impl FromStr for GridSpec {
    type Err = CoreError;

    /// Parses the `NRxNA` form used by the CLI, e.g. `64x256`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CoreError::InvalidParameter(format!("grid must look like 64x256, got {s:?}"));
        let (nr, na) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let n_radial = nr.trim().parse().map_err(|_| bad())?;
        let n_angular = na.trim().parse().map_err(|_| bad())?;
        if n_radial == 0 || n_angular == 0 {
            return Err(bad());
        }
        Ok(GridSpec { n_radial, n_angular })
    }
}

/// Pointwise differential data of a harmonic map.
///
/// `lambda` is the signed `|f_z| - |f_zbar|`; it is nonnegative exactly where
/// the map is sense-preserving, and `jacobian = lambda * big_lambda` either way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseInvariants {
    /// `f_z = h'(z)`.
    pub f_z: Complex64,
    /// `f_zbar = conj(g'(z))`.
    pub f_zbar: Complex64,
    /// `lambda_f = |f_z| - |f_zbar|`.
    pub lambda: f64,
    /// `Lambda_f = |f_z| + |f_zbar|`.
    pub big_lambda: f64,
    /// `J_f = |f_z|^2 - |f_zbar|^2`.
    pub jacobian: f64,
    /// Dilatation `g'/h'`; `None` where `|h'|` is below the division floor.
    pub dilatation: Option<Complex64>,
}

/// Outcome of the dilatation sup sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum QcEstimate {
    /// Jacobian positive at every sample; `value` is the sup of `|omega|`.
    SensePreserving { value: f64, converged: bool },
    /// Jacobian dipped to or below zero at the witness point.
    NotSensePreserving { witness: [f64; 2] },
}

/// A planar harmonic mapping `f = h + conj(g)` held as truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    h: ComplexSeries,
    g: ComplexSeries,
    normalized: bool,
}

impl HarmonicMap {
    /// Pairs the analytic and co-analytic parts; the normalization flag is
    /// recomputed from the exact coefficient conditions
    /// `h(0) = g(0) = 0, h'(0) = 1`.
    pub fn new(h: ComplexSeries, g: ComplexSeries) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let normalized = h.coeff(0) == zero && g.coeff(0) == zero && h.coeff(1) == one;
        HarmonicMap { h, g, normalized }
    }

    /// Analytic map `h` viewed as a harmonic map with vanishing co-analytic part.
    pub fn analytic(h: ComplexSeries) -> Self {
        let g = ComplexSeries::zero(0);
        HarmonicMap::new(h, g)
    }

    pub fn h(&self) -> &ComplexSeries {
        &self.h
    }

    pub fn g(&self) -> &ComplexSeries {
        &self.g
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    /// The co-analytic linear coefficient `b_1 = g'(0)`.
    pub fn b1(&self) -> Complex64 {
        self.g.coeff(1)
    }

    /// `f(z) = h(z) + conj(g(z))` for `|z| <= r_max`.
    pub fn eval(&self, z: Complex64, r_max: f64) -> Result<Complex64> {
        check_radius(z, r_max)?;
        Ok(self.h.eval(z)? + self.g.eval(z)?.conj())
    }

    /// Pointwise invariants at `z`.
    pub fn invariants_at(&self, z: Complex64, r_max: f64) -> Result<PointwiseInvariants> {
        check_radius(z, r_max)?;
        let f_z = self.h.derivative().eval(z)?;
        let g_prime = self.g.derivative().eval(z)?;
        Ok(invariants_from_derivatives(f_z, g_prime))
    }

    /// Sup of `|omega_f|` over the polar grid (with refinement) when the
    /// Jacobian is positive at every sample, else the sense-preservation flag.
    pub fn qc_constant_estimate(&self, r_max: f64, grid: GridSpec) -> Result<QcEstimate> {
        if !(0.0 < r_max && r_max < 1.0) {
            return Err(CoreError::InvalidParameter(format!(
                "r_max must lie in (0, 1), got {r_max}"
            )));
        }
        let h1 = self.h.derivative();
        let g1 = self.g.derivative();
        let objective = DilatationObjective {
            tails: [h1.tail_model(), g1.tail_model()],
            h1,
            g1,
        };
        match polar_sup(&objective, r_max, grid, TOL_SUP) {
            Ok(out) if out.value.is_finite() => Ok(QcEstimate::SensePreserving {
                value: out.value,
                converged: out.converged,
            }),
            Ok(_) => Err(CoreError::InvalidParameter(
                "no trusted samples below r_max; raise the truncation order".into(),
            )),
            Err(CoreError::NotSensePreserving { location }) => {
                Ok(QcEstimate::NotSensePreserving { witness: location })
            }
            Err(e) => Err(e),
        }
    }

    /// The affine shear `f + c conj(f)`: analytic part `h + c g`,
    /// co-analytic part `g + conj(c) h`.
    pub fn affine_shear(&self, c: Complex64) -> Result<HarmonicMap> {
        if c.norm() >= 1.0 {
            return Err(CoreError::AffineFactorTooLarge { c: c.norm() });
        }
        let h = self.h.add_scaled(c, &self.g);
        let g = self.g.add_scaled(c.conj(), &self.h);
        Ok(HarmonicMap::new(h, g))
    }

    /// Coefficient-wise `h + e^{i theta} g`.
    pub fn theta_slice(&self, theta: f64) -> ComplexSeries {
        self.h.add_scaled(Complex64::from_polar(1.0, theta), &self.g)
    }

    /// Affine renormalization `(f - conj(b_1 f)) / (1 - |b_1|^2)`, which
    /// kills the co-analytic linear coefficient.
    pub fn normalize_to_sh0(&self) -> Result<HarmonicMap> {
        let b1 = self.b1();
        let b1_norm = b1.norm();
        if b1_norm >= 1.0 {
            return Err(CoreError::AffineNormalizationSingular { b1: b1_norm });
        }
        let scale = Complex64::new(1.0 / (1.0 - b1.norm_sqr()), 0.0);
        let h = self.h.add_scaled(-b1.conj(), &self.g).scale(scale);
        let g = self.g.add_scaled(-b1, &self.h).scale(scale);
        Ok(HarmonicMap::new(h, g))
    }

    /// `A_2(xi) = 1/2 ((1 - |xi|^2) h''(xi)/h'(xi) - 2 conj(xi))` for the
    /// analytic part.
    pub fn second_coeff_functional(&self, xi: Complex64, r_max: f64) -> Result<Complex64> {
        check_radius(xi, r_max)?;
        let h1 = self.h.derivative();
        let d1 = h1.eval(xi)?;
        if d1.norm() <= EPS_DIV {
            return Err(CoreError::DerivativeVanishes {
                location: [xi.re, xi.im],
            });
        }
        let d2 = h1.derivative().eval(xi)?;
        Ok(0.5 * ((1.0 - xi.norm_sqr()) * d2 / d1 - 2.0 * xi.conj()))
    }

    /// The rotation `conj(mu) f(mu z)` for unimodular `mu`; preserves
    /// normalization and every modulus-level statistic.
    pub fn rotate(&self, mu: Complex64) -> HarmonicMap {
        let mut h = Vec::with_capacity(self.h.order() + 1);
        let mut power = mu.conj(); // conj(mu) mu^0
        for n in 0..=self.h.order() {
            h.push(self.h.coeff(n) * power);
            power *= mu;
        }
        let mut g = Vec::with_capacity(self.g.order() + 1);
        let mut power = mu; // mu^{n+1} with n = 0
        for n in 0..=self.g.order() {
            g.push(self.g.coeff(n) * power);
            power *= mu;
        }
        HarmonicMap::new(
            ComplexSeries::new(h).expect("rotation keeps coefficients finite"),
            ComplexSeries::new(g).expect("rotation keeps coefficients finite"),
        )
    }

    /// Worst trusted radius over the parts and their first two derivatives.
    pub fn trusted_radius(&self, tail_tol: f64) -> f64 {
        let mut r = f64::INFINITY;
        for s in [&self.h, &self.g] {
            let d1 = s.derivative();
            let d2 = d1.derivative();
            r = r
                .min(s.trusted_radius(tail_tol))
                .min(d1.trusted_radius(tail_tol))
                .min(d2.trusted_radius(tail_tol));
        }
        r
    }
}

pub(crate) fn check_radius(z: Complex64, r_max: f64) -> Result<()> {
    let modulus = z.norm();
    if !(0.0 < r_max && r_max < 1.0) {
        return Err(CoreError::InvalidParameter(format!(
            "r_max must lie in (0, 1), got {r_max}"
        )));
    }
    if modulus > r_max {
        return Err(CoreError::OutsideTrustedRadius { modulus, r_max });
    }
    Ok(())
}

pub(crate) fn invariants_from_derivatives(f_z: Complex64, g_prime: Complex64) -> PointwiseInvariants {
    let a = f_z.norm();
    let b = g_prime.norm();
    PointwiseInvariants {
        f_z,
        f_zbar: g_prime.conj(),
        lambda: a - b,
        big_lambda: a + b,
        jacobian: a * a - b * b,
        dilatation: if a > EPS_DIV { Some(g_prime / f_z) } else { None },
    }
}

struct DilatationObjective {
    h1: ComplexSeries,
    g1: ComplexSeries,
    tails: [crate::series::TailModel; 2],
}

impl DilatationObjective {
    fn value(&self, z: Complex64, r: f64, h1: Complex64, g1: Complex64) -> Result<Option<f64>> {
        let (a, b) = (h1.norm(), g1.norm());
        // skip samples dominated by truncation noise
        if self.tails[0].at(r) + self.tails[1].at(r) > crate::tol::TAIL_TOL * (a + b) {
            return Ok(None);
        }
        if a * a - b * b <= 0.0 {
            return Err(CoreError::NotSensePreserving {
                location: [z.re, z.im],
            });
        }
        Ok(Some(b / a))
    }
}

impl PolarObjective for DilatationObjective {
    fn phases(&self) -> usize {
        1
    }

    fn ring_best(&self, r: f64, n_angular: usize) -> Result<RingBest> {
        let h_vals = self.h1.circle_values(r, n_angular);
        let g_vals = self.g1.circle_values(r, n_angular);
        let mut best = RingBest {
            value: f64::NEG_INFINITY,
            angle_index: 0,
            phase_index: 0,
        };
        for k in 0..n_angular {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n_angular as f64;
            let z = Complex64::from_polar(r, angle);
            if let Some(v) = self.value(z, r, h_vals[k], g_vals[k])? {
                if v > best.value {
                    best.value = v;
                    best.angle_index = k;
                }
            }
        }
        Ok(best)
    }

    fn at(&self, r: f64, angle: f64, _phase: f64) -> Result<f64> {
        let z = Complex64::from_polar(r, angle);
        let v = self.value(z, r, self.h1.eval(z)?, self.g1.eval(z)?)?;
        Ok(v.unwrap_or(f64::NEG_INFINITY))
    }
}
