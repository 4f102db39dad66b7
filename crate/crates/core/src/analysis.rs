//! Integral means, Hardy/Bloch diagnostics, the quasiconformal integral-means
//! inequality, and the growth-exponent estimators.
//!
//! Limsup-type quantities (growth exponents, boundedness verdicts) are
//! reported as finite-window fits with residuals, never as booleans about
//! limits: the window and the residual are part of the answer.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::hmap::{check_radius, GridSpec, HarmonicMap};
use crate::preschwarzian::NormEstimate;
use crate::quad::{golden_max, integrate_real, next_pow2};
use crate::report::{CheckRecord, VerificationReport};
use crate::series::{ComplexSeries, TailModel};
use crate::sup::{polar_sup, PolarObjective, RingBest};
use crate::tol::{MEAN_ABS_TOL, NEG_P_MIN_MODULUS, TAIL_TOL, TOL_SUP};

/// A log-log regression result.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub window: FitWindow,
    pub residual_rms: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "kind")]
pub enum FitWindow {
    Radial { r_lo: f64, r_hi: f64 },
    Index { n_lo: usize, n_hi: usize },
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let e = y - slope * x - intercept;
        ss += e * e;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Node count that resolves circle integrands whose features live at the
/// scale `1 - r`.
fn circle_nodes(r: f64) -> usize {
    let wanted = (12.0 / (1.0 - r)).ceil() as usize;
    next_pow2(wanted.max(1024)).min(1 << 22)
}

fn moduli_of_map(f: &HarmonicMap, r: f64, m: usize) -> Vec<f64> {
    let h = f.h().circle_values(r, m);
    let g = f.g().circle_values(r, m);
    h.into_iter()
        .zip(g)
        .map(|(hv, gv)| (hv + gv.conj()).norm())
        .collect()
}

fn moduli_of_series(s: &ComplexSeries, r: f64, m: usize) -> Vec<f64> {
    s.circle_values(r, m).into_iter().map(|v| v.norm()).collect()
}

fn mean_power(moduli: &[f64], p: f64) -> Result<f64> {
    if p < 0.0 {
        let min = moduli.iter().cloned().fold(f64::INFINITY, f64::min);
        if min <= NEG_P_MIN_MODULUS {
            return Err(CoreError::MeanUndefined { min_modulus: min });
        }
    }
    Ok(moduli.iter().map(|&v| v.powf(p)).sum::<f64>() / moduli.len() as f64)
}

fn mean_with_doubling<V: Fn(usize) -> Vec<f64>>(values: V, r: f64, p: f64) -> Result<f64> {
    let m = circle_nodes(r);
    let coarse = mean_power(&values(m), p)?;
    let fine = mean_power(&values(2 * m), p)?;
    debug_assert!(
        (fine - coarse).abs() <= 1e3 * MEAN_ABS_TOL * fine.abs().max(1.0),
        "circle mean failed to converge: {coarse} vs {fine}"
    );
    Ok(fine)
}

/// `I_p(r, f) = (2 pi)^{-1} int |f(r e^{i t})|^p dt` by trapezoidal
/// quadrature (equispaced circle mean) with one doubling refinement;
/// absolute tolerance target `MEAN_ABS_TOL`.
pub fn integral_mean(f: &HarmonicMap, p: f64, r: f64, r_max: f64) -> Result<f64> {
    check_radius(Complex64::new(r, 0.0), r_max)?;
    mean_with_doubling(|m| moduli_of_map(f, r, m), r, p)
}

/// Integral mean of an analytic function held as a series.
pub fn integral_mean_series(s: &ComplexSeries, p: f64, r: f64, r_max: f64) -> Result<f64> {
    check_radius(Complex64::new(r, 0.0), r_max)?;
    mean_with_doubling(|m| moduli_of_series(s, r, m), r, p)
}

/// `M(r, f) = max_theta |f(r e^{i theta})|` from circle samples plus
/// golden-section refinement around the best angle.
pub fn max_modulus(f: &HarmonicMap, r: f64, r_max: f64) -> Result<f64> {
    check_radius(Complex64::new(r, 0.0), r_max)?;
    if r == 0.0 {
        return Ok(f.eval(Complex64::new(0.0, 0.0), r_max)?.norm());
    }
    let m = circle_nodes(r).min(1 << 18);
    let moduli = moduli_of_map(f, r, m);
    let (best_index, best) = moduli
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, &v)| (k, v))
        .expect("nonempty circle");
    let da = 2.0 * std::f64::consts::PI / m as f64;
    let center = best_index as f64 * da;
    let (_, refined) = golden_max(
        |angle| Ok(f.eval(Complex64::from_polar(r, angle), r_max)?.norm()),
        center - da,
        center + da,
        1e-12,
    )?;
    Ok(refined.max(best))
}

/// Verifies the integral-means bound for k-quasiconformal univalent
/// normalized maps,
/// `I_p(r) <= [2 (1 + k^2)(p + 1) / (1 - k^2)] int_0^r M(rho)^p rho^{-1} drho`,
/// reporting one margin per radius. The radial integral substitutes the
/// linear limit `M(rho) ~ rho M(delta)/delta` below `delta = 1e-4` and
/// integrates the rest in log-radius.
pub fn qc_means_check(
    f: &HarmonicMap,
    k: f64,
    p: f64,
    r_list: &[f64],
    r_max: f64,
) -> Result<VerificationReport> {
    if p <= 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "integral-means exponent must be positive, got {p}"
        )));
    }
    if !(0.0..1.0).contains(&k) {
        return Err(CoreError::InvalidParameter(format!(
            "quasiconformality constant must lie in [0, 1), got {k}"
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    if f.h().coeff(0) != zero || f.g().coeff(0) != zero {
        return Err(CoreError::InvalidParameter(
            "map must be normalized: h(0) = g(0) = 0".into(),
        ));
    }
    let constant = 2.0 * (1.0 + k * k) * (p + 1.0) / (1.0 - k * k);
    let delta = 1e-4;
    let slope = max_modulus(f, delta, r_max)? / delta;
    let head = (slope * delta).powf(p) / p;
    let mut report = VerificationReport::new();
    for &r in r_list {
        let lhs = integral_mean(f, p, r, r_max)?;
        let tail = integrate_real(
            |u| Ok(max_modulus(f, u.exp(), r_max)?.powf(p)),
            delta.ln(),
            r.ln(),
            32,
        )?;
        let rhs = constant * (head + tail);
        report.push(CheckRecord::leq(
            "qc-means",
            format!("p={p},r={r}"),
            lhs,
            rhs,
            vec![[r, 0.0]],
        ));
    }
    Ok(report)
}

struct BlochObjective {
    h1: ComplexSeries,
    g1: ComplexSeries,
    tails: [TailModel; 2],
}

impl BlochObjective {
    fn value(&self, r: f64, a: f64, b: f64) -> Option<f64> {
        let tail = self.tails[0].at(r) + self.tails[1].at(r);
        if tail > TAIL_TOL * (a + b) {
            return None;
        }
        Some((1.0 - r * r) * (a + b))
    }
}

impl PolarObjective for BlochObjective {
    fn phases(&self) -> usize {
        1
    }

    fn ring_best(&self, r: f64, n_angular: usize) -> Result<RingBest> {
        let h = self.h1.circle_values(r, n_angular);
        let g = self.g1.circle_values(r, n_angular);
        let mut best = RingBest {
            value: f64::NEG_INFINITY,
            angle_index: 0,
            phase_index: 0,
        };
        for k in 0..n_angular {
            if let Some(v) = self.value(r, h[k].norm(), g[k].norm()) {
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
        let a = self.h1.eval(z)?.norm();
        let b = self.g1.eval(z)?.norm();
        Ok(self.value(r, a, b).unwrap_or(f64::NEG_INFINITY))
    }
}

/// Bloch seminorm `sup (1 - |z|^2)(|h'(z)| + |g'(z)|)`, estimated with the
/// same grid-plus-refinement protocol as the pre-Schwarzian norm.
pub fn bloch_seminorm(f: &HarmonicMap, r_max: f64, grid: GridSpec) -> Result<NormEstimate> {
    let h1 = f.h().derivative();
    let g1 = f.g().derivative();
    let objective = BlochObjective {
        tails: [h1.tail_model(), g1.tail_model()],
        h1,
        g1,
    };
    let out = polar_sup(&objective, r_max, grid, TOL_SUP)?;
    if !out.value.is_finite() {
        return Err(CoreError::InvalidParameter(
            "no trusted samples below r_max; raise the truncation order".into(),
        ));
    }
    Ok(NormEstimate {
        value: out.value,
        r_max,
        grid,
        theta_samples: 0,
        refinement_passes: out.passes,
        converged: out.converged,
        location: {
            let z = Complex64::from_polar(out.r, out.angle);
            [z.re, z.im]
        },
        theta: 0.0,
    })
}

/// `alpha(lambda) = (sqrt(1 + 4 lambda^2) - 1) / 2`.
pub fn alpha(lambda: f64) -> f64 {
    0.5 * ((1.0 + 4.0 * lambda * lambda).sqrt() - 1.0)
}

/// Fitted growth exponent of `I_p(r, h' + e^{i theta} g')` against
/// `log 1/(1-r)` over the given radii (at least five).
pub fn beta_estimate(
    f: &HarmonicMap,
    theta: f64,
    p: f64,
    r_window: &[f64],
    r_max: f64,
) -> Result<ExponentFit> {
    if r_window.len() < 5 {
        return Err(CoreError::InvalidParameter(format!(
            "beta fit needs at least 5 radii, got {}",
            r_window.len()
        )));
    }
    let slice = f.theta_slice(theta).derivative();
    let mut xs = Vec::with_capacity(r_window.len());
    let mut ys = Vec::with_capacity(r_window.len());
    for &r in r_window {
        let mean = integral_mean_series(&slice, p, r, r_max)?;
        xs.push((1.0 / (1.0 - r)).ln());
        ys.push(mean.ln());
    }
    let (slope, intercept, residual_rms) = least_squares(&xs, &ys);
    Ok(ExponentFit {
        slope,
        intercept,
        window: FitWindow::Radial {
            r_lo: r_window[0],
            r_hi: r_window[r_window.len() - 1],
        },
        residual_rms,
    })
}

/// Fitted coefficient-growth exponent: slope of `log n(|a_n| + |b_n|)`
/// against `log n` over `n_lo..=n_hi`, skipping vanishing coefficients.
pub fn gamma_estimate(f: &HarmonicMap, n_lo: usize, n_hi: usize) -> Result<ExponentFit> {
    if n_lo < 1 || n_lo >= n_hi {
        return Err(CoreError::InvalidParameter(format!(
            "gamma window must satisfy 1 <= n_lo < n_hi, got [{n_lo}, {n_hi}]"
        )));
    }
    let available = f.h().order().max(f.g().order());
    if n_hi > available {
        return Err(CoreError::InvalidParameter(format!(
            "gamma window reaches n = {n_hi} but coefficients stop at {available}"
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in n_lo..=n_hi {
        let size = f.h().coeff(n).norm() + f.g().coeff(n).norm();
        if size == 0.0 {
            continue;
        }
        xs.push((n as f64).ln());
        ys.push((n as f64 * size).ln());
    }
    if xs.len() < 2 {
        return Err(CoreError::DegenerateTail);
    }
    let (slope, intercept, residual_rms) = least_squares(&xs, &ys);
    Ok(ExponentFit {
        slope,
        intercept,
        window: FitWindow::Index { n_lo, n_hi },
        residual_rms,
    })
}

/// Hardy-space admission thresholds for the class with sup-norm `2 lambda`.
#[derive(Debug, Clone, Serialize)]
pub struct HardyThresholds {
    /// Exponent bound for k-quasiconformal univalent members: `1/(lambda-1)`.
    pub p_qc: f64,
    /// Exponent bound for the whole class: `1/(lambda^2-1)`.
    pub p_general: f64,
    pub note: Option<String>,
}

/// Threshold arithmetic; both bounds are infinite at `lambda = 1` and for
/// `lambda < 1` (where members are bounded outright).
pub fn hardy_thresholds(lambda: f64) -> Result<HardyThresholds> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "lambda must be nonnegative, got {lambda}"
        )));
    }
    if lambda > 1.0 {
        Ok(HardyThresholds {
            p_qc: 1.0 / (lambda - 1.0),
            p_general: 1.0 / (lambda * lambda - 1.0),
            note: None,
        })
    } else if lambda == 1.0 {
        Ok(HardyThresholds {
            p_qc: f64::INFINITY,
            p_general: f64::INFINITY,
            note: Some("thresholds interpreted as infinity at lambda = 1".into()),
        })
    } else {
        Ok(HardyThresholds {
            p_qc: f64::INFINITY,
            p_general: f64::INFINITY,
            note: Some("maps with this bound are bounded; every exponent is admissible".into()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    BoundedTrend,
    Growing,
}

/// Windowed membership probe for the harmonic Hardy space.
#[derive(Debug, Clone, Serialize)]
pub struct HardyProbe {
    /// `(r, M_p(r, f))` samples.
    pub samples: Vec<(f64, f64)>,
    /// `BoundedTrend` when the last three samples rise by less than 1% total.
    pub verdict: Trend,
    /// Fitted growth exponent of `I_p(r, f)` against `log 1/(1-r)`.
    pub growth: ExponentFit,
}

pub fn hardy_membership_probe(
    f: &HarmonicMap,
    p: f64,
    r_window: &[f64],
    r_max: f64,
) -> Result<HardyProbe> {
    if p <= 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "membership probe needs p > 0, got {p}"
        )));
    }
    if r_window.len() < 3 {
        return Err(CoreError::InvalidParameter(
            "membership probe needs at least 3 radii".into(),
        ));
    }
    let mut samples = Vec::with_capacity(r_window.len());
    let mut xs = Vec::with_capacity(r_window.len());
    let mut ys = Vec::with_capacity(r_window.len());
    for &r in r_window {
        let mean = integral_mean(f, p, r, r_max)?;
        samples.push((r, mean.powf(1.0 / p)));
        xs.push((1.0 / (1.0 - r)).ln());
        ys.push(mean.ln());
    }
    let (slope, intercept, residual_rms) = least_squares(&xs, &ys);
    let tail = &samples[samples.len() - 3..];
    let relative_rise = (tail[2].1 - tail[0].1) / tail[0].1;
    Ok(HardyProbe {
        verdict: if relative_rise < 0.01 {
            Trend::BoundedTrend
        } else {
            Trend::Growing
        },
        growth: ExponentFit {
            slope,
            intercept,
            window: FitWindow::Radial {
                r_lo: r_window[0],
                r_hi: r_window[r_window.len() - 1],
            },
            residual_rms,
        },
        samples,
    })
}

/// Log-spaced radii in `1 - r`, inclusive on both ends.
pub fn log_spaced_radii(r_lo: f64, r_hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && r_lo < r_hi && r_hi < 1.0);
    let a = (1.0 - r_lo).ln();
    let b = (1.0 - r_hi).ln();
    (0..count)
        .map(|i| 1.0 - (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
