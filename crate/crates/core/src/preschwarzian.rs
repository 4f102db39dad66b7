//! The pre-Schwarzian of theta-slices, its hyperbolic sup-norm, the
//! hyperbolic-Lipschitz characterization, the Moebius chain-rule identity,
//! and certified univalence radii.
//!
//! The sup-norm in play is
//! `sup_{z, theta} (1 - |z|^2) |(h'' + e^{i theta} g'') / (h' + e^{i theta} g')|`,
//! estimated from below on a polar grid with golden-section refinement.
//! Samples where the truncation tail is not negligible against the evaluated
//! numerator or denominator are skipped: a quotient of two noisy partial sums
//! near the boundary certifies nothing.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::hmap::{check_radius, GridSpec, HarmonicMap};
use crate::hyperbolic::{hyperbolic_distance, MoebiusPullback};
use crate::quad::{golden_max, integrate_segment};
use crate::report::{CheckRecord, VerificationReport};
use crate::series::{ComplexSeries, TailModel};
use crate::sup::{polar_sup, PolarObjective, RingBest};
use crate::tol::{EPS_DIV, TAIL_TOL, TOL_SUP};

/// Lower estimate of a sup-type functional with sampling provenance.
#[derive(Debug, Clone, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub r_max: f64,
    pub grid: GridSpec,
    pub theta_samples: usize,
    pub refinement_passes: usize,
    /// Last refinement pass improved the value by less than `TOL_SUP` (relative).
    pub converged: bool,
    /// Best sample as `[re, im]`.
    pub location: [f64; 2],
    /// Best phase.
    pub theta: f64,
}

/// Certified hyperbolic univalence radius derived from a sup-norm bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UnivalenceCertificate {
    /// The input bound on the pre-Schwarzian sup-norm.
    pub lambda_norm: f64,
    /// Euclidean pullback scale at which the certificate was evaluated.
    pub r_star: f64,
    /// `k0 = lambda_norm + 2 R / (1 - R)`.
    pub k0: f64,
    /// Certified hyperbolic radius.
    pub rho0: f64,
}

impl UnivalenceCertificate {
    pub fn tanh_rho0(&self) -> f64 {
        self.rho0.tanh()
    }
}

/// `(2 - sqrt(3)) 3^{-k0/2} / 2`: Euclidean univalence scale after the
/// Noshiro bound and the convexity radius.
fn euclidean_scale(k0: f64) -> f64 {
    (2.0 - 3.0_f64.sqrt()) * 3.0_f64.powf(-0.5 * k0) / 2.0
}

/// Certificate for one explicit pullback scale `r` in (0, 1).
pub fn univalence_certificate_at(lambda_norm: f64, r: f64) -> UnivalenceCertificate {
    let k0 = lambda_norm + 2.0 * r / (1.0 - r);
    let tanh_rho0 = euclidean_scale(k0).min(1.0) * r;
    UnivalenceCertificate {
        lambda_norm,
        r_star: r,
        k0,
        rho0: tanh_rho0.atanh(),
    }
}

/// Best certificate over the pullback scale, by golden-section search with
/// tolerance 1e-6 in `R`.
pub fn univalence_radius(lambda_norm: f64) -> UnivalenceCertificate {
    let objective = |r: f64| -> Result<f64> {
        let k0 = lambda_norm + 2.0 * r / (1.0 - r);
        Ok(euclidean_scale(k0).min(1.0) * r)
    };
    let (r_star, _) =
        golden_max(objective, 1e-9, 1.0 - 1e-9, 1e-6).expect("objective is total on (0,1)");
    univalence_certificate_at(lambda_norm, r_star)
}

/// Pointwise pre-Schwarzian of the theta-slice,
/// `(h''(z) + e^{i theta} g''(z)) / (h'(z) + e^{i theta} g'(z))`.
pub fn preschwarzian_at(
    f: &HarmonicMap,
    theta: f64,
    z: Complex64,
    r_max: f64,
) -> Result<Complex64> {
    check_radius(z, r_max)?;
    let phase = Complex64::from_polar(1.0, theta);
    let h1 = f.h().derivative();
    let g1 = f.g().derivative();
    let den = h1.eval(z)? + phase * g1.eval(z)?;
    if den.norm() <= EPS_DIV {
        return Err(CoreError::SliceDerivativeVanishes {
            location: [z.re, z.im],
            theta,
        });
    }
    let num = h1.derivative().eval(z)? + phase * g1.derivative().eval(z)?;
    Ok(num / den)
}

/// Slice derivatives of a harmonic map with frozen tail estimators.
struct SliceData {
    h1: ComplexSeries,
    h2: ComplexSeries,
    g1: ComplexSeries,
    g2: ComplexSeries,
    tail_first: [TailModel; 2],
    tail_second: [TailModel; 2],
    analytic: bool,
}

impl SliceData {
    fn new(f: &HarmonicMap) -> Self {
        let h1 = f.h().derivative();
        let h2 = h1.derivative();
        let g1 = f.g().derivative();
        let g2 = g1.derivative();
        let analytic = f.g().coeffs().iter().all(|c| c.norm() == 0.0);
        SliceData {
            tail_first: [h1.tail_model(), g1.tail_model()],
            tail_second: [h2.tail_model(), g2.tail_model()],
            h1,
            h2,
            g1,
            g2,
            analytic,
        }
    }

    fn tails(&self, r: f64) -> (f64, f64) {
        (
            self.tail_first[0].at(r) + self.tail_first[1].at(r),
            self.tail_second[0].at(r) + self.tail_second[1].at(r),
        )
    }
}

/// The norm objective `(1-|z|^2) |num/den|` over (radius, angle, phase).
struct PreschwarzianObjective {
    data: SliceData,
    phase_table: Vec<(f64, Complex64)>,
    /// Pin the phase to the single table entry (per-theta profiles); the
    /// engine's phase coordinate is ignored then.
    fixed_phase: bool,
}

impl PreschwarzianObjective {
    fn new(f: &HarmonicMap, n_theta: usize) -> Self {
        let data = SliceData::new(f);
        let n = if data.analytic { 1 } else { n_theta.max(1) };
        let phase_table = (0..n)
            .map(|m| {
                let theta = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
                (theta, Complex64::from_polar(1.0, theta))
            })
            .collect();
        PreschwarzianObjective {
            data,
            phase_table,
            fixed_phase: false,
        }
    }

    /// Fixed-phase variant used by the per-theta profile.
    fn at_phase(f: &HarmonicMap, theta: f64) -> Self {
        PreschwarzianObjective {
            data: SliceData::new(f),
            phase_table: vec![(theta, Complex64::from_polar(1.0, theta))],
            fixed_phase: true,
        }
    }

    /// Objective at one sample given evaluated derivatives.
    ///
    /// Returns `Ok(None)` for samples where the truncation tail drowns the
    /// evaluated values (no information), errors where the map genuinely
    /// degenerates, and the weighted ratio otherwise.
    #[allow(clippy::too_many_arguments)]
    fn sample(
        &self,
        z: Complex64,
        weight: f64,
        tails: (f64, f64),
        d_h1: Complex64,
        d_h2: Complex64,
        d_g1: Complex64,
        d_g2: Complex64,
        phase: Complex64,
        theta: f64,
    ) -> Result<Option<f64>> {
        let (tail1, tail2) = tails;
        if tail1 > TAIL_TOL * (d_h1.norm() + d_g1.norm()) {
            return Ok(None);
        }
        let j = d_h1.norm_sqr() - d_g1.norm_sqr();
        if j <= 0.0 {
            return Err(CoreError::NotSensePreserving {
                location: [z.re, z.im],
            });
        }
        let den = d_h1 + phase * d_g1;
        let den_norm = den.norm();
        if tail1 > TAIL_TOL * den_norm {
            return Ok(None);
        }
        if den_norm <= EPS_DIV {
            return Err(CoreError::SliceDerivativeVanishes {
                location: [z.re, z.im],
                theta,
            });
        }
        let num = d_h2 + phase * d_g2;
        if tail2 > TAIL_TOL * num.norm() {
            return Ok(None);
        }
        Ok(Some(weight * num.norm() / den_norm))
    }
}

impl PolarObjective for PreschwarzianObjective {
    fn phases(&self) -> usize {
        self.phase_table.len()
    }

    fn ring_best(&self, r: f64, n_angular: usize) -> Result<RingBest> {
        let h1 = self.data.h1.circle_values(r, n_angular);
        let h2 = self.data.h2.circle_values(r, n_angular);
        let g1 = self.data.g1.circle_values(r, n_angular);
        let g2 = self.data.g2.circle_values(r, n_angular);
        let tails = self.data.tails(r);
        let weight = 1.0 - r * r;
        let mut best = RingBest {
            value: f64::NEG_INFINITY,
            angle_index: 0,
            phase_index: 0,
        };
        for k in 0..n_angular {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n_angular as f64);
            for (m, &(theta, phase)) in self.phase_table.iter().enumerate() {
                if let Some(v) =
                    self.sample(z, weight, tails, h1[k], h2[k], g1[k], g2[k], phase, theta)?
                {
                    if v > best.value {
                        best.value = v;
                        best.angle_index = k;
                        best.phase_index = m;
                    }
                }
            }
        }
        Ok(best)
    }

    fn at(&self, r: f64, angle: f64, phase: f64) -> Result<f64> {
        let theta = if self.fixed_phase {
            self.phase_table[0].0
        } else {
            phase
        };
        let z = Complex64::from_polar(r, angle);
        let tails = self.data.tails(r);
        let sample = self.sample(
            z,
            1.0 - r * r,
            tails,
            self.data.h1.eval(z)?,
            self.data.h2.eval(z)?,
            self.data.g1.eval(z)?,
            self.data.g2.eval(z)?,
            Complex64::from_polar(1.0, theta),
            theta,
        )?;
        Ok(sample.unwrap_or(f64::NEG_INFINITY))
    }
}

/// Grid lower estimate of the pre-Schwarzian sup-norm with one doubling pass
/// and coordinate-wise golden-section refinement.
pub fn norm_estimate(
    f: &HarmonicMap,
    r_max: f64,
    grid: GridSpec,
    n_theta: usize,
) -> Result<NormEstimate> {
    if !(0.0 < r_max && r_max < 1.0) {
        return Err(CoreError::InvalidParameter(format!(
            "r_max must lie in (0, 1), got {r_max}"
        )));
    }
    let objective = PreschwarzianObjective::new(f, n_theta);
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
        theta_samples: n_theta,
        refinement_passes: out.passes,
        converged: out.converged,
        location: {
            let z = Complex64::from_polar(out.r, out.angle);
            [z.re, z.im]
        },
        theta: out.phase,
    })
}

/// Per-theta sup estimates `A(theta)`; the max over the profile agrees with
/// [`norm_estimate`] within `TOL_SUP`.
pub fn slice_norm_profile(
    f: &HarmonicMap,
    theta_grid: &[f64],
    r_max: f64,
    grid: GridSpec,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        let objective = PreschwarzianObjective::at_phase(f, theta);
        let sup = polar_sup(&objective, r_max, grid, TOL_SUP)?;
        out.push((theta, sup.value));
    }
    Ok(out)
}

/// Verifies `|u_theta(z_1) - u_theta(z_2)| <= 2 lambda d_h(z_1, z_2)` on the
/// given triples, computing the log-derivative difference branch-free as a
/// segment integral of the pre-Schwarzian (composite Gauss-Legendre,
/// 128 nodes).
pub fn lipschitz_check(
    f: &HarmonicMap,
    lambda: f64,
    pairs: &[(Complex64, Complex64, f64)],
    r_max: f64,
) -> Result<VerificationReport> {
    let h1 = f.h().derivative();
    let h2 = h1.derivative();
    let g1 = f.g().derivative();
    let g2 = g1.derivative();
    let mut report = VerificationReport::new();
    'pairs: for (index, &(z1, z2, theta)) in pairs.iter().enumerate() {
        check_radius(z1, r_max)?;
        check_radius(z2, r_max)?;
        let phase = Complex64::from_polar(1.0, theta);
        let d_h = hyperbolic_distance(z1, z2)?;
        let delta_u = if z1 == z2 {
            Complex64::new(0.0, 0.0)
        } else {
            let integrand = |z: Complex64| -> Result<Complex64> {
                let den = h1.eval(z)? + phase * g1.eval(z)?;
                if den.norm() <= EPS_DIV {
                    return Err(CoreError::SliceDerivativeVanishes {
                        location: [z.re, z.im],
                        theta,
                    });
                }
                Ok((h2.eval(z)? + phase * g2.eval(z)?) / den)
            };
            match integrate_segment(integrand, z1, z2, 16) {
                Ok(v) => v,
                Err(CoreError::SliceDerivativeVanishes { location, .. }) => {
                    report.note(format!(
                        "pair {index}: segment passes a slice-derivative zero near {}+{}i; skipped",
                        location[0], location[1]
                    ));
                    continue 'pairs;
                }
                Err(e) => return Err(e),
            }
        };
        report.push(CheckRecord::leq(
            format!("lipschitz:{index}"),
            format!("theta={theta:.6}"),
            delta_u.norm(),
            2.0 * lambda * d_h,
            vec![[z1.re, z1.im], [z2.re, z2.im]],
        ));
    }
    Ok(report)
}

/// Residual of the pullback chain rule
/// `T_{F,theta}(xi) = T_{f,theta}(T(xi)) T'(xi) + T''(xi)/T'(xi)`
/// where `F = f o T`; the left side is assembled from the composed
/// derivatives, the right side from the pointwise pre-Schwarzian and the
/// closed forms for `T'` and `T''/T'`.
pub fn chain_rule_residual(
    f: &HarmonicMap,
    pullback: &MoebiusPullback,
    theta: f64,
    xi: Complex64,
    r_max: f64,
) -> Result<f64> {
    check_radius(xi, r_max)?;
    let w = pullback.apply(xi);
    check_radius(w, r_max)?;

    let phase = Complex64::from_polar(1.0, theta);
    let h1 = f.h().derivative();
    let h2 = h1.derivative();
    let g1 = f.g().derivative();
    let g2 = g1.derivative();

    let (dh1, dh2) = (h1.eval(w)?, h2.eval(w)?);
    let (dg1, dg2) = (g1.eval(w)?, g2.eval(w)?);
    let t1 = pullback.deriv(xi);
    let t2 = pullback.second_deriv(xi);

    // F = f o T: H' = h'(w) T', H'' = h''(w) T'^2 + h'(w) T''.
    let big_h1 = dh1 * t1;
    let big_h2 = dh2 * t1 * t1 + dh1 * t2;
    let big_g1 = dg1 * t1;
    let big_g2 = dg2 * t1 * t1 + dg1 * t2;

    let lhs_den = big_h1 + phase * big_g1;
    if lhs_den.norm() <= EPS_DIV {
        return Err(CoreError::SliceDerivativeVanishes {
            location: [xi.re, xi.im],
            theta,
        });
    }
    let lhs = (big_h2 + phase * big_g2) / lhs_den;

    let rhs_den = dh1 + phase * dg1;
    if rhs_den.norm() <= EPS_DIV {
        return Err(CoreError::SliceDerivativeVanishes {
            location: [w.re, w.im],
            theta,
        });
    }
    let rhs = (dh2 + phase * dg2) / rhs_den * t1 + pullback.log_deriv_ratio(xi);

    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::ExtremalFamily;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn identity() -> HarmonicMap {
        HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1.0]).unwrap())
    }

    fn shear(k: f64) -> HarmonicMap {
        // trailing zeros mark the polynomials as exact
        HarmonicMap::new(
            ComplexSeries::from_real(&[0.0, 1.0, 0.0]).unwrap(),
            ComplexSeries::from_real(&[0.0, 0.0, k / 2.0, 0.0]).unwrap(),
        )
    }

    fn koebe(order: usize) -> HarmonicMap {
        let coeffs: Vec<f64> = (0..=order).map(|n| n as f64).collect();
        HarmonicMap::analytic(ComplexSeries::from_real(&coeffs).unwrap())
    }

    #[test]
    fn preschwarzian_of_identity_vanishes() {
        let f = identity();
        for theta in [0.0, 1.0, 3.0] {
            let v = preschwarzian_at(&f, theta, c(0.3, 0.2), 0.999).unwrap();
            assert_eq!(v, c(0.0, 0.0));
        }
    }

    #[test]
    fn preschwarzian_of_extremal_on_real_axis() {
        // T = 2 lambda / (1 - z^2); at lambda = 1, r = 1/2 this is 8/3.
        let f = ExtremalFamily::build(1.0, 512).unwrap().as_map();
        let v = preschwarzian_at(&f, 0.0, c(0.5, 0.0), 0.999).unwrap();
        assert!((v - c(8.0 / 3.0, 0.0)).norm() < 1e-10, "{v}");
    }

    #[test]
    fn preschwarzian_of_shear_closed_form() {
        // T = e^{i theta} k / (1 + e^{i theta} k z); at theta=0, k=1/2, z=0.
        let f = shear(0.5);
        let v = preschwarzian_at(&f, 0.0, c(0.0, 0.0), 0.999).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-14);

        let theta = 1.1;
        let z = c(0.3, -0.4);
        let phase = Complex64::from_polar(1.0, theta);
        let expected = phase * 0.5 / (Complex64::new(1.0, 0.0) + phase * 0.5 * z);
        let got = preschwarzian_at(&f, theta, z, 0.999).unwrap();
        assert!((got - expected).norm() < 1e-12);
    }

    #[test]
    fn preschwarzian_rejects_vanishing_slice_derivative() {
        // h = z^2: the slice derivative 2z vanishes at the origin.
        let f = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 0.0, 1.0]).unwrap());
        assert!(matches!(
            preschwarzian_at(&f, 0.3, c(0.0, 0.0), 0.999),
            Err(CoreError::SliceDerivativeVanishes { .. })
        ));
    }

    #[test]
    fn lipschitz_skips_pairs_with_vanishing_slice_derivative() {
        // h' is identically below the division floor, so every segment is
        // within eps of a slice-derivative zero.
        let f = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1e-13]).unwrap());
        let report =
            lipschitz_check(&f, 1.0, &[(c(-0.3, 0.0), c(0.4, 0.0), 0.0)], 0.999).unwrap();
        assert!(report.checks.is_empty());
        assert_eq!(report.notes.len(), 1);
        assert!(report.notes[0].contains("skipped"), "{}", report.notes[0]);
    }

    #[test]
    fn norm_estimate_of_identity_is_zero() {
        let est = norm_estimate(&identity(), 0.999, GridSpec::default(), 8).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn norm_estimate_of_extremal_is_twice_lambda() {
        let f = ExtremalFamily::build(1.0, 2048).unwrap().as_map();
        let est = norm_estimate(&f, 0.999, GridSpec::default(), 16).unwrap();
        assert!(est.value >= 1.98 && est.value <= 2.0 * (1.0 + 1e-6), "{}", est.value);
    }

    #[test]
    fn norm_estimate_of_koebe_is_six() {
        // sup (1-|z|^2) |(4+2z)/(1-z^2)| = 6 at the boundary.
        let est = norm_estimate(&koebe(2048), 0.999, GridSpec::default(), 8).unwrap();
        assert!((est.value - 6.0).abs() < 0.06, "{}", est.value);
    }

    #[test]
    fn norm_estimate_of_half_shear() {
        // 1-D oracle: maximize k (1 - r^2) / (1 - k r) over r for k = 1/2;
        // the algebraic value is 4 - 2 sqrt(3).
        let k = 0.5;
        let (_, oracle) = golden_max(
            |r: f64| Ok(k * (1.0 - r * r) / (1.0 - k * r)),
            0.0,
            1.0 - 1e-9,
            1e-10,
        )
        .unwrap();
        assert!((oracle - (4.0 - 2.0 * 3.0_f64.sqrt())).abs() < 1e-9);

        let est = norm_estimate(&shear(k), 0.999, GridSpec::default(), 64).unwrap();
        assert!((est.value - oracle).abs() < 0.01 * oracle, "{} vs {oracle}", est.value);
    }

    #[test]
    fn norm_estimate_rejects_sense_reversing_maps() {
        let f = HarmonicMap::new(
            ComplexSeries::from_real(&[0.0, 1.0]).unwrap(),
            ComplexSeries::from_real(&[0.0, 2.0]).unwrap(),
        );
        assert!(matches!(
            norm_estimate(&f, 0.9, GridSpec::default(), 8),
            Err(CoreError::NotSensePreserving { .. })
        ));
    }

    #[test]
    fn profile_is_constant_for_analytic_maps() {
        let f = koebe(256);
        let thetas = [0.0, 1.0, 2.0, 4.0];
        let profile = slice_norm_profile(&f, &thetas, 0.99, GridSpec { n_radial: 32, n_angular: 128 }).unwrap();
        let first = profile[0].1;
        for &(_, v) in &profile {
            assert!((v - first).abs() < 1e-9);
        }
    }

    #[test]
    fn profile_max_matches_norm_estimate() {
        let f = shear(0.5);
        let grid = GridSpec { n_radial: 32, n_angular: 128 };
        let thetas: Vec<f64> = (0..16)
            .map(|m| 2.0 * std::f64::consts::PI * m as f64 / 16.0)
            .collect();
        let profile = slice_norm_profile(&f, &thetas, 0.99, grid).unwrap();
        let best = profile.iter().map(|&(_, v)| v).fold(f64::MIN, f64::max);
        let est = norm_estimate(&f, 0.99, grid, 16).unwrap();
        assert!((best - est.value).abs() <= TOL_SUP * est.value.max(1.0));
    }

    #[test]
    fn lipschitz_trivial_pairs_pass() {
        let f = identity();
        let z = c(0.4, 0.2);
        let report = lipschitz_check(&f, 0.0, &[(z, z, 1.0), (z, c(-0.3, 0.1), 2.0)], 0.999).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.checks.len(), 2);
    }

    #[test]
    fn lipschitz_equality_for_extremal_radial_pair() {
        // |delta u| = log H_1'(1/2) = log 3 = 2 * 1 * d_h(0, 1/2): equality.
        let f = ExtremalFamily::build(1.0, 512).unwrap().as_map();
        let report = lipschitz_check(&f, 1.0, &[(c(0.0, 0.0), c(0.5, 0.0), 0.0)], 0.999).unwrap();
        assert!(report.all_pass());
        let margin = report.checks[0].margin;
        assert!(margin.abs() < 1e-6, "equality case margin {margin}");
        assert!((report.checks[0].lhs - 3.0_f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn chain_rule_residual_identity_map() {
        let f = identity();
        let t = MoebiusPullback::new(c(0.4, -0.2), 0.7).unwrap();
        let residual = chain_rule_residual(&f, &t, 1.3, c(0.2, 0.1), 0.999).unwrap();
        assert!(residual < 1e-13, "{residual}");
    }

    #[test]
    fn chain_rule_reduces_to_scaling_for_centered_pullback() {
        // a = 0: T = R xi, so T_F(xi) = R T_f(R xi).
        let f = shear(0.5);
        let t = MoebiusPullback::new(c(0.0, 0.0), 0.6).unwrap();
        for &(x, y, theta) in &[(0.2, 0.3, 0.0), (-0.5, 0.1, 2.0), (0.0, 0.7, 4.4)] {
            let xi = c(x, y);
            let residual = chain_rule_residual(&f, &t, theta, xi, 0.999).unwrap();
            assert!(residual < 1e-9, "residual {residual}");
            let lhs = preschwarzian_at(&f, theta, t.apply(xi), 0.999).unwrap() * t.deriv(xi);
            let direct = {
                let slice = f.theta_slice(theta).derivative();
                let den = slice.eval(t.apply(xi)).unwrap();
                let num = slice.derivative().eval(t.apply(xi)).unwrap();
                num / den * 0.6
            };
            assert!((lhs - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn univalence_probe_value() {
        // lambda = 0, R = 1/2: k0 = 2, s = (2 - sqrt 3)/6, tanh rho0 = s/2.
        let cert = univalence_certificate_at(0.0, 0.5);
        assert!((cert.k0 - 2.0).abs() < 1e-15);
        let s = (2.0 - 3.0_f64.sqrt()) / 6.0;
        assert!((s - 0.044_658_198_738_520_45).abs() < 1e-15);
        assert!((cert.tanh_rho0() - 0.5 * s).abs() < 1e-12);
        assert!((cert.tanh_rho0() - 0.02233).abs() < 1e-4);
    }

    #[test]
    fn univalence_radius_is_monotone_in_the_norm() {
        let mut previous = f64::INFINITY;
        for lambda in [0.0, 1.0, 2.0, 4.0, 8.0] {
            let cert = univalence_radius(lambda);
            assert!(cert.rho0 > 0.0);
            assert!(cert.rho0 < previous, "rho0 not decreasing at {lambda}");
            assert!(cert.tanh_rho0() <= cert.r_star + 1e-12);
            // certificate self-consistency
            let k0 = cert.lambda_norm + 2.0 * cert.r_star / (1.0 - cert.r_star);
            assert!((k0 - cert.k0).abs() < 1e-12);
            previous = cert.rho0;
        }
    }

    #[test]
    fn optimized_radius_beats_the_probe() {
        let best = univalence_radius(0.0);
        let probe = univalence_certificate_at(0.0, 0.5);
        assert!(best.tanh_rho0() > probe.tanh_rho0());
    }
}
