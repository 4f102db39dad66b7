//! The extremal family `H_lambda(z) = int_0^z ((1+t)/(1-t))^lambda dt` and
//! the sharp distortion / growth / covering / Hoelder / boundedness checks
//! built around it.
//!
//! The integrand `q` satisfies `(1-t^2) q' = 2 lambda q`, so its Taylor
//! coefficients obey the exact three-term recurrence
//! `(n+1) c_{n+1} = 2 lambda c_n + (n-1) c_{n-1}` with `c_0 = 1`,
//! `c_1 = 2 lambda`; the map coefficients are the antiderivative. The family
//! is generated by this recurrence, never by floating powers of series.

use num_complex::Complex64;

use crate::analysis::max_modulus;
use crate::error::{CoreError, Result};
use crate::hmap::{check_radius, HarmonicMap};
use crate::quad::{adaptive_simpson, golden_max};
use crate::report::{CheckRecord, VerificationReport};
use crate::series::ComplexSeries;
use crate::tol::{BOUNDEDNESS_MARGIN, EPS_DIV, QUAD_ABS_TOL};

#[derive(Debug, Clone)]
pub struct ExtremalFamily {
    lambda: f64,
    integrand: ComplexSeries,
    map: ComplexSeries,
}

impl ExtremalFamily {
    /// Builds `H_lambda` with map truncation order `order` (so the integrand
    /// carries `order` coefficients).
    pub fn build(lambda: f64, order: usize) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(CoreError::InvalidParameter(format!(
                "lambda must be nonnegative, got {lambda}"
            )));
        }
        if order < 2 {
            return Err(CoreError::InvalidParameter(format!(
                "order must be at least 2, got {order}"
            )));
        }
        let n = order - 1;
        let mut c = vec![0.0_f64; n + 1];
        c[0] = 1.0;
        if n >= 1 {
            c[1] = 2.0 * lambda;
        }
        for m in 1..n {
            c[m + 1] = (2.0 * lambda * c[m] + (m as f64 - 1.0) * c[m - 1]) / (m as f64 + 1.0);
        }
        let integrand = ComplexSeries::from_real(&c)?;
        let map = integrand.antiderivative();
        Ok(ExtremalFamily {
            lambda,
            integrand,
            map,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Coefficients of `((1+t)/(1-t))^lambda`.
    pub fn integrand_coeffs(&self) -> &ComplexSeries {
        &self.integrand
    }

    /// Coefficients of `H_lambda`.
    pub fn map_coeffs(&self) -> &ComplexSeries {
        &self.map
    }

    /// `H_lambda` as a harmonic map with vanishing co-analytic part.
    pub fn as_map(&self) -> HarmonicMap {
        HarmonicMap::analytic(self.map.clone())
    }

    /// `H_lambda'(r)` in closed form.
    pub fn derivative_closed_form(lambda: f64, r: f64) -> f64 {
        ((1.0 + r) / (1.0 - r)).powf(lambda)
    }

    /// `(H_lambda(r), H_lambda'(r))` with the value from the series and the
    /// derivative from the closed form.
    pub fn eval(&self, r: f64, r_max: f64) -> Result<(f64, f64)> {
        if r < 0.0 {
            return Err(CoreError::InvalidParameter(format!(
                "radius must be nonnegative, got {r}"
            )));
        }
        check_radius(Complex64::new(r, 0.0), r_max)?;
        let value = self.map.eval(Complex64::new(r, 0.0))?.re;
        Ok((value, Self::derivative_closed_form(self.lambda, r)))
    }

    /// Largest relative residual of the generating recurrence; zero up to
    /// rounding by construction, exercised by tests as an invariant.
    pub fn recurrence_residual(&self) -> f64 {
        let c = self.integrand.coeffs();
        let mut worst = 0.0_f64;
        for m in 1..c.len() - 1 {
            let lhs = (m as f64 + 1.0) * c[m + 1].re;
            let rhs = 2.0 * self.lambda * c[m].re + (m as f64 - 1.0) * c[m - 1].re;
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            worst = worst.max((lhs - rhs).abs() / scale);
        }
        worst
    }
}

/// `H_lambda(r) = int_0^r ((1+t)/(1-t))^lambda dt` by adaptive quadrature,
/// independent of the series route.
pub fn extremal_value_quadrature(lambda: f64, r: f64) -> f64 {
    adaptive_simpson(
        &|t: f64| ((1.0 + t) / (1.0 - t)).powf(lambda),
        0.0,
        r,
        QUAD_ABS_TOL,
    )
}

/// Covering radius `-H_lambda(-1) = int_0^1 ((1-t)/(1+t))^lambda dt`.
pub fn covering_radius(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "lambda must be nonnegative, got {lambda}"
        )));
    }
    Ok(adaptive_simpson(
        &|t: f64| ((1.0 - t) / (1.0 + t)).powf(lambda),
        0.0,
        1.0,
        QUAD_ABS_TOL,
    ))
}

/// `-H_lambda(-r)` for the two-sided growth bound.
fn covering_partial(lambda: f64, r: f64) -> f64 {
    adaptive_simpson(
        &|t: f64| ((1.0 - t) / (1.0 + t)).powf(lambda),
        0.0,
        r,
        QUAD_ABS_TOL,
    )
}

/// Checks the sharp distortion and growth bounds for a map asserted to lie
/// in `B_H(lambda)`:
///
/// * `|1 - |b1|| ((1-r)/(1+r))^lambda <= |lambda_f(z)|`,
/// * `Lambda_f(z) <= (1 + |b1|) ((1+r)/(1-r))^lambda`,
/// * `|f(z)| <= (1 + |b1|) H_lambda(r)`,
///
/// at `n_angles` equispaced angles (starting on the positive real axis) for
/// each radius, plus the two-sided growth bound at max modulus when `b1 = 0`
/// and the caller asserts univalence.
pub fn distortion_report(
    f: &HarmonicMap,
    lambda: f64,
    r_grid: &[f64],
    n_angles: usize,
    r_max: f64,
    univalent: bool,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let b1 = f.b1().norm();
    if b1 >= 1.0 {
        report.note(format!(
            "|b1| = {b1} >= 1: lower distortion bound is vacuous at this normalization"
        ));
    }
    let lower_factor = (1.0 - b1).abs();
    let upper_factor = 1.0 + b1;
    for &r in r_grid {
        let lower = lower_factor * ExtremalFamily::derivative_closed_form(lambda, -r);
        let upper = upper_factor * ExtremalFamily::derivative_closed_form(lambda, r);
        let modulus_bound = upper_factor * extremal_value_quadrature(lambda, r);
        let subject = format!("r={r}");
        for k in 0..n_angles {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n_angles as f64;
            let z = Complex64::from_polar(r, angle);
            let inv = f.invariants_at(z, r_max)?;
            let location = vec![[z.re, z.im]];
            report.push(CheckRecord::leq(
                "distortion:lambda_lower",
                subject.clone(),
                lower,
                inv.lambda.abs(),
                location.clone(),
            ));
            report.push(CheckRecord::leq(
                "distortion:Lambda_upper",
                subject.clone(),
                inv.big_lambda,
                upper,
                location.clone(),
            ));
            report.push(CheckRecord::leq(
                "distortion:modulus_upper",
                subject.clone(),
                f.eval(z, r_max)?.norm(),
                modulus_bound,
                location,
            ));
        }
        if univalent && b1 == 0.0 {
            let m = max_modulus(f, r, r_max)?;
            let growth_lower = covering_partial(lambda, r);
            report.push(CheckRecord::leq(
                "distortion:growth_lower",
                subject.clone(),
                growth_lower,
                m,
                vec![[r, 0.0]],
            ));
            report.push(CheckRecord::leq(
                "distortion:growth_upper",
                subject.clone(),
                m,
                extremal_value_quadrature(lambda, r),
                vec![[r, 0.0]],
            ));
        }
    }
    Ok(report)
}

/// Hoelder-continuity probe for `lambda < 1`: estimates the smallest `C`
/// with `|f(z1) - f(z2)| <= C |z1 - z2|^{1-lambda}` over the pairs, and
/// fails the single `holder:stable` check when the constant still grows by
/// more than 10% on the quarter of pairs closest to the boundary.
///
/// The estimated constant is reported as the check's `lhs`.
pub fn holder_check(
    f: &HarmonicMap,
    lambda: f64,
    pairs: &[(Complex64, Complex64)],
    r_max: f64,
) -> Result<VerificationReport> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(CoreError::InvalidParameter(format!(
            "Hoelder exponent requires lambda in [0,1), got {lambda}"
        )));
    }
    let exponent = 1.0 - lambda;
    let mut rated: Vec<(f64, f64, Complex64, Complex64)> = Vec::with_capacity(pairs.len());
    for &(z1, z2) in pairs {
        let gap = (z1 - z2).norm();
        let ratio = if gap == 0.0 {
            0.0
        } else {
            (f.eval(z1, r_max)? - f.eval(z2, r_max)?).norm() / gap.powf(exponent)
        };
        let closeness = z1.norm().max(z2.norm());
        rated.push((closeness, ratio, z1, z2));
    }
    rated.sort_by(|a, b| a.0.total_cmp(&b.0));
    let bulk_len = rated.len() - rated.len() / 4;
    let bulk = rated[..bulk_len]
        .iter()
        .map(|r| r.1)
        .fold(0.0_f64, f64::max);
    let all = rated.iter().map(|r| r.1).fold(0.0_f64, f64::max);
    let worst = rated
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|r| vec![[r.2.re, r.2.im], [r.3.re, r.3.im]])
        .unwrap_or_default();

    let mut report = VerificationReport::new();
    report.note(format!(
        "holder exponent {exponent}: C = {all} over {} pairs (bulk C = {bulk})",
        rated.len()
    ));
    report.push(CheckRecord::leq(
        "holder:stable",
        format!("exponent={exponent}"),
        all,
        1.1 * bulk,
        worst,
    ));
    Ok(report)
}

/// One point of the boundedness-criterion trajectory and the verdict.
#[derive(Debug, Clone)]
pub struct BoundednessProbe {
    /// `(r, Q(r))` with
    /// `Q(r) = ((1-r^2) max_{|z|=r} |T_{f,theta}(z)| - 2) log(1/(1-r^2))`.
    pub trajectory: Vec<(f64, f64)>,
    /// True when the last three trajectory values sit below `-2 - margin`.
    pub criterion_indicated: bool,
}

/// Samples the boundedness-criterion quantity along increasing radii.
/// A numerical probe cannot decide a limsup, so the full trajectory is
/// returned for inspection alongside the three-sample verdict.
pub fn boundedness_probe(
    f: &HarmonicMap,
    theta: f64,
    r_list: &[f64],
    r_max: f64,
) -> Result<BoundednessProbe> {
    if r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::InvalidParameter(
            "r_list must be strictly increasing".into(),
        ));
    }
    let phase = Complex64::from_polar(1.0, theta);
    let den_series = f.h().derivative().add_scaled(phase, &f.g().derivative());
    let num_series = den_series.derivative();
    let mut trajectory = Vec::with_capacity(r_list.len());
    for &r in r_list {
        check_radius(Complex64::new(r, 0.0), r_max)?;
        let n = 512;
        let den = den_series.circle_values(r, n);
        let num = num_series.circle_values(r, n);
        let mut best = (0usize, f64::NEG_INFINITY);
        for k in 0..n {
            if den[k].norm() <= EPS_DIV {
                return Err(CoreError::SliceDerivativeVanishes {
                    location: [den[k].re, den[k].im],
                    theta,
                });
            }
            let v = num[k].norm() / den[k].norm();
            if v > best.1 {
                best = (k, v);
            }
        }
        let da = 2.0 * std::f64::consts::PI / n as f64;
        let center = best.0 as f64 * da;
        let (_, sup) = golden_max(
            |angle| {
                let z = Complex64::from_polar(r, angle);
                let d = den_series.eval(z)?;
                if d.norm() <= EPS_DIV {
                    return Err(CoreError::SliceDerivativeVanishes {
                        location: [z.re, z.im],
                        theta,
                    });
                }
                Ok(num_series.eval(z)?.norm() / d.norm())
            },
            center - da,
            center + da,
            1e-10,
        )?;
        let weight = 1.0 - r * r;
        let q = (weight * sup.max(best.1) - 2.0) * (1.0 / weight).ln();
        trajectory.push((r, q));
    }
    let criterion_indicated = trajectory.len() >= 3
        && trajectory[trajectory.len() - 3..]
            .iter()
            .all(|&(_, q)| q < -2.0 - BOUNDEDNESS_MARGIN);
    Ok(BoundednessProbe {
        trajectory,
        criterion_indicated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_zero_is_the_identity() {
        let e = ExtremalFamily::build(0.0, 16).unwrap();
        assert_eq!(e.integrand_coeffs().coeff(0), c(1.0, 0.0));
        for n in 1..=e.integrand_coeffs().order() {
            assert_eq!(e.integrand_coeffs().coeff(n), c(0.0, 0.0));
        }
        assert_eq!(e.map_coeffs().coeff(1), c(1.0, 0.0));
    }

    #[test]
    fn lambda_one_coefficients() {
        let e = ExtremalFamily::build(1.0, 64).unwrap();
        assert_eq!(e.integrand_coeffs().coeff(0), c(1.0, 0.0));
        for n in 1..=e.integrand_coeffs().order() {
            assert!((e.integrand_coeffs().coeff(n) - c(2.0, 0.0)).norm() < 1e-14);
        }
        // a_{n+1} = 2/(n+1) for n >= 1
        assert!((e.map_coeffs().coeff(2) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((e.map_coeffs().coeff(3) - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((e.map_coeffs().coeff(4) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lambda_two_coefficients() {
        let e = ExtremalFamily::build(2.0, 64).unwrap();
        for n in 1..=e.integrand_coeffs().order() {
            assert!(
                (e.integrand_coeffs().coeff(n) - c(4.0 * n as f64, 0.0)).norm() < 1e-12,
                "n = {n}"
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ExtremalFamily::build(-0.5, 64).is_err());
        assert!(ExtremalFamily::build(1.0, 1).is_err());
    }

    #[test]
    fn recurrence_residual_is_tiny() {
        for lambda in [0.5, 1.0, 2.0, 3.0] {
            let e = ExtremalFamily::build(lambda, 512).unwrap();
            assert!(e.recurrence_residual() < 1e-12);
        }
    }

    #[test]
    fn coefficients_are_nonnegative() {
        for lambda in [0.0, 0.5, 1.0, 2.5] {
            let e = ExtremalFamily::build(lambda, 256).unwrap();
            for cn in e.integrand_coeffs().coeffs() {
                assert!(cn.re >= 0.0 && cn.im == 0.0);
            }
        }
    }

    /// Generalized binomial oracle: convolve the coefficients of
    /// `(1+t)^lambda` with those of `(1-t)^{-lambda}`.
    fn binomial_convolution(lambda: f64, n: usize) -> Vec<f64> {
        let mut plus = vec![0.0; n + 1];
        let mut minus = vec![0.0; n + 1];
        plus[0] = 1.0;
        minus[0] = 1.0;
        for k in 0..n {
            plus[k + 1] = plus[k] * (lambda - k as f64) / (k as f64 + 1.0);
            minus[k + 1] = minus[k] * (lambda + k as f64) / (k as f64 + 1.0);
        }
        (0..=n)
            .map(|m| (0..=m).map(|j| plus[j] * minus[m - j]).sum())
            .collect()
    }

    #[test]
    fn recurrence_matches_binomial_convolution() {
        for lambda in [0.5, 1.0, 2.0, 3.0] {
            let e = ExtremalFamily::build(lambda, 201).unwrap();
            let oracle = binomial_convolution(lambda, 200);
            for (n, &want) in oracle.iter().enumerate() {
                let got = e.integrand_coeffs().coeff(n).re;
                let scale = want.abs().max(1.0);
                assert!(
                    (got - want).abs() / scale < 1e-10,
                    "lambda={lambda} n={n}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn eval_examples() {
        let e = ExtremalFamily::build(1.7, 256).unwrap();
        let (h, d) = e.eval(0.0, 0.999).unwrap();
        assert_eq!(h, 0.0);
        assert_eq!(d, 1.0);

        // lambda = 1, r = 1/2: H = 2 log 2 - 1/2, H' = 3.
        let e = ExtremalFamily::build(1.0, 256).unwrap();
        let (h, d) = e.eval(0.5, 0.999).unwrap();
        assert!((h - (2.0 * 2.0_f64.ln() - 0.5)).abs() < 1e-12);
        assert!((d - 3.0).abs() < 1e-15);

        let e = ExtremalFamily::build(0.5, 256).unwrap();
        let (_, d) = e.eval(0.5, 0.999).unwrap();
        assert!((d - 3.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn series_derivative_matches_closed_form() {
        let e = ExtremalFamily::build(1.5, 1024).unwrap();
        let q = e.map_coeffs().derivative();
        for r in [0.1, 0.5, 0.8, 0.9] {
            let got = q.eval(c(r, 0.0)).unwrap().re;
            let want = ExtremalFamily::derivative_closed_form(1.5, r);
            assert!((got - want).abs() < 1e-8 * want.max(1.0), "r = {r}");
        }
    }

    #[test]
    fn series_value_matches_quadrature() {
        for lambda in [0.5, 1.0, 2.0] {
            let e = ExtremalFamily::build(lambda, 1024).unwrap();
            for r in [0.3, 0.6, 0.9] {
                let (h, _) = e.eval(r, 0.999).unwrap();
                let q = extremal_value_quadrature(lambda, r);
                assert!((h - q).abs() < 1e-7, "lambda={lambda} r={r}: {h} vs {q}");
            }
        }
    }

    #[test]
    fn covering_radius_values() {
        assert!((covering_radius(0.0).unwrap() - 1.0).abs() < 1e-10);
        let want = 2.0 * 2.0_f64.ln() - 1.0;
        assert!((covering_radius(1.0).unwrap() - want).abs() < 1e-8);
        // monotone decreasing in lambda
        let mut prev = f64::INFINITY;
        for lambda in [0.0, 0.25, 0.5, 1.0, 2.0, 3.0] {
            let v = covering_radius(lambda).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(covering_radius(-1.0).is_err());
    }

    #[test]
    fn distortion_equality_for_the_extremal_itself() {
        let e = ExtremalFamily::build(1.0, 1024).unwrap();
        let report =
            distortion_report(&e.as_map(), 1.0, &[0.3, 0.6, 0.9], 8, 0.999, true).unwrap();
        assert!(report.all_pass());
        // equality on the positive real axis for the Lambda_f upper bound
        for check in &report.checks {
            if check.check_id == "distortion:Lambda_upper" && check.locations[0][1] == 0.0 {
                assert!(
                    check.margin.abs() <= 1e-8,
                    "expected near-equality, margin = {}",
                    check.margin
                );
            }
        }
    }

    #[test]
    fn distortion_strict_for_identity_in_larger_class() {
        let identity = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1.0]).unwrap());
        let report = distortion_report(&identity, 1.0, &[0.3, 0.6, 0.9], 8, 0.999, true).unwrap();
        assert!(report.all_pass());
        for check in &report.checks {
            if check.check_id == "distortion:Lambda_upper" {
                assert!(check.margin > 0.1);
            }
        }
    }

    #[test]
    fn holder_constant_of_identity() {
        let identity = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1.0]).unwrap());
        let pairs: Vec<(Complex64, Complex64)> = (0..40)
            .map(|k| {
                let t = k as f64 / 40.0;
                (
                    Complex64::from_polar(0.9 * t, 2.0 * t),
                    Complex64::from_polar(0.5 * t, -1.0 + t),
                )
            })
            .collect();
        let report = holder_check(&identity, 0.0, &pairs, 0.999).unwrap();
        assert!(report.all_pass());
        let c_est = report.checks[0].lhs;
        assert!((c_est - 1.0).abs() < 1e-12, "C = {c_est}");
    }

    #[test]
    fn holder_rejects_exponents_at_or_above_one() {
        let identity = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1.0]).unwrap());
        let z = c(0.1, 0.0);
        assert!(holder_check(&identity, 1.0, &[(z, z)], 0.999).is_err());
        assert!(holder_check(&identity, -0.1, &[(z, z)], 0.999).is_err());
    }

    #[test]
    fn holder_coincident_pairs_are_zero() {
        let identity = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1.0]).unwrap());
        let z = c(0.4, 0.1);
        let report = holder_check(&identity, 0.5, &[(z, z)], 0.999).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.checks[0].lhs, 0.0);
    }

    #[test]
    fn holder_stable_for_sub_unit_lambda_extremal() {
        // Pairs marching into the boundary point 1, where H_{1/2} stays
        // Hoelder-1/2; the constant must stabilize.
        let e = ExtremalFamily::build(0.5, 4096).unwrap();
        let f = e.as_map();
        let mut pairs = Vec::new();
        for k in 1..=32 {
            let r1 = 1.0 - 0.2 / k as f64;
            let r2 = 1.0 - 0.1 / k as f64;
            pairs.push((c(r1.min(0.995), 0.0), c(r2.min(0.995), 0.0)));
        }
        let report = holder_check(&f, 0.5, &pairs, 0.9951).unwrap();
        assert!(report.all_pass(), "{:?}", report.notes);
    }

    #[test]
    fn boundedness_trajectories() {
        let r_list = [0.85, 0.9, 0.95];

        let identity = HarmonicMap::analytic(ComplexSeries::from_real(&[0.0, 1.0]).unwrap());
        let probe = boundedness_probe(&identity, 0.0, &r_list, 0.999).unwrap();
        assert!(probe.criterion_indicated);
        for &(r, q) in &probe.trajectory {
            let want = -2.0 * (1.0 / (1.0 - r * r)).ln();
            assert!((q - want).abs() < 1e-9);
        }

        // H_1: (1-r^2) sup |T| = 2 exactly, so Q = 0.
        let h1 = ExtremalFamily::build(1.0, 2048).unwrap().as_map();
        let probe = boundedness_probe(&h1, 0.0, &r_list, 0.999).unwrap();
        assert!(!probe.criterion_indicated);
        for &(_, q) in &probe.trajectory {
            assert!(q.abs() < 1e-6, "Q = {q}");
        }

        // H_2: Q = 2 log(1/(1-r^2)), growing.
        let h2 = ExtremalFamily::build(2.0, 2048).unwrap().as_map();
        let probe = boundedness_probe(&h2, 0.0, &r_list, 0.999).unwrap();
        assert!(!probe.criterion_indicated);
        for &(r, q) in &probe.trajectory {
            let want = 2.0 * (1.0 / (1.0 - r * r)).ln();
            assert!((q - want).abs() < 1e-6, "r={r}: {q} vs {want}");
        }

        assert!(boundedness_probe(&identity, 0.0, &[0.9, 0.5], 0.999).is_err());
    }
}
