//! Property tests for the series substrate and the pointwise map algebra.

use harmdisk::hmap::HarmonicMap;
use harmdisk::hyperbolic::MoebiusPullback;
use harmdisk::series::ComplexSeries;
use harmdisk::Complex64;
use proptest::prelude::*;

fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

prop_compose! {
    fn arb_coeffs(max_len: usize)(v in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..max_len))
        -> Vec<Complex64>
    {
        v.into_iter().map(|(re, im)| complex(re, im)).collect()
    }
}

prop_compose! {
    fn arb_point(radius: f64)(r in 0.0..1.0f64, t in 0.0..std::f64::consts::TAU)
        -> Complex64
    {
        Complex64::from_polar(r * radius, t)
    }
}

proptest! {
    /// Horner evaluation agrees with the brute-force term sum.
    #[test]
    fn eval_matches_term_sum(coeffs in arb_coeffs(65), z in arb_point(0.9)) {
        let s = ComplexSeries::new(coeffs.clone()).unwrap();
        let mut naive = complex(0.0, 0.0);
        let mut power = complex(1.0, 0.0);
        for c in &coeffs {
            naive += c * power;
            power *= z;
        }
        let horner = s.eval(z).unwrap();
        prop_assert!((horner - naive).norm() <= 1e-12 * (1.0 + naive.norm()));
    }

    /// Quotient times divisor reproduces the dividend on |z| <= 1/2 for
    /// well-conditioned divisors (diagonally dominant leading coefficient).
    #[test]
    fn divide_roundtrips_under_eval(
        num in arb_coeffs(65),
        den_tail in arb_coeffs(64),
        lead in 1.0..2.0f64,
        z in arb_point(0.5),
    ) {
        let tail_mass: f64 = den_tail.iter().map(|c| c.norm()).sum();
        let scale = if tail_mass > 0.5 { 0.5 / tail_mass } else { 1.0 };
        let mut den = vec![complex(lead, 0.0)];
        den.extend(den_tail.iter().map(|c| c * scale));

        let a = ComplexSeries::new(num).unwrap();
        let b = ComplexSeries::new(den).unwrap();
        let order = a.order().max(b.order());
        let q = a.divide_to_order(&b, order).unwrap();

        // the roundtrip is exact only up to the truncation order
        let mut product = vec![complex(0.0, 0.0); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                product[i + j] += q.coeff(i) * b.coeff(j);
            }
        }
        let truncated = ComplexSeries::new(product).unwrap();
        let lhs = truncated.eval(z).unwrap();
        let rhs = a.eval(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    /// Sense-preservation criteria agree pointwise: J > 0 iff lambda_f > 0
    /// iff |omega| < 1 (where the dilatation is defined).
    #[test]
    fn sense_preservation_criteria_agree(
        h in arb_coeffs(12),
        g in arb_coeffs(12),
        z in arb_point(0.9),
    ) {
        let f = HarmonicMap::new(
            ComplexSeries::new(h).unwrap(),
            ComplexSeries::new(g).unwrap(),
        );
        let inv = f.invariants_at(z, 0.95).unwrap();
        if inv.jacobian > 0.0 {
            prop_assert!(inv.lambda > 0.0);
            if let Some(omega) = inv.dilatation {
                prop_assert!(omega.norm() < 1.0);
            }
        }
        prop_assert!(inv.lambda <= inv.big_lambda);
        let product = inv.lambda * inv.big_lambda;
        prop_assert!((product - inv.jacobian).abs() <= 1e-10 * (1.0 + inv.jacobian.abs()));
    }

    /// The affine shear equals f + c conj(f) pointwise.
    #[test]
    fn affine_shear_pointwise(
        h in arb_coeffs(12),
        g in arb_coeffs(12),
        c in arb_point(0.9),
        z in arb_point(0.9),
    ) {
        let f = HarmonicMap::new(
            ComplexSeries::new(h).unwrap(),
            ComplexSeries::new(g).unwrap(),
        );
        let sheared = f.affine_shear(c).unwrap();
        let direct = f.eval(z, 0.95).unwrap();
        let expected = direct + c * direct.conj();
        let got = sheared.eval(z, 0.95).unwrap();
        prop_assert!((got - expected).norm() <= 1e-12 * (1.0 + expected.norm()));
    }

    /// The theta-slice respects evaluation.
    #[test]
    fn theta_slice_respects_eval(
        h in arb_coeffs(12),
        g in arb_coeffs(12),
        theta in 0.0..std::f64::consts::TAU,
        z in arb_point(0.9),
    ) {
        let f = HarmonicMap::new(
            ComplexSeries::new(h).unwrap(),
            ComplexSeries::new(g).unwrap(),
        );
        let slice = f.theta_slice(theta);
        let expected = f.h().eval(z).unwrap()
            + Complex64::from_polar(1.0, theta) * f.g().eval(z).unwrap();
        prop_assert!((slice.eval(z).unwrap() - expected).norm() <= 1e-12 * (1.0 + expected.norm()));
    }

    /// Renormalization kills b_1 and is idempotent.
    #[test]
    fn normalize_to_sh0_properties(
        h_tail in arb_coeffs(8),
        b1 in arb_point(0.8),
        z in arb_point(0.9),
    ) {
        let mut h = vec![complex(0.0, 0.0), complex(1.0, 0.0)];
        h.extend(h_tail.iter().map(|c| c * 0.1));
        let g = vec![complex(0.0, 0.0), b1];
        let f = HarmonicMap::new(
            ComplexSeries::new(h).unwrap(),
            ComplexSeries::new(g).unwrap(),
        );
        let normalized = f.normalize_to_sh0().unwrap();
        prop_assert!(normalized.b1().norm() <= 1e-14);

        let twice = normalized.normalize_to_sh0().unwrap();
        let a = normalized.eval(z, 0.95).unwrap();
        let b = twice.eval(z, 0.95).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    /// Moebius pullback identity `1 - |T(xi)|^2 = (1-|a|^2)(1-|xi|^2 R^2)/|1+conj(a)R xi|^2`
    /// and the Schwarz-Pick bound.
    #[test]
    fn pullback_identities(
        a in arb_point(0.95),
        scale in 0.05..0.95f64,
        xi in arb_point(0.95),
    ) {
        let t = MoebiusPullback::new(a, scale).unwrap();
        let w = t.apply(xi);
        let lhs = 1.0 - w.norm_sqr();
        let denom = (complex(1.0, 0.0) + a.conj() * scale * xi).norm_sqr();
        let rhs = (1.0 - a.norm_sqr()) * (1.0 - xi.norm_sqr() * scale * scale) / denom;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        prop_assert!(t.deriv(xi).norm() * (1.0 - xi.norm_sqr()) <= lhs + 1e-12);
    }
}
