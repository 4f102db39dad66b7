//! Quadrature helpers: composite Gauss-Legendre along segments, adaptive
//! Simpson on real intervals, and a golden-section 1-D maximizer.

use num_complex::Complex64;

use crate::error::Result;

/// 8-point Gauss-Legendre abscissae on [-1, 1] (positive half).
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Integrates `f` along the straight segment from `z1` to `z2` with
/// composite 8-point Gauss-Legendre over `panels` subintervals
/// (`8 * panels` nodes total).
pub fn integrate_segment<F>(mut f: F, z1: Complex64, z2: Complex64, panels: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let delta = z2 - z1;
    let mut total = Complex64::new(0.0, 0.0);
    let h = 1.0 / panels as f64;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            let t_plus = mid + half * GL8_X[i];
            let t_minus = mid - half * GL8_X[i];
            acc += (f(z1 + delta * t_plus)? + f(z1 + delta * t_minus)?) * GL8_W[i];
        }
        total += acc * half;
    }
    Ok(total * delta)
}

/// Composite 8-point Gauss-Legendre on a real interval for fallible
/// integrands.
pub fn integrate_real<F>(mut f: F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for i in 0..4 {
            acc += (f(mid + half * GL8_X[i])? + f(mid - half * GL8_X[i])?) * GL8_W[i];
        }
        total += acc * half;
    }
    Ok(total)
}

/// Adaptive Simpson quadrature of a real integrand with absolute tolerance.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[a, b]`.
/// Returns the best abscissa and value seen (endpoints included).
pub fn golden_max<F>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut best = (lo, f(lo)?);
    let fhi = f(hi)?;
    if fhi > best.1 {
        best = (hi, fhi);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
        if f1 > best.1 {
            best = (x1, f1);
        }
        if f2 > best.1 {
            best = (x2, f2);
        }
    }
    Ok(best)
}

/// Smallest power of two that is >= `n`.
pub(crate) fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_quadrature_integrates_polynomials_exactly() {
        // d/dz of z^3 integrated from 0 to 1+i equals (1+i)^3.
        let z2 = Complex64::new(1.0, 1.0) * 0.5;
        let got = integrate_segment(
            |z| Ok(3.0 * z * z),
            Complex64::new(0.0, 0.0),
            z2,
            4,
        )
        .unwrap();
        assert!((got - z2 * z2 * z2).norm() < 1e-14);
    }

    #[test]
    fn adaptive_simpson_hits_log() {
        // integral of 1/(1-t) from 0 to 0.9 = log 10
        let got = adaptive_simpson(&|t: f64| 1.0 / (1.0 - t), 0.0, 0.9, 1e-10);
        assert!((got - 10.0_f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn golden_max_finds_interior_peak() {
        let (x, v) = golden_max(|x: f64| Ok(1.0 - (x - 0.3) * (x - 0.3)), 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-10);
    }
}
