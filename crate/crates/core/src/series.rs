//! Truncated complex power series: the substrate every other module builds on.
//!
//! A [`ComplexSeries`] stores Taylor coefficients `c_0 .. c_N` of an analytic
//! function on the unit disk. All arithmetic is plain binary64; the only
//! approximation source is truncation, which callers control through the
//! trusted-radius discipline (see [`ComplexSeries::trusted_radius`]).

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::{num_complex::Complex as FftComplex, FftDirection, FftPlanner};

use crate::error::{CoreError, Result};
use crate::tol::{EPS_DIV, MAX_RADIUS};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    /// Builds a series from coefficients `c_0 .. c_N`; rejects NaN/infinite
    /// entries and the empty list.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(CoreError::EmptySeries);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(CoreError::NonFiniteCoefficient { index });
            }
        }
        Ok(ComplexSeries { coeffs })
    }

    /// Series with real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The zero series of the given truncation order.
    pub fn zero(order: usize) -> Self {
        ComplexSeries {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    /// Truncation order N (the series stores exactly N+1 coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of z^n, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Horner evaluation at a point of the open unit disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if modulus >= 1.0 {
            return Err(CoreError::OutsideDisk { modulus });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }

    /// Termwise derivative; the zero-order series differentiates to zero.
    pub fn derivative(&self) -> ComplexSeries {
        if self.coeffs.len() == 1 {
            return ComplexSeries::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * n as f64)
            .collect();
        ComplexSeries { coeffs }
    }

    /// Termwise antiderivative with vanishing constant term.
    pub fn antiderivative(&self) -> ComplexSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / (n as f64 + 1.0)),
        );
        ComplexSeries { coeffs }
    }

    /// Taylor quotient to the larger of the two truncation orders.
    pub fn divide(&self, den: &ComplexSeries) -> Result<ComplexSeries> {
        self.divide_to_order(den, self.order().max(den.order()))
    }

    /// Taylor quotient `self/den` to a requested truncation order, by the
    /// standard convolution recurrence.
    pub fn divide_to_order(&self, den: &ComplexSeries, order: usize) -> Result<ComplexSeries> {
        let leading = den.coeff(0);
        if leading.norm() <= EPS_DIV {
            return Err(CoreError::DivisionSingular {
                leading: leading.norm(),
            });
        }
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for k in 1..=n {
                acc -= den.coeff(k) * out[n - k];
            }
            out.push(acc / leading);
        }
        ComplexSeries::new(out)
    }

    /// Coefficient-wise sum, padded to the larger order.
    pub fn add(&self, other: &ComplexSeries) -> ComplexSeries {
        let order = self.order().max(other.order());
        let coeffs = (0..=order).map(|n| self.coeff(n) + other.coeff(n)).collect();
        ComplexSeries { coeffs }
    }

    /// `self + factor * other`, padded to the larger order.
    pub fn add_scaled(&self, factor: Complex64, other: &ComplexSeries) -> ComplexSeries {
        let order = self.order().max(other.order());
        let coeffs = (0..=order)
            .map(|n| self.coeff(n) + factor * other.coeff(n))
            .collect();
        ComplexSeries { coeffs }
    }

    /// Coefficient-wise scaling.
    pub fn scale(&self, factor: Complex64) -> ComplexSeries {
        ComplexSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// The largest radius at which the truncation tail heuristic
    /// `|c_N| r^N r/(1-r)` stays below `tail_tol`, capped at
    /// [`MAX_RADIUS`]. Trailing zero coefficients are read as an exactly
    /// stored polynomial, which is trusted on the whole disk.
    pub fn trusted_radius(&self, tail_tol: f64) -> f64 {
        let last_nonzero = match self.coeffs.iter().rposition(|c| c.norm() > 0.0) {
            Some(k) => k,
            None => return MAX_RADIUS,
        };
        if last_nonzero < self.order() || last_nonzero == 0 {
            return MAX_RADIUS;
        }
        let n = last_nonzero as f64;
        let magnitude = self.coeffs[last_nonzero].norm();
        let tail = |r: f64| magnitude * r.powf(n) * r / (1.0 - r);
        if tail(MAX_RADIUS) <= tail_tol {
            return MAX_RADIUS;
        }
        let (mut lo, mut hi) = (0.0_f64, MAX_RADIUS);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if tail(mid) <= tail_tol {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Precomputed truncation-tail estimator (see [`TailModel`]).
    pub(crate) fn tail_model(&self) -> TailModel {
        match self.coeffs.iter().rposition(|c| c.norm() > 0.0) {
            None => TailModel::Exact,
            Some(k) if k < self.order() || k == 0 => TailModel::Exact,
            Some(k) => TailModel::Tail {
                magnitude: self.coeffs[k].norm(),
                exponent: k as f64,
            },
        }
    }

    /// Values at the `m` equispaced points `r e^{2 pi i k/m}`, `k = 0..m`.
    ///
    /// Coefficients are scaled by `r^n`, folded modulo `m`, and transformed
    /// in one unnormalized inverse FFT; this is the exact truncated sum
    /// reassociated, so it agrees with Horner up to rounding.
    pub(crate) fn circle_values(&self, r: f64, m: usize) -> Vec<Complex64> {
        assert!(m >= 1 && r < 1.0, "circle evaluation needs m >= 1, r < 1");
        if self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
            return vec![Complex64::new(0.0, 0.0); m];
        }
        let mut buf = vec![FftComplex::new(0.0, 0.0); m];
        let mut power = 1.0_f64;
        for (n, c) in self.coeffs.iter().enumerate() {
            let slot = n % m;
            buf[slot].re += c.re * power;
            buf[slot].im += c.im * power;
            power *= r;
        }
        PLANNER.with(|planner| {
            let fft = planner
                .borrow_mut()
                .plan_fft(m, FftDirection::Inverse);
            fft.process(&mut buf);
        });
        buf.into_iter().map(|v| Complex64::new(v.re, v.im)).collect()
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Ratio-test truncation-tail estimate `|c_N| r^N r/(1-r)` for a series,
/// frozen once so sweeps do not rescan coefficients. `Exact` marks stored
/// polynomials (trailing zeros), whose tail vanishes identically.
#[derive(Debug, Clone, Copy)]
pub(crate) enum TailModel {
    Exact,
    Tail { magnitude: f64, exponent: f64 },
}

impl TailModel {
    pub(crate) fn at(&self, r: f64) -> f64 {
        match *self {
            TailModel::Exact => 0.0,
            TailModel::Tail { magnitude, exponent } => {
                magnitude * r.powf(exponent) * r / (1.0 - r)
            }
        }
    }
}
