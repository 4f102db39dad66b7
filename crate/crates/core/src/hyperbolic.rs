//! Hyperbolic metric of the unit disk and the Moebius pullbacks used by the
//! uniform-local-univalence machinery.

use num_complex::Complex64;

use crate::error::{CoreError, Result};

fn require_in_disk(z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(CoreError::OutsideDisk { modulus });
    }
    Ok(())
}

/// Hyperbolic distance `d_h(z, w) = 1/2 log((1+p)/(1-p))` where `p` is the
/// pseudo-hyperbolic distance `|(z-w)/(1-conj(z)w)|`.
pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> Result<f64> {
    require_in_disk(z)?;
    require_in_disk(w)?;
    let p = ((z - w) / (Complex64::new(1.0, 0.0) - z.conj() * w)).norm();
    Ok(0.5 * ((1.0 + p) / (1.0 - p)).ln())
}

/// Membership in the hyperbolic disk `D_h(a, rho)`; the boundary is strict.
pub fn in_hyperbolic_disk(z: Complex64, a: Complex64, rho: f64) -> Result<bool> {
    if rho <= 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "hyperbolic radius must be positive, got {rho}"
        )));
    }
    Ok(hyperbolic_distance(z, a)? < rho)
}

/// The pullback `T(xi) = (R xi + a) / (1 + conj(a) R xi)` with `R = tanh rho`.
///
/// `R = 1` is excluded so every closed form below stays nonsingular; the
/// `rho = infinity` limit is a caller-side limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusPullback {
    a: Complex64,
    scale: f64,
}

impl MoebiusPullback {
    pub fn new(a: Complex64, scale: f64) -> Result<Self> {
        require_in_disk(a)?;
        if !(0.0 < scale && scale < 1.0) {
            return Err(CoreError::InvalidParameter(format!(
                "pullback scale must lie in (0, 1), got {scale}"
            )));
        }
        Ok(MoebiusPullback { a, scale })
    }

    /// Pullback centered at `a` with hyperbolic radius `rho` (`R = tanh rho`).
    pub fn from_radius(a: Complex64, rho: f64) -> Result<Self> {
        Self::new(a, rho.tanh())
    }

    pub fn center(&self) -> Complex64 {
        self.a
    }

    /// The Euclidean scale `R`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn denom(&self, xi: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0) + self.a.conj() * self.scale * xi
    }

    /// `T(xi)`.
    pub fn apply(&self, xi: Complex64) -> Complex64 {
        (self.scale * xi + self.a) / self.denom(xi)
    }

    /// `T'(xi) = R (1 - |a|^2) / (1 + conj(a) R xi)^2`.
    pub fn deriv(&self, xi: Complex64) -> Complex64 {
        let d = self.denom(xi);
        self.scale * (1.0 - self.a.norm_sqr()) / (d * d)
    }

    /// `T''(xi) = -2 conj(a) (1 - |a|^2) R^2 / (1 + conj(a) R xi)^3`.
    pub fn second_deriv(&self, xi: Complex64) -> Complex64 {
        let d = self.denom(xi);
        -2.0 * self.a.conj() * (1.0 - self.a.norm_sqr()) * self.scale * self.scale / (d * d * d)
    }

    /// `T''(xi)/T'(xi) = -2 conj(a) R / (1 + conj(a) R xi)`.
    pub fn log_deriv_ratio(&self, xi: Complex64) -> Complex64 {
        -2.0 * self.a.conj() * self.scale / self.denom(xi)
    }
}

/// `(T(xi), T'(xi), T''(xi)/T'(xi))` by the closed forms.
pub fn pullback_apply(
    t: &MoebiusPullback,
    xi: Complex64,
) -> Result<(Complex64, Complex64, Complex64)> {
    require_in_disk(xi)?;
    Ok((t.apply(xi), t.deriv(xi), t.log_deriv_ratio(xi)))
}
