//! Shared sup-estimation engine: polar-grid sweep, one doubling pass, then
//! coordinate-wise golden-section refinement around the best sample.
//!
//! Sampling certifies a sup of a continuous function from below only, so the
//! outcome is a lower estimate together with a convergence flag; the running
//! value is monotone non-decreasing across passes by construction.

use crate::error::Result;
use crate::hmap::GridSpec;
use crate::quad::golden_max;

/// Best sample found on one ring.
pub(crate) struct RingBest {
    pub value: f64,
    pub angle_index: usize,
    pub phase_index: usize,
}

/// An objective on the polar product grid (radius, angle, optional phase).
pub(crate) trait PolarObjective {
    /// Number of phase samples; 1 when the objective has no phase coordinate.
    fn phases(&self) -> usize;
    /// Best objective value over `n_angular` equispaced angles at radius `r`.
    fn ring_best(&self, r: f64, n_angular: usize) -> Result<RingBest>;
    /// Pointwise objective, used during refinement.
    fn at(&self, r: f64, angle: f64, phase: f64) -> Result<f64>;
}

pub(crate) struct SupOutcome {
    pub value: f64,
    pub r: f64,
    pub angle: f64,
    pub phase: f64,
    /// Doubling pass plus golden-section passes.
    pub passes: usize,
    pub converged: bool,
    /// Value after the initial sweep and after each pass; non-decreasing.
    /// Consumed by the monotonicity assertions in tests.
    #[allow(dead_code)]
    pub history: Vec<f64>,
}

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const MIN_GOLDEN_PASSES: usize = 2;
const MAX_GOLDEN_PASSES: usize = 6;

fn sweep<O: PolarObjective>(
    obj: &O,
    r_max: f64,
    n_radial: usize,
    n_angular: usize,
) -> Result<(f64, f64, f64, f64)> {
    let mut best_value = f64::NEG_INFINITY;
    let mut best = (0.0, 0.0, 0.0);
    for j in 0..n_radial {
        let r = r_max * (j + 1) as f64 / n_radial as f64;
        let ring = obj.ring_best(r, n_angular)?;
        if ring.value > best_value {
            best_value = ring.value;
            best = (
                r,
                TWO_PI * ring.angle_index as f64 / n_angular as f64,
                TWO_PI * ring.phase_index as f64 / obj.phases() as f64,
            );
        }
    }
    Ok((best_value, best.0, best.1, best.2))
}

pub(crate) fn polar_sup<O: PolarObjective>(
    obj: &O,
    r_max: f64,
    grid: GridSpec,
    tol_rel: f64,
) -> Result<SupOutcome> {
    let mut history = Vec::new();

    let (v0, mut r, mut angle, mut phase) = sweep(obj, r_max, grid.n_radial, grid.n_angular)?;
    let mut value = v0;
    history.push(value);

    // Richardson-style doubling pass over the grid.
    let (v1, r1, a1, p1) = sweep(obj, r_max, 2 * grid.n_radial, 2 * grid.n_angular)?;
    if v1 > value {
        value = v1;
        r = r1;
        angle = a1;
        phase = p1;
    }
    history.push(value);
    let mut passes = 1;

    // Coordinate-wise golden-section refinement around the best sample.
    let mut dr = r_max / (2 * grid.n_radial) as f64;
    let mut da = TWO_PI / (2 * grid.n_angular) as f64;
    let mut dp = TWO_PI / obj.phases() as f64;
    let mut converged = false;
    for pass in 0..MAX_GOLDEN_PASSES {
        let before = value;

        let (rb, rv) = golden_max(
            |x| obj.at(x, angle, phase),
            (r - dr).max(0.0),
            (r + dr).min(r_max),
            1e-9,
        )?;
        if rv > value {
            value = rv;
            r = rb;
        }

        let (ab, av) = golden_max(|x| obj.at(r, x, phase), angle - da, angle + da, 1e-9)?;
        if av > value {
            value = av;
            angle = ab;
        }

        if obj.phases() > 1 {
            let (pb, pv) = golden_max(|x| obj.at(r, angle, x), phase - dp, phase + dp, 1e-9)?;
            if pv > value {
                value = pv;
                phase = pb;
            }
        }

        history.push(value);
        passes += 1;
        dr *= 0.5;
        da *= 0.5;
        dp *= 0.5;

        let improvement = value - before;
        if pass + 1 >= MIN_GOLDEN_PASSES && improvement < tol_rel * value.max(f64::MIN_POSITIVE) {
            converged = true;
            break;
        }
    }

    debug_assert!(
        history.windows(2).all(|w| w[1] >= w[0]),
        "sup history must be monotone non-decreasing"
    );
    Ok(SupOutcome {
        value,
        r,
        angle,
        phase,
        passes,
        converged,
        history,
    })
}
