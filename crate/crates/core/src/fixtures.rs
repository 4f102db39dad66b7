//! Named corpus of harmonic maps with known analytics, used by the
//! verification suites. Coefficients are generated at load time from
//! recurrences and closed forms, never stored as literals, so any truncation
//! order is available without stale data.

use num_complex::Complex64;

use crate::error::Result;
use crate::extremal::ExtremalFamily;
use crate::hmap::HarmonicMap;
use crate::quad::golden_max;
use crate::series::ComplexSeries;
use crate::tol::{DEFAULT_RMAX, TAIL_TOL};

/// Where a ground-truth value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Published closed form or constant.
    Literature,
    /// Immediate from the definition.
    Elementary,
    /// Computed by the named independent oracle.
    Oracle,
}

/// A ground-truth value with its provenance and the oracle that produced it.
#[derive(Debug, Clone)]
pub struct Known<T> {
    pub value: T,
    pub provenance: Provenance,
    pub oracle: &'static str,
}

impl<T> Known<T> {
    fn new(value: T, provenance: Provenance, oracle: &'static str) -> Self {
        Known {
            value,
            provenance,
            oracle,
        }
    }
}

/// Shape of `sup_{|z| <= r} |omega_f|` as a function of `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DilatationProfile {
    /// Identically zero dilatation (analytic map).
    Zero,
    /// `sup = k r` (linear dilatation `omega = k z`).
    Linear(f64),
}

impl DilatationProfile {
    pub fn sup_at(&self, r: f64) -> f64 {
        match *self {
            DilatationProfile::Zero => 0.0,
            DilatationProfile::Linear(k) => k * r,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct KnownValues {
    pub preschwarzian_norm: Option<Known<f64>>,
    pub dilatation: Option<Known<DilatationProfile>>,
    pub gamma: Option<Known<f64>>,
    pub covering_radius: Option<Known<f64>>,
    pub univalent: Option<Known<bool>>,
    /// The smallest `lambda` with the map in the `2 lambda` sup-norm class.
    pub lambda_class: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub map: HarmonicMap,
    pub known: KnownValues,
    /// Closed-form-backed fixtures are evaluated up to the default radius;
    /// others derive their radius from the truncation tail.
    pub closed_form_backed: bool,
}

impl Fixture {
    pub fn default_r_max(&self) -> f64 {
        if self.closed_form_backed {
            DEFAULT_RMAX
        } else {
            self.map.trusted_radius(TAIL_TOL).min(DEFAULT_RMAX)
        }
    }
}

/// Default truncation order for the corpus; deep-window probes rebuild
/// individual fixtures at whatever order they need.
pub const DEFAULT_CORPUS_ORDER: usize = 2048;

fn identity_map(order: usize) -> HarmonicMap {
    let mut coeffs = vec![0.0; order.max(1) + 1];
    coeffs[1] = 1.0;
    HarmonicMap::analytic(ComplexSeries::from_real(&coeffs).expect("finite"))
}

fn koebe_map(order: usize) -> HarmonicMap {
    let coeffs: Vec<f64> = (0..=order).map(|n| n as f64).collect();
    HarmonicMap::analytic(ComplexSeries::from_real(&coeffs).expect("finite"))
}

fn shear_map(k: f64) -> HarmonicMap {
    // trailing zero marks the stored polynomial as exact
    HarmonicMap::new(
        ComplexSeries::from_real(&[0.0, 1.0, 0.0]).expect("finite"),
        ComplexSeries::from_real(&[0.0, 0.0, k / 2.0, 0.0]).expect("finite"),
    )
}

/// Peak of `k (1-r^2)/(1-k r)` over `r` in `[0, 1)`: the sup-norm of the
/// linear-dilatation shear (all slices reduce to the `theta = 0` one up to
/// rotation of `z`).
fn shear_norm_oracle(k: f64) -> f64 {
    golden_max(|r: f64| Ok(k * (1.0 - r * r) / (1.0 - k * r)), 0.0, 1.0 - 1e-12, 1e-12)
        .expect("total objective")
        .1
}

/// Harmonic Koebe map: the shear of `z/(1-z)^2` with dilatation `omega = z`;
/// built by series division of the closed rational forms.
fn harmonic_koebe(order: usize) -> Result<HarmonicMap> {
    let num_h = ComplexSeries::from_real(&[0.0, 1.0, -0.5, 1.0 / 6.0])?;
    let num_g = ComplexSeries::from_real(&[0.0, 0.0, 0.5, 1.0 / 6.0])?;
    let den = ComplexSeries::from_real(&[1.0, -3.0, 3.0, -1.0])?; // (1-z)^3
    Ok(HarmonicMap::new(
        num_h.divide_to_order(&den, order)?,
        num_g.divide_to_order(&den, order)?,
    ))
}

fn extremal_fixture(lambda: f64, order: usize, name: &str) -> Result<Fixture> {
    let family = ExtremalFamily::build(lambda, order)?;
    let mut known = KnownValues {
        preschwarzian_norm: Some(Known::new(
            2.0 * lambda,
            Provenance::Literature,
            "slice pre-Schwarzian is 2 lambda/(1-z^2); the weight cancels on the real axis",
        )),
        dilatation: Some(Known::new(
            DilatationProfile::Zero,
            Provenance::Elementary,
            "vanishing co-analytic part",
        )),
        univalent: Some(Known::new(
            lambda <= 1.0,
            Provenance::Literature,
            "univalent exactly up to the critical parameter 1",
        )),
        lambda_class: Some(lambda),
        ..KnownValues::default()
    };
    if lambda > 0.0 {
        known.gamma = Some(Known::new(
            lambda - 1.0,
            Provenance::Literature,
            "integrand coefficients grow like n^{lambda-1}",
        ));
    }
    if lambda == 0.0 {
        known.covering_radius = Some(Known::new(1.0, Provenance::Elementary, "unit integrand"));
    } else if lambda == 1.0 {
        known.covering_radius = Some(Known::new(
            2.0 * 2.0_f64.ln() - 1.0,
            Provenance::Literature,
            "2 log 2 - 1",
        ));
    }
    Ok(Fixture {
        name: name.to_string(),
        map: family.as_map(),
        known,
        closed_form_backed: true,
    })
}

/// Fixture names in corpus order.
pub const NAMES: [&str; 15] = [
    "identity",
    "H_0",
    "H_0.5",
    "H_1",
    "H_2",
    "H_3",
    "H_0.5_rot60",
    "H_1_rot60",
    "H_2_rot60",
    "koebe",
    "shear_k0.25",
    "shear_k0.5",
    "affine_H_1_c0.3",
    "affine_H_1_c0.2+0.2i",
    "harmonic_koebe",
];

/// The full corpus at the default truncation order.
pub fn corpus() -> Vec<Fixture> {
    corpus_with_order(DEFAULT_CORPUS_ORDER)
}

/// The corpus rebuilt at a chosen truncation order.
pub fn corpus_with_order(order: usize) -> Vec<Fixture> {
    NAMES
        .iter()
        .map(|name| fixture(name, order).expect("every listed name builds"))
        .collect()
}

fn rotated_extremal(lambda: f64, order: usize, name: &str) -> Fixture {
    let mu = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    let family = ExtremalFamily::build(lambda, order).expect("valid parameters");
    Fixture {
        name: name.into(),
        map: family.as_map().rotate(mu),
        known: KnownValues {
            preschwarzian_norm: Some(Known::new(
                2.0 * lambda,
                Provenance::Oracle,
                "rotation invariance of the sup-norm",
            )),
            dilatation: Some(Known::new(
                DilatationProfile::Zero,
                Provenance::Elementary,
                "vanishing co-analytic part",
            )),
            univalent: Some(Known::new(
                lambda <= 1.0,
                Provenance::Oracle,
                "rotation preserves univalence",
            )),
            lambda_class: Some(lambda),
            ..KnownValues::default()
        },
        closed_form_backed: true,
    }
}

fn affine_of_h1(c: Complex64, order: usize, name: &str) -> Fixture {
    let h1 = ExtremalFamily::build(1.0, order).expect("valid parameters");
    Fixture {
        name: name.into(),
        map: h1.as_map().affine_shear(c).expect("|c| < 1"),
        known: KnownValues {
            preschwarzian_norm: Some(Known::new(
                2.0,
                Provenance::Oracle,
                "slices of an affine shear rephase the slices of the base map",
            )),
            univalent: Some(Known::new(
                true,
                Provenance::Elementary,
                "affine images of univalent harmonic maps are univalent",
            )),
            lambda_class: Some(1.0),
            ..KnownValues::default()
        },
        closed_form_backed: true,
    }
}

fn shear_fixture(k: f64, order: usize) -> Fixture {
    let _ = order; // the stored polynomial is exact at any order
    Fixture {
        name: format!("shear_k{k}"),
        map: shear_map(k),
        known: KnownValues {
            preschwarzian_norm: Some(Known::new(
                shear_norm_oracle(k),
                Provenance::Oracle,
                "1-D maximization of k(1-r^2)/(1-k r)",
            )),
            dilatation: Some(Known::new(
                DilatationProfile::Linear(k),
                Provenance::Elementary,
                "omega = k z",
            )),
            univalent: Some(Known::new(
                true,
                Provenance::Elementary,
                "f(z1)=f(z2) forces |z1-z2| <= k |z1-z2|",
            )),
            lambda_class: Some(shear_norm_oracle(k) / 2.0),
            ..KnownValues::default()
        },
        closed_form_backed: true,
    }
}

/// Builds one fixture by name at the given order; `None` for unknown names.
pub fn fixture(name: &str, order: usize) -> Option<Fixture> {
    let f = match name {
        "identity" => Fixture {
            name: name.into(),
            map: identity_map(order),
            known: KnownValues {
                preschwarzian_norm: Some(Known::new(
                    0.0,
                    Provenance::Elementary,
                    "vanishing second derivative",
                )),
                dilatation: Some(Known::new(
                    DilatationProfile::Zero,
                    Provenance::Elementary,
                    "vanishing co-analytic part",
                )),
                univalent: Some(Known::new(true, Provenance::Elementary, "identity")),
                lambda_class: Some(0.0),
                ..KnownValues::default()
            },
            closed_form_backed: true,
        },
        "H_0" => extremal_fixture(0.0, order, name).expect("valid parameters"),
        "H_0.5" => extremal_fixture(0.5, order, name).expect("valid parameters"),
        "H_1" => extremal_fixture(1.0, order, name).expect("valid parameters"),
        "H_2" => extremal_fixture(2.0, order, name).expect("valid parameters"),
        "H_3" => extremal_fixture(3.0, order, name).expect("valid parameters"),
        "H_0.5_rot60" => rotated_extremal(0.5, order, name),
        "H_1_rot60" => rotated_extremal(1.0, order, name),
        "H_2_rot60" => rotated_extremal(2.0, order, name),
        "koebe" => Fixture {
            name: name.into(),
            map: koebe_map(order),
            known: KnownValues {
                preschwarzian_norm: Some(Known::new(
                    6.0,
                    Provenance::Oracle,
                    "dense-grid maximization of (1-|z|^2)|4+2z|/|1-z^2|",
                )),
                dilatation: Some(Known::new(
                    DilatationProfile::Zero,
                    Provenance::Elementary,
                    "vanishing co-analytic part",
                )),
                gamma: Some(Known::new(
                    2.0,
                    Provenance::Elementary,
                    "n |a_n| = n^2 exactly",
                )),
                univalent: Some(Known::new(true, Provenance::Literature, "slit mapping")),
                lambda_class: Some(3.0),
                ..KnownValues::default()
            },
            closed_form_backed: true,
        },
        "shear_k0.25" => shear_fixture(0.25, order),
        "shear_k0.5" => shear_fixture(0.5, order),
        "affine_H_1_c0.3" => affine_of_h1(Complex64::new(0.3, 0.0), order, name),
        "affine_H_1_c0.2+0.2i" => affine_of_h1(Complex64::new(0.2, 0.2), order, name),
        "harmonic_koebe" => Fixture {
            name: name.into(),
            map: harmonic_koebe(order).expect("valid parameters"),
            known: KnownValues {
                preschwarzian_norm: Some(Known::new(
                    8.0,
                    Provenance::Oracle,
                    "series-division oracle; slice at theta=0 peaks at 4(1+r)+2(1-r) on the axis",
                )),
                dilatation: Some(Known::new(
                    DilatationProfile::Linear(1.0),
                    Provenance::Oracle,
                    "series-division oracle gives omega = z",
                )),
                univalent: Some(Known::new(
                    true,
                    Provenance::Literature,
                    "extremal slit mapping of the normalized univalent class",
                )),
                lambda_class: Some(4.0),
                ..KnownValues::default()
            },
            closed_form_backed: false,
        },
        _ => return None,
    };
    Some(f)
}

/// The fixture names, in corpus order.
pub fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}
