//! The `verify` suites: named groups of checks over the fixture corpus,
//! emitted as margin reports. A fixed seed makes every suite byte-identical
//! across runs.

use harmdisk::analysis::{
    alpha, beta_estimate, bloch_seminorm, gamma_estimate, hardy_membership_probe,
    hardy_thresholds, log_spaced_radii, qc_means_check, Trend,
};
use harmdisk::extremal::{covering_radius, distortion_report, extremal_value_quadrature, ExtremalFamily};
use harmdisk::fixtures::{self, Fixture};
use harmdisk::hmap::GridSpec;
use harmdisk::preschwarzian::{
    chain_rule_residual, lipschitz_check, norm_estimate, univalence_certificate_at,
    univalence_radius,
};
use harmdisk::hyperbolic::MoebiusPullback;
use harmdisk::report::{CheckRecord, VerificationReport};
use harmdisk::tol::{DEFAULT_RMAX, TOL_SUP};
use harmdisk::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{emit, Format, SuiteName, VerifyArgs};

const CORPUS_ORDER: usize = fixtures::DEFAULT_CORPUS_ORDER;
/// Order for the deep-window Hardy probes: the evaluation radius reaches
/// 0.9999, so the tail needs N (1 - r) >= 16.
const DEEP_ORDER: usize = 160_000;
const GAMMA_ORDER: usize = 5_000;
const BETA_ORDER: usize = 8_192;

type SuiteResult = Result<VerificationReport, String>;

fn core(e: harmdisk::CoreError) -> String {
    e.to_string()
}

fn sample_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y < 1.0 {
            return Complex64::new(x * radius, y * radius);
        }
    }
}

/// Measured sup-norm for every corpus fixture, in corpus order.
fn measured_norms(corpus: &[Fixture]) -> Result<Vec<f64>, String> {
    corpus
        .iter()
        .map(|f| {
            norm_estimate(&f.map, f.default_r_max(), GridSpec::default(), 64)
                .map(|est| est.value)
                .map_err(core)
        })
        .collect()
}

/// Collapses a detailed report to one row per check id, keeping the sample
/// with the smallest margin as the representative (and the witness).
fn worst_rows(report: VerificationReport, subject_prefix: &str) -> Vec<CheckRecord> {
    let mut order: Vec<String> = Vec::new();
    let mut worst: std::collections::BTreeMap<String, CheckRecord> = Default::default();
    for check in report.checks {
        if !worst.contains_key(&check.check_id) {
            order.push(check.check_id.clone());
        }
        match worst.get(&check.check_id) {
            Some(existing) if existing.margin <= check.margin => {}
            _ => {
                worst.insert(check.check_id.clone(), check);
            }
        }
    }
    order
        .into_iter()
        .map(|id| {
            let mut rec = worst.remove(&id).expect("id recorded");
            rec.subject = format!("{subject_prefix} {}", rec.subject);
            rec
        })
        .collect()
}

/// Extremal-family suite: sup-norm of `H_lambda`, generating recurrence,
/// covering constant, series-vs-quadrature agreement, and the univalence
/// certificate.
fn suite_extremal() -> SuiteResult {
    let mut report = VerificationReport::new();

    for lambda in [0.5, 1.0, 2.0] {
        let family = ExtremalFamily::build(lambda, CORPUS_ORDER).map_err(core)?;
        let est = norm_estimate(&family.as_map(), 0.999, GridSpec::default(), 256).map_err(core)?;
        let name = format!("H_{lambda}");
        report.push(CheckRecord::leq(
            "extremal:norm_lower",
            name.clone(),
            1.98 * lambda,
            est.value,
            vec![est.location],
        ));
        report.push(CheckRecord::leq(
            "extremal:norm_upper",
            name,
            est.value,
            2.0 * lambda * (1.0 + 1e-6),
            vec![est.location],
        ));
    }

    for lambda in [0.5, 1.0, 2.0, 3.0] {
        let family = ExtremalFamily::build(lambda, CORPUS_ORDER).map_err(core)?;
        report.push(CheckRecord::leq(
            "extremal:recurrence_residual",
            format!("H_{lambda}"),
            family.recurrence_residual(),
            1e-12,
            vec![[0.0, 0.0]],
        ));
        for r in [0.3, 0.9] {
            let (series_value, _) = family.eval(r, DEFAULT_RMAX).map_err(core)?;
            let quad = extremal_value_quadrature(lambda, r);
            report.push(CheckRecord::leq(
                "extremal:series_vs_quadrature",
                format!("H_{lambda} r={r}"),
                (series_value - quad).abs(),
                1e-7,
                vec![[r, 0.0]],
            ));
        }
    }

    report.push(CheckRecord::leq(
        "extremal:covering_H_1",
        "|covering(1) - 0.38629|",
        (covering_radius(1.0).map_err(core)? - 0.38629).abs(),
        1e-4,
        vec![[-1.0, 0.0]],
    ));
    report.push(CheckRecord::leq(
        "extremal:covering_H_0",
        "covering(0) = 1",
        (covering_radius(0.0).map_err(core)? - 1.0).abs(),
        1e-10,
        vec![[-1.0, 0.0]],
    ));
    let coverings: Vec<f64> = [0.0, 0.5, 1.0, 2.0]
        .iter()
        .map(|&l| covering_radius(l).map_err(core))
        .collect::<Result<_, _>>()?;
    for pair in coverings.windows(2) {
        report.push(CheckRecord::leq(
            "extremal:covering_monotone",
            "covering decreasing in lambda",
            pair[1],
            pair[0],
            vec![[-1.0, 0.0]],
        ));
    }

    // Univalence certificate: probe value, self-consistency, monotonicity.
    let probe = univalence_certificate_at(0.0, 0.5);
    report.push(CheckRecord::leq(
        "univalence:probe",
        "lambda=0, R=1/2",
        (probe.tanh_rho0() - 0.02233).abs(),
        1e-4,
        vec![[0.5, 0.0]],
    ));
    let mut previous: Option<f64> = None;
    for lambda in [0.0, 1.0, 2.0, 4.0, 8.0] {
        let cert = univalence_radius(lambda);
        let recomputed = cert.lambda_norm + 2.0 * cert.r_star / (1.0 - cert.r_star);
        report.push(CheckRecord::leq(
            "univalence:k0_consistency",
            format!("lambda={lambda}"),
            (recomputed - cert.k0).abs(),
            1e-12,
            vec![[cert.r_star, 0.0]],
        ));
        if let Some(prev) = previous {
            report.push(CheckRecord::leq(
                "univalence:radius_monotone",
                format!("lambda={lambda}"),
                cert.rho0,
                prev,
                vec![[cert.r_star, 0.0]],
            ));
        }
        previous = Some(cert.rho0);
    }
    Ok(report)
}

/// Distortion suite: sharp bounds for every fixture inside each class, the
/// equality margins on the extremal itself, and the Bloch bound.
fn suite_distortion() -> SuiteResult {
    let corpus = fixtures::corpus_with_order(CORPUS_ORDER);
    let norms = measured_norms(&corpus)?;
    let mut report = VerificationReport::new();
    let radii = [0.3, 0.6, 0.9];

    for lambda in [0.5, 1.0, 2.0] {
        for (fixture, &norm) in corpus.iter().zip(&norms) {
            if norm > 2.0 * lambda * (1.0 + TOL_SUP) {
                continue;
            }
            let univalent = fixture
                .known
                .univalent
                .as_ref()
                .map(|k| k.value)
                .unwrap_or(false);
            let detailed = distortion_report(
                &fixture.map,
                lambda,
                &radii,
                36,
                fixture.default_r_max(),
                univalent,
            )
            .map_err(core)?;
            report.notes.extend(detailed.notes.iter().cloned());
            for row in worst_rows(detailed, &format!("{} in class lambda={lambda};", fixture.name)) {
                report.push(row);
            }
        }
    }

    // Equality of the upper distortion bound on the positive real axis for
    // the extremal map itself.
    for lambda in [0.5, 1.0, 2.0] {
        let family = ExtremalFamily::build(lambda, CORPUS_ORDER).map_err(core)?;
        let map = family.as_map();
        let detailed =
            distortion_report(&map, lambda, &radii, 1, DEFAULT_RMAX, true).map_err(core)?;
        for check in detailed.checks {
            if check.check_id == "distortion:Lambda_upper" {
                report.push(CheckRecord::leq(
                    "distortion:equality_margin",
                    format!("H_{lambda} {}", check.subject),
                    check.margin.abs(),
                    1e-8,
                    check.locations,
                ));
            }
        }
    }

    // Bloch bound for every fixture within the critical class.
    for (fixture, &norm) in corpus.iter().zip(&norms) {
        if norm > 2.0 * (1.0 + TOL_SUP) {
            continue;
        }
        let est = bloch_seminorm(&fixture.map, fixture.default_r_max(), GridSpec::default())
            .map_err(core)?;
        let b1 = fixture.map.b1().norm();
        report.push(CheckRecord::leq(
            "bloch:bound",
            fixture.name.clone(),
            est.value,
            4.0 * (1.0 + b1),
            vec![est.location],
        ));
    }
    let h1 = fixtures::fixture("H_1", CORPUS_ORDER).expect("corpus member");
    let est = bloch_seminorm(&h1.map, h1.default_r_max(), GridSpec::default()).map_err(core)?;
    report.push(CheckRecord::leq(
        "bloch:H_1_reaches_4",
        "H_1",
        3.9,
        est.value,
        vec![est.location],
    ));
    Ok(report)
}

/// Hyperbolic-Lipschitz suite: seeded random pairs for each extremal class
/// plus the radial equality pair.
fn suite_lipschitz(samples: usize, seed: u64) -> SuiteResult {
    let mut report = VerificationReport::new();
    for lambda in [0.5, 1.0, 2.0] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4c49_5053);
        let family = ExtremalFamily::build(lambda, CORPUS_ORDER).map_err(core)?;
        let map = family.as_map();
        let pairs: Vec<(Complex64, Complex64, f64)> = (0..samples)
            .map(|_| {
                (
                    sample_disk(&mut rng, 0.85),
                    sample_disk(&mut rng, 0.85),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let detailed = lipschitz_check(&map, lambda, &pairs, 0.95).map_err(core)?;
        report.notes.extend(detailed.notes.iter().cloned());
        for mut check in detailed.checks {
            check.subject = format!("H_{lambda} {}", check.subject);
            report.push(check);
        }
    }

    // Radial equality pair: |delta u| = 2 d_h exactly.
    let family = ExtremalFamily::build(1.0, CORPUS_ORDER).map_err(core)?;
    let pair = [(Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0), 0.0)];
    let detailed = lipschitz_check(&family.as_map(), 1.0, &pair, 0.95).map_err(core)?;
    report.push(CheckRecord::leq(
        "lipschitz:equality_margin",
        "H_1 radial pair (0, 1/2)",
        detailed.checks[0].margin.abs(),
        1e-6,
        vec![[0.0, 0.0], [0.5, 0.0]],
    ));
    Ok(report)
}

/// Chain-rule suite: residual of the pullback identity on seeded random
/// (fixture, pullback, xi, theta) tuples.
fn suite_chain_rule(samples: usize, seed: u64) -> SuiteResult {
    let corpus = fixtures::corpus_with_order(1024);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4348_4149);
    let mut report = VerificationReport::new();
    for index in 0..samples {
        let fixture = &corpus[rng.gen_range(0..corpus.len())];
        let center = sample_disk(&mut rng, 0.6);
        let scale = rng.gen_range(0.1..0.9);
        let xi = sample_disk(&mut rng, 0.6);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let pullback = MoebiusPullback::new(center, scale).map_err(core)?;
        let residual =
            chain_rule_residual(&fixture.map, &pullback, theta, xi, 0.95).map_err(core)?;
        report.push(CheckRecord::leq(
            format!("chain-rule:{index}"),
            format!("{} a={center} R={scale:.6} theta={theta:.6}", fixture.name),
            residual,
            1e-9,
            vec![[xi.re, xi.im]],
        ));
    }
    Ok(report)
}

/// Quasiconformal integral-means suite.
fn suite_qc_means() -> SuiteResult {
    let mut report = VerificationReport::new();
    let radii = [0.3, 0.6, 0.8];

    let identity = fixtures::fixture("identity", 8).expect("corpus member");
    for p in [1.0, 2.0, 3.0] {
        let detailed = qc_means_check(&identity.map, 0.0, p, &radii, DEFAULT_RMAX).map_err(core)?;
        for mut check in detailed.checks {
            check.subject = format!("identity {}", check.subject);
            report.push(check);
        }
    }

    let shear = fixtures::fixture("shear_k0.5", 8).expect("corpus member");
    for p in [0.5, 1.0, 2.0] {
        let detailed = qc_means_check(&shear.map, 0.5, p, &radii, DEFAULT_RMAX).map_err(core)?;
        for mut check in detailed.checks {
            check.subject = format!("shear_k0.5 {}", check.subject);
            report.push(check);
        }
    }

    let strict = report
        .checks
        .iter()
        .map(|c| c.margin)
        .fold(f64::INFINITY, f64::min);
    report.push(CheckRecord::leq(
        "qc-means:strictly_positive",
        "minimum margin over the suite",
        0.0,
        strict,
        vec![[0.0, 0.0]],
    ));
    Ok(report)
}

/// Exponent suite: coefficient growth, integral-means growth, Hardy
/// thresholds and membership trends.
fn suite_exponents() -> SuiteResult {
    let mut report = VerificationReport::new();

    for lambda in [1.5, 2.0, 3.0] {
        let family = ExtremalFamily::build(lambda, GAMMA_ORDER).map_err(core)?;
        let fit = gamma_estimate(&family.as_map(), GAMMA_ORDER / 4, GAMMA_ORDER).map_err(core)?;
        report.push(CheckRecord::leq(
            "gamma:extremal",
            format!("H_{lambda}: |slope - (lambda-1)|"),
            (fit.slope - (lambda - 1.0)).abs(),
            0.1,
            vec![[0.0, 0.0]],
        ));
        report.push(CheckRecord::leq(
            "gamma:alpha_bound",
            format!("H_{lambda}: slope <= alpha + 0.05"),
            fit.slope,
            alpha(lambda) + 0.05,
            vec![[0.0, 0.0]],
        ));
    }
    let family = ExtremalFamily::build(1.0, GAMMA_ORDER).map_err(core)?;
    let fit = gamma_estimate(&family.as_map(), GAMMA_ORDER / 4, GAMMA_ORDER).map_err(core)?;
    report.push(CheckRecord::leq(
        "gamma:H_1_flat",
        "H_1: |slope|",
        fit.slope.abs(),
        0.05,
        vec![[0.0, 0.0]],
    ));

    let h2 = ExtremalFamily::build(2.0, BETA_ORDER).map_err(core)?.as_map();
    let window = log_spaced_radii(0.9, 0.99, 11);
    let fit = beta_estimate(&h2, 0.0, 1.0, &window, 0.995).map_err(core)?;
    report.push(CheckRecord::leq(
        "beta:H_2_p1",
        "slope <= alpha(2) + 0.1",
        fit.slope,
        alpha(2.0) + 0.1,
        vec![[0.0, 0.0]],
    ));
    let shifted = beta_estimate(&h2, 0.0, 1.0, &log_spaced_radii(0.92, 0.985, 11), 0.995)
        .map_err(core)?;
    report.push(CheckRecord::leq(
        "beta:window_stability",
        "slope shift between windows",
        (fit.slope - shifted.slope).abs(),
        0.05,
        vec![[0.0, 0.0]],
    ));

    let thresholds = hardy_thresholds(2.0).map_err(core)?;
    report.push(CheckRecord::leq(
        "hardy:threshold_qc",
        "lambda=2: p_qc = 1",
        (thresholds.p_qc - 1.0).abs(),
        1e-15,
        vec![[0.0, 0.0]],
    ));
    report.push(CheckRecord::leq(
        "hardy:threshold_general",
        "lambda=2: p_general = 1/3",
        (thresholds.p_general - 1.0 / 3.0).abs(),
        1e-15,
        vec![[0.0, 0.0]],
    ));
    for lambda in [1.5, 2.0, 4.0] {
        let t = hardy_thresholds(lambda).map_err(core)?;
        report.push(CheckRecord::leq(
            "hardy:threshold_order",
            format!("lambda={lambda}: p_general <= p_qc"),
            t.p_general,
            t.p_qc,
            vec![[0.0, 0.0]],
        ));
    }

    // Membership probes on the deep window.
    let deep_window = log_spaced_radii(0.99, 0.9999, 11);
    let deep_rmax = 0.99995;
    let h2_deep = ExtremalFamily::build(2.0, DEEP_ORDER).map_err(core)?.as_map();
    let probe = hardy_membership_probe(&h2_deep, 0.5, &deep_window, deep_rmax).map_err(core)?;
    let rise = last_three_rise(&probe.samples);
    report.push(CheckRecord::leq(
        "hardy:H_2_below_threshold_bounded",
        "p=0.5 < 1/(lambda-1)",
        rise,
        0.01,
        vec![[0.9999, 0.0]],
    ));
    if probe.verdict != Trend::BoundedTrend {
        report.note("probe verdict disagrees with the recorded rise");
    }
    let probe = hardy_membership_probe(&h2_deep, 2.0, &deep_window, deep_rmax).map_err(core)?;
    let rise = last_three_rise(&probe.samples);
    report.push(CheckRecord::leq(
        "hardy:H_2_above_threshold_growing",
        "p=2 > 1/(lambda-1)",
        0.01,
        rise,
        vec![[0.9999, 0.0]],
    ));
    report.push(CheckRecord::leq(
        "hardy:H_2_growth_exponent",
        "p=2: |slope - (p(lambda-1) - 1)|",
        (probe.growth.slope - 1.0).abs(),
        0.2,
        vec![[0.9999, 0.0]],
    ));

    // Every fixture inside the lambda=2 class trends bounded at
    // p = 0.9/(lambda^2-1) = 0.3.
    let corpus = fixtures::corpus_with_order(CORPUS_ORDER);
    let norms = measured_norms(&corpus)?;
    for (fixture, &norm) in corpus.iter().zip(&norms) {
        if norm > 4.0 * (1.0 + TOL_SUP) {
            continue;
        }
        let deep = fixtures::fixture(&fixture.name, DEEP_ORDER)
            .expect("corpus names rebuild at any order");
        let probe = hardy_membership_probe(&deep.map, 0.3, &deep_window, deep_rmax).map_err(core)?;
        report.push(CheckRecord::leq(
            "hardy:class_bounded_trend",
            format!("{} at p=0.3", fixture.name),
            last_three_rise(&probe.samples),
            0.01,
            vec![[0.9999, 0.0]],
        ));
    }
    Ok(report)
}

fn last_three_rise(samples: &[(f64, f64)]) -> f64 {
    let tail = &samples[samples.len() - 3..];
    (tail[2].1 - tail[0].1) / tail[0].1
}

fn run_suite(name: SuiteName, args: &VerifyArgs) -> SuiteResult {
    match name {
        SuiteName::Extremal => suite_extremal(),
        SuiteName::Distortion => suite_distortion(),
        SuiteName::Lipschitz => suite_lipschitz(args.samples, args.seed),
        SuiteName::ChainRule => suite_chain_rule(args.samples, args.seed),
        SuiteName::QcMeans => suite_qc_means(),
        SuiteName::Exponents => suite_exponents(),
        SuiteName::All => {
            let mut merged = VerificationReport::new();
            for suite in [
                SuiteName::Extremal,
                SuiteName::Distortion,
                SuiteName::Lipschitz,
                SuiteName::ChainRule,
                SuiteName::QcMeans,
                SuiteName::Exponents,
            ] {
                merged.merge(run_suite(suite, args)?);
            }
            Ok(merged)
        }
    }
}

fn suite_label(name: SuiteName) -> &'static str {
    match name {
        SuiteName::Extremal => "extremal",
        SuiteName::Distortion => "distortion",
        SuiteName::Lipschitz => "lipschitz",
        SuiteName::ChainRule => "chain-rule",
        SuiteName::QcMeans => "qc-means",
        SuiteName::Exponents => "exponents",
        SuiteName::All => "all",
    }
}

pub fn run(args: &VerifyArgs) -> Result<bool, String> {
    let report = run_suite(args.suite, args)?;
    let all_pass = report.all_pass();
    match args.format {
        Format::Json => {
            let document = json!({
                "schema_version": 1,
                "suite": suite_label(args.suite),
                "seed": args.seed,
                "samples": args.samples,
                "report": report.to_json(),
            });
            emit(
                &serde_json::to_string_pretty(&document).expect("report serializes"),
                &args.out,
            )?;
        }
        Format::Csv => emit(&report.to_csv(), &args.out)?,
    }
    Ok(all_pass)
}
