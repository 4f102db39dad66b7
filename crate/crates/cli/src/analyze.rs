//! The `analyze` subcommand: one document per input with the measured norm,
//! dilatation constant, Bloch seminorm, univalence certificate, coefficient
//! growth, Hardy thresholds, covering radius and distortion report.

use harmdisk::analysis::{bloch_seminorm, gamma_estimate, hardy_thresholds};
use harmdisk::error::CoreError;
use harmdisk::extremal::{covering_radius, distortion_report};
use harmdisk::fixtures;
use harmdisk::hmap::{HarmonicMap, QcEstimate};
use harmdisk::preschwarzian::{norm_estimate, univalence_radius};
use harmdisk::report::VerificationReport;
use harmdisk::tol::{DEFAULT_RMAX, TAIL_TOL, TOL_SUP};
use serde_json::json;

use crate::{emit, AnalyzeArgs, Format};

struct Subject {
    name: String,
    map: HarmonicMap,
    r_max: f64,
    univalent: bool,
}

fn load(args: &AnalyzeArgs) -> Result<Subject, String> {
    if let Some(name) = &args.fixture {
        let fixture = fixtures::fixture(name, args.order)
            .ok_or_else(|| format!("unknown fixture {name:?}; try `harmdisk fixtures`"))?;
        let r_max = args.rmax.unwrap_or_else(|| fixture.default_r_max());
        let univalent = fixture
            .known
            .univalent
            .as_ref()
            .map(|k| k.value)
            .unwrap_or(false);
        return Ok(Subject {
            name: fixture.name,
            map: fixture.map,
            r_max,
            univalent,
        });
    }
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| "nothing to analyze: pass a file or --fixture NAME".to_string())?;
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let map = harmdisk::io::map_from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let r_max = args
        .rmax
        .unwrap_or_else(|| map.trusted_radius(TAIL_TOL).min(DEFAULT_RMAX));
    Ok(Subject {
        name: path.display().to_string(),
        map,
        r_max,
        univalent: false,
    })
}

pub fn run(args: &AnalyzeArgs) -> Result<bool, String> {
    let subject = load(args)?;
    let map = &subject.map;
    let mut notes: Vec<String> = Vec::new();

    let norm = match norm_estimate(map, subject.r_max, args.grid, args.ntheta) {
        Ok(est) => Some(est),
        Err(e @ CoreError::NotSensePreserving { .. })
        | Err(e @ CoreError::SliceDerivativeVanishes { .. }) => {
            notes.push(format!("sup-norm estimate unavailable: {e}"));
            None
        }
        Err(e) => return Err(e.to_string()),
    };

    let qc = match map.qc_constant_estimate(subject.r_max, args.grid) {
        Ok(QcEstimate::SensePreserving { value, converged }) => {
            json!({"kind": "sense-preserving", "value": value, "converged": converged})
        }
        Ok(QcEstimate::NotSensePreserving { witness }) => {
            notes.push("input is not sense-preserving; analysis continues where meaningful".into());
            json!({"kind": "not-sense-preserving", "witness": witness})
        }
        Err(e) => return Err(e.to_string()),
    };

    let bloch = bloch_seminorm(map, subject.r_max, args.grid).map_err(|e| e.to_string())?;

    let order = map.h().order().max(map.g().order());
    let gamma = match gamma_estimate(map, (order / 4).max(1), order) {
        Ok(fit) => serde_json::to_value(&fit).expect("fit serializes"),
        Err(CoreError::DegenerateTail) | Err(CoreError::InvalidParameter(_)) => {
            notes.push("coefficient-growth fit degenerate (polynomial tail)".into());
            serde_json::Value::Null
        }
        Err(e) => return Err(e.to_string()),
    };

    let mut lambda = serde_json::Value::Null;
    let mut univalence = serde_json::Value::Null;
    let mut hardy = serde_json::Value::Null;
    let mut covering = serde_json::Value::Null;
    let mut distortion = VerificationReport::new();
    if let Some(est) = &norm {
        let lambda_measured = est.value / 2.0;
        lambda = json!(lambda_measured);
        let cert = univalence_radius(est.value);
        univalence = json!({
            "lambda_norm": cert.lambda_norm,
            "r_star": cert.r_star,
            "k0": cert.k0,
            "rho0": cert.rho0,
            "tanh_rho0": cert.tanh_rho0(),
        });
        hardy = serde_json::to_value(hardy_thresholds(lambda_measured).map_err(|e| e.to_string())?)
            .expect("thresholds serialize");
        covering = json!(covering_radius(lambda_measured).map_err(|e| e.to_string())?);
        // The measured norm is a lower estimate, so the distortion class gets
        // the sup-estimate headroom; otherwise equality cases sit exactly on
        // the bound and flicker.
        let lambda_report = lambda_measured * (1.0 + TOL_SUP);
        let radii: Vec<f64> = [0.3, 0.6, 0.9]
            .iter()
            .copied()
            .filter(|r| *r <= subject.r_max)
            .collect();
        distortion = distortion_report(
            map,
            lambda_report,
            &radii,
            64,
            subject.r_max,
            subject.univalent,
        )
        .map_err(|e| e.to_string())?;
    }

    let document = json!({
        "schema_version": 1,
        "subject": subject.name,
        "order": order,
        "r_max": subject.r_max,
        "grid": args.grid,
        "n_theta": args.ntheta,
        "norm": norm,
        "qc": qc,
        "bloch": bloch,
        "lambda": lambda,
        "univalence": univalence,
        "gamma": gamma,
        "hardy_thresholds": hardy,
        "covering_radius": covering,
        "distortion": distortion.to_json(),
        "notes": notes,
    });

    let all_pass = distortion.all_pass();
    match args.format {
        Format::Json => emit(
            &serde_json::to_string_pretty(&document).expect("document serializes"),
            &args.out,
        )?,
        Format::Csv => emit(&distortion.to_csv(), &args.out)?,
    }
    Ok(all_pass)
}
