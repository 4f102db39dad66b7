//! Coefficient ingestion and export in the shared JSON format
//! `{"h": [[re, im], ...], "g": [[re, im], ...]}` listing `c_0 .. c_N`.

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{CoreError, Result};
use crate::hmap::HarmonicMap;
use crate::series::ComplexSeries;

#[derive(Deserialize)]
struct CoefficientDoc {
    h: Option<Vec<[f64; 2]>>,
    g: Option<Vec<[f64; 2]>>,
}

fn series_from_pairs(pairs: &[[f64; 2]]) -> Result<ComplexSeries> {
    ComplexSeries::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

/// Parses a coefficient document. The analytic part is required; a missing
/// co-analytic part means `g = 0`.
pub fn map_from_json(text: &str) -> Result<HarmonicMap> {
    let doc: CoefficientDoc = serde_json::from_str(text)
        .map_err(|e| CoreError::InvalidParameter(format!("coefficient document: {e}")))?;
    let h = match doc.h {
        Some(pairs) if !pairs.is_empty() => series_from_pairs(&pairs)?,
        Some(_) => {
            return Err(CoreError::InvalidParameter(
                "h coefficients missing (empty list)".into(),
            ))
        }
        None => return Err(CoreError::InvalidParameter("h coefficients missing".into())),
    };
    let g = match doc.g {
        Some(pairs) if !pairs.is_empty() => series_from_pairs(&pairs)?,
        _ => ComplexSeries::zero(0),
    };
    Ok(HarmonicMap::new(h, g))
}

/// Serializes a map to the coefficient format.
pub fn map_to_json(f: &HarmonicMap) -> String {
    let encode = |s: &ComplexSeries| -> Vec<[f64; 2]> {
        s.coeffs().iter().map(|c| [c.re, c.im]).collect()
    };
    serde_json::json!({
        "h": encode(f.h()),
        "g": encode(f.g()),
    })
    .to_string()
}
