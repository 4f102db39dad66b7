//! Structured pass/fail records for inequality checks.
//!
//! Every record asserts `lhs <= rhs`; the margin is `rhs - lhs` and a check
//! passes when the margin is at least `-TOL_CHECK`. A failing check always
//! carries at least one witness location.

use serde::Serialize;

use crate::tol::TOL_CHECK;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub subject: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    /// Witness points as `[re, im]` pairs.
    pub locations: Vec<[f64; 2]>,
}

impl CheckRecord {
    /// Records the assertion `lhs <= rhs` with the default tolerance.
    pub fn leq(
        check_id: impl Into<String>,
        subject: impl Into<String>,
        lhs: f64,
        rhs: f64,
        locations: Vec<[f64; 2]>,
    ) -> Self {
        let margin = rhs - lhs;
        let pass = margin >= -TOL_CHECK;
        debug_assert!(
            pass || !locations.is_empty(),
            "failing checks must carry a witness location"
        );
        CheckRecord {
            check_id: check_id.into(),
            subject: subject.into(),
            lhs,
            rhs,
            margin,
            pass,
            locations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    /// Diagnostics that are not checks (skipped pairs and the like).
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn summary(&self) -> Summary {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        Summary {
            passed,
            failed: self.checks.len() - passed,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Rows under the header `check_id,subject,lhs,rhs,margin,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,subject,lhs,rhs,margin,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.check_id, c.subject, c.lhs, c.rhs, c.margin, c.pass
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "checks": self.checks,
            "notes": self.notes,
            "summary": self.summary(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_and_pass_convention() {
        let ok = CheckRecord::leq("t", "s", 1.0, 2.0, vec![]);
        assert!(ok.pass && (ok.margin - 1.0).abs() < 1e-15);

        let borderline = CheckRecord::leq("t", "s", 1.0, 1.0 - 0.5 * TOL_CHECK, vec![[0.0, 0.0]]);
        assert!(borderline.pass);

        let bad = CheckRecord::leq("t", "s", 2.0, 1.0, vec![[0.1, 0.2]]);
        assert!(!bad.pass);
    }

    #[test]
    fn summary_counts() {
        let mut report = VerificationReport::new();
        report.push(CheckRecord::leq("a", "s", 0.0, 1.0, vec![]));
        report.push(CheckRecord::leq("b", "s", 3.0, 1.0, vec![[0.0, 0.0]]));
        assert_eq!(report.summary(), Summary { passed: 1, failed: 1 });
        assert!(!report.all_pass());
        let csv = report.to_csv();
        assert!(csv.starts_with("check_id,subject,lhs,rhs,margin,pass\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
