use serde::{Serialize, Serializer};

use crate::yangian::SiteConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Pass,
    Fail,
    CalibrationFallback,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::CalibrationFallback => "calibration-fallback",
        }
    }

    /// Status of a convention-dependent claim: `fail` if over tolerance,
    /// otherwise `pass` only when the convention was fully calibrated.
    pub fn grade(max_abs_error: f64, tolerance: f64, calibrated: bool) -> Self {
        if max_abs_error.is_nan() || max_abs_error >= tolerance {
            ClaimStatus::Fail
        } else if calibrated {
            ClaimStatus::Pass
        } else {
            ClaimStatus::CalibrationFallback
        }
    }
}

impl Serialize for ClaimStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Outcome of one executable claim. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub trials: usize,
    pub seed: u64,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub convention_used: SiteConvention,
    pub status: ClaimStatus,
    pub notes: String,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.status == ClaimStatus::Pass
    }
}

/// Pretty JSON array of reports followed by a newline.
pub fn reports_to_json(reports: &[ClaimReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports are plain data");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_in_contract_order() {
        let r = ClaimReport {
            claim_id: "eq3".into(),
            trials: 3,
            seed: 42,
            max_abs_error: 1.5e-16,
            tolerance: 1e-10,
            convention_used: SiteConvention::Conjugate,
            status: ClaimStatus::CalibrationFallback,
            notes: String::new(),
        };
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"claim_id":"eq3","trials":3,"seed":42,"max_abs_error":1.5e-16,"tolerance":1e-10,"convention_used":"conjugate","status":"calibration-fallback","notes":""}"#
        );
        assert!(reports_to_json(&[r]).ends_with("]\n"));
    }

    #[test]
    fn grading() {
        assert_eq!(ClaimStatus::grade(1e-12, 1e-10, true), ClaimStatus::Pass);
        assert_eq!(
            ClaimStatus::grade(1e-12, 1e-10, false),
            ClaimStatus::CalibrationFallback
        );
        assert_eq!(ClaimStatus::grade(1e-10, 1e-10, true), ClaimStatus::Fail);
        assert_eq!(ClaimStatus::grade(f64::NAN, 1e-10, true), ClaimStatus::Fail);
    }
}
