//! Numerical checks of the worked examples, reports and sweeps.

mod calibration;
mod checks;
mod compare;
mod report;
mod sampling;
mod stated;
mod sweep;

use std::str::FromStr;

pub use calibration::{
    calibrate_conventions, calibrate_or_fallback, score_convention, Calibration, CalibrationFailed, CalibrationOutcome,
    ConventionResiduals, CALIBRATION_ID,
};
pub use checks::*;
pub use compare::{phase_aligned_residual, ratio_residual};
pub use report::{reports_to_json, ClaimReport, ClaimStatus};
pub use sampling::Sampler;
pub use stated::{
    closed_form_c_final, hypercharge_constraint, hypercharge_final, triple_final, v_pair_constraint, v_pair_final,
    FinalForm, LadderTriple,
};
pub use sweep::{
    check_range, final_entanglement_sweep, grid_point, initial_entanglement_sweep, sweep_alpha, SweepGrid, SweepMode,
    SweepRow, ALPHA_RANGE, DEFAULT_GRID, DISK_TOLERANCE,
};

use crate::error::Error;
use crate::yangian::SiteConvention;

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 42;

/// Trials for the closed-form initial entanglement when not overridden.
pub const INITIAL_CLOSED_FORM_TRIALS: usize = 1000;

/// Claim groups selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimSelection {
    All,
    InitialClosedForm,
    VPair,
    Hypercharge,
    FinalClosedForms,
    Invariance,
    Disentangle,
}

impl ClaimSelection {
    pub const NAMES: [&'static str; 7] = ["all", "eq3", "eq7", "eq9", "eq8eq10", "invariance", "disentangle"];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimSelection::All => "all",
            ClaimSelection::InitialClosedForm => INITIAL_CLOSED_FORM_ID,
            ClaimSelection::VPair => V_PAIR_ID,
            ClaimSelection::Hypercharge => HYPERCHARGE_ID,
            ClaimSelection::FinalClosedForms => FINAL_CLOSED_FORMS_ID,
            ClaimSelection::Invariance => "invariance",
            ClaimSelection::Disentangle => "disentangle",
        }
    }

    /// Whether the result depends on the antiquark-site convention.
    pub fn convention_dependent(self) -> bool {
        self != ClaimSelection::InitialClosedForm
    }
}

impl FromStr for ClaimSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "all" => ClaimSelection::All,
            "eq3" => ClaimSelection::InitialClosedForm,
            "eq7" => ClaimSelection::VPair,
            "eq9" => ClaimSelection::Hypercharge,
            "eq8eq10" => ClaimSelection::FinalClosedForms,
            "invariance" => ClaimSelection::Invariance,
            "disentangle" => ClaimSelection::Disentangle,
            other => return Err(Error::InvalidSymbol(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub selection: ClaimSelection,
    /// `None` uses each claim's default trial count
    pub trials: Option<usize>,
    pub seed: u64,
    pub tolerance: f64,
    /// skips calibration when set
    pub convention: Option<SiteConvention>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            selection: ClaimSelection::All,
            trials: None,
            seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
            convention: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub reports: Vec<ClaimReport>,
    pub calibration_failed: bool,
}

impl VerifyOutcome {
    /// 4 when calibration failed, otherwise 1 if any claim failed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.calibration_failed {
            4
        } else if self.reports.iter().any(|r| r.status == ClaimStatus::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        reports_to_json(&self.reports)
    }
}

/// Runs the selected claims, calibrating the site convention first unless
/// one is given.
pub fn run_verify(opts: &VerifyOptions) -> VerifyOutcome {
    let trials = opts.trials.unwrap_or(DEFAULT_TRIALS);
    let mut reports = Vec::new();
    let mut calibration_failed = false;

    let (convention, calibrated) = match opts.convention {
        Some(c) => (c, true),
        None if opts.selection.convention_dependent() => {
            let cal = calibrate_or_fallback(trials, opts.seed, opts.tolerance);
            calibration_failed = cal.outcome == CalibrationOutcome::Failed;
            reports.push(cal.report());
            (cal.convention, cal.is_calibrated())
        }
        None => (SiteConvention::default(), true),
    };
    let ctx = ClaimContext {
        trials,
        seed: opts.seed,
        tolerance: opts.tolerance,
        convention,
        calibrated,
    };

    use ClaimSelection as S;
    let wants = |s: ClaimSelection| opts.selection == S::All || opts.selection == s;
    if wants(S::InitialClosedForm) {
        let initial = ClaimContext {
            trials: opts.trials.unwrap_or(INITIAL_CLOSED_FORM_TRIALS),
            ..ctx
        };
        reports.push(verify_initial_closed_form(&initial));
    }
    if wants(S::VPair) {
        reports.push(verify_v_pair(&ctx));
    }
    if wants(S::Hypercharge) {
        reports.push(verify_hypercharge(&ctx));
    }
    if wants(S::FinalClosedForms) {
        reports.push(verify_final_closed_forms(&ctx));
    }
    if wants(S::Invariance) {
        for triple in LadderTriple::ALL {
            reports.push(verify_invariance(triple, &ctx));
        }
    }
    if wants(S::Disentangle) {
        for pair in DisentanglingPair::ALL {
            reports.push(verify_disentangle(pair, &ctx));
        }
    }
    VerifyOutcome {
        reports,
        calibration_failed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_names_round_trip() {
        for name in ClaimSelection::NAMES {
            assert_eq!(name.parse::<ClaimSelection>().unwrap().as_str(), name);
        }
        assert!("eq4".parse::<ClaimSelection>().is_err());
    }

    #[test]
    fn initial_closed_form_alone_needs_no_calibration() {
        let out = run_verify(&VerifyOptions {
            selection: ClaimSelection::InitialClosedForm,
            trials: Some(50),
            ..VerifyOptions::default()
        });
        assert_eq!(out.reports.len(), 1);
        assert_eq!(out.reports[0].claim_id, "eq3");
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn exit_code_priorities() {
        let mut out = VerifyOutcome {
            reports: vec![],
            calibration_failed: false,
        };
        assert_eq!(out.exit_code(), 0);
        let mut r = check_initial_closed_form(&sweep_alpha());
        r.status = ClaimStatus::CalibrationFallback;
        out.reports.push(r.clone());
        assert_eq!(out.exit_code(), 0);
        r.status = ClaimStatus::Fail;
        out.reports.push(r);
        assert_eq!(out.exit_code(), 1);
        out.calibration_failed = true;
        assert_eq!(out.exit_code(), 4);
    }

    #[test]
    fn calibration_report_leads_dependent_claims() {
        let out = run_verify(&VerifyOptions {
            selection: ClaimSelection::VPair,
            trials: Some(5),
            ..VerifyOptions::default()
        });
        assert_eq!(out.reports[0].claim_id, CALIBRATION_ID);
        assert_eq!(out.reports[1].claim_id, "eq7");
        assert_eq!(out.reports[1].convention_used, out.reports[0].convention_used);
    }
}
