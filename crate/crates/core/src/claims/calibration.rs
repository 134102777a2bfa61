//! Empirical choice of the antiquark-site representation.
//!
//! Each convention is scored on two worked examples: the V̄-pair output must
//! lie in span{K⁺, K⁻} with amplitudes ∝ (amp_uū, amp_ss̄), and the lowering
//! triple at μ+ν = 1 must lie in span{π⁺, K⁰, K⁻} with the stated
//! amplitudes. Span membership is the hard requirement; amplitude ratios
//! decide between `pass` and `calibration-fallback`.

use std::fmt::Write as _;

use thiserror::Error;

use super::checks::PARAM_RANGE;
use super::compare::ratio_residual;
use super::report::{ClaimReport, ClaimStatus};
use super::sampling::Sampler;
use super::stated::{triple_final, v_pair_final, LadderTriple};
use crate::expr::parse_operator_expr;
use crate::meson::{out_of_span_norm, MesonLabel};
use crate::pair_state::initial_state;
use crate::su3::max_abs;
use crate::yangian::{kron, ladder, realize, LadderSymbol, SiteConvention, YangianParams, ZERO_STATE_THRESHOLD};
use nalgebra::SMatrix;

pub const CALIBRATION_ID: &str = "calibration";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConventionResiduals {
    pub convention: SiteConvention,
    pub v_pair_span: f64,
    pub v_pair_ratio: f64,
    pub lowering_span: f64,
    pub lowering_ratio: f64,
    /// λ=0, μ=0, ν=1: V̄⁺ must equal the bare site-2 raising operator.
    pub site2_anchor: f64,
    pub skipped: usize,
}

impl ConventionResiduals {
    pub fn span(&self) -> f64 {
        self.v_pair_span.max(self.lowering_span)
    }

    pub fn ratio(&self) -> f64 {
        self.v_pair_ratio.max(self.lowering_ratio)
    }

    pub fn worst(&self) -> f64 {
        self.span().max(self.ratio())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalibrationOutcome {
    /// spans and ratios reproduced
    Pass,
    /// spans reproduced, ratios not
    Fallback,
    /// no convention reproduces the spans
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub outcome: CalibrationOutcome,
    pub convention: SiteConvention,
    pub residuals: Vec<ConventionResiduals>,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("calibration failed: no site convention keeps the final states in the stated meson spans (best: {})", .0.convention)]
pub struct CalibrationFailed(pub Box<Calibration>);

impl Calibration {
    pub fn is_calibrated(&self) -> bool {
        self.outcome == CalibrationOutcome::Pass
    }

    pub fn chosen(&self) -> &ConventionResiduals {
        self.residuals
            .iter()
            .find(|r| r.convention == self.convention)
            .expect("chosen convention was scored")
    }

    pub fn report(&self) -> ClaimReport {
        let status = match self.outcome {
            CalibrationOutcome::Pass => ClaimStatus::Pass,
            CalibrationOutcome::Fallback => ClaimStatus::CalibrationFallback,
            CalibrationOutcome::Failed => ClaimStatus::Fail,
        };
        let mut notes = match self.outcome {
            CalibrationOutcome::Pass => String::from("spans and ratios reproduced"),
            CalibrationOutcome::Fallback => String::from("spans reproduced, amplitude ratios not"),
            CalibrationOutcome::Failed => {
                String::from("no convention reproduces the stated spans; downstream claims use the convention with the smallest span leakage")
            }
        };
        for r in &self.residuals {
            write!(
                notes,
                "; {}: V+ + V- span {:.3e} ratio {:.3e}, I- + U- + V- span {:.3e} ratio {:.3e}, site-2 anchor {:.3e}",
                r.convention, r.v_pair_span, r.v_pair_ratio, r.lowering_span, r.lowering_ratio, r.site2_anchor
            )
            .unwrap();
            if r.skipped > 0 {
                write!(notes, ", {} vanishing outputs skipped", r.skipped).unwrap();
            }
        }
        ClaimReport {
            claim_id: CALIBRATION_ID.to_string(),
            trials: self.trials,
            seed: self.seed,
            max_abs_error: self.chosen().worst(),
            tolerance: self.tolerance,
            convention_used: self.convention,
            status,
            notes,
        }
    }
}

fn site2_anchor(conv: SiteConvention) -> f64 {
    let p = YangianParams::new(0.0, 1.0, 0.0).expect("finite");
    let op = ladder(LadderSymbol::VPlus, &p, conv);
    let gens = conv.site2_generators();
    let raise = gens[3] + gens[4] * crate::Complex64::new(0.0, 1.0);
    let bare = kron(&SMatrix::identity(), &raise);
    max_abs(&(op.matrix() - bare))
}

/// Scores one convention over `trials` random (α, ν, λ).
pub fn score_convention(conv: SiteConvention, trials: usize, seed: u64) -> ConventionResiduals {
    let v_pair = parse_operator_expr("V+ + V-").expect("valid expression");
    let lowering = parse_operator_expr(LadderTriple::Lowering.expression()).expect("valid expression");
    let mut sampler = Sampler::new(seed);
    let mut r = ConventionResiduals {
        convention: conv,
        v_pair_span: 0.0,
        v_pair_ratio: 0.0,
        lowering_span: 0.0,
        lowering_ratio: 0.0,
        site2_anchor: site2_anchor(conv),
        skipped: 0,
    };
    for _ in 0..trials {
        let alpha = sampler.alpha();
        let nu = sampler.uniform(PARAM_RANGE.0, PARAM_RANGE.1);
        let lambda = sampler.uniform(PARAM_RANGE.0, PARAM_RANGE.1);
        let phi = initial_state(&alpha);

        let p = YangianParams::with_half_lambda_mu(nu, lambda).expect("finite");
        let out = realize(&v_pair, &p, conv).act(&phi);
        if out.norm() < ZERO_STATE_THRESHOLD {
            r.skipped += 1;
        } else {
            let unit = out * (1.0 / out.norm());
            r.v_pair_span = r
                .v_pair_span
                .max(out_of_span_norm(&unit, &[MesonLabel::KPlus, MesonLabel::KMinus]));
            if let Some(d) = ratio_residual(&out, &v_pair_final(&alpha, nu, lambda)) {
                r.v_pair_ratio = r.v_pair_ratio.max(d);
            }
        }

        let p = YangianParams::with_unit_sum(lambda).expect("finite");
        let out = realize(&lowering, &p, conv).act(&phi);
        if out.norm() < ZERO_STATE_THRESHOLD {
            r.skipped += 1;
        } else {
            let unit = out * (1.0 / out.norm());
            r.lowering_span = r
                .lowering_span
                .max(out_of_span_norm(&unit, &LadderTriple::Lowering.support()));
            if let Some(d) = ratio_residual(&out, &triple_final(LadderTriple::Lowering, &alpha)) {
                r.lowering_ratio = r.lowering_ratio.max(d);
            }
        }
    }
    r
}

/// Tries both antiquark conventions and picks the one that reproduces the
/// worked examples. `Err` carries the full scoring and the better of the two
/// conventions when neither keeps the outputs in the stated spans.
pub fn calibrate_conventions(trials: usize, seed: u64, tolerance: f64) -> Result<Calibration, CalibrationFailed> {
    let residuals: Vec<_> = SiteConvention::ALL
        .into_iter()
        .map(|c| score_convention(c, trials, seed))
        .collect();
    let spans_ok = |r: &&ConventionResiduals| r.span() < tolerance;
    let ratios_ok = |r: &&ConventionResiduals| r.ratio() < tolerance;

    let (outcome, convention) = if let Some(r) = residuals.iter().filter(spans_ok).find(ratios_ok) {
        (CalibrationOutcome::Pass, r.convention)
    } else if let Some(r) = residuals.iter().find(spans_ok) {
        (CalibrationOutcome::Fallback, r.convention)
    } else {
        let best = residuals
            .iter()
            .min_by(|a, b| a.span().total_cmp(&b.span()).then(a.ratio().total_cmp(&b.ratio())))
            .expect("two conventions scored");
        (CalibrationOutcome::Failed, best.convention)
    };
    let calibration = Calibration {
        outcome,
        convention,
        residuals,
        trials,
        seed,
        tolerance,
    };
    if outcome == CalibrationOutcome::Failed {
        Err(CalibrationFailed(Box::new(calibration)))
    } else {
        Ok(calibration)
    }
}

/// The calibration whether or not it failed.
pub fn calibrate_or_fallback(trials: usize, seed: u64, tolerance: f64) -> Calibration {
    match calibrate_conventions(trials, seed, tolerance) {
        Ok(c) => c,
        Err(CalibrationFailed(c)) => *c,
    }
}
