//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::process::{Command, ExitCode};
use std::time::Instant;

use yangian::claims::{
    calibrate_or_fallback, closed_form_c_final, constraint_residual, final_entanglement_sweep,
    initial_entanglement_sweep, invariance_point, physical_c_final, sweep_alpha, verify_disentangle,
    verify_initial_closed_form, CalibrationOutcome, ClaimContext, ClaimStatus, DisentanglingPair, FinalForm,
    LadderTriple, Sampler, SweepMode,
};
use yangian::pair_state::{entanglement_degree, initial_state, neg_xlog3x, MixingAmplitudes};
use yangian::su3::{closure_residual, GellMannSet, StructureConstantTable};
use yangian::yangian::SiteConvention;

const SEED: u64 = 42;
const TRIALS: usize = 100;
const TOL: f64 = 1e-10;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Convention used downstream of calibration.
fn working_convention() -> (SiteConvention, bool) {
    let cal = calibrate_or_fallback(TRIALS, SEED, TOL);
    (cal.convention, cal.is_calibrated())
}

fn algebra() -> Outcome {
    let set = GellMannSet::new();
    let closure = closure_residual(&set.fundamental()).max(closure_residual(&set.conjugate()));
    let table = StructureConstantTable::from_traces().max_deviation(&StructureConstantTable::canonical());
    outcome(
        closure < 1e-12 && table < 1e-14,
        format!("closure residual {closure:.3e} (< 1e-12), table deviation {table:.3e} (< 1e-14)"),
    )
}

fn initial_closed_form() -> Outcome {
    let start = Instant::now();
    let r = verify_initial_closed_form(&ClaimContext {
        trials: 1000,
        seed: SEED,
        ..ClaimContext::new(SiteConvention::default())
    });
    let secs = start.elapsed().as_secs_f64();
    outcome(
        r.max_abs_error < TOL && secs < 1.0,
        format!(
            "1000 trials, max |closed - pipeline| {:.3e} (< 1e-10), {secs:.3} s (< 1 s)",
            r.max_abs_error
        ),
    )
}

fn fixed_points() -> Outcome {
    let c = |a1, a2, a3| entanglement_degree(&initial_state(&MixingAmplitudes::new(a1, a2, a3).unwrap())).unwrap();
    let singlet = (c(1.0, 0.0, 0.0) - 1.0).abs();
    let pion = (c(0.0, 1.0, 0.0) - 2f64.ln() / 3f64.ln()).abs();
    let oracle = 2.0 * neg_xlog3x(0.125) + neg_xlog3x(0.75);
    let mixed = (c(0.5, 0.5, 2f64.sqrt() / 2.0) - oracle).abs();
    outcome(
        singlet < 1e-12 && pion < 1e-10 && mixed < 1e-5,
        format!("singlet {singlet:.3e} (< 1e-12), pion {pion:.3e} (< 1e-10), mixed {mixed:.3e} (< 1e-5)"),
    )
}

fn calibration() -> Outcome {
    let cal = calibrate_or_fallback(TRIALS, SEED, TOL);
    let ok = matches!(cal.outcome, CalibrationOutcome::Pass | CalibrationOutcome::Fallback);
    let detail = cal
        .residuals
        .iter()
        .map(|r| format!("{}: span {:.3e} ratio {:.3e}", r.convention, r.span(), r.ratio()))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(ok, format!("{:?}; {detail}", cal.outcome))
}

fn constraint_consistency() -> Outcome {
    let (conv, _) = working_convention();
    let mut sampler = Sampler::new(SEED);
    let mut worst = [0.0f64; 2];
    let mut vanished = 0;
    for _ in 0..TRIALS {
        let alpha = sampler.alpha();
        let lambda = sampler.uniform(-2.0, 2.0);
        for (k, form) in [FinalForm::VPair, FinalForm::Hypercharge].into_iter().enumerate() {
            match constraint_residual(form, &alpha, lambda, conv) {
                Some(r) => worst[k] = worst[k].max(r),
                None => vanished += 1,
            }
        }
    }
    outcome(
        worst[0] < TOL && worst[1] < TOL && vanished == 0,
        format!(
            "{conv}: max |stated - 1/|P phi|^2| V+ + V- {:.3e}, I8 {:.3e} (< 1e-10), {vanished} vanishing outputs",
            worst[0], worst[1]
        ),
    )
}

fn invariance() -> Outcome {
    let (conv, _) = working_convention();
    let mut parts = Vec::new();
    let mut ok = true;
    for triple in LadderTriple::ALL {
        let mut sampler = Sampler::new(SEED);
        let mut worst = 0.0f64;
        let mut vanished = 0;
        for _ in 0..TRIALS {
            let alpha = sampler.alpha();
            let lambda = sampler.uniform(-2.0, 2.0);
            match invariance_point(triple, &alpha, lambda, conv) {
                Some(p) => worst = worst.max(p.entanglement_change),
                None => vanished += 1,
            }
        }
        ok &= worst < TOL && vanished < TRIALS;
        parts.push(format!("{}: max |C' - C| {worst:.3e}", triple.expression()));
    }
    outcome(ok, format!("{conv}: {} (< 1e-10)", parts.join(", ")))
}

fn disentanglement() -> Outcome {
    let (conv, calibrated) = working_convention();
    let ctx = ClaimContext {
        trials: TRIALS,
        seed: SEED,
        tolerance: TOL,
        convention: conv,
        calibrated,
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for pair in DisentanglingPair::ALL {
        let r = verify_disentangle(pair, &ctx);
        ok &= r.status != ClaimStatus::Fail;
        parts.push(format!(
            "{}: {} ({:.3e})",
            pair.expression(),
            r.status.as_str(),
            r.max_abs_error
        ));
    }
    outcome(ok, format!("{conv}: {}", parts.join(", ")))
}

fn figure_sweeps() -> Outcome {
    let n = 101;
    let mut notes = Vec::new();
    let mut ok = true;

    let start = Instant::now();
    let fig1 = initial_entanglement_sweep(n).unwrap();
    let fig1_secs = start.elapsed().as_secs_f64();
    let mut symmetry = 0.0f64;
    let mut symmetric_support = true;
    for i in 0..n {
        for j in 0..n {
            match (fig1.value_at(i, j), fig1.value_at(i, n - 1 - j)) {
                (Some(a), Some(b)) => symmetry = symmetry.max((a - b).abs()),
                (None, None) => {}
                _ => symmetric_support = false,
            }
        }
    }
    // grid index k sits at -1 + 2k/(n-1)
    let at = |i: usize, j: usize| fig1.value_at(i, j).unwrap_or(f64::NAN);
    let oracle = 2.0 * neg_xlog3x(0.125) + neg_xlog3x(0.75);
    let fixed = [
        (at(100, 50) - 1.0).abs() < 1e-12,
        (at(50, 100) - 2f64.ln() / 3f64.ln()).abs() < 1e-10,
        (at(75, 75) - oracle).abs() < 1e-5,
    ];
    ok &= symmetry < 1e-12 && symmetric_support && fixed.iter().all(|&f| f) && fig1_secs < 10.0;
    notes.push(format!(
        "fig 1: symmetry {symmetry:.3e}, fixed points {fixed:?}, {fig1_secs:.2} s"
    ));

    let (conv, _) = working_convention();
    let alpha = sweep_alpha();
    for (name, form) in [("fig 3", FinalForm::VPair), ("fig 5", FinalForm::Hypercharge)] {
        let start = Instant::now();
        let grid = final_entanglement_sweep(form, n, (-2.0, 2.0), (-2.0, 2.0), SweepMode::ClosedForm).unwrap();
        let secs = start.elapsed().as_secs_f64();
        // ν = -λ/2 hits the grid at λ index j (even) and ν index 75 - j/2
        let mut zero_line = 0.0f64;
        for j in (0..n).step_by(2) {
            let v = grid.value_at(75 - j / 2, j).unwrap_or(f64::NAN);
            zero_line = zero_line.max(v.abs());
        }
        // agreement on the stated normalization surface, one point per λ column
        let mut agreement = 0.0f64;
        for j in 0..n {
            let lambda = grid.rows[j].y;
            let nu = form.constraint(&alpha).sqrt() - lambda / 2.0;
            let closed = closed_form_c_final(form, &alpha, nu, lambda);
            let physical = physical_c_final(form, &alpha, nu, lambda, conv).unwrap_or(f64::NAN);
            agreement = agreement.max((closed - physical).abs());
        }
        ok &= zero_line < 1e-12 && agreement < TOL && secs < 10.0;
        notes.push(format!(
            "{name}: zero line {zero_line:.3e}, agreement with {conv} pipeline {agreement:.3e} (< 1e-10), {secs:.2} s"
        ));
    }
    outcome(ok, notes.join("; "))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_yangian"))
            .args(["verify", "--claim", "all", "--seed", "42"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(same, format!("{} bytes, identical: {same}", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("algebra closure and structure constants", algebra),
        ("initial closed form equals entropy pipeline", initial_closed_form),
        ("initial-state fixed points", fixed_points),
        ("site convention calibration", calibration),
        ("normalization constraints", constraint_consistency),
        ("entanglement invariance under ladder triples", invariance),
        ("disentangling operator pairs", disentanglement),
        ("figure sweeps", figure_sweeps),
        ("verify determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!(
            "{} {} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
