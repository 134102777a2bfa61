//! Two-parameter grids of the entanglement degree, written as CSV.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use super::stated::{closed_form_c_final, FinalForm};
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::pair_state::{entanglement_degree, entanglement_degree_closed_form, initial_state, MixingAmplitudes};
use crate::yangian::{apply, realize, SiteConvention, YangianParams};

/// Mixing amplitudes held fixed in the (ν, λ) sweeps.
pub fn sweep_alpha() -> MixingAmplitudes {
    MixingAmplitudes::new(0.5, 0.5, std::f64::consts::FRAC_1_SQRT_2).expect("unit vector")
}

/// Range of α₁ and α₂ in the initial-state sweep.
pub const ALPHA_RANGE: (f64, f64) = (-1.0, 1.0);

/// Tolerance on α₁² + α₂² ≤ 1 at the unit-disk boundary.
pub const DISK_TOLERANCE: f64 = 1e-12;

pub const DEFAULT_GRID: usize = 101;

/// `i`-th of `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn grid_point(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// How the final-state sweeps evaluate C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepMode {
    /// printed closed form in ν and λ, unnormalized prefactor
    #[default]
    ClosedForm,
    /// normalized final state at μ = λ/2 under a site convention
    Physical(SiteConvention),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    /// `None` where C is undefined
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axes: [&'static str; 2],
    pub steps: usize,
    /// row-major, first axis outer
    pub rows: Vec<SweepRow>,
}

impl SweepGrid {
    pub fn header(&self) -> String {
        format!("{},{},C", self.axes[0], self.axes[1])
    }

    pub fn value_at(&self, i: usize, j: usize) -> Option<f64> {
        self.rows[i * self.steps + j].value
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for row in &self.rows {
            let value = row.value.map(sig12).unwrap_or_default();
            writeln!(out, "{},{},{}", sig12(row.x), sig12(row.y), value).unwrap();
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}

fn check_steps(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSweep(format!(
            "grid needs at least 2 points per axis, got {n}"
        )));
    }
    Ok(())
}

/// Validates a `(lo, hi)` axis range.
pub fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidSweep(format!(
            "{name} range must satisfy lo < hi, got ({lo}, {hi})"
        )));
    }
    Ok(())
}

/// C over (α₁, α₂) ∈ [−1,1]² with α₃ = +√(1 − α₁² − α₂²); empty outside the disk.
pub fn initial_entanglement_sweep(n: usize) -> Result<SweepGrid> {
    check_steps(n)?;
    let (lo, hi) = ALPHA_RANGE;
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let a1 = grid_point(lo, hi, n, i);
        for j in 0..n {
            let a2 = grid_point(lo, hi, n, j);
            let rest = 1.0 - a1 * a1 - a2 * a2;
            let value = (rest >= -DISK_TOLERANCE).then(|| {
                let alpha = MixingAmplitudes::renormalized(a1, a2, rest.max(0.0).sqrt(), 2.0 * DISK_TOLERANCE)
                    .expect("inside the disk");
                entanglement_degree_closed_form(&alpha)
            });
            rows.push(SweepRow { x: a1, y: a2, value });
        }
    }
    Ok(SweepGrid {
        axes: ["alpha1", "alpha2"],
        steps: n,
        rows,
    })
}

/// C over (ν, λ) at fixed α for a final-state operator.
pub fn final_entanglement_sweep(
    form: FinalForm,
    n: usize,
    nu_range: (f64, f64),
    lambda_range: (f64, f64),
    mode: SweepMode,
) -> Result<SweepGrid> {
    check_steps(n)?;
    check_range("nu", nu_range)?;
    check_range("lambda", lambda_range)?;
    let alpha = sweep_alpha();
    let phi = initial_state(&alpha);
    let op = crate::expr::parse_operator_expr(form.expression())?;
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let nu = grid_point(nu_range.0, nu_range.1, n, i);
        for j in 0..n {
            let lambda = grid_point(lambda_range.0, lambda_range.1, n, j);
            let value = match mode {
                SweepMode::ClosedForm => {
                    let c = closed_form_c_final(form, &alpha, nu, lambda);
                    c.is_finite().then_some(c)
                }
                SweepMode::Physical(conv) => {
                    let p = YangianParams::with_half_lambda_mu(nu, lambda)?;
                    apply(&realize(&op, &p, conv), &phi, true)
                        .ok()
                        .and_then(|s| entanglement_degree(&s).ok())
                }
            };
            rows.push(SweepRow {
                x: nu,
                y: lambda,
                value,
            });
        }
    }
    Ok(SweepGrid {
        axes: ["nu", "lambda"],
        steps: n,
        rows,
    })
}
