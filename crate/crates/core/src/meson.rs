//! The light pseudoscalar nonet as an orthonormal basis of the pair space.
//!
//! Off-diagonal assignments: π⁺ = ud̄, π⁻ = dū, K⁺ = us̄, K⁻ = sū, K⁰ = ds̄,
//! K̄⁰ = sd̄. The three neutral diagonal states are π⁰, η⁰ (octet) and η⁰′
//! (singlet).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::Error;
use crate::pair_state::{Flavor, PairState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MesonLabel {
    PiPlus,
    PiMinus,
    Pi0,
    KPlus,
    KMinus,
    K0,
    K0Bar,
    Eta0,
    Eta0Prime,
}

impl MesonLabel {
    pub const ALL: [MesonLabel; 9] = [
        MesonLabel::PiPlus,
        MesonLabel::PiMinus,
        MesonLabel::Pi0,
        MesonLabel::KPlus,
        MesonLabel::KMinus,
        MesonLabel::K0,
        MesonLabel::K0Bar,
        MesonLabel::Eta0,
        MesonLabel::Eta0Prime,
    ];

    /// ASCII name used in every text and file format.
    pub fn as_str(self) -> &'static str {
        match self {
            MesonLabel::PiPlus => "pi+",
            MesonLabel::PiMinus => "pi-",
            MesonLabel::Pi0 => "pi0",
            MesonLabel::KPlus => "K+",
            MesonLabel::KMinus => "K-",
            MesonLabel::K0 => "K0",
            MesonLabel::K0Bar => "K0bar",
            MesonLabel::Eta0 => "eta0",
            MesonLabel::Eta0Prime => "eta0p",
        }
    }

    /// Quark content for the six flavour-changing states.
    pub fn quark_content(self) -> Option<(Flavor, Flavor)> {
        use Flavor::*;
        match self {
            MesonLabel::PiPlus => Some((U, D)),
            MesonLabel::PiMinus => Some((D, U)),
            MesonLabel::KPlus => Some((U, S)),
            MesonLabel::KMinus => Some((S, U)),
            MesonLabel::K0 => Some((D, S)),
            MesonLabel::K0Bar => Some((S, D)),
            MesonLabel::Pi0 | MesonLabel::Eta0 | MesonLabel::Eta0Prime => None,
        }
    }
}

impl fmt::Display for MesonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MesonLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MesonLabel::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidSymbol(s.to_string()))
    }
}

fn diagonal(weights: [f64; 3]) -> PairState {
    let mut state = PairState::zero();
    for (f, w) in Flavor::ALL.into_iter().zip(weights) {
        state = state + PairState::basis(f, f) * w;
    }
    state
}

/// Unit vector of a meson in the flattened pair basis.
pub fn meson_vector(label: MesonLabel) -> PairState {
    if let Some((q, qb)) = label.quark_content() {
        return PairState::basis(q, qb);
    }
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    match label {
        MesonLabel::Pi0 => diagonal([1.0 / s2, -1.0 / s2, 0.0]),
        MesonLabel::Eta0 => diagonal([-1.0 / s6, -1.0 / s6, 2.0 / s6]),
        MesonLabel::Eta0Prime => diagonal([1.0 / s3, 1.0 / s3, 1.0 / s3]),
        _ => unreachable!("charged states handled above"),
    }
}

/// ⟨m|state⟩ for all nine mesons, in [`MesonLabel::ALL`] order.
pub fn decompose(state: &PairState) -> Vec<(MesonLabel, Complex64)> {
    MesonLabel::ALL
        .into_iter()
        .map(|m| (m, meson_vector(m).inner(state)))
        .collect()
}

/// Σ c_m |m⟩.
pub fn reconstruct(coefficients: &[(MesonLabel, Complex64)]) -> PairState {
    coefficients
        .iter()
        .fold(PairState::zero(), |acc, (m, c)| acc + meson_vector(*m).scaled(*c))
}

/// Norm of the part of `state` orthogonal to span{labels}.
pub fn out_of_span_norm(state: &PairState, labels: &[MesonLabel]) -> f64 {
    let projected = reconstruct(
        &labels
            .iter()
            .map(|&m| (m, meson_vector(m).inner(state)))
            .collect::<Vec<_>>(),
    );
    (*state - projected).norm()
}
