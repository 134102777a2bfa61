//! Final states, normalization constraints and final-state entanglement in
//! the closed forms they are claimed to take. Everything here is written out
//! from the amplitude formulas alone and never touches the operator builder,
//! so disagreement with [`crate::yangian`] is observable.

use crate::meson::{meson_vector, MesonLabel};
use crate::pair_state::{neg_xlog3x, MixingAmplitudes, PairState};

fn prefactor(nu: f64, lambda: f64) -> f64 {
    nu + lambda / 2.0
}

/// (V̄⁺ + V̄⁻)|φ⟩ = (ν+λ/2)[amp_uū|K⁺⟩ + amp_ss̄|K⁻⟩].
pub fn v_pair_final(alpha: &MixingAmplitudes, nu: f64, lambda: f64) -> PairState {
    let [uu, _, ss] = alpha.diagonal_amplitudes();
    (meson_vector(MesonLabel::KPlus) * uu + meson_vector(MesonLabel::KMinus) * ss) * prefactor(nu, lambda)
}

/// Claimed value of (ν+λ/2)² normalizing the V̄-pair final state:
/// (ν+λ/2)²[1 − amp_dd̄²] = 1.
pub fn v_pair_constraint(alpha: &MixingAmplitudes) -> f64 {
    let [_, dd, _] = alpha.diagonal_amplitudes();
    1.0 / (1.0 - dd * dd)
}

/// Ī⁸|φ⟩ = (1/3)(ν+λ/2)[−((√2+2√6)/3)α₃|η⁰′⟩ + α₂|π⁰⟩ − (√2α₁+α₃)|η⁰⟩].
pub fn hypercharge_final(alpha: &MixingAmplitudes, nu: f64, lambda: f64) -> PairState {
    let [a1, a2, a3] = alpha.as_array();
    let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
    let eta0p = -((s2 + 2.0 * s6) / 3.0) * a3;
    let eta0 = -(s2 * a1 + a3);
    (meson_vector(MesonLabel::Eta0Prime) * eta0p
        + meson_vector(MesonLabel::Pi0) * a2
        + meson_vector(MesonLabel::Eta0) * eta0)
        * (prefactor(nu, lambda) / 3.0)
}

/// Claimed value of (ν+λ/2)² normalizing the Ī⁸ final state:
/// (ν+λ/2)²[1 + 3·amp_ss̄²] = 3.
pub fn hypercharge_constraint(alpha: &MixingAmplitudes) -> f64 {
    let [_, _, ss] = alpha.diagonal_amplitudes();
    3.0 / (1.0 + 3.0 * ss * ss)
}

/// The two sums of three same-direction ladders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderTriple {
    /// Ī⁻ + Ū⁻ + V̄⁻
    Lowering,
    /// Ī⁺ + Ū⁺ + V̄⁺
    Raising,
}

impl LadderTriple {
    pub const ALL: [LadderTriple; 2] = [LadderTriple::Lowering, LadderTriple::Raising];

    pub fn expression(self) -> &'static str {
        match self {
            LadderTriple::Lowering => "I- + U- + V-",
            LadderTriple::Raising => "I+ + U+ + V+",
        }
    }

    /// Mesons the final state is claimed to be supported on, in the order
    /// (from uū, from dd̄, from ss̄).
    pub fn support(self) -> [MesonLabel; 3] {
        match self {
            LadderTriple::Lowering => [MesonLabel::PiPlus, MesonLabel::K0, MesonLabel::KMinus],
            LadderTriple::Raising => [MesonLabel::KPlus, MesonLabel::PiMinus, MesonLabel::K0Bar],
        }
    }
}

/// −amp_uū|m₁⟩ + amp_dd̄|m₂⟩ + amp_ss̄|m₃⟩ over [`LadderTriple::support`].
pub fn triple_final(triple: LadderTriple, alpha: &MixingAmplitudes) -> PairState {
    let [uu, dd, ss] = alpha.diagonal_amplitudes();
    let [m1, m2, m3] = triple.support();
    meson_vector(m1) * -uu + meson_vector(m2) * dd + meson_vector(m3) * ss
}

/// Which printed final-state entanglement expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalForm {
    /// after V̄⁺ + V̄⁻
    VPair,
    /// after Ī⁸
    Hypercharge,
}

impl FinalForm {
    pub fn expression(self) -> &'static str {
        match self {
            FinalForm::VPair => "V+ + V-",
            FinalForm::Hypercharge => "I8",
        }
    }

    /// Claimed normalizing value of (ν+λ/2)².
    pub fn constraint(self, alpha: &MixingAmplitudes) -> f64 {
        match self {
            FinalForm::VPair => v_pair_constraint(alpha),
            FinalForm::Hypercharge => hypercharge_constraint(alpha),
        }
    }
}

/// Final-state entanglement as printed, with (ν+λ/2) left free and
/// 0·log₃0 = 0. Off the normalization surface this is not an entropy of a
/// normalized state and may exceed 1.
pub fn closed_form_c_final(form: FinalForm, alpha: &MixingAmplitudes, nu: f64, lambda: f64) -> f64 {
    let (a1, a2, a3) = (alpha.alpha1(), alpha.alpha2(), alpha.alpha3());
    let (r2, r3, r6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let x = r3 / 3.0 * a1 + r2 / 2.0 * a2 - r6 / 6.0 * a3;
    let y = r3 / 3.0 * a1 - r2 / 2.0 * a2 - r6 / 6.0 * a3;
    let z = r3 / 3.0 * a1 + r6 / 3.0 * a3;
    let p2 = prefactor(nu, lambda).powi(2);
    let c = match form {
        FinalForm::VPair => neg_xlog3x(p2 * x * x) + neg_xlog3x(p2 * z * z),
        FinalForm::Hypercharge => {
            neg_xlog3x(p2 * x * x / 9.0) + neg_xlog3x(p2 * y * y / 9.0) + neg_xlog3x(4.0 * p2 * z * z / 9.0)
        }
    };
    c + 0.0
}
