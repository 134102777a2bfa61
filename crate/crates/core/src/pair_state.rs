//! Pure states of one quark and one antiquark flavour qutrit, and their
//! bipartite entanglement.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::SVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::su3::{max_abs, Mat3};

pub type PairVector = SVector<Complex64, 9>;

/// Normalization tolerance on Σ|c|² and on α₁²+α₂²+α₃².
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Entropies at or below this value count as zero in the mean-entropy gate.
pub const ZERO_ENTROPY_GATE: f64 = 1e-12;

/// Eigenvalues in `[-EIGEN_CLIP, 0)` are treated as 0 before taking logs.
pub const EIGEN_CLIP: f64 = 1e-12;

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn sqrt3() -> f64 {
    3f64.sqrt()
}

fn sqrt6() -> f64 {
    6f64.sqrt()
}

/// Flavour label shared by quark and antiquark slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    U = 0,
    D = 1,
    S = 2,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::U, Flavor::D, Flavor::S];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Flattened position of `|q q̄⟩`.
#[inline]
pub fn pair_index(quark: Flavor, antiquark: Flavor) -> usize {
    3 * quark.index() + antiquark.index()
}

/// Which half of the pair to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Quark,
    Antiquark,
}

impl Site {
    /// 1 ↦ quark, 2 ↦ antiquark.
    pub fn from_number(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Site::Quark),
            2 => Ok(Site::Antiquark),
            _ => Err(Error::InvalidSite(n)),
        }
    }
}

/// Real mixing amplitudes (α₁, α₂, α₃) of η⁰′, π⁰ and η⁰.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAmplitudes {
    alpha: [f64; 3],
}

impl MixingAmplitudes {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if !(a1.is_finite() && a2.is_finite() && a3.is_finite()) {
            return Err(Error::NonFinite("mixing amplitudes"));
        }
        let norm_sq = a1 * a1 + a2 * a2 + a3 * a3;
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::AmplitudesNotNormalized { norm_sq });
        }
        Ok(Self { alpha: [a1, a2, a3] })
    }

    /// Accepts amplitudes within `tolerance` of unit norm and rescales them
    /// onto the sphere.
    pub fn renormalized(a1: f64, a2: f64, a3: f64, tolerance: f64) -> Result<Self> {
        if !(a1.is_finite() && a2.is_finite() && a3.is_finite()) {
            return Err(Error::NonFinite("mixing amplitudes"));
        }
        let norm_sq = a1 * a1 + a2 * a2 + a3 * a3;
        if (norm_sq - 1.0).abs() > tolerance {
            return Err(Error::AmplitudesNotNormalized { norm_sq });
        }
        let n = norm_sq.sqrt();
        Self::new(a1 / n, a2 / n, a3 / n)
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha[0]
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha[1]
    }

    pub fn alpha3(&self) -> f64 {
        self.alpha[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.alpha
    }

    /// Coefficients of |uū⟩, |dd̄⟩, |ss̄⟩ in α₁|η⁰′⟩ + α₂|π⁰⟩ + α₃|η⁰⟩.
    pub fn diagonal_amplitudes(&self) -> [f64; 3] {
        let [a1, a2, a3] = self.alpha;
        [
            a1 / sqrt3() + a2 / SQRT2 - a3 / sqrt6(),
            a1 / sqrt3() - a2 / SQRT2 - a3 / sqrt6(),
            a1 / sqrt3() + 2.0 * a3 / sqrt6(),
        ]
    }
}

/// Nine complex amplitudes over `|q q̄⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    amps: PairVector,
}

impl PairState {
    pub fn from_vector(amps: PairVector) -> Self {
        Self { amps }
    }

    pub fn from_amplitudes(amps: [Complex64; 9]) -> Self {
        Self {
            amps: PairVector::from(amps),
        }
    }

    pub fn zero() -> Self {
        Self {
            amps: PairVector::zeros(),
        }
    }

    pub fn basis(quark: Flavor, antiquark: Flavor) -> Self {
        let mut amps = PairVector::zeros();
        amps[pair_index(quark, antiquark)] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// Builds a state from its 3×3 amplitude matrix `c[q][q̄]`.
    pub fn from_matrix(m: &Mat3) -> Self {
        Self {
            amps: PairVector::from_fn(|k, _| m[(k / 3, k % 3)]),
        }
    }

    pub fn vector(&self) -> &PairVector {
        &self.amps
    }

    pub fn amplitude(&self, quark: Flavor, antiquark: Flavor) -> Complex64 {
        self.amps[pair_index(quark, antiquark)]
    }

    /// `c[q][q̄]` as a matrix; rows are quark flavours.
    pub fn amplitude_matrix(&self) -> Mat3 {
        Mat3::from_fn(|q, qb| self.amps[3 * q + qb])
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORM_TOLERANCE
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite("pair state"));
        }
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::StateNotNormalized {
                norm_sq: self.norm_sq(),
            })
        }
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PairState) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    pub fn scaled(&self, factor: Complex64) -> PairState {
        PairState {
            amps: self.amps * factor,
        }
    }

    /// Largest componentwise distance.
    pub fn max_abs_diff(&self, other: &PairState) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for PairState {
    type Output = PairState;
    fn add(self, rhs: PairState) -> PairState {
        PairState {
            amps: self.amps + rhs.amps,
        }
    }
}

impl Sub for PairState {
    type Output = PairState;
    fn sub(self, rhs: PairState) -> PairState {
        PairState {
            amps: self.amps - rhs.amps,
        }
    }
}

impl Mul<f64> for PairState {
    type Output = PairState;
    fn mul(self, rhs: f64) -> PairState {
        PairState {
            amps: self.amps * Complex64::new(rhs, 0.0),
        }
    }
}

impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["u", "d", "s"];
        let mut first = true;
        for (k, z) in self.amps.iter().enumerate() {
            if z.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({z})|{}{}bar>", NAMES[k / 3], NAMES[k % 3])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// α₁|η⁰′⟩ + α₂|π⁰⟩ + α₃|η⁰⟩ expanded over the diagonal kets.
pub fn initial_state(alpha: &MixingAmplitudes) -> PairState {
    let mut amps = PairVector::zeros();
    for (flavor, amp) in Flavor::ALL.iter().zip(alpha.diagonal_amplitudes()) {
        amps[pair_index(*flavor, *flavor)] = Complex64::new(amp, 0.0);
    }
    PairState { amps }
}

/// Single-site density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensity {
    entries: Mat3,
}

impl ReducedDensity {
    /// Wraps a matrix without validation; [`entropy_base3`] validates.
    pub fn from_matrix(entries: Mat3) -> Self {
        Self { entries }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.entries
    }

    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(self.entries - self.entries.adjoint()))
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let eig = self.entries.symmetric_eigen();
        let mut values = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }
}

/// Partial trace without the normalization precondition.
pub fn reduced_density_raw(state: &PairState, site: Site) -> ReducedDensity {
    let c = state.amplitude_matrix();
    let entries = match site {
        // ρ₁[q][q'] = Σ_q̄ c[q][q̄] c*[q'][q̄]
        Site::Quark => c * c.adjoint(),
        // ρ₂[q̄][q̄'] = Σ_q c[q][q̄] c*[q][q̄']
        Site::Antiquark => c.transpose() * c.conjugate(),
    };
    ReducedDensity { entries }
}

pub fn reduced_density(state: &PairState, site: Site) -> Result<ReducedDensity> {
    state.ensure_normalized()?;
    Ok(reduced_density_raw(state, site))
}

/// −Σ p log₃ p with 0·log₃0 = 0. Weights are used as given (not normalized).
pub fn weight_entropy(weights: &[f64]) -> f64 {
    let s: f64 = weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln() / 3f64.ln())
        .sum();
    // avoid printing "-0"
    s + 0.0
}

/// Base-3 Von Neumann entropy of a single-qutrit density matrix.
pub fn entropy_base3(rho: &ReducedDensity) -> Result<f64> {
    let herm = rho.hermiticity_residual();
    if !herm.is_finite() {
        return Err(Error::NonFinite("reduced density"));
    }
    if herm > NORM_TOLERANCE {
        return Err(Error::NotHermitian(herm));
    }
    let tr = rho.trace();
    if (tr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::BadTrace(tr));
    }
    let mut probs = rho.eigenvalues();
    for p in probs.iter_mut() {
        if *p < -EIGEN_CLIP {
            return Err(Error::NegativeEigenvalue(*p));
        }
        *p = p.clamp(0.0, 1.0);
    }
    Ok(weight_entropy(&probs))
}

/// Both single-site entropies (S₁, S₂).
pub fn site_entropies(state: &PairState) -> Result<(f64, f64)> {
    let s1 = entropy_base3(&reduced_density(state, Site::Quark)?)?;
    let s2 = entropy_base3(&reduced_density(state, Site::Antiquark)?)?;
    Ok((s1, s2))
}

/// Mean entropy (S₁+S₂)/2, or 0 when either S_i is at or below the gate.
pub fn entanglement_degree(state: &PairState) -> Result<f64> {
    let (s1, s2) = site_entropies(state)?;
    if s1 > ZERO_ENTROPY_GATE && s2 > ZERO_ENTROPY_GATE {
        Ok(0.5 * (s1 + s2))
    } else {
        Ok(0.0)
    }
}

/// The initial-state entanglement written out term by term as three
/// −x² log₃ x² contributions of the diagonal amplitudes. Deliberately does
/// not go through [`entanglement_degree`].
pub fn entanglement_degree_closed_form(alpha: &MixingAmplitudes) -> f64 {
    let (a1, a2, a3) = (alpha.alpha1(), alpha.alpha2(), alpha.alpha3());
    let x = (3f64.sqrt() / 3.0) * a1 + (2f64.sqrt() / 2.0) * a2 - (6f64.sqrt() / 6.0) * a3;
    let y = (3f64.sqrt() / 3.0) * a1 - (2f64.sqrt() / 2.0) * a2 - (6f64.sqrt() / 6.0) * a3;
    let z = (3f64.sqrt() / 3.0) * a1 + (6f64.sqrt() / 3.0) * a3;
    neg_xlog3x(x * x) + neg_xlog3x(y * y) + neg_xlog3x(z * z)
}

/// −w log₃ w with the 0·log 0 = 0 convention.
pub fn neg_xlog3x(w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        -w * w.log(3.0)
    }
}

/// Singular values of the amplitude matrix, descending.
pub fn schmidt_coefficients(state: &PairState) -> Result<[f64; 3]> {
    state.ensure_normalized()?;
    Ok(schmidt_coefficients_raw(state))
}

/// Same as [`schmidt_coefficients`] but for any (possibly unnormalized) state.
pub fn schmidt_coefficients_raw(state: &PairState) -> [f64; 3] {
    let sv = state.amplitude_matrix().singular_values();
    let mut s = [sv[0], sv[1], sv[2]];
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use Flavor::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Partial trace by looping over every entry of the full 9×9 density
    /// matrix |ψ⟩⟨ψ|.
    fn brute_partial_trace(state: &PairState, keep: Site) -> Mat3 {
        let v = state.vector();
        let mut out = Mat3::zeros();
        for i in 0..9 {
            for j in 0..9 {
                let (qi, bi) = (i / 3, i % 3);
                let (qj, bj) = (j / 3, j % 3);
                let rho_ij = v[i] * v[j].conj();
                match keep {
                    Site::Quark if bi == bj => out[(qi, qj)] += rho_ij,
                    Site::Antiquark if qi == qj => out[(bi, bj)] += rho_ij,
                    _ => {}
                }
            }
        }
        out
    }

    #[test]
    fn flattened_index_convention() {
        assert_eq!(pair_index(U, U), 0);
        assert_eq!(pair_index(U, D), 1);
        assert_eq!(pair_index(D, U), 3);
        assert_eq!(pair_index(S, S), 8);
    }

    #[test]
    // truncated on purpose: hand-typed input
    #[allow(clippy::approx_constant)]
    fn amplitudes_must_be_normalized() {
        assert!(MixingAmplitudes::new(1.0, 0.0, 0.0).is_ok());
        assert!(matches!(
            MixingAmplitudes::new(1.0, 1.0, 0.0),
            Err(Error::AmplitudesNotNormalized { .. })
        ));
        assert!(matches!(
            MixingAmplitudes::new(f64::NAN, 0.0, 0.0),
            Err(Error::NonFinite(_))
        ));
        let a = MixingAmplitudes::renormalized(0.5, 0.5, 0.70710678, 1e-6).unwrap();
        assert_abs_diff_eq!(a.as_array().iter().map(|x| x * x).sum::<f64>(), 1.0, epsilon = 1e-15);
        assert!(MixingAmplitudes::renormalized(0.5, 0.5, 0.7, 1e-6).is_err());
    }

    #[test]
    fn initial_state_examples() {
        let s = 1.0 / 3f64.sqrt();
        let eta = initial_state(&MixingAmplitudes::new(1.0, 0.0, 0.0).unwrap());
        for f in Flavor::ALL {
            assert_abs_diff_eq!(eta.amplitude(f, f).re, s, epsilon = 1e-15);
        }

        let pi = initial_state(&MixingAmplitudes::new(0.0, 1.0, 0.0).unwrap());
        assert_abs_diff_eq!(pi.amplitude(U, U).re, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(pi.amplitude(D, D).re, -1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(pi.amplitude(S, S).re, 0.0, epsilon = 1e-15);

        let mixed = MixingAmplitudes::new(0.5, 0.5, 2f64.sqrt() / 2.0).unwrap();
        let st = initial_state(&mixed);
        assert_abs_diff_eq!(st.amplitude(U, U).re, 2f64.sqrt() / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(st.amplitude(D, D).re, -(2f64.sqrt()) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(st.amplitude(S, S).re, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        for q in Flavor::ALL {
            for qb in Flavor::ALL {
                if q != qb {
                    assert_eq!(st.amplitude(q, qb), r(0.0));
                }
            }
        }
    }

    #[test]
    fn reduced_density_examples() {
        let uu = PairState::basis(U, U);
        let rho = reduced_density(&uu, Site::Quark).unwrap();
        assert_eq!(*rho.matrix(), Mat3::from_diagonal(&[r(1.0), r(0.0), r(0.0)].into()));

        let eta = initial_state(&MixingAmplitudes::new(1.0, 0.0, 0.0).unwrap());
        let rho = reduced_density(&eta, Site::Quark).unwrap();
        assert!(max_abs(&(rho.matrix() - Mat3::identity() * r(1.0 / 3.0))) < 1e-15);

        let sym = (PairState::basis(U, D) + PairState::basis(D, U)) * (1.0 / 2f64.sqrt());
        let rho = reduced_density(&sym, Site::Quark).unwrap();
        let brute = brute_partial_trace(&sym, Site::Quark);
        let expect = Mat3::from_diagonal(&[r(0.5), r(0.5), r(0.0)].into());
        assert!(max_abs(&(brute - expect)) < 1e-15);
        assert!(max_abs(&(rho.matrix() - brute)) < 1e-15);
    }

    #[test]
    fn reduced_density_rejects_unnormalized() {
        let s = PairState::basis(U, U) * 2.0;
        assert!(matches!(
            reduced_density(&s, Site::Quark),
            Err(Error::StateNotNormalized { .. })
        ));
        assert!(Site::from_number(3).is_err());
    }

    #[test]
    fn partial_trace_matches_brute_force_on_a_generic_state() {
        let amps: [Complex64; 9] =
            std::array::from_fn(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 1.3).cos()));
        let s = PairState::from_amplitudes(amps);
        let s = s.scaled(r(1.0 / s.norm()));
        for site in [Site::Quark, Site::Antiquark] {
            let fast = reduced_density(&s, site).unwrap();
            assert!(max_abs(&(fast.matrix() - brute_partial_trace(&s, site))) < 1e-14);
        }
    }

    #[test]
    fn entropy_examples() {
        let pure = ReducedDensity::from_matrix(Mat3::from_diagonal(&[r(1.0), r(0.0), r(0.0)].into()));
        assert_eq!(entropy_base3(&pure).unwrap(), 0.0);
        let mixed = ReducedDensity::from_matrix(Mat3::identity() * r(1.0 / 3.0));
        assert_abs_diff_eq!(entropy_base3(&mixed).unwrap(), 1.0, epsilon = 1e-12);
        let half = ReducedDensity::from_matrix(Mat3::from_diagonal(&[r(0.5), r(0.5), r(0.0)].into()));
        assert_abs_diff_eq!(entropy_base3(&half).unwrap(), 0.630_929_753_571_457_4, epsilon = 1e-12);
    }

    #[test]
    fn entropy_rejects_invalid_density() {
        let mut m = Mat3::identity() * r(1.0 / 3.0);
        m[(0, 1)] = r(0.1);
        assert!(matches!(
            entropy_base3(&ReducedDensity::from_matrix(m)),
            Err(Error::NotHermitian(_))
        ));
        let m = Mat3::identity() * r(0.5);
        assert!(matches!(
            entropy_base3(&ReducedDensity::from_matrix(m)),
            Err(Error::BadTrace(_))
        ));
        let m = Mat3::from_diagonal(&[r(1.2), r(-0.2), r(0.0)].into());
        assert!(matches!(
            entropy_base3(&ReducedDensity::from_matrix(m)),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn entanglement_degree_examples() {
        let eta = initial_state(&MixingAmplitudes::new(1.0, 0.0, 0.0).unwrap());
        assert_abs_diff_eq!(entanglement_degree(&eta).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(entanglement_degree(&PairState::basis(U, S)).unwrap(), 0.0);

        // probabilities (1/8, 1/8, 3/4)
        let mixed = initial_state(&MixingAmplitudes::new(0.5, 0.5, 2f64.sqrt() / 2.0).unwrap());
        assert_abs_diff_eq!(
            entanglement_degree(&mixed).unwrap(),
            0.669_591_945_535_779_2,
            epsilon = 1e-12
        );
        assert!(entanglement_degree(&(PairState::basis(U, S) * 0.5)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let c = |a1, a2, a3| entanglement_degree_closed_form(&MixingAmplitudes::new(a1, a2, a3).unwrap());
        assert_abs_diff_eq!(c(1.0, 0.0, 0.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c(0.0, 1.0, 0.0), 0.630_929_753_571_457_4, epsilon = 1e-12);
        assert_abs_diff_eq!(c(0.5, 0.5, 2f64.sqrt() / 2.0), 0.669_591_945_535_779_2, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt_coefficients(&PairState::basis(U, U)).unwrap();
        assert_abs_diff_eq!(s[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s[2], 0.0, epsilon = 1e-14);

        let eta = initial_state(&MixingAmplitudes::new(1.0, 0.0, 0.0).unwrap());
        for v in schmidt_coefficients(&eta).unwrap() {
            assert_abs_diff_eq!(v, 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        }

        let sym = (PairState::basis(U, D) + PairState::basis(D, U)) * (1.0 / 2f64.sqrt());
        let s = schmidt_coefficients(&sym).unwrap();
        assert_abs_diff_eq!(s[0], 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(s[1], 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(s[2], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn weight_entropy_conventions() {
        assert_eq!(weight_entropy(&[0.0, 1.0]), 0.0);
        assert_eq!(neg_xlog3x(0.0), 0.0);
        assert_abs_diff_eq!(weight_entropy(&[1.0 / 3.0; 3]), 1.0, epsilon = 1e-15);
        assert!(!weight_entropy(&[1.0]).is_sign_negative());
    }
}
