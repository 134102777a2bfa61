//! Two-site Y(su(3)) generators on the quark ⊗ antiquark space.
//!
//! ```text
//! I^a = F^a ⊗ 1 + 1 ⊗ F̃^a
//! J^a = μ I₁^a + ν I₂^a + (i/2) λ Σ_{b,c} f_abc Σ_{i≠j} ω_ij I_i^b I_j^c
//! ```
//!
//! Site 1 (quark) always carries the fundamental generators F^a. Site 2
//! (antiquark) carries F̃^a, which is either F^a or the conjugate −(F^a)ᵀ
//! according to [`SiteConvention`].

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::pair_state::PairState;
use crate::su3::{self, max_abs, GellMannSet, Mat3, StructureConstantTable, N_GENERATORS};

pub type Mat9 = SMatrix<Complex64, 9, 9>;

/// ‖P|φ⟩‖ below this is a vanishing final state.
pub const ZERO_STATE_THRESHOLD: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Real deformation parameters μ, ν, λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YangianParams {
    pub mu: f64,
    pub nu: f64,
    pub lambda: f64,
}

impl YangianParams {
    pub fn new(mu: f64, nu: f64, lambda: f64) -> Result<Self> {
        if mu.is_finite() && nu.is_finite() && lambda.is_finite() {
            Ok(Self { mu, nu, lambda })
        } else {
            Err(Error::NonFinite("Yangian parameters"))
        }
    }

    /// μ = ν = 1, λ = 0: the undeformed two-site sum.
    pub fn undeformed() -> Self {
        Self {
            mu: 1.0,
            nu: 1.0,
            lambda: 0.0,
        }
    }

    /// μ = λ/2 with ν free.
    pub fn with_half_lambda_mu(nu: f64, lambda: f64) -> Result<Self> {
        Self::new(lambda / 2.0, nu, lambda)
    }

    /// μ = λ/2 and μ + ν = 1.
    pub fn with_unit_sum(lambda: f64) -> Result<Self> {
        Self::new(lambda / 2.0, 1.0 - lambda / 2.0, lambda)
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }
}

/// ω_ij for sites i, j ∈ {1, 2}: +1 for i > j, −1 for i < j, 0 on the
/// diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SitePairWeight;

impl SitePairWeight {
    pub const TABLE: [[i32; 2]; 2] = [[0, -1], [1, 0]];

    pub fn omega(i: usize, j: usize) -> Result<i32> {
        if !(1..=2).contains(&i) {
            return Err(Error::InvalidSite(i));
        }
        if !(1..=2).contains(&j) {
            return Err(Error::InvalidSite(j));
        }
        Ok(Self::TABLE[i - 1][j - 1])
    }
}

/// Representation carried by the antiquark site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SiteConvention {
    #[default]
    Fundamental,
    Conjugate,
}

impl SiteConvention {
    pub const ALL: [SiteConvention; 2] = [SiteConvention::Fundamental, SiteConvention::Conjugate];

    pub fn as_str(self) -> &'static str {
        match self {
            SiteConvention::Fundamental => "fundamental",
            SiteConvention::Conjugate => "conjugate",
        }
    }

    /// The eight generators acting on site 2.
    pub fn site2_generators(self) -> [Mat3; N_GENERATORS] {
        let set = GellMannSet::new();
        match self {
            SiteConvention::Fundamental => set.fundamental(),
            SiteConvention::Conjugate => set.conjugate(),
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SiteConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SiteConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fundamental" => Ok(SiteConvention::Fundamental),
            "conjugate" => Ok(SiteConvention::Conjugate),
            other => Err(Error::InvalidSymbol(other.to_string())),
        }
    }
}

impl Serialize for SiteConvention {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// A 9×9 operator over the flattened pair index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairOperator {
    entries: Mat9,
}

impl PairOperator {
    pub fn from_matrix(entries: Mat9) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::from_matrix(Mat9::zeros())
    }

    pub fn identity() -> Self {
        Self::from_matrix(Mat9::identity())
    }

    pub fn matrix(&self) -> &Mat9 {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.entries.adjoint())
    }

    pub fn commutator(&self, other: &PairOperator) -> Self {
        Self::from_matrix(self.entries * other.entries - other.entries * self.entries)
    }

    pub fn max_abs_diff(&self, other: &PairOperator) -> f64 {
        max_abs(&(self.entries - other.entries))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Matrix-vector product, no normalization.
    pub fn act(&self, state: &PairState) -> PairState {
        PairState::from_vector(self.entries * state.vector())
    }
}

impl Add for PairOperator {
    type Output = PairOperator;
    fn add(self, rhs: PairOperator) -> PairOperator {
        PairOperator::from_matrix(self.entries + rhs.entries)
    }
}

impl Sub for PairOperator {
    type Output = PairOperator;
    fn sub(self, rhs: PairOperator) -> PairOperator {
        PairOperator::from_matrix(self.entries - rhs.entries)
    }
}

impl Mul for PairOperator {
    type Output = PairOperator;
    fn mul(self, rhs: PairOperator) -> PairOperator {
        PairOperator::from_matrix(self.entries * rhs.entries)
    }
}

impl Mul<Complex64> for PairOperator {
    type Output = PairOperator;
    fn mul(self, rhs: Complex64) -> PairOperator {
        PairOperator::from_matrix(self.entries * rhs)
    }
}

impl Mul<f64> for PairOperator {
    type Output = PairOperator;
    fn mul(self, rhs: f64) -> PairOperator {
        self * re(rhs)
    }
}

/// Kronecker product A ⊗ B with the quark factor first.
pub fn kron(a: &Mat3, b: &Mat3) -> Mat9 {
    Mat9::from_fn(|r, c| a[(r / 3, c / 3)] * b[(r % 3, c % 3)])
}

/// I_i^a as a 9×9 operator: the generator on site `site` tensored with the
/// identity on the other one.
fn site_operator(site: usize, generator: usize, conv: SiteConvention) -> Mat9 {
    match site {
        1 => kron(&GellMannSet::new().fundamental()[generator], &Mat3::identity()),
        2 => kron(&Mat3::identity(), &conv.site2_generators()[generator]),
        _ => unreachable!("two sites only"),
    }
}

/// The three pieces J^a is linear in: J = μ·site1 + ν·site2 + λ·bilinear.
#[derive(Debug, Clone, Copy)]
struct JParts {
    site1: Mat9,
    site2: Mat9,
    bilinear: Mat9,
}

fn compute_parts(a: usize, conv: SiteConvention) -> JParts {
    let f = StructureConstantTable::global();
    let site1: [Mat9; N_GENERATORS] = std::array::from_fn(|b| site_operator(1, b, conv));
    let site2: [Mat9; N_GENERATORS] = std::array::from_fn(|b| site_operator(2, b, conv));
    let on_site = |i: usize, b: usize| if i == 1 { &site1[b] } else { &site2[b] };

    let mut bilinear = Mat9::zeros();
    for b in 0..N_GENERATORS {
        for c in 0..N_GENERATORS {
            let fabc = f.at(a, b, c);
            if fabc == 0.0 {
                continue;
            }
            for i in 1..=2 {
                for j in 1..=2 {
                    if i == j {
                        continue;
                    }
                    let omega = SitePairWeight::TABLE[i - 1][j - 1] as f64;
                    bilinear += (on_site(i, b) * on_site(j, c)) * re(fabc * omega);
                }
            }
        }
    }
    JParts {
        site1: site1[a],
        site2: site2[a],
        bilinear: bilinear * (I * 0.5),
    }
}

fn parts(a: usize, conv: SiteConvention) -> &'static JParts {
    static CACHE: [OnceLock<[JParts; N_GENERATORS]>; 2] = [OnceLock::new(), OnceLock::new()];
    &CACHE[conv.slot()].get_or_init(|| std::array::from_fn(|k| compute_parts(k, conv)))[a]
}

/// Total su(3) generator I^a = F^a ⊗ 1 + 1 ⊗ F̃^a.
pub fn build_total_i(a: usize, conv: SiteConvention) -> Result<PairOperator> {
    let k = su3::slot(a)?;
    Ok(PairOperator::from_matrix(
        site_operator(1, k, conv) + site_operator(2, k, conv),
    ))
}

/// Yangian generator J^a(μ, ν, λ).
pub fn build_j(a: usize, p: &YangianParams, conv: SiteConvention) -> Result<PairOperator> {
    let k = su3::slot(a)?;
    Ok(j_from_parts(parts(k, conv), p))
}

fn j_from_parts(parts: &JParts, p: &YangianParams) -> PairOperator {
    PairOperator::from_matrix(parts.site1 * re(p.mu) + parts.site2 * re(p.nu) + parts.bilinear * re(p.lambda))
}

/// Ladder and Cartan combinations of the J^a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderSymbol {
    IPlus,
    IMinus,
    UPlus,
    UMinus,
    VPlus,
    VMinus,
    I3,
    I8,
}

impl LadderSymbol {
    pub const ALL: [LadderSymbol; 8] = [
        LadderSymbol::IPlus,
        LadderSymbol::IMinus,
        LadderSymbol::UPlus,
        LadderSymbol::UMinus,
        LadderSymbol::VPlus,
        LadderSymbol::VMinus,
        LadderSymbol::I3,
        LadderSymbol::I8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LadderSymbol::IPlus => "I+",
            LadderSymbol::IMinus => "I-",
            LadderSymbol::UPlus => "U+",
            LadderSymbol::UMinus => "U-",
            LadderSymbol::VPlus => "V+",
            LadderSymbol::VMinus => "V-",
            LadderSymbol::I3 => "I3",
            LadderSymbol::I8 => "I8",
        }
    }

    /// The partner with the opposite step, or itself for I3/I8.
    pub fn partner(self) -> LadderSymbol {
        match self {
            LadderSymbol::IPlus => LadderSymbol::IMinus,
            LadderSymbol::IMinus => LadderSymbol::IPlus,
            LadderSymbol::UPlus => LadderSymbol::UMinus,
            LadderSymbol::UMinus => LadderSymbol::UPlus,
            LadderSymbol::VPlus => LadderSymbol::VMinus,
            LadderSymbol::VMinus => LadderSymbol::VPlus,
            other => other,
        }
    }

    /// (generator label, weight) pairs making up the symbol.
    fn combination(self) -> &'static [(usize, Complex64)] {
        const P: Complex64 = Complex64::new(0.0, 1.0);
        const M: Complex64 = Complex64::new(0.0, -1.0);
        const ONE: Complex64 = Complex64::new(1.0, 0.0);
        // 2/√3
        const Y: Complex64 = Complex64::new(1.154_700_538_379_251_5, 0.0);
        match self {
            LadderSymbol::IPlus => &[(1, ONE), (2, P)],
            LadderSymbol::IMinus => &[(1, ONE), (2, M)],
            LadderSymbol::UPlus => &[(6, ONE), (7, P)],
            LadderSymbol::UMinus => &[(6, ONE), (7, M)],
            LadderSymbol::VPlus => &[(4, ONE), (5, P)],
            LadderSymbol::VMinus => &[(4, ONE), (5, M)],
            LadderSymbol::I3 => &[(3, ONE)],
            LadderSymbol::I8 => &[(8, Y)],
        }
    }
}

impl fmt::Display for LadderSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LadderSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LadderSymbol::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidSymbol(s.to_string()))
    }
}

/// Ī± = J¹ ± iJ², Ū± = J⁶ ± iJ⁷, V̄± = J⁴ ± iJ⁵, Ī³ = J³, Ī⁸ = (2/√3) J⁸.
pub fn ladder(symbol: LadderSymbol, p: &YangianParams, conv: SiteConvention) -> PairOperator {
    symbol.combination().iter().fold(PairOperator::zero(), |acc, &(a, w)| {
        acc + j_from_parts(parts(a - 1, conv), p) * w
    })
}

/// Σ coefficient · ladder(symbol).
pub fn realize(expr: &OperatorExpr, p: &YangianParams, conv: SiteConvention) -> PairOperator {
    expr.terms().iter().fold(PairOperator::zero(), |acc, t| {
        acc + ladder(t.symbol, p, conv) * t.coefficient
    })
}

/// P|φ⟩, optionally rescaled to unit norm.
pub fn apply(op: &PairOperator, state: &PairState, normalize: bool) -> Result<PairState> {
    let out = op.act(state);
    if !normalize {
        return Ok(out);
    }
    let norm = out.norm();
    if norm.is_nan() || norm < ZERO_STATE_THRESHOLD {
        return Err(Error::ZeroFinalState { norm });
    }
    Ok(out * (1.0 / norm))
}
