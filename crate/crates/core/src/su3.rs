//! su(3) in the defining representation.
//!
//! Generator indices are 1-based (`1..=8`) in the public API, matching the
//! usual physics labelling λ¹..λ⁸. Internally arrays are 0-based.

use std::sync::OnceLock;

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat3 = SMatrix<Complex64, 3, 3>;

/// Number of su(3) generators.
pub const N_GENERATORS: usize = 8;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Maps a 1-based generator label to a 0-based slot.
pub(crate) fn slot(a: usize) -> Result<usize> {
    if (1..=N_GENERATORS).contains(&a) {
        Ok(a - 1)
    } else {
        Err(Error::IndexOutOfRange(a))
    }
}

fn gell_mann_slot(k: usize) -> Mat3 {
    let mut m = Mat3::zeros();
    match k {
        0 => {
            m[(0, 1)] = ONE;
            m[(1, 0)] = ONE;
        }
        1 => {
            m[(0, 1)] = -I;
            m[(1, 0)] = I;
        }
        2 => {
            m[(0, 0)] = ONE;
            m[(1, 1)] = -ONE;
        }
        3 => {
            m[(0, 2)] = ONE;
            m[(2, 0)] = ONE;
        }
        4 => {
            m[(0, 2)] = -I;
            m[(2, 0)] = I;
        }
        5 => {
            m[(1, 2)] = ONE;
            m[(2, 1)] = ONE;
        }
        6 => {
            m[(1, 2)] = -I;
            m[(2, 1)] = I;
        }
        7 => {
            let s = 1.0 / 3f64.sqrt();
            m[(0, 0)] = Complex64::new(s, 0.0);
            m[(1, 1)] = Complex64::new(s, 0.0);
            m[(2, 2)] = Complex64::new(-2.0 * s, 0.0);
        }
        _ => unreachable!("slot checked by caller"),
    }
    m
}

/// Gell-Mann matrix λ^a.
pub fn gell_mann(a: usize) -> Result<Mat3> {
    slot(a).map(gell_mann_slot)
}

/// F^a = λ^a / 2.
pub fn fundamental_generator(a: usize) -> Result<Mat3> {
    slot(a).map(|k| gell_mann_slot(k) * Complex64::new(0.5, 0.0))
}

/// F̃^a = −(F^a)ᵀ, the generators of the conjugate representation 3̄.
pub fn conjugate_generator(a: usize) -> Result<Mat3> {
    fundamental_generator(a).map(|f| -f.transpose())
}

/// The eight Gell-Mann matrices together with the derived generator sets.
#[derive(Debug, Clone)]
pub struct GellMannSet {
    lambdas: [Mat3; N_GENERATORS],
}

impl GellMannSet {
    pub fn new() -> Self {
        Self {
            lambdas: std::array::from_fn(gell_mann_slot),
        }
    }

    pub fn lambda(&self, a: usize) -> Result<&Mat3> {
        slot(a).map(|k| &self.lambdas[k])
    }

    pub fn lambdas(&self) -> &[Mat3; N_GENERATORS] {
        &self.lambdas
    }

    pub fn fundamental(&self) -> [Mat3; N_GENERATORS] {
        std::array::from_fn(|k| self.lambdas[k] * Complex64::new(0.5, 0.0))
    }

    pub fn conjugate(&self) -> [Mat3; N_GENERATORS] {
        std::array::from_fn(|k| -(self.lambdas[k] * Complex64::new(0.5, 0.0)).transpose())
    }
}

impl Default for GellMannSet {
    fn default() -> Self {
        Self::new()
    }
}

/// f_abc = Tr([λ^a, λ^b] λ^c) / (4i), evaluated from the matrices.
pub fn structure_constant(a: usize, b: usize, c: usize) -> Result<f64> {
    let (a, b, c) = (slot(a)?, slot(b)?, slot(c)?);
    Ok(trace_formula(a, b, c))
}

fn trace_formula(a: usize, b: usize, c: usize) -> f64 {
    let (la, lb, lc) = (gell_mann_slot(a), gell_mann_slot(b), gell_mann_slot(c));
    let value = ((la * lb - lb * la) * lc).trace() / (4.0 * I);
    debug_assert!(value.im.abs() < 1e-14, "f_abc has imaginary part {}", value.im);
    value.re
}

/// Nonzero f_abc with a < b < c; every other entry follows by antisymmetry.
pub const CANONICAL_NONZERO: [((usize, usize, usize), f64); 9] = [
    ((1, 2, 3), 1.0),
    ((1, 4, 7), 0.5),
    ((2, 4, 6), 0.5),
    ((2, 5, 7), 0.5),
    ((3, 4, 5), 0.5),
    ((1, 5, 6), -0.5),
    ((3, 6, 7), -0.5),
    ((4, 5, 8), 0.866_025_403_784_438_6),
    ((6, 7, 8), 0.866_025_403_784_438_6),
];

/// Tolerance for the trace-vs-canonical cross-check.
pub const TABLE_TOLERANCE: f64 = 1e-14;

/// Full 8×8×8 table of structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstantTable {
    f: [[[f64; N_GENERATORS]; N_GENERATORS]; N_GENERATORS],
}

impl StructureConstantTable {
    /// Computes every entry from the trace formula.
    pub fn from_traces() -> Self {
        let mut f = [[[0.0; N_GENERATORS]; N_GENERATORS]; N_GENERATORS];
        for (a, plane) in f.iter_mut().enumerate() {
            for (b, row) in plane.iter_mut().enumerate() {
                for (c, entry) in row.iter_mut().enumerate() {
                    *entry = trace_formula(a, b, c);
                }
            }
        }
        Self { f }
    }

    /// Expands [`CANONICAL_NONZERO`] over all six index permutations.
    pub fn canonical() -> Self {
        let mut f = [[[0.0; N_GENERATORS]; N_GENERATORS]; N_GENERATORS];
        for &((a, b, c), v) in CANONICAL_NONZERO.iter() {
            let (a, b, c) = (a - 1, b - 1, c - 1);
            for (i, j, k, sign) in [
                (a, b, c, 1.0),
                (b, c, a, 1.0),
                (c, a, b, 1.0),
                (b, a, c, -1.0),
                (a, c, b, -1.0),
                (c, b, a, -1.0),
            ] {
                f[i][j][k] = sign * v;
            }
        }
        Self { f }
    }

    /// Trace-derived table, cross-checked against the canonical list once per
    /// process. Panics on any mismatch.
    pub fn global() -> &'static Self {
        static TABLE: OnceLock<StructureConstantTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let table = Self::from_traces();
            let deviation = table.max_deviation(&Self::canonical());
            assert!(
                deviation < TABLE_TOLERANCE,
                "structure constants disagree with the canonical list by {deviation:e}"
            );
            table
        })
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Result<f64> {
        Ok(self.f[slot(a)?][slot(b)?][slot(c)?])
    }

    /// 0-based access for hot loops.
    #[inline]
    pub(crate) fn at(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[a][b][c]
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..N_GENERATORS {
            for b in 0..N_GENERATORS {
                for c in 0..N_GENERATORS {
                    worst = worst.max((self.f[a][b][c] - other.f[a][b][c]).abs());
                }
            }
        }
        worst
    }
}

/// Largest entry magnitude.
pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<Complex64, R, C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise residual of `[G^a, G^b] − i Σ_c f_abc G^c`, maximised over all
/// 64 generator pairs of the given set.
pub fn closure_residual(generators: &[Mat3; N_GENERATORS]) -> f64 {
    let table = StructureConstantTable::global();
    let mut worst: f64 = 0.0;
    for a in 0..N_GENERATORS {
        for b in 0..N_GENERATORS {
            let lhs = generators[a] * generators[b] - generators[b] * generators[a];
            let mut rhs = Mat3::zeros();
            for (c, g) in generators.iter().enumerate() {
                rhs += g * (I * table.at(a, b, c));
            }
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn lambda3_and_lambda8_are_diagonal() {
        let l3 = gell_mann(3).unwrap();
        assert_eq!(l3, Mat3::from_diagonal(&[c(1.0), c(-1.0), c(0.0)].into()));
        let l8 = gell_mann(8).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!(max_abs(&(l8 - Mat3::from_diagonal(&[c(s), c(s), c(-2.0 * s)].into()))) < 1e-15);
    }

    #[test]
    fn lambda1_is_the_12_swap() {
        let l1 = gell_mann(1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if (i, j) == (0, 1) || (i, j) == (1, 0) { 1.0 } else { 0.0 };
                assert_eq!(l1[(i, j)], c(expect));
            }
        }
    }

    #[test]
    fn out_of_range_indices_are_rejected() {
        assert_eq!(gell_mann(0), Err(Error::IndexOutOfRange(0)));
        assert_eq!(fundamental_generator(9), Err(Error::IndexOutOfRange(9)));
        assert_eq!(conjugate_generator(42), Err(Error::IndexOutOfRange(42)));
        assert_eq!(structure_constant(1, 2, 9), Err(Error::IndexOutOfRange(9)));
    }

    #[test]
    fn hermitian_traceless_and_orthogonal() {
        let set = GellMannSet::new();
        for (a, la) in set.lambdas().iter().enumerate() {
            assert!(max_abs(&(la - la.adjoint())) < 1e-14);
            assert!(la.trace().norm() < 1e-14);
            for (b, lb) in set.lambdas().iter().enumerate() {
                let expect = if a == b { 2.0 } else { 0.0 };
                assert!(((la * lb).trace() - c(expect)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn fundamental_generators() {
        let f3 = fundamental_generator(3).unwrap();
        assert_eq!(f3, Mat3::from_diagonal(&[c(0.5), c(-0.5), c(0.0)].into()));
        let f1 = fundamental_generator(1).unwrap();
        assert_eq!(f1[(0, 1)], c(0.5));
        assert_eq!(f1[(1, 0)], c(0.5));

        let raise13 = fundamental_generator(4).unwrap() + fundamental_generator(5).unwrap() * I;
        let mut e13 = Mat3::zeros();
        e13[(0, 2)] = c(1.0);
        assert!(max_abs(&(raise13 - e13)) < 1e-15);
    }

    #[test]
    fn conjugate_generators() {
        let t3 = conjugate_generator(3).unwrap();
        assert_eq!(t3, Mat3::from_diagonal(&[c(-0.5), c(0.5), c(0.0)].into()));
        assert_eq!(conjugate_generator(2).unwrap(), fundamental_generator(2).unwrap());
        assert!(closure_residual(&GellMannSet::new().conjugate()) < 1e-12);
    }

    #[test]
    fn structure_constant_examples() {
        assert!((structure_constant(1, 2, 3).unwrap() - 1.0).abs() < 1e-14);
        assert!((structure_constant(4, 5, 8).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-14);
        assert!((structure_constant(1, 5, 6).unwrap() + 0.5).abs() < 1e-14);
        assert_eq!(structure_constant(1, 1, 3).unwrap(), 0.0);
    }

    #[test]
    fn table_is_totally_antisymmetric() {
        let t = StructureConstantTable::global();
        for a in 1..=8 {
            for b in 1..=8 {
                for c in 1..=8 {
                    let v = t.get(a, b, c).unwrap();
                    for w in [t.get(b, a, c), t.get(a, c, b), t.get(c, b, a)] {
                        assert!((v + w.unwrap()).abs() < 1e-14);
                    }
                    for w in [t.get(b, c, a), t.get(c, a, b)] {
                        assert!((v - w.unwrap()).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_table_matches_canonical_list() {
        let traced = StructureConstantTable::from_traces();
        assert!(traced.max_deviation(&StructureConstantTable::canonical()) < TABLE_TOLERANCE);
    }

    #[test]
    fn fundamental_closure() {
        assert!(closure_residual(&GellMannSet::new().fundamental()) < 1e-12);
    }
}
