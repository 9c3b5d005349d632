//! Gell-Mann basis of su(3), commutators and structure constants.
//!
//! Normalization is `tr(λᵢλⱼ) = 2δᵢⱼ`. Structure constants are kept complex,
//! `[λᵢ, λⱼ] = Σₖ Cᵏᵢⱼ λₖ`, so `C = 2i·f` with the usual real antisymmetric `f`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, re, trace, trace_product, Complex, Matrix3c, I, ZERO};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Absolute tolerance for entries that are exact up to the single constant √3.
pub const TABLE_TOLERANCE: f64 = 1e-12;

/// A 1-based Gell-Mann index, `1 ≤ i ≤ 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GellMannIndex(u8);

impl GellMannIndex {
    pub fn new(i: usize) -> Result<Self> {
        if (1..=8).contains(&i) {
            Ok(GellMannIndex(i as u8))
        } else {
            Err(Error::IndexOutOfRange(i))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Zero-based position in arrays of length 8.
    pub fn offset(self) -> usize {
        self.0 as usize - 1
    }

    pub fn all() -> impl Iterator<Item = GellMannIndex> {
        (1..=8u8).map(GellMannIndex)
    }
}

impl TryFrom<usize> for GellMannIndex {
    type Error = Error;
    fn try_from(i: usize) -> Result<Self> {
        GellMannIndex::new(i)
    }
}

impl From<GellMannIndex> for usize {
    fn from(i: GellMannIndex) -> usize {
        i.get()
    }
}

impl fmt::Display for GellMannIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}", self.0)
    }
}

fn build_basis() -> [Matrix3c; 8] {
    let z = ZERO;
    let o = re(1.0);
    let m = |x: [[Complex; 3]; 3]| {
        Matrix3c::new(
            x[0][0], x[0][1], x[0][2], x[1][0], x[1][1], x[1][2], x[2][0], x[2][1], x[2][2],
        )
    };
    let s = re(1.0 / SQRT3);
    [
        m([[z, o, z], [o, z, z], [z, z, z]]),
        m([[z, -I, z], [I, z, z], [z, z, z]]),
        m([[o, z, z], [z, -o, z], [z, z, z]]),
        m([[z, z, o], [z, z, z], [o, z, z]]),
        m([[z, z, -I], [z, z, z], [I, z, z]]),
        m([[z, z, z], [z, z, o], [z, o, z]]),
        m([[z, z, z], [z, z, -I], [z, I, z]]),
        m([[s, z, z], [z, s, z], [z, z, re(-2.0) * s]]),
    ]
}

/// The eight Gell-Mann matrices, zero-based.
pub fn basis() -> &'static [Matrix3c; 8] {
    static BASIS: OnceLock<[Matrix3c; 8]> = OnceLock::new();
    BASIS.get_or_init(build_basis)
}

pub fn gell_mann_matrix(i: GellMannIndex) -> Matrix3c {
    basis()[i.offset()]
}

pub fn commutator(a: &Matrix3c, b: &Matrix3c) -> Matrix3c {
    a * b - b * a
}

/// Coefficients `cⱼ = tr(M λⱼ)/2` of a traceless matrix, so that `M = Σ cⱼ λⱼ`.
pub fn expand_in_basis(m: &Matrix3c) -> Result<[Complex; 8]> {
    let scale = crate::linalg::frobenius(m).max(1.0);
    let tr = trace(m).norm();
    let tolerance = TABLE_TOLERANCE * scale;
    if tr > tolerance {
        return Err(Error::NotTraceless { trace: tr, tolerance });
    }
    Ok(expand_unchecked(m))
}

/// Basis coefficients without the trace check.
pub(crate) fn expand_unchecked(m: &Matrix3c) -> [Complex; 8] {
    let mut out = [ZERO; 8];
    for (o, l) in out.iter_mut().zip(basis().iter()) {
        *o = trace_product(m, l) * 0.5;
    }
    out
}

pub fn reconstruct(coefficients: &[Complex; 8]) -> Matrix3c {
    coefficients
        .iter()
        .zip(basis().iter())
        .fold(Matrix3c::zeros(), |acc, (c, l)| acc + l * *c)
}

/// Real coefficients on the Gell-Mann basis: a hermitian traceless matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AlgebraVector(pub [f64; 8]);

impl AlgebraVector {
    pub fn to_matrix(&self) -> Matrix3c {
        self.0
            .iter()
            .zip(basis().iter())
            .fold(Matrix3c::zeros(), |acc, (v, l)| acc + l * re(*v))
    }

    /// Projects a hermitian traceless matrix onto the basis. Anti-hermitian
    /// parts are discarded.
    pub fn from_matrix(m: &Matrix3c) -> Result<Self> {
        let coeffs = expand_in_basis(m)?;
        Ok(AlgebraVector(coeffs.map(|z| z.re)))
    }
}

/// `Cᵏᵢⱼ` stored as `[k][i][j]`, zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor {
    c: [[[Complex; 8]; 8]; 8],
}

impl StructureTensor {
    pub fn get(&self, k: GellMannIndex, i: GellMannIndex, j: GellMannIndex) -> Complex {
        self.c[k.offset()][i.offset()][j.offset()]
    }

    /// Zero-based accessor.
    pub fn at(&self, k: usize, i: usize, j: usize) -> Complex {
        self.c[k][i][j]
    }

    /// The real totally antisymmetric `fᵢⱼₖ = Cᵏᵢⱼ / 2i`.
    pub fn real_f(&self, i: GellMannIndex, j: GellMannIndex, k: GellMannIndex) -> f64 {
        (self.get(k, i, j) / c(0.0, 2.0)).re
    }

    /// Largest `|Cᵏᵢⱼ + Cᵏⱼᵢ|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..8 {
            for i in 0..8 {
                for j in 0..8 {
                    worst = worst.max((self.c[k][i][j] + self.c[k][j][i]).norm());
                }
            }
        }
        worst
    }

    /// Largest real part of any entry.
    pub fn max_real_part(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .flatten()
            .map(|z| z.re.abs())
            .fold(0.0, f64::max)
    }
}

fn build_structure_constants() -> StructureTensor {
    let b = basis();
    let mut c = [[[ZERO; 8]; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let coeffs = expand_unchecked(&commutator(&b[i], &b[j]));
            for k in 0..8 {
                c[k][i][j] = coeffs[k];
            }
        }
    }
    StructureTensor { c }
}

pub fn structure_constants() -> &'static StructureTensor {
    static TENSOR: OnceLock<StructureTensor> = OnceLock::new();
    TENSOR.get_or_init(build_structure_constants)
}

/// One entry of the published commutator table: `[λᵢ, λⱼ] = Σ coeff·λₖ`.
#[derive(Debug, Clone, Copy)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    /// `(k, coefficient)` pairs, 1-based `k`.
    pub terms: &'static [(usize, Complex)],
}

const fn ci(x: f64) -> Complex {
    Complex::new(0.0, x)
}

const S3: f64 = SQRT3;

/// The upper triangle (including the diagonal) of the commutator table as printed:
/// 36 unordered pairs.
pub const REFERENCE_COMMUTATORS: [TableEntry; 36] = {
    const fn e(i: usize, j: usize, terms: &'static [(usize, Complex)]) -> TableEntry {
        TableEntry { i, j, terms }
    }
    [
        e(1, 1, &[]),
        e(1, 2, &[(3, ci(2.0))]),
        e(1, 3, &[(2, ci(-2.0))]),
        e(1, 4, &[(7, ci(1.0))]),
        e(1, 5, &[(6, ci(-1.0))]),
        e(1, 6, &[(5, ci(1.0))]),
        e(1, 7, &[(4, ci(-1.0))]),
        e(1, 8, &[]),
        e(2, 2, &[]),
        e(2, 3, &[(1, ci(2.0))]),
        e(2, 4, &[(6, ci(1.0))]),
        e(2, 5, &[(7, ci(1.0))]),
        e(2, 6, &[(4, ci(-1.0))]),
        e(2, 7, &[(5, ci(-1.0))]),
        e(2, 8, &[]),
        e(3, 3, &[]),
        e(3, 4, &[(5, ci(1.0))]),
        e(3, 5, &[(4, ci(-1.0))]),
        e(3, 6, &[(7, ci(-1.0))]),
        e(3, 7, &[(6, ci(1.0))]),
        e(3, 8, &[]),
        e(4, 4, &[]),
        e(4, 5, &[(3, ci(1.0)), (8, ci(S3))]),
        e(4, 6, &[(2, ci(1.0))]),
        e(4, 7, &[(1, ci(1.0))]),
        e(4, 8, &[(5, ci(-S3))]),
        e(5, 5, &[]),
        e(5, 6, &[(1, ci(-1.0))]),
        e(5, 7, &[(2, ci(-1.0))]),
        e(5, 8, &[(4, ci(S3))]),
        e(6, 6, &[]),
        e(6, 7, &[(3, ci(-1.0)), (8, ci(S3))]),
        e(6, 8, &[(7, ci(-S3))]),
        e(7, 7, &[]),
        e(7, 8, &[(6, ci(S3))]),
        e(8, 8, &[]),
    ]
};

impl TableEntry {
    pub fn expected_matrix(&self) -> Matrix3c {
        expand_terms(self.terms)
    }
}

/// A printed table entry that the printed matrices contradict, with the value
/// the matrices give.
#[derive(Debug, Clone, Copy)]
pub struct TableErratum {
    pub i: usize,
    pub j: usize,
    pub printed: &'static [(usize, Complex)],
    pub derived: &'static [(usize, Complex)],
}

/// Known misprints in [`REFERENCE_COMMUTATORS`]. With λ₅ and λ₇ as printed,
/// `λ₅λ₇ = E₁₂` and `λ₇λ₅ = E₂₁`, so `[λ₅,λ₇] = E₁₂ − E₂₁ = +iλ₂`; the table
/// prints `−iλ₂` (and `+iλ₂` for the transposed cell, consistently wrong).
pub const TABLE_ERRATA: [TableErratum; 1] = [TableErratum {
    i: 5,
    j: 7,
    printed: &[(2, ci(-1.0))],
    derived: &[(2, ci(1.0))],
}];

fn expand_terms(terms: &[(usize, Complex)]) -> Matrix3c {
    terms
        .iter()
        .fold(Matrix3c::zeros(), |acc, (k, coeff)| acc + basis()[k - 1] * *coeff)
}

/// Deviation of one table cell, checked both directly and through the tensor.
fn entry_residual(i: usize, j: usize, terms: &[(usize, Complex)]) -> f64 {
    let b = basis();
    let got = commutator(&b[i - 1], &b[j - 1]);
    let direct = crate::linalg::max_abs3(&(got - expand_terms(terms)));
    let t = structure_constants();
    let via_tensor = (0..8)
        .map(|k| {
            let want = terms
                .iter()
                .find(|(kk, _)| *kk == k + 1)
                .map(|(_, v)| *v)
                .unwrap_or(ZERO);
            (t.at(k, i - 1, j - 1) - want).norm()
        })
        .fold(0.0, f64::max);
    direct.max(via_tensor)
}

/// Per-pair comparison of the explicit commutators with the printed table.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorTableReport {
    pub pairs_checked: usize,
    /// `(i, j, residual)` for every printed cell above the tolerance.
    pub printed_mismatches: Vec<(usize, usize, f64)>,
    /// Largest residual over the printed cells not listed in [`TABLE_ERRATA`].
    pub residual_excluding_errata: f64,
    /// Largest residual of the errata cells against their derived values.
    pub errata_residual: f64,
    /// Mismatched cells that are not explained by [`TABLE_ERRATA`].
    pub unexplained: Vec<(usize, usize)>,
}

impl CommutatorTableReport {
    /// Every printed cell agrees with the explicit matrices.
    pub fn exact(&self) -> bool {
        self.printed_mismatches.is_empty()
    }

    /// Every cell agrees, or disagrees only where a listed erratum applies and
    /// the erratum's derived value matches.
    pub fn explained(&self) -> bool {
        self.unexplained.is_empty()
            && self.residual_excluding_errata <= TABLE_TOLERANCE
            && self.errata_residual <= TABLE_TOLERANCE
    }
}

pub fn commutator_table_report() -> CommutatorTableReport {
    let is_erratum = |i: usize, j: usize| TABLE_ERRATA.iter().any(|e| e.i == i && e.j == j);
    let mut report = CommutatorTableReport {
        pairs_checked: REFERENCE_COMMUTATORS.len(),
        printed_mismatches: Vec::new(),
        residual_excluding_errata: 0.0,
        errata_residual: 0.0,
        unexplained: Vec::new(),
    };
    for e in REFERENCE_COMMUTATORS.iter() {
        let r = entry_residual(e.i, e.j, e.terms);
        if r > TABLE_TOLERANCE {
            report.printed_mismatches.push((e.i, e.j, r));
            if !is_erratum(e.i, e.j) {
                report.unexplained.push((e.i, e.j));
            }
        }
        if !is_erratum(e.i, e.j) {
            report.residual_excluding_errata = report.residual_excluding_errata.max(r);
        }
    }
    for e in TABLE_ERRATA.iter() {
        report.errata_residual = report.errata_residual.max(entry_residual(e.i, e.j, e.derived));
    }
    report
}

/// Largest entrywise deviation of the explicit commutators from the printed table.
pub fn commutator_table_residual() -> f64 {
    REFERENCE_COMMUTATORS
        .iter()
        .map(|e| entry_residual(e.i, e.j, e.terms))
        .fold(0.0, f64::max)
}

/// Which subspace of the Cartan split a basis element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanPart {
    /// span{λ₁, λ₂, λ₃, λ₈}
    K,
    /// span{λ₄, λ₅, λ₆, λ₇}
    P,
}

impl CartanPart {
    pub fn of(offset: usize) -> CartanPart {
        match offset {
            0 | 1 | 2 | 7 => CartanPart::K,
            _ => CartanPart::P,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CartanReport {
    /// Largest component of `[𝔨,𝔨]` outside 𝔨.
    pub kk_leak: f64,
    /// Largest component of `[𝔭,𝔭]` outside 𝔨.
    pub pp_leak: f64,
    /// Largest component of `[𝔨,𝔭]` outside 𝔭.
    pub kp_leak: f64,
    pub pairs_checked: usize,
    pub passed: bool,
}

pub fn verify_cartan_split() -> CartanReport {
    let t = structure_constants();
    let (mut kk, mut pp, mut kp) = (0.0f64, 0.0f64, 0.0f64);
    let mut pairs = 0;
    for i in 0..8 {
        for j in i..8 {
            pairs += 1;
            let (pi, pj) = (CartanPart::of(i), CartanPart::of(j));
            let target = if pi == pj { CartanPart::K } else { CartanPart::P };
            let leak = (0..8)
                .filter(|&k| CartanPart::of(k) != target)
                .map(|k| t.at(k, i, j).norm())
                .fold(0.0, f64::max);
            match (pi, pj) {
                (CartanPart::K, CartanPart::K) => kk = kk.max(leak),
                (CartanPart::P, CartanPart::P) => pp = pp.max(leak),
                _ => kp = kp.max(leak),
            }
        }
    }
    CartanReport {
        kk_leak: kk,
        pp_leak: pp,
        kp_leak: kp,
        pairs_checked: pairs,
        passed: kk.max(pp).max(kp) <= TABLE_TOLERANCE,
    }
}

/// Largest entry of `[λᵢ,[λⱼ,λₖ]] + [λⱼ,[λₖ,λᵢ]] + [λₖ,[λᵢ,λⱼ]]` over all triples.
pub fn jacobi_residual() -> f64 {
    let b = basis();
    let mut worst: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let s = commutator(&b[i], &commutator(&b[j], &b[k]))
                    + commutator(&b[j], &commutator(&b[k], &b[i]))
                    + commutator(&b[k], &commutator(&b[i], &b[j]));
                worst = worst.max(crate::linalg::max_abs3(&s));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs3;

    fn g(i: usize) -> Matrix3c {
        gell_mann_matrix(GellMannIndex::new(i).unwrap())
    }

    #[test]
    fn index_bounds() {
        assert!(GellMannIndex::new(0).is_err());
        assert!(GellMannIndex::new(9).is_err());
        assert_eq!(GellMannIndex::new(8).unwrap().offset(), 7);
        assert_eq!(GellMannIndex::all().count(), 8);
    }

    #[test]
    fn first_and_last_matrices() {
        let l1 = g(1);
        assert_eq!(l1[(0, 1)], re(1.0));
        assert_eq!(l1[(1, 0)], re(1.0));
        assert_eq!(l1.iter().filter(|z| z.norm() != 0.0).count(), 2);
        let l8 = g(8);
        let s = 1.0 / 3f64.sqrt();
        assert!((l8[(0, 0)].re - s).abs() < 1e-16);
        assert!((l8[(1, 1)].re - s).abs() < 1e-16);
        assert!((l8[(2, 2)].re + 2.0 * s).abs() < 1e-15);
    }

    #[test]
    fn hermitian_traceless_orthogonal() {
        for i in 1..=8 {
            let l = g(i);
            assert!(max_abs3(&(l - l.adjoint())) == 0.0);
            assert!(trace(&l).norm() < 1e-15);
            for j in 1..=8 {
                let t = trace_product(&l, &g(j));
                let want = if i == j { 2.0 } else { 0.0 };
                assert!((t - re(want)).norm() < 1e-15, "tr(λ{i}λ{j}) = {t}");
            }
        }
    }

    #[test]
    fn commutator_examples() {
        assert!(max_abs3(&(commutator(&g(1), &g(2)) - g(3) * c(0.0, 2.0))) < 1e-15);
        assert!(max_abs3(&commutator(&g(3), &g(8))) < 1e-15);
        let want = g(3) * I + g(8) * c(0.0, SQRT3);
        assert!(max_abs3(&(commutator(&g(4), &g(5)) - want)) < 1e-12);
    }

    #[test]
    fn expansion_examples() {
        let c5 = expand_in_basis(&g(5)).unwrap();
        for (k, v) in c5.iter().enumerate() {
            assert!((v - re(if k == 4 { 1.0 } else { 0.0 })).norm() < 1e-15);
        }
        let c3 = expand_in_basis(&(g(3) * c(0.0, 2.0))).unwrap();
        assert!((c3[2] - c(0.0, 2.0)).norm() < 1e-15);
        let c45 = expand_in_basis(&commutator(&g(4), &g(5))).unwrap();
        assert!((c45[2] - I).norm() < 1e-12);
        assert!((c45[7] - c(0.0, SQRT3)).norm() < 1e-12);
        for k in [0, 1, 3, 4, 5, 6] {
            assert!(c45[k].norm() < 1e-12);
        }
    }

    #[test]
    fn expansion_rejects_trace() {
        let err = expand_in_basis(&Matrix3c::identity()).unwrap_err();
        assert!(matches!(err, Error::NotTraceless { .. }));
    }

    #[test]
    fn structure_constant_examples() {
        let t = structure_constants();
        let ix = |i| GellMannIndex::new(i).unwrap();
        assert!((t.get(ix(3), ix(1), ix(2)) - c(0.0, 2.0)).norm() < 1e-15);
        assert!((t.get(ix(8), ix(4), ix(5)) - c(0.0, SQRT3)).norm() < 1e-12);
        for i in 0..8 {
            for k in 0..8 {
                assert_eq!(t.at(k, i, i), ZERO);
            }
        }
        assert!(t.antisymmetry_defect() < 1e-15);
        assert!(t.max_real_part() < 1e-15);
        assert!((t.real_f(ix(1), ix(2), ix(3)) - 1.0).abs() < 1e-15);
        assert!((t.real_f(ix(4), ix(5), ix(8)) - SQRT3 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_reproduces_commutators() {
        let t = structure_constants();
        for i in 0..8 {
            for j in 0..8 {
                let lhs = commutator(&basis()[i], &basis()[j]);
                let rhs = (0..8).fold(Matrix3c::zeros(), |acc, k| acc + basis()[k] * t.at(k, i, j));
                assert!(max_abs3(&(lhs - rhs)) < 1e-12);
            }
        }
    }

    #[test]
    fn table_cartan_jacobi() {
        let table = commutator_table_report();
        assert_eq!(table.pairs_checked, 36);
        assert!(table.explained(), "{table:?}");
        assert_eq!(table.printed_mismatches.len(), 1);
        assert_eq!((table.printed_mismatches[0].0, table.printed_mismatches[0].1), (5, 7));
        assert!((commutator_table_residual() - 2.0).abs() < 1e-12);
        let r = verify_cartan_split();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.pairs_checked, 36);
        assert!(jacobi_residual() < 1e-12);
    }

    #[test]
    fn algebra_vector_roundtrip() {
        let v = AlgebraVector([0.3, -1.2, 0.5, 2.0, 0.0, -0.7, 1.1, 0.25]);
        let m = v.to_matrix();
        assert!(max_abs3(&(m - m.adjoint())) < 1e-15);
        assert!(trace(&m).norm() < 1e-15);
        let back = AlgebraVector::from_matrix(&m).unwrap();
        for (a, b) in v.0.iter().zip(back.0.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
