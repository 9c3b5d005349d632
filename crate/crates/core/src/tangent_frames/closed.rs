//! Term-by-term transcription of the published vector-field tables.
//!
//! Entries are stored exactly as printed, including the one term in the right
//! table that appears without a factor `i`; [`Transcription::Corrected`] applies
//! the errata catalogued in [`crate::comparison::ERRATA`]. Rows four to seven end in a multiple
//! of `Λ₈` (or `Λ₈ʳ`), which is expanded into coordinate partials before storage.

use crate::comparison::Transcription;
use crate::error::Result;
use crate::euler::EulerAngles;
use crate::gellmann::SQRT3;
use crate::linalg::{Complex, Matrix8c, I, ZERO};

use super::{check_interior, Chirality, FrameMatrix};

/// Coordinate offsets.
const ALPHA: usize = 0;
const BETA: usize = 1;
const GAMMA: usize = 2;
const THETA: usize = 3;
const A: usize = 4;
const B: usize = 5;
const C: usize = 6;
const PHI: usize = 7;

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// Builds a frame from rows of `(column, coefficient)` terms; repeated columns add.
fn assemble(rows: [Vec<(usize, Complex)>; 8]) -> Matrix8c {
    let mut m = Matrix8c::from_element(ZERO);
    for (i, row) in rows.iter().enumerate() {
        for &(k, v) in row {
            m[(i, k)] += v;
        }
    }
    m
}

/// `coeff · Λ₈` expanded with `Λ₈ = i√3∂₃ − i√3∂₅ + i∂₈`.
fn left_lambda8(coeff: f64) -> [(usize, Complex); 3] {
    [(GAMMA, I * SQRT3 * coeff), (A, -I * SQRT3 * coeff), (PHI, I * coeff)]
}

/// `coeff · Λ₈ʳ` expanded with `Λ₈ʳ = i∂₈`.
fn right_lambda8(coeff: f64) -> [(usize, Complex); 1] {
    [(PHI, I * coeff)]
}

fn left_entries(x: &EulerAngles) -> Matrix8c {
    let (al, be, ga, th, a, b) = (x.alpha, x.beta, x.gamma, x.theta, x.a, x.b);
    let (s2a, c2a) = (2.0 * al).sin_cos();
    let s2b = (2.0 * be).sin();
    let cot2b = cot(2.0 * be);
    let (sb, cb) = be.sin_cos();
    let (sth, _) = th.sin_cos();
    let s2th = (2.0 * th).sin();
    let cotth = cot(th);
    let tanth = th.tan();
    let q = (2.0 - sth * sth) / s2th;
    let cot2bb = cot(2.0 * b);
    let s2bb = (2.0 * b).sin();
    let (spg, cpg) = (al + ga).sin_cos();
    let (smg, cmg) = (al - ga).sin_cos();
    let (sm, cm) = (al - ga - 2.0 * a).sin_cos();
    let (sp, cp) = (al + ga + 2.0 * a).sin_cos();
    let i = I;

    let l4 = {
        let mut r = vec![
            (ALPHA, i * (sb / s2b * cotth * cpg)),
            (BETA, -i * (sb * cotth * spg)),
            (GAMMA, -i * (cot2b * sb * cotth * cpg)),
            (GAMMA, i * (q * cb * cpg)),
            (THETA, i * (cb * spg)),
            (A, -i * (2.0 * cb / s2th * cpg)),
            (A, -i * (cot2bb / sth * sb * cm)),
            (B, i * (sb / sth * sm)),
            (C, i * (sb / (sth * s2bb) * cm)),
        ];
        r.extend(left_lambda8(-SQRT3 / 2.0 * tanth * cb * cpg));
        r
    };
    let l5 = {
        let mut r = vec![
            (ALPHA, -i * (sb / s2b * cotth * spg)),
            (BETA, -i * (sb * cotth * cpg)),
            (GAMMA, i * (cot2b * sb * cotth * spg)),
            (GAMMA, -i * (q * cb * spg)),
            (THETA, i * (cb * cpg)),
            (A, i * (2.0 * cb / s2th * spg)),
            (A, i * (cot2bb / sth * sb * sm)),
            (B, i * (sb / sth * cm)),
            (C, -i * (sb / (sth * s2bb) * sm)),
        ];
        r.extend(left_lambda8(SQRT3 / 2.0 * tanth * cb * spg));
        r
    };
    let l6 = {
        let mut r = vec![
            (ALPHA, i * (cb / s2b * cotth * cmg)),
            (BETA, i * (cb * cotth * smg)),
            (GAMMA, -i * (cot2b * cb * cotth * cmg)),
            (GAMMA, -i * (q * sb * cmg)),
            (THETA, i * (sb * smg)),
            (A, i * (2.0 * sb / s2th * cmg)),
            (A, -i * (cot2bb / sth * cb * cp)),
            (B, -i * (cb / sth * sp)),
            (C, i * (cb / (sth * s2bb) * cp)),
        ];
        r.extend(left_lambda8(SQRT3 / 2.0 * tanth * sb * cmg));
        r
    };
    let l7 = {
        let mut r = vec![
            (ALPHA, i * (cb / s2b * cotth * smg)),
            (BETA, -i * (cb * cotth * cmg)),
            (GAMMA, -i * (cot2b * cb * cotth * smg)),
            (GAMMA, -i * (q * sb * smg)),
            (THETA, -i * (sb * cmg)),
            (A, i * (2.0 * sb / s2th * smg)),
            (A, -i * (cot2bb / sth * cb * sp)),
            (B, i * (cb / sth * cp)),
            (C, i * (cb / (sth * s2bb) * sp)),
        ];
        r.extend(left_lambda8(SQRT3 / 2.0 * tanth * sb * smg));
        r
    };
    assemble([
        vec![(ALPHA, i * (c2a * cot2b)), (BETA, i * s2a), (GAMMA, -i * (c2a / s2b))],
        vec![(ALPHA, -i * (s2a * cot2b)), (BETA, i * c2a), (GAMMA, i * (s2a / s2b))],
        vec![(ALPHA, i)],
        l4,
        l5,
        l6,
        l7,
        left_lambda8(1.0).to_vec(),
    ])
}

fn right_entries(x: &EulerAngles, version: Transcription) -> Matrix8c {
    let fixed = version == Transcription::Corrected;
    // sign of the Λ₈ʳ multiple in rows four to seven
    let flip = if fixed { -1.0 } else { 1.0 };
    let (be, ga, th, a, b, c) = (x.beta, x.gamma, x.theta, x.a, x.b, x.c);
    let eta = x.eta();
    let (s2c, c2c) = (2.0 * c).sin_cos();
    let s2bb = (2.0 * b).sin();
    let cot2bb = cot(2.0 * b);
    let (sbb, cbb) = b.sin_cos();
    let s2be = (2.0 * be).sin();
    let cot2be = cot(2.0 * be);
    let sth = th.sin();
    let s2th = (2.0 * th).sin();
    let cotth = cot(th);
    let tanth = th.tan();
    let q = (2.0 - sth * sth) / s2th;
    let (su, cu) = (c + a + 3.0 * eta).sin_cos();
    let (sv, cv) = (c - a - 2.0 * ga + 3.0 * eta).sin_cos();
    let (su2, cu2) = (c - a - 3.0 * eta).sin_cos();
    let (sv2, cv2) = (c + a + 2.0 * ga - 3.0 * eta).sin_cos();
    let i = I;
    let one = Complex::new(1.0, 0.0);

    let r4 = {
        let mut r = vec![
            (C, -i * (sbb / s2bb * cotth * cu)),
            (B, i * (sbb * cotth * su)),
            (A, i * (cot2bb * sbb * cotth * cu)),
            (A, -i * (q * cbb * cu)),
            (THETA, -i * (cbb * su)),
            (GAMMA, i * (2.0 * cbb / s2th * cu)),
            (GAMMA, i * (cot2be / sth * sbb * cv)),
            (BETA, -i * (sbb / sth * sv)),
            (ALPHA, -i * (sbb / (sth * s2be) * cv)),
        ];
        r.extend(right_lambda8(-flip * SQRT3 / 2.0 * tanth * cbb * cu));
        r
    };
    let r5 = {
        let mut r = vec![
            (C, -i * (sbb / s2bb * cotth * su)),
            (B, -i * (sbb * cotth * cu)),
            (A, i * (cot2bb * sbb * cotth * su)),
            (A, -i * (q * cbb * su)),
            (THETA, i * (cbb * cu)),
            (GAMMA, i * (2.0 * cbb / s2th * su)),
            (GAMMA, i * (cot2be / sth * sbb * sv)),
            (BETA, i * (sbb / sth * cv)),
            (ALPHA, -i * (sbb / (sth * s2be) * sv)),
        ];
        r.extend(right_lambda8(-flip * SQRT3 / 2.0 * tanth * cbb * su));
        r
    };
    let r6 = {
        let mut r = vec![
            (C, i * (cbb / s2bb * cotth * cu2)),
            (B, i * (cbb * cotth * su2)),
            (A, -i * (cot2bb * cbb * cotth * cu2)),
            // printed without the factor i
            (A, -(if fixed { i } else { one }) * (q * sbb * cu2)),
            (THETA, i * (sbb * su2)),
            (GAMMA, i * (2.0 * sbb / s2th * cu2)),
            (GAMMA, -i * (cot2be / sth * cbb * cv2)),
            (BETA, -i * (cbb / sth * sv2)),
            (ALPHA, i * (cbb / (sth * s2be) * cv2)),
        ];
        r.extend(right_lambda8(-flip * SQRT3 / 2.0 * tanth * sbb * cu2));
        r
    };
    let r7 = {
        let mut r = vec![
            (C, -i * (cbb / s2bb * cotth * su2)),
            (B, i * (cbb * cotth * cu2)),
            (A, i * (cot2bb * cbb * cotth * su2)),
            (A, i * (q * sbb * su2)),
            (THETA, i * (sbb * cu2)),
            (GAMMA, -i * (2.0 * sbb / s2th * su2)),
            (GAMMA, i * (cot2be / sth * cbb * sv2)),
            (BETA, -i * (cbb / sth * cv2)),
            (ALPHA, -i * (cbb / (sth * s2be) * sv2)),
        ];
        r.extend(right_lambda8(flip * SQRT3 / 2.0 * tanth * sbb * su2));
        r
    };
    assemble([
        vec![(C, -i * (c2c * cot2bb)), (B, -i * s2c), (A, i * (c2c / s2bb))],
        vec![(C, -i * (s2c * cot2bb)), (B, i * c2c), (A, i * (s2c / s2bb))],
        vec![(C, i)],
        r4,
        r5,
        r6,
        r7,
        right_lambda8(1.0).to_vec(),
    ])
}

/// The published left vector fields at `x`.
pub fn left_field_frame_closed(x: &EulerAngles) -> Result<FrameMatrix> {
    left_field_frame_transcribed(x, Transcription::Printed)
}

/// The left vector fields; the printed table needs no correction.
pub fn left_field_frame_transcribed(x: &EulerAngles, _version: Transcription) -> Result<FrameMatrix> {
    check_interior(x)?;
    Ok(FrameMatrix {
        entries: left_entries(x),
        chirality: Chirality::Left,
        point: *x,
        condition: None,
    })
}

/// The published right vector fields at `x`, with `η = φ/√3`.
pub fn right_field_frame_closed(x: &EulerAngles) -> Result<FrameMatrix> {
    right_field_frame_transcribed(x, Transcription::Printed)
}

/// The right vector fields as printed or with the catalogued errata applied.
pub fn right_field_frame_transcribed(x: &EulerAngles, version: Transcription) -> Result<FrameMatrix> {
    check_interior(x)?;
    Ok(FrameMatrix {
        entries: right_entries(x, version),
        chirality: Chirality::Right,
        point: *x,
        condition: None,
    })
}
