//! Term-by-term transcription of the published invariant-form tables.
//!
//! Every term is stored against the differential it is printed with, so the
//! comparison against the constructive coframes exposes labelling slips as
//! well as coefficient slips. [`Transcription::Corrected`] applies the errata
//! catalogued in [`crate::comparison::ERRATA`].

use crate::comparison::Transcription;
use crate::error::Result;
use crate::euler::EulerAngles;
use crate::gellmann::SQRT3;
use crate::linalg::Matrix8;
use crate::tangent_frames::{check_interior, Chirality};

use super::CoFrameMatrix;

const ALPHA: usize = 0;
const BETA: usize = 1;
const GAMMA: usize = 2;
const THETA: usize = 3;
const A: usize = 4;
const B: usize = 5;
const C: usize = 6;
const PHI: usize = 7;

fn assemble(rows: [Vec<(usize, f64)>; 8]) -> Matrix8 {
    let mut m = Matrix8::zeros();
    for (l, row) in rows.iter().enumerate() {
        for &(k, v) in row {
            m[(l, k)] += v;
        }
    }
    m
}

fn left_entries(x: &EulerAngles, version: Transcription) -> Matrix8 {
    let (al, be, ga, th, a, b) = (x.alpha, x.beta, x.gamma, x.theta, x.a, x.b);
    let (s2al, c2al) = (2.0 * al).sin_cos();
    let (s2be, c2be) = (2.0 * be).sin_cos();
    let (sbe, cbe) = be.sin_cos();
    let (sth, cth) = th.sin_cos();
    let s2th = (2.0 * th).sin();
    let sq = sth * sth;
    let h = 1.0 - 0.5 * sq;
    let (s2b, c2b) = (2.0 * b).sin_cos();
    let (sag, cag) = (2.0 * a + 2.0 * ga).sin_cos();
    let (spg, cpg) = (al + ga).sin_cos();
    let (smg, cmg) = (al - ga).sin_cos();
    let (sm, cm) = (2.0 * a - al + ga).sin_cos();
    let (sp, cp) = (2.0 * a + al + ga).sin_cos();
    let r3 = SQRT3 / 2.0;

    assemble([
        vec![
            (BETA, s2al),
            (GAMMA, -c2al * s2be),
            (A, -c2al * s2be * h),
            (B, cag * cth * s2al),
            (B, c2al * c2be * cth * sag),
            (C, -c2al * c2be * cag * cth * s2b),
            (C, cth * s2al * s2b * sag),
            (C, -c2al * c2b * s2be * h),
            (PHI, r3 * c2al * s2be * sq),
        ],
        vec![
            (BETA, c2al),
            (GAMMA, s2al * s2be),
            (A, s2al * s2be * h),
            (B, c2al * cag * cth),
            (B, -c2be * cth * s2al * sag),
            (C, c2be * cag * cth * s2al * s2b),
            (C, c2al * cth * s2b * sag),
            (C, c2b * s2al * s2be * h),
            (PHI, -r3 * s2al * s2be * sq),
        ],
        vec![
            (ALPHA, 1.0),
            (GAMMA, c2be),
            (A, c2be * h),
            (B, cth * s2be * sag),
            (C, -cag * cth * s2b * s2be),
            (C, c2b * c2be * h),
            // printed with an extra factor ½
            (
                PHI,
                -r3 * c2be * if version == Transcription::Corrected { 1.0 } else { 0.5 } * sq,
            ),
        ],
        vec![
            (THETA, cbe * spg),
            (A, -0.5 * cbe * cpg * s2th),
            (B, -sbe * sm * sth),
            (C, cm * s2b * sbe * sth),
            (C, -0.5 * c2b * cbe * cpg * s2th),
            (PHI, -r3 * cbe * cpg * s2th),
        ],
        vec![
            (THETA, cbe * cpg),
            (A, 0.5 * cbe * spg * s2th),
            (B, cm * sbe * sth),
            (C, s2b * sbe * sm * sth),
            (C, 0.5 * c2b * cbe * spg * s2th),
            (PHI, r3 * cbe * spg * s2th),
        ],
        vec![
            (THETA, sbe * smg),
            (B, -cbe * sp * sth),
            (A, 0.5 * cmg * sbe * s2th),
            (PHI, r3 * cmg * sbe * s2th),
            (C, cbe * cp * s2b * sth),
            (C, 0.5 * c2b * cmg * sbe * s2th),
        ],
        vec![
            (THETA, -cmg * sbe),
            (A, 0.5 * sbe * smg * s2th),
            (B, cbe * cp * sth),
            (C, cbe * s2b * sp * sth),
            (C, 0.5 * c2b * sbe * smg * s2th),
            (PHI, r3 * sbe * smg * s2th),
        ],
        vec![(A, -r3 * sq), (C, -r3 * c2b * sq), (PHI, 1.0 - 1.5 * sq)],
    ])
}

fn right_printed(x: &EulerAngles) -> Matrix8 {
    let (ga, th, a, b, c) = (x.gamma, x.theta, x.a, x.b, x.c);
    let eta = x.eta();
    let (s2be, c2be) = (2.0 * x.beta).sin_cos();
    let (sth, cth) = th.sin_cos();
    let s2th = (2.0 * th).sin();
    let sq = sth * sth;
    let h = 1.0 - 0.5 * sq;
    let (sb, cb) = b.sin_cos();
    let (s2b, c2b) = (2.0 * b).sin_cos();
    let (s2c, c2c) = (2.0 * c).sin_cos();
    let (sag, cag) = (2.0 * a + 2.0 * ga).sin_cos();
    let (s1, c1) = (a - c + 2.0 * ga - 3.0 * eta).sin_cos();
    let (s2, c2) = (a + c + 3.0 * eta).sin_cos();
    let (s3, c3) = (a + c + 2.0 * ga - 3.0 * eta).sin_cos();
    let (s4, c4) = (a - c + 3.0 * eta).sin_cos();
    let r3 = SQRT3 / 2.0;

    assemble([
        vec![
            (ALPHA, -c2b * c2c * cag * cth * s2be),
            (ALPHA, cth * s2be * s2c * sag),
            (ALPHA, -c2be * c2c * s2b * h),
            (BETA, -c2c * s2b * h),
            (GAMMA, cag * cth * s2c),
            (GAMMA, c2b * c2c * cth * sag),
            (THETA, -c2c * s2b * h),
            (B, s2c),
        ],
        vec![
            (ALPHA, c2b * cag * cth * s2be * s2c),
            (ALPHA, c2c * cth * s2be * sag),
            (ALPHA, c2be * s2b * s2c * h),
            (BETA, s2b * s2c * h),
            (GAMMA, c2c * cag * cth - c2b * cth * s2c * sag),
            (THETA, s2b * s2c * h),
            (B, c2c),
        ],
        vec![
            (ALPHA, -cag * cth * s2b * s2be),
            (ALPHA, c2b * c2be * h),
            (BETA, c2b * h),
            (GAMMA, cth * s2b * sag),
            (THETA, c2b * h),
            (C, 1.0),
        ],
        vec![
            (ALPHA, c1 * sb * s2be * sth),
            (ALPHA, -0.5 * cb * c2be * c2 * s2th),
            (BETA, -0.5 * cb * c2 * s2th),
            (GAMMA, -sb * sth * s1),
            (THETA, -0.5 * cb * c2 * s2th),
            (A, cb * s2),
        ],
        vec![
            (ALPHA, sb * s2be * sth * s1),
            (ALPHA, 0.5 * cb * c2be * s2th * s2),
            (BETA, 0.5 * cb * s2th * s2),
            (GAMMA, c1 * sb * sth),
            (THETA, 0.5 * cb * s2th * s2),
            (A, cb * c2),
        ],
        vec![
            (ALPHA, cb * c3 * s2be * sth),
            (ALPHA, 0.5 * c2be * c4 * sb * s2th),
            (BETA, 0.5 * c4 * sb * s2th),
            (GAMMA, cb * sth * s3),
            (THETA, 0.5 * c4 * sb * s2th),
            (A, -sb * s4),
        ],
        vec![
            (ALPHA, cb * s2be * sth * s3),
            (ALPHA, -0.5 * c2be * sb * s2th * s4),
            (BETA, -0.5 * sb * s2th * s4),
            (GAMMA, -cb * c3 * sth),
            (THETA, -0.5 * sb * s2th * s4),
            (A, -c4 * sb),
        ],
        vec![
            (ALPHA, -r3 * c2be * sq),
            (BETA, -r3 * sq),
            (THETA, -r3 * sq),
            (PHI, 1.0),
        ],
    ])
}

/// Rebuilds the right coframe from the printed one.
///
/// The printed rows carry the `dβ` coefficient under `dγ` and vice versa; the
/// terms printed with `dθ` repeat the `dβ`-labelled coefficient, while the true
/// `dθ` coefficient of rows four to seven is the term printed with `da`. In rows
/// one to three the true `da` coefficient is the `dθ`-labelled term without its
/// `(1 − ½sin²θ)` factor. Rows one, four and seven are printed with the opposite
/// overall sign, and in rows six and seven the `dγ`-labelled term has the wrong
/// sign relative to the rest of the form.
fn right_corrected(x: &EulerAngles) -> Matrix8 {
    let p = right_printed(x);
    let h = 1.0 - 0.5 * x.theta.sin().powi(2);
    let mut m = Matrix8::zeros();
    for r in 0..8 {
        let s = if matches!(r, 0 | 3 | 6) { -1.0 } else { 1.0 };
        m[(r, ALPHA)] = s * p[(r, ALPHA)];
        m[(r, BETA)] = if matches!(r, 5 | 6) {
            -s * p[(r, GAMMA)]
        } else {
            s * p[(r, GAMMA)]
        };
        m[(r, GAMMA)] = s * p[(r, BETA)];
        match r {
            0..=2 => m[(r, A)] = s * p[(r, THETA)] / h,
            3..=6 => m[(r, THETA)] = s * p[(r, A)],
            _ => {}
        }
        for k in [B, C, PHI] {
            m[(r, k)] = s * p[(r, k)];
        }
    }
    m
}

fn right_entries(x: &EulerAngles, version: Transcription) -> Matrix8 {
    match version {
        Transcription::Printed => right_printed(x),
        Transcription::Corrected => right_corrected(x),
    }
}

pub fn left_coframe_closed(x: &EulerAngles) -> Result<CoFrameMatrix> {
    left_coframe_transcribed(x, Transcription::Printed)
}

pub fn right_coframe_closed(x: &EulerAngles) -> Result<CoFrameMatrix> {
    right_coframe_transcribed(x, Transcription::Printed)
}

/// The left forms as printed or with the catalogued errata applied.
pub fn left_coframe_transcribed(x: &EulerAngles, version: Transcription) -> Result<CoFrameMatrix> {
    check_interior(x)?;
    Ok(CoFrameMatrix {
        entries: left_entries(x, version),
        chirality: Chirality::Left,
        point: *x,
    })
}

/// The right forms as printed or with the catalogued errata applied.
pub fn right_coframe_transcribed(x: &EulerAngles, version: Transcription) -> Result<CoFrameMatrix> {
    check_interior(x)?;
    Ok(CoFrameMatrix {
        entries: right_entries(x, version),
        chirality: Chirality::Right,
        point: *x,
    })
}
