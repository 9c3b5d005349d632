//! Left and right invariant one-forms, dual to the vector-field frames.
//!
//! Duality is taken against the real frame `X = −i·Λ`: the coframe is
//! `b = (Xᵀ)⁻¹`, so `b·Xᵀ = I₈`. Rows are forms, columns the differentials
//! `(dα, dβ, dγ, dθ, da, db, dc, dφ)`.

pub mod closed;

use serde::Serialize;

use crate::error::Result;
use crate::euler::{compose_matrix, partials_matrix, EulerAngles};
use crate::gellmann::expand_unchecked;
use crate::linalg::{invert_checked, Matrix8, I};
use crate::tangent_frames::{check_interior, field_frame, Chirality};

pub use closed::{left_coframe_closed, left_coframe_transcribed, right_coframe_closed, right_coframe_transcribed};

#[derive(Debug, Clone, PartialEq)]
pub struct CoFrameMatrix {
    /// `entries[(l, k)]` is the `dxᵏ` coefficient of `ωˡ`.
    pub entries: Matrix8,
    pub chirality: Chirality,
    pub point: EulerAngles,
}

impl CoFrameMatrix {
    /// `⟨ωˡ, Xᵢ⟩` for a real frame `X` (rows = fields).
    pub fn pairing(&self, real_frame: &Matrix8) -> Matrix8 {
        self.entries * real_frame.transpose()
    }

    /// Duality defect against a real frame.
    pub fn duality_defect(&self, real_frame: &Matrix8) -> f64 {
        crate::linalg::max_abs8(&(self.pairing(real_frame) - Matrix8::identity()))
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant()
    }
}

pub fn coframe(x: &EulerAngles, chirality: Chirality) -> Result<CoFrameMatrix> {
    let frame = field_frame(x, chirality)?;
    let (inv, _) = invert_checked(&frame.real_frame().transpose())?;
    Ok(CoFrameMatrix {
        entries: inv,
        chirality,
        point: *x,
    })
}

pub fn left_coframe(x: &EulerAngles) -> Result<CoFrameMatrix> {
    coframe(x, Chirality::Left)
}

pub fn right_coframe(x: &EulerAngles) -> Result<CoFrameMatrix> {
    coframe(x, Chirality::Right)
}

/// Components of the Maurer–Cartan forms on the basis `iλⱼ`.
///
/// `right_translated[(j, k)]` is the `dxᵏ` coefficient of the λⱼ component of
/// `D⁻¹dD`; `left_translated` is the same for `dD·D⁻¹`. These are the right and
/// left coframes respectively, computed directly from the derivatives.
#[derive(Debug, Clone, Serialize)]
pub struct MaurerCartanMatrix {
    pub right_translated: Matrix8,
    pub left_translated: Matrix8,
    /// Largest real part of a `−i`-normalized component before it was dropped.
    pub imaginary_residue: f64,
}

impl MaurerCartanMatrix {
    pub fn right_determinant(&self) -> f64 {
        self.right_translated.determinant()
    }

    pub fn left_determinant(&self) -> f64 {
        self.left_translated.determinant()
    }
}

pub fn maurer_cartan_matrix(x: &EulerAngles) -> Result<MaurerCartanMatrix> {
    check_interior(x)?;
    let d = compose_matrix(x);
    let d_inv = d.adjoint();
    let partials = partials_matrix(x);
    let mut right = Matrix8::zeros();
    let mut left = Matrix8::zeros();
    let mut residue: f64 = 0.0;
    for (k, dk) in partials.iter().enumerate() {
        let r = expand_unchecked(&(d_inv * dk));
        let l = expand_unchecked(&(dk * d_inv));
        for j in 0..8 {
            let (vr, vl) = (-I * r[j], -I * l[j]);
            residue = residue.max(vr.im.abs()).max(vl.im.abs());
            right[(j, k)] = vr.re;
            left[(j, k)] = vl.re;
        }
    }
    Ok(MaurerCartanMatrix {
        right_translated: right,
        left_translated: left,
        imaginary_residue: residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gellmann::SQRT3;
    use crate::linalg::max_abs8;

    fn generic() -> EulerAngles {
        EulerAngles::from_array([0.31, 0.52, 1.13, 0.71, 0.42, 0.93, 2.24, 1.37])
    }

    #[test]
    fn left_coframe_rows() {
        let x = generic();
        let w = left_coframe(&x).unwrap();
        assert!((w.entries[(2, 0)] - 1.0).abs() < 1e-12);
        let frame = field_frame(&x, Chirality::Left).unwrap();
        assert!(w.duality_defect(&frame.real_frame()) < 1e-9);
    }

    #[test]
    fn left_row_eight_at_fixed_point() {
        let th = std::f64::consts::PI / 3.0;
        let b = std::f64::consts::PI / 5.0;
        let x = EulerAngles::from_array([0.4, 0.7, 1.1, th, 0.5, b, 0.9, 0.3]);
        let w = left_coframe(&x).unwrap();
        let s2 = th.sin().powi(2);
        let want = [
            0.0,
            0.0,
            0.0,
            0.0,
            -SQRT3 / 2.0 * s2,
            0.0,
            -SQRT3 / 2.0 * (2.0 * b).cos() * s2,
            1.0 - 1.5 * s2,
        ];
        for k in 0..8 {
            assert!((w.entries[(7, k)] - want[k]).abs() < 1e-12, "column {k}");
        }
    }

    #[test]
    fn right_coframe_rows() {
        let x = generic();
        let w = right_coframe(&x).unwrap();
        assert!((w.entries[(2, 6)] - 1.0).abs() < 1e-12);
        assert!((w.entries[(7, 7)] - 1.0).abs() < 1e-12);
        let s2 = x.theta.sin().powi(2);
        assert!((w.entries[(7, 0)] + SQRT3 / 2.0 * (2.0 * x.beta).cos() * s2).abs() < 1e-12);
    }

    #[test]
    fn coframes_equal_maurer_cartan_components() {
        let x = generic();
        let mc = maurer_cartan_matrix(&x).unwrap();
        assert!(mc.imaginary_residue < 1e-12);
        assert!(max_abs8(&(left_coframe(&x).unwrap().entries - mc.left_translated)) < 1e-10);
        assert!(max_abs8(&(right_coframe(&x).unwrap().entries - mc.right_translated)) < 1e-10);
    }
}
