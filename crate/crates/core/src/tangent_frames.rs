//! Left and right invariant vector fields in Euler coordinates, and the adjoint map
//! that relates them.
//!
//! A frame is an 8×8 matrix `a` with rows indexed by the field and columns by the
//! coordinate, `Λᵢ = Σₖ aᵢₖ ∂ₖ`. Left fields satisfy `Λᵢ D = −λᵢ D` and right
//! fields `Λᵢʳ D = −D λᵢ`. They are built from the exact derivatives of the
//! product: with `(∂ₖD)D⁻¹ = i Σⱼ cₖⱼ λⱼ` the left frame is `a = i c⁻¹`, and the
//! same with `D⁻¹(∂ₖD)` on the right.

pub mod closed;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{compose_matrix, partials_matrix, EulerAngles, GroupElement};
use crate::gellmann::{basis, structure_constants};
use crate::linalg::{frobenius, invert_checked, max_abs8, trace_product, Complex, Matrix3c, Matrix8, Matrix8c, I};

/// Smallest admissible `|sin 2β|`, `|sin 2b|`, `|sin 2θ|`, `|sin θ|`.
pub const SINGULAR_THRESHOLD: f64 = 1e-8;

/// Required residual of the defining relations.
pub const DEFINING_RELATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

impl std::fmt::Display for Chirality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Chirality::Left => "left",
            Chirality::Right => "right",
        })
    }
}

impl std::str::FromStr for Chirality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Chirality::Left),
            "right" => Ok(Chirality::Right),
            other => Err(Error::Parse(format!("unknown chirality `{other}`"))),
        }
    }
}

/// Rejects points where one of the chart denominators vanishes.
pub fn check_interior(x: &EulerAngles) -> Result<()> {
    x.check_finite()?;
    let factors = [
        ("sin2β", (2.0 * x.beta).sin()),
        ("sin2b", (2.0 * x.b).sin()),
        ("sin2θ", (2.0 * x.theta).sin()),
        ("sinθ", x.theta.sin()),
    ];
    for (factor, value) in factors {
        if value.abs() < SINGULAR_THRESHOLD {
            return Err(Error::SingularChart {
                factor,
                value,
                threshold: SINGULAR_THRESHOLD,
            });
        }
    }
    Ok(())
}

/// Exact `∂D/∂xₖ` for the eight coordinates.
pub fn partial_derivatives(x: &EulerAngles) -> [Matrix3c; 8] {
    partials_matrix(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaurerCartanCoefficients {
    /// `c[(k, j)]`: coordinate `k`, generator `j`.
    pub c: Matrix8,
    pub chirality: Chirality,
    /// Largest imaginary part discarded when taking the real coefficients.
    pub imaginary_residue: f64,
}

/// Components of `(∂ₖD)D⁻¹` (left) or `D⁻¹(∂ₖD)` (right) on `iλⱼ`.
pub fn maurer_cartan_coefficients(x: &EulerAngles, chirality: Chirality) -> MaurerCartanCoefficients {
    let d = compose_matrix(x);
    let d_inv = d.adjoint();
    let partials = partials_matrix(x);
    let mut c = Matrix8::zeros();
    let mut residue: f64 = 0.0;
    for (k, dk) in partials.iter().enumerate() {
        let g = match chirality {
            Chirality::Left => dk * d_inv,
            Chirality::Right => d_inv * dk,
        };
        for (j, l) in basis().iter().enumerate() {
            let v = -I * 0.5 * trace_product(&g, l);
            residue = residue.max(v.im.abs());
            c[(k, j)] = v.re;
        }
    }
    MaurerCartanCoefficients {
        c,
        chirality,
        imaginary_residue: residue,
    }
}

/// Vector-field coefficients at a point: `Λᵢ = Σₖ entries[(i,k)] ∂ₖ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameMatrix {
    pub entries: Matrix8c,
    pub chirality: Chirality,
    pub point: EulerAngles,
    /// 1-norm condition estimate of the inverted coefficient matrix, when constructed.
    pub condition: Option<f64>,
}

impl FrameMatrix {
    /// The real frame `−i·a`, whose rows pair with the real coframes.
    pub fn real_frame(&self) -> Matrix8 {
        self.entries.map(|z| (-I * z).re)
    }

    /// Largest real part of an entry; the fields carry an overall factor `i`.
    pub fn max_real_part(&self) -> f64 {
        crate::linalg::max_real8c(&self.entries)
    }

    /// Applies field `i` to a matrix-valued function with partials `partials`.
    pub fn apply(&self, i: usize, partials: &[Matrix3c; 8]) -> Matrix3c {
        (0..8).fold(Matrix3c::zeros(), |acc, k| acc + partials[k] * self.entries[(i, k)])
    }

    /// Frobenius residuals of `Λᵢ D + λᵢ D` (left) or `Λᵢʳ D + D λᵢ` (right), per row.
    pub fn defining_relation_residuals(&self) -> [f64; 8] {
        let d = compose_matrix(&self.point);
        let partials = partials_matrix(&self.point);
        std::array::from_fn(|i| {
            let lhs = self.apply(i, &partials);
            let action = match self.chirality {
                Chirality::Left => basis()[i] * d,
                Chirality::Right => d * basis()[i],
            };
            frobenius(&(lhs + action))
        })
    }
}

pub fn field_frame(x: &EulerAngles, chirality: Chirality) -> Result<FrameMatrix> {
    check_interior(x)?;
    let mc = maurer_cartan_coefficients(x, chirality);
    let (inv, cond) = invert_checked(&mc.c)?;
    Ok(FrameMatrix {
        entries: inv.map(|v| I * v),
        chirality,
        point: *x,
        condition: Some(cond),
    })
}

pub fn left_field_frame(x: &EulerAngles) -> Result<FrameMatrix> {
    field_frame(x, Chirality::Left)
}

pub fn right_field_frame(x: &EulerAngles) -> Result<FrameMatrix> {
    field_frame(x, Chirality::Right)
}

pub use closed::{
    left_field_frame_closed, left_field_frame_transcribed, right_field_frame_closed, right_field_frame_transcribed,
};

/// `R(U)ᵢⱼ = ½ tr(λᵢ U λⱼ U†)`, the matrix of `X ↦ U X U†` on the Gell-Mann basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointMatrix {
    pub r: Matrix8,
    pub element: GroupElement,
}

impl AdjointMatrix {
    pub fn orthogonality_defect(&self) -> f64 {
        max_abs8(&(self.r * self.r.transpose() - Matrix8::identity()))
    }

    pub fn determinant(&self) -> f64 {
        self.r.determinant()
    }
}

pub fn adjoint_matrix(u: &GroupElement) -> Result<AdjointMatrix> {
    let u = GroupElement::new(*u.matrix())?;
    let m = u.matrix();
    let m_inv = m.adjoint();
    let mut r = Matrix8::zeros();
    for j in 0..8 {
        let conj = m * basis()[j] * m_inv;
        for i in 0..8 {
            let v = trace_product(&basis()[i], &conj) * 0.5;
            debug_assert!(v.im.abs() < 1e-12);
            r[(i, j)] = v.re;
        }
    }
    Ok(AdjointMatrix { r, element: u })
}

/// Largest entry of `Λʳ − R(D)ᵀ Λ` at `x`.
///
/// `D λᵢ D⁻¹ = Σⱼ R(D)ⱼᵢ λⱼ`, so the right field `i` is the combination of left
/// fields with the i-th column of `R(D)`.
pub fn adjoint_relation_residual(x: &EulerAngles) -> Result<f64> {
    let left = left_field_frame(x)?;
    let right = right_field_frame(x)?;
    let r = adjoint_matrix(&GroupElement::new(compose_matrix(x))?)?.r;
    let predicted = r.transpose().map(|v| Complex::new(v, 0.0)) * left.entries;
    Ok(crate::linalg::max_abs8c(&(right.entries - predicted)))
}

/// Finite-difference check of the frame commutators on the entries of `D`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CommutatorResiduals {
    /// `[Λᵢ,Λⱼ] − Σₖ Cᵏᵢⱼ Λₖ`
    pub left: f64,
    /// `[Λᵢʳ,Λⱼʳ] + Σₖ Cᵏᵢⱼ Λₖʳ`
    pub right: f64,
    /// `[Λᵢ,Λⱼʳ]`
    pub cross: f64,
}

/// Nested directional derivatives: the inner field is applied exactly at
/// `x ± h eₖ` and the outer one by central differences of step `h`.
pub fn frame_commutator_residuals(x: &EulerAngles, h: f64) -> Result<CommutatorResiduals> {
    let frames = [left_field_frame(x)?, right_field_frame(x)?];
    // inner[chirality][k][sign][field]: Λ_field D evaluated at x + sign·h eₖ
    let mut inner = vec![[[[Matrix3c::zeros(); 8]; 2]; 8]; 2];
    for (ci, chir) in [Chirality::Left, Chirality::Right].into_iter().enumerate() {
        for k in 0..8 {
            for (si, sign) in [1.0, -1.0].into_iter().enumerate() {
                let y = x.shifted(k, sign * h);
                let frame = field_frame(&y, chir)?;
                let partials = partials_matrix(&y);
                for f in 0..8 {
                    inner[ci][k][si][f] = frame.apply(f, &partials);
                }
            }
        }
    }
    // outer field `i` of chirality `co` applied to inner field `j` of chirality `cj`
    let nested = |co: usize, i: usize, cj: usize, j: usize| -> Matrix3c {
        (0..8).fold(Matrix3c::zeros(), |acc, k| {
            let diff = (inner[cj][k][0][j] - inner[cj][k][1][j]) / Complex::new(2.0 * h, 0.0);
            acc + diff * frames[co].entries[(i, k)]
        })
    };
    let partials = partials_matrix(x);
    let applied: [[Matrix3c; 8]; 2] = std::array::from_fn(|c| std::array::from_fn(|i| frames[c].apply(i, &partials)));
    let t = structure_constants();
    let (mut left, mut right, mut cross) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..8 {
        for j in 0..8 {
            for (c, sign) in [(0usize, 1.0), (1usize, -1.0)] {
                let comm = nested(c, i, c, j) - nested(c, j, c, i);
                let expected = (0..8).fold(Matrix3c::zeros(), |acc, k| acc + applied[c][k] * (t.at(k, i, j) * sign));
                let r = frobenius(&(comm - expected));
                if c == 0 {
                    left = left.max(r);
                } else {
                    right = right.max(r);
                }
            }
            let comm = nested(0, i, 1, j) - nested(1, j, 0, i);
            cross = cross.max(frobenius(&comm));
        }
    }
    Ok(CommutatorResiduals { left, right, cross })
}
