//! Euler-angle geometry of SU(3).
//!
//! Every element of SU(3) is written as the ordered product
//!
//! ```text
//! D(α,β,γ,θ,a,b,c,φ) = e^{iλ₃α} e^{iλ₂β} e^{iλ₃γ} e^{iλ₅θ} e^{iλ₃a} e^{iλ₂b} e^{iλ₃c} e^{iλ₈φ}
//! ```
//!
//! and the crate builds the geometry of the group in those coordinates:
//!
//! * [`gellmann`]: the Gell-Mann basis, commutators and structure constants.
//! * [`euler`]: closed-form factor exponentials, the product above, and its inverse.
//! * [`tangent_frames`]: left and right invariant vector fields and the adjoint map.
//! * [`invariant_forms`]: the dual one-form coframes.
//! * [`haar`]: the invariant measure, exact sampling, Monte Carlo and product quadrature.
//! * [`cli`]: the `su3-geom` command-line surface.
//!
//! Frames and coframes are computed constructively from exact derivatives of the
//! product. The long closed-form tables are transcribed in [`tangent_frames::closed`]
//! and [`invariant_forms::closed`] and compared against the construction by the
//! [`comparison`] machinery.
//!
//! [`verify`] runs every identity above as a numerical check with an explicit threshold.

// indexed loops mirror the component formulas
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod comparison;
pub mod error;
pub mod euler;
pub mod gellmann;
pub mod haar;
pub mod invariant_forms;
pub mod linalg;
pub mod tangent_frames;
pub mod verify;

pub use error::{Error, Result};
pub use euler::{compose, decompose, EulerAngles, GroupElement};
pub use gellmann::{AlgebraVector, GellMannIndex, StructureTensor};
pub use haar::{AngleRanges, IntegrationResult};
pub use invariant_forms::CoFrameMatrix;
pub use linalg::{Complex, Matrix3c, Matrix8, Matrix8c};
pub use tangent_frames::{Chirality, FrameMatrix};
