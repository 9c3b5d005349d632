//! The group layer: closed-form one-parameter factors, the eight-factor product,
//! and its inverse.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::Mul;

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gellmann::{basis, GellMannIndex, SQRT3};
use crate::haar::AngleRanges;
use crate::linalg::{det3, frobenius, re, Complex, Matrix3c, I, ONE, ZERO};

/// Tolerance on `‖U†U − I‖_F` and `|det U − 1|` for membership in SU(3).
pub const GROUP_TOLERANCE: f64 = 1e-12;

/// Required `‖compose(decompose(U)) − U‖_F`.
pub const DECOMPOSE_TOLERANCE: f64 = 1e-9;

/// Coordinate names in chart order.
pub const COORDINATE_NAMES: [&str; 8] = ["alpha", "beta", "gamma", "theta", "a", "b", "c", "phi"];

/// Generator multiplying each factor of the product, by chart position.
pub const FACTOR_GENERATORS: [Generator; 8] = [
    Generator::L3,
    Generator::L2,
    Generator::L3,
    Generator::L5,
    Generator::L3,
    Generator::L2,
    Generator::L3,
    Generator::L8,
];

/// The eight coordinates of the product, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub const ZERO: EulerAngles = EulerAngles::from_array([0.0; 8]);

    pub const fn from_array(x: [f64; 8]) -> Self {
        EulerAngles {
            alpha: x[0],
            beta: x[1],
            gamma: x[2],
            theta: x[3],
            a: x[4],
            b: x[5],
            c: x[6],
            phi: x[7],
        }
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.alpha, self.beta, self.gamma, self.theta, self.a, self.b, self.c, self.phi,
        ]
    }

    /// `η = φ/√3`, the phase rate of the λ₈ factor.
    pub fn eta(&self) -> f64 {
        self.phi / SQRT3
    }

    pub fn with(&self, k: usize, value: f64) -> Self {
        let mut x = self.to_array();
        x[k] = value;
        EulerAngles::from_array(x)
    }

    pub fn shifted(&self, k: usize, by: f64) -> Self {
        let mut x = self.to_array();
        x[k] += by;
        EulerAngles::from_array(x)
    }

    pub fn check_finite(&self) -> Result<()> {
        for (v, name) in self.to_array().iter().zip(COORDINATE_NAMES) {
            if !v.is_finite() {
                return Err(Error::NonFiniteAngle(name));
            }
        }
        Ok(())
    }

    pub fn is_canonical(&self) -> bool {
        AngleRanges::covering().contains(self)
    }
}

impl fmt::Display for EulerAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(α={:.6}, β={:.6}, γ={:.6}, θ={:.6}, a={:.6}, b={:.6}, c={:.6}, φ={:.6})",
            self.alpha, self.beta, self.gamma, self.theta, self.a, self.b, self.c, self.phi
        )
    }
}

/// A 3×3 special unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement(Matrix3c);

impl GroupElement {
    pub fn new(m: Matrix3c) -> Result<Self> {
        let unitarity = frobenius(&(m.adjoint() * m - Matrix3c::identity()));
        let determinant = (det3(&m) - ONE).norm();
        if !(unitarity <= GROUP_TOLERANCE && determinant <= GROUP_TOLERANCE) {
            return Err(Error::NotSpecialUnitary { unitarity, determinant });
        }
        Ok(GroupElement(m))
    }

    /// Wraps a matrix known to be special unitary by construction.
    pub(crate) fn new_unchecked(m: Matrix3c) -> Self {
        GroupElement(m)
    }

    pub fn identity() -> Self {
        GroupElement(Matrix3c::identity())
    }

    pub fn matrix(&self) -> &Matrix3c {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        GroupElement(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex {
        crate::linalg::trace(&self.0)
    }

    pub fn distance(&self, other: &GroupElement) -> f64 {
        frobenius(&(self.0 - other.0))
    }

    pub fn unitarity_defect(&self) -> f64 {
        frobenius(&(self.0.adjoint() * self.0 - Matrix3c::identity()))
    }

    pub fn determinant_defect(&self) -> f64 {
        (det3(&self.0) - ONE).norm()
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        GroupElement(self.0 * rhs.0)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(self.0 * rhs.0)
    }
}

/// Generators that appear in the product and have closed-form exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    L2,
    L3,
    L5,
    L8,
}

impl Generator {
    pub fn from_index(i: GellMannIndex) -> Result<Self> {
        match i.get() {
            2 => Ok(Generator::L2),
            3 => Ok(Generator::L3),
            5 => Ok(Generator::L5),
            8 => Ok(Generator::L8),
            other => Err(Error::UnsupportedGenerator(other)),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Generator::L2 => 2,
            Generator::L3 => 3,
            Generator::L5 => 5,
            Generator::L8 => 8,
        }
    }

    pub fn matrix(self) -> &'static Matrix3c {
        &basis()[self.index() - 1]
    }

    /// `exp(i·λ·t)` in closed form.
    pub fn exp(self, t: f64) -> Matrix3c {
        let (s, co) = t.sin_cos();
        let z = ZERO;
        match self {
            Generator::L3 => {
                let e = Complex::cis(t);
                Matrix3c::new(e, z, z, z, e.conj(), z, z, z, ONE)
            }
            Generator::L8 => {
                let e = Complex::cis(t / SQRT3);
                Matrix3c::new(e, z, z, z, e, z, z, z, Complex::cis(-2.0 * t / SQRT3))
            }
            Generator::L2 => Matrix3c::new(re(co), re(s), z, re(-s), re(co), z, z, z, ONE),
            Generator::L5 => Matrix3c::new(re(co), z, re(s), z, ONE, z, re(-s), z, re(co)),
        }
    }
}

pub fn factor_exponential(generator: GellMannIndex, t: f64) -> Result<GroupElement> {
    Ok(GroupElement(Generator::from_index(generator)?.exp(t)))
}

/// The eight factors of the product at `x`, in order.
pub(crate) fn factors(x: &EulerAngles) -> [Matrix3c; 8] {
    let v = x.to_array();
    std::array::from_fn(|k| FACTOR_GENERATORS[k].exp(v[k]))
}

pub(crate) fn compose_matrix(x: &EulerAngles) -> Matrix3c {
    factors(x).iter().fold(Matrix3c::identity(), |acc, f| acc * f)
}

pub fn compose(x: &EulerAngles) -> Result<GroupElement> {
    x.check_finite()?;
    Ok(GroupElement(compose_matrix(x)))
}

/// Exact `∂D/∂xₖ`: the k-th factor is replaced by `iλ·exp(iλxₖ)`.
pub(crate) fn partials_matrix(x: &EulerAngles) -> [Matrix3c; 8] {
    let f = factors(x);
    let mut prefix = [Matrix3c::identity(); 9];
    for k in 0..8 {
        prefix[k + 1] = prefix[k] * f[k];
    }
    let mut suffix = [Matrix3c::identity(); 9];
    for k in (0..8).rev() {
        suffix[k] = f[k] * suffix[k + 1];
    }
    std::array::from_fn(|k| prefix[k] * (FACTOR_GENERATORS[k].matrix() * I) * suffix[k])
}

/// `D⁽²⁾(α,β,γ) = e^{iλ₃α} e^{iλ₂β} e^{iλ₃γ}` embedded in the upper-left block.
pub fn su2_subelement(alpha: f64, beta: f64, gamma: f64) -> GroupElement {
    GroupElement(Generator::L3.exp(alpha) * Generator::L2.exp(beta) * Generator::L3.exp(gamma))
}

/// Below this magnitude a column component is treated as exactly zero and the
/// corresponding angle set by tie-break.
const DEGENERATE: f64 = 1e-13;

/// Euler angles `(α, β, γ)` of the SU(2) block whose first column is `(u11, u21)`,
/// with `α ∈ [0,π)`, `β ∈ [0,π/2]`, `γ ∈ [0,2π)`. When β sits on a boundary
/// the free combination is put into γ and α is zero.
fn su2_angles(u11: Complex, u21: Complex) -> (f64, f64, f64) {
    let (m11, m21) = (u11.norm(), u21.norm());
    let beta = m21.atan2(m11);
    let (sum, diff) = if m21 <= DEGENERATE {
        let s = u11.arg();
        (s, s)
    } else if m11 <= DEGENERATE {
        let d = (-u21).arg();
        (-d, d)
    } else {
        (u11.arg(), (-u21).arg())
    };
    fold_pair((sum - diff) / 2.0, beta, (sum + diff) / 2.0)
}

/// Moves `α` into `[0,π)` by the exact identity `(α,γ) ~ (α+π, γ+π)`, then `γ` mod 2π.
fn fold_pair(alpha: f64, beta: f64, gamma: f64) -> (f64, f64, f64) {
    let k = (alpha / PI).floor();
    let (mut alpha, mut gamma) = (alpha - k * PI, gamma - k * PI);
    if alpha >= PI {
        alpha -= PI;
        gamma -= PI;
    }
    if alpha < 0.0 {
        alpha = 0.0;
    }
    (alpha, beta, crate::linalg::wrap(gamma, 2.0 * PI))
}

/// Period of `e^{iλ₈φ}` modulo the central element `diag(-1,-1,1) = e^{iλ₃π}`.
pub const PHI_PERIOD: f64 = SQRT3 * PI;

/// Inverse of [`compose`]: canonical angles with `‖compose(x) − U‖_F ≤ 1e-9`.
///
/// Column 3 of `U` fixes `θ`, the phase of the λ₈ factor and the first SU(2) block;
/// the second block is then read off `E₅(θ)ᵀ A† U E₈(φ)†`. A damped Gauss-Newton
/// polish on the eight angles follows.
pub fn decompose(u: &GroupElement) -> Result<EulerAngles> {
    GroupElement::new(*u.matrix())?;
    let m = u.matrix();
    let x0 = analytic_angles(m);
    let x = polish(x0, m);
    let residual = frobenius(&(compose_matrix(&x) - m));
    if residual > DECOMPOSE_TOLERANCE {
        return Err(Error::NonConvergent {
            residual,
            tolerance: DECOMPOSE_TOLERANCE,
        });
    }
    Ok(x)
}

fn analytic_angles(m: &Matrix3c) -> EulerAngles {
    let u33 = m[(2, 2)];
    let col = (m[(0, 2)], m[(1, 2)]);
    let sin_theta = (col.0.norm_sqr() + col.1.norm_sqr()).sqrt();
    let cos_theta = u33.norm();

    // U33 = cos θ · e^{-2iφ/√3}; at θ = π/2 the phase moves into the blocks and φ = 0.
    let phi = if cos_theta <= DEGENERATE {
        0.0
    } else {
        crate::linalg::wrap(-0.5 * SQRT3 * u33.arg(), PHI_PERIOD)
    };
    let e8_inv = Generator::L8.exp(-phi);

    if sin_theta <= DEGENERATE {
        // θ = 0: both SU(2) blocks merge; fold everything into the first.
        let block = m * e8_inv;
        let (alpha, beta, gamma) = su2_angles(block[(0, 0)], block[(1, 0)]);
        return EulerAngles {
            alpha,
            beta,
            gamma,
            phi,
            ..EulerAngles::ZERO
        };
    }
    let theta = sin_theta.atan2(cos_theta);

    // U e₃ = e^{-2iφ/√3} A (sin θ, 0, cos θ)ᵀ
    let p2 = Complex::cis(2.0 * phi / SQRT3);
    let (alpha, beta, gamma) = su2_angles(col.0 * p2 / sin_theta, col.1 * p2 / sin_theta);
    let a_block = su2_subelement(alpha, beta, gamma).0;
    let rest = Generator::L5.exp(-theta) * a_block.adjoint() * m * e8_inv;
    let (n11, n21) = (rest[(0, 0)], rest[(1, 0)]);
    let norm = (n11.norm_sqr() + n21.norm_sqr()).sqrt();
    let (a, b, c) = su2_angles(n11 / norm, n21 / norm);
    EulerAngles {
        alpha,
        beta,
        gamma,
        theta,
        a,
        b,
        c,
        phi,
    }
}

fn residual_vector(x: &EulerAngles, target: &Matrix3c) -> SVector<f64, 18> {
    let d = compose_matrix(x) - target;
    SVector::<f64, 18>::from_fn(|r, _| {
        let z = d[(r / 2 / 3, (r / 2) % 3)];
        if r % 2 == 0 {
            z.re
        } else {
            z.im
        }
    })
}

fn polish(x0: EulerAngles, target: &Matrix3c) -> EulerAngles {
    gauss_newton(x0, target, 4, normalize_ranges)
}

/// Damped Gauss–Newton on `compose(x) = target`, accepting only improving steps.
fn gauss_newton(
    x0: EulerAngles,
    target: &Matrix3c,
    iterations: usize,
    project: impl Fn(EulerAngles) -> EulerAngles,
) -> EulerAngles {
    let mut x = x0;
    let mut r = residual_vector(&x, target);
    let mut norm = r.norm();
    for _ in 0..iterations {
        if norm <= 1e-14 {
            break;
        }
        let partials = partials_matrix(&x);
        let jac = SMatrix::<f64, 18, 8>::from_fn(|row, k| {
            let z = partials[k][(row / 2 / 3, (row / 2) % 3)];
            if row % 2 == 0 {
                z.re
            } else {
                z.im
            }
        });
        let jtj = jac.transpose() * jac;
        let damping = 1e-10 * (jtj.trace() / 8.0).max(1.0);
        let lhs = jtj + SMatrix::<f64, 8, 8>::identity() * damping;
        let Some(step) = lhs.cholesky().map(|ch| ch.solve(&(-(jac.transpose() * r)))) else {
            break;
        };
        let mut trial = x.to_array();
        for (t, s) in trial.iter_mut().zip(step.iter()) {
            *t += s;
        }
        let candidate = project(EulerAngles::from_array(trial));
        let r_new = residual_vector(&candidate, target);
        if r_new.norm() < norm {
            x = candidate;
            r = r_new;
            norm = r.norm();
        } else {
            break;
        }
    }
    x
}

/// Angles of `u` in the chart continuous around `guess`, without range folding.
///
/// Intended for points near a known decomposition, e.g. finite-difference
/// neighbours, where the canonical ranges would introduce jumps.
pub fn decompose_near(u: &GroupElement, guess: &EulerAngles) -> Result<EulerAngles> {
    guess.check_finite()?;
    let x = gauss_newton(*guess, u.matrix(), 8, |x| x);
    let residual = (compose_matrix(&x) - u.matrix()).norm();
    if residual > DECOMPOSE_TOLERANCE {
        return Err(Error::NonConvergent {
            residual,
            tolerance: DECOMPOSE_TOLERANCE,
        });
    }
    Ok(x)
}

/// Brings angles that drifted slightly out of range back using exact identities
/// where one exists, otherwise by clamping the closed ranges.
fn normalize_ranges(x: EulerAngles) -> EulerAngles {
    let (alpha, beta, gamma) = fold_pair(x.alpha, x.beta.clamp(0.0, FRAC_PI_2), x.gamma);
    let (a, b, mut c) = fold_pair(x.a, x.b.clamp(0.0, FRAC_PI_2), x.c);
    let mut phi = x.phi;
    // e^{iλ₈(φ+√3π)} = e^{iλ₈φ}·e^{iλ₃π}
    while phi < 0.0 {
        phi += PHI_PERIOD;
        c += PI;
    }
    while phi >= PHI_PERIOD {
        phi -= PHI_PERIOD;
        c -= PI;
    }
    EulerAngles {
        alpha,
        beta,
        gamma,
        theta: x.theta.clamp(0.0, FRAC_PI_2),
        a,
        b,
        c: crate::linalg::wrap(c, 2.0 * PI),
        phi,
    }
}

/// Representative of `x` in the canonical ranges with the same group element.
///
/// Exact lattice moves are tried first: 2π periods, `(α,γ) ~ (α+π,γ+π)`, the
/// β- and b-reflections through `e^{iλ₃π/2}`, the θ-reflection through
/// `e^{iλ₃π}`, and `(c,φ) ~ (c+π, φ+√3π)`. If those do not land in range the
/// result is `decompose(compose(x))`.
pub fn canonicalize(x: &EulerAngles) -> Result<EulerAngles> {
    x.check_finite()?;
    if x.is_canonical() {
        return Ok(*x);
    }
    let target = compose_matrix(x);
    if let Some(folded) = lattice_fold(x) {
        if folded.is_canonical() && frobenius(&(compose_matrix(&folded) - target)) <= 1e-12 {
            return Ok(folded);
        }
    }
    decompose(&GroupElement(target))
}

fn lattice_fold(x: &EulerAngles) -> Option<EulerAngles> {
    let tau = 2.0 * PI;
    let mut v = x.to_array();
    for k in 0..7 {
        v[k] = v[k].rem_euclid(tau);
    }
    v[7] = v[7].rem_euclid(2.0 * PHI_PERIOD);

    // reflect a λ₂ angle into [0, π/2]; `left`/`right` are the neighbouring λ₃ slots
    let fold_rotation = |v: &mut [f64; 8], mid: usize, left: usize, right: usize| {
        if v[mid] >= PI {
            // e^{iλ₂(t+π)} = e^{iλ₂t}·e^{iλ₃π}
            v[mid] -= PI;
            v[right] += PI;
        }
        if v[mid] > FRAC_PI_2 {
            // e^{iλ₂t} = e^{iλ₃π}·e^{iλ₃π/2} e^{iλ₂(π-t)} e^{-iλ₃π/2}
            v[mid] = PI - v[mid];
            v[left] += FRAC_PI_2;
            v[right] += PI - FRAC_PI_2;
        }
    };
    fold_rotation(&mut v, 1, 0, 2);
    fold_rotation(&mut v, 5, 4, 6);

    // θ in (π, 2π): e^{iλ₅θ} = e^{iλ₃π} e^{iλ₅(2π-θ)} e^{iλ₃π}
    if v[3] > PI {
        v[3] = 2.0 * PI - v[3];
        v[2] += PI;
        v[4] += PI;
    }
    if v[3] > FRAC_PI_2 {
        return None;
    }
    if v[7] >= PHI_PERIOD {
        v[7] -= PHI_PERIOD;
        v[6] += PI;
    }
    let y = EulerAngles::from_array(v);
    let (alpha, beta, gamma) = fold_pair(y.alpha, y.beta, y.gamma);
    let (a, b, c) = fold_pair(y.a, y.b, y.c);
    Some(EulerAngles {
        alpha,
        beta,
        gamma,
        a,
        b,
        c,
        ..y
    })
}
