//! Matrix aliases and the few dense-linear-algebra helpers the rest of the crate shares.

use nalgebra::{Matrix3, SMatrix};
pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

pub type Matrix3c = Matrix3<Complex>;
pub type Matrix8 = SMatrix<f64, 8, 8>;
pub type Matrix8c = SMatrix<Complex, 8, 8>;

pub const I: Complex = Complex::new(0.0, 1.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const ZERO: Complex = Complex::new(0.0, 0.0);

/// Refuse to invert coefficient matrices whose 1-norm condition estimate exceeds this.
pub const MAX_CONDITION: f64 = 1e12;

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

pub fn frobenius(m: &Matrix3c) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs3(m: &Matrix3c) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs8(m: &Matrix8) -> f64 {
    m.iter().map(|z| z.abs()).fold(0.0, f64::max)
}

pub fn max_abs8c(m: &Matrix8c) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_imag8c(m: &Matrix8c) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

pub fn max_real8c(m: &Matrix8c) -> f64 {
    m.iter().map(|z| z.re.abs()).fold(0.0, f64::max)
}

pub fn trace(m: &Matrix3c) -> Complex {
    m[(0, 0)] + m[(1, 1)] + m[(2, 2)]
}

pub fn det3(m: &Matrix3c) -> Complex {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// `tr(A B)` without forming the product.
pub fn trace_product(a: &Matrix3c, b: &Matrix3c) -> Complex {
    let mut s = ZERO;
    for i in 0..3 {
        for k in 0..3 {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

pub fn one_norm(m: &Matrix8) -> f64 {
    (0..8)
        .map(|j| m.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverse by partial-pivot LU, together with the 1-norm condition number `‖M‖₁‖M⁻¹‖₁`.
pub fn invert_checked(m: &Matrix8) -> Result<(Matrix8, f64)> {
    let inv = m.lu().try_inverse().ok_or(Error::IllConditioned(f64::INFINITY))?;
    let cond = one_norm(m) * one_norm(&inv);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::IllConditioned(cond));
    }
    Ok((inv, cond))
}

/// Wrap `x` into `[0, period)`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can round up to exactly `period`
    if r >= period {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_stays_half_open() {
        assert_eq!(wrap(-1e-300, 1.0), 0.0);
        assert!((wrap(7.5, 2.0) - 1.5).abs() < 1e-15);
        assert!((wrap(-0.5, 2.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn singular_inverse_is_refused() {
        let mut m = Matrix8::identity();
        m[(7, 7)] = 0.0;
        assert!(matches!(invert_checked(&m), Err(Error::IllConditioned(_))));
        let mut m = Matrix8::identity();
        m[(3, 3)] = 1e-14;
        assert!(matches!(invert_checked(&m), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn determinant_of_diagonal() {
        let m = Matrix3c::from_diagonal(&nalgebra::Vector3::new(c(0.0, 1.0), c(0.0, 1.0), re(-1.0)));
        assert!((det3(&m) - re(1.0)).norm() < 1e-15);
    }
}
