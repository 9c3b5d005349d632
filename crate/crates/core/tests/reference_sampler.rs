//! Cross-check of the Euler-angle Haar sampler against an independent
//! reference: QR decomposition of a complex Gaussian matrix with the phases of
//! `R`'s diagonal removed, then projected onto unit determinant.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use su3_geometry::haar::sample;
use su3_geometry::linalg::{det3, Complex, Matrix3c};

const N: usize = 200_000;

fn reference_su3(rng: &mut ChaCha8Rng) -> Matrix3c {
    let z = Matrix3c::from_fn(|_, _| {
        let (re, im): (f64, f64) = (StandardNormal.sample(rng), StandardNormal.sample(rng));
        Complex::new(re, im)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..3 {
        let d = r[(j, j)];
        let phase = d / d.norm();
        for i in 0..3 {
            q[(i, j)] *= phase;
        }
    }
    let det = det3(&q);
    q * Complex::from_polar(1.0, -det.arg() / 3.0)
}

/// Test statistics with known SU(3) Haar averages.
fn statistics(u: &Matrix3c) -> [Complex; 5] {
    let t = u.trace();
    [
        Complex::new(u[(0, 0)].norm_sqr(), 0.0),
        Complex::new(u[(1, 2)].norm_sqr().powi(2), 0.0),
        Complex::new(t.norm_sqr(), 0.0),
        u[(0, 0)] * u[(1, 1)] * u[(2, 2)],
        u[(0, 1)] * u[(1, 0)].conj(),
    ]
}

/// `E|U₁₁|² = 1/3`, `E|U₂₃|⁴ = 1/6`, `E|tr U|² = 1`, `E[U₁₁U₂₂U₃₃] = 1/6`
/// (the six determinant terms share `E det U = 1`), `E[U₁₂ Ū₂₁] = 0`.
const TARGETS: [f64; 5] = [1.0 / 3.0, 1.0 / 6.0, 1.0, 1.0 / 6.0, 0.0];

fn mean_and_error(values: &[[Complex; 5]]) -> [(Complex, f64); 5] {
    let n = values.len() as f64;
    std::array::from_fn(|k| {
        let mean = values.iter().map(|v| v[k]).sum::<Complex>() / n;
        let var = values.iter().map(|v| (v[k] - mean).norm_sqr()).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    })
}

#[test]
fn reference_sampler_is_special_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let u = reference_su3(&mut rng);
        assert!((u.adjoint() * u - Matrix3c::identity()).norm() < 1e-12);
        assert!((det3(&u) - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn euler_sampler_matches_reference_and_analytic_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let reference: Vec<[Complex; 5]> = (0..N).map(|_| statistics(&reference_su3(&mut rng))).collect();
    let euler: Vec<[Complex; 5]> = sample(N, 11)
        .unwrap()
        .iter()
        .map(|s| statistics(s.element().matrix()))
        .collect();
    let (r, e) = (mean_and_error(&reference), mean_and_error(&euler));
    for k in 0..5 {
        let target = Complex::new(TARGETS[k], 0.0);
        assert!(
            (r[k].0 - target).norm() <= 4.0 * r[k].1,
            "reference statistic {k}: {:?}",
            r[k]
        );
        assert!(
            (e[k].0 - target).norm() <= 4.0 * e[k].1,
            "euler statistic {k}: {:?}",
            e[k]
        );
        let combined = (r[k].1.powi(2) + e[k].1.powi(2)).sqrt();
        assert!(
            (r[k].0 - e[k].0).norm() <= 4.0 * combined,
            "statistic {k}: {:?} vs {:?}",
            r[k],
            e[k]
        );
    }
}
