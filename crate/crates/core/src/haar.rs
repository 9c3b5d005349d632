//! The invariant measure in Euler coordinates.
//!
//! The density is `sin 2β · sin 2b · sin 2θ · sin²θ`. It separates into one-dimensional
//! factors, so the sampler draws each angle by its exact inverse CDF, and the
//! product quadrature weights are products of one-dimensional weights.
//!
//! Quadrature defaults to [`QuadratureRule::Torus`], which integrates the
//! periodic directions with an equal-weight rule over full periods.
//!
//! Two range sets exist. [`AngleRanges::printed`] is the published one
//! (`α,γ,a,c ∈ [0,π)`, `β,b,θ ∈ [0,π/2]`, `φ ∈ [0,2π)`). It does not cover the group
//! uniformly, so everything that samples or integrates uses
//! [`AngleRanges::covering`] instead (`α,a ∈ [0,π)`, `γ,c ∈ [0,2π)`,
//! `β,b,θ ∈ [0,π/2]`, `φ ∈ [0,√3π)`), which is a fundamental domain of the chart.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{compose_matrix, EulerAngles, GroupElement, PHI_PERIOD};
use crate::gellmann::SQRT3;
use crate::invariant_forms::coframe;
use crate::linalg::{Complex, ZERO};
use crate::tangent_frames::Chirality;

/// `6⁸` evaluations.
pub const QUADRATURE_NODE_CAP: u128 = 1_679_616;

/// Above this many nodes per dimension a warning is logged.
pub const QUADRATURE_WARN_NODES: usize = 8;

/// Samples per deterministic shard in Monte Carlo reductions.
const SHARD: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HaarDensity(pub f64);

pub fn density(x: &EulerAngles) -> HaarDensity {
    let s = x.theta.sin();
    HaarDensity((2.0 * x.beta).sin() * (2.0 * x.b).sin() * (2.0 * x.theta).sin() * s * s)
}

/// `|det|` of the coframe at an interior point: the top-degree wedge of the
/// eight invariant forms in coordinate components.
pub fn density_from_coframe(x: &EulerAngles, chirality: Chirality) -> Result<f64> {
    Ok(coframe(x, chirality)?.determinant().abs())
}

/// Spread of `density_from_coframe / density` over a point set.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityRatio {
    pub mean: f64,
    /// `(max − min) / mean`.
    pub relative_spread: f64,
    pub points: usize,
}

pub fn coframe_density_ratio(points: &[EulerAngles], chirality: Chirality) -> Result<DensityRatio> {
    if points.is_empty() {
        return Err(Error::InvalidCount(0));
    }
    let ratios = points
        .iter()
        .map(|x| Ok(density_from_coframe(x, chirality)? / density(x).0))
        .collect::<Result<Vec<f64>>>()?;
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &r| (l.min(r), h.max(r)));
    Ok(DensityRatio {
        mean,
        relative_spread: (hi - lo) / mean,
        points: ratios.len(),
    })
}

/// `[lo, hi)` or `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub closed: bool,
}

impl Interval {
    pub const fn half_open(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, closed: false }
    }

    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, closed: true }
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && (v < self.hi || (self.closed && v <= self.hi))
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Per-coordinate intervals in chart order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleRanges {
    pub intervals: [Interval; 8],
}

impl Default for AngleRanges {
    fn default() -> Self {
        AngleRanges::covering()
    }
}

impl AngleRanges {
    /// The published ranges.
    pub fn printed() -> Self {
        let p = Interval::half_open(0.0, PI);
        let q = Interval::closed(0.0, FRAC_PI_2);
        AngleRanges {
            intervals: [p, q, p, q, p, q, p, Interval::half_open(0.0, 2.0 * PI)],
        }
    }

    /// A fundamental domain: every element of SU(3) off a null set has exactly one
    /// preimage.
    pub fn covering() -> Self {
        let p = Interval::half_open(0.0, PI);
        let p2 = Interval::half_open(0.0, 2.0 * PI);
        let q = Interval::closed(0.0, FRAC_PI_2);
        AngleRanges {
            intervals: [p, q, p2, q, p, q, p2, Interval::half_open(0.0, PHI_PERIOD)],
        }
    }

    pub fn with_phi_length(mut self, length: f64) -> Self {
        self.intervals[7].hi = self.intervals[7].lo + length;
        self
    }

    pub fn contains(&self, x: &EulerAngles) -> bool {
        self.intervals.iter().zip(x.to_array()).all(|(iv, v)| iv.contains(v))
    }

    /// Closed-form `∫ density` over the box, as a product of one-dimensional integrals.
    pub fn analytic_volume(&self) -> f64 {
        self.intervals
            .iter()
            .enumerate()
            .map(|(k, iv)| factor_antiderivative(k, iv.hi) - factor_antiderivative(k, iv.lo))
            .product()
    }

    fn check_weighted_intervals(&self) -> Result<()> {
        for k in [1, 3, 5] {
            let iv = self.intervals[k];
            if !(iv.lo >= 0.0 && iv.hi <= FRAC_PI_2 && iv.lo < iv.hi) {
                return Err(Error::Parse(format!(
                    "interval for {} must lie in [0, π/2]",
                    crate::euler::COORDINATE_NAMES[k]
                )));
            }
        }
        Ok(())
    }
}

/// One-dimensional density factor of coordinate `k`.
pub fn density_factor(k: usize, t: f64) -> f64 {
    match k {
        1 | 5 => (2.0 * t).sin(),
        3 => {
            let s = t.sin();
            (2.0 * t).sin() * s * s
        }
        _ => 1.0,
    }
}

fn factor_antiderivative(k: usize, t: f64) -> f64 {
    match k {
        1 | 5 => -0.5 * (2.0 * t).cos(),
        3 => 0.5 * t.sin().powi(4),
        _ => t,
    }
}

/// Maps a uniform `u ∈ [0,1)` to coordinate `k` distributed by its density factor.
fn inverse_cdf(k: usize, iv: &Interval, u: f64) -> f64 {
    match k {
        1 | 5 => {
            // CDF ∝ sin²t
            let (s0, s1) = (iv.lo.sin().powi(2), iv.hi.sin().powi(2));
            (s0 + u * (s1 - s0)).sqrt().asin()
        }
        3 => {
            // CDF ∝ sin⁴t
            let (s0, s1) = (iv.lo.sin().powi(4), iv.hi.sin().powi(4));
            (s0 + u * (s1 - s0)).sqrt().sqrt().asin()
        }
        _ => iv.lo + u * iv.length(),
    }
}

/// A Haar-distributed point; the group element is computed on first use.
#[derive(Debug, Clone)]
pub struct HaarSample {
    pub angles: EulerAngles,
    element: OnceLock<GroupElement>,
}

impl HaarSample {
    pub fn new(angles: EulerAngles) -> Self {
        HaarSample {
            angles,
            element: OnceLock::new(),
        }
    }

    pub fn element(&self) -> &GroupElement {
        self.element
            .get_or_init(|| GroupElement::new_unchecked(compose_matrix(&self.angles)))
    }

    pub fn weight(&self) -> f64 {
        density(&self.angles).0
    }
}

/// Counter-based stream of Haar samples: sample `i` depends only on `(seed, i)`,
/// so any sharding of the index range reproduces the same values.
#[derive(Debug, Clone)]
pub struct HaarSampler {
    base: ChaCha8Rng,
    ranges: AngleRanges,
}

impl HaarSampler {
    pub fn new(seed: u64) -> Self {
        HaarSampler {
            base: ChaCha8Rng::seed_from_u64(seed),
            ranges: AngleRanges::covering(),
        }
    }

    pub fn with_ranges(seed: u64, ranges: AngleRanges) -> Result<Self> {
        ranges.check_weighted_intervals()?;
        Ok(HaarSampler {
            base: ChaCha8Rng::seed_from_u64(seed),
            ranges,
        })
    }

    pub fn angles(&self, index: u64) -> EulerAngles {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        rng.set_word_pos(0);
        let v: [f64; 8] = std::array::from_fn(|k| {
            let u: f64 = rng.random();
            inverse_cdf(k, &self.ranges.intervals[k], u)
        });
        EulerAngles::from_array(v)
    }

    pub fn sample(&self, index: u64) -> HaarSample {
        HaarSample::new(self.angles(index))
    }
}

pub fn sample(n: usize, seed: u64) -> Result<Vec<HaarSample>> {
    if n == 0 {
        return Err(Error::InvalidCount(n));
    }
    let sampler = HaarSampler::new(seed);
    Ok((0..n as u64).into_par_iter().map(|i| sampler.sample(i)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mc,
    Quad,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationResult {
    pub estimate: Complex,
    /// Sample standard deviation over `√n`; `None` for quadrature.
    pub std_error: Option<f64>,
    pub n: usize,
    pub method: Method,
}

/// Running mean and sum of squared deviations of a complex quantity.
#[derive(Debug, Clone, Copy)]
struct Moments {
    n: usize,
    mean: Complex,
    m2: f64,
}

impl Moments {
    const EMPTY: Moments = Moments {
        n: 0,
        mean: ZERO,
        m2: 0.0,
    };

    fn push(&mut self, v: Complex) {
        self.n += 1;
        let delta = v - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += (delta.conj() * (v - self.mean)).re;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * (other.n as f64 / n as f64);
        let m2 = self.m2 + other.m2 + delta.norm_sqr() * (self.n as f64 * other.n as f64 / n as f64);
        Moments { n, mean, m2 }
    }
}

/// Haar average of `f` over `n` samples, with its standard error.
pub fn integrate_mc<F>(f: F, n: usize, seed: u64) -> Result<IntegrationResult>
where
    F: Fn(&GroupElement) -> Complex + Sync,
{
    try_integrate_mc(|u| Ok::<_, std::convert::Infallible>(f(u)), n, seed)
}

/// As [`integrate_mc`] for integrands that can fail; the first failing sample
/// index is reported.
pub fn try_integrate_mc<F, E>(f: F, n: usize, seed: u64) -> Result<IntegrationResult>
where
    F: Fn(&GroupElement) -> std::result::Result<Complex, E> + Sync,
    E: std::fmt::Display,
{
    let [m] = integrate_mc_many(
        |u, out: &mut [Complex; 1]| {
            out[0] = f(u)?;
            Ok::<(), E>(())
        },
        n,
        seed,
    )?;
    Ok(m)
}

/// Several Haar averages over one shared sample stream.
pub fn integrate_mc_many<const K: usize, F, E>(f: F, n: usize, seed: u64) -> Result<[IntegrationResult; K]>
where
    F: Fn(&GroupElement, &mut [Complex; K]) -> std::result::Result<(), E> + Sync,
    E: std::fmt::Display,
{
    if n < 2 {
        return Err(Error::InvalidCount(n));
    }
    let sampler = HaarSampler::new(seed);
    let shards = n.div_ceil(SHARD);
    let partial: Vec<std::result::Result<[Moments; K], Error>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut acc = [Moments::EMPTY; K];
            let mut out = [ZERO; K];
            for i in s * SHARD..((s + 1) * SHARD).min(n) {
                let u = GroupElement::new_unchecked(compose_matrix(&sampler.angles(i as u64)));
                f(&u, &mut out).map_err(|e| Error::Integrand {
                    index: i,
                    message: e.to_string(),
                })?;
                for (a, v) in acc.iter_mut().zip(out.iter()) {
                    a.push(*v);
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = [Moments::EMPTY; K];
    for p in partial {
        let p = p?;
        for (t, m) in total.iter_mut().zip(p) {
            *t = t.merge(m);
        }
    }
    Ok(total.map(|m| IntegrationResult {
        estimate: m.mean,
        std_error: Some((m.m2 / (m.n as f64 - 1.0)).sqrt() / (m.n as f64).sqrt()),
        n: m.n,
        method: Method::Mc,
    }))
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on Pₙ
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes and density-weighted weights for coordinate `k` over `iv`.
fn weighted_rule(k: usize, iv: &Interval, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * iv.length();
    let mid = iv.lo + half;
    let nodes: Vec<f64> = x.iter().map(|t| mid + half * t).collect();
    let weights = nodes
        .iter()
        .zip(w.iter())
        .map(|(t, w)| w * half * density_factor(k, *t))
        .collect();
    (nodes, weights)
}

fn pairwise_sum<const K: usize>(v: &[([Complex; K], f64)]) -> ([Complex; K], f64) {
    match v.len() {
        0 => ([ZERO; K], 0.0),
        1 => v[0],
        n => {
            let (a, b) = v.split_at(n / 2);
            let (x, y) = (pairwise_sum(a), pairwise_sum(b));
            (std::array::from_fn(|k| x.0[k] + y.0[k]), x.1 + y.1)
        }
    }
}

/// Product rule used by [`integrate_quadrature_with`].
#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureRule {
    /// Gauss–Legendre in `β, b, θ` with the Haar weight, and the equal-weight
    /// periodic rule over full periods in `α, γ, a` and in the torus
    /// coordinates `u = c + φ/√3`, `v = φ/√3 − c`. The last two factors of the
    /// product depend on `(c, φ)` only through `diag(e^{iu}, e^{iv}, e^{−i(u+v)})`,
    /// so every periodic direction is integrated exactly for harmonics below
    /// the node count.
    Torus,
    /// Gauss–Legendre in every coordinate over the given ranges.
    GaussLegendre(AngleRanges),
}

impl QuadratureRule {
    fn rules(&self, n: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
        match self {
            QuadratureRule::Torus => (0..8)
                .map(|k| match k {
                    1 | 3 | 5 => {
                        let iv = Interval::closed(0.0, FRAC_PI_2);
                        weighted_rule(k, &iv, n)
                    }
                    _ => periodic_rule(n),
                })
                .collect(),
            QuadratureRule::GaussLegendre(ranges) => {
                (0..8).map(|k| weighted_rule(k, &ranges.intervals[k], n)).collect()
            }
        }
    }

    fn angles(&self, q: [f64; 8]) -> EulerAngles {
        match self {
            QuadratureRule::Torus => {
                let (u, v) = (q[6], q[7]);
                EulerAngles::from_array([q[0], q[1], q[2], q[3], q[4], q[5], 0.5 * (u - v), 0.5 * SQRT3 * (u + v)])
            }
            QuadratureRule::GaussLegendre(_) => EulerAngles::from_array(q),
        }
    }
}

/// Midpoint nodes on `[0, 2π)` with equal weights.
fn periodic_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 * PI / n as f64;
    ((0..n).map(|j| (j as f64 + 0.5) * h).collect(), vec![h; n])
}

/// Haar average of `f` by the [`QuadratureRule::Torus`] product rule,
/// normalized by the same rule applied to `f ≡ 1`.
pub fn integrate_quadrature<F>(f: F, nodes_per_dim: usize) -> Result<IntegrationResult>
where
    F: Fn(&EulerAngles) -> Complex + Sync,
{
    integrate_quadrature_with(f, nodes_per_dim, &QuadratureRule::Torus, QUADRATURE_NODE_CAP)
}

pub fn integrate_quadrature_with<F>(
    f: F,
    nodes_per_dim: usize,
    rule: &QuadratureRule,
    cap: u128,
) -> Result<IntegrationResult>
where
    F: Fn(&EulerAngles) -> Complex + Sync,
{
    let [r] = integrate_quadrature_many(|x, out: &mut [Complex; 1]| out[0] = f(x), nodes_per_dim, rule, cap)?;
    Ok(r)
}

/// Several Haar averages over one shared product grid.
pub fn integrate_quadrature_many<const K: usize, F>(
    f: F,
    nodes_per_dim: usize,
    rule: &QuadratureRule,
    cap: u128,
) -> Result<[IntegrationResult; K]>
where
    F: Fn(&EulerAngles, &mut [Complex; K]) + Sync,
{
    if nodes_per_dim < 2 {
        return Err(Error::InvalidCount(nodes_per_dim));
    }
    let total = (nodes_per_dim as u128).pow(8);
    if total > cap {
        return Err(Error::ResourceLimit { requested: total, cap });
    }
    if nodes_per_dim > QUADRATURE_WARN_NODES {
        log::warn!("{nodes_per_dim} nodes per dimension: {total} evaluations");
    }
    let n = nodes_per_dim;
    let rules = rule.rules(n);

    // one chunk per (α, β) node pair, each summed sequentially
    let chunks: Vec<([Complex; K], f64)> = (0..n * n)
        .into_par_iter()
        .map(|chunk| {
            let (i0, i1) = (chunk / n, chunk % n);
            let mut sum = [ZERO; K];
            let mut out = [ZERO; K];
            let mut norm = 0.0;
            let mut idx = [0usize; 6];
            loop {
                let mut x = [0.0; 8];
                let mut w = rules[0].1[i0] * rules[1].1[i1];
                x[0] = rules[0].0[i0];
                x[1] = rules[1].0[i1];
                for (d, &j) in idx.iter().enumerate() {
                    x[d + 2] = rules[d + 2].0[j];
                    w *= rules[d + 2].1[j];
                }
                f(&rule.angles(x), &mut out);
                for (s, v) in sum.iter_mut().zip(out.iter()) {
                    *s += v * w;
                }
                norm += w;
                // odometer over the remaining six coordinates
                let mut d = 5;
                loop {
                    idx[d] += 1;
                    if idx[d] < n {
                        break;
                    }
                    idx[d] = 0;
                    if d == 0 {
                        return (sum, norm);
                    }
                    d -= 1;
                }
            }
        })
        .collect();
    let (sum, norm) = pairwise_sum(&chunks);
    Ok(sum.map(|s| IntegrationResult {
        estimate: s / norm,
        std_error: None,
        n: total as usize,
        method: Method::Quad,
    }))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VolumeReport {
    pub analytic: f64,
    pub quadrature: f64,
    pub relative_difference: f64,
}

/// Unnormalized `∫ density` over `ranges`, analytically and by Gauss–Legendre.
///
/// The integrand is separable, so the eight-dimensional product rule equals the
/// product of the one-dimensional rules; 24 nodes per dimension.
pub fn group_volume(ranges: &AngleRanges) -> VolumeReport {
    let analytic = ranges.analytic_volume();
    let quadrature: f64 = (0..8)
        .map(|k| weighted_rule(k, &ranges.intervals[k], 24).1.iter().sum::<f64>())
        .product();
    VolumeReport {
        analytic,
        quadrature,
        relative_difference: ((quadrature - analytic) / analytic).abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Fundamental,
    Antifundamental,
    Adjoint,
}

impl std::str::FromStr for Representation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fundamental" | "3" => Ok(Representation::Fundamental),
            "antifundamental" | "3bar" => Ok(Representation::Antifundamental),
            "adjoint" | "8" => Ok(Representation::Adjoint),
            other => Err(Error::UnknownRepresentation(other.to_string())),
        }
    }
}

pub fn character(u: &GroupElement, rep: Representation) -> Complex {
    let t = u.trace();
    match rep {
        Representation::Fundamental => t,
        Representation::Antifundamental => t.conj(),
        Representation::Adjoint => Complex::new(t.norm_sqr() - 1.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coframe_density_is_proportional() {
        let pts = crate::comparison::interior_points(100, 5);
        let left = coframe_density_ratio(&pts, Chirality::Left).unwrap();
        let right = coframe_density_ratio(&pts, Chirality::Right).unwrap();
        assert!(left.relative_spread < 1e-8, "{left:?}");
        assert!(right.relative_spread < 1e-8, "{right:?}");
        assert!((left.mean - right.mean).abs() < 1e-8 * left.mean);
    }

    #[test]
    fn density_examples() {
        let q = std::f64::consts::FRAC_PI_4;
        let x = EulerAngles {
            beta: q,
            b: q,
            theta: q,
            ..EulerAngles::ZERO
        };
        assert!((density(&x).0 - 0.5).abs() < 1e-15);
        let x = EulerAngles {
            beta: 0.3,
            b: 0.9,
            ..EulerAngles::ZERO
        };
        assert_eq!(density(&x).0, 0.0);
        let x = EulerAngles {
            b: 0.9,
            theta: 0.4,
            ..EulerAngles::ZERO
        };
        assert_eq!(density(&x).0, 0.0);
    }

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        for n in 2..12 {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn volumes() {
        let pi5 = PI.powi(5);
        let v = group_volume(&AngleRanges::printed());
        assert!((v.analytic - pi5).abs() < 1e-10 * pi5);
        assert!(v.relative_difference < 1e-10);
        let v = group_volume(&AngleRanges::printed().with_phi_length(4.0 * PI));
        assert!((v.analytic - 2.0 * pi5).abs() < 1e-10 * pi5);
        let theta = factor_antiderivative(3, FRAC_PI_2) - factor_antiderivative(3, 0.0);
        assert!((theta - 0.5).abs() < 1e-15);
        let cov = group_volume(&AngleRanges::covering());
        assert!((cov.analytic - 2.0 * 3f64.sqrt() * pi5).abs() < 1e-9 * pi5);
    }

    #[test]
    fn sample_contract() {
        assert_eq!(sample(0, 1).unwrap_err(), Error::InvalidCount(0));
        let a = sample(50, 9).unwrap();
        let b = sample(50, 9).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(
                x.angles.to_array().map(f64::to_bits),
                y.angles.to_array().map(f64::to_bits)
            );
            assert!(AngleRanges::covering().contains(&x.angles));
        }
        let c = sample(50, 10).unwrap();
        assert_ne!(a[0].angles, c[0].angles);
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let vals: Vec<Complex> = (0..1000)
            .map(|i| Complex::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut seq = Moments::EMPTY;
        vals.iter().for_each(|v| seq.push(*v));
        let (mut a, mut b) = (Moments::EMPTY, Moments::EMPTY);
        vals[..371].iter().for_each(|v| a.push(*v));
        vals[371..].iter().for_each(|v| b.push(*v));
        let m = a.merge(b);
        assert!((m.mean - seq.mean).norm() < 1e-14);
        assert!((m.m2 - seq.m2).abs() < 1e-10);
    }

    #[test]
    fn quadrature_guards() {
        assert!(matches!(integrate_quadrature(|_| ZERO, 1), Err(Error::InvalidCount(1))));
        assert!(matches!(
            integrate_quadrature(|_| ZERO, 7),
            Err(Error::ResourceLimit { .. })
        ));
        for rule in [
            QuadratureRule::Torus,
            QuadratureRule::GaussLegendre(AngleRanges::covering()),
        ] {
            let one = integrate_quadrature_with(|_| Complex::new(1.0, 0.0), 3, &rule, QUADRATURE_NODE_CAP).unwrap();
            assert!((one.estimate - Complex::new(1.0, 0.0)).norm() < 1e-14);
            assert!(one.std_error.is_none());
        }
    }

    #[test]
    fn characters_at_identity() {
        let e = GroupElement::identity();
        assert_eq!(character(&e, Representation::Fundamental), Complex::new(3.0, 0.0));
        assert_eq!(character(&e, Representation::Adjoint), Complex::new(8.0, 0.0));
        assert_eq!(character(&e, Representation::Antifundamental), Complex::new(3.0, 0.0));
        assert!("spinor".parse::<Representation>().is_err());
    }
}
