//! Verification suites: every identity the crate relies on, checked numerically
//! with explicit thresholds.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::comparison::{interior_points, typo_report, Table, TypoLine};
use crate::error::{Error, Result};
use crate::euler::{
    canonicalize, compose, compose_matrix, decompose, decompose_near, factor_exponential, su2_subelement, EulerAngles,
    GroupElement,
};
use crate::gellmann::{
    basis, commutator, commutator_table_report, expand_in_basis, gell_mann_matrix, jacobi_residual,
    structure_constants, verify_cartan_split, AlgebraVector, GellMannIndex,
};
use crate::haar::{
    character, coframe_density_ratio, density, group_volume, integrate_mc, integrate_mc_many,
    integrate_quadrature_many, sample, AngleRanges, HaarSampler, IntegrationResult, QuadratureRule, Representation,
    QUADRATURE_NODE_CAP,
};
use crate::invariant_forms::{coframe, left_coframe_closed, maurer_cartan_matrix, right_coframe_closed, CoFrameMatrix};
use crate::linalg::{frobenius, max_abs3, max_abs8, trace, trace_product, Complex, Matrix8};
use crate::tangent_frames::{
    adjoint_matrix, adjoint_relation_residual, check_interior, field_frame, frame_commutator_residuals,
    left_field_frame_closed, maurer_cartan_coefficients, partial_derivatives, right_field_frame_closed, Chirality,
};

/// Monte Carlo acceptance in standard errors.
pub const SIGMAS: f64 = 4.0;
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;
pub const DEFAULT_QUAD_NODES: usize = 6;
/// Tolerance of the 6-node quadrature character integrals.
pub const QUAD_TOLERANCE: f64 = 0.02;
pub const FD_STEP: f64 = 1e-5;
pub const FD_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Algebra,
    Group,
    Frames,
    Forms,
    Measure,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Algebra,
        Suite::Group,
        Suite::Frames,
        Suite::Forms,
        Suite::Measure,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Group => "group",
            Suite::Frames => "frames",
            Suite::Forms => "forms",
            Suite::Measure => "measure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::All,
            Suite::Algebra,
            Suite::Group,
            Suite::Frames,
            Suite::Forms,
            Suite::Measure,
        ]
        .into_iter()
        .find(|v| v.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suite: Suite,
    /// Points for the pointwise suites.
    pub points: usize,
    pub seed: u64,
    /// Monte Carlo sample count for the measure suite.
    pub samples: usize,
    pub quad_nodes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suite: Suite::All,
            points: 100,
            seed: 7,
            samples: DEFAULT_MC_SAMPLES,
            quad_nodes: DEFAULT_QUAD_NODES,
        }
    }
}

/// One checked identity.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn at_most(suite: Suite, name: impl Into<String>, residual: f64, threshold: f64) -> Check {
        Check {
            suite,
            name: name.into(),
            residual,
            threshold,
            passed: residual <= threshold,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    /// A Monte Carlo estimate against its target, in units of its standard error.
    fn sigma(suite: Suite, name: impl Into<String>, estimate: Complex, target: Complex, std_error: f64) -> Check {
        let dev = (estimate - target).norm();
        Check {
            suite,
            name: name.into(),
            residual: dev,
            threshold: SIGMAS * std_error,
            passed: dev <= SIGMAS * std_error,
            note: Some(format!(
                "estimate {:.6}{:+.6}i ± {:.2e}",
                estimate.re, estimate.im, std_error
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// Closed-form tables against the construction; present when frames or forms ran.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub typo_report: Vec<TypoLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<6} {:<8} {:<58} {:>11} {:>11}",
            "", "suite", "check", "residual", "threshold"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<6} {:<8} {:<58} {:>11.3e} {:>11.3e}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.residual,
                c.threshold,
                c.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default()
            )?;
        }
        if !self.typo_report.is_empty() {
            writeln!(f, "\nprinted-table misprints ({} cells):", self.typo_report.len())?;
            for l in &self.typo_report {
                writeln!(
                    f,
                    "  {:<14} |Δ| {:.2e}..{:.2e}  {}",
                    l.entry,
                    l.min_deviation,
                    l.max_deviation,
                    l.explanation.unwrap_or("UNEXPLAINED")
                )?;
            }
        }
        let failed = self.failures().count();
        write!(f, "\n{} checks, {} failed", self.checks.len(), failed)
    }
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.points == 0 {
        return Err(Error::InvalidCount(0));
    }
    let suites: Vec<Suite> = match opts.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut report = VerifyReport {
        checks: Vec::new(),
        typo_report: Vec::new(),
    };
    for s in suites {
        log::info!("running suite {s}");
        let checks = match s {
            Suite::Algebra => algebra(opts),
            Suite::Group => group(opts)?,
            Suite::Frames => frames(opts, &mut report.typo_report)?,
            Suite::Forms => forms(opts, &mut report.typo_report)?,
            Suite::Measure => measure(opts)?,
            Suite::All => unreachable!(),
        };
        report.checks.extend(checks);
    }
    Ok(report)
}

/// Haar-distributed points that are also inside the chart.
pub fn haar_interior_points(n: usize, seed: u64) -> Vec<EulerAngles> {
    let sampler = HaarSampler::new(seed);
    (0u64..)
        .map(|i| sampler.angles(i))
        .filter(|x| check_interior(x).is_ok())
        .take(n)
        .collect()
}

/// Elements on the chart boundary: each of `θ, β, b` at `0` or `π/2`, alone and combined.
pub fn boundary_cases(seed: u64) -> Vec<EulerAngles> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pins: [&[(usize, f64)]; 20] = [
        &[(3, 0.0)],
        &[(3, FRAC_PI_2)],
        &[(1, 0.0)],
        &[(1, FRAC_PI_2)],
        &[(5, 0.0)],
        &[(5, FRAC_PI_2)],
        &[(3, 0.0), (1, 0.0)],
        &[(3, 0.0), (1, FRAC_PI_2)],
        &[(3, 0.0), (5, 0.0)],
        &[(3, 0.0), (5, FRAC_PI_2)],
        &[(3, FRAC_PI_2), (1, 0.0)],
        &[(3, FRAC_PI_2), (1, FRAC_PI_2)],
        &[(3, FRAC_PI_2), (5, 0.0)],
        &[(3, FRAC_PI_2), (5, FRAC_PI_2)],
        &[(1, 0.0), (5, 0.0)],
        &[(1, FRAC_PI_2), (5, FRAC_PI_2)],
        &[(1, 0.0), (5, FRAC_PI_2)],
        &[(3, 0.0), (1, 0.0), (5, 0.0)],
        &[(3, FRAC_PI_2), (1, FRAC_PI_2), (5, FRAC_PI_2)],
        &[(3, FRAC_PI_2), (1, 0.0), (5, FRAC_PI_2)],
    ];
    pins.iter()
        .map(|pin| {
            let mut x: [f64; 8] = std::array::from_fn(|k| match k {
                1 | 3 | 5 => rng.random_range(0.0..FRAC_PI_2),
                _ => rng.random_range(0.0..2.0 * PI),
            });
            for &(k, v) in pin.iter() {
                x[k] = v;
            }
            EulerAngles::from_array(x)
        })
        .collect()
}

/// Roundtrip residual `‖compose(decompose(U)) − U‖_F`.
pub fn roundtrip_residual(u: &GroupElement) -> Result<f64> {
    let x = decompose(u)?;
    Ok(frobenius(&(compose_matrix(&x) - u.matrix())))
}

fn algebra(opts: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Algebra;
    let mut out = Vec::new();
    let mut orth: f64 = 0.0;
    for i in GellMannIndex::all() {
        for j in GellMannIndex::all() {
            let want = if i == j { 2.0 } else { 0.0 };
            let t = trace_product(&gell_mann_matrix(i), &gell_mann_matrix(j));
            orth = orth.max((t - Complex::new(want, 0.0)).norm());
        }
    }
    out.push(Check::at_most(s, "tr(λᵢλⱼ) = 2δᵢⱼ (64 pairs)", orth, 1e-15));

    let table = commutator_table_report();
    let mut c = Check::at_most(
        s,
        format!("commutator table ({} pairs, errata excluded)", table.pairs_checked),
        table.residual_excluding_errata.max(table.errata_residual),
        1e-12,
    );
    c.passed &= table.explained();
    let misprinted: Vec<String> = table
        .printed_mismatches
        .iter()
        .map(|(i, j, r)| format!("[λ{i},λ{j}] printed value off by {r:.1}"))
        .collect();
    if !misprinted.is_empty() {
        c = c.with_note(format!("catalogued misprint: {}", misprinted.join(", ")));
    }
    out.push(c);

    let t = structure_constants();
    out.push(Check::at_most(
        s,
        "Cᵏᵢⱼ antisymmetric in i,j",
        t.antisymmetry_defect(),
        1e-12,
    ));
    out.push(Check::at_most(s, "Cᵏᵢⱼ purely imaginary", t.max_real_part(), 1e-12));
    let mut via_tensor: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            let lhs = commutator(&basis()[i], &basis()[j]);
            let rhs = (0..8).fold(crate::linalg::Matrix3c::zeros(), |acc, k| {
                acc + basis()[k] * t.at(k, i, j)
            });
            via_tensor = via_tensor.max(max_abs3(&(lhs - rhs)));
        }
    }
    out.push(Check::at_most(
        s,
        "[λᵢ,λⱼ] = Cᵏᵢⱼ λₖ (64 ordered pairs)",
        via_tensor,
        1e-12,
    ));
    let cartan = verify_cartan_split();
    let mut c = Check::at_most(
        s,
        format!("Cartan split ({} pairs)", cartan.pairs_checked),
        cartan.kk_leak.max(cartan.pp_leak).max(cartan.kp_leak),
        1e-12,
    );
    c.passed &= cartan.passed;
    out.push(c);
    out.push(Check::at_most(
        s,
        "Jacobi identity (all triples)",
        jacobi_residual(),
        1e-12,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut roundtrip: f64 = 0.0;
    for _ in 0..opts.points {
        let v = AlgebraVector(std::array::from_fn(|_| rng.random_range(-2.0..2.0)));
        let m = v.to_matrix();
        let ok = expand_in_basis(&m).map(|c| {
            c.iter()
                .zip(v.0.iter())
                .map(|(a, b)| (a - Complex::new(*b, 0.0)).norm())
                .fold(0.0, f64::max)
        });
        roundtrip = roundtrip.max(ok.unwrap_or(f64::INFINITY));
    }
    out.push(Check::at_most(s, "expand_in_basis roundtrip", roundtrip, 1e-12));
    out
}

fn group(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Group;
    let mut out = Vec::new();
    let mut series: f64 = 0.0;
    for g in [2usize, 3, 5, 8] {
        let idx = GellMannIndex::new(g)?;
        let t = 0.37;
        // truncated exponential series as an independent reference
        let x = gell_mann_matrix(idx) * Complex::new(0.0, t);
        let mut term = crate::linalg::Matrix3c::identity();
        let mut sum = term;
        for k in 1..30 {
            term = term * x / Complex::new(k as f64, 0.0);
            sum += term;
        }
        series = series.max(max_abs3(&(factor_exponential(idx, t)?.matrix() - sum)));
    }
    out.push(Check::at_most(s, "factor exponentials vs power series", series, 1e-14));

    let su2 = su2_subelement(0.3, 0.7, 1.1);
    let via_compose = compose(&EulerAngles::from_array([0.3, 0.7, 1.1, 0.0, 0.0, 0.0, 0.0, 0.0]))?;
    out.push(Check::at_most(
        s,
        "SU(2) subelement = compose with θ=a=b=c=φ=0",
        su2.distance(&via_compose),
        1e-14,
    ));

    let samples = sample(opts.points.max(2), opts.seed)?;
    let (mut unit, mut det, mut trip, mut canon, mut hom): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for pair in samples.windows(2) {
        let u = pair[0].element();
        unit = unit.max(u.unitarity_defect());
        det = det.max(u.determinant_defect());
        trip = trip.max(roundtrip_residual(u)?);
        let c = canonicalize(&pair[0].angles)?;
        canon = canon.max(frobenius(&(compose_matrix(&c) - u.matrix())));
        let uv = u * pair[1].element();
        hom = hom.max(frobenius(&(uv.matrix() - u.matrix() * pair[1].element().matrix())));
    }
    out.push(Check::at_most(s, "compose: unitarity defect", unit, 1e-12));
    out.push(Check::at_most(s, "compose: determinant defect", det, 1e-12));
    out.push(Check::at_most(s, "group product consistency", hom, 1e-12));
    out.push(Check::at_most(
        s,
        format!("decompose roundtrip ({} Haar elements)", samples.len() - 1),
        trip,
        1e-9,
    ));
    out.push(Check::at_most(s, "canonicalize preserves the element", canon, 1e-12));

    let mut boundary: f64 = 0.0;
    for x in boundary_cases(opts.seed) {
        boundary = boundary.max(roundtrip_residual(&compose(&x)?)?);
    }
    out.push(Check::at_most(
        s,
        "decompose roundtrip (20 boundary cases)",
        boundary,
        1e-9,
    ));
    Ok(out)
}

fn frames(opts: &VerifyOptions, typos: &mut Vec<TypoLine>) -> Result<Vec<Check>> {
    let s = Suite::Frames;
    let mut out = Vec::new();
    let pts = haar_interior_points(opts.points, opts.seed);
    let (mut fd, mut mc_imag) = (0.0f64, 0.0f64);
    let mut defining = [0.0f64; 2];
    let mut reality = [0.0f64; 2];
    for x in &pts {
        let p = partial_derivatives(x);
        let h = 1e-6;
        for (k, pk) in p.iter().enumerate() {
            let num =
                (compose_matrix(&x.shifted(k, h)) - compose_matrix(&x.shifted(k, -h))) / Complex::new(2.0 * h, 0.0);
            fd = fd.max(max_abs3(&(num - pk)));
        }
        for (ci, chir) in [Chirality::Left, Chirality::Right].into_iter().enumerate() {
            mc_imag = mc_imag.max(maurer_cartan_coefficients(x, chir).imaginary_residue);
            let f = field_frame(x, chir)?;
            defining[ci] = defining[ci].max(f.defining_relation_residuals().into_iter().fold(0.0, f64::max));
            reality[ci] = reality[ci].max(f.max_real_part());
        }
    }
    out.push(Check::at_most(s, "∂ₖD vs central differences", fd, 1e-8));
    out.push(Check::at_most(s, "Maurer–Cartan coefficients real", mc_imag, 1e-12));
    out.push(Check::at_most(
        s,
        format!("ΛᵢD = −λᵢD ({} points)", pts.len()),
        defining[0],
        1e-9,
    ));
    out.push(Check::at_most(
        s,
        format!("ΛᵢʳD = −Dλᵢ ({} points)", pts.len()),
        defining[1],
        1e-9,
    ));
    out.push(Check::at_most(s, "left fields purely imaginary", reality[0], 1e-9));
    out.push(Check::at_most(s, "right fields purely imaginary", reality[1], 1e-9));

    let (mut orth, mut det, mut hom, mut rel): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for pair in pts.windows(2) {
        let (u, v) = (compose(&pair[0])?, compose(&pair[1])?);
        let (ru, rv) = (adjoint_matrix(&u)?, adjoint_matrix(&v)?);
        orth = orth.max(ru.orthogonality_defect());
        det = det.max((ru.determinant() - 1.0).abs());
        hom = hom.max(max_abs8(&(adjoint_matrix(&(u * v))?.r - ru.r * rv.r)));
        rel = rel.max(adjoint_relation_residual(&pair[0])?);
    }
    out.push(Check::at_most(s, "adjoint R orthogonal", orth, 1e-10));
    out.push(Check::at_most(s, "adjoint det R = 1", det, 1e-10));
    out.push(Check::at_most(s, "adjoint homomorphism R(UV) = R(U)R(V)", hom, 1e-10));
    out.push(
        Check::at_most(s, "Λʳ = Rᵀ·Λ", rel, 1e-9)
            .with_note("right field i combines left fields with column i of R; global sign +1"),
    );

    let (mut l, mut r, mut c): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let few = &pts[..pts.len().min(10)];
    for x in few {
        let res = frame_commutator_residuals(x, FD_STEP)?;
        l = l.max(res.left);
        r = r.max(res.right);
        c = c.max(res.cross);
    }
    out.push(Check::at_most(
        s,
        format!("[Λᵢ,Λⱼ] = CᵏᵢⱼΛₖ ({} points)", few.len()),
        l,
        FD_TOLERANCE,
    ));
    out.push(Check::at_most(s, "[Λᵢʳ,Λⱼʳ] = −CᵏᵢⱼΛₖʳ", r, FD_TOLERANCE));
    out.push(Check::at_most(s, "[Λᵢ,Λⱼʳ] = 0", c, FD_TOLERANCE));

    let x0 = pts[0];
    let closed_ok = left_field_frame_closed(&x0).is_ok() && right_field_frame_closed(&x0).is_ok();
    let tables = typo_report(&interior_points(opts.points, opts.seed))?;
    for t in tables
        .tables
        .iter()
        .filter(|t| matches!(t.table, Table::LeftFields | Table::RightFields))
    {
        let lines = t.typo_lines();
        let unexplained = lines.iter().filter(|l| l.explanation.is_none() || !l.stable).count();
        let mut check = Check::at_most(
            s,
            format!("{:?} printed table (errata applied)", t.table),
            t.corrected.max_deviation(),
            crate::comparison::TABLE_TOLERANCE,
        )
        .with_note(format!("{} catalogued cells, {} unexplained", lines.len(), unexplained));
        check.passed &= unexplained == 0 && t.overclaimed().is_empty() && closed_ok;
        out.push(check);
        typos.extend(lines);
    }
    Ok(out)
}

/// Largest deviation between a coframe and its pullback under the translation
/// it is invariant under: right translation for the left coframe, left
/// translation for the right coframe.
pub fn coframe_translation_defect(x: &EulerAngles, g: &GroupElement, chirality: Chirality) -> Result<f64> {
    let translate = |m: &GroupElement| match chirality {
        Chirality::Left => m * g,
        Chirality::Right => g * m,
    };
    let y = decompose(&translate(&compose(x)?))?;
    let mut jac = Matrix8::zeros();
    for k in 0..8 {
        let plus = decompose_near(&translate(&compose(&x.shifted(k, FD_STEP))?), &y)?;
        let minus = decompose_near(&translate(&compose(&x.shifted(k, -FD_STEP))?), &y)?;
        for j in 0..8 {
            jac[(j, k)] = (plus.to_array()[j] - minus.to_array()[j]) / (2.0 * FD_STEP);
        }
    }
    let at_y: CoFrameMatrix = coframe(&y, chirality)?;
    let at_x = coframe(x, chirality)?;
    Ok(max_abs8(&(at_y.entries * jac - at_x.entries)))
}

fn forms(opts: &VerifyOptions, typos: &mut Vec<TypoLine>) -> Result<Vec<Check>> {
    let s = Suite::Forms;
    let mut out = Vec::new();
    let pts = haar_interior_points(opts.points, opts.seed);
    let mut dual = [0.0f64; 2];
    let mut mc_dev: f64 = 0.0;
    let mut det_ratio = Vec::new();
    for x in &pts {
        for (ci, chir) in [Chirality::Left, Chirality::Right].into_iter().enumerate() {
            let frame = field_frame(x, chir)?;
            dual[ci] = dual[ci].max(coframe(x, chir)?.duality_defect(&frame.real_frame()));
        }
        let mc = maurer_cartan_matrix(x)?;
        mc_dev = mc_dev
            .max(max_abs8(&(mc.left_translated - coframe(x, Chirality::Left)?.entries)))
            .max(max_abs8(&(mc.right_translated - coframe(x, Chirality::Right)?.entries)))
            .max(mc.imaginary_residue);
        det_ratio.push(mc.right_determinant().abs() / density(x).0);
    }
    out.push(Check::at_most(
        s,
        format!("⟨ωˡ, Xᵢ⟩ = δ left ({} points)", pts.len()),
        dual[0],
        1e-9,
    ));
    out.push(Check::at_most(
        s,
        format!("⟨ωˡ, Xᵢ⟩ = δ right ({} points)", pts.len()),
        dual[1],
        1e-9,
    ));
    out.push(Check::at_most(s, "Maurer–Cartan components = coframes", mc_dev, 1e-9));

    let left = coframe_density_ratio(&pts, Chirality::Left)?;
    let right = coframe_density_ratio(&pts, Chirality::Right)?;
    out.push(
        Check::at_most(s, "|det ω| / density constant (left)", left.relative_spread, 1e-8)
            .with_note(format!("constant {:.12}", left.mean)),
    );
    out.push(
        Check::at_most(s, "|det ω| / density constant (right)", right.relative_spread, 1e-8)
            .with_note(format!("constant {:.12}", right.mean)),
    );
    out.push(Check::at_most(
        s,
        "left and right constants agree (relative)",
        (left.mean - right.mean).abs() / left.mean,
        1e-8,
    ));
    let mc_spread = det_ratio
        .iter()
        .fold(0.0f64, |m, r| m.max((r - left.mean).abs() / left.mean));
    out.push(Check::at_most(
        s,
        "Maurer–Cartan determinant / density constant",
        mc_spread,
        1e-8,
    ));

    let gs = sample(3, opts.seed ^ 0x5eed)?;
    let few = &pts[..pts.len().min(10)];
    let mut inv = [0.0f64; 2];
    for x in few {
        for g in &gs {
            for (ci, chir) in [Chirality::Left, Chirality::Right].into_iter().enumerate() {
                inv[ci] = inv[ci].max(coframe_translation_defect(x, g.element(), chir)?);
            }
        }
    }
    out.push(Check::at_most(
        s,
        format!("left coframe invariant under U ↦ Ug ({} points)", few.len()),
        inv[0],
        1e-6,
    ));
    out.push(Check::at_most(s, "right coframe invariant under U ↦ gU", inv[1], 1e-6));

    let x0 = pts[0];
    let closed_ok = left_coframe_closed(&x0).is_ok() && right_coframe_closed(&x0).is_ok();
    let tables = typo_report(&interior_points(opts.points, opts.seed))?;
    for t in tables
        .tables
        .iter()
        .filter(|t| matches!(t.table, Table::LeftForms | Table::RightForms))
    {
        let lines = t.typo_lines();
        let unexplained = lines.iter().filter(|l| l.explanation.is_none() || !l.stable).count();
        let mut check = Check::at_most(
            s,
            format!("{:?} printed table (errata applied)", t.table),
            t.corrected.max_deviation(),
            crate::comparison::TABLE_TOLERANCE,
        )
        .with_note(format!("{} catalogued cells, {} unexplained", lines.len(), unexplained));
        check.passed &= unexplained == 0 && t.overclaimed().is_empty() && closed_ok;
        out.push(check);
        typos.extend(lines);
    }
    Ok(out)
}

/// The four test functions of the translation-invariance check.
pub fn invariance_functions(u: &GroupElement) -> [f64; 4] {
    let t = u.trace();
    let m = u.matrix();
    [
        t.re,
        t.norm_sqr(),
        trace(&(m * m)).re,
        character(u, Representation::Adjoint).re,
    ]
}

/// Paired Monte Carlo differences `f(gU) − f(U)` and `f(Ug) − f(U)` for the
/// four invariance functions; each entry is `(estimate, std_error)`.
pub fn translation_differences(g: &GroupElement, n: usize, seed: u64) -> Result<[(Complex, f64); 8]> {
    let r = integrate_mc_many(
        |u, out: &mut [Complex; 8]| {
            let base = invariance_functions(u);
            let left = invariance_functions(&(g * u));
            let right = invariance_functions(&(u * g));
            for k in 0..4 {
                out[k] = Complex::new(left[k] - base[k], 0.0);
                out[4 + k] = Complex::new(right[k] - base[k], 0.0);
            }
            Ok::<(), Error>(())
        },
        n,
        seed,
    )?;
    Ok(r.map(|r| (r.estimate, r.std_error.unwrap_or(0.0))))
}

/// `⟨χ₃,χ₃⟩, ⟨χ₃,1⟩, ⟨χ_adj,χ_adj⟩, ⟨χ₃,χ̄₃⟩, ⟨χ₃,χ_adj⟩` integrands.
pub fn character_integrands(u: &GroupElement, out: &mut [Complex; 5]) {
    let f = character(u, Representation::Fundamental);
    let a = character(u, Representation::Adjoint);
    let fbar = character(u, Representation::Antifundamental);
    out[0] = f * f.conj();
    out[1] = f;
    out[2] = a * a.conj();
    out[3] = f * fbar.conj();
    out[4] = f * a.conj();
}

/// The [`character_integrands`] by the default product quadrature.
pub fn quadrature_characters(nodes_per_dim: usize) -> Result<[IntegrationResult; 5]> {
    integrate_quadrature_many(
        |x, o: &mut [Complex; 5]| character_integrands(&GroupElement::new_unchecked(compose_matrix(x)), o),
        nodes_per_dim,
        &QuadratureRule::Torus,
        QUADRATURE_NODE_CAP,
    )
}

pub const CHARACTER_NAMES: [&str; 5] = ["⟨χ₃,χ₃⟩", "⟨χ₃,1⟩", "⟨χ_adj,χ_adj⟩", "⟨χ₃,χ̄₃⟩", "⟨χ₃,χ_adj⟩"];
pub const CHARACTER_TARGETS: [f64; 5] = [1.0, 0.0, 1.0, 0.0, 0.0];

fn measure(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Measure;
    let mut out = Vec::new();
    let q = std::f64::consts::FRAC_PI_4;
    let d = density(&EulerAngles {
        beta: q,
        b: q,
        theta: q,
        ..EulerAngles::ZERO
    })
    .0;
    out.push(Check::at_most(s, "density at β=b=θ=π/4 is 1/2", (d - 0.5).abs(), 1e-15));

    let one = integrate_mc(|_| Complex::new(1.0, 0.0), 2.max(opts.samples.min(1000)), opts.seed)?;
    out.push(Check::at_most(
        s,
        "MC of f ≡ 1",
        (one.estimate - Complex::new(1.0, 0.0)).norm() + one.std_error.unwrap_or(0.0),
        1e-15,
    ));

    let n = opts.samples;
    let mc = integrate_mc_many(
        |u, o: &mut [Complex; 5]| {
            character_integrands(u, o);
            Ok::<(), Error>(())
        },
        n,
        opts.seed,
    )?;
    for k in 0..5 {
        out.push(Check::sigma(
            s,
            format!("MC {} (n = {n})", CHARACTER_NAMES[k]),
            mc[k].estimate,
            Complex::new(CHARACTER_TARGETS[k], 0.0),
            mc[k].std_error.unwrap_or(0.0),
        ));
    }

    // sampler marginals: E[sin²θ] = 2/3
    let sampler = HaarSampler::new(opts.seed);
    let m = n.min(200_000);
    let vals: Vec<f64> = (0..m as u64).map(|i| sampler.angles(i).theta.sin().powi(2)).collect();
    let mean = vals.iter().sum::<f64>() / m as f64;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m as f64 - 1.0);
    out.push(Check::sigma(
        s,
        format!("sampler E[sin²θ] = 2/3 (n = {m})"),
        Complex::new(mean, 0.0),
        Complex::new(2.0 / 3.0, 0.0),
        (var / m as f64).sqrt(),
    ));

    let quad = quadrature_characters(opts.quad_nodes)?;
    for k in 0..5 {
        out.push(Check::at_most(
            s,
            format!("quadrature {} ({} nodes/dim)", CHARACTER_NAMES[k], opts.quad_nodes),
            (quad[k].estimate - Complex::new(CHARACTER_TARGETS[k], 0.0)).norm(),
            QUAD_TOLERANCE,
        ));
    }

    let gs = sample(5, opts.seed ^ 0x9e37)?;
    let inv_n = n.max(2);
    let mut worst: f64 = 0.0;
    let mut all = true;
    for g in &gs {
        for (est, se) in translation_differences(g.element(), inv_n, opts.seed)? {
            worst = worst.max(est.norm() / se.max(f64::MIN_POSITIVE));
            all &= est.norm() <= SIGMAS * se;
        }
    }
    let mut c = Check::at_most(
        s,
        format!("translation invariance, 5 g × 4 f × 2 sides (n = {inv_n})"),
        worst,
        SIGMAS,
    )
    .with_note("residual in standard errors");
    c.passed = all;
    out.push(c);

    for (name, ranges) in [
        ("printed", AngleRanges::printed()),
        ("covering", AngleRanges::covering()),
    ] {
        let v = group_volume(&ranges);
        out.push(
            Check::at_most(
                s,
                format!("volume over {name} ranges: quadrature vs analytic"),
                v.relative_difference,
                1e-10,
            )
            .with_note(format!("analytic {:.10}", v.analytic)),
        );
    }
    let printed = group_volume(&AngleRanges::printed()).analytic;
    out.push(
        Check::at_most(
            s,
            "printed-range volume = π⁵",
            (printed - PI.powi(5)).abs() / PI.powi(5),
            1e-12,
        )
        .with_note(format!(
            "published claim 2π⁵ = {:.6}; observed/claimed = {:.6}",
            2.0 * PI.powi(5),
            printed / (2.0 * PI.powi(5))
        )),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in [
            Suite::All,
            Suite::Algebra,
            Suite::Group,
            Suite::Frames,
            Suite::Forms,
            Suite::Measure,
        ] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("geometry".parse::<Suite>().is_err());
    }

    #[test]
    fn boundary_cases_sit_on_the_boundary() {
        let cases = boundary_cases(3);
        assert_eq!(cases.len(), 20);
        for x in &cases {
            assert!([x.theta, x.beta, x.b].iter().any(|&t| t == 0.0 || t == FRAC_PI_2));
        }
        assert!(cases.iter().any(|x| x.theta == 0.0) && cases.iter().any(|x| x.theta == FRAC_PI_2));
        assert!(cases.iter().any(|x| x.beta == 0.0) && cases.iter().any(|x| x.b == FRAC_PI_2));
    }

    #[test]
    fn all_suites_pass_at_small_sizes() {
        let opts = VerifyOptions {
            points: 20,
            samples: 20_000,
            ..VerifyOptions::default()
        };
        let report = run(&opts).unwrap();
        let failed: Vec<_> = report.failures().collect();
        assert!(failed.is_empty(), "{failed:#?}");
        for s in Suite::EACH {
            assert!(report.checks.iter().any(|c| c.suite == s), "{s} ran");
        }
        assert_eq!(report.typo_report.len(), 41);
        assert!(run(&VerifyOptions { points: 0, ..opts }).is_err());
    }
}
