//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails if any criterion fails other than the known misprint in the
//! published commutator table, which is reported as FAIL and checked to be
//! exactly the catalogued deviation.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use su3_geometry::comparison::{interior_points, typo_report};
use su3_geometry::error::{Error, Result};
use su3_geometry::euler::compose;
use su3_geometry::gellmann::{commutator_table_report, TABLE_ERRATA};
use su3_geometry::haar::{coframe_density_ratio, group_volume, integrate_mc_many, sample, AngleRanges};
use su3_geometry::invariant_forms::coframe;
use su3_geometry::linalg::{max_abs8, Complex};
use su3_geometry::tangent_frames::{
    adjoint_matrix, adjoint_relation_residual, field_frame, frame_commutator_residuals, Chirality,
};
use su3_geometry::verify::{
    boundary_cases, character_integrands, haar_interior_points, quadrature_characters, roundtrip_residual,
    translation_differences, CHARACTER_NAMES, CHARACTER_TARGETS, FD_STEP, SIGMAS,
};

const SEED: u64 = 7;
const MC_SAMPLES: usize = 1_000_000;

/// Outcome of one criterion.
struct Line {
    passed: bool,
    /// A failure that matches a catalogued, verified deviation.
    known_deviation: bool,
    summary: String,
}

impl Line {
    fn new(passed: bool, summary: String) -> Self {
        Line {
            passed,
            known_deviation: false,
            summary,
        }
    }
}

fn commutator_table() -> Result<Line> {
    let r = commutator_table_report();
    let errata: Vec<(usize, usize)> = TABLE_ERRATA.iter().map(|e| (e.i, e.j)).collect();
    let mismatched: Vec<(usize, usize)> = r.printed_mismatches.iter().map(|&(i, j, _)| (i, j)).collect();
    let printed_max = r
        .printed_mismatches
        .iter()
        .map(|m| m.2)
        .fold(r.residual_excluding_errata, f64::max);
    let passed = printed_max <= 1e-12;
    let known = !passed && r.explained() && mismatched == errata && r.residual_excluding_errata <= 1e-12;
    Ok(Line {
        passed,
        known_deviation: known,
        summary: format!(
            "{} pairs; max residual over printed cells {printed_max:.2e} (tol 1e-12); \
             other pairs {:.2e}; misprinted cells {mismatched:?}: [λ5,λ7] is printed −iλ2 but equals +iλ2 \
             (corrected value residual {:.2e})",
            r.pairs_checked, r.residual_excluding_errata, r.errata_residual
        ),
    })
}

fn defining_relations() -> Result<Line> {
    let pts = haar_interior_points(100, SEED);
    let mut worst = [0.0f64; 2];
    for x in &pts {
        for (k, chir) in [Chirality::Left, Chirality::Right].into_iter().enumerate() {
            let r = field_frame(x, chir)?.defining_relation_residuals();
            worst[k] = r.into_iter().fold(worst[k], f64::max);
        }
    }
    Ok(Line::new(
        worst[0] <= 1e-9 && worst[1] <= 1e-9,
        format!(
            "{} Haar points; left {:.2e}, right {:.2e} (tol 1e-9)",
            pts.len(),
            worst[0],
            worst[1]
        ),
    ))
}

fn transcribed_tables() -> Result<Line> {
    let r = typo_report(&interior_points(100, SEED))?;
    Ok(Line::new(
        r.passed(),
        format!(
            "{} points; {} catalogued misprinted cells, {} unexplained, {} unstable; \
             corrected tables within {:.2e} (tol 1e-9)",
            r.points,
            r.lines().len(),
            r.unexplained().len(),
            r.unstable().len(),
            r.corrected_deviation()
        ),
    ))
}

fn duality() -> Result<Line> {
    let pts = interior_points(100, SEED);
    let mut worst = [0.0f64; 2];
    for x in &pts {
        for (k, chir) in [Chirality::Left, Chirality::Right].into_iter().enumerate() {
            let d = coframe(x, chir)?.duality_defect(&field_frame(x, chir)?.real_frame());
            worst[k] = worst[k].max(d);
        }
    }
    Ok(Line::new(
        worst[0] <= 1e-9 && worst[1] <= 1e-9,
        format!("100 points; left {:.2e}, right {:.2e} (tol 1e-9)", worst[0], worst[1]),
    ))
}

fn density() -> Result<Line> {
    let pts = interior_points(100, SEED);
    let l = coframe_density_ratio(&pts, Chirality::Left)?;
    let r = coframe_density_ratio(&pts, Chirality::Right)?;
    let agree = (l.mean - r.mean).abs() / l.mean;
    Ok(Line::new(
        l.relative_spread <= 1e-8 && r.relative_spread <= 1e-8 && agree <= 1e-8,
        format!(
            "|det ω|/density = {:.12} (left, spread {:.2e}), {:.12} (right, spread {:.2e}); relative gap {agree:.2e}",
            l.mean, l.relative_spread, r.mean, r.relative_spread
        ),
    ))
}

fn adjoint() -> Result<Line> {
    let elems = sample(100, SEED)?;
    let (mut orth, mut det, mut hom): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (k, s) in elems.iter().enumerate() {
        let u = s.element();
        let v = elems[(k + 1) % elems.len()].element();
        let (ru, rv) = (adjoint_matrix(u)?, adjoint_matrix(v)?);
        orth = orth.max(ru.orthogonality_defect());
        det = det.max((ru.determinant() - 1.0).abs());
        hom = hom.max(max_abs8(&(adjoint_matrix(&(u * v))?.r - ru.r * rv.r)));
    }
    let rel = interior_points(100, SEED)
        .iter()
        .map(adjoint_relation_residual)
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))?;
    Ok(Line::new(
        orth <= 1e-10 && det <= 1e-10 && hom <= 1e-10 && rel <= 1e-9,
        format!(
            "orthogonality {orth:.2e}, |det−1| {det:.2e}, homomorphism {hom:.2e} (tol 1e-10); \
             Λʳ = Rᵀ·Λ {rel:.2e} (tol 1e-9, global sign +1)"
        ),
    ))
}

fn measure() -> Result<Line> {
    let t = Instant::now();
    let mc = integrate_mc_many(
        |u, o: &mut [Complex; 5]| {
            character_integrands(u, o);
            Ok::<(), Error>(())
        },
        MC_SAMPLES,
        SEED,
    )?;
    let mc_time = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let quad = quadrature_characters(6)?;
    let quad_time = t.elapsed().as_secs_f64();
    let mut passed = mc_time < 60.0 && quad_time < 120.0;
    let mut parts = Vec::new();
    // the four criterion integrals: ⟨χ₃,χ₃⟩, ⟨χ₃,1⟩, ⟨χ_adj,χ_adj⟩, ⟨χ₃,χ̄₃⟩
    for k in 0..4 {
        let target = Complex::new(CHARACTER_TARGETS[k], 0.0);
        let se = mc[k].std_error.unwrap_or(0.0);
        let z = (mc[k].estimate - target).norm() / se;
        let qd = (quad[k].estimate - target).norm();
        passed &= z <= SIGMAS && qd <= 0.02;
        parts.push(format!("{} MC {z:.2}σ, quad Δ {qd:.1e}", CHARACTER_NAMES[k]));
    }
    Ok(Line::new(
        passed,
        format!("{}; MC {mc_time:.1}s, quadrature {quad_time:.1}s", parts.join("; ")),
    ))
}

fn invariance() -> Result<Line> {
    let gs = sample(5, SEED ^ 0x9e37)?;
    let mut worst: f64 = 0.0;
    for g in &gs {
        for (est, se) in translation_differences(g.element(), MC_SAMPLES, SEED)? {
            worst = worst.max(est.norm() / se);
        }
    }
    Ok(Line::new(
        worst <= SIGMAS,
        format!("5 g × 4 f × left/right at n = {MC_SAMPLES}; largest paired difference {worst:.2}σ (tol 4σ)"),
    ))
}

fn volume() -> Result<Line> {
    let v = group_volume(&AngleRanges::printed());
    let pi5 = PI.powi(5);
    let analytic_ok = ((v.analytic - pi5) / pi5).abs() <= 1e-12;
    Ok(Line::new(
        analytic_ok && v.relative_difference <= 1e-10,
        format!(
            "analytic {:.10} = {:.6}·π⁵, quadrature relative difference {:.2e}; published target 2π⁵ \
             (taking the 5-sphere volume as π³) is {:.6}× the computed value",
            v.analytic,
            v.analytic / pi5,
            v.relative_difference,
            2.0 * pi5 / v.analytic
        ),
    ))
}

fn roundtrip() -> Result<Line> {
    let elems = sample(1000, SEED)?;
    let mut haar: f64 = 0.0;
    for s in &elems {
        haar = haar.max(roundtrip_residual(s.element())?);
    }
    let mut edge: f64 = 0.0;
    let cases = boundary_cases(SEED);
    for x in &cases {
        edge = edge.max(roundtrip_residual(&compose(x)?)?);
    }
    Ok(Line::new(
        haar <= 1e-9 && edge <= 1e-9,
        format!(
            "1000 Haar elements {haar:.2e}, {} boundary cases {edge:.2e} (tol 1e-9)",
            cases.len()
        ),
    ))
}

fn frame_commutators() -> Result<Line> {
    let pts = interior_points(10, SEED);
    let (mut l, mut r, mut c): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for x in &pts {
        let res = frame_commutator_residuals(x, FD_STEP)?;
        l = l.max(res.left);
        r = r.max(res.right);
        c = c.max(res.cross);
    }
    Ok(Line::new(
        l <= 1e-6 && r <= 1e-6 && c <= 1e-6,
        format!("10 points; left {l:.2e}, right (−C) {r:.2e}, cross {c:.2e} (tol 1e-6)"),
    ))
}

type Criterion = (&'static str, fn() -> Result<Line>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("commutator table", commutator_table),
        ("defining relations", defining_relations),
        ("transcribed tables", transcribed_tables),
        ("duality", duality),
        ("Haar density", density),
        ("adjoint", adjoint),
        ("measure validity", measure),
        ("translation invariance", invariance),
        ("volume", volume),
        ("decomposition roundtrip", roundtrip),
        ("frame commutators", frame_commutators),
    ];
    let mut unexpected = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let line = run().unwrap_or_else(|e| Line::new(false, format!("error: {e}")));
        let status = if line.passed { "PASS" } else { "FAIL" };
        let known = if line.known_deviation { " [known deviation]" } else { "" };
        println!(
            "criterion {:>2} {status} {name} ({:.2}s): {}{known}",
            k + 1,
            t.elapsed().as_secs_f64(),
            line.summary
        );
        if !line.passed && !line.known_deviation {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
