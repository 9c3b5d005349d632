//! The `su3-geom` command-line surface.
//!
//! Every command returns a [`CommandOutcome`] instead of exiting, so the whole
//! surface can be driven in-process. Exit codes: `0` success, `1` a verification
//! check failed, `2` usage or parse error, `3` numeric failure (singular chart,
//! non-convergence, input outside SU(3)).

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::euler::{compose_matrix, decompose, EulerAngles, GroupElement, COORDINATE_NAMES};
use crate::haar::{
    character, group_volume, integrate_mc, integrate_quadrature, sample, AngleRanges, IntegrationResult, Method,
    Representation,
};
use crate::invariant_forms::{coframe, left_coframe_closed, right_coframe_closed};
use crate::linalg::{frobenius, Complex, Matrix3c, ONE};
use crate::tangent_frames::{field_frame, left_field_frame_closed, right_field_frame_closed, Chirality};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable that overrides `--workers`.
pub const WORKERS_ENV: &str = "SU3_GEOM_WORKERS";

pub const ENTRYPOLY_HELP: &str = "\
entrypoly grammar: a product of factors separated by ';', each factor
`i,j,conj|noconj,power` with 1-based row i and column j in 1..=3 and a
non-negative integer power; `conj` takes the complex conjugate of U_ij.
Example: \"1,1,conj,1;1,1,noconj,1\" is |U_11|^2.";

#[derive(Debug, Parser)]
#[command(name = "su3-geom", version, about = "Euler-angle geometry of SU(3)", after_help = ENTRYPOLY_HELP)]
pub struct Cli {
    /// Worker threads for sampling and integration [default: available parallelism].
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suites and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Points for the pointwise suites; Monte Carlo sample count for `--suite measure`
        /// unless `--samples` is given.
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Monte Carlo samples for the measure suite.
        #[arg(long)]
        samples: Option<usize>,
        /// Quadrature nodes per dimension for the measure suite.
        #[arg(long, default_value_t = verify::DEFAULT_QUAD_NODES)]
        nodes: usize,
        #[arg(long)]
        json: bool,
    },
    /// Emit Haar-distributed samples.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Emit::Angles)]
        emit: Emit,
    },
    /// Factor a JSON matrix (or an array of them) read from stdin or a file.
    Decompose {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Evaluate the vector-field frame or the coframe at a point.
    Frames {
        #[arg(long, num_args = 8, allow_negative_numbers = true, required = true)]
        point: Vec<f64>,
        #[arg(long, value_enum, default_value_t = ChiralityArg::Left)]
        chirality: ChiralityArg,
        /// Emit the coframe instead of the frame.
        #[arg(long)]
        forms: bool,
        /// Emit the transcribed closed-form table instead of the constructive one.
        #[arg(long)]
        closed: bool,
    },
    /// Haar average of a test function.
    #[command(after_help = ENTRYPOLY_HELP)]
    Integrate {
        /// `tr`, `abstr2`, `adjchar`, or `entrypoly SPEC`.
        #[arg(long, num_args = 1..=2, required = true)]
        function: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::Mc)]
        method: Method,
        /// Monte Carlo samples.
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        /// Quadrature nodes per dimension.
        #[arg(long, default_value_t = verify::DEFAULT_QUAD_NODES)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Group volume over the printed angle ranges.
    Volume {
        /// Length of the φ interval [default: 2π].
        #[arg(long)]
        phi_range: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Angles,
    Matrices,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiralityArg {
    Left,
    Right,
}

impl From<ChiralityArg> for Chirality {
    fn from(c: ChiralityArg) -> Self {
        match c {
            ChiralityArg::Left => Chirality::Left,
            ChiralityArg::Right => Chirality::Right,
        }
    }
}

impl ValueEnum for Method {
    fn value_variants<'a>() -> &'a [Self] {
        &[Method::Mc, Method::Quad]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Method::Mc => "mc",
            Method::Quad => "quad",
        }))
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of one command: exit code, standard output and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit_code: i32, stderr: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }

    fn from_error(e: &Error) -> Self {
        let code = if e.is_numeric() { EXIT_NUMERIC } else { EXIT_USAGE };
        Self::fail(code, format!("error: {e}\n"))
    }
}

/// The 3×3 JSON matrix format: row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_complex<R: nalgebra::Dim, C: nalgebra::Dim, S>(m: &nalgebra::Matrix<Complex, R, C, S>) -> Self
    where
        S: nalgebra::RawStorage<Complex, R, C>,
    {
        let rows = |f: fn(&Complex) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        MatrixJson {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix3(&self) -> Result<Matrix3c, Error> {
        let shape_ok = |v: &Vec<Vec<f64>>| v.len() == 3 && v.iter().all(|r| r.len() == 3);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Parse("matrix must have 3×3 `re` and `im` arrays".into()));
        }
        Ok(Matrix3c::from_fn(|i, j| Complex::new(self.re[i][j], self.im[i][j])))
    }
}

/// One factor of an `entrypoly` monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryFactor {
    pub row: usize,
    pub col: usize,
    pub conj: bool,
    pub power: u32,
}

/// Parses the `entrypoly` grammar (see [`ENTRYPOLY_HELP`]).
pub fn parse_entrypoly(spec: &str) -> Result<Vec<EntryFactor>, Error> {
    let bad = |m: String| Error::Parse(format!("entrypoly: {m}"));
    let factors: Vec<EntryFactor> = spec
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|term| {
            let parts: Vec<&str> = term.split(',').map(str::trim).collect();
            let [i, j, conj, power] = parts[..] else {
                return Err(bad(format!("factor {term:?} needs four fields i,j,conj|noconj,power")));
            };
            let index = |s: &str| match s.parse::<usize>() {
                Ok(v @ 1..=3) => Ok(v - 1),
                _ => Err(bad(format!("index {s:?} not in 1..=3"))),
            };
            let conj = match conj {
                "conj" => true,
                "noconj" => false,
                other => return Err(bad(format!("expected conj or noconj, got {other:?}"))),
            };
            let power = power
                .parse()
                .map_err(|_| bad(format!("power {power:?} is not a non-negative integer")))?;
            Ok(EntryFactor {
                row: index(i)?,
                col: index(j)?,
                conj,
                power,
            })
        })
        .collect::<Result<_, _>>()?;
    if factors.is_empty() {
        return Err(bad("empty specification".into()));
    }
    Ok(factors)
}

pub fn eval_entrypoly(factors: &[EntryFactor], u: &Matrix3c) -> Complex {
    factors.iter().fold(ONE, |acc, f| {
        let z = u[(f.row, f.col)];
        acc * if f.conj { z.conj() } else { z }.powu(f.power)
    })
}

/// A test function selected by `--function`.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    Trace,
    AbsTraceSquared,
    AdjointCharacter,
    EntryPoly(Vec<EntryFactor>),
}

impl TestFunction {
    pub fn parse(args: &[String]) -> Result<Self, Error> {
        match args {
            [f] if f == "tr" => Ok(TestFunction::Trace),
            [f] if f == "abstr2" => Ok(TestFunction::AbsTraceSquared),
            [f] if f == "adjchar" => Ok(TestFunction::AdjointCharacter),
            [f, spec] if f == "entrypoly" => Ok(TestFunction::EntryPoly(parse_entrypoly(spec)?)),
            [f] if f == "entrypoly" => Err(Error::Parse("entrypoly needs a SPEC argument".into())),
            other => Err(Error::Parse(format!("unknown function {:?}", other.join(" ")))),
        }
    }

    pub fn eval(&self, u: &GroupElement) -> Complex {
        match self {
            TestFunction::Trace => character(u, Representation::Fundamental),
            TestFunction::AbsTraceSquared => Complex::new(u.trace().norm_sqr(), 0.0),
            TestFunction::AdjointCharacter => character(u, Representation::Adjoint),
            TestFunction::EntryPoly(f) => eval_entrypoly(f, u.matrix()),
        }
    }
}

/// Integration output: `{estimate_re, estimate_im, std_error, n, method}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrationJson {
    pub estimate_re: f64,
    pub estimate_im: f64,
    pub std_error: Option<f64>,
    pub n: usize,
    pub method: Method,
}

impl From<IntegrationResult> for IntegrationJson {
    fn from(r: IntegrationResult) -> Self {
        IntegrationJson {
            estimate_re: r.estimate.re,
            estimate_im: r.estimate.im,
            std_error: r.std_error,
            n: r.n,
            method: r.method,
        }
    }
}

/// One emitted sample; fields absent from the chosen `--emit` are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angles: Option<EulerAngles>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<MatrixJson>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeJson {
    pub angles: EulerAngles,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    /// `frame` (rows are vector fields over coordinate partials) or `coframe`
    /// (rows are one-forms over coordinate differentials).
    pub kind: String,
    pub chirality: String,
    pub closed: bool,
    pub basis_order: Vec<String>,
    pub point: EulerAngles,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeJson {
    pub phi_range: f64,
    pub analytic: f64,
    pub quadrature: f64,
    pub ratio: f64,
    pub pi5: f64,
    pub analytic_over_pi5: f64,
    pub claimed_two_pi5: f64,
    pub analytic_over_claimed: f64,
    pub note: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutcome::ok(text)
            } else {
                CommandOutcome::fail(code, text)
            };
        }
    };
    execute(cli)
}

/// Worker count: the environment variable wins over the flag.
fn workers(flag: Option<usize>) -> Result<Option<usize>, String> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("{WORKERS_ENV}={v:?} is not a worker count")),
        Err(_) => Ok(flag),
    }
}

pub fn execute(cli: Cli) -> CommandOutcome {
    let threads = match workers(cli.workers) {
        Ok(Some(0)) => return CommandOutcome::fail(EXIT_USAGE, "error: worker count must be positive\n"),
        Ok(t) => t,
        Err(e) => return CommandOutcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let command = cli.command;
    match threads {
        None => dispatch(command),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(command)),
            Err(e) => CommandOutcome::fail(EXIT_USAGE, format!("error: cannot start {t} workers: {e}\n")),
        },
    }
}

fn dispatch(command: Command) -> CommandOutcome {
    match command {
        Command::Verify {
            suite,
            points,
            seed,
            samples,
            nodes,
            json,
        } => cmd_verify(suite, points, seed, samples, nodes, json),
        Command::Sample { n, seed, format, emit } => cmd_sample(n, seed, format, emit),
        Command::Decompose { file } => {
            let mut input = String::new();
            let read = match &file {
                Some(p) => std::fs::read_to_string(p).map(|s| input = s),
                None => std::io::stdin().read_to_string(&mut input).map(|_| ()),
            };
            match read {
                Ok(()) => cmd_decompose(&input),
                Err(e) => CommandOutcome::fail(EXIT_USAGE, format!("error: cannot read input: {e}\n")),
            }
        }
        Command::Frames {
            point,
            chirality,
            forms,
            closed,
        } => cmd_frames(&point, chirality.into(), forms, closed),
        Command::Integrate {
            function,
            method,
            n,
            nodes,
            seed,
        } => cmd_integrate(&function, method, n, nodes, seed),
        Command::Volume { phi_range } => cmd_volume(phi_range),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

pub fn cmd_verify(
    suite: Suite,
    points: usize,
    seed: u64,
    samples: Option<usize>,
    nodes: usize,
    json: bool,
) -> CommandOutcome {
    let samples = samples.unwrap_or(if suite == Suite::Measure {
        points
    } else {
        verify::DEFAULT_MC_SAMPLES
    });
    let opts = VerifyOptions {
        suite,
        points,
        seed,
        samples,
        quad_nodes: nodes,
    };
    match verify::run(&opts) {
        Ok(report) => {
            let stdout = if json { to_json(&report) } else { format!("{report}\n") };
            CommandOutcome {
                exit_code: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CommandOutcome::from_error(&e),
    }
}

pub fn cmd_sample(n: usize, seed: u64, format: Format, emit: Emit) -> CommandOutcome {
    let samples = match sample(n, seed) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::from_error(&e),
    };
    let with_angles = emit != Emit::Matrices;
    let with_matrix = emit != Emit::Angles;
    let out = match format {
        Format::Json => {
            let rows: Vec<SampleJson> = samples
                .iter()
                .map(|s| SampleJson {
                    angles: with_angles.then_some(s.angles),
                    matrix: with_matrix.then(|| MatrixJson::from_complex(s.element().matrix())),
                    weight: s.weight(),
                })
                .collect();
            to_json(&rows)
        }
        Format::Csv => {
            let mut header: Vec<String> = Vec::new();
            if with_angles {
                header.extend(COORDINATE_NAMES.iter().map(|s| s.to_string()));
            }
            if with_matrix {
                for i in 1..=3 {
                    for j in 1..=3 {
                        header.push(format!("u{i}{j}_re"));
                        header.push(format!("u{i}{j}_im"));
                    }
                }
            }
            header.push("weight".into());
            let mut out = header.join(",");
            out.push('\n');
            for s in &samples {
                let mut fields: Vec<f64> = Vec::new();
                if with_angles {
                    fields.extend(s.angles.to_array());
                }
                if with_matrix {
                    let m = s.element().matrix();
                    for i in 0..3 {
                        for j in 0..3 {
                            fields.extend([m[(i, j)].re, m[(i, j)].im]);
                        }
                    }
                }
                fields.push(s.weight());
                let line: Vec<String> = fields.iter().map(|v| format!("{v:.16e}")).collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
            out
        }
    };
    CommandOutcome::ok(out)
}

fn decompose_one(value: &Value) -> Result<DecomposeJson, Error> {
    let m = value.get("matrix").unwrap_or(value);
    let m: MatrixJson = serde_json::from_value(m.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let u = GroupElement::new(m.to_matrix3()?)?;
    let angles = decompose(&u)?;
    let residual = frobenius(&(compose_matrix(&angles) - u.matrix()));
    Ok(DecomposeJson { angles, residual })
}

/// Accepts one matrix object, or an array of matrix objects or of objects
/// with a `matrix` field (the output of `sample --emit matrices --format json`).
pub fn cmd_decompose(input: &str) -> CommandOutcome {
    let value: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => return CommandOutcome::fail(EXIT_USAGE, format!("error: invalid JSON: {e}\n")),
    };
    let result = match &value {
        Value::Array(items) => items
            .iter()
            .map(decompose_one)
            .collect::<Result<Vec<_>, _>>()
            .map(|v| to_json(&v)),
        single => decompose_one(single).map(|v| to_json(&v)),
    };
    match result {
        Ok(out) => CommandOutcome::ok(out),
        Err(e) => CommandOutcome::from_error(&e),
    }
}

pub fn cmd_frames(point: &[f64], chirality: Chirality, forms: bool, closed: bool) -> CommandOutcome {
    let Ok(x) = <[f64; 8]>::try_from(point) else {
        return CommandOutcome::fail(EXIT_USAGE, "error: --point needs exactly 8 values\n");
    };
    let x = EulerAngles::from_array(x);
    let matrix = match (forms, closed, chirality) {
        (false, false, c) => field_frame(&x, c).map(|f| f.entries),
        (false, true, Chirality::Left) => left_field_frame_closed(&x).map(|f| f.entries),
        (false, true, Chirality::Right) => right_field_frame_closed(&x).map(|f| f.entries),
        (true, false, c) => coframe(&x, c).map(|f| f.entries.map(|v| Complex::new(v, 0.0))),
        (true, true, Chirality::Left) => left_coframe_closed(&x).map(|f| f.entries.map(|v| Complex::new(v, 0.0))),
        (true, true, Chirality::Right) => right_coframe_closed(&x).map(|f| f.entries.map(|v| Complex::new(v, 0.0))),
    };
    let matrix = match matrix {
        Ok(m) => MatrixJson::from_complex(&m),
        Err(e) => return CommandOutcome::from_error(&e),
    };
    let out = FrameJson {
        kind: if forms { "coframe" } else { "frame" }.into(),
        chirality: match chirality {
            Chirality::Left => "left",
            Chirality::Right => "right",
        }
        .into(),
        closed,
        basis_order: COORDINATE_NAMES.iter().map(|s| s.to_string()).collect(),
        point: x,
        re: matrix.re,
        im: matrix.im,
    };
    CommandOutcome::ok(to_json(&out))
}

pub fn cmd_integrate(function: &[String], method: Method, n: usize, nodes: usize, seed: u64) -> CommandOutcome {
    let f = match TestFunction::parse(function) {
        Ok(f) => f,
        Err(e) => return CommandOutcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let result = match method {
        Method::Mc => integrate_mc(|u| f.eval(u), n, seed),
        Method::Quad => integrate_quadrature(|x| f.eval(&GroupElement::new_unchecked(compose_matrix(x))), nodes),
    };
    match result {
        Ok(r) => CommandOutcome::ok(to_json(&IntegrationJson::from(r))),
        Err(e) => CommandOutcome::from_error(&e),
    }
}

pub fn cmd_volume(phi_range: Option<f64>) -> CommandOutcome {
    let mut ranges = AngleRanges::printed();
    if let Some(l) = phi_range {
        if !(l.is_finite() && l > 0.0) {
            return CommandOutcome::fail(EXIT_USAGE, "error: --phi-range must be positive\n");
        }
        ranges = ranges.with_phi_length(l);
    }
    let v = group_volume(&ranges);
    let pi5 = std::f64::consts::PI.powi(5);
    let out = VolumeJson {
        phi_range: ranges.intervals[7].length(),
        analytic: v.analytic,
        quadrature: v.quadrature,
        ratio: v.quadrature / v.analytic,
        pi5,
        analytic_over_pi5: v.analytic / pi5,
        claimed_two_pi5: 2.0 * pi5,
        analytic_over_claimed: v.analytic / (2.0 * pi5),
        note: format!(
            "separable integration of sin2β·sin2b·sin2θ·sin²θ over these ranges gives {:.6}·π⁵; \
             the published volume 2π⁵ (from taking the 5-sphere volume as π³) is {:.6} times this value",
            v.analytic / pi5,
            2.0 * pi5 / v.analytic
        ),
    };
    CommandOutcome::ok(to_json(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entrypoly_grammar() {
        let f = parse_entrypoly("1,1,conj,1;1,1,noconj,1").unwrap();
        assert_eq!(f.len(), 2);
        assert!(f[0].conj && !f[1].conj);
        let u = Matrix3c::from_fn(|i, j| Complex::new(i as f64 + 1.0, j as f64));
        assert_eq!(eval_entrypoly(&f, &u), Complex::new(1.0, 0.0));
        let g = parse_entrypoly(" 2,3,noconj,2 ").unwrap();
        assert_eq!(eval_entrypoly(&g, &u), Complex::new(2.0, 2.0).powu(2));
        for bad in [
            "",
            "1,1,conj",
            "0,1,conj,1",
            "1,4,noconj,1",
            "1,1,maybe,1",
            "1,1,conj,-1",
        ] {
            assert!(matches!(parse_entrypoly(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn matrix_json_roundtrip() {
        let u = compose_matrix(&EulerAngles::from_array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]));
        let j = MatrixJson::from_complex(&u);
        assert_eq!(j.to_matrix3().unwrap(), u);
        let bad = MatrixJson {
            re: vec![vec![1.0; 2]; 3],
            im: vec![vec![0.0; 3]; 3],
        };
        assert!(bad.to_matrix3().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["su3-geom", "sample", "--n", "0"]).exit_code, EXIT_USAGE);
        assert_eq!(run(["su3-geom", "bogus"]).exit_code, EXIT_USAGE);
        assert_eq!(run(["su3-geom", "--help"]).exit_code, EXIT_OK);
        let singular = run(["su3-geom", "frames", "--point", "0", "0", "0", "0", "0", "0", "0", "0"]);
        assert_eq!(singular.exit_code, EXIT_NUMERIC);
        assert!(singular.stderr.contains("sin2β"));
        let nonunitary = cmd_decompose(r#"{"re":[[2,0,0],[0,1,0],[0,0,1]],"im":[[0,0,0],[0,0,0],[0,0,0]]}"#);
        assert_eq!(nonunitary.exit_code, EXIT_NUMERIC);
        assert_eq!(cmd_decompose("not json").exit_code, EXIT_USAGE);
        assert_eq!(
            run(["su3-geom", "integrate", "--function", "entrypoly", "1,1"]).exit_code,
            EXIT_USAGE
        );
    }

    #[test]
    fn identity_decomposes_to_zero() {
        let out = cmd_decompose(r#"{"re":[[1,0,0],[0,1,0],[0,0,1]],"im":[[0,0,0],[0,0,0],[0,0,0]]}"#);
        assert_eq!(out.exit_code, EXIT_OK);
        let d: DecomposeJson = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(d.angles, EulerAngles::ZERO);
        assert_eq!(d.residual, 0.0);
    }
}
