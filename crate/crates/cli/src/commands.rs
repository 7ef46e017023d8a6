//! Subcommand implementations. Each returns the text to emit and the exit
//! code; hard failures come back as [`CliError`].

use isoptic::quad::{
    analyze as analyze_quad, isoptic_point, next_generation, prev_generation, reconstruct_fourth_vertex,
    reconstruct_from_pedal_w, reconstruct_from_simson_tol, similarity_ratio, simson_point, AnalysisReport,
};
use isoptic::verify::{run_suite, CaseSpec, Conditioning, ShapeKind, SuiteReport};
use isoptic::{Direction, GeomError, MaybePoint64, Point64, Quadrilateral64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::json::{to_json, QuadFile};

pub const TOOL: &str = "isoptic";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code of `verify` when any invariant fails.
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: u8,
    /// Message for the error stream.
    pub note: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0, note: None }
    }
}

pub fn check_tol(tol: f64) -> CliResult<f64> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("tolerance must lie in (0, 1), got {tol}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub tolerance: f64,
    pub input: QuadFile,
    #[serde(flatten)]
    pub report: AnalysisReport<f64>,
}

pub fn analyze(input: &QuadFile, tol: f64) -> CliResult<ReportFile> {
    let tol = check_tol(tol)?;
    let q = input.quadrilateral(tol)?;
    Ok(ReportFile {
        tool: TOOL.into(),
        version: VERSION.into(),
        tolerance: tol,
        input: input.clone(),
        report: analyze_quad(&q)?,
    })
}

pub fn cmd_analyze(input: &QuadFile, tol: f64) -> CliResult<Output> {
    Ok(Output::ok(to_json(&analyze(input, tol)?)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationEntry {
    pub index: usize,
    pub vertices: Vec<[f64; 2]>,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Degeneration {
    pub kind: String,
    /// Index of the last generation that could be formed.
    #[serde(rename = "afterGeneration")]
    pub after_generation: usize,
    pub point: Option<[f64; 2]>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateFile {
    pub tool: String,
    pub version: String,
    pub tolerance: f64,
    pub input: QuadFile,
    pub direction: Direction,
    pub r: f64,
    /// The input is generation 1.
    pub generations: Vec<GenerationEntry>,
    /// Area of each generation over the area of the one before it.
    #[serde(rename = "areaRatios")]
    pub area_ratios: Vec<f64>,
    pub degeneration: Option<Degeneration>,
}

fn entry(index: usize, q: &Quadrilateral64) -> GenerationEntry {
    GenerationEntry { index, vertices: QuadFile::from_points(&q.vertices()).vertices, area: q.area() }
}

/// Runs `steps` generation steps; a degeneration stops the run, is recorded
/// in the file and gives exit code 2.
pub fn iterate(input: &QuadFile, steps: usize, direction: Direction, tol: f64) -> CliResult<IterateFile> {
    let tol = check_tol(tol)?;
    let q = input.quadrilateral(tol)?;
    let mut generations = vec![entry(1, &q)];
    let mut area_ratios = Vec::new();
    let mut degeneration = None;
    let mut cur = q;
    for step in 0..steps {
        let next = match direction {
            Direction::Forward => next_generation(&cur),
            Direction::Backward => prev_generation(&cur),
        };
        match next {
            Ok(n) => {
                area_ratios.push(n.area() / cur.area());
                generations.push(entry(step + 2, &n));
                cur = n;
            }
            Err(e) => {
                let (kind, point) = match e {
                    GeomError::CyclicDegeneration { x, y } => ("cyclic", Some([x, y])),
                    GeomError::OrthocentricDegeneration => ("orthocentric", None),
                    _ => ("degenerate", None),
                };
                degeneration =
                    Some(Degeneration { kind: kind.into(), after_generation: step + 1, point, message: e.to_string() });
                break;
            }
        }
    }
    Ok(IterateFile {
        tool: TOOL.into(),
        version: VERSION.into(),
        tolerance: tol,
        input: input.clone(),
        direction,
        r: similarity_ratio(&q)?,
        generations,
        area_ratios,
        degeneration,
    })
}

pub fn cmd_iterate(input: &QuadFile, steps: usize, direction: Direction, tol: f64) -> CliResult<Output> {
    let file = iterate(input, steps, direction, tol)?;
    let note = file.degeneration.as_ref().map(|d| d.message.clone());
    let code = if note.is_some() { 2 } else { 0 };
    Ok(Output { text: to_json(&file), code, note })
}

pub fn verify(
    cases: usize,
    seed: u64,
    class: ShapeKind,
    tol: f64,
    conditioning: Conditioning,
) -> CliResult<SuiteReport> {
    if cases == 0 {
        return Err(CliError::Usage("--cases must be at least 1".into()));
    }
    let tol = check_tol(tol)?;
    let spec = CaseSpec { seed, shape_class: class, conditioning };
    Ok(run_suite(&spec, cases, tol)?)
}

/// Exit code 0 when every invariant passes, otherwise 3 with the failure
/// count on the error stream.
pub fn cmd_verify(
    cases: usize,
    seed: u64,
    class: ShapeKind,
    tol: f64,
    conditioning: Conditioning,
) -> CliResult<Output> {
    let report = verify(cases, seed, class, tol, conditioning)?;
    let (code, note) = if report.passed {
        (0, None)
    } else {
        let control = if report.negative_control.passed { "" } else { ", negative control failed" };
        (EXIT_VERIFY_FAILED, Some(format!("{} failures{control}", report.failures)))
    };
    Ok(Output { text: to_json(&report), code, note })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructMode {
    FourthVertex,
    PedalW,
    Simson,
}

/// Inputs of `reconstruct`; which fields are needed depends on the mode.
#[derive(Debug, Clone, Default)]
pub struct ReconstructInput {
    pub a: Option<Point64>,
    pub b: Option<Point64>,
    pub c: Option<Point64>,
    pub w: Option<Point64>,
    pub s: Option<Point64>,
    pub feet: Vec<Point64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFile {
    pub tool: String,
    pub version: String,
    pub mode: String,
    pub point: [f64; 2],
    /// Distance of the isoptic point of `A, B, C, point` from the given
    /// `W`, over the diameter.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructedQuad {
    pub tool: String,
    pub version: String,
    pub mode: String,
    pub vertices: Vec<[f64; 2]>,
    /// Distance of the recomputed center (`W` or `S`) from the given one,
    /// over the diameter.
    pub residual: Option<f64>,
}

fn need(p: Option<Point64>, flag: &str) -> CliResult<Point64> {
    p.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn need_feet(feet: &[Point64]) -> CliResult<[Point64; 4]> {
    feet.try_into().map_err(|_| CliError::Usage(format!("expected 4 --feet points, got {}", feet.len())))
}

fn center_residual(q: &Quadrilateral64, found: MaybePoint64, given: Point64) -> Option<f64> {
    found.finite().map(|p| p.dist(given) / q.diameter())
}

pub fn cmd_reconstruct(mode: ReconstructMode, input: &ReconstructInput) -> CliResult<Output> {
    let text = match mode {
        ReconstructMode::FourthVertex => {
            let (a, b, c, w) = (need(input.a, "a")?, need(input.b, "b")?, need(input.c, "c")?, need(input.w, "w")?);
            let d = reconstruct_fourth_vertex(a, b, c, w)?;
            let residual =
                Quadrilateral64::new([a, b, c, d]).ok().and_then(|q| center_residual(&q, isoptic_point(&q), w));
            to_json(&PointFile {
                tool: TOOL.into(),
                version: VERSION.into(),
                mode: "fourth-vertex".into(),
                point: [d.x, d.y],
                residual,
            })
        }
        ReconstructMode::PedalW | ReconstructMode::Simson => {
            let feet = need_feet(&input.feet)?;
            let (q, residual, name) = if mode == ReconstructMode::PedalW {
                let w = need(input.w, "w")?;
                let q = reconstruct_from_pedal_w(w, &feet)?;
                (q, center_residual(&q, isoptic_point(&q), w), "pedal-w")
            } else {
                let s = need(input.s, "s")?;
                let q = reconstruct_from_simson_tol(s, &feet, 1e-6)?;
                (q, center_residual(&q, simson_point(&q), s), "simson")
            };
            to_json(&ReconstructedQuad {
                tool: TOOL.into(),
                version: VERSION.into(),
                mode: name.into(),
                vertices: QuadFile::from_points(&q.vertices()).vertices,
                residual,
            })
        }
    };
    Ok(Output::ok(text))
}
