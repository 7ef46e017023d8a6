//! Every identity as a residual, aggregated over a seeded corpus.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generator::{case_rng, random_quadrilateral, CaseSpec, ShapeKind};
use super::oracle::oracle_limit_point;
use crate::error::{GeomError, Result};
use crate::kernel::{MaybePoint, Point};
use crate::quad::residuals as res;
use crate::quad::{
    angle_sums_at_w, collinearity_defect, isodynamic_ratios, isoptic_point, isoptic_point_cs,
    isoptic_point_via_inv_iso, isoptic_point_via_inversion, isoptic_quantity, parallelogram_defect,
    pedal_quadrilateral, reconstruct_fourth_vertex, reconstruct_from_pedal_w, reconstruct_from_simson_tol,
    relative_spread, similarity_ratio, simson_point, six_cs_residual, Convexity, Quadrilateral,
};

/// Generations granted to the limit oracle.
pub const ORACLE_GENERATIONS: usize = 60;
/// Random points per case in the uniqueness probe.
pub const PROBE_POINTS: usize = 100;
/// Pedal defects a generic point must exceed, relative to the diameter.
pub const PROBE_MARGIN: f64 = 1e-5;
/// Displacement of `W` in the negative control, relative to the diameter.
pub const CONTROL_SHIFT: f64 = 1e-3;
/// Fraction of perturbed cases that must be detected.
pub const CONTROL_FRACTION: f64 = 0.99;

use ShapeKind::*;

/// Classes whose `W` is a finite point distinct from a circumcenter.
const W_CLASSES: &[ShapeKind] = &[ConvexNoncyclic, Concave, Trapezoid, Parallelogram, NearCyclic];
const NONCYCLIC: &[ShapeKind] =
    &[ConvexNoncyclic, Concave, Trapezoid, Parallelogram, Orthocentric, NearCyclic, ParallelogramPi4];
const FINITE_W: &[ShapeKind] = &[ConvexNoncyclic, Concave, Cyclic, Trapezoid, Parallelogram, NearCyclic];
const FINITE_S: &[ShapeKind] = &[ConvexNoncyclic, Concave, Cyclic, Trapezoid, NearCyclic];
const ALL: &[ShapeKind] = &ShapeKind::ALL;

/// Name, threshold as a multiple of the suite tolerance, applicable classes.
const INVARIANTS: &[(&str, f64, &[ShapeKind])] = &[
    ("r_spot", 0.1, &[Cyclic, Orthocentric, ParallelogramPi4]),
    ("area_ratio", 0.1, NONCYCLIC),
    ("supplementary_angles", 1.0, NONCYCLIC),
    ("angles_mod_pi", 1.0, NONCYCLIC),
    ("cotangent_identities", 0.1, ALL),
    ("ptolemy", 0.01, &[Cyclic]),
    ("six_cs", 1.0, W_CLASSES),
    ("oracle_agreement", 10.0, W_CLASSES),
    ("oracle_limit", 10.0, W_CLASSES),
    ("isoptic_spread", 1.0, W_CLASSES),
    ("isodynamic", 1.0, W_CLASSES),
    ("angle_sums", 1.0, W_CLASSES),
    ("inversion_agreement", 10.0, W_CLASSES),
    ("spiral_transport", 1.0, W_CLASSES),
    ("feet_circles", 1.0, W_CLASSES),
    ("cross_generation", 10.0, W_CLASSES),
    ("quadrangle_duality", 10.0, W_CLASSES),
    ("pedal_w_parallelogram", 1.0, FINITE_W),
    ("pedal_w_varignon_angles", 0.1, FINITE_W),
    ("pedal_s_collinear", 1.0, FINITE_S),
    ("uniqueness_probe", 0.0, FINITE_W),
    ("auxiliary_pedal", 1.0, &[ConvexNoncyclic, Concave, Trapezoid, NearCyclic]),
    ("prev_after_next", 1.0, NONCYCLIC),
    ("next_after_prev", 1.0, NONCYCLIC),
    ("periodicity", 1.0, &[Orthocentric, ParallelogramPi4]),
    ("reconstruct_pedal_w", 1.0, FINITE_W),
    ("reconstruct_simson", 1.0, &[ConvexNoncyclic, Concave, Cyclic, NearCyclic]),
    ("reconstruct_fourth_vertex", 1.0, W_CLASSES),
];

/// Invariants whose inputs lie within about `noncyclicity * D` of each other
/// on near-cyclic quadrilaterals (the second generation, the triad centers
/// around `W`, the image under inversion at `W`, the generation before the
/// first). Double precision leaves them about `eps / noncyclicity` accurate,
/// so on that class they are reported without gating the suite.
const ILL_CONDITIONED_NEAR_CYCLIC: &[&str] = &[
    "supplementary_angles",
    "angles_mod_pi",
    "isoptic_spread",
    "spiral_transport",
    "quadrangle_duality",
    "prev_after_next",
    "next_after_prev",
    "reconstruct_fourth_vertex",
    "cross_generation",
    "auxiliary_pedal",
];

fn advisory(name: &str, kind: ShapeKind) -> bool {
    kind == NearCyclic && ILL_CONDITIONED_NEAR_CYCLIC.contains(&name)
}

/// `|r|` bands on which the four constructions of `W` are compared.
pub fn in_agreement_band(r: f64) -> bool {
    let a = r.abs();
    (0.05..=0.9).contains(&a) || (1.1..=5.0).contains(&a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Run,
    /// Run and reported, but excluded from the pass/fail verdict.
    Advisory,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub name: String,
    pub status: Status,
    pub threshold: f64,
    pub cases_run: usize,
    pub max_residual: f64,
    /// Case index attaining `max_residual`.
    pub worst_case: Option<u64>,
    pub failures: usize,
    /// Cases where the construction itself failed.
    pub degenerate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub cases_run: usize,
    pub detected: usize,
    pub fraction: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub spec: CaseSpec,
    pub n_cases: usize,
    pub tol: f64,
    pub generator_failures: usize,
    pub invariants: Vec<InvariantResult>,
    pub negative_control: NegativeControl,
    /// Failed, degenerate and ungenerated cases over all invariants.
    pub failures: usize,
    pub passed: bool,
}

impl SuiteReport {
    pub fn invariant(&self, name: &str) -> Option<&InvariantResult> {
        self.invariants.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, Copy)]
enum Outcome {
    Value(f64),
    Degenerate,
    Skip,
}

struct CaseOutcome {
    values: Vec<Outcome>,
    /// Negative control: `Some(detected)` when it ran.
    control: Option<bool>,
}

pub fn run_suite(spec: &CaseSpec, n_cases: usize, tol: f64) -> Result<SuiteReport> {
    spec.validate()?;
    if n_cases == 0 {
        return Err(GeomError::InvalidSpec("n_cases must be positive".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(GeomError::InvalidSpec(format!("tolerance {tol} must be positive")));
    }
    let cases: Vec<Option<CaseOutcome>> = (0..n_cases as u64)
        .into_par_iter()
        .map(|i| random_quadrilateral(spec, i).ok().map(|q| evaluate_case(spec, i, &q)))
        .collect();

    let generator_failures = cases.iter().filter(|c| c.is_none()).count();
    let mut invariants = Vec::with_capacity(INVARIANTS.len());
    for (k, (name, scale, classes)) in INVARIANTS.iter().enumerate() {
        let threshold = scale * tol;
        let mut out = InvariantResult {
            name: name.to_string(),
            status: Status::Skipped,
            threshold,
            cases_run: 0,
            max_residual: 0.0,
            worst_case: None,
            failures: 0,
            degenerate: 0,
        };
        if classes.contains(&spec.shape_class) {
            out.status = if advisory(name, spec.shape_class) { Status::Advisory } else { Status::Run };
            for (i, case) in cases.iter().enumerate() {
                let Some(case) = case else { continue };
                match case.values[k] {
                    Outcome::Value(v) => {
                        out.cases_run += 1;
                        if v > out.max_residual || out.worst_case.is_none() {
                            out.max_residual = v;
                            out.worst_case = Some(i as u64);
                        }
                        if v > threshold {
                            out.failures += 1;
                        }
                    }
                    Outcome::Degenerate => out.degenerate += 1,
                    Outcome::Skip => {}
                }
            }
        }
        invariants.push(out);
    }

    let runs: Vec<bool> = cases.iter().flatten().filter_map(|c| c.control).collect();
    let detected = runs.iter().filter(|d| **d).count();
    let fraction = if runs.is_empty() { 1.0 } else { detected as f64 / runs.len() as f64 };
    let negative_control =
        NegativeControl { cases_run: runs.len(), detected, fraction, passed: fraction >= CONTROL_FRACTION };

    let failures = generator_failures
        + invariants.iter().filter(|r| r.status == Status::Run).map(|r| r.failures + r.degenerate).sum::<usize>();
    let passed = failures == 0 && negative_control.passed;
    Ok(SuiteReport { spec: *spec, n_cases, tol, generator_failures, invariants, negative_control, failures, passed })
}

fn value(r: Result<f64>) -> Outcome {
    match r {
        Ok(v) if v.is_finite() => Outcome::Value(v),
        _ => Outcome::Degenerate,
    }
}

fn finite(m: MaybePoint<f64>) -> Option<Point<f64>> {
    m.finite()
}

fn evaluate_case(spec: &CaseSpec, index: u64, q: &Quadrilateral<f64>) -> CaseOutcome {
    let kind = spec.shape_class;
    let d = q.diameter();
    let r = similarity_ratio(q);
    let w = finite(isoptic_point(q));
    let s = finite(simson_point(q));
    let mut control = None;
    let values = INVARIANTS
        .iter()
        .map(|(name, _, classes)| {
            if !classes.contains(&kind) {
                return Outcome::Skip;
            }
            let need_w = |f: &dyn Fn(Point<f64>) -> Result<f64>| w.map_or(Outcome::Degenerate, |w| value(f(w)));
            let need_s = |f: &dyn Fn(Point<f64>) -> Result<f64>| s.map_or(Outcome::Degenerate, |s| value(f(s)));
            match *name {
                "r_spot" => value(r.clone().map(|r| match kind {
                    Orthocentric => (r - 1.0).abs(),
                    ParallelogramPi4 => (r + 1.0).abs(),
                    _ => r.abs(),
                })),
                "area_ratio" => value(res::area_ratio(q)),
                "supplementary_angles" if q.convexity() == Convexity::Convex => value(res::supplementary_angles(q)),
                "supplementary_angles" => Outcome::Skip,
                "angles_mod_pi" => value(res::angles_mod_pi(q)),
                "cotangent_identities" => value(res::cotangent_identities(q).map(|c| c[0].max(c[1]))),
                "ptolemy" => {
                    let p = res::ptolemy(q);
                    value(Ok(p[0].max(p[1])))
                }
                "six_cs" => need_w(&|w| six_cs_residual(q, w)),
                "oracle_agreement" => match &r {
                    Ok(r) if in_agreement_band(*r) => value(four_way_agreement(q)),
                    Ok(_) => Outcome::Skip,
                    Err(_) => Outcome::Degenerate,
                },
                "oracle_limit" => match &r {
                    Ok(r) if !(0.9..1.1).contains(&r.abs()) => need_w(&|w| {
                        let o = oracle_limit_point(q, ORACLE_GENERATIONS)?.require()?;
                        Ok(o.dist(w) / d)
                    }),
                    Ok(_) => Outcome::Skip,
                    Err(_) => Outcome::Degenerate,
                },
                "isoptic_spread" => need_w(&|w| Ok(relative_spread(&isoptic_quantity(q, w)))),
                "isodynamic" => need_w(&|w| Ok(isodynamic_ratios(q, w))),
                "angle_sums" => need_w(&|w| Ok(angle_sums_at_w(q, w))),
                "inversion_agreement" => need_w(&|w| res::inversion_agreement(q, w)),
                "spiral_transport" => need_w(&|w| res::spiral_transport(q, w)),
                "feet_circles" => need_w(&|w| res::feet_circles(q, w)),
                "cross_generation" => need_w(&|w| res::cross_generation(q, w)),
                "quadrangle_duality" => need_w(&|w| res::quadrangle_duality_check(q, w, d)),
                "pedal_w_parallelogram" => need_w(&|w| Ok(res::pedal_parallelogram(q, w))),
                "pedal_w_varignon_angles" => need_w(&|w| Ok(res::varignon_angles(q, w))),
                "pedal_s_collinear" => need_s(&|s| Ok(res::pedal_collinear(q, s))),
                "auxiliary_pedal" => need_w(&|w| res::auxiliary_pedal(q, w)),
                "uniqueness_probe" => value(Ok(uniqueness_probe(q, spec.seed, index) as f64)),
                "prev_after_next" => value(res::prev_after_next(q)),
                "next_after_prev" => value(res::next_after_prev(q)),
                "periodicity" => value(res::periodicity(q)),
                "reconstruct_pedal_w" => need_w(&|w| {
                    let back = reconstruct_from_pedal_w(w, &pedal_quadrilateral(q, w))?;
                    Ok(labelled_distance(q, &back))
                }),
                "reconstruct_simson" => need_s(&|s| {
                    let back = reconstruct_from_simson_tol(s, &pedal_quadrilateral(q, s), 1e-6)?;
                    Ok(labelled_distance(q, &back))
                }),
                "reconstruct_fourth_vertex" => need_w(&|w| {
                    let [a, b, c, dd] = q.vertices();
                    Ok(reconstruct_fourth_vertex(a, b, c, w)?.dist(dd) / d)
                }),
                _ => unreachable!("invariant table and evaluator disagree on {name}"),
            }
        })
        .collect();
    if W_CLASSES.contains(&kind) {
        if let Some(w) = w {
            let mut rng = case_rng(spec.seed, index, 2);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let shifted = w + Point::new(phi.cos(), phi.sin()) * (CONTROL_SHIFT * d);
            control = Some(six_cs_residual(q, shifted).map_or(true, |v| v > PROBE_MARGIN));
        }
    }
    CaseOutcome { values, control }
}

/// Pairwise spread of the circle-of-similitude, limit, inversive and
/// conjugate-inversive constructions of `W`, over the diameter.
pub fn four_way_agreement(q: &Quadrilateral<f64>) -> Result<f64> {
    let pts = [
        isoptic_point_cs(q)?.require()?,
        oracle_limit_point(q, ORACLE_GENERATIONS)?.require()?,
        isoptic_point_via_inversion(q)?.require()?,
        isoptic_point_via_inv_iso(q)?.require()?,
    ];
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            worst = worst.max(pts[i].dist(pts[j]));
        }
    }
    Ok(worst / q.diameter())
}

/// Number of random points whose pedal quadrilateral is within
/// [`PROBE_MARGIN`] of a parallelogram or of a line.
pub fn uniqueness_probe(q: &Quadrilateral<f64>, seed: u64, index: u64) -> usize {
    let mut rng = case_rng(seed, index, 1);
    let (c, d) = (q.centroid(), q.diameter());
    (0..PROBE_POINTS)
        .filter(|_| {
            let rad = d * rng.random::<f64>().sqrt();
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let p = c + Point::new(t.cos(), t.sin()) * rad;
            let ped = pedal_quadrilateral(q, p);
            parallelogram_defect(&ped) <= PROBE_MARGIN * d || collinearity_defect(&ped) <= PROBE_MARGIN * d
        })
        .count()
}

fn labelled_distance(a: &Quadrilateral<f64>, b: &Quadrilateral<f64>) -> f64 {
    let (va, vb) = (a.vertices(), b.vertices());
    (0..4).fold(0.0f64, |m, i| m.max(va[i].dist(vb[i]))) / a.diameter()
}
