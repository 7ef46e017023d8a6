//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Corpora are drawn with seed 42 and default conditioning.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use isoptic::quad::residuals::{
    cotangent_identities, cross_generation, next_after_prev, pedal_collinear, pedal_parallelogram, periodicity,
    prev_after_next, ptolemy, quadrangle_duality_check, varignon_angles,
};
use isoptic::quad::{
    isodynamic_ratios, isoptic_point, isoptic_quantity, next_generation, pedal_quadrilateral,
    reconstruct_fourth_vertex, reconstruct_from_pedal_w, reconstruct_from_simson_tol, relative_spread,
    similarity_ratio, simson_point, six_cs_residual,
};
use isoptic::verify::{four_way_agreement, random_quadrilateral, uniqueness_probe, CaseSpec, ShapeKind};
use isoptic::{GeomError, Point64, Quadrilateral64};

const SEED: u64 = 42;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

/// Tracks the worst value of a residual against a bound.
struct Worst {
    label: &'static str,
    bound: f64,
    worst: f64,
    cases: usize,
    errors: usize,
}

impl Worst {
    fn new(label: &'static str, bound: f64) -> Self {
        Self { label, bound, worst: 0.0, cases: 0, errors: 0 }
    }

    fn add(&mut self, v: Result<f64, GeomError>) {
        self.cases += 1;
        match v {
            Ok(v) if v.is_finite() => self.worst = self.worst.max(v),
            _ => self.errors += 1,
        }
    }

    fn ok(&self) -> bool {
        self.errors == 0 && self.worst < self.bound && self.cases > 0
    }

    fn summary(&self) -> String {
        let err = if self.errors > 0 { format!(", {} errors", self.errors) } else { String::new() };
        format!("{} max {:.1e} < {:.0e} over {}{err}", self.label, self.worst, self.bound, self.cases)
    }
}

fn verdict(checks: &[&Worst]) -> Check {
    let text = checks.iter().map(|w| w.summary()).collect::<Vec<_>>().join("; ");
    if checks.iter().all(|w| w.ok()) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn corpus(kind: ShapeKind, n: usize) -> Vec<Quadrilateral64> {
    let spec = CaseSpec::new(SEED, kind);
    (0..n as u64).map(|i| random_quadrilateral(&spec, i).unwrap_or_else(|e| panic!("{kind} case {i}: {e}"))).collect()
}

fn generic(n: usize) -> Vec<Quadrilateral64> {
    let mut v = corpus(ShapeKind::ConvexNoncyclic, n);
    v.extend(corpus(ShapeKind::Concave, n));
    v
}

fn w_of(q: &Quadrilateral64) -> Result<Point64, GeomError> {
    isoptic_point(q).require()
}

fn labelled(a: &[Point64; 4], b: &[Point64; 4], d: f64) -> f64 {
    (0..4).fold(0.0f64, |m, i| m.max(a[i].dist(b[i]))) / d
}

fn quad(xy: [[f64; 2]; 4]) -> Quadrilateral64 {
    Quadrilateral64::from_xy(xy).expect("valid fixed quadrilateral")
}

fn spot_values() -> Check {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let fixed = [
        (quad([[0.0, 0.0], [2.0, 0.0], [2.0 + s, s], [s, s]]), -1.0),
        (quad([[0.0, 0.0], [4.0, 0.0], [2.0, 3.0], [2.0, 4.0 / 3.0]]), 1.0),
        (quad([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]), 0.0),
    ];
    let mut w = Worst::new("|r - target|", 1e-9);
    for (q, target) in fixed {
        w.add(similarity_ratio(&q).map(|r| (r - target).abs()));
    }
    for (kind, target) in
        [(ShapeKind::ParallelogramPi4, -1.0), (ShapeKind::Orthocentric, 1.0), (ShapeKind::Cyclic, 0.0)]
    {
        for q in corpus(kind, 1000) {
            w.add(similarity_ratio(&q).map(|r| (r - target).abs()));
        }
    }
    verdict(&[&w])
}

fn area_ratio() -> Check {
    let mut w = Worst::new("| |r| - A2/A1 |", 1e-9);
    for q in corpus(ShapeKind::ConvexNoncyclic, 1000) {
        w.add(similarity_ratio(&q).and_then(|r| Ok((r.abs() - next_generation(&q)?.area() / q.area()).abs())));
    }
    verdict(&[&w])
}

fn six_circles() -> Check {
    let mut w = Worst::new("six-CS residual", 1e-8);
    for q in generic(1000) {
        w.add(w_of(&q).and_then(|p| six_cs_residual(&q, p)));
    }
    verdict(&[&w])
}

fn in_band(r: f64) -> bool {
    let a = r.abs();
    (0.05..=0.9).contains(&a) || (1.1..=5.0).contains(&a)
}

fn four_way() -> Check {
    let mut w = Worst::new("pairwise W spread / D", 1e-7);
    for kind in [ShapeKind::ConvexNoncyclic, ShapeKind::Concave] {
        let spec = CaseSpec::new(SEED, kind);
        let mut taken = 0;
        let mut index = 0;
        while taken < 500 {
            let q = random_quadrilateral(&spec, index).expect("generator");
            index += 1;
            if similarity_ratio(&q).map(in_band).unwrap_or(false) {
                taken += 1;
                w.add(four_way_agreement(&q));
            }
        }
    }
    verdict(&[&w])
}

fn isoptic_isodynamic() -> Check {
    let mut spread = Worst::new("d_i/R_i spread", 1e-8);
    let mut iso = Worst::new("isodynamic residual", 1e-8);
    for q in generic(1000) {
        let w = w_of(&q);
        spread.add(w.clone().map(|p| relative_spread(&isoptic_quantity(&q, p))));
        iso.add(w.map(|p| isodynamic_ratios(&q, p)));
    }
    verdict(&[&spread, &iso])
}

fn pedal_dichotomy() -> Check {
    let mut par = Worst::new("pedal(W) parallelogram / D", 1e-8);
    let mut ang = Worst::new("Varignon angles", 1e-9);
    let mut lin = Worst::new("pedal(S) line / D", 1e-8);
    let mut probe = Worst::new("random points with a near-parallelogram or near-collinear pedal, per quad", 1.0);
    for (i, q) in generic(1000).iter().enumerate() {
        let w = w_of(q);
        par.add(w.clone().map(|p| pedal_parallelogram(q, p)));
        ang.add(w.map(|p| varignon_angles(q, p)));
        lin.add(simson_point(q).require().map(|s| pedal_collinear(q, s)));
        probe.add(Ok(uniqueness_probe(q, SEED, i as u64) as f64));
    }
    verdict(&[&par, &ang, &lin, &probe])
}

fn round_trips() -> Check {
    let mut pn = Worst::new("prev(next)", 1e-8);
    let mut np = Worst::new("next(prev)", 1e-8);
    let mut fourth = Worst::new("fourth vertex", 1e-8);
    let mut ped = Worst::new("pedal-W rebuild", 1e-8);
    let mut sim = Worst::new("Simson rebuild", 1e-8);
    for q in generic(100) {
        let (v, d) = (q.vertices(), q.diameter());
        pn.add(prev_after_next(&q));
        np.add(next_after_prev(&q));
        let w = w_of(&q);
        fourth.add(w.clone().and_then(|p| Ok(reconstruct_fourth_vertex(v[0], v[1], v[2], p)?.dist(v[3]) / d)));
        ped.add(w.and_then(|p| {
            let r = reconstruct_from_pedal_w(p, &pedal_quadrilateral(&q, p))?;
            Ok(labelled(&r.vertices(), &v, d))
        }));
        sim.add(simson_point(&q).require().and_then(|s| {
            let r = reconstruct_from_simson_tol(s, &pedal_quadrilateral(&q, s), 1e-6)?;
            Ok(labelled(&r.vertices(), &v, d))
        }));
    }
    verdict(&[&pn, &np, &fourth, &ped, &sim])
}

fn periodicity_and_identities() -> Check {
    let mut period = Worst::new("Q3 vs Q1", 1e-8);
    for kind in [ShapeKind::ParallelogramPi4, ShapeKind::Orthocentric] {
        for q in corpus(kind, 200) {
            period.add(periodicity(&q));
        }
    }
    let mut pt = Worst::new("Ptolemy", 1e-10);
    for q in corpus(ShapeKind::Cyclic, 1000) {
        let [a, b] = ptolemy(&q);
        pt.add(Ok(a.max(b)));
    }
    let mut cot = Worst::new("cotangent identities", 1e-9);
    for q in generic(500) {
        cot.add(cotangent_identities(&q).map(|[a, b]| a.max(b)));
    }
    verdict(&[&period, &pt, &cot])
}

fn cross_generation_and_duality() -> Check {
    let mut cross = Worst::new("cross-generation CS", 1e-7);
    let mut dual = Worst::new("quadrangle duality", 1e-7);
    for q in generic(100) {
        let w = w_of(&q);
        cross.add(w.clone().and_then(|p| cross_generation(&q, p)));
        dual.add(w.and_then(|p| quadrangle_duality_check(&q, p, q.diameter())));
    }
    verdict(&[&cross, &dual])
}

fn isoptic_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_isoptic")).args(args).output().expect("spawn isoptic");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_determinism() -> Check {
    let args = ["verify", "--cases", "1000", "--seed", "42", "--class", "convex-noncyclic", "--tol", "1e-8"];
    let (c1, r1) = isoptic_cli(&args);
    let (c2, r2) = isoptic_cli(&args);
    let mut notes = vec![format!("verify exit codes {c1}/{c2}, reports identical: {}", r1 == r2)];
    let mut ok = c1 == 0 && c2 == 0 && r1 == r2 && !r1.is_empty();

    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let dir = std::env::temp_dir().join(format!("isoptic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let all = "quad,triads,cs,w,s,pedal-w,pedal-s,varignon,simson,generations";
    let golden = [
        ("example.json", "quad,triads,w", "example_triads.svg"),
        ("example.json", all, "example_all.svg"),
        ("trapezoid.json", "quad,simson,s", "trapezoid_simson.svg"),
        ("dart.json", "quad,cs,w,generations", "dart_generations.svg"),
    ];
    let mut stable = 0;
    for (input, layers, name) in golden {
        let out = dir.join(name);
        let input = root.join("data").join(input);
        let (code, _) =
            isoptic_cli(&["render", input.to_str().unwrap(), "--out", out.to_str().unwrap(), "--layers", layers]);
        let same = code == 0 && std::fs::read(&out).ok() == std::fs::read(root.join("golden").join(name)).ok();
        stable += usize::from(same);
        ok &= same;
    }
    let _ = std::fs::remove_dir_all(&dir);
    notes.push(format!("golden SVGs byte-stable {stable}/{}", golden.len()));
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("spot values of r", spot_values),
        ("area-ratio law", area_ratio),
        ("six-circle concurrence", six_circles),
        ("four-way W agreement", four_way),
        ("isoptic and isodynamic properties", isoptic_isodynamic),
        ("pedal dichotomy", pedal_dichotomy),
        ("round trips and reconstructions", round_trips),
        ("periodicity, Ptolemy, cotangent identities", periodicity_and_identities),
        ("cross-generation CS and duality", cross_generation_and_duality),
        ("CLI determinism and golden SVGs", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} {:>2} {name} [{secs:.1}s]: {detail}", i + 1);
        failed += usize::from(result.is_err());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
