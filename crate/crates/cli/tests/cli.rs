use std::path::{Path, PathBuf};
use std::process::Command;

use isoptic_cli::commands::{IterateFile, PointFile, ReconstructedQuad, ReportFile};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn isoptic<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_isoptic")).args(args).output().expect("spawn isoptic");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn analyze(path: &Path) -> ReportFile {
    let run = isoptic([Path::new("analyze"), path]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    serde_json::from_str(&run.stdout).unwrap()
}

fn xy(v: &Value) -> [f64; 2] {
    [v["x"].as_f64().unwrap(), v["y"].as_f64().unwrap()]
}

fn write_quad(dir: &Path, name: &str, vertices: &[[f64; 2]]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::json!({ "vertices": vertices }).to_string()).unwrap();
    p
}

#[test]
fn analyze_square() {
    let run = isoptic([Path::new("analyze"), &data("square.json")]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["r"].as_f64().unwrap(), 0.0);
    assert_eq!(v["W"]["kind"], "finite");
    let w = xy(&v["W"]);
    assert!(w[0].abs() < 1e-12 && w[1].abs() < 1e-12);
    assert_eq!(v["shape"]["cyclic"], true);
    assert!(v["residuals"]["ptolemy_1"].as_f64().unwrap() < 1e-12);
    for r in v["triads"]["radii"].as_array().unwrap() {
        assert!((r.as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn analyze_orthocentric_reports_w_at_infinity() {
    let v: Value = serde_json::from_str(&isoptic([Path::new("analyze"), &data("orthocentric.json")]).stdout).unwrap();
    assert_eq!(v["W"]["kind"], "at_infinity");
    let d = xy(&v["W"]["direction"]);
    assert!((d[0].hypot(d[1]) - 1.0).abs() < 1e-12);
    assert!((v["r"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["shape"]["orthocentric"], true);
}

#[test]
fn analyze_example_values() {
    let report = analyze(&data("example.json"));
    assert_eq!(report.tool, "isoptic");
    assert_eq!(report.tolerance, 1e-9);
    assert!((report.report.r + 0.027243589743589744).abs() < 1e-12);
    let w = report.report.w.finite().unwrap();
    assert!((w.x - 2.29173166926677).abs() < 1e-10 && (w.y - 1.9266770670826827).abs() < 1e-10);
    let s = report.report.s.finite().unwrap();
    assert!((s.x - 16.0).abs() < 1e-9 && (s.y + 4.0).abs() < 1e-9);
    assert!(report.report.residuals["six_cs"] < 1e-12);
}

#[test]
fn report_round_trips_losslessly() {
    let run = isoptic([Path::new("analyze"), &data("example.json")]);
    let parsed: ReportFile = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(isoptic_cli::json::to_json(&parsed), run.stdout);
    let direct = isoptic_cli::commands::analyze(
        &isoptic_cli::QuadFile::parse(&std::fs::read_to_string(data("example.json")).unwrap()).unwrap(),
        1e-9,
    )
    .unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn analyze_writes_out_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = isoptic([Path::new("analyze"), &data("dart.json"), Path::new("--out"), &out]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let again = isoptic([Path::new("analyze"), &data("dart.json")]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), again.stdout);
    let v: Value = serde_json::from_str(&again.stdout).unwrap();
    assert_eq!(v["shape"]["convexity"], "concave");
    assert!(v["r"].as_f64().unwrap() > 1.0);
}

#[test]
fn bad_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let run = isoptic([Path::new("analyze"), &data("three.json")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("exactly 4 vertices"));
    let nan = dir.path().join("nan.json");
    std::fs::write(&nan, r#"{"vertices": [[0,0],[1,0],[1,1],[NaN,1]]}"#).unwrap();
    assert_eq!(isoptic([Path::new("analyze"), &nan]).code, 1);
    assert_eq!(isoptic([Path::new("analyze"), &dir.path().join("missing.json")]).code, 1);
    assert_eq!(isoptic(["analyze"]).code, 1);
    assert_eq!(isoptic([Path::new("analyze"), &data("example.json"), Path::new("--tol"), Path::new("2")]).code, 1);
    assert_eq!(isoptic(["frobnicate"]).code, 1);
    assert_eq!(isoptic(["--help"]).code, 0);
}

#[test]
fn degenerate_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_quad(dir.path(), "collinear.json", &[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]);
    let run = isoptic([Path::new("analyze"), &p]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("collinear"));
    let p = write_quad(dir.path(), "repeat.json", &[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [1.0, 1.0]]);
    assert_eq!(isoptic([Path::new("analyze"), &p]).code, 2);
}

#[test]
fn iterate_forward_area_ratios() {
    let run = isoptic([Path::new("iterate"), &data("example.json"), Path::new("--generations"), Path::new("5")]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let f: IterateFile = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(f.generations.len(), 6);
    assert_eq!(f.area_ratios.len(), 5);
    assert!(f.degeneration.is_none());
    for (k, ratio) in f.area_ratios.iter().enumerate() {
        assert!((ratio - f.r.abs()).abs() < 1e-9, "step {k}: {ratio} vs {}", f.r.abs());
        assert!((f.generations[k + 1].area / f.generations[k].area - ratio).abs() < 1e-15);
    }
}

#[test]
fn iterate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fwd: IterateFile = serde_json::from_str(
        &isoptic([Path::new("iterate"), &data("example.json"), Path::new("--generations"), Path::new("3")]).stdout,
    )
    .unwrap();
    let last = write_quad(dir.path(), "q4.json", &fwd.generations[3].vertices);
    let run = isoptic([
        Path::new("iterate"),
        &last,
        Path::new("--generations"),
        Path::new("3"),
        Path::new("--direction"),
        Path::new("backward"),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let back: IterateFile = serde_json::from_str(&run.stdout).unwrap();
    let orig = &fwd.generations[0].vertices;
    for (p, q) in back.generations[3].vertices.iter().zip(orig) {
        assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-8 * 5.0, "{p:?} vs {q:?}");
    }
}

#[test]
fn iterate_cyclic_records_degeneration() {
    let run = isoptic([Path::new("iterate"), &data("square.json"), Path::new("--generations"), Path::new("1")]);
    assert_eq!(run.code, 2);
    let f: IterateFile = serde_json::from_str(&run.stdout).unwrap();
    let d = f.degeneration.unwrap();
    assert_eq!(d.kind, "cyclic");
    assert_eq!(d.after_generation, 1);
    let [x, y] = d.point.unwrap();
    assert!(x.abs() < 1e-12 && y.abs() < 1e-12);
    assert_eq!(f.generations.len(), 1);
}

#[test]
fn iterate_backward_from_cyclic_degenerates() {
    let run = isoptic([
        Path::new("iterate"),
        &data("square.json"),
        Path::new("--generations"),
        Path::new("2"),
        Path::new("--direction"),
        Path::new("backward"),
    ]);
    assert_eq!(run.code, 2);
    let f: IterateFile = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(f.degeneration.unwrap().kind, "orthocentric");
}

#[test]
fn verify_cyclic_sections() {
    let run = isoptic(["verify", "--cases", "50", "--seed", "7", "--class", "cyclic", "--tol", "1e-8"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    let inv = v["invariants"].as_array().unwrap();
    let find = |n: &str| inv.iter().find(|i| i["name"] == n).unwrap();
    assert_eq!(find("ptolemy")["status"], "run");
    assert_eq!(find("ptolemy")["cases_run"], 50);
    assert_eq!(find("six_cs")["status"], "skipped");
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_usage_errors() {
    assert_eq!(isoptic(["verify", "--cases", "0"]).code, 1);
    assert_eq!(isoptic(["verify", "--cases", "5", "--class", "pentagon"]).code, 1);
    assert_eq!(isoptic(["verify", "--cases", "5", "--tol", "0"]).code, 1);
    assert_eq!(isoptic(["verify", "--cases", "5", "--min-angle", "0"]).code, 1);
}

#[test]
fn verify_reports_failures_with_exit_three() {
    // Impossible conditioning: every case is rejected by the generator.
    let run = isoptic(["verify", "--cases", "3", "--class", "convex-noncyclic", "--max-aspect", "1.01"]);
    assert_eq!(run.code, 3, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(run.stderr.contains("failures"));
}

#[test]
fn reconstruct_fourth_vertex() {
    let run = isoptic([
        "reconstruct",
        "--mode",
        "fourth-vertex",
        "--a",
        "0,0",
        "--b",
        "4,0",
        "--c",
        "5,3",
        "--w",
        "2.29173166926677,1.9266770670826827",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let p: PointFile = serde_json::from_str(&run.stdout).unwrap();
    assert!((p.point[0] - 1.0).hypot(p.point[1] - 4.0) < 1e-8 * 5.0);
    assert!(p.residual.unwrap() < 1e-8);
}

#[test]
fn reconstruct_underdetermined_exits_two() {
    let run =
        isoptic(["reconstruct", "--mode", "fourth-vertex", "--a", "1,1", "--b", "-1,1", "--c", "-1,-1", "--w", "0,0"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("underdetermined"));
    assert_eq!(isoptic(["reconstruct", "--mode", "fourth-vertex", "--a", "1,1"]).code, 1);
    assert_eq!(isoptic(["reconstruct", "--mode", "simson", "--s", "1;2"]).code, 1);
}

fn points_arg(pts: &[[f64; 2]]) -> Vec<String> {
    pts.iter().flat_map(|p| ["--feet".to_string(), format!("{:e},{:e}", p[0], p[1])]).collect()
}

#[test]
fn analyze_reconstruct_analyze_recovers_w() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["example.json", "dart.json", "trapezoid.json"] {
        let first = analyze(&data(name));
        let w = first.report.w.finite().unwrap();
        let feet: Vec<[f64; 2]> = first.report.pedal_w.unwrap().iter().map(|p| [p.x, p.y]).collect();
        let mut args = vec![
            "reconstruct".to_string(),
            "--mode".into(),
            "pedal-w".into(),
            "--w".into(),
            format!("{:e},{:e}", w.x, w.y),
        ];
        args.extend(points_arg(&feet));
        let run = isoptic(&args);
        assert_eq!(run.code, 0, "{name}: {}", run.stderr);
        let rec: ReconstructedQuad = serde_json::from_str(&run.stdout).unwrap();
        assert!(rec.residual.unwrap() < 1e-8);
        let path = dir.path().join(name);
        std::fs::write(&path, &run.stdout).unwrap();
        let second = analyze(&path);
        let w2 = second.report.w.finite().unwrap();
        let d = first
            .input
            .vertices
            .iter()
            .flat_map(|p| first.input.vertices.iter().map(move |q| (p[0] - q[0]).hypot(p[1] - q[1])))
            .fold(0.0, f64::max);
        assert!(w.dist(w2) < 1e-7 * d, "{name}: {w:?} vs {w2:?}");
        for (p, q) in rec.vertices.iter().zip(&first.input.vertices) {
            assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-8 * d);
        }
    }
}

#[test]
fn reconstruct_from_simson_point() {
    let first = analyze(&data("example.json"));
    let s = first.report.s.finite().unwrap();
    let feet: Vec<[f64; 2]> = first.report.pedal_s.unwrap().iter().map(|p| [p.x, p.y]).collect();
    let mut args =
        vec!["reconstruct".to_string(), "--mode".into(), "simson".into(), "--s".into(), format!("{:e},{:e}", s.x, s.y)];
    args.extend(points_arg(&feet));
    let run = isoptic(&args);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let rec: ReconstructedQuad = serde_json::from_str(&run.stdout).unwrap();
    assert!(rec.residual.unwrap() < 1e-8);
    for (p, q) in rec.vertices.iter().zip(&first.input.vertices) {
        assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-8 * 5.0);
    }
    let mut bent = feet.clone();
    bent[0][1] += 0.5;
    let mut args =
        vec!["reconstruct".to_string(), "--mode".into(), "simson".into(), "--s".into(), format!("{:e},{:e}", s.x, s.y)];
    args.extend(points_arg(&bent));
    assert_eq!(isoptic(&args).code, 2);
}
