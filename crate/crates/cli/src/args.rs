use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use isoptic::verify::ShapeKind;
use isoptic::{Direction, Point64};

use crate::commands::ReconstructMode;

#[derive(Debug, Parser)]
#[command(name = "isoptic", version, about = "Isoptic point, Simson point and generation iteration of quadrilaterals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report W, S, r, shape class, triad circles, pedals and residuals.
    Analyze {
        /// Quadrilateral file (`-` reads standard input).
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List successive generations and their area ratios.
    Iterate {
        file: PathBuf,
        /// Number of steps after the input generation.
        #[arg(long)]
        generations: usize,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded invariant suite on random quadrilaterals.
    Verify {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// convex-noncyclic, concave, cyclic, trapezoid, parallelogram,
        /// orthocentric, near-cyclic or parallelogram-pi4.
        #[arg(long, default_value = "convex-noncyclic")]
        class: ShapeKind,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Smallest accepted interior angle in radians.
        #[arg(long, default_value_t = 0.2)]
        min_angle: f64,
        /// Largest accepted diameter over shortest side.
        #[arg(long, default_value_t = 10.0)]
        max_aspect: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an SVG figure.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated: quad, triads, cs, w, s, pedal-w, pedal-s,
        /// varignon, simson, generations.
        #[arg(long, default_value = "quad,triads,w")]
        layers: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Rebuild a quadrilateral (or its fourth vertex) from a center and
    /// partial data. Points are written `X,Y`.
    Reconstruct {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        a: Option<Point64>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        b: Option<Point64>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        c: Option<Point64>,
        /// Isoptic point (fourth-vertex, pedal-w).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        w: Option<Point64>,
        /// Simson point (simson).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        s: Option<Point64>,
        /// Pedal feet on AB, BC, CD, DA; repeat four times.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        feet: Vec<Point64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Forward => Direction::Forward,
            DirectionArg::Backward => Direction::Backward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    FourthVertex,
    PedalW,
    Simson,
}

impl From<ModeArg> for ReconstructMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::FourthVertex => ReconstructMode::FourthVertex,
            ModeArg::PedalW => ReconstructMode::PedalW,
            ModeArg::Simson => ReconstructMode::Simson,
        }
    }
}

pub fn parse_point(s: &str) -> Result<Point64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y] = parts.as_slice() else {
        return Err(format!("expected X,Y, got `{s}`"));
    };
    let x: f64 = x.parse().map_err(|e| format!("bad x in `{s}`: {e}"))?;
    let y: f64 = y.parse().map_err(|e| format!("bad y in `{s}`: {e}"))?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(format!("non-finite point `{s}`"));
    }
    Ok(Point64::new(x, y))
}
