//! Deterministic SVG figures of a quadrilateral and its derived objects.

use std::fmt::Write;
use std::str::FromStr;

use isoptic::quad::{
    all_cs, best_fit_line, isoptic_point, next_generation, pedal_quadrilateral, prev_generation, similarity_ratio,
    simson_point, triad_circles, varignon,
};
use isoptic::{GenCircle64, Point64, Quadrilateral64};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Quad,
    Triads,
    Cs,
    W,
    S,
    PedalW,
    PedalS,
    Varignon,
    Simson,
    Generations,
}

impl Layer {
    pub const ALL: [Layer; 10] = [
        Layer::Quad,
        Layer::Triads,
        Layer::Cs,
        Layer::W,
        Layer::S,
        Layer::PedalW,
        Layer::PedalS,
        Layer::Varignon,
        Layer::Simson,
        Layer::Generations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Layer::Quad => "quad",
            Layer::Triads => "triads",
            Layer::Cs => "cs",
            Layer::W => "w",
            Layer::S => "s",
            Layer::PedalW => "pedal-w",
            Layer::PedalS => "pedal-s",
            Layer::Varignon => "varignon",
            Layer::Simson => "simson",
            Layer::Generations => "generations",
        }
    }

    fn color(self) -> &'static str {
        match self {
            Layer::Quad => "#1b1b1b",
            Layer::Triads => "#1f77b4",
            Layer::Cs => "#9467bd",
            Layer::W => "#d62728",
            Layer::S => "#2ca02c",
            Layer::PedalW => "#ff7f0e",
            Layer::PedalS => "#17becf",
            Layer::Varignon => "#8c564b",
            Layer::Simson => "#2ca02c",
            Layer::Generations => "#7f7f7f",
        }
    }

    fn dashed(self) -> bool {
        matches!(self, Layer::PedalS | Layer::Varignon | Layer::Generations)
    }
}

impl FromStr for Layer {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Layer::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Layer::ALL.iter().map(|l| l.name()).collect();
            CliError::Usage(format!("unknown layer `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Comma-separated layer names; repeats are dropped, order is kept.
pub fn parse_layers(spec: &str) -> CliResult<Vec<Layer>> {
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim) {
        let layer: Layer = name.parse()?;
        if !out.contains(&layer) {
            out.push(layer);
        }
    }
    Ok(out)
}

enum Shape {
    Polygon(Vec<Point64>),
    Circle(Point64, f64),
    /// Infinite line through a point with a direction, clipped to the view.
    Line(Point64, Point64),
    Segment(Point64, Point64),
    Marker(Point64),
    Label {
        at: Point64,
        away_from: Point64,
        text: &'static str,
    },
}

/// Circles larger than this multiple of the quadrilateral's diameter are
/// drawn but do not widen the view.
const MAX_FIT_RADIUS: f64 = 10.0;
const MARGIN: f64 = 0.05;
const WIDTH_PX: f64 = 800.0;

fn generalized(g: &GenCircle64) -> Option<Shape> {
    if g.is_line() {
        let (n, e) = g.line_normal().ok()?;
        Some(Shape::Line(n * e, n.perp()))
    } else {
        Some(Shape::Circle(g.center().ok()?, g.radius().ok()?))
    }
}

fn layer_shapes(q: &Quadrilateral64, layer: Layer) -> Vec<Shape> {
    let v = q.vertices();
    let w = isoptic_point(q).finite();
    let s = simson_point(q).finite();
    match layer {
        Layer::Quad => {
            let c = q.centroid();
            let mut out = vec![Shape::Polygon(v.to_vec())];
            for (p, text) in v.iter().zip(["A", "B", "C", "D"]) {
                out.push(Shape::Label { at: *p, away_from: c, text });
            }
            out
        }
        Layer::Triads => match triad_circles(q) {
            Ok(t) => (0..4).map(|i| Shape::Circle(t.centers[i], t.radii[i])).collect(),
            Err(_) => Vec::new(),
        },
        Layer::Cs => all_cs(q).map(|cs| cs.iter().filter_map(generalized).collect()).unwrap_or_default(),
        Layer::W => w.map(Shape::Marker).into_iter().collect(),
        Layer::S => s.map(Shape::Marker).into_iter().collect(),
        Layer::PedalW => match w {
            Some(w) => {
                let feet = pedal_quadrilateral(q, w);
                let mut out = vec![Shape::Polygon(feet.to_vec())];
                out.extend(feet.iter().map(|f| Shape::Segment(w, *f)));
                out
            }
            None => Vec::new(),
        },
        Layer::PedalS => match s {
            Some(s) => pedal_quadrilateral(q, s).iter().map(|f| Shape::Segment(s, *f)).collect(),
            None => Vec::new(),
        },
        Layer::Varignon => vec![Shape::Polygon(varignon(q).to_vec())],
        Layer::Simson => match s {
            Some(s) => {
                let feet = pedal_quadrilateral(q, s);
                let (c, dir, _) = best_fit_line(&feet);
                let mut out = vec![Shape::Line(c, dir)];
                out.extend(feet.iter().map(|f| Shape::Marker(*f)));
                out
            }
            None => Vec::new(),
        },
        Layer::Generations => {
            let forward = similarity_ratio(q).map(|r| r.abs() <= 1.0).unwrap_or(true);
            let mut out = Vec::new();
            let mut cur = *q;
            for _ in 0..3 {
                let next = if forward { next_generation(&cur) } else { prev_generation(&cur) };
                match next {
                    Ok(n) => {
                        out.push(Shape::Polygon(n.vertices().to_vec()));
                        cur = n;
                    }
                    Err(_) => break,
                }
            }
            out
        }
    }
}

struct Bounds {
    min: Point64,
    max: Point64,
}

impl Bounds {
    fn empty() -> Self {
        Self {
            min: Point64::new(f64::INFINITY, f64::INFINITY),
            max: Point64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Point64) {
        self.min = Point64::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Point64::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    fn is_empty(&self) -> bool {
        self.min.x > self.max.x
    }

    fn extent(&self) -> f64 {
        (self.max.x - self.min.x).max(self.max.y - self.min.y)
    }
}

fn fit(q: &Quadrilateral64, groups: &[(Layer, Vec<Shape>)]) -> Bounds {
    let d = q.diameter();
    let mut b = Bounds::empty();
    for shape in groups.iter().flat_map(|(_, s)| s) {
        match shape {
            Shape::Polygon(pts) => pts.iter().for_each(|p| b.add(*p)),
            Shape::Circle(c, r) if *r <= MAX_FIT_RADIUS * d => {
                b.add(*c - Point64::new(*r, *r));
                b.add(*c + Point64::new(*r, *r));
            }
            Shape::Segment(p, q) => {
                b.add(*p);
                b.add(*q);
            }
            Shape::Marker(p) | Shape::Label { at: p, .. } => b.add(*p),
            _ => {}
        }
    }
    if b.is_empty() {
        q.vertices().iter().for_each(|p| b.add(*p));
    }
    if b.extent() < 1e-6 * d {
        let c = b.min.midpoint(b.max);
        let h = Point64::new(0.5 * d, 0.5 * d);
        b = Bounds { min: c - h, max: c + h };
    }
    let pad = MARGIN * b.extent();
    let pad = Point64::new(pad, pad);
    Bounds { min: b.min - pad, max: b.max + pad }
}

/// Part of the line `p + t dir` inside the box, if any.
fn clip(p: Point64, dir: Point64, b: &Bounds) -> Option<(Point64, Point64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (o, d, min, max) in [(p.x, dir.x, b.min.x, b.max.x), (p.y, dir.y, b.min.y, b.max.y)] {
        if d.abs() < 1e-15 {
            if o < min || o > max {
                return None;
            }
        } else {
            let (t0, t1) = ((min - o) / d, (max - o) / d);
            lo = lo.max(t0.min(t1));
            hi = hi.min(t0.max(t1));
        }
    }
    (lo < hi).then(|| (p + dir * lo, p + dir * hi))
}

struct Fmt {
    decimals: usize,
}

impl Fmt {
    fn num(&self, v: f64) -> String {
        let s = format!("{:.*}", self.decimals, v);
        if s.trim_start_matches('-').trim_matches(|c| c == '0' || c == '.').is_empty() {
            format!("{:.*}", self.decimals, 0.0)
        } else {
            s
        }
    }

    /// SVG coordinates: y points down.
    fn xy(&self, p: Point64) -> (String, String) {
        (self.num(p.x), self.num(-p.y))
    }
}

/// SVG document for the requested layers, one `<g id="layer-NAME">` group
/// per layer in request order. Points are drawn as cross-shaped paths with
/// class `point`, so `<circle>` elements are always geometric circles.
pub fn render(q: &Quadrilateral64, layers: &[Layer]) -> String {
    let groups: Vec<(Layer, Vec<Shape>)> = layers.iter().map(|&l| (l, layer_shapes(q, l))).collect();
    let b = fit(q, &groups);
    let (w, h) = (b.max.x - b.min.x, b.max.y - b.min.y);
    let unit = w.max(h);
    let f = Fmt { decimals: (6 - unit.log10().floor() as i32).clamp(0, 15) as usize };
    let stroke = f.num(0.003 * unit);
    let mark = 0.012 * unit;
    let font = f.num(0.035 * unit);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        WIDTH_PX as u32,
        (WIDTH_PX * h / w).round() as u32,
        f.num(b.min.x),
        f.num(-b.max.y),
        f.num(w),
        f.num(h)
    );
    for (layer, shapes) in &groups {
        let dash = if layer.dashed() {
            format!(" stroke-dasharray=\"{} {}\"", f.num(0.012 * unit), f.num(0.008 * unit))
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "  <g id=\"layer-{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke}\"{dash}>",
            layer.name(),
            layer.color()
        );
        for shape in shapes {
            match shape {
                Shape::Polygon(pts) => {
                    let pts: Vec<String> = pts
                        .iter()
                        .map(|p| {
                            let (x, y) = f.xy(*p);
                            format!("{x},{y}")
                        })
                        .collect();
                    let _ = writeln!(out, "    <polygon points=\"{}\"/>", pts.join(" "));
                }
                Shape::Circle(c, r) => {
                    let (x, y) = f.xy(*c);
                    let _ = writeln!(out, "    <circle cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>", f.num(*r));
                }
                Shape::Line(p, d) => {
                    if let Some((a, e)) = clip(*p, *d, &b) {
                        let ((x1, y1), (x2, y2)) = (f.xy(a), f.xy(e));
                        let _ = writeln!(out, "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
                    }
                }
                Shape::Segment(a, e) => {
                    let ((x1, y1), (x2, y2)) = (f.xy(*a), f.xy(*e));
                    let _ = writeln!(out, "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
                }
                Shape::Marker(p) => {
                    let (l, r) = (f.num(p.x - mark), f.num(p.x + mark));
                    let (t, bt) = (f.num(-p.y - mark), f.num(-p.y + mark));
                    let (x, y) = f.xy(*p);
                    let _ = writeln!(out, "    <path class=\"point\" d=\"M {l} {y} H {r} M {x} {t} V {bt}\"/>");
                }
                Shape::Label { at, away_from, text } => {
                    let dir = (*at - *away_from).normalized().unwrap_or(Point64::new(0.0, 1.0));
                    let (x, y) = f.xy(*at + dir * (0.04 * unit));
                    let _ = writeln!(
                        out,
                        "    <text x=\"{x}\" y=\"{y}\" font-size=\"{font}\" font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"{}\" stroke=\"none\">{text}</text>",
                        layer.color()
                    );
                }
            }
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
