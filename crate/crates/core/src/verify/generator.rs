//! Seeded random quadrilaterals of a prescribed shape class.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::kernel::Point;
use crate::quad::{noncyclicity_measure, signed_noncyclicity, Convexity, Quadrilateral};
use crate::scalar::Real;

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    ConvexNoncyclic,
    Concave,
    Cyclic,
    Trapezoid,
    Parallelogram,
    Orthocentric,
    NearCyclic,
    /// Parallelograms with an angle of `pi/4` (`r = -1`).
    ParallelogramPi4,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 8] = [
        ShapeKind::ConvexNoncyclic,
        ShapeKind::Concave,
        ShapeKind::Cyclic,
        ShapeKind::Trapezoid,
        ShapeKind::Parallelogram,
        ShapeKind::Orthocentric,
        ShapeKind::NearCyclic,
        ShapeKind::ParallelogramPi4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::ConvexNoncyclic => "convex-noncyclic",
            ShapeKind::Concave => "concave",
            ShapeKind::Cyclic => "cyclic",
            ShapeKind::Trapezoid => "trapezoid",
            ShapeKind::Parallelogram => "parallelogram",
            ShapeKind::Orthocentric => "orthocentric",
            ShapeKind::NearCyclic => "near-cyclic",
            ShapeKind::ParallelogramPi4 => "parallelogram-pi4",
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        ShapeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GeomError::InvalidSpec(format!("unknown shape class `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conditioning {
    /// Interior angles must lie in `[min_angle, 2 pi - min_angle]` and every
    /// triad triangle must have height at least `min_angle * D`.
    pub min_angle: f64,
    /// Upper bound on diameter over shortest side.
    pub max_aspect: f64,
}

impl Default for Conditioning {
    fn default() -> Self {
        Conditioning { min_angle: 0.2, max_aspect: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub seed: u64,
    pub shape_class: ShapeKind,
    pub conditioning: Conditioning,
}

impl CaseSpec {
    pub fn new(seed: u64, shape_class: ShapeKind) -> Self {
        CaseSpec { seed, shape_class, conditioning: Conditioning::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.conditioning;
        if !(c.min_angle > 0.0 && c.min_angle < 1.0) {
            return Err(GeomError::InvalidSpec(format!("min_angle {} outside (0, 1)", c.min_angle)));
        }
        if c.max_aspect.is_nan() || c.max_aspect < 1.0 {
            return Err(GeomError::InvalidSpec(format!("max_aspect {} below 1", c.max_aspect)));
        }
        Ok(())
    }
}

/// Independent stream `index` of the generator seeded by `seed`, offset by
/// `salt` so that auxiliary draws never alias the shapes.
pub fn case_rng(seed: u64, index: u64, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(index);
    rng
}

/// Deterministic in `(spec.seed, index)`. The result has diameter 1 and its
/// centroid at the origin.
pub fn random_quadrilateral(spec: &CaseSpec, index: u64) -> Result<Quadrilateral<f64>> {
    spec.validate()?;
    let mut rng = case_rng(spec.seed, index, 0);
    for _ in 0..MAX_ATTEMPTS {
        let Some(raw) = sample(spec.shape_class, &mut rng) else { continue };
        let v = normalize(raw, &mut rng);
        let Ok(q) = Quadrilateral::new(v) else { continue };
        if in_class(&q, spec.shape_class) && well_conditioned(&q, &spec.conditioning) {
            return Ok(q);
        }
    }
    Err(GeomError::RejectionExhausted(MAX_ATTEMPTS))
}

fn disc_point(rng: &mut ChaCha8Rng) -> Point<f64> {
    let r = rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Point::new(r * t.cos(), r * t.sin())
}

fn roll(v: [Point<f64>; 4], rng: &mut ChaCha8Rng) -> [Point<f64>; 4] {
    let k = rng.random_range(0..4);
    std::array::from_fn(|i| v[(i + k) % 4])
}

fn on_circle(rng: &mut ChaCha8Rng) -> [Point<f64>; 4] {
    let mut t: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::TAU));
    t.sort_by(f64::total_cmp);
    t.map(|a| Point::new(a.cos(), a.sin()))
}

fn sample(kind: ShapeKind, rng: &mut ChaCha8Rng) -> Option<[Point<f64>; 4]> {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    let v = match kind {
        ShapeKind::ConvexNoncyclic => {
            let mut p: [Point<f64>; 4] = std::array::from_fn(|_| disc_point(rng));
            let c = (p[0] + p[1] + p[2] + p[3]) / 4.0;
            p.sort_by(|a, b| (*a - c).y.atan2((*a - c).x).total_cmp(&(*b - c).y.atan2((*b - c).x)));
            p
        }
        ShapeKind::Concave => {
            let [a, b, c] = std::array::from_fn(|_| disc_point(rng));
            let w: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.1..1.0));
            let s = w[0] + w[1] + w[2];
            let d = (a * w[0] + b * w[1] + c * w[2]) / s;
            roll([a, b, c, d], rng)
        }
        ShapeKind::Cyclic => on_circle(rng),
        ShapeKind::Trapezoid => {
            let u: f64 = rng.random_range(-0.5..1.0);
            let h = rng.random_range(0.3..1.0);
            let t: f64 = rng.random_range(0.2..1.5);
            if (t - 1.0).abs() < 0.1 || (u - (1.0 - t) / 2.0).abs() < 0.05 {
                return None;
            }
            let p = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(u + t, h), Point::new(u, h)];
            roll(p, rng)
        }
        ShapeKind::Parallelogram | ShapeKind::ParallelogramPi4 => {
            let theta = if kind == ShapeKind::ParallelogramPi4 {
                FRAC_PI_4
            } else {
                let th: f64 = rng.random_range(0.2..PI - 0.2);
                if (th - FRAC_PI_2).abs() < 0.1 {
                    return None;
                }
                th
            };
            let a = rng.random_range(0.5..1.0);
            let b = rng.random_range(0.5..1.0);
            let (bb, dd) = (Point::new(a, 0.0), Point::new(b * theta.cos(), b * theta.sin()));
            roll([Point::origin(), bb, bb + dd, dd], rng)
        }
        ShapeKind::Orthocentric => {
            let [a, b, c] = std::array::from_fn(|_| disc_point(rng));
            let o = crate::kernel::circumcenter_tol(a, b, c, 1e-9).ok()?;
            let h = a + b + c - o * 2.0;
            roll([a, b, c, h], rng)
        }
        ShapeKind::NearCyclic => {
            let v = on_circle(rng);
            let lo = (10.0 * f64::default_tol()).log10();
            let hi = (1e3 * f64::default_tol()).log10();
            let target = 10f64.powf(rng.random_range(lo..hi));
            let outward = rng.random_bool(0.5);
            let d = push_off_circle(v, if outward { target } else { -target })?;
            [v[0], v[1], v[2], d]
        }
    };
    Some(v)
}

/// Moves the last vertex radially until the signed noncyclicity equals
/// `target` (secant iteration).
fn push_off_circle(v: [Point<f64>; 4], target: f64) -> Option<Point<f64>> {
    let f = |rho: f64| -> Option<f64> {
        let q = Quadrilateral::new([v[0], v[1], v[2], v[3] * rho]).ok()?;
        Some(signed_noncyclicity(&q))
    };
    let (mut x0, mut x1) = (1.0, 1.0 + target);
    let (mut f0, mut f1) = (f(x0)?, f(x1)?);
    for _ in 0..30 {
        if (f1 - target).abs() <= 1e-3 * target.abs() {
            return Some(v[3] * x1);
        }
        if f1 == f0 {
            return None;
        }
        let x2 = x1 - (f1 - target) * (x1 - x0) / (f1 - f0);
        (x0, f0) = (x1, f1);
        x1 = x2;
        f1 = f(x1)?;
    }
    None
}

/// Centroid to the origin, diameter to 1, then a random rotation.
fn normalize(v: [Point<f64>; 4], rng: &mut ChaCha8Rng) -> [Point<f64>; 4] {
    let c = crate::kernel::centroid(&v);
    let d = crate::kernel::diameter(&v);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let (s, co) = phi.sin_cos();
    v.map(|p| {
        let p = (p - c) / d;
        Point::new(co * p.x - s * p.y, s * p.x + co * p.y)
    })
}

fn in_class(q: &Quadrilateral<f64>, kind: ShapeKind) -> bool {
    let shape = crate::quad::classify(q);
    let nc = noncyclicity_measure(q);
    match kind {
        ShapeKind::ConvexNoncyclic => shape.convexity == Convexity::Convex && !shape.cyclic && nc > 1e-2,
        ShapeKind::Concave => shape.convexity == Convexity::Concave && !shape.orthocentric && nc > 1e-2,
        ShapeKind::Cyclic => shape.cyclic,
        ShapeKind::Trapezoid => shape.trapezoid && !shape.parallelogram && !shape.cyclic,
        ShapeKind::Parallelogram | ShapeKind::ParallelogramPi4 => shape.parallelogram && !shape.cyclic,
        ShapeKind::Orthocentric => shape.orthocentric,
        ShapeKind::NearCyclic => {
            let tol = q.tol();
            !shape.cyclic && (10.0 * tol * 0.999..=1e3 * tol * 1.001).contains(&nc)
        }
    }
}

fn well_conditioned(q: &Quadrilateral<f64>, c: &Conditioning) -> bool {
    let d = q.diameter();
    let tau = std::f64::consts::TAU;
    if q.interior_angles().iter().any(|a| *a < c.min_angle || *a > tau - c.min_angle) {
        return false;
    }
    let shortest = q.sides().iter().map(|s| s.norm()).fold(f64::INFINITY, f64::min);
    if d / shortest > c.max_aspect {
        return false;
    }
    (0..4).all(|i| {
        let t = q.triad_triangle(i);
        let longest = t.sides().into_iter().fold(0.0, f64::max);
        2.0 * t.signed_area().abs() / longest >= c.min_angle * d
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::similarity_ratio;

    #[test]
    fn deterministic_per_index() {
        let spec = CaseSpec::new(42, ShapeKind::ConvexNoncyclic);
        let a = random_quadrilateral(&spec, 0).unwrap();
        let b = random_quadrilateral(&spec, 0).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        let c = random_quadrilateral(&spec, 1).unwrap();
        assert_ne!(a.vertices(), c.vertices());
    }

    #[test]
    fn every_class_generates() {
        for kind in ShapeKind::ALL {
            let spec = CaseSpec::new(7, kind);
            for i in 0..20 {
                let q = random_quadrilateral(&spec, i).unwrap_or_else(|e| panic!("{kind} {i}: {e}"));
                assert!((q.diameter() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn class_contracts() {
        for i in 0..20 {
            let q = random_quadrilateral(&CaseSpec::new(3, ShapeKind::Cyclic), i).unwrap();
            assert!(noncyclicity_measure(&q) < 1e-12);
            let q = random_quadrilateral(&CaseSpec::new(3, ShapeKind::Orthocentric), i).unwrap();
            assert!((similarity_ratio(&q).unwrap() - 1.0).abs() < 1e-9);
            let q = random_quadrilateral(&CaseSpec::new(3, ShapeKind::ParallelogramPi4), i).unwrap();
            assert!((similarity_ratio(&q).unwrap() + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn class_names_round_trip() {
        for kind in ShapeKind::ALL {
            assert_eq!(kind.name().parse::<ShapeKind>().unwrap(), kind);
        }
        assert!("hexagon".parse::<ShapeKind>().is_err());
    }
}
