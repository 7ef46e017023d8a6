use serde::{Deserialize, Serialize};

use super::circle::{circumcenter_tol, GenCircle};
use super::point::{centroid, diameter, orient, project, MaybePoint, Point};
use crate::error::{GeomError, Result};
use crate::scalar::Real;

/// Non-degenerate triangle. `tol` is the relative tolerance used by
/// degeneracy tests on this triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle<T> {
    p: [Point<T>; 3],
    tol: T,
}

impl<T: Real> Triangle<T> {
    pub fn new(p1: Point<T>, p2: Point<T>, p3: Point<T>) -> Result<Self> {
        Self::with_tol(p1, p2, p3, T::default_tol())
    }

    /// Rejects triangles whose smallest height is below `tol * diameter`.
    pub fn with_tol(p1: Point<T>, p2: Point<T>, p3: Point<T>, tol: T) -> Result<Self> {
        let p = [p1, p2, p3];
        if !p.iter().all(|q| q.is_finite()) {
            return Err(GeomError::InvalidCircle("non-finite vertex"));
        }
        let d = diameter(&p);
        if d == T::zero() || orient(p1, p2, p3).abs() / d <= tol * d {
            return Err(GeomError::CollinearInput);
        }
        Ok(Self { p, tol })
    }

    pub fn vertices(&self) -> [Point<T>; 3] {
        self.p
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn diameter(&self) -> T {
        diameter(&self.p)
    }

    /// Positive for counter-clockwise vertex order.
    pub fn signed_area(&self) -> T {
        orient(self.p[0], self.p[1], self.p[2]) * T::lit(0.5)
    }

    /// Side lengths opposite `p1`, `p2`, `p3`.
    pub fn sides(&self) -> [T; 3] {
        let [a, b, c] = self.p;
        [b.dist(c), c.dist(a), a.dist(b)]
    }

    /// Interior angles at `p1`, `p2`, `p3`.
    pub fn angles(&self) -> [T; 3] {
        let ang = |v: Point<T>, x: Point<T>, y: Point<T>| {
            let (u, w) = (x - v, y - v);
            u.cross(w).abs().atan2(u.dot(w))
        };
        let [a, b, c] = self.p;
        [ang(a, b, c), ang(b, c, a), ang(c, a, b)]
    }

    pub fn circumcenter(&self) -> Point<T> {
        let [a, b, c] = self.p;
        circumcenter_tol(a, b, c, T::zero()).expect("validated triangle")
    }

    pub fn circumcircle(&self) -> GenCircle<T> {
        GenCircle::circle_through(self.circumcenter(), self.p[0]).expect("validated triangle")
    }

    pub fn circumradius(&self) -> T {
        self.circumcenter().dist(self.p[0])
    }

    pub fn centroid(&self) -> Point<T> {
        centroid(&self.p)
    }

    pub fn orthocenter(&self) -> Point<T> {
        let o = self.circumcenter();
        let [a, b, c] = self.p;
        o + (a - o) + (b - o) + (c - o)
    }

    pub fn incenter(&self) -> Point<T> {
        let [la, lb, lc] = self.sides();
        let [a, b, c] = self.p;
        (a * la + b * lb + c * lc) / (la + lb + lc)
    }

    /// Feet of the perpendiculars from `q` onto lines `p2p3`, `p3p1`, `p1p2`.
    pub fn pedal(&self, q: Point<T>) -> [Point<T>; 3] {
        let [a, b, c] = self.p;
        [project(q, b, c), project(q, c, a), project(q, a, b)]
    }

    /// Point from barycentric weights; `AtInfinity` when they sum to zero
    /// relative to their magnitude.
    pub fn from_barycentric(&self, w: [T; 3]) -> MaybePoint<T> {
        let [a, b, c] = self.p;
        let s = w[0] + w[1] + w[2];
        let mag = w[0].abs() + w[1].abs() + w[2].abs();
        let num = (b - a) * w[1] + (c - a) * w[2];
        if mag == T::zero() {
            return MaybePoint::Undefined;
        }
        if s.abs() <= self.tol * mag {
            return MaybePoint::at_infinity(num);
        }
        MaybePoint::from(a + num / s)
    }
}

/// Isogonal conjugate of `p` in `t`.
///
/// Points on the circumcircle map to infinity. A point on one side line maps
/// to the opposite vertex; a vertex has no conjugate and gives `Undefined`.
pub fn isogonal_conjugate_triangle<T: Real>(t: &Triangle<T>, p: Point<T>) -> MaybePoint<T> {
    let [a, b, c] = t.vertices();
    let [la, lb, lc] = t.sides();
    let u = orient(p, b, c);
    let v = orient(a, p, c);
    let w = orient(a, b, p);
    let eps = t.tol() * t.diameter();
    let on_lines = [u.abs() <= eps * la, v.abs() <= eps * lb, w.abs() <= eps * lc];
    if on_lines.iter().filter(|&&x| x).count() >= 2 {
        return MaybePoint::Undefined;
    }
    t.from_barycentric([la * la * v * w, lb * lb * u * w, lc * lc * u * v])
}

/// Conjugate of a point of the extended plane; poisoning on `Undefined`.
pub fn isogonal_conjugate_maybe<T: Real>(t: &Triangle<T>, p: MaybePoint<T>) -> MaybePoint<T> {
    match p {
        MaybePoint::Finite(q) => isogonal_conjugate_triangle(t, q),
        MaybePoint::AtInfinity { direction } => {
            // A point at infinity has barycentrics proportional to signed
            // areas swept by its direction; its conjugate lies on the circumcircle.
            let [a, b, c] = t.vertices();
            let [la, lb, lc] = t.sides();
            let u = (c - b).cross(direction);
            let v = (a - c).cross(direction);
            let w = (b - a).cross(direction);
            let mag = u.abs() + v.abs() + w.abs();
            if u.abs() <= t.tol() * mag || v.abs() <= t.tol() * mag || w.abs() <= t.tol() * mag {
                return MaybePoint::Undefined;
            }
            t.from_barycentric([la * la * v * w, lb * lb * u * w, lc * lc * u * v])
        }
        MaybePoint::Undefined => MaybePoint::Undefined,
    }
}

/// Both isodynamic points, the one inside the circumcircle first.
///
/// For an equilateral triangle the first is the center and the second lies
/// at infinity (reported along `p1 -> p2`).
pub fn isodynamic_points<T: Real>(t: &Triangle<T>) -> (MaybePoint<T>, MaybePoint<T>) {
    let s = t.sides();
    let lo = s[0].min(s[1]).min(s[2]);
    let hi = s[0].max(s[1]).max(s[2]);
    let [a, b, _] = t.vertices();
    if hi - lo <= t.tol() * t.diameter() {
        return (MaybePoint::Finite(t.centroid()), MaybePoint::at_infinity(b - a));
    }
    let ang = t.angles();
    let third = T::FRAC_PI_3();
    let bary = |sign: T| -> [T; 3] {
        [
            s[0] * (ang[0] + sign * third).sin(),
            s[1] * (ang[1] + sign * third).sin(),
            s[2] * (ang[2] + sign * third).sin(),
        ]
    };
    let first = t.from_barycentric(bary(T::one()));
    let second = t.from_barycentric(bary(-T::one()));
    let o = t.circumcenter();
    let inside = |m: &MaybePoint<T>| match m {
        MaybePoint::Finite(q) => q.dist(o) < t.circumradius(),
        _ => false,
    };
    if !inside(&first) && inside(&second) {
        (second, first)
    } else {
        (first, second)
    }
}
