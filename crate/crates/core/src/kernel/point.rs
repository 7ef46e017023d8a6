use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::scalar::Real;

/// A point (or free vector) of the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm2(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn midpoint(self, o: Self) -> Self {
        let h = T::lit(0.5);
        Self::new((self.x + o.x) * h, (self.y + o.y) * h)
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    /// Unit vector in the same direction, `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn cast<U: Real>(self) -> Point<U> {
        Point::new(U::lit(self.x.to_f64_lossy()), U::lit(self.y.to_f64_lossy()))
    }
}

impl<T: Real> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl<T: Real> Div<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s)
    }
}

impl<T: Real> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Real> From<(T, T)> for Point<T> {
    fn from((x, y): (T, T)) -> Self {
        Self::new(x, y)
    }
}

/// Largest pairwise distance of a point set.
pub fn diameter<T: Real>(pts: &[Point<T>]) -> T {
    let mut d = T::zero();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            d = d.max(p.dist(*q));
        }
    }
    d
}

pub fn centroid<T: Real>(pts: &[Point<T>]) -> Point<T> {
    let n = T::from_usize(pts.len()).unwrap();
    let s = pts.iter().fold(Point::origin(), |acc, p| acc + *p);
    s / n
}

/// Orthogonal projection of `p` onto the line through `a` and `b`.
pub fn project<T: Real>(p: Point<T>, a: Point<T>, b: Point<T>) -> Point<T> {
    let u = b - a;
    a + u * ((p - a).dot(u) / u.norm2())
}

/// A point of the extended plane.
///
/// `Undefined` poisons: combinators on it yield `Undefined` again.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaybePoint<T> {
    Finite(Point<T>),
    AtInfinity { direction: Point<T> },
    Undefined,
}

impl<T: Real> MaybePoint<T> {
    /// Point at infinity in the direction of `v`; a zero direction gives
    /// `Undefined`.
    pub fn at_infinity(v: Point<T>) -> Self {
        match v.normalized() {
            Some(direction) => Self::AtInfinity { direction },
            None => Self::Undefined,
        }
    }

    pub fn finite(self) -> Option<Point<T>> {
        match self {
            Self::Finite(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn is_at_infinity(&self) -> bool {
        matches!(self, Self::AtInfinity { .. })
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, Self::Undefined)
    }

    /// Finite point or the matching error.
    pub fn require(self) -> Result<Point<T>> {
        match self {
            Self::Finite(p) => Ok(p),
            Self::AtInfinity { .. } => Err(GeomError::PointAtInfinity),
            Self::Undefined => Err(GeomError::UndefinedPoint),
        }
    }

    /// Applies `f` to a finite point; other tags pass through unchanged.
    pub fn and_then(self, f: impl FnOnce(Point<T>) -> MaybePoint<T>) -> MaybePoint<T> {
        match self {
            Self::Finite(p) => f(p),
            other => other,
        }
    }
}

impl<T: Real> From<Point<T>> for MaybePoint<T> {
    fn from(p: Point<T>) -> Self {
        if p.is_finite() {
            Self::Finite(p)
        } else {
            Self::Undefined
        }
    }
}

/// Angle between two lines, kept in `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct DirectedAngle<T>(T);

impl<T: Real> DirectedAngle<T> {
    pub fn new(v: T) -> Self {
        let pi = T::PI();
        let mut r = v % pi;
        if r < T::zero() {
            r = r + pi;
        }
        // `v % pi` can land exactly on pi after the shift for tiny negatives.
        if r >= pi {
            r = r - pi;
        }
        Self(r)
    }

    pub fn value(self) -> T {
        self.0
    }

    /// Distance to `o` on the circle of circumference pi.
    pub fn dist(self, o: Self) -> T {
        let d = (self.0 - o.0).abs();
        d.min(T::PI() - d)
    }
}

impl<T: Real> Add for DirectedAngle<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.0 + o.0)
    }
}

impl<T: Real> Sub for DirectedAngle<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.0 - o.0)
    }
}

/// Angle from line `(vertex, a)` to line `(vertex, b)`, modulo pi.
pub fn directed_angle<T: Real>(a: Point<T>, vertex: Point<T>, b: Point<T>) -> Result<DirectedAngle<T>> {
    let u = a - vertex;
    let v = b - vertex;
    if u.norm2() == T::zero() || v.norm2() == T::zero() {
        return Err(GeomError::DegenerateRay);
    }
    Ok(DirectedAngle::new(u.cross(v).atan2(u.dot(v))))
}

/// Signed angle from `u` to `v` in `(-pi, pi]`.
pub fn signed_angle<T: Real>(u: Point<T>, v: Point<T>) -> T {
    u.cross(v).atan2(u.dot(v))
}

/// Twice the signed area of triangle `pqr` (positive when counter-clockwise).
#[inline]
pub fn orient<T: Real>(p: Point<T>, q: Point<T>, r: Point<T>) -> T {
    (q - p).cross(r - p)
}

/// Reduces an angle to `(-pi, pi]`.
pub fn wrap_angle<T: Real>(v: T) -> T {
    let two_pi = T::TAU();
    let mut r = v % two_pi;
    if r <= -T::PI() {
        r = r + two_pi;
    } else if r > T::PI() {
        r = r - two_pi;
    }
    r
}
