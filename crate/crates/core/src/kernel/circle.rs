use serde::{Deserialize, Serialize};

use super::point::{diameter, MaybePoint, Point};
use crate::error::{GeomError, Result};
use crate::scalar::Real;

/// Circle or line `a(x^2 + y^2) + bx + cy + d = 0`.
///
/// Coefficients are scaled so the largest magnitude is 1 and signed so that
/// `a >= 0` (lines: the first nonzero of `b, c` is positive). `a == 0`
/// exactly marks a line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenCircle<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Real> GenCircle<T> {
    pub fn from_coeffs(a: T, b: T, c: T, d: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) {
            return Err(GeomError::InvalidCircle("non-finite coefficient"));
        }
        let m = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
        if m == T::zero() {
            return Err(GeomError::InvalidCircle("all coefficients zero"));
        }
        let (a, b, c, d) = (a / m, b / m, c / m, d / m);
        if a == T::zero() {
            if b == T::zero() && c == T::zero() {
                return Err(GeomError::InvalidCircle("line with zero normal"));
            }
        } else if b * b + c * c - T::lit(4.0) * a * d <= T::zero() {
            return Err(GeomError::InvalidCircle("imaginary or point circle"));
        }
        let flip = a < T::zero() || (a == T::zero() && (b < T::zero() || (b == T::zero() && c < T::zero())));
        Ok(if flip { Self { a: -a, b: -b, c: -c, d: -d } } else { Self { a, b, c, d } })
    }

    pub fn circle(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero() && radius.is_finite() && center.is_finite()) {
            return Err(GeomError::InvalidCircle("radius must be positive and finite"));
        }
        // Power of the origin as 2C.p - |p|^2 for p = C + (R, 0), avoiding |C|^2 - R^2.
        let p = center + Point::new(radius, T::zero());
        let d = T::lit(2.0) * center.dot(p) - p.norm2();
        Self::from_coeffs(T::one(), -T::lit(2.0) * center.x, -T::lit(2.0) * center.y, d)
    }

    /// Circle with the given center through `p`.
    pub fn circle_through(center: Point<T>, p: Point<T>) -> Result<Self> {
        if center == p {
            return Err(GeomError::CoincidentPoints);
        }
        let d = T::lit(2.0) * center.dot(p) - p.norm2();
        Self::from_coeffs(T::one(), -T::lit(2.0) * center.x, -T::lit(2.0) * center.y, d)
    }

    /// Line `n . X = e`.
    pub fn line(normal: Point<T>, e: T) -> Result<Self> {
        Self::from_coeffs(T::zero(), normal.x, normal.y, -e)
    }

    pub fn line_through(p: Point<T>, q: Point<T>) -> Result<Self> {
        if p == q {
            return Err(GeomError::CoincidentPoints);
        }
        let n = (q - p).perp();
        Self::line(n, n.dot(p))
    }

    /// Line through `p` with direction `dir`.
    pub fn line_dir(p: Point<T>, dir: Point<T>) -> Result<Self> {
        let n = dir.perp();
        Self::line(n, n.dot(p))
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn d(&self) -> T {
        self.d
    }

    pub fn is_line(&self) -> bool {
        self.a == T::zero()
    }

    pub fn is_circle(&self) -> bool {
        !self.is_line()
    }

    fn disc(&self) -> T {
        self.b * self.b + self.c * self.c - T::lit(4.0) * self.a * self.d
    }

    pub fn center(&self) -> Result<Point<T>> {
        if self.is_line() {
            return Err(GeomError::NotACircle);
        }
        let k = -T::lit(2.0) * self.a;
        Ok(Point::new(self.b / k, self.c / k))
    }

    pub fn radius(&self) -> Result<T> {
        if self.is_line() {
            return Err(GeomError::NotACircle);
        }
        Ok(self.disc().sqrt() / (T::lit(2.0) * self.a.abs()))
    }

    /// Unit normal `n` and offset `e` of a line `n . X = e`.
    pub fn line_normal(&self) -> Result<(Point<T>, T)> {
        if !self.is_line() {
            return Err(GeomError::NotALine);
        }
        let n = Point::new(self.b, self.c);
        let l = n.norm();
        Ok((n / l, -self.d / l))
    }

    /// Unit direction of a line.
    pub fn line_direction(&self) -> Result<Point<T>> {
        Ok(self.line_normal()?.0.perp())
    }

    /// Left-hand side of the equation at `p`.
    pub fn eval(&self, p: Point<T>) -> T {
        self.a * p.norm2() + self.b * p.x + self.c * p.y + self.d
    }

    /// Euclidean distance from `p` to the curve.
    pub fn distance(&self, p: Point<T>) -> T {
        let h = T::lit(0.5);
        let g = Point::new(self.a * p.x + self.b * h, self.a * p.y + self.c * h);
        let den = g.norm() + self.disc().sqrt() * h;
        self.eval(p).abs() / den
    }

    pub fn contains(&self, p: Point<T>, eps: T) -> bool {
        self.distance(p) <= eps
    }

    /// Coefficient-space distance, insensitive to the overall sign.
    pub fn coeff_dist(&self, o: &Self) -> T {
        let s = self.coeffs();
        let t = o.coeffs();
        let mut dp = T::zero();
        let mut dm = T::zero();
        for i in 0..4 {
            dp = dp.max((s[i] - t[i]).abs());
            dm = dm.max((s[i] + t[i]).abs());
        }
        dp.min(dm)
    }

    pub fn approx_eq(&self, o: &Self, tol: T) -> bool {
        self.coeff_dist(o) <= tol
    }

    /// Same curve expressed after the substitution `X -> X + shift`
    /// (i.e. the curve translated by `-shift`).
    fn shifted(&self, shift: Point<T>) -> [T; 4] {
        let two = T::lit(2.0);
        [self.a, self.b + two * self.a * shift.x, self.c + two * self.a * shift.y, self.eval(shift)]
    }

    pub fn cast<U: Real>(&self) -> GenCircle<U> {
        let f = |v: T| U::lit(v.to_f64_lossy());
        GenCircle { a: f(self.a), b: f(self.b), c: f(self.c), d: f(self.d) }
    }
}

/// Normalizes coefficients that are known to describe a valid curve.
fn normalized<T: Real>(a: T, b: T, c: T, d: T) -> GenCircle<T> {
    GenCircle::from_coeffs(a, b, c, d).unwrap_or(GenCircle { a, b, c, d })
}

/// Circumcircle with the default tolerance.
pub fn circumcircle<T: Real>(p: Point<T>, q: Point<T>, r: Point<T>) -> Result<GenCircle<T>> {
    circumcircle_tol(p, q, r, T::default_tol())
}

/// Circumcenter of three points; collinearity is judged by the smallest
/// height relative to the diameter.
pub fn circumcenter_tol<T: Real>(p: Point<T>, q: Point<T>, r: Point<T>, tol: T) -> Result<Point<T>> {
    let dm = diameter(&[p, q, r]);
    let u = q - p;
    let v = r - p;
    let cr = u.cross(v);
    let longest = dm;
    // twice-area / longest side = smallest height
    if dm == T::zero() || cr.abs() / longest <= tol * dm {
        return Err(GeomError::CollinearInput);
    }
    let two = T::lit(2.0);
    let k = two * cr;
    let ux = (v.y * u.norm2() - u.y * v.norm2()) / k;
    let uy = (u.x * v.norm2() - v.x * u.norm2()) / k;
    Ok(p + Point::new(ux, uy))
}

pub fn circumcircle_tol<T: Real>(p: Point<T>, q: Point<T>, r: Point<T>, tol: T) -> Result<GenCircle<T>> {
    let o = circumcenter_tol(p, q, r, tol)?;
    GenCircle::circle_through(o, p)
}

pub fn perpendicular_bisector<T: Real>(p: Point<T>, q: Point<T>) -> Result<GenCircle<T>> {
    if p == q {
        return Err(GeomError::CoincidentPoints);
    }
    let n = q - p;
    GenCircle::line(n, n.dot(p.midpoint(q)))
}

/// Roots of `A t^2 + B t + C = 0` along a line; tangency is declared when
/// the half-chord falls below `tol * chord_scale`.
fn line_params<T: Real>(qa: T, qb: T, qc: T, tangent_eps: T) -> Vec<T> {
    let two = T::lit(2.0);
    if qa == T::zero() {
        return if qb == T::zero() { vec![] } else { vec![-qc / qb] };
    }
    let disc = qb * qb - T::lit(4.0) * qa * qc;
    let half_chord_scaled = tangent_eps * two * qa.abs();
    if disc <= half_chord_scaled * half_chord_scaled {
        if disc < -(half_chord_scaled * half_chord_scaled) {
            return vec![];
        }
        return vec![-qb / (two * qa)];
    }
    let s = disc.sqrt();
    let q = -(qb + qb.signum() * s) / two;
    if q == T::zero() {
        return vec![T::zero()];
    }
    vec![q / qa, qc / q]
}

fn line_curve<T: Real>(line: &GenCircle<T>, g: &GenCircle<T>, tol: T) -> Vec<Point<T>> {
    let (n, e) = line.line_normal().expect("line");
    let u = n.perp();
    let p0 = n * e;
    let two = T::lit(2.0);
    let qa = g.a;
    let gp = Point::new(g.b, g.c);
    let qb = two * g.a * p0.dot(u) + gp.dot(u);
    let qc = g.eval(p0);
    let eps = if g.is_line() { T::zero() } else { tol * g.radius().unwrap() };
    line_params(qa, qb, qc, eps).into_iter().map(|t| p0 + u * t).collect()
}

fn sort_lex<T: Real>(pts: &mut [Point<T>]) {
    pts.sort_by(|p, q| {
        p.x.partial_cmp(&q.x)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(p.y.partial_cmp(&q.y).unwrap_or(std::cmp::Ordering::Equal))
    });
}

pub fn intersect<T: Real>(g1: &GenCircle<T>, g2: &GenCircle<T>) -> Result<Vec<Point<T>>> {
    intersect_tol(g1, g2, T::default_tol())
}

/// Intersection points ordered lexicographically by `(x, y)`.
pub fn intersect_tol<T: Real>(g1: &GenCircle<T>, g2: &GenCircle<T>, tol: T) -> Result<Vec<Point<T>>> {
    if g1.approx_eq(g2, tol) {
        return Err(GeomError::IdenticalCurves);
    }
    let mut pts = match (g1.is_line(), g2.is_line()) {
        (true, true) => {
            let (n1, e1) = g1.line_normal()?;
            let (n2, e2) = g2.line_normal()?;
            let det = n1.cross(n2);
            if det.abs() <= tol {
                vec![]
            } else {
                vec![Point::new((e1 * n2.y - e2 * n1.y) / det, (n1.x * e2 - n2.x * e1) / det)]
            }
        }
        (true, false) => line_curve(g1, g2, tol),
        (false, true) => line_curve(g2, g1, tol),
        (false, false) => {
            let (a1, a2) = (g1.a, g2.a);
            let rb = a2 * g1.b - a1 * g2.b;
            let rc = a2 * g1.c - a1 * g2.c;
            let rd = a2 * g1.d - a1 * g2.d;
            let (r1, r2) = (g1.radius()?, g2.radius()?);
            if g1.center()?.dist(g2.center()?) <= tol * r1.max(r2) {
                // concentric
                vec![]
            } else {
                let radical = normalized(T::zero(), rb, rc, rd);
                let target = if r1 <= r2 { g1 } else { g2 };
                line_curve(&radical, target, tol)
            }
        }
    };
    sort_lex(&mut pts);
    Ok(pts)
}

/// The intersection of `g1` and `g2` other than `known`, found by inverting
/// about `known` so both curves become lines. Tangency yields `Undefined`.
pub fn second_intersection<T: Real>(g1: &GenCircle<T>, g2: &GenCircle<T>, known: Point<T>, tol: T) -> MaybePoint<T> {
    let s1 = g1.shifted(known);
    let s2 = g2.shifted(known);
    // Images under inversion in the unit circle about `known`, forced through
    // nothing at the pole: b x + c y + a = 0.
    let n1 = Point::new(s1[1], s1[2]);
    let n2 = Point::new(s2[1], s2[2]);
    let (l1, l2) = (n1.norm(), n2.norm());
    if l1 == T::zero() || l2 == T::zero() {
        return MaybePoint::Undefined;
    }
    let (m1, m2) = (n1 / l1, n2 / l2);
    let (e1, e2) = (-s1[0] / l1, -s2[0] / l2);
    let det = m1.cross(m2);
    if det.abs() <= tol {
        return MaybePoint::Undefined;
    }
    let y = Point::new((e1 * m2.y - e2 * m1.y) / det, (m1.x * e2 - m2.x * e1) / det);
    let r2 = y.norm2();
    if r2 == T::zero() {
        return MaybePoint::at_infinity(m1.perp());
    }
    MaybePoint::from(known + y / r2)
}

fn reflect<T: Real>(line: &GenCircle<T>, p: Point<T>) -> Point<T> {
    let (n, e) = line.line_normal().expect("line");
    p - n * (T::lit(2.0) * (n.dot(p) - e))
}

/// Inversion in a circle; a line mirror acts as reflection.
pub fn invert_point<T: Real>(mirror: &GenCircle<T>, p: Point<T>) -> MaybePoint<T> {
    if mirror.is_line() {
        return MaybePoint::from(reflect(mirror, p));
    }
    invert_in(mirror.center().unwrap(), mirror.radius().unwrap(), p)
}

/// Inversion in the circle with the given center and radius.
pub fn invert_in<T: Real>(c: Point<T>, r: T, p: Point<T>) -> MaybePoint<T> {
    let v = p - c;
    let n2 = v.norm2();
    if n2 == T::zero() {
        return MaybePoint::at_infinity(Point::new(T::one(), T::zero()));
    }
    let img = c + v * (r * r / n2);
    if img.is_finite() {
        MaybePoint::Finite(img)
    } else {
        MaybePoint::at_infinity(v)
    }
}

/// [`invert_point`] on the extended plane.
pub fn invert_maybe<T: Real>(mirror: &GenCircle<T>, p: MaybePoint<T>) -> MaybePoint<T> {
    match p {
        MaybePoint::Finite(q) => invert_point(mirror, q),
        MaybePoint::AtInfinity { direction } => {
            if mirror.is_line() {
                let (n, _) = mirror.line_normal().unwrap();
                MaybePoint::at_infinity(direction - n * (T::lit(2.0) * n.dot(direction)))
            } else {
                MaybePoint::Finite(mirror.center().unwrap())
            }
        }
        MaybePoint::Undefined => MaybePoint::Undefined,
    }
}

/// Image of a generalized circle under inversion (or reflection) in `mirror`.
pub fn invert_circle<T: Real>(mirror: &GenCircle<T>, g: &GenCircle<T>) -> GenCircle<T> {
    let two = T::lit(2.0);
    if mirror.is_line() {
        let (n, e) = mirror.line_normal().unwrap();
        let t = n * (two * e);
        let lin = Point::new(g.b, g.c);
        let mlin = lin - n * (two * n.dot(lin));
        let mt = t - n * (two * n.dot(t));
        let nb = mt * (two * g.a) + mlin;
        return normalized(g.a, nb.x, nb.y, g.a * t.norm2() + lin.dot(t) + g.d);
    }
    let ctr = mirror.center().unwrap();
    let r = mirror.radius().unwrap();
    let r2 = r * r;
    let [a, b1, c1, mut d1] = g.shifted(ctr);
    if g.distance(ctr) <= T::lit(1e3) * T::epsilon() * r {
        d1 = T::zero();
    }
    // Image in coordinates centred at the mirror's center.
    let (la, lb, lc, ld) = (d1, b1 * r2, c1 * r2, a * r2 * r2);
    let (h, k) = (ctr.x, ctr.y);
    normalized(la, lb - two * la * h, lc - two * la * k, la * ctr.norm2() - lb * h - lc * k + ld)
}

/// Locus of `X` with `|X p1| / |X p2| = ratio`.
pub fn apollonius_circle<T: Real>(p1: Point<T>, p2: Point<T>, ratio: T) -> Result<GenCircle<T>> {
    if !(ratio > T::zero() && ratio.is_finite()) {
        return Err(GeomError::NonpositiveRatio(ratio.to_f64_lossy()));
    }
    if p1 == p2 {
        return Err(GeomError::CoincidentPoints);
    }
    if ratio == T::one() {
        return perpendicular_bisector(p1, p2);
    }
    let k2 = ratio * ratio;
    let a = (T::one() - ratio) * (T::one() + ratio);
    let lin = (p1 - p2 * k2) * (-T::lit(2.0));
    GenCircle::from_coeffs(a, lin.x, lin.y, p1.norm2() - k2 * p2.norm2())
}

fn two_circles<T: Real>(o1: &GenCircle<T>, o2: &GenCircle<T>) -> Result<(Point<T>, T, Point<T>, T)> {
    Ok((o1.center()?, o1.radius()?, o2.center()?, o2.radius()?))
}

pub fn circle_of_similitude<T: Real>(o1: &GenCircle<T>, o2: &GenCircle<T>) -> Result<GenCircle<T>> {
    circle_of_similitude_tol(o1, o2, T::default_tol())
}

/// Circle of similitude; radii equal within `tol` give the perpendicular
/// bisector of the centers.
pub fn circle_of_similitude_tol<T: Real>(o1: &GenCircle<T>, o2: &GenCircle<T>, tol: T) -> Result<GenCircle<T>> {
    let (c1, r1, c2, r2) = two_circles(o1, o2)?;
    similitude_from_parts(c1, r1, c2, r2, tol)
}

/// Circle of similitude from centers and radii.
pub fn similitude_from_parts<T: Real>(c1: Point<T>, r1: T, c2: Point<T>, r2: T, tol: T) -> Result<GenCircle<T>> {
    let scale = r1.max(r2);
    if c1.dist(c2) <= tol * scale {
        return Err(GeomError::ConcentricCircles);
    }
    if (r1 - r2).abs() <= tol * scale {
        return perpendicular_bisector(c1, c2);
    }
    apollonius_circle(c1, c2, r1 / r2)
}

pub fn radical_axis<T: Real>(o1: &GenCircle<T>, o2: &GenCircle<T>) -> Result<GenCircle<T>> {
    let (c1, r1, c2, r2) = two_circles(o1, o2)?;
    if c1.dist(c2) <= T::default_tol() * r1.max(r2) {
        return Err(GeomError::ConcentricCircles);
    }
    let n = c2 - c1;
    // Through the midpoint, shifted along n by (R1^2 - R2^2) / (2|n|^2).
    let m = c1.midpoint(c2) + n * ((r1 - r2) * (r1 + r2) / (T::lit(2.0) * n.norm2()));
    GenCircle::line(n, n.dot(m))
}

/// Circles (or the symmetry line) whose inversion swaps `o1` and `o2`.
pub fn mid_circles<T: Real>(o1: &GenCircle<T>, o2: &GenCircle<T>) -> Result<Vec<GenCircle<T>>> {
    let tol = T::default_tol();
    let (c1, r1, c2, r2) = two_circles(o1, o2)?;
    let scale = r1.max(r2);
    if c1.dist(c2) <= tol * scale {
        return Err(if (r1 - r2).abs() <= tol * scale {
            GeomError::IdenticalCurves
        } else {
            GeomError::ConcentricCircles
        });
    }
    let mut out = Vec::with_capacity(2);
    for s in [T::one(), -T::one()] {
        if s < T::zero() && (r1 - r2).abs() <= tol * scale {
            out.push(perpendicular_bisector(c1, c2)?);
            continue;
        }
        // E1 / R1 + s E2 / R2 with monic E_i = |X - C_i|^2 - R_i^2
        let (w1, w2) = (T::one() / r1, s / r2);
        let two = T::lit(2.0);
        let a = w1 + w2;
        let lin = (c1 * w1 + c2 * w2) * (-two);
        let d = w1 * (c1.norm2() - r1 * r1) + w2 * (c2.norm2() - r2 * r2);
        if let Ok(g) = GenCircle::from_coeffs(a, lin.x, lin.y, d) {
            out.push(g);
        }
    }
    Ok(out)
}

/// `|p - center|^2 - R^2`.
pub fn power_of_point<T: Real>(p: Point<T>, o: &GenCircle<T>) -> Result<T> {
    let c = o.center()?;
    let r = o.radius()?;
    let d = p.dist(c);
    Ok((d - r) * (d + r))
}

pub fn foot_of_perpendicular<T: Real>(line: &GenCircle<T>, p: Point<T>) -> Result<Point<T>> {
    let (n, e) = line.line_normal()?;
    Ok(p - n * (n.dot(p) - e))
}

/// Intersection of two lines given by point and direction, `None` when
/// parallel within `tol` (sine of the angle between them).
pub fn line_line<T: Real>(p: Point<T>, u: Point<T>, q: Point<T>, v: Point<T>, tol: T) -> Option<Point<T>> {
    let den = u.cross(v);
    if den.abs() <= tol * u.norm() * v.norm() {
        return None;
    }
    let t = (q - p).cross(v) / den;
    Some(p + u * t)
}
