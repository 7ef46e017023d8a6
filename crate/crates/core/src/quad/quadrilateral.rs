use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::kernel::{centroid, circumcenter_tol, diameter, orient, signed_angle, Point, Triangle};
use crate::scalar::Real;

/// Four ordered vertices `A, B, C, D`, pairwise distinct, no three collinear.
///
/// `tol` is relative: absolute thresholds are `tol * diameter`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrilateral<T> {
    v: [Point<T>; 4],
    tol: T,
}

impl<T: Real> Quadrilateral<T> {
    pub fn new(v: [Point<T>; 4]) -> Result<Self> {
        Self::with_tol(v, T::default_tol())
    }

    pub fn with_tol(v: [Point<T>; 4], tol: T) -> Result<Self> {
        if !v.iter().all(|p| p.is_finite()) {
            return Err(GeomError::InvalidQuadrilateral("non-finite vertex".into()));
        }
        if !(tol > T::zero() && tol < T::one()) {
            return Err(GeomError::InvalidQuadrilateral("tolerance must lie in (0, 1)".into()));
        }
        let d = diameter(&v);
        for i in 0..4 {
            for j in i + 1..4 {
                if v[i].dist(v[j]) <= tol * d {
                    return Err(GeomError::InvalidQuadrilateral(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        for i in 0..4 {
            let (p, q, r) = (v[(i + 3) % 4], v[i], v[(i + 1) % 4]);
            let h = orient(p, q, r).abs() / diameter(&[p, q, r]);
            if h <= tol * d {
                return Err(GeomError::CollinearTriad(i + 1));
            }
        }
        Ok(Self { v, tol })
    }

    pub fn from_xy(xy: [[T; 2]; 4]) -> Result<Self> {
        Self::new(xy.map(|[x, y]| Point::new(x, y)))
    }

    pub fn vertices(&self) -> [Point<T>; 4] {
        self.v
    }

    /// Vertex `i` taken cyclically.
    pub fn vertex(&self, i: usize) -> Point<T> {
        self.v[i % 4]
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn diameter(&self) -> T {
        diameter(&self.v)
    }

    /// Absolute tolerance `tol * diameter`.
    pub fn eps(&self) -> T {
        self.tol * self.diameter()
    }

    pub fn centroid(&self) -> Point<T> {
        centroid(&self.v)
    }

    /// Same vertices in the order given by `perm`.
    pub fn permuted(&self, perm: [usize; 4]) -> Result<Self> {
        Self::with_tol(perm.map(|i| self.v[i]), self.tol)
    }

    /// Copy moved by `shift`; validation is translation invariant.
    pub fn translated(&self, shift: Point<T>) -> Self {
        Self { v: self.v.map(|p| p + shift), tol: self.tol }
    }

    pub fn with_tolerance(&self, tol: T) -> Result<Self> {
        Self::with_tol(self.v, tol)
    }

    /// Triad triangle `T_{i+1}`: vertices `i-1, i, i+1`.
    pub fn triad_triangle(&self, i: usize) -> Triangle<T> {
        let (p, q, r) = (self.vertex(i + 3), self.vertex(i), self.vertex(i + 1));
        Triangle::with_tol(p, q, r, self.tol).expect("validated quadrilateral")
    }

    /// The triangle formed by the three vertices other than `i`.
    pub fn opposite_triangle(&self, i: usize) -> Triangle<T> {
        self.triad_triangle(i + 2)
    }

    /// Shoelace area; positive for counter-clockwise order.
    pub fn signed_area(&self) -> T {
        let mut s = T::zero();
        for i in 0..4 {
            s = s + self.vertex(i).cross(self.vertex(i + 1));
        }
        s * T::lit(0.5)
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    /// `+1` for counter-clockwise, `-1` for clockwise traversal.
    pub fn orientation(&self) -> T {
        if self.signed_area() < T::zero() {
            -T::one()
        } else {
            T::one()
        }
    }

    pub fn convexity(&self) -> Convexity {
        let s: Vec<bool> =
            (0..4).map(|i| orient(self.vertex(i + 3), self.vertex(i), self.vertex(i + 1)) > T::zero()).collect();
        match s.iter().filter(|&&x| x).count() {
            0 | 4 => Convexity::Convex,
            1 | 3 => Convexity::Concave,
            _ => Convexity::SelfIntersecting,
        }
    }

    /// Interior angles in `(0, 2 pi)` from the signed turning at each vertex.
    pub fn interior_angles(&self) -> [T; 4] {
        let s = self.orientation();
        std::array::from_fn(|i| {
            let (p, v, n) = (self.vertex(i + 3), self.vertex(i), self.vertex(i + 1));
            T::PI() - s * signed_angle(v - p, n - v)
        })
    }

    /// Cotangents of the interior angles. Reversing the orientation flips
    /// every sign, which leaves products of pairs unchanged.
    pub fn interior_cotangents(&self) -> Result<[T; 4]> {
        let mut out = [T::zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            let (p, v, n) = (self.vertex(i + 3), self.vertex(i), self.vertex(i + 1));
            let (u, w) = (n - v, p - v);
            let cr = u.cross(w);
            if cr.abs() <= self.tol * u.norm() * w.norm() {
                return Err(GeomError::IllConditionedAngles);
            }
            *o = u.dot(w) / cr;
        }
        Ok(out)
    }

    /// Side vectors `AB, BC, CD, DA`.
    pub fn sides(&self) -> [Point<T>; 4] {
        std::array::from_fn(|i| self.vertex(i + 1) - self.vertex(i))
    }

    fn parallel(&self, u: Point<T>, w: Point<T>) -> bool {
        u.cross(w).abs() <= self.tol * u.norm() * w.norm()
    }

    /// Which opposite side pairs are parallel: `(AB || CD, BC || DA)`.
    pub fn parallel_pairs(&self) -> (bool, bool) {
        let s = self.sides();
        (self.parallel(s[0], s[2]), self.parallel(s[1], s[3]))
    }

    /// Distance of `D` from the circle through `A, B, C`.
    pub fn concyclic_gap(&self) -> T {
        let [a, b, c, d] = self.v;
        let o = circumcenter_tol(a, b, c, T::zero()).expect("validated quadrilateral");
        (d.dist(o) - a.dist(o)).abs()
    }

    /// Cyclic when `D` is within `tol * diameter` of circle `ABC`.
    pub fn is_cyclic(&self) -> bool {
        self.concyclic_gap() <= self.eps()
    }

    /// Each vertex within `tol * diameter` of the orthocenter of the others.
    pub fn is_orthocentric(&self) -> bool {
        let eps = self.eps();
        (0..4).all(|i| self.opposite_triangle(i).orthocenter().dist(self.vertex(i)) <= eps)
    }

    pub fn cast<U: Real>(&self) -> Result<Quadrilateral<U>> {
        Quadrilateral::with_tol(self.v.map(|p| p.cast()), U::default_tol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convexity {
    Convex,
    Concave,
    SelfIntersecting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeClass {
    pub convexity: Convexity,
    pub cyclic: bool,
    pub orthocentric: bool,
    pub trapezoid: bool,
    pub parallelogram: bool,
}

pub fn classify<T: Real>(q: &Quadrilateral<T>) -> ShapeClass {
    let (p1, p2) = q.parallel_pairs();
    ShapeClass {
        convexity: q.convexity(),
        cyclic: q.is_cyclic(),
        orthocentric: q.is_orthocentric(),
        trapezoid: p1 || p2,
        parallelogram: p1 && p2,
    }
}

/// `|(alpha + gamma) - pi|` from the interior angles.
pub fn noncyclicity_measure<T: Real>(q: &Quadrilateral<T>) -> T {
    signed_noncyclicity(q).abs()
}

/// `(alpha + gamma) - pi`; negative when `D` is inside circle `ABC` for a
/// convex quadrilateral.
pub fn signed_noncyclicity<T: Real>(q: &Quadrilateral<T>) -> T {
    let a = q.interior_angles();
    a[0] + a[2] - T::PI()
}

/// Interior angles and the eight signed angles between sides and diagonals.
///
/// With `s` the orientation sign: `alpha1` runs from `AC` to `AD`, `alpha2`
/// from `AB` to `AC`, and cyclically `beta1: BD -> BA`, `beta2: BC -> BD`,
/// `gamma1: CA -> CB`, `gamma2: CD -> CA`, `delta1: DB -> DC`,
/// `delta2: DA -> DB`. So `alpha1 + alpha2 = alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleDecomposition<T> {
    pub interior: [T; 4],
    pub alpha: [T; 2],
    pub beta: [T; 2],
    pub gamma: [T; 2],
    pub delta: [T; 2],
}

pub fn angle_decomposition<T: Real>(q: &Quadrilateral<T>) -> AngleDecomposition<T> {
    let s = q.orientation();
    let [a, b, c, d] = q.vertices();
    let sa = |v: Point<T>, x: Point<T>, y: Point<T>| s * signed_angle(x - v, y - v);
    AngleDecomposition {
        interior: q.interior_angles(),
        alpha: [sa(a, c, d), sa(a, b, c)],
        beta: [sa(b, d, a), sa(b, c, d)],
        gamma: [sa(c, a, b), sa(c, d, a)],
        delta: [sa(d, b, c), sa(d, a, b)],
    }
}

fn cot<T: Real>(x: T) -> T {
    x.cos() / x.sin()
}

/// Both side/diagonal cotangent products, each equal to `4r`.
pub fn cotangent_products<T: Real>(q: &Quadrilateral<T>) -> [T; 2] {
    let g = angle_decomposition(q);
    let first = (cot(g.alpha[0]) - cot(g.beta[1])) * (cot(g.delta[1]) - cot(g.gamma[0]));
    let second = (cot(g.alpha[1]) - cot(g.delta[0])) * (cot(g.beta[0]) - cot(g.gamma[1]));
    [first, second]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(xy: [[f64; 2]; 4]) -> Quadrilateral<f64> {
        Quadrilateral::from_xy(xy).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(
            Quadrilateral::from_xy([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 3.0]]),
            Err(GeomError::CollinearTriad(2))
        );
        assert!(matches!(
            Quadrilateral::from_xy([[0.0, 0.0], [0.0, 0.0], [2.0, 1.0], [1.0, 3.0]]),
            Err(GeomError::InvalidQuadrilateral(_))
        ));
        assert!(Quadrilateral::from_xy([[0.0, f64::NAN], [1.0, 0.0], [2.0, 1.0], [1.0, 3.0]]).is_err());
    }

    #[test]
    fn square_classification() {
        let s = classify(&q([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]));
        assert_eq!(s.convexity, Convexity::Convex);
        assert!(s.cyclic && s.trapezoid && s.parallelogram && !s.orthocentric);
    }

    #[test]
    fn orthocentric_classification() {
        // D = orthocenter of (0,0),(4,0),(2,3)
        let s = classify(&q([[0.0, 0.0], [4.0, 0.0], [2.0, 3.0], [2.0, 4.0 / 3.0]]));
        assert_eq!(s.convexity, Convexity::Concave);
        assert!(s.orthocentric && !s.cyclic);
    }

    #[test]
    fn dart_classification() {
        let quad = q([[0.0, 0.0], [4.0, 0.0], [1.0, 1.0], [0.0, 4.0]]);
        // oracle: cross-product signs 3 vs 1
        let signs: Vec<bool> =
            (0..4).map(|i| orient(quad.vertex(i + 3), quad.vertex(i), quad.vertex(i + 1)) > 0.0).collect();
        assert_eq!(signs.iter().filter(|&&b| b).count(), 3);
        let s = classify(&quad);
        assert_eq!(s.convexity, Convexity::Concave);
        assert!(!s.cyclic);
    }

    #[test]
    fn interior_angles_sum_to_two_pi() {
        for xy in [
            [[0.0, 0.0], [4.0, 0.0], [5.0, 3.0], [1.0, 4.0]],
            [[0.0, 0.0], [4.0, 0.0], [1.0, 1.0], [0.0, 4.0]],
            [[0.0, 0.0], [0.0, 4.0], [1.0, 1.0], [4.0, 0.0]],
        ] {
            let a = q(xy).interior_angles();
            assert!((a.iter().sum::<f64>() - std::f64::consts::TAU).abs() < 1e-14);
        }
        let a = q([[0.0, 0.0], [4.0, 0.0], [1.0, 1.0], [0.0, 4.0]]).interior_angles();
        assert!(a[2] > std::f64::consts::PI);
    }

    #[test]
    fn self_intersecting_detected() {
        let quad = q([[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 2.2]]);
        assert_eq!(quad.convexity(), Convexity::SelfIntersecting);
    }

    #[test]
    fn noncyclicity_examples() {
        assert!(noncyclicity_measure(&q([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])) < 1e-15);
        let on_circle = |t: f64| [2.0 * t.cos() + 0.5, 2.0 * t.sin() - 1.0];
        let c = q([on_circle(0.3), on_circle(1.9), on_circle(3.0), on_circle(5.1)]);
        assert!(noncyclicity_measure(&c) < 1e-10);
        let quad = q([[0.0, 0.0], [4.0, 0.0], [5.0, 3.0], [1.0, 4.0]]);
        // incircle determinant oracle for D against ABC
        let [a, b, cc, d] = quad.vertices();
        let row = |p: Point<f64>| [p.x - d.x, p.y - d.y, (p.x - d.x).powi(2) + (p.y - d.y).powi(2)];
        let (r1, r2, r3) = (row(a), row(b), row(cc));
        let det = r1[0] * (r2[1] * r3[2] - r2[2] * r3[1]) - r1[1] * (r2[0] * r3[2] - r2[2] * r3[0])
            + r1[2] * (r2[0] * r3[1] - r2[1] * r3[0]);
        // counter-clockwise ABC: det > 0 iff D inside, iff alpha + gamma < pi
        assert!(quad.signed_area() > 0.0 && det.abs() > 1.0);
        assert_eq!(det > 0.0, signed_noncyclicity(&quad) < 0.0);
        assert!(noncyclicity_measure(&quad) > 1e-3);
    }
}
