use serde::{Deserialize, Serialize};

use super::quadrilateral::Quadrilateral;
use crate::error::{GeomError, Result};
use crate::kernel::{
    circumcenter_tol, fit_direct_similarity, isogonal_conjugate_triangle, GenCircle, MaybePoint, Point,
    SpiralSimilarity,
};
use crate::scalar::Real;

/// The four triad circles `o1 = (DAB)`, `o2 = (ABC)`, `o3 = (BCD)`,
/// `o4 = (CDA)`, indexed by their middle vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriadSystem<T> {
    pub circles: [GenCircle<T>; 4],
    pub centers: [Point<T>; 4],
    pub radii: [T; 4],
}

/// Centers and radii of the four triad circles, computed directly from the
/// vertices (well conditioned even when the circles are tiny and far from
/// the origin).
pub fn triad_parts<T: Real>(q: &Quadrilateral<T>) -> ([Point<T>; 4], [T; 4]) {
    let centers: [Point<T>; 4] = std::array::from_fn(|i| {
        // tolerance zero: the quadrilateral already rejected collinear triads
        circumcenter_tol(q.vertex(i + 3), q.vertex(i), q.vertex(i + 1), T::zero()).expect("validated quadrilateral")
    });
    let radii = std::array::from_fn(|i| {
        let c = centers[i];
        (c.dist(q.vertex(i + 3)) + c.dist(q.vertex(i)) + c.dist(q.vertex(i + 1))) / T::lit(3.0)
    });
    (centers, radii)
}

/// Fails with `DegenerateCircle` only when a triad circle is too small
/// relative to its distance from the origin for the coefficient form.
pub fn triad_circles<T: Real>(q: &Quadrilateral<T>) -> Result<TriadSystem<T>> {
    let (centers, radii) = triad_parts(q);
    let mut circles = [GenCircle::circle(centers[0], radii[0]).map_err(|_| GeomError::DegenerateCircle)?; 4];
    for i in 1..4 {
        circles[i] = GenCircle::circle(centers[i], radii[i]).map_err(|_| GeomError::DegenerateCircle)?;
    }
    Ok(TriadSystem { circles, centers, radii })
}

/// Circumcenter of a cyclic quadrilateral (the circle through `A, B, C`).
pub fn circumcenter<T: Real>(q: &Quadrilateral<T>) -> Point<T> {
    circumcenter_tol(q.vertex(0), q.vertex(1), q.vertex(2), T::zero()).expect("validated quadrilateral")
}

/// The quadrilateral of triad-circle centers.
pub fn next_generation<T: Real>(q: &Quadrilateral<T>) -> Result<Quadrilateral<T>> {
    if q.is_cyclic() {
        let o = circumcenter(q);
        return Err(GeomError::CyclicDegeneration { x: o.x.to_f64_lossy(), y: o.y.to_f64_lossy() });
    }
    Quadrilateral::with_tol(triad_parts(q).0, q.tol())
}

/// Inverse of [`next_generation`]: vertex `i` of the result is the isogonal
/// conjugate of vertex `i + 2` in the triangle of vertices `i - 1, i, i + 1`.
pub fn prev_generation<T: Real>(q: &Quadrilateral<T>) -> Result<Quadrilateral<T>> {
    let mut v = [Point::origin(); 4];
    for (i, slot) in v.iter_mut().enumerate() {
        match isogonal_conjugate_triangle(&q.triad_triangle(i), q.vertex(i + 2)) {
            MaybePoint::Finite(p) => *slot = p,
            MaybePoint::AtInfinity { .. } => return Err(GeomError::OrthocentricDegeneration),
            MaybePoint::Undefined => return Err(GeomError::DegenerateConjugate),
        }
    }
    Quadrilateral::with_tol(v, q.tol())
}

/// `r = (cot alpha + cot gamma)(cot beta + cot delta) / 4`.
pub fn similarity_ratio<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let c = q.interior_cotangents()?;
    Ok((c[0] + c[2]) * (c[1] + c[3]) * T::lit(0.25))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Generation `n` with `q` counted as generation 1: `q` followed by `steps`
/// further quadrilaterals in the given direction.
pub fn iterate<T: Real>(q: &Quadrilateral<T>, steps: usize, dir: Direction) -> Result<Vec<Quadrilateral<T>>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(*q);
    for _ in 0..steps {
        let cur = out.last().unwrap();
        let next = match dir {
            Direction::Forward => next_generation(cur)?,
            Direction::Backward => prev_generation(cur)?,
        };
        out.push(next);
    }
    Ok(out)
}

/// Direct similarity carrying `q` onto its third generation, fitted by
/// least squares over the four vertex pairs.
pub fn generation_spiral<T: Real>(q: &Quadrilateral<T>) -> Result<SpiralSimilarity<T>> {
    let q3 = next_generation(&next_generation(q)?)?;
    let (alpha, beta) = fit_direct_similarity(&q.vertices(), &q3.vertices())?;
    SpiralSimilarity::from_affine(alpha, beta, q.tol())
}
