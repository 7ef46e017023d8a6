//! Scale-free residuals of the identities satisfied by `W`, `S` and the
//! generations. Distances are divided by the diameter of the quadrilateral.

use super::generation::{next_generation, prev_generation, similarity_ratio, triad_parts};
use super::isoptic::{inv_iso_candidates, inversion_candidates, triad_cs};
use super::pedal::{collinearity_defect, parallelogram_defect, pedal_quadrilateral, varignon, vertex_angles};
use super::quadrilateral::{cotangent_products, Quadrilateral};
use crate::error::Result;
use crate::kernel::{
    circumcircle_tol, directed_angle, invert_in, line_line, second_intersection, signed_angle, similitude_from_parts,
    wrap_angle, GenCircle, MaybePoint, Point, SpiralSimilarity,
};
use crate::scalar::Real;

/// `| |r| - Area(Q2) / Area(Q1) |`.
pub fn area_ratio<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let r = similarity_ratio(q)?;
    let q2 = next_generation(q)?;
    Ok((r.abs() - q2.area() / q.area()).abs())
}

/// Largest `|a_i + a'_i - pi|` (mod `2 pi`) over corresponding interior angles
/// of consecutive generations.
pub fn supplementary_angles<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let q2 = next_generation(q)?;
    let (a, b) = (q.interior_angles(), q2.interior_angles());
    Ok((0..4).fold(T::zero(), |m, i| m.max(wrap_angle(a[i] + b[i] - T::PI()).abs())))
}

/// Largest difference, mod `pi`, between the directed angles from side
/// `V_i V_{i+1}` to side `V_i V_{i-1}` in consecutive generations. Holds for
/// every noncyclic input; supplementarity of the interior angles is the
/// convex special case.
pub fn angles_mod_pi<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let q2 = next_generation(q)?;
    let mut worst = T::zero();
    for i in 0..4 {
        let a = directed_angle(q.vertex(i + 1), q.vertex(i), q.vertex(i + 3))?;
        let b = directed_angle(q2.vertex(i + 1), q2.vertex(i), q2.vertex(i + 3))?;
        worst = worst.max(a.dist(b));
    }
    Ok(worst)
}

/// Deviations of the two side/diagonal cotangent products from `4r`,
/// relative to `max(1, |4r|)`.
pub fn cotangent_identities<T: Real>(q: &Quadrilateral<T>) -> Result<[T; 2]> {
    let four_r = similarity_ratio(q)? * T::lit(4.0);
    let p = cotangent_products(q);
    let s = T::one().max(four_r.abs());
    Ok([(p[0] - four_r).abs() / s, (p[1] - four_r).abs() / s])
}

/// Relative defects of `|AC||BD| = |AB||CD| + |BC||AD|` and
/// `|AC|/|BD| = (|AB||AD| + |CB||CD|) / (|BA||BC| + |DA||DC|)`.
pub fn ptolemy<T: Real>(q: &Quadrilateral<T>) -> [T; 2] {
    let [a, b, c, d] = q.vertices();
    let (ab, bc, cd, da, ac, bd) = (a.dist(b), b.dist(c), c.dist(d), d.dist(a), a.dist(c), b.dist(d));
    let lhs1 = ac * bd;
    let rhs1 = ab * cd + bc * da;
    let lhs2 = ac / bd;
    let rhs2 = (ab * da + bc * cd) / (ab * bc + da * cd);
    [(lhs1 - rhs1).abs() / lhs1, (lhs2 - rhs2).abs() / lhs2]
}

/// Largest vertex distance between two quadrilaterals, minimised over the
/// cyclic relabelings of `b`, over the diameter of `a`.
pub fn vertex_distance<T: Real>(a: &Quadrilateral<T>, b: &Quadrilateral<T>) -> T {
    let (va, vb) = (a.vertices(), b.vertices());
    let best =
        (0..4).map(|s| (0..4).fold(T::zero(), |m, i| m.max(va[i].dist(vb[(i + s) % 4])))).fold(T::infinity(), T::min);
    best / a.diameter()
}

/// `Q3` against `Q1`; vanishes when the process has period two.
pub fn periodicity<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let q3 = next_generation(&next_generation(q)?)?;
    Ok(vertex_distance(q, &q3))
}

/// `prev(next(Q))` against `Q`, vertex for vertex, over the diameter.
pub fn prev_after_next<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let back = prev_generation(&next_generation(q)?)?;
    Ok(labelled_distance(q, &back))
}

/// `next(prev(Q))` against `Q`, vertex for vertex, over the diameter.
pub fn next_after_prev<T: Real>(q: &Quadrilateral<T>) -> Result<T> {
    let fwd = next_generation(&prev_generation(q)?)?;
    Ok(labelled_distance(q, &fwd))
}

fn labelled_distance<T: Real>(a: &Quadrilateral<T>, b: &Quadrilateral<T>) -> T {
    let (va, vb) = (a.vertices(), b.vertices());
    (0..4).fold(T::zero(), |m, i| m.max(va[i].dist(vb[i]))) / a.diameter()
}

/// Largest pairwise distance among `W` and the eight candidates of the
/// inversive and conjugate-inversive routes.
pub fn inversion_agreement<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<T> {
    let mut pts = vec![w];
    for m in inversion_candidates(q)?.into_iter().chain(inv_iso_candidates(q)?) {
        match m {
            MaybePoint::Finite(p) => pts.push(p),
            _ => return Ok(T::infinity()),
        }
    }
    let d = q.diameter();
    Ok(pts.iter().fold(T::zero(), |m, p| m.max(p.dist(w))) / d)
}

/// `W` on the circles of similitude of any two triad circles from
/// generations 1..=3. Computed in a frame centred at `w`.
pub fn cross_generation<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<T> {
    let local = q.translated(-w);
    let q2 = next_generation(&local)?;
    let q3 = next_generation(&q2)?;
    let mut centers = Vec::with_capacity(12);
    let mut radii = Vec::with_capacity(12);
    for g in [&local, &q2, &q3] {
        let (c, r) = triad_parts(g);
        centers.extend_from_slice(&c);
        radii.extend_from_slice(&r);
    }
    let d = q.diameter();
    let origin = Point::origin();
    let mut worst = T::zero();
    for i in 0..12 {
        for j in i + 1..12 {
            let cs = similitude_from_parts(centers[i], radii[i], centers[j], radii[j], q.tol())?;
            worst = worst.max(cs.distance(origin) / d);
        }
    }
    Ok(worst)
}

/// Spiral similarity `H_{k,l}` about `w`: ratio `R_l / R_k`, angle from
/// `O_k` to `O_l` seen from `w` (0-based indices).
pub fn transport_spiral<T: Real>(q: &Quadrilateral<T>, w: Point<T>, k: usize, l: usize) -> Result<SpiralSimilarity<T>> {
    let (c, r) = triad_parts(q);
    SpiralSimilarity::new(w, r[l] / r[k], signed_angle(c[k] - w, c[l] - w))
}

/// `H_{1,4}(B) = C`, `H_{1,2}(D) = C`, `H_{4,2}(D) = B`.
pub fn spiral_transport<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<T> {
    let [_, b, c, d] = q.vertices();
    let cases = [((0, 3), b, c), ((0, 1), d, c), ((3, 1), d, b)];
    let mut worst = T::zero();
    for ((k, l), from, to) in cases {
        let h = transport_spiral(q, w, k, l)?;
        worst = worst.max(h.apply(from).dist(to));
    }
    Ok(worst / q.diameter())
}

/// Feet `F_a, F_b, F_c, F_d`: the perpendicular bisector of a side meets
/// the opposite side line. `None` when they are parallel.
pub fn bisector_feet<T: Real>(q: &Quadrilateral<T>) -> [Option<Point<T>>; 4] {
    std::array::from_fn(|i| {
        let (x, y) = (q.vertex(i), q.vertex(i + 1));
        let (u, v) = (q.vertex(i + 2), q.vertex(i + 3));
        line_line(x.midpoint(y), (y - x).perp(), u, v - u, q.tol())
    })
}

/// `W` on the eight circles through a vertex, a bisector foot and a
/// next-generation vertex.
pub fn feet_circles<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<T> {
    let f = bisector_feet(q);
    let (c2, _) = triad_parts(q);
    let [a, b, c, d] = q.vertices();
    // (vertex, foot index, next-generation index), feet a=0 .. d=3
    let spec = [(a, 1, 1), (a, 2, 3), (b, 2, 2), (b, 3, 0), (c, 3, 3), (c, 0, 1), (d, 0, 0), (d, 1, 2)];
    let mut worst = T::zero();
    for (v, fi, ci) in spec {
        let Some(foot) = f[fi] else { continue };
        let Ok(circle) = circumcircle_tol(v, foot, c2[ci], q.tol()) else { continue };
        worst = worst.max(circle.distance(w));
    }
    Ok(worst / q.diameter())
}

/// Parallelogram defect of the pedal of `p`, over the diameter.
pub fn pedal_parallelogram<T: Real>(q: &Quadrilateral<T>, p: Point<T>) -> T {
    parallelogram_defect(&pedal_quadrilateral(q, p)) / q.diameter()
}

/// Largest difference between the sorted vertex angles of the pedal of `p`
/// and of the Varignon parallelogram.
pub fn varignon_angles<T: Real>(q: &Quadrilateral<T>, p: Point<T>) -> T {
    let sorted = |x: [T; 4]| {
        let mut v = x.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        v
    };
    let a = sorted(vertex_angles(&pedal_quadrilateral(q, p)));
    let b = sorted(vertex_angles(&varignon(q)));
    (0..4).fold(T::zero(), |m, i| m.max((a[i] - b[i]).abs()))
}

/// Collinearity defect of the pedal of `p`, over the diameter.
pub fn pedal_collinear<T: Real>(q: &Quadrilateral<T>, p: Point<T>) -> T {
    collinearity_defect(&pedal_quadrilateral(q, p)) / q.diameter()
}

/// The second intersection `Y` (besides `w`) of the circles of similitude of
/// opposite triad circles of the previous generation, `CS(o1, o3)` and
/// `CS(o2, o4)`.
pub fn auxiliary_point<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<Point<T>> {
    let q0 = prev_generation(q)?.translated(-w);
    let (c, r) = triad_parts(&q0);
    let g1 = triad_cs(&c, &r, 0, 2, q.tol())?;
    let g2 = triad_cs(&c, &r, 1, 3, q.tol())?;
    Ok(second_intersection(&g1, &g2, Point::origin(), q.tol()).require()? + w)
}

/// Distance of `P0 P1 P2 P3` from a crossed isosceles trapezoid (read as
/// `P0 P1 P3 P2` it has one pair of equal opposite sides and equal
/// diagonals): the larger opposite-side mismatch, or the distance of `P3`
/// from the circle through the other three.
pub fn isosceles_trapezoid_defect<T: Real>(p: &[Point<T>; 4]) -> T {
    let side = |i: usize| p[i].dist(p[(i + 1) % 4]);
    let sides = (side(0) - side(2)).abs().max((side(1) - side(3)).abs());
    let cyclic = circumcircle_tol(p[0], p[1], p[2], T::zero()).map_or(T::infinity(), |c| c.distance(p[3]));
    sides.max(cyclic)
}

/// Isosceles-trapezoid defect of the pedal of [`auxiliary_point`], over the
/// diameter.
pub fn auxiliary_pedal<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<T> {
    let y = auxiliary_point(q, w)?;
    Ok(isosceles_trapezoid_defect(&pedal_quadrilateral(q, y)) / q.diameter())
}

/// Complete-quadrangle duality under inversion in the circle of radius
/// `rho` about `w`: the image of each line through two vertices must be the
/// matching circle of similitude of the image quadrilateral. Each image
/// circle passes through `w` and the two image vertices (which lie on the
/// matching circle of similitude automatically), so `w` and the image of
/// an interior point of the segment are checked.
pub fn quadrangle_duality_check<T: Real>(q: &Quadrilateral<T>, w: Point<T>, rho: T) -> Result<T> {
    // work in a frame centred at w: the images can be tiny
    let origin = Point::origin();
    let img = |p: Point<T>| invert_in(origin, rho, p - w).require();
    let v = q.vertices();
    let iv = [img(v[0])?, img(v[1])?, img(v[2])?, img(v[3])?];
    let qi = Quadrilateral::with_tol(iv, q.tol())?;
    let (c, r) = triad_parts(&qi);
    // vertex pair -> triad pair of the image
    let pairs =
        [((0, 1), (0, 1)), ((1, 2), (1, 2)), ((2, 3), (2, 3)), ((3, 0), (3, 0)), ((0, 2), (1, 3)), ((1, 3), (0, 2))];
    let d = qi.diameter();
    let mut worst = T::zero();
    for ((x, y), (i, j)) in pairs {
        let cs: GenCircle<T> = triad_cs(&c, &r, i, j, q.tol())?;
        // a sample point of the segment away from w (a diagonal may pass through it)
        let (p1, p2) = (v[x].lerp(v[y], T::lit(1.0 / 3.0)), v[x].lerp(v[y], T::lit(2.0 / 3.0)));
        let m = img(if p1.dist(w) >= p2.dist(w) { p1 } else { p2 })?;
        worst = worst.max(cs.distance(origin)).max(cs.distance(m));
    }
    Ok(worst / d)
}

/// The circumcenter configuration of a triangle `ABC` and a point `P`:
/// `O, X, Y, Z` are the circumcenters of `ABC, APB, BPC, CPA`. Returns the
/// spread of `Inv_(ZOX)(A), Inv_(XOY)(B), Inv_(YOZ)(C), Inv_(XYZ)(P)` and
/// the distances `Iso_ZOX(A) - Y`, `Iso_XOY(B) - Z`, `Iso_YOZ(C) - X`, all
/// over the diameter of `A, B, C, P`.
pub fn four_circumcenters_check<T: Real>(t: &crate::kernel::Triangle<T>, p: Point<T>) -> Result<T> {
    use crate::error::GeomError;
    use crate::kernel::{circumcenter_tol, diameter, isogonal_conjugate_triangle, Triangle};
    let [a, b, c] = t.vertices();
    let tol = t.tol();
    let cc = |u, v, w| circumcenter_tol(u, v, w, tol).map_err(|_| GeomError::DegenerateCircle);
    let o = cc(a, b, c)?;
    let x = cc(a, p, b)?;
    let y = cc(b, p, c)?;
    let z = cc(c, p, a)?;
    let inv = |u: Point<T>, v: Point<T>, w: Point<T>, target: Point<T>| -> Result<Point<T>> {
        let ctr = cc(u, v, w)?;
        invert_in(ctr, ctr.dist(u), target).require().map_err(|_| GeomError::DegenerateCircle)
    };
    let pts = [inv(z, o, x, a)?, inv(x, o, y, b)?, inv(y, o, z, c)?, inv(x, y, z, p)?];
    let mut worst = T::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            worst = worst.max(pts[i].dist(pts[j]));
        }
    }
    let iso = |u, v, w, target: Point<T>, want: Point<T>| -> Result<T> {
        let tri = Triangle::with_tol(u, v, w, tol).map_err(|_| GeomError::DegenerateCircle)?;
        let m = isogonal_conjugate_triangle(&tri, target).require().map_err(|_| GeomError::DegenerateCircle)?;
        Ok(m.dist(want))
    };
    worst = worst.max(iso(z, o, x, a, y)?).max(iso(x, o, y, b, z)?).max(iso(y, o, z, c, x)?);
    Ok(worst / diameter(&[a, b, c, p]))
}
