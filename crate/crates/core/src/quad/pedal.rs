use super::generation::{circumcenter, triad_parts};
use super::isoptic::{isoptic_point, triad_cs};
use super::quadrilateral::{noncyclicity_measure, Quadrilateral};
use crate::error::{GeomError, Result};
use crate::kernel::{
    centroid, circumcircle_tol, diameter, intersect_tol, invert_point, isogonal_conjugate_triangle, line_line, project,
    second_intersection, GenCircle, MaybePoint, Point, Triangle,
};
use crate::scalar::Real;

/// Feet of the perpendiculars from `p` to the side lines `AB, BC, CD, DA`.
pub fn pedal_quadrilateral<T: Real>(q: &Quadrilateral<T>, p: Point<T>) -> [Point<T>; 4] {
    std::array::from_fn(|i| project(p, q.vertex(i), q.vertex(i + 1)))
}

/// Midpoints of `AB, BC, CD, DA`.
pub fn varignon<T: Real>(q: &Quadrilateral<T>) -> [Point<T>; 4] {
    std::array::from_fn(|i| q.vertex(i).midpoint(q.vertex(i + 1)))
}

/// `|P0 - P1 + P2 - P3|`: zero exactly for a parallelogram `P0 P1 P2 P3`.
pub fn parallelogram_defect<T: Real>(p: &[Point<T>; 4]) -> T {
    (p[0] - p[1] + p[2] - p[3]).norm()
}

/// Unsigned vertex angles of a quadrilateral given as a point list.
pub fn vertex_angles<T: Real>(p: &[Point<T>; 4]) -> [T; 4] {
    std::array::from_fn(|i| {
        let v = p[i];
        let (u, w) = (p[(i + 3) % 4] - v, p[(i + 1) % 4] - v);
        u.cross(w).abs().atan2(u.dot(w))
    })
}

/// Total least-squares line through `pts` as `(point, unit direction)`,
/// with the largest distance of any point from it.
pub fn best_fit_line<T: Real>(pts: &[Point<T>]) -> (Point<T>, Point<T>, T) {
    let c = centroid(pts);
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for p in pts {
        let d = *p - c;
        sxx = sxx + d.x * d.x;
        syy = syy + d.y * d.y;
        sxy = sxy + d.x * d.y;
    }
    let theta = (T::lit(2.0) * sxy).atan2(sxx - syy) * T::lit(0.5);
    let dir = Point::new(theta.cos(), theta.sin());
    let worst = pts.iter().fold(T::zero(), |m, p| m.max(dir.cross(*p - c).abs()));
    (c, dir, worst)
}

fn circle_or_line<T: Real>(p: Point<T>, q: Point<T>, r: Point<T>, tol: T) -> Result<GenCircle<T>> {
    match circumcircle_tol(p, q, r, tol) {
        Ok(g) => Ok(g),
        Err(GeomError::CollinearInput) => {
            let (a, b) = if p.dist(q) >= p.dist(r) { (p, q) } else { (p, r) };
            GenCircle::line_through(a, b)
        }
        Err(e) => Err(e),
    }
}

/// Center of the spiral similarity taking `A -> D` and `B -> C`.
pub fn miquel_point<T: Real>(q: &Quadrilateral<T>) -> MaybePoint<T> {
    let [a, b, c, d] = q.vertices().map(|p| p.to_complex());
    let alpha = (d - c) / (a - b);
    let one_minus = num_complex::Complex::new(T::one(), T::zero()) - alpha;
    if one_minus.norm() <= q.tol() {
        return MaybePoint::at_infinity(q.vertex(1) - q.vertex(0));
    }
    MaybePoint::from(Point::from_complex((d - alpha * a) / one_minus))
}

/// The Simson point `S`.
///
/// Parallelograms give a point at infinity (along `AB`); trapezoids the
/// intersection of the two nonparallel sides; cyclic input the second
/// intersection of circles `(BOD)` and `(AOC)`; near-cyclic input the
/// Miquel construction; otherwise the point of `CS(o1, o3) & CS(o2, o4)`
/// away from `W`.
pub fn simson_point<T: Real>(q: &Quadrilateral<T>) -> MaybePoint<T> {
    let tol = q.tol();
    let [a, b, c, d] = q.vertices();
    let (ab_cd, bc_da) = q.parallel_pairs();
    if ab_cd && bc_da {
        return MaybePoint::at_infinity(b - a);
    }
    if ab_cd {
        return line_line(b, c - b, d, a - d, tol).map_or(MaybePoint::Undefined, MaybePoint::Finite);
    }
    if bc_da {
        return line_line(a, b - a, c, d - c, tol).map_or(MaybePoint::Undefined, MaybePoint::Finite);
    }
    if q.is_cyclic() {
        let o = circumcenter(q);
        let circles = circle_or_line(b, o, d, tol).and_then(|g1| Ok((g1, circle_or_line(a, o, c, tol)?)));
        return match circles {
            Ok((g1, g2)) => second_intersection(&g1, &g2, o, tol),
            Err(_) => MaybePoint::Undefined,
        };
    }
    if noncyclicity_measure(q) < T::lit(1e3) * tol {
        return miquel_point(q);
    }
    simson_point_cs(q).unwrap_or_else(|_| miquel_point(q))
}

/// `S` from `CS(o1, o3)` and `CS(o2, o4)`, excluding `W`.
pub fn simson_point_cs<T: Real>(q: &Quadrilateral<T>) -> Result<MaybePoint<T>> {
    let shift = q.centroid();
    let local = q.translated(-shift);
    let (cs, rs) = triad_parts(&local);
    let g13 = triad_cs(&cs, &rs, 0, 2, q.tol())?;
    let g24 = triad_cs(&cs, &rs, 1, 3, q.tol())?;
    let pts = intersect_tol(&g13, &g24, q.tol())?;
    let w = isoptic_point(&local).finite();
    let far = |p: &Point<T>| w.map_or(T::infinity(), |w| p.dist(w));
    let best = pts.iter().copied().max_by(|x, y| far(x).partial_cmp(&far(y)).unwrap_or(std::cmp::Ordering::Equal));
    match best {
        Some(p) if far(&p) > q.eps() => Ok(MaybePoint::Finite(p + shift)),
        _ => Err(GeomError::NoIntersection),
    }
}

/// The line through the four pedal feet of `S`.
pub fn simson_line<T: Real>(q: &Quadrilateral<T>) -> Result<GenCircle<T>> {
    let s = simson_point(q).require()?;
    let feet = pedal_quadrilateral(q, s);
    let (c, dir, _) = best_fit_line(&feet);
    GenCircle::line_dir(c, dir)
}

/// Largest distance of the four feet from their best-fit line.
pub fn collinearity_defect<T: Real>(p: &[Point<T>; 4]) -> T {
    best_fit_line(p).2
}

/// Vertices `P_A = l_A & l_B`, `P_B = l_B & l_C`, `P_C = l_C & l_D`,
/// `P_D = l_D & l_A`, where `l_V` is the reflection of line `VP` in the
/// angle bisector at `V`. Parallel pairs give points at infinity.
pub fn isogonal_conjugate_quad<T: Real>(q: &Quadrilateral<T>, p: Point<T>) -> [MaybePoint<T>; 4] {
    let lines: [Option<(Point<T>, Point<T>)>; 4] = std::array::from_fn(|i| {
        let v = q.vertex(i);
        let e1 = (q.vertex(i + 3) - v).normalized()?;
        let e2 = (q.vertex(i + 1) - v).normalized()?;
        let bis = (e1 + e2).normalized()?;
        let dp = p - v;
        if dp.norm() <= q.eps() {
            return None;
        }
        let refl = bis * (T::lit(2.0) * dp.dot(bis)) - dp;
        Some((v, refl))
    });
    std::array::from_fn(|i| match (lines[i], lines[(i + 1) % 4]) {
        (Some((p1, u)), Some((p2, v))) => match line_line(p1, u, p2, v, q.tol()) {
            Some(x) => MaybePoint::from(x),
            None => MaybePoint::at_infinity(u),
        },
        _ => MaybePoint::Undefined,
    })
}

fn reconstruct<T: Real>(p: Point<T>, feet: &[Point<T>; 4], tol: T) -> Result<Quadrilateral<T>> {
    let scale = diameter(&[p, feet[0], feet[1], feet[2], feet[3]]);
    let mut dirs = [Point::origin(); 4];
    for (i, f) in feet.iter().enumerate() {
        let n = *f - p;
        if n.norm() <= tol * scale {
            // the point lies on that side line, whose direction is then lost
            return Err(GeomError::Underdetermined);
        }
        dirs[i] = n.perp();
    }
    let mut v = [Point::origin(); 4];
    for (i, slot) in v.iter_mut().enumerate() {
        let j = (i + 3) % 4;
        *slot = line_line(feet[j], dirs[j], feet[i], dirs[i], tol).ok_or(GeomError::ParallelConsecutiveLines)?;
    }
    Quadrilateral::with_tol(v, tol)
}

/// Quadrilateral whose pedal quadrilateral from `w` is `feet` (feet on
/// `AB, BC, CD, DA`): side `i` is the line through foot `i` perpendicular
/// to `w -> foot`.
pub fn reconstruct_from_pedal_w<T: Real>(w: Point<T>, feet: &[Point<T>; 4]) -> Result<Quadrilateral<T>> {
    reconstruct(w, feet, T::default_tol())
}

pub fn reconstruct_from_simson<T: Real>(s: Point<T>, feet: &[Point<T>; 4]) -> Result<Quadrilateral<T>> {
    reconstruct_from_simson_tol(s, feet, T::default_tol())
}

/// As [`reconstruct_from_pedal_w`] after checking the feet are collinear
/// within `tol` times their spread.
pub fn reconstruct_from_simson_tol<T: Real>(s: Point<T>, feet: &[Point<T>; 4], tol: T) -> Result<Quadrilateral<T>> {
    let spread = diameter(feet);
    if collinearity_defect(feet) > tol * spread.max(s.dist(feet[0])) {
        return Err(GeomError::NonCollinearFeet);
    }
    reconstruct(s, feet, tol)
}

/// Recovers `D` from `A, B, C` and the isoptic point `w`.
///
/// `(a w b)` and `(b w c)` are the circles of similitude of the triad circle
/// `(abc)` with its neighbours, so inverting the center of `(abc)` in them
/// gives the neighbouring centers; `D` is the second intersection of the
/// two neighbouring circles.
pub fn reconstruct_fourth_vertex<T: Real>(a: Point<T>, b: Point<T>, c: Point<T>, w: Point<T>) -> Result<Point<T>> {
    let tol = T::default_tol();
    let t = Triangle::with_tol(a, b, c, tol)?;
    let o2 = t.circumcircle();
    let b2 = t.circumcenter();
    let scale = t.diameter();
    if w.dist(b2) <= tol * scale {
        return Err(GeomError::Underdetermined);
    }
    if o2.distance(w) <= tol * scale {
        return Err(GeomError::DegenerateCircle);
    }
    let cs1 = circle_or_line(a, w, b, tol)?;
    let cs3 = circle_or_line(b, w, c, tol)?;
    let a2 = invert_point(&cs1, b2).require().map_err(|_| GeomError::Underdetermined)?;
    let c2 = invert_point(&cs3, b2).require().map_err(|_| GeomError::Underdetermined)?;
    let o1 = GenCircle::circle_through(a2, b)?;
    let o3 = GenCircle::circle_through(c2, b)?;
    second_intersection(&o1, &o3, b, tol).require().map_err(|_| GeomError::NoIntersection)
}

/// `D = Iso_{ABC}(Inv_{(ABC)}(w))`.
pub fn reconstruct_fourth_vertex_alt<T: Real>(a: Point<T>, b: Point<T>, c: Point<T>, w: Point<T>) -> Result<Point<T>> {
    let t = Triangle::new(a, b, c)?;
    let x = invert_point(&t.circumcircle(), w).require()?;
    isogonal_conjugate_triangle(&t, x).require()
}
