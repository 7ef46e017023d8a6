use super::generation::{circumcenter, next_generation, prev_generation, similarity_ratio, triad_parts};
use super::quadrilateral::{noncyclicity_measure, Quadrilateral};
use crate::error::{GeomError, Result};
use crate::kernel::{
    centroid, directed_angle, invert_in, isogonal_conjugate_triangle, second_intersection, similitude_from_parts,
    GenCircle, MaybePoint, Point,
};
use crate::scalar::Real;

/// Index pairs of the six circles of similitude, `(i, j)` for `o_{i+1}, o_{j+1}`.
pub const CS_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Circle of similitude of triad circles `i` and `j` (0-based).
pub fn triad_cs<T: Real>(centers: &[Point<T>; 4], radii: &[T; 4], i: usize, j: usize, tol: T) -> Result<GenCircle<T>> {
    similitude_from_parts(centers[i], radii[i], centers[j], radii[j], tol)
}

/// All six circles of similitude in [`CS_PAIRS`] order.
pub fn all_cs<T: Real>(q: &Quadrilateral<T>) -> Result<Vec<GenCircle<T>>> {
    let (c, r) = triad_parts(q);
    CS_PAIRS.iter().map(|&(i, j)| triad_cs(&c, &r, i, j, q.tol())).collect()
}

/// Noncyclicity below this multiple of `tol` switches to the inversive route.
const NEAR_CYCLIC: f64 = 1e3;

fn mean_maybe<T: Real>(c: &[MaybePoint<T>]) -> MaybePoint<T> {
    if let Some(u) = c.iter().find(|m| m.is_undefined()) {
        return *u;
    }
    if let Some(inf) = c.iter().find(|m| m.is_at_infinity()) {
        return *inf;
    }
    let pts: Vec<Point<T>> = c.iter().filter_map(|m| m.finite()).collect();
    MaybePoint::Finite(centroid(&pts))
}

/// The isoptic point `W`.
///
/// Cyclic input gives the circumcenter and orthocentric input a point at
/// infinity (reported along `AB`). Near-cyclic input uses the inversive
/// route; otherwise `W` is the intersection of `CS(o1, o2)` and `CS(o1, o4)`
/// other than `A`. Tangent circles give `Undefined`.
pub fn isoptic_point<T: Real>(q: &Quadrilateral<T>) -> MaybePoint<T> {
    if q.is_cyclic() {
        return MaybePoint::Finite(circumcenter(q));
    }
    if q.is_orthocentric() {
        return MaybePoint::at_infinity(q.vertex(1) - q.vertex(0));
    }
    if noncyclicity_measure(q) < T::lit(NEAR_CYCLIC) * q.tol() {
        return isoptic_point_via_inversion(q).unwrap_or(MaybePoint::Undefined);
    }
    isoptic_point_cs(q).unwrap_or(MaybePoint::Undefined)
}

/// `W` from the circles of similitude only, without branch selection.
pub fn isoptic_point_cs<T: Real>(q: &Quadrilateral<T>) -> Result<MaybePoint<T>> {
    let shift = q.centroid();
    let local = q.translated(-shift);
    let (c, r) = triad_parts(&local);
    let cs12 = triad_cs(&c, &r, 0, 1, q.tol())?;
    let cs14 = triad_cs(&c, &r, 0, 3, q.tol())?;
    let w = second_intersection(&cs12, &cs14, local.vertex(0), q.tol());
    Ok(w.and_then(|p| MaybePoint::Finite(p + shift)))
}

/// `Inv_{o_i'}(V_i)` for each vertex, `o_i'` the triad circles of the next generation.
pub fn inversion_candidates<T: Real>(q: &Quadrilateral<T>) -> Result<[MaybePoint<T>; 4]> {
    let (c, r) = triad_parts(&next_generation(q)?);
    Ok(std::array::from_fn(|i| invert_in(c[i], r[i], q.vertex(i))))
}

/// Mean of the four [`inversion_candidates`].
pub fn isoptic_point_via_inversion<T: Real>(q: &Quadrilateral<T>) -> Result<MaybePoint<T>> {
    Ok(mean_maybe(&inversion_candidates(q)?))
}

/// `Inv_{o_{i+2}}(Iso_{T_{i+2}}(V_i))` for each vertex.
pub fn inv_iso_candidates<T: Real>(q: &Quadrilateral<T>) -> Result<[MaybePoint<T>; 4]> {
    let (c, r) = triad_parts(q);
    let mut out = [MaybePoint::Undefined; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        let k = (i + 2) % 4;
        let iso = isogonal_conjugate_triangle(&q.triad_triangle(k), q.vertex(i));
        if iso.is_undefined() {
            return Err(GeomError::DegenerateConjugate);
        }
        *slot = match iso {
            MaybePoint::Finite(p) => invert_in(c[k], r[k], p),
            _ => MaybePoint::Finite(c[k]),
        };
    }
    Ok(out)
}

/// Mean of the four [`inv_iso_candidates`].
pub fn isoptic_point_via_inv_iso<T: Real>(q: &Quadrilateral<T>) -> Result<MaybePoint<T>> {
    Ok(mean_maybe(&inv_iso_candidates(q)?))
}

/// Iterates forward (`|r| < 1`) or backward (`|r| > 1`) until the diameter
/// drops below `tol` times the initial one, then returns the centroid.
pub fn isoptic_point_via_limit<T: Real>(q: &Quadrilateral<T>, max_gen: usize, tol: T) -> Result<MaybePoint<T>> {
    let r = similarity_ratio(q)?.abs();
    if (r - T::one()).abs() <= T::lit(NEAR_CYCLIC) * q.tol() {
        return Err(GeomError::NonConvergent(r.to_f64_lossy()));
    }
    let d0 = q.diameter();
    let mut cur = *q;
    for _ in 0..max_gen {
        if cur.diameter() < tol * d0 {
            return Ok(MaybePoint::Finite(cur.centroid()));
        }
        let step = if r < T::one() { next_generation(&cur) } else { prev_generation(&cur) };
        cur = match step {
            Ok(n) => n,
            Err(GeomError::CyclicDegeneration { x, y }) => {
                return Ok(MaybePoint::Finite(Point::new(T::lit(x), T::lit(y))));
            }
            Err(e) => return Err(e),
        };
    }
    if cur.diameter() < tol * d0 {
        return Ok(MaybePoint::Finite(cur.centroid()));
    }
    Err(GeomError::NonConvergent(r.to_f64_lossy()))
}

/// `d_i / R_i` for each triad circle, `d_i` the distance from `w` to its center.
pub fn isoptic_quantity<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> [T; 4] {
    let (c, r) = triad_parts(q);
    std::array::from_fn(|i| w.dist(c[i]) / r[i])
}

/// Relative spread `(max - min) / mean` of a set of positive values (0 when all vanish).
pub fn relative_spread<T: Real>(v: &[T]) -> T {
    let n = T::from_usize(v.len()).unwrap();
    let mean = v.iter().fold(T::zero(), |s, x| s + *x) / n;
    let lo = v.iter().fold(T::infinity(), |m, x| m.min(*x));
    let hi = v.iter().fold(T::neg_infinity(), |m, x| m.max(*x));
    if mean == T::zero() {
        T::zero()
    } else {
        (hi - lo) / mean
    }
}

/// Products `|w V_k| * R_{k+2}`; at `W` all four agree.
pub fn isodynamic_products<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> [T; 4] {
    let (_, r) = triad_parts(q);
    std::array::from_fn(|k| w.dist(q.vertex(k)) * r[(k + 2) % 4])
}

/// Largest deviation of the [`isodynamic_products`] from their mean,
/// relative to the mean.
pub fn isodynamic_ratios<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> T {
    let p = isodynamic_products(q, w);
    let mean = p.iter().fold(T::zero(), |s, x| s + *x) / T::lit(4.0);
    if mean == T::zero() {
        return T::zero();
    }
    p.iter().fold(T::zero(), |m, x| m.max((*x - mean).abs())) / mean
}

/// Largest violation, in radians mod pi, of `<XwY = <XcY + <XdY` over the
/// four sides `XY`, with `c, d` the remaining vertices.
pub fn angle_sums_at_w<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> T {
    let mut worst = T::zero();
    for i in 0..4 {
        let (x, y) = (q.vertex(i), q.vertex(i + 1));
        let (c, d) = (q.vertex(i + 2), q.vertex(i + 3));
        let lhs = directed_angle(x, w, y);
        let (r1, r2) = (directed_angle(x, c, y), directed_angle(x, d, y));
        match (lhs, r1, r2) {
            (Ok(l), Ok(a), Ok(b)) => worst = worst.max(l.dist(a + b)),
            _ => return T::infinity(),
        }
    }
    worst
}

/// Largest distance from `w` to the six circles of similitude, divided by
/// the diameter.
pub fn six_cs_residual<T: Real>(q: &Quadrilateral<T>, w: Point<T>) -> Result<T> {
    let d = q.diameter();
    Ok(all_cs(q)?.iter().fold(T::zero(), |m, g| m.max(g.distance(w) / d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn q(xy: [[f64; 2]; 4]) -> Quadrilateral<f64> {
        Quadrilateral::from_xy(xy).unwrap()
    }

    fn example() -> Quadrilateral<f64> {
        q([[0.0, 0.0], [4.0, 0.0], [5.0, 3.0], [1.0, 4.0]])
    }

    const W_EX: Point<f64> = Point { x: 2.29173166926677, y: 1.9266770670826827 };

    #[test]
    fn example_w_matches_limit() {
        let quad = example();
        let w = isoptic_point(&quad).require().unwrap();
        assert!(w.dist(W_EX) < 1e-12);
        let lim = isoptic_point_via_limit(&quad, 100, 1e-12).unwrap().require().unwrap();
        assert!(w.dist(lim) < 1e-8 * quad.diameter());
        assert!(six_cs_residual(&quad, w).unwrap() < 1e-12);
    }

    #[test]
    fn cyclic_gives_circumcenter() {
        let on = |t: f64| [2.0 * t.cos() + 1.0, 2.0 * t.sin() + 3.0];
        let c = q([on(0.2), on(1.7), on(3.3), on(4.0)]);
        let w = isoptic_point(&c).require().unwrap();
        assert!(w.dist(Point::new(1.0, 3.0)) < 1e-14);
        assert!(isoptic_quantity(&c, w).iter().cloned().fold(0.0, f64::max) < 1e-14);
        assert!(angle_sums_at_w(&c, w) < 1e-14);
        assert!(matches!(isoptic_point_via_inversion(&c), Err(GeomError::CyclicDegeneration { .. })));
    }

    #[test]
    fn orthocentric_gives_infinity() {
        let o = q([[0.0, 0.0], [4.0, 0.0], [2.0, 3.0], [2.0, 4.0 / 3.0]]);
        assert!(isoptic_point(&o).is_at_infinity());
        assert!(isoptic_point_via_inv_iso(&o).unwrap().is_at_infinity());
    }

    #[test]
    fn four_routes_agree_on_example() {
        let quad = example();
        let d = quad.diameter();
        let w = isoptic_point(&quad).require().unwrap();
        let inv = inversion_candidates(&quad).unwrap();
        let ii = inv_iso_candidates(&quad).unwrap();
        for c in inv.iter().chain(ii.iter()) {
            let p = c.require().unwrap();
            assert!(p.dist(w) < 1e-8 * d);
        }
        for c in inv {
            for e in inv {
                assert!(c.require().unwrap().dist(e.require().unwrap()) < 1e-8 * d);
            }
        }
        let via = isoptic_point_via_inversion(&quad).unwrap().require().unwrap();
        assert!(via.dist(w) < 1e-8 * d);
        let via = isoptic_point_via_inv_iso(&quad).unwrap().require().unwrap();
        assert!(via.dist(w) < 1e-8 * d);
    }

    #[test]
    fn concave_backward_limit() {
        let quad = q([[0.0, 0.0], [4.0, 0.0], [1.0, 3.0], [1.5, 1.0]]);
        let r = similarity_ratio(&quad).unwrap();
        assert!(r > 1.0);
        let w = isoptic_point(&quad).require().unwrap();
        assert!(w.dist(Point::new(-6.36, 2.52)) < 0.01);
        let lim = isoptic_point_via_limit(&quad, 2000, 1e-12).unwrap().require().unwrap();
        assert!(w.dist(lim) < 1e-8 * quad.diameter());
    }

    #[test]
    fn near_cyclic_limit_converges_quickly() {
        // |r| about 0.1: the diameter shrinks by sqrt|r| per generation, so a
        // 1e-4 relative target takes about eight steps
        let quad = q([[0.0, 0.0], [4.0, 0.0], [4.6, 3.0], [1.4, 3.0]]);
        let r = similarity_ratio(&quad).unwrap();
        assert!(r.abs() > 0.05 && r.abs() < 0.2, "r = {r}");
        assert!(isoptic_point_via_limit(&quad, 9, 1e-4).is_ok());
        let w = isoptic_point(&quad).require().unwrap();
        let lim = isoptic_point_via_limit(&quad, 9, 1e-4).unwrap().require().unwrap();
        assert!(w.dist(lim) < 1e-4 * quad.diameter());
    }

    #[test]
    fn periodic_does_not_converge() {
        let s = 2f64.sqrt() / 2.0;
        let par = q([[0.0, 0.0], [2.0, 0.0], [2.0 + s, s], [s, s]]);
        assert!(matches!(isoptic_point_via_limit(&par, 100, 1e-9), Err(GeomError::NonConvergent(_))));
    }

    #[test]
    fn isoptic_and_isodynamic_at_w() {
        let quad = example();
        let w = isoptic_point(&quad).require().unwrap();
        assert!(relative_spread(&isoptic_quantity(&quad, w)) < 1e-8);
        assert!(isodynamic_ratios(&quad, w) < 1e-8);
        // |WA| : |WC| = sin(gamma) : sin(alpha)
        let a = quad.interior_angles();
        let ratio = w.dist(quad.vertex(0)) / w.dist(quad.vertex(2));
        assert_abs_diff_eq!(ratio, a[2].sin() / a[0].sin(), epsilon = 1e-8);
        // negative controls
        assert!(relative_spread(&isoptic_quantity(&quad, quad.vertex(0))) > 1e-3);
        assert!(isodynamic_ratios(&quad, quad.centroid()) > 1e-3);
    }

    #[test]
    fn angle_sums() {
        let quad = example();
        let w = isoptic_point(&quad).require().unwrap();
        assert!(angle_sums_at_w(&quad, w) < 1e-9);
        assert!(angle_sums_at_w(&quad, Point::new(0.3, 2.9)) > 1e-3);
    }

    #[test]
    fn permutation_invariance() {
        let quad = example();
        let w = isoptic_point(&quad).require().unwrap();
        for perm in [[0, 2, 1, 3], [0, 2, 3, 1]] {
            let p = quad.permuted(perm).unwrap();
            let wp = isoptic_point(&p).require().unwrap();
            assert!(w.dist(wp) < 1e-9 * quad.diameter());
        }
    }

    #[test]
    fn prev_then_limit() {
        let q0 = prev_generation(&example()).unwrap();
        let w0 = isoptic_point(&q0).require().unwrap();
        assert!(w0.dist(W_EX) < 1e-9);
    }
}
