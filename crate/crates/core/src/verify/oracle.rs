//! Constructions of `W` that avoid circles of similitude altogether.

use crate::error::{GeomError, Result};
use crate::kernel::{centroid, circumcenter_tol, fit_direct_similarity, MaybePoint, Point};
use crate::quad::{next_generation, prev_generation, similarity_ratio, Quadrilateral};

/// Stop iterating once the generations have shrunk (or grown) by this factor.
const SCALE_LIMIT: f64 = 1e6;

/// Limit point of the generations, found by iterating forward when `|r| < 1`
/// and backward when `|r| > 1` for at most `generations` steps. The last
/// three generations fix a direct similarity `Q_k -> Q_{k+2}` whose centre is
/// the limit; once the generations have collapsed to below `1e-13 D` the
/// centroid is used directly, as it is when the next generation collapses to
/// a point below rounding. A cyclic input returns its circumcenter.
pub fn oracle_limit_point(q: &Quadrilateral<f64>, generations: usize) -> Result<MaybePoint<f64>> {
    let r = similarity_ratio(q)?.abs();
    if q.is_cyclic() {
        return match next_generation(q) {
            Err(GeomError::CyclicDegeneration { x, y }) => Ok(MaybePoint::Finite(Point::new(x, y))),
            _ => Err(GeomError::NonConvergent(r)),
        };
    }
    if (r - 1.0).abs() <= 1e3 * q.tol() {
        return Err(GeomError::NonConvergent(r));
    }
    let d0 = q.diameter();
    let mut history = vec![*q];
    for _ in 0..generations {
        let cur = history.last().unwrap();
        let d = cur.diameter();
        if d < 1e-13 * d0 {
            return Ok(MaybePoint::Finite(cur.centroid()));
        }
        if history.len() >= 3 && (d < d0 / SCALE_LIMIT || d > d0 * SCALE_LIMIT) {
            break;
        }
        let step = if r < 1.0 { next_generation(cur) } else { prev_generation(cur) };
        match step {
            Ok(n) => history.push(n),
            Err(GeomError::CyclicDegeneration { x, y }) => return Ok(MaybePoint::Finite(Point::new(x, y))),
            Err(e) if r < 1.0 && d < d0 / SCALE_LIMIT => return collapsed_centers(cur).ok_or(e),
            Err(e) => return Err(e),
        }
    }
    let n = history.len();
    if n < 3 {
        return Err(GeomError::NonConvergent(r));
    }
    let (a, b) = (&history[n - 3], &history[n - 1]);
    let (alpha, beta) = fit_direct_similarity(&a.vertices(), &b.vertices())?;
    let one = num_complex::Complex::new(1.0, 0.0);
    if (one - alpha).norm() < 1e-12 {
        return Err(GeomError::NonConvergent(r));
    }
    Ok(MaybePoint::Finite(Point::from_complex(beta / (one - alpha))))
}

/// Centroid of the triad centers of a generation whose successor has
/// collapsed below rounding (vertices coincide or triads are collinear).
fn collapsed_centers(q: &Quadrilateral<f64>) -> Option<MaybePoint<f64>> {
    let centers: Vec<Point<f64>> =
        (0..4).filter_map(|i| circumcenter_tol(q.vertex(i + 3), q.vertex(i), q.vertex(i + 1), 0.0).ok()).collect();
    (!centers.is_empty()).then(|| MaybePoint::Finite(centroid(&centers)))
}
