//! Every derived object of one quadrilateral with its residual block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::generation::{similarity_ratio, triad_circles, TriadSystem};
use super::isoptic::{
    angle_sums_at_w, isodynamic_ratios, isoptic_point, isoptic_quantity, relative_spread, six_cs_residual,
};
use super::pedal::{pedal_quadrilateral, simson_point, varignon};
use super::quadrilateral::{classify, Convexity, Quadrilateral, ShapeClass};
use super::residuals as res;
use crate::error::Result;
use crate::kernel::{MaybePoint, Point};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport<T> {
    pub triads: TriadSystem<T>,
    pub r: T,
    #[serde(rename = "W")]
    pub w: MaybePoint<T>,
    #[serde(rename = "S")]
    pub s: MaybePoint<T>,
    pub shape: ShapeClass,
    #[serde(rename = "pedalW")]
    pub pedal_w: Option<[Point<T>; 4]>,
    #[serde(rename = "pedalS")]
    pub pedal_s: Option<[Point<T>; 4]>,
    pub varignon: [Point<T>; 4],
    /// Common value of `d_i / R_i` at `W`; absent when `W` is not finite.
    #[serde(rename = "isopticQuantity")]
    pub isoptic_quantity: Option<T>,
    pub residuals: BTreeMap<String, T>,
}

/// Fails only when the triad circles or the cotangents cannot be formed.
pub fn analyze<T: Real>(q: &Quadrilateral<T>) -> Result<AnalysisReport<T>> {
    let triads = triad_circles(q)?;
    let r = similarity_ratio(q)?;
    let shape = classify(q);
    let w = isoptic_point(q);
    let s = simson_point(q);
    let mut out = BTreeMap::new();
    let mut put = |name: &str, v: Result<T>| {
        if let Ok(v) = v {
            if v.is_finite() {
                out.insert(name.to_string(), v);
            }
        }
    };

    if let Ok([c1, c2]) = res::cotangent_identities(q) {
        put("cotangent_1", Ok(c1));
        put("cotangent_2", Ok(c2));
    }
    if shape.cyclic {
        let [p1, p2] = res::ptolemy(q);
        put("ptolemy_1", Ok(p1));
        put("ptolemy_2", Ok(p2));
    } else {
        put("area_ratio", res::area_ratio(q));
        put("angles_mod_pi", res::angles_mod_pi(q));
        if shape.convexity == Convexity::Convex {
            put("supplementary_angles", res::supplementary_angles(q));
        }
        put("prev_after_next", res::prev_after_next(q));
        put("next_after_prev", res::next_after_prev(q));
        if (r.abs() - T::one()).abs() < T::lit(1e3) * q.tol() {
            put("periodicity", res::periodicity(q));
        }
    }

    let mut quantity = None;
    let mut pedal_w = None;
    if let MaybePoint::Finite(wp) = w {
        let iq = isoptic_quantity(q, wp);
        quantity = Some(iq.iter().fold(T::zero(), |a, b| a + *b) / T::lit(4.0));
        pedal_w = Some(pedal_quadrilateral(q, wp));
        put("pedal_w_parallelogram", Ok(res::pedal_parallelogram(q, wp)));
        put("pedal_w_varignon_angles", Ok(res::varignon_angles(q, wp)));
        if !shape.cyclic {
            put("six_cs", six_cs_residual(q, wp));
            put("isoptic_spread", Ok(relative_spread(&iq)));
            put("isodynamic", Ok(isodynamic_ratios(q, wp)));
            put("angle_sums", Ok(angle_sums_at_w(q, wp)));
            put("inversion_agreement", res::inversion_agreement(q, wp));
            put("spiral_transport", res::spiral_transport(q, wp));
            put("feet_circles", res::feet_circles(q, wp));
            put("cross_generation", res::cross_generation(q, wp));
            put("quadrangle_duality", res::quadrangle_duality_check(q, wp, q.diameter()));
            put("auxiliary_pedal", res::auxiliary_pedal(q, wp));
        }
    }
    let mut pedal_s = None;
    if let MaybePoint::Finite(sp) = s {
        pedal_s = Some(pedal_quadrilateral(q, sp));
        put("pedal_s_collinear", Ok(res::pedal_collinear(q, sp)));
    }

    Ok(AnalysisReport {
        triads,
        r,
        w,
        s,
        shape,
        pedal_w,
        pedal_s,
        varignon: varignon(q),
        isoptic_quantity: quantity,
        residuals: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_report() {
        let q = Quadrilateral::from_xy([[0.0, 0.0], [4.0, 0.0], [5.0, 3.0], [1.0, 4.0]]).unwrap();
        let rep: AnalysisReport<f64> = analyze(&q).unwrap();
        assert!((rep.r + 0.027243589743589744).abs() < 1e-15);
        let w = rep.w.require().unwrap();
        assert!(w.dist(Point::new(2.29173166926677, 1.9266770670826827)) < 1e-12);
        assert!(rep.isoptic_quantity.unwrap() > 0.0);
        for key in ["six_cs", "area_ratio", "pedal_s_collinear", "quadrangle_duality", "cross_generation"] {
            assert!(rep.residuals[key] < 1e-9, "{key} = {}", rep.residuals[key]);
        }
        assert!(!rep.residuals.contains_key("ptolemy_1"));
        assert!(rep.residuals.values().all(|v| *v >= 0.0));
    }

    #[test]
    fn square_report() {
        let q = Quadrilateral::from_xy([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap();
        let rep: AnalysisReport<f64> = analyze(&q).unwrap();
        assert!(rep.r.abs() < 1e-15);
        assert!(rep.w.require().unwrap().norm() < 1e-15);
        assert!(rep.shape.cyclic);
        assert!(rep.residuals.contains_key("ptolemy_1"));
        assert!(!rep.residuals.contains_key("six_cs"));
        assert!((rep.triads.radii[0] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn orthocentric_report() {
        let q = Quadrilateral::from_xy([[0.0, 0.0], [4.0, 0.0], [1.0, 3.0], [1.0, 1.0]]).unwrap();
        let rep: AnalysisReport<f64> = analyze(&q).unwrap();
        assert!(rep.shape.orthocentric);
        assert!(rep.w.is_at_infinity());
        assert!(rep.pedal_w.is_none());
        assert!((rep.r - 1.0).abs() < 1e-12);
        assert!(rep.residuals["periodicity"] < 1e-12);
    }
}
