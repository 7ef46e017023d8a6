use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::point::{wrap_angle, MaybePoint, Point};
use crate::error::{GeomError, Result};
use crate::scalar::Real;

/// Rotation by `angle` combined with scaling by `ratio` about `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralSimilarity<T> {
    center: Point<T>,
    ratio: T,
    angle: T,
}

impl<T: Real> SpiralSimilarity<T> {
    pub fn new(center: Point<T>, ratio: T, angle: T) -> Result<Self> {
        if !(ratio > T::zero() && ratio.is_finite()) {
            return Err(GeomError::NonpositiveRatio(ratio.to_f64_lossy()));
        }
        Ok(Self { center, ratio, angle: wrap_angle(angle) })
    }

    /// Map `z -> alpha z + beta`; fails when `alpha` is within `tol` of 1.
    pub fn from_affine(alpha: Complex<T>, beta: Complex<T>, tol: T) -> Result<Self> {
        let one_minus = Complex::new(T::one(), T::zero()) - alpha;
        if one_minus.norm() <= tol {
            return Err(GeomError::IsTranslation);
        }
        if alpha.norm() == T::zero() {
            return Err(GeomError::NonpositiveRatio(0.0));
        }
        let c = beta / one_minus;
        Self::new(Point::from_complex(c), alpha.norm(), alpha.arg())
    }

    pub fn center(&self) -> Point<T> {
        self.center
    }

    pub fn ratio(&self) -> T {
        self.ratio
    }

    /// Rotation angle in `(-pi, pi]`.
    pub fn angle(&self) -> T {
        self.angle
    }

    /// The multiplier `alpha` of `z -> alpha (z - c) + c`.
    pub fn alpha(&self) -> Complex<T> {
        Complex::from_polar(self.ratio, self.angle)
    }

    pub fn apply(&self, p: Point<T>) -> Point<T> {
        let z = (p - self.center).to_complex() * self.alpha();
        self.center + Point::from_complex(z)
    }

    pub fn apply_maybe(&self, p: MaybePoint<T>) -> MaybePoint<T> {
        match p {
            MaybePoint::Finite(q) => MaybePoint::from(self.apply(q)),
            MaybePoint::AtInfinity { direction } => {
                let z = direction.to_complex() * self.alpha();
                MaybePoint::at_infinity(Point::from_complex(z))
            }
            MaybePoint::Undefined => MaybePoint::Undefined,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { center: self.center, ratio: T::one() / self.ratio, angle: wrap_angle(-self.angle) }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let (a1, a2) = (self.alpha(), other.alpha());
        let (c1, c2) = (self.center.to_complex(), other.center.to_complex());
        let one = Complex::new(T::one(), T::zero());
        let beta = a1 * (one - a2) * c2 + (one - a1) * c1;
        Self::from_affine(a1 * a2, beta, T::default_tol())
    }
}

pub fn spiral_from_two_pairs<T: Real>(
    a: Point<T>,
    a2: Point<T>,
    b: Point<T>,
    b2: Point<T>,
) -> Result<SpiralSimilarity<T>> {
    spiral_from_two_pairs_tol(a, a2, b, b2, T::default_tol())
}

/// The direct similarity taking `a -> a2` and `b -> b2`.
pub fn spiral_from_two_pairs_tol<T: Real>(
    a: Point<T>,
    a2: Point<T>,
    b: Point<T>,
    b2: Point<T>,
    tol: T,
) -> Result<SpiralSimilarity<T>> {
    if a == b || a2 == b2 {
        return Err(GeomError::CoincidentPoints);
    }
    let scale = a.dist(b).max(a2.dist(b2));
    if ((a2 - a) - (b2 - b)).norm() <= tol * scale {
        return Err(GeomError::IsTranslation);
    }
    let alpha = (a2 - b2).to_complex() / (a - b).to_complex();
    let beta = a2.to_complex() - alpha * a.to_complex();
    let one_minus = Complex::new(T::one(), T::zero()) - alpha;
    let c = Point::from_complex(beta / one_minus);
    SpiralSimilarity::new(c, alpha.norm(), alpha.arg())
}

/// Least-squares direct similarity `z -> alpha z + beta` taking `src` to `dst`.
pub fn fit_direct_similarity<T: Real>(src: &[Point<T>], dst: &[Point<T>]) -> Result<(Complex<T>, Complex<T>)> {
    assert_eq!(src.len(), dst.len());
    let n = T::from_usize(src.len()).unwrap();
    let ms = src.iter().fold(Complex::new(T::zero(), T::zero()), |s, p| s + p.to_complex()) / n;
    let md = dst.iter().fold(Complex::new(T::zero(), T::zero()), |s, p| s + p.to_complex()) / n;
    let mut num = Complex::new(T::zero(), T::zero());
    let mut den = T::zero();
    for (s, d) in src.iter().zip(dst) {
        let u = s.to_complex() - ms;
        num = num + u.conj() * (d.to_complex() - md);
        den = den + u.norm_sqr();
    }
    if den == T::zero() {
        return Err(GeomError::CoincidentPoints);
    }
    let alpha = num / den;
    Ok((alpha, md - alpha * ms))
}
