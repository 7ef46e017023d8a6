//! Scalar abstraction shared by every construction in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the geometry is computed in.
///
/// Implemented for `f32` and `f64`. Each type carries its own default
/// relative tolerance because the achievable precision differs by about
/// nine orders of magnitude between the two.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Default relative tolerance (absolute epsilon is `tol * diameter`).
    fn default_tol() -> Self;

    /// Converts an `f64` literal, saturating to the nearest representable value.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn default_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    #[inline]
    fn default_tol() -> Self {
        1e-4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_convert() {
        assert_eq!(f64::lit(0.25), 0.25);
        assert_eq!(f32::lit(0.5), 0.5f32);
        assert!(f32::default_tol() > f64::default_tol() as f32);
    }
}
