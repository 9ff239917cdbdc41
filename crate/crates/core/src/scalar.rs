//! Scalar abstraction: every numeric kernel in this crate is generic over [`Real`].

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar: f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Lift an `f64` constant into the scalar type.
    #[inline]
    fn from_f(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 constant not representable")
    }

    /// Lower into `f64` (lossless for f32/f64).
    #[inline]
    fn to_f(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }

    #[inline]
    fn from_usize_(n: usize) -> Self {
        Self::from_f(n as f64)
    }
}

impl Real for f32 {}
impl Real for f64 {}
