//! Floating-point scalar abstraction for the dense simulator.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type backing complex amplitudes (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used for normalization and fidelity checks.
    fn tolerance() -> Self;

    /// Tolerance used when rounding an expectation value to an eigenvalue.
    fn eigen_tolerance() -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tolerance() -> Self {
        1e-10
    }

    fn eigen_tolerance() -> Self {
        1e-6
    }
}

impl Real for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn eigen_tolerance() -> Self {
        1e-4
    }
}
