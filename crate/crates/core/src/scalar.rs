//! Scalar abstraction shared by every geometric predicate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point types the cone predicates can be evaluated in.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Default relative width of the null band for this precision.
    const DEFAULT_TAU: f64;

    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const DEFAULT_TAU: f64 = 1e-9;
}

impl Scalar for f32 {
    // f32 roundoff in a 4-vector quadratic form is ~1e-6 relative.
    const DEFAULT_TAU: f64 = 1e-5;
}
