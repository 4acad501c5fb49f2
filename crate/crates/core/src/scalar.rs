use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumCast, ToPrimitive};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
///
/// Every tolerance quoted in the docs (1e-12 and friends) assumes `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumCast + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only for values the type cannot hold at all.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `floor(self)` as an index for nonnegative input; saturating, NaN maps to 0.
    ///
    /// A plain cast, avoiding the `trunc` call behind `ToPrimitive::to_usize`.
    #[inline]
    fn floor_index(self) -> usize {
        self.as_f64() as usize
    }
}

impl Real for f32 {}
impl Real for f64 {}
