use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumCast};

/// Floating point scalar used by the spectral and bound routines: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + NumCast + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("literal representable in scalar type")
    }

    fn from_count(v: usize) -> Self {
        <Self as NumCast>::from(v).expect("count representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }

    /// Absolute slack for comparisons that can be off by rounding: 1e-12 in
    /// double precision, widened to a few ulps of `scale` for narrower types.
    fn rounding_slack(scale: Self) -> Self {
        let ulps = Self::epsilon() * Self::lit(16.0) * scale.abs().max(Self::one());
        Self::lit(1e-12).max(ulps)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_is_one_picometre_for_f64() {
        assert_eq!(f64::rounding_slack(60.0), 1e-12);
        assert!(f32::rounding_slack(1.0) > 1e-7);
    }
}
