//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// All algorithms in this crate are written against this trait. Accuracy
/// targets quoted in the docs refer to `f64`; `f32` instantiations work but
/// only to single-precision accuracy.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Converts an integer count into `Self`.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("representable count")
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Neumaier (improved Kahan) compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::<f64>::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        assert!((acc.value() - 1e-12).abs() < 1e-20);
    }

    #[test]
    fn literal_conversion_round_trips() {
        assert_eq!(<f32 as Real>::c(0.5), 0.5f32);
        assert_eq!(<f64 as Real>::c(-2.25), -2.25);
    }
}
