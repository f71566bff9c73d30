//! Sampled functions on positive, strictly increasing grids.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default grid density in points per decade.
pub const POINTS_PER_DECADE: usize = 400;

/// Values (and optionally first derivatives) sampled on a grid.
///
/// Lengths are in units of `1/k₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction<T> {
    grid: Vec<T>,
    values: Vec<T>,
    derivs: Option<Vec<T>>,
}

fn check_grid<T: Real>(grid: &[T]) -> Result<()> {
    if grid.is_empty() || !(grid[0] > T::zero()) {
        return Err(Error::BadGrid);
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::BadGrid);
    }
    Ok(())
}

impl<T: Real> SampledFunction<T> {
    pub fn new(grid: Vec<T>, values: Vec<T>) -> Result<Self> {
        check_grid(&grid)?;
        if grid.len() != values.len() {
            return Err(Error::LengthMismatch {
                grid: grid.len(),
                values: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            derivs: None,
        })
    }

    pub fn with_derivative(grid: Vec<T>, values: Vec<T>, derivs: Vec<T>) -> Result<Self> {
        let mut f = Self::new(grid, values)?;
        if derivs.len() != f.grid.len() {
            return Err(Error::LengthMismatch {
                grid: f.grid.len(),
                values: derivs.len(),
            });
        }
        f.derivs = Some(derivs);
        Ok(f)
    }

    /// Samples `f` (returning value and derivative) on `grid`.
    pub fn from_fn<F: FnMut(T) -> (T, T)>(grid: Vec<T>, mut f: F) -> Result<Self> {
        let (values, derivs) = grid.iter().map(|&x| f(x)).unzip();
        Self::with_derivative(grid, values, derivs)
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn derivatives(&self) -> Result<&[T]> {
        self.derivs.as_deref().ok_or(Error::MissingDerivative)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }

    /// Maximum of `|values|`.
    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

/// Logarithmically spaced grid on `[lo, hi]` with `per_decade` points per
/// decade (endpoints included).
pub fn log_grid<T: Real>(lo: T, hi: T, per_decade: usize) -> Result<Vec<T>> {
    if !(lo > T::zero()) || !(hi > lo) || !hi.is_finite() || per_decade == 0 {
        return Err(Error::BadGrid);
    }
    let decades = (hi / lo).log10();
    let n = (decades * T::from_usize_lossy(per_decade))
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .max(1);
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / T::from_usize_lossy(n);
    let mut g: Vec<T> = (0..=n)
        .map(|i| (a + step * T::from_usize_lossy(i)).exp())
        .collect();
    g[0] = lo;
    g[n] = hi;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_spacing() {
        let g = log_grid(1e-8f64, 1e3, POINTS_PER_DECADE).unwrap();
        assert_eq!(g.len(), 11 * POINTS_PER_DECADE + 1);
        assert_eq!(g[0], 1e-8);
        assert_eq!(*g.last().unwrap(), 1e3);
        let r0 = g[1] / g[0];
        let r1 = g[g.len() - 1] / g[g.len() - 2];
        assert!((r0 - r1).abs() < 1e-10);
        assert!(log_grid(0.0f64, 1.0, 10).is_err());
        assert!(log_grid(2.0f64, 1.0, 10).is_err());
    }

    #[test]
    fn sampled_function_validation() {
        assert!(SampledFunction::new(vec![1.0, 0.5], vec![0.0, 0.0]).is_err());
        assert!(matches!(
            SampledFunction::new(vec![1.0, 2.0], vec![0.0]),
            Err(Error::LengthMismatch { .. })
        ));
        let f = SampledFunction::new(vec![1.0f64, 2.0], vec![3.0, -4.0]).unwrap();
        assert_eq!(f.max_abs(), 4.0);
        assert!(matches!(f.derivatives(), Err(Error::MissingDerivative)));
        let g = SampledFunction::from_fn(vec![1.0f64, 2.0], |x| (x * x, 2.0 * x)).unwrap();
        assert_eq!(g.derivatives().unwrap(), &[2.0, 4.0]);
    }
}
