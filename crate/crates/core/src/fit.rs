//! Small least-squares fits used to read off asymptotic behaviour.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Least-squares fit of `y ≈ c0·f0(x) + c1·f1(x)`; returns `(c0, c1)`.
pub fn fit_two_basis<T: Real>(
    xs: &[T],
    ys: &[T],
    f0: impl Fn(T) -> T,
    f1: impl Fn(T) -> T,
) -> Result<(T, T)> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            grid: xs.len(),
            values: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::InvalidParams("fit needs at least two samples".into()));
    }
    let (mut s00, mut s01, mut s11, mut r0, mut r1) =
        (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let (a, b) = (f0(x), f1(x));
        s00 = s00 + a * a;
        s01 = s01 + a * b;
        s11 = s11 + b * b;
        r0 = r0 + a * y;
        r1 = r1 + b * y;
    }
    let det = s00 * s11 - s01 * s01;
    if det.abs() <= T::epsilon() * s00 * s11 {
        return Err(Error::InvalidParams("degenerate fit basis".into()));
    }
    Ok(((r0 * s11 - r1 * s01) / det, (s00 * r1 - s01 * r0) / det))
}

/// Fits `|y| ≈ C·x^p` in log-log space and returns the exponent `p`.
pub fn power_exponent<T: Real>(xs: &[T], ys: &[T]) -> Result<T> {
    if ys.iter().any(|y| *y == T::zero() || !y.is_finite()) {
        return Err(Error::InvalidParams(
            "power fit needs finite, non-zero samples".into(),
        ));
    }
    let lx: Vec<T> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<T> = ys.iter().map(|y| y.abs().ln()).collect();
    let mean = lx.iter().copied().sum::<T>() / T::from_usize_lossy(lx.len());
    // centring the abscissa keeps the normal equations well conditioned
    let centred: Vec<T> = lx.iter().map(|v| *v - mean).collect();
    let (_, p) = fit_two_basis(&centred, &ly, |_| T::one(), |t| t)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let xs: Vec<f64> = (0..50).map(|i| 1e-6 * 10f64.powf(i as f64 * 0.06)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| -3.0 * x.powf(0.37)).collect();
        let p = power_exponent(&xs, &ys).unwrap();
        assert!((p - 0.37).abs() < 1e-12);
    }

    #[test]
    fn recovers_log_plus_constant() {
        let xs: Vec<f64> = (1..40).map(|i| i as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 0.5 * x.ln()).collect();
        let (c0, c1) = fit_two_basis(&xs, &ys, |_| 1.0, |x| x.ln()).unwrap();
        assert!((c0 - 2.0).abs() < 1e-12 && (c1 + 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(power_exponent(&[1.0, 2.0], &[0.0, 1.0]).is_err());
        assert!(fit_two_basis(&[1.0, 2.0], &[1.0], |_| 1.0, |x| x).is_err());
    }
}
