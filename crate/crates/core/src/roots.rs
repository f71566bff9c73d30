//! Bracketed scalar root finding (Brent's method).

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Finds a root of `f` in `[a, b]` given `f(a)·f(b) <= 0`.
///
/// Returns the root and the number of iterations used.
pub fn brent<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    xtol: T,
    max_iter: usize,
) -> Result<(T, usize)> {
    let mut a = a;
    let mut b = b;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Ok((a, 0));
    }
    if fb == T::zero() {
        return Ok((b, 0));
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::InvalidParams(format!(
            "root not bracketed: f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    let two = T::c(2.0);
    let half = T::c(0.5);
    let mut c = b;
    let mut fc = fb;
    let mut d = T::zero();
    let mut e = T::zero();
    for iter in 1..=max_iter {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + half * xtol;
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb == T::zero() {
            return Ok((b, iter));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::c(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b = b + d;
        } else {
            b = b + tol1 * xm.signum();
        }
        fb = f(b);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let (r, _) = brent(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-15, 100).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        let (r, _) = brent(|x: f64| x.cos() - x, 0.0, 1.0, 1e-15, 100).unwrap();
        assert!((r.cos() - r).abs() < 1e-14);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(brent(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 50).is_err());
    }
}
