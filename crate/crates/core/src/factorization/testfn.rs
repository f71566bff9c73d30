use crate::scalar::Real;

/// A `C²` function with exact first and second derivatives, compactly
/// supported in `(0, ∞)`.
pub trait TestFunction<T> {
    /// Open support interval `(a, b)`.
    fn support(&self) -> (T, T);
    /// `[f, f′, f″]` at `x`.
    fn eval(&self, x: T) -> [T; 3];
}

/// `f(x) = exp(−w / ((x − a)(b − x)))` on `(a, b)`, zero outside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bump<T> {
    pub a: T,
    pub b: T,
    pub w: T,
}

impl<T: Real> Bump<T> {
    /// Bump on `(a, b)` normalized to `f = e^{−1}` at the midpoint.
    pub fn new(a: T, b: T) -> Self {
        let half = (b - a) * T::c(0.5);
        Self { a, b, w: half * half }
    }
}

impl<T: Real> TestFunction<T> for Bump<T> {
    fn support(&self) -> (T, T) {
        (self.a, self.b)
    }

    fn eval(&self, x: T) -> [T; 3] {
        if !(x > self.a && x < self.b) {
            return [T::zero(); 3];
        }
        let g = (x - self.a) * (self.b - x);
        let g1 = self.a + self.b - T::c(2.0) * x;
        let f = (-self.w / g).exp();
        // (−w/g)′ = w g′/g², (−w/g)″ = w (g″ g − 2 g′²)/g³ with g″ = −2
        let q1 = self.w * g1 / (g * g);
        let q2 = self.w * (T::c(-2.0) * g - T::c(2.0) * g1 * g1) / (g * g * g);
        [f, f * q1, f * (q1 * q1 + q2)]
    }
}

/// Five bumps spanning three and a half decades, lengths in units of `1/k₀`.
pub fn standard_bumps<T: Real>(k0: T) -> Vec<Bump<T>> {
    [(1e-3, 1e-2), (0.01, 0.5), (0.1, 2.0), (0.5, 5.0), (2.0, 30.0)]
        .iter()
        .map(|&(a, b)| Bump::new(T::c(a) / k0, T::c(b) / k0))
        .collect()
}
