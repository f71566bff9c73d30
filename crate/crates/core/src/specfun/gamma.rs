//! Gamma, log-gamma and digamma for real arguments.

use crate::scalar::{CompensatedSum, Real};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_4;

/// Taylor coefficients of `1/Γ(z) = Σ_{k≥1} c_k z^k` (index 0 holds c_1).
const RGAMMA_TAYLOR: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_606_512_1,
    -0.655_878_071_520_253_881_077_019_5,
    -0.042_002_635_034_095_235_529_003_93,
    0.166_538_611_382_291_489_501_700_8,
    -0.042_197_734_555_544_336_748_208_3,
    -0.009_621_971_527_876_973_562_114_922,
    0.007_218_943_246_663_099_542_395_01,
    -0.001_165_167_591_859_065_112_113_971,
    -0.000_215_241_674_114_950_972_815_73,
    0.000_128_050_282_388_116_186_153_198_6,
    -0.000_020_134_854_780_788_238_655_689_39,
    -0.000_001_250_493_482_142_670_657_345_359,
    0.000_001_133_027_231_981_695_882_374_13,
    -0.000_000_205_633_841_697_760_710_345_015_4,
    6.116_095_104_481_415_817_862_499e-9,
    5.002_007_644_469_222_930_055_665e-9,
    -1.181_274_570_487_020_144_588_127e-9,
    1.043_426_711_691_100_510_491_54e-10,
    7.782_263_439_905_071_254_049_937e-12,
    -3.696_805_618_642_205_708_187_816e-12,
    5.100_370_287_454_475_979_015_481e-13,
    -2.058_326_053_566_506_783_222_43e-14,
    -5.348_122_539_423_017_982_370_017e-15,
    1.226_778_628_238_260_790_158_894e-15,
    -1.181_259_301_697_458_769_513_765e-16,
    1.186_692_254_751_600_332_579_777e-18,
    1.412_380_655_318_031_781_555_804e-18,
    -2.298_745_684_435_370_206_592_479e-19,
    1.714_406_321_927_337_433_383_963e-20,
];

/// `1/Γ(1+x)` for `|x| <= 1`, from the Taylor series of the reciprocal gamma.
pub fn rgamma1p<T: Real>(x: T) -> T {
    // 1/Γ(1+x) = (1/x)·(1/Γ(x)) = Σ c_k x^{k-1}
    let mut acc = T::zero();
    for &c in RGAMMA_TAYLOR.iter().rev() {
        acc = acc * x + T::c(c);
    }
    acc
}

/// The pair `(Γ₁(μ), Γ₂(μ))` of Temme's method for `|μ| <= 1/2`:
/// `Γ₁ = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ)` and `Γ₂ = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2`.
pub(crate) fn temme_gammas<T: Real>(mu: T) -> (T, T) {
    let mu2 = mu * mu;
    let mut g1 = T::zero();
    let mut g2 = T::zero();
    // c_k with k even feed Γ₁, odd feed Γ₂; powers of μ² descend from the top.
    for (idx, &c) in RGAMMA_TAYLOR.iter().enumerate().rev() {
        let k = idx + 1;
        if k % 2 == 0 {
            g1 = g1 * mu2 + T::c(c);
        } else {
            g2 = g2 * mu2 + T::c(c);
        }
    }
    (-g1, g2)
}

/// Γ(x) for real x. Returns NaN at the poles (non-positive integers).
pub fn gamma<T: Real>(x: T) -> T {
    let half = T::c(0.5);
    if x.is_nan() {
        return x;
    }
    if x <= T::zero() && x == x.floor() {
        return T::nan();
    }
    if x < half {
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    if x > T::c(40.0) {
        return ln_gamma(x).exp();
    }
    // shift into [0.5, 1.5] and use the reciprocal series there
    let mut y = x;
    let mut prod = T::one();
    while y > T::c(1.5) {
        y = y - T::one();
        prod = prod * y;
    }
    prod / rgamma1p(y - T::one())
}

/// ln Γ(x) for x > 0. Returns NaN otherwise.
pub fn ln_gamma<T: Real>(x: T) -> T {
    if !(x > T::zero()) {
        return T::nan();
    }
    if x < T::c(10.0) {
        return gamma(x).abs().ln();
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    // Stirling series; Bernoulli terms B_{2k} / (2k(2k-1) x^{2k-1})
    let series = inv
        * (T::c(1.0 / 12.0)
            + inv2
                * (T::c(-1.0 / 360.0)
                    + inv2
                        * (T::c(1.0 / 1260.0)
                            + inv2
                                * (T::c(-1.0 / 1680.0)
                                    + inv2
                                        * (T::c(1.0 / 1188.0)
                                            + inv2
                                                * (T::c(-691.0 / 360_360.0)
                                                    + inv2 * T::c(1.0 / 156.0)))))));
    (x - T::c(0.5)) * x.ln() - x + T::c(0.5) * (T::c(2.0) * T::PI()).ln() + series
}

/// Digamma ψ(x) = Γ'(x)/Γ(x). NaN at the poles.
pub fn digamma<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x <= T::zero() && x == x.floor() {
        return T::nan();
    }
    if x < T::zero() {
        // ψ(x) = ψ(1-x) - π cot(πx)
        let pi = T::PI();
        return digamma(T::one() - x) - pi / (pi * x).tan();
    }
    let mut acc = CompensatedSum::new();
    let mut y = x;
    while y < T::c(10.0) {
        acc.add(-y.recip());
        y = y + T::one();
    }
    let inv = y.recip();
    let inv2 = inv * inv;
    let tail = inv2
        * (T::c(-1.0 / 12.0)
            + inv2
                * (T::c(1.0 / 120.0)
                    + inv2
                        * (T::c(-1.0 / 252.0)
                            + inv2
                                * (T::c(1.0 / 240.0)
                                    + inv2
                                        * (T::c(-5.0 / 660.0)
                                            + inv2
                                                * (T::c(691.0 / 32_760.0)
                                                    + inv2 * T::c(-1.0 / 12.0)))))));
    acc.add(y.ln());
    acc.add(T::c(-0.5) * inv);
    acc.add(tail);
    acc.value()
}

/// ψ(1) = −γ.
pub fn digamma_one<T: Real>() -> T {
    digamma(T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_at_integers_and_halves() {
        let mut fact = 1.0f64;
        for n in 1..20 {
            assert_relative_eq!(gamma(n as f64), fact, max_relative = 1e-14);
            fact *= n as f64;
        }
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma(0.5f64), sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(gamma(1.5f64), 0.5 * sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(gamma(-0.5f64), -2.0 * sqrt_pi, max_relative = 1e-14);
    }

    #[test]
    fn gamma_poles_are_nan() {
        assert!(gamma(0.0f64).is_nan());
        assert!(gamma(-3.0f64).is_nan());
        assert!(digamma(-2.0f64).is_nan());
    }

    #[test]
    fn ln_gamma_matches_gamma_across_switch() {
        for &x in &[9.5f64, 10.0, 10.5, 25.3, 39.9] {
            assert_relative_eq!(ln_gamma(x), gamma(x).ln(), max_relative = 1e-14);
        }
    }

    #[test]
    fn gamma_recurrence_holds() {
        for i in 0..200 {
            let x = -4.9 + 0.0497 * i as f64;
            if (x - x.round()).abs() < 1e-3 {
                continue;
            }
            assert_relative_eq!(gamma(x + 1.0), x * gamma(x), max_relative = 1e-13);
        }
    }

    #[test]
    fn temme_gammas_match_definition() {
        for &mu in &[-0.5f64, -0.31, -0.1, 0.05, 0.2, 0.49] {
            let (g1, g2) = temme_gammas(mu);
            let rp = 1.0 / gamma(1.0 + mu);
            let rm = 1.0 / gamma(1.0 - mu);
            assert_relative_eq!(g1, (rm - rp) / (2.0 * mu), max_relative = 1e-12);
            assert_relative_eq!(g2, (rm + rp) / 2.0, max_relative = 1e-14);
        }
        let (g1, g2) = temme_gammas(0.0f64);
        assert_relative_eq!(g1, -EULER_GAMMA, max_relative = 1e-15);
        assert_relative_eq!(g2, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn digamma_recurrence_and_reflection() {
        for i in 1..100 {
            let x = 0.037 * i as f64 + 0.01;
            assert_relative_eq!(digamma(x + 1.0), digamma(x) + 1.0 / x, epsilon = 1e-13);
        }
        // ψ(1/2) = −γ − 2 ln 2
        assert_relative_eq!(
            digamma(0.5f64),
            -EULER_GAMMA - 2.0 * 2f64.ln(),
            max_relative = 1e-14
        );
    }

    /// Euler–Mascheroni constant from the harmonic-number limit
    /// γ = H_n − ln n − 1/(2n) + 1/(12n²) − 1/(120n⁴) + O(n⁻⁶).
    fn euler_gamma_from_harmonic_limit(n: usize) -> f64 {
        let mut acc = CompensatedSum::new();
        for k in 1..=n {
            acc.add(1.0 / k as f64);
        }
        let nf = n as f64;
        acc.value() - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4))
    }

    #[test]
    fn digamma_one_is_minus_euler_gamma() {
        let oracle = euler_gamma_from_harmonic_limit(20_000);
        assert!((oracle - EULER_GAMMA).abs() < 1e-15);
        let psi1: f64 = digamma_one();
        assert!((psi1 + oracle).abs() < 1e-12);
        assert!((psi1 - (-0.577_215_664_901_532_9)).abs() < 1e-12);
        assert!((psi1.exp() * EULER_GAMMA.exp() - 1.0).abs() < 1e-12);
        // 2·e^{ψ(1)} is the optimal shift at zero extension angle for κ = 0
        assert!((2.0 * psi1.exp() - 1.122_918_967_1).abs() < 1e-10);
    }

    #[test]
    fn single_precision_instantiation() {
        let g: f32 = gamma(4.5f32);
        assert!((g - 11.631_728).abs() < 1e-4);
        let p: f32 = digamma_one();
        assert!((p + 0.577_215_7).abs() < 1e-5);
    }
}
