//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integral estimate with its error bound and the work spent.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: T,
    pub intervals: usize,
}

/// Tolerances for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::c(1e-12),
            rel_tol: T::c(1e-12),
            max_intervals: 2000,
        }
    }
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T: Real> Eq for Segment<T> {}

impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Segment<T> {
    let half = T::c(0.5);
    let centre = half * (a + b);
    let hl = half * (b - a);
    let fc = f(centre);
    let mut resk = fc * T::c(WGK[7]);
    let mut resg = fc * T::c(WG[3]);
    let mut resabs = fc.abs() * T::c(WGK[7]);
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = hl * T::c(XGK[j]);
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::c(WGK[j]);
        resk = resk + w * (f1 + f2);
        resabs = resabs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg = resg + T::c(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = resk * half;
    let mut resasc = T::c(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        resasc = resasc + T::c(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * hl;
    let resabs = resabs * hl.abs();
    let resasc = resasc * hl.abs();
    let mut err = ((resk - resg) * hl).abs();
    if resasc != T::zero() && err != T::zero() {
        let scale = (T::c(200.0) * err / resasc).powf(T::c(1.5));
        err = resasc * scale.min(T::one());
    }
    let round = T::c(50.0) * T::epsilon() * resabs;
    if resabs > T::min_positive_value() / (T::c(50.0) * T::epsilon()) {
        err = err.max(round);
    }
    Segment {
        a,
        b,
        value,
        error: err,
    }
}

/// Integrates `f` over `[a, b]`.
///
/// Fails with [`Error::Quadrature`] when the error target cannot be met
/// within `max_intervals` subdivisions or the integrand is not finite.
pub fn integrate<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    cfg: QuadConfig<T>,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            abs_error: T::zero(),
            intervals: 0,
        });
    }
    let first = kronrod(&mut f, a, b);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut n = 1;
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::Quadrature {
                error: total_err.to_f64_lossy(),
                intervals: n,
            });
        }
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            break;
        }
        if n >= cfg.max_intervals {
            return Err(Error::Quadrature {
                error: total_err.to_f64_lossy(),
                intervals: n,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = T::c(0.5) * (worst.a + worst.b);
        let left = kronrod(&mut f, worst.a, mid);
        let right = kronrod(&mut f, mid, worst.b);
        total = total - worst.value + left.value + right.value;
        total_err = total_err - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        n += 1;
        if n % 64 == 0 {
            // refresh running sums to avoid drift from repeated subtraction
            let mut v = CompensatedSum::new();
            let mut e = CompensatedSum::new();
            for s in heap.iter() {
                v.add(s.value);
                e.add(s.error);
            }
            total = v.value();
            total_err = e.value();
        }
    }
    let mut v = CompensatedSum::new();
    let mut e = CompensatedSum::new();
    for s in heap.iter() {
        v.add(s.value);
        e.add(s.error);
    }
    Ok(QuadResult {
        value: v.value(),
        abs_error: e.value(),
        intervals: n,
    })
}

/// Integrates `f(x)` over `[a, b]` with `0 < a < b` in the variable
/// `t = ln x`, which resolves power and logarithmic behaviour near the origin.
pub fn integrate_log<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    cfg: QuadConfig<T>,
) -> Result<QuadResult<T>> {
    integrate(
        |t: T| {
            let x = t.exp();
            f(x) * x
        },
        a.ln(),
        b.ln(),
        cfg,
    )
}

/// `∫_0^x f` for an integrand with power-law (or power-times-log)
/// behaviour at the origin.
///
/// Integrates decade by decade towards the origin in the variable `ln x`
/// and closes with the geometric remainder implied by the last two decades.
/// Fails when the decade contributions do not decrease (divergent integral).
pub fn integrate_from_origin<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    x: T,
    cfg: QuadConfig<T>,
) -> Result<QuadResult<T>> {
    let ten = T::c(10.0);
    let mut acc = CompensatedSum::new();
    let mut err = T::zero();
    let mut intervals = 0;
    let mut hi = x;
    let mut prev: Option<T> = None;
    let floor = T::min_positive_value().sqrt();
    loop {
        let lo = hi / ten;
        let seg = integrate_log(&mut f, lo, hi, cfg)?;
        acc.add(seg.value);
        err = err + seg.abs_error;
        intervals += seg.intervals;
        hi = lo;
        if seg.value == T::zero() && prev.is_some() {
            break;
        }
        if let Some(p) = prev {
            let r = seg.value / p;
            if !(r > T::zero() && r < T::one()) {
                return Err(Error::Quadrature {
                    error: f64::INFINITY,
                    intervals,
                });
            }
            let rest = seg.value * r / (T::one() - r);
            if rest.abs() <= T::c(1e-16) * acc.value().abs() || hi < floor {
                acc.add(rest);
                err = err + rest.abs() * T::c(1e-3);
                break;
            }
        }
        prev = Some(seg.value);
    }
    Ok(QuadResult {
        value: acc.value(),
        abs_error: err,
        intervals,
    })
}
