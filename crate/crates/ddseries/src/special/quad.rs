use num_complex::Complex;

use crate::scalar::{lit, ComplexSum, Real};
use crate::value::ValueWithError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod estimate, Kronrod–Gauss difference, and `∫|f|` by the Kronrod rule.
fn gk15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> (Complex<T>, T, T) {
    let c = (a + b) * lit(0.5);
    let h = (b - a) * lit(0.5);
    let fc = f(c);
    let mut k = fc * lit::<T>(WGK[7]);
    let mut g = fc * lit::<T>(WG[3]);
    let mut mag = fc.norm() * lit::<T>(WGK[7]);
    for j in 0..7 {
        let dx = h * lit::<T>(XGK[j]);
        let (l, r) = (f(c - dx), f(c + dx));
        let s = l + r;
        k = k + s * lit::<T>(WGK[j]);
        mag += (l.norm() + r.norm()) * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            g = g + s * lit::<T>(WG[j / 2]);
        }
    }
    (k * h, ((k - g) * h).norm(), mag * h.abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of a complex integrand over
/// `[a, b]`. Intervals are bisected until the Kronrod–Gauss difference falls
/// below `tol` scaled by the interval length, or below the rounding level of
/// the interval; the accepted differences are summed into the error bar.
pub fn gauss_kronrod<T: Real, F: Fn(T) -> Complex<T>>(
    f: F,
    a: T,
    b: T,
    tol: T,
) -> ValueWithError<T> {
    let len = b - a;
    let mut acc = ComplexSum::new();
    let mut err = T::zero();
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e, mag) = gk15(&f, lo, hi);
        if e <= tol * (hi - lo) / len || e <= T::epsilon() * lit::<T>(64.0) * mag || depth >= 40 {
            acc.add(v);
            err += e;
        } else {
            let mid = (lo + hi) * lit(0.5);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    let v = acc.value();
    ValueWithError::new(v, err + T::epsilon() * lit::<T>(16.0) * v.norm())
}
