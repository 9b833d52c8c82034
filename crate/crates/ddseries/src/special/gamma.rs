use num_complex::Complex;

use super::identities::{cot_pi, ln_sin_pi};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::value::ValueWithError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn near_pole<T: Real>(z: Complex<T>) -> bool {
    let r = z.re.round();
    r <= T::zero() && (z - Complex::new(r, T::zero())).norm() < lit::<T>(1e3) * T::epsilon()
}

/// `log Γ(z)`, determined up to an additive multiple of `2πi`.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    if z.re < half {
        let pi = Complex::new(T::PI().ln(), T::zero());
        return pi - ln_sin_pi(z) - ln_gamma(Complex::new(T::one(), T::zero()) - z);
    }
    let z = z - T::one();
    let mut x = Complex::new(lit::<T>(LANCZOS[0]), T::zero());
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x = x + Complex::new(lit::<T>(c), T::zero()) / (z + T::from_usize(i).unwrap());
    }
    let t = z + lit::<T>(LANCZOS_G + 0.5);
    let ln2pi = (T::TAU()).ln() * half;
    (z + half) * t.ln() - t + x.ln() + ln2pi
}

/// Complex gamma function with relative accuracy near `1e-13` for `|z| ≤ 100`.
pub fn gamma_complex<T: Real>(z: Complex<T>) -> Result<ValueWithError<T>> {
    if near_pole(z) {
        return Err(Error::Pole(format!("gamma at {z}")));
    }
    let v = ln_gamma(z).exp();
    let az = z.norm();
    let rel =
        T::epsilon() * (lit::<T>(64.0) + lit::<T>(4.0) * az * (T::one() + (T::one() + az).ln()));
    Ok(ValueWithError::new(v, rel * v.norm()))
}

const DIGAMMA_B: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Digamma `ψ(z) = Γ′(z)/Γ(z)`: reflection, upward recurrence to `|z| ≥ 12`,
/// then the asymptotic series.
pub fn digamma<T: Real>(z: Complex<T>) -> Result<ValueWithError<T>> {
    if near_pole(z) {
        return Err(Error::Pole(format!("digamma at {z}")));
    }
    let one = Complex::new(T::one(), T::zero());
    if z.re < lit(0.5) {
        let r = digamma(one - z)?;
        let c = cot_pi(z) * T::PI();
        let v = r.value - c;
        return Ok(ValueWithError::new(
            v,
            r.abs_error + T::epsilon() * lit::<T>(8.0) * (c.norm() + v.norm()),
        ));
    }
    let mut z = z;
    let mut acc = Complex::new(T::zero(), T::zero());
    while z.norm() < lit(12.0) {
        acc = acc - one / z;
        z = z + one;
    }
    let zi2 = one / (z * z);
    let mut pw = zi2;
    let mut series = Complex::new(T::zero(), T::zero());
    for (k, &b) in DIGAMMA_B.iter().enumerate() {
        series = series + pw * lit::<T>(b / (2.0 * (k + 1) as f64));
        pw = pw * zi2;
    }
    let v = acc + z.ln() - one / (z * lit::<T>(2.0)) - series;
    let e = T::epsilon() * lit::<T>(32.0) * (T::one() + v.norm() + acc.norm());
    Ok(ValueWithError::new(v, e))
}
