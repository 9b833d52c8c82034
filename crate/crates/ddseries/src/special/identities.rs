use num_complex::Complex;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::value::ValueWithError;

/// `log sin(πz)`, stable for large `|Im z|`.
pub(crate) fn ln_sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let i = Complex::new(T::zero(), T::one());
    let pi = T::PI();
    if z.im.abs() < lit(20.0) {
        return (z * pi).sin().ln();
    }
    let one = Complex::new(T::one(), T::zero());
    let two = lit::<T>(2.0);
    if z.im > T::zero() {
        -i * z * pi + (one - (i * z * pi * two).exp()).ln() - (i * two).ln()
    } else {
        i * z * pi + (one - (-i * z * pi * two).exp()).ln() - (-i * two).ln()
    }
}

/// `cot(πz)`, stable for large `|Im z|`.
pub fn cot_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let i = Complex::new(T::zero(), T::one());
    let one = Complex::new(T::one(), T::zero());
    let two_pi = T::TAU();
    if z.im >= T::zero() {
        let q = (i * z * two_pi).exp();
        i * (q + one) / (q - one)
    } else {
        let r = (-i * z * two_pi).exp();
        i * (one + r) / (one - r)
    }
}

fn dist_to_int<T: Real>(z: Complex<T>) -> T {
    (z - Complex::new(z.re.round(), T::zero())).norm()
}

/// `Γ((1−w+κ̂)/2) / Γ((w+κ̂)/2)`.
///
/// The value comes from log-gamma differences; the error bar is widened by
/// the discrepancy with [`gamma_ratio_kappa_cot_route`] whenever that route is
/// defined at `w`.
pub fn gamma_ratio_kappa<T: Real>(w: Complex<T>, kappa_hat: u8) -> Result<ValueWithError<T>> {
    let k = T::from_u8(kappa_hat).unwrap();
    let half = lit::<T>(0.5);
    let a = (Complex::new(T::one() + k, T::zero()) - w) * half;
    if a.re <= half && dist_to_int(a) < lit(1e-6) && a.re.round() <= T::zero() {
        return Err(Error::Pole(format!(
            "gamma ratio numerator pole at w = {w}"
        )));
    }
    let b = (w + k) * half;
    let v = (ln_gamma(a) - ln_gamma(b)).exp();
    let base = T::epsilon() * lit::<T>(256.0) * (T::one() + w.norm()) * v.norm();
    let e = match gamma_ratio_kappa_cot_route(w, kappa_hat) {
        Ok(c) => base + (c - v).norm(),
        Err(_) => base,
    };
    Ok(ValueWithError::new(v, e))
}

/// The same ratio through reflection and duplication:
/// `√π·2^{w−1} / (cos(πw/2)Γ(w))` for `κ̂ = 0`, and that times `cot(πw/2)`
/// for `κ̂ = 1`.
pub fn gamma_ratio_kappa_cot_route<T: Real>(w: Complex<T>, kappa_hat: u8) -> Result<Complex<T>> {
    let half = lit::<T>(0.5);
    if dist_to_int(w) < lit(1e-6) {
        return Err(Error::Pole(format!(
            "reflection route undefined at integer w = {w}"
        )));
    }
    let two = lit::<T>(2.0);
    let lg = ln_gamma(w);
    let pre = (Complex::new(T::PI().ln() * half, T::zero()) + (w - T::one()) * two.ln() - lg).exp();
    let cos = (w * T::PI() * half).cos();
    let base = pre / cos;
    Ok(if kappa_hat == 0 {
        base
    } else {
        base * cot_pi(w * half)
    })
}
