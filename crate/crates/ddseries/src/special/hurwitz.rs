use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, ComplexSum, Real};
use crate::value::ValueWithError;

/// `B_{2k}/(2k)!` for `k = 1..=25`.
const BERNOULLI_OVER_FACT: [f64; 25] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
];

/// Hurwitz zeta `ζ(s, a)` by Euler–Maclaurin summation.
///
/// With `N` direct terms and `M` Bernoulli corrections the remainder obeys
/// `|R| ≤ 4|(s)_{2M}| (a+N)^{1−σ−2M} / ((2π)^{2M} (σ+2M−1))`, which is added to
/// the error bar together with a rounding term.
pub fn hurwitz_zeta<T: Real>(s: Complex<T>, a: T) -> Result<ValueWithError<T>> {
    if a <= T::zero() {
        return domain(format!("hurwitz_zeta needs a > 0, got {a}"));
    }
    let one = Complex::new(T::one(), T::zero());
    if (s - one).norm() < lit(1e-12) {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    let n = (s.norm().to_f64().unwrap() + 10.0).ceil().max(12.0) as usize;
    let mut acc = ComplexSum::new();
    let mut mag = T::zero();
    for k in 0..n {
        let t = (-s * (a + T::from_usize(k).unwrap()).ln()).exp();
        mag += t.norm();
        acc.add(t);
    }
    let x = a + T::from_usize(n).unwrap();
    let lx = x.ln();
    let xs = (-s * lx).exp();
    let tail = xs * x / (s - one) + xs * lit::<T>(0.5);
    acc.add(tail);
    mag += tail.norm();

    let sigma = s.re;
    let two_pi = T::TAU();
    // rising = (s)_{2k-1}, xp = x^{-s-2k+1}
    let mut rising = s;
    let mut xp = xs / x;
    let mut rem = T::infinity();
    for (k, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let k = k + 1;
        let t = rising * xp * lit::<T>(b);
        acc.add(t);
        mag += t.norm();
        let kk = T::from_usize(2 * k).unwrap();
        let rising_next = rising * (s + kk - T::one());
        let denom = sigma + kk - T::one();
        if denom > T::zero() {
            let bound = lit::<T>(4.0) * rising_next.norm() * (lx * (T::one() - sigma - kk)).exp()
                / (two_pi.powi(2 * k as i32) * denom);
            rem = bound;
            if bound <= T::epsilon() * acc.value().norm() * lit::<T>(0.01) {
                break;
            }
        }
        rising = rising_next * (s + kk);
        xp = xp / (x * x);
    }
    let v = acc.value();
    let e = rem + T::epsilon() * lit::<T>(8.0) * (mag + v.norm());
    Ok(ValueWithError::new(v, e))
}
