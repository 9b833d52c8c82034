use num_complex::Complex;

use crate::arith::{prime_divisors, QuadChar};
use crate::error::{Error, Result};
use crate::scalar::{lit, ComplexSum, Real};
use crate::special::hurwitz_zeta;
use crate::value::ValueWithError;

/// `L(s, χ) = q^{−s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)` with `q` the conductor.
pub fn l_value_hurwitz<T: Real>(s: Complex<T>, chi: &QuadChar) -> Result<ValueWithError<T>> {
    let q = chi.conductor();
    if chi.is_trivial() {
        return hurwitz_zeta(s, T::one());
    }
    let qf = lit::<T>(q as f64);
    let mut acc = ComplexSum::new();
    let mut err = T::zero();
    let mut mag = T::zero();
    for a in 1..q {
        let x = chi.eval_u(a);
        if x == 0 {
            continue;
        }
        let z = hurwitz_zeta(s, lit::<T>(a as f64) / qf)?;
        let t = if x > 0 { z.value } else { -z.value };
        acc.add(t);
        mag += t.norm();
        err += z.abs_error;
    }
    let pre = (-s * qf.ln()).exp();
    let v = acc.value() * pre;
    let pn = pre.norm();
    Ok(ValueWithError::new(
        v,
        (err + T::epsilon() * lit::<T>(8.0) * mag) * pn,
    ))
}

/// Multiplies by `Π_{p | P} (1 − χ(p) p^{−s})`.
pub fn remove_euler_factors<T: Real>(
    l: ValueWithError<T>,
    s: Complex<T>,
    chi: &QuadChar,
    modulus: u64,
) -> ValueWithError<T> {
    let mut out = l;
    for p in prime_divisors(modulus) {
        let x = chi.eval_u(p);
        if x == 0 {
            continue;
        }
        let f = Complex::new(T::one(), T::zero())
            - (-s * lit::<T>(p as f64).ln()).exp() * T::from_i8(x).unwrap();
        out = out.scale(f);
    }
    out
}

/// `Σ_{n ≤ K, (n, P) = 1} χ(n) n^{−s}` for `Re s > 1`, with `K` chosen so that
/// the tail `K^{1−σ}/(σ−1)` is at most `target` (capped at `10^7` terms).
pub fn l_series_restricted(
    s: Complex<f64>,
    chi: &QuadChar,
    modulus: u64,
    target: f64,
) -> Result<ValueWithError<f64>> {
    let sigma = s.re;
    if sigma <= 1.0 {
        return Err(Error::Region(format!(
            "Dirichlet series needs Re s > 1, got {s}"
        )));
    }
    let k = ((target * (sigma - 1.0)).powf(-1.0 / (sigma - 1.0)))
        .ceil()
        .clamp(50.0, 1e7) as u64;
    let ps = prime_divisors(modulus);
    let mut acc = ComplexSum::new();
    let mut mag = 0.0;
    let real_s = s.im == 0.0;
    for n in 1..=k {
        if ps.iter().any(|&p| n % p == 0) {
            continue;
        }
        let x = chi.eval_u(n);
        if x == 0 {
            continue;
        }
        let ln = (n as f64).ln();
        let t = if real_s {
            Complex::new((-sigma * ln).exp(), 0.0)
        } else {
            (-s * ln).exp()
        };
        mag += t.re.abs() + t.im.abs();
        acc.add(if x > 0 { t } else { -t });
    }
    let tail = (k as f64).powf(1.0 - sigma) / (sigma - 1.0);
    Ok(ValueWithError::new(
        acc.value(),
        tail + 8.0 * f64::EPSILON * mag,
    ))
}

/// `L^{(P)}(s, χ)`: the Dirichlet series when `Re s ≥ 3/2`, otherwise the
/// Hurwitz route with the Euler factors at `p | P` removed.
pub fn l_restricted(
    s: Complex<f64>,
    chi: &QuadChar,
    modulus: u64,
    target: f64,
) -> Result<ValueWithError<f64>> {
    if s.re >= 1.5 {
        l_series_restricted(s, chi, modulus, target)
    } else {
        let l = l_value_hurwitz(s, chi)?;
        Ok(remove_euler_factors(l, s, chi, modulus))
    }
}

/// Convexity envelope with constant 10 and `ε = 0.05`:
/// `(q(1+|t|))^{1/2−σ}` for `σ ≤ −ε`, `(q(1+|t|))^{(1−σ)/2+ε}` inside the
/// strip, and `1` for `σ ≥ 1+ε`.
pub fn convexity_bound_envelope(s: Complex<f64>, q: u64) -> f64 {
    const EPS: f64 = 0.05;
    let qt = q as f64 * (1.0 + s.im.abs());
    let e = if s.re <= -EPS {
        0.5 - s.re
    } else if s.re < 1.0 + EPS {
        (1.0 - s.re) / 2.0 + EPS
    } else {
        0.0
    };
    10.0 * qt.powf(e)
}
