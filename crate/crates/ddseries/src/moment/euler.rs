use crate::arith::{prime_divisors, primes_up_to, SpfTable};
use crate::error::{domain, Error, Result};
use crate::scalar::{ComplexSum, Neumaier};
use crate::value::ValueWithError;
use crate::C64;

use super::ZETA2;

/// Bound for `2 Σ_{p>P} p^{−1−a}`, from `π(x) < 1.26 x/log x`.
fn prime_tail(a: f64, cutoff: u64) -> f64 {
    let p = cutoff.max(2) as f64;
    2.6 / (a * p.powf(a) * p.ln())
}

fn pow_neg(p: u64, z: C64) -> C64 {
    (-z * (p as f64).ln()).exp()
}

/// `E₀(s) = (4/9)(1 − 2^{−2s−1}) Π_p (1+p^{−1})(1 + p^{−1}(1−p^{−2s−1})^{−1})^{−1}
/// · Π_{p|N} (1+p^{−1})^{−2}(1 + p^{−1} − p^{−2s−1})`, truncated at
/// `prime_cutoff` with the tail folded into the error.
#[allow(non_snake_case)]
pub fn euler_E0(s: C64, n: u64, prime_cutoff: u64) -> ValueWithError<f64> {
    let z = s * 2.0 + 1.0;
    let mut logs = ComplexSum::new();
    for p in primes_up_to(prime_cutoff) {
        let pf = p as f64;
        let inner = C64::new(1.0, 0.0) + (C64::new(1.0, 0.0) - pow_neg(p, z)).inv() / pf;
        logs.add(C64::new((1.0 + 1.0 / pf).ln(), 0.0) - inner.ln());
    }
    let mut v = logs.value().exp() * (C64::new(1.0, 0.0) - pow_neg(2, z)) * (4.0 / 9.0);
    for p in prime_divisors(n) {
        let pf = p as f64;
        v *=
            (C64::new(1.0 + 1.0 / pf, 0.0) - pow_neg(p, z)) / ((1.0 + 1.0 / pf) * (1.0 + 1.0 / pf));
    }
    let t = prime_tail(z.re, prime_cutoff);
    ValueWithError::new(v, v.norm() * (t.exp() - 1.0 + 1e-14))
}

/// [`euler_E0`], failing when the truncation error exceeds `tolerance`.
#[allow(non_snake_case)]
pub fn euler_E0_checked(
    s: C64,
    n: u64,
    prime_cutoff: u64,
    tolerance: f64,
) -> Result<ValueWithError<f64>> {
    if s.re <= -0.25 {
        return domain(format!("E0 needs Re s > -1/4, got {s}"));
    }
    let v = euler_E0(s, n, prime_cutoff);
    if v.abs_error > tolerance {
        return Err(Error::Accuracy {
            achieved: v.abs_error,
            target: tolerance,
        });
    }
    Ok(v)
}

/// `E₀(0) = 2/(9ζ(2)) · Π_{p|N}(1+1/p)^{−2}`.
pub fn e0_closed_form(n: u64) -> f64 {
    let mut v = 2.0 / (9.0 * ZETA2);
    for p in prime_divisors(n) {
        let f = 1.0 + 1.0 / p as f64;
        v /= f * f;
    }
    v
}

/// `E₁(s;g) = Π_{p|g, p≠2} (1+p^{−1})^{−2}(1−p^{−2s−1})^{−1}(1+p^{−1}−p^{−2s−1})`.
#[allow(non_snake_case)]
pub fn euler_E1(s: C64, g: u64) -> Result<C64> {
    if g == 0 {
        return domain("E1 needs g ≠ 0");
    }
    let z = s * 2.0 + 1.0;
    let mut v = C64::new(1.0, 0.0);
    for p in prime_divisors(g) {
        if p == 2 {
            continue;
        }
        let pf = p as f64;
        let x = pow_neg(p, z);
        v *= (C64::new(1.0 + 1.0 / pf, 0.0) - x)
            / ((C64::new(1.0, 0.0) - x) * (1.0 + 1.0 / pf) * (1.0 + 1.0 / pf));
    }
    Ok(v)
}

/// `H(s) = Σ_{(d1,2N)=1} d1^{−2−s} Σ_{f1|d1} Π_{p|2f1} (1 − p^{−s−1}E₁(s;p))`
/// over `d1 ≤ d1_cutoff`. Each factor has modulus at most `5/3` (`3/2` at
/// `p = 2`), so the tail is at most `3 Σ_{d>D} τ(d)² d^{−2}`.
pub fn h_function(s: C64, n: u64, d1_cutoff: u64) -> Result<ValueWithError<f64>> {
    if s.re < 0.0 {
        return domain(format!("H needs Re s ≥ 0, got {s}"));
    }
    let c =
        |p: u64| -> Result<C64> { Ok(C64::new(1.0, 0.0) - pow_neg(p, s + 1.0) * euler_E1(s, p)?) };
    let c2 = c(2)?;
    let spf = SpfTable::new(d1_cutoff.max(2));
    let mut cp = vec![C64::new(0.0, 0.0); d1_cutoff as usize + 1];
    let mut acc = ComplexSum::new();
    let mut mag = Neumaier::new();
    for d in (1..=d1_cutoff).step_by(2) {
        if n > 1 && d % n == 0 {
            continue;
        }
        let mut hd = c2;
        for (p, a) in spf.factor(d) {
            if cp[p as usize] == C64::new(0.0, 0.0) {
                cp[p as usize] = c(p)?;
            }
            hd *= cp[p as usize] * a as f64 + 1.0;
        }
        let t = pow_neg(d, s + 2.0) * hd;
        acc.add(t);
        mag.add(t.norm());
    }
    let l = (d1_cutoff.max(2) as f64).ln() + 1.0;
    let tail = 6.0 * (l.powi(3) + 3.0 * l * l + 6.0 * l + 6.0) / d1_cutoff.max(2) as f64;
    Ok(ValueWithError::new(
        acc.value(),
        tail + 8.0 * f64::EPSILON * mag.value(),
    ))
}

/// The `E₀` factor of the residue as it enters the main term, in the
/// variable `u` with `ζ(2u+1)`:
/// `(2/3)/e(2) · Π_p e(p) · Π_{p|N} (p/(p+1))(1−p^{−z})/e(p)`, where
/// `z = 1+2u` and `e(p) = 1 − p^{−z}/(p+1)`.
pub fn e0_main(u: f64, n: u64, prime_cutoff: u64) -> ValueWithError<f64> {
    let z = 1.0 + 2.0 * u;
    let e = |p: u64| 1.0 - (p as f64).powf(-z) / (p as f64 + 1.0);
    let mut logs = Neumaier::new();
    for p in primes_up_to(prime_cutoff).into_iter().skip(1) {
        logs.add(e(p).ln());
    }
    let mut v = logs.value().exp() * 2.0 / 3.0;
    for p in prime_divisors(n) {
        let pf = p as f64;
        v *= pf / (pf + 1.0) * (1.0 - pf.powf(-z)) / e(p);
    }
    let t = prime_tail(z, prime_cutoff);
    ValueWithError::real(v, v.abs() * (t.exp() - 1.0 + 1e-14))
}

/// The `H` factor of the residue: `Π_{p∤2N} (1/(1−x) + c_p x/(1−x)²)` with
/// `x = p^{−2−u}`, `c_p = 1 − p^{−1−u}(p/(p+1))/e(p)`.
pub fn h_main(u: f64, n: u64, prime_cutoff: u64) -> ValueWithError<f64> {
    let z = 1.0 + 2.0 * u;
    let mut logs = Neumaier::new();
    for p in primes_up_to(prime_cutoff) {
        if p == 2 || p == n {
            continue;
        }
        let pf = p as f64;
        let e = 1.0 - pf.powf(-z) / (pf + 1.0);
        let c = 1.0 - pf.powf(-1.0 - u) * (pf / (pf + 1.0)) / e;
        let x = pf.powf(-2.0 - u);
        logs.add((1.0 / (1.0 - x) + c * x / ((1.0 - x) * (1.0 - x))).ln());
    }
    let v = logs.value().exp();
    let t = prime_tail(1.0 + u, prime_cutoff);
    ValueWithError::real(v, v * (t.exp() - 1.0 + 1e-14))
}
