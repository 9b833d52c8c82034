use num_complex::Complex;

use super::gamma::ln_gamma;
use super::incgamma::gamma_q;
use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Neumaier, Real};
use crate::value::ValueWithError;

const T_MAX: f64 = 60.0;
const STEP: f64 = 0.02;

/// `G_κ(ξ) = (1/2πi) ∫ Γ((1/2+s+κ)/2)/Γ((1/2+κ)/2) ξ^{−s} ds/s` by the
/// trapezoidal rule on a vertical line, `|Im s| ≤ 60`, step `0.02`.
///
/// For `ξ ≥ 1` the line is `Re s = 2`. For `ξ < 1` the factor `ξ^{−s}` would
/// cost `2·log10(1/ξ)` digits there, so the line is moved to
/// `Re s = −(1/2+κ)/2`, between the pole at `0` (residue 1, added back) and
/// the first gamma pole.
pub fn g_weight<T: Real>(kappa: u8, xi: T) -> Result<ValueWithError<T>> {
    if xi <= T::zero() || kappa > 1 {
        return domain(format!(
            "G_weight needs xi > 0 and kappa in {{0,1}}, got ({kappa}, {xi})"
        ));
    }
    let a = (lit::<T>(0.5) + T::from_u8(kappa).unwrap()) * lit(0.5);
    let (c, base) = if xi >= T::one() {
        (lit::<T>(2.0), T::zero())
    } else {
        (-a, T::one())
    };
    let lga = ln_gamma(Complex::new(a, T::zero())).re;
    let lxi = xi.ln();
    let f = |t: T| -> Complex<T> {
        let s = Complex::new(c, t);
        let g = (ln_gamma((s + lit::<T>(0.5) + T::from_u8(kappa).unwrap()) * lit::<T>(0.5))
            - lga
            - s * lxi)
            .exp();
        g / s
    };
    let h = lit::<T>(STEP);
    let n = (T_MAX / STEP).round() as usize;
    let mut fine = Neumaier::new();
    let mut coarse = Neumaier::new();
    let mut mag = T::zero();
    let f0 = f(T::zero()).re * lit(0.5);
    fine.add(f0);
    coarse.add(f0);
    for k in 1..=n {
        let v = f(h * T::from_usize(k).unwrap()).re;
        mag += v.abs();
        fine.add(v);
        if k % 2 == 0 {
            coarse.add(v);
        }
    }
    let inv_pi = T::FRAC_1_PI();
    let i_fine = fine.value() * h * inv_pi;
    let i_coarse = coarse.value() * h * lit(2.0) * inv_pi;
    let edge = f(lit(T_MAX)).norm();
    let tail = edge * lit::<T>(8.0 / std::f64::consts::PI) * inv_pi;
    let err = tail + (i_fine - i_coarse).abs() + T::epsilon() * lit::<T>(16.0) * mag * h * inv_pi;
    if err > lit(1e-6) {
        return Err(Error::Accuracy {
            achieved: err.to_f64().unwrap(),
            target: 1e-6,
        });
    }
    Ok(ValueWithError::real(base + i_fine, err))
}

/// Closed form `G_κ(ξ) = Γ(a, ξ²)/Γ(a)` with `a = (1/2+κ)/2`.
pub fn g_weight_closed<T: Real>(kappa: u8, xi: T) -> T {
    let a = (lit::<T>(0.5) + T::from_u8(kappa).unwrap()) * lit(0.5);
    gamma_q(a, xi * xi)
}
