use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::quad::gauss_kronrod;
use crate::scalar::{lit, Real};
use crate::value::ValueWithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightKind {
    /// Supported on `[1/4, 5/4]`, equal to 1 on `[1/2, 1]`.
    BumpH,
    /// Supported on `[1, 2]`.
    WindowW,
}

/// Smooth compactly supported weight glued from `e^{−c/t}` smoothsteps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothWeight {
    pub kind: WeightKind,
    /// The constant `c` in `e^{−c/t}`; larger values give steeper transitions.
    pub sharpness: f64,
}

impl Default for SmoothWeight {
    fn default() -> Self {
        SmoothWeight::bump_h()
    }
}

impl SmoothWeight {
    pub fn bump_h() -> Self {
        SmoothWeight {
            kind: WeightKind::BumpH,
            sharpness: 1.0,
        }
    }

    pub fn window_w() -> Self {
        SmoothWeight {
            kind: WeightKind::WindowW,
            sharpness: 1.0,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            WeightKind::BumpH => (0.25, 1.25),
            WeightKind::WindowW => (1.0, 2.0),
        }
    }

    fn step<T: Real>(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        if t >= T::one() {
            return T::one();
        }
        let c = lit::<T>(self.sharpness);
        let f = (-c / t).exp();
        let g = (-c / (T::one() - t)).exp();
        f / (f + g)
    }

    pub fn eval<T: Real>(&self, x: T) -> T {
        match self.kind {
            WeightKind::BumpH => {
                let q = lit::<T>(0.25);
                self.step((x - q) / q) * self.step((lit::<T>(1.25) - x) / q)
            }
            WeightKind::WindowW => {
                let h = lit::<T>(0.5);
                self.step((x - T::one()) / h) * self.step((lit::<T>(2.0) - x) / h)
            }
        }
    }
}

/// Mellin transform `f̃(z) = ∫ f(x) x^{z−1} dx` over the support of `f`.
pub fn mellin_weight<T: Real>(f: &SmoothWeight, z: Complex<T>) -> ValueWithError<T> {
    let (a, b) = f.support();
    let zm1 = z - T::one();
    gauss_kronrod(
        |x: T| (zm1 * x.ln()).exp() * f.eval(x),
        lit(a),
        lit(b),
        lit::<T>(1e-15).max(T::epsilon()),
    )
}

/// `∫ f(x) x^{z−1} log x dx`, the derivative of the Mellin transform.
pub fn mellin_weight_log<T: Real>(f: &SmoothWeight, z: Complex<T>) -> ValueWithError<T> {
    let (a, b) = f.support();
    let zm1 = z - T::one();
    gauss_kronrod(
        |x: T| (zm1 * x.ln()).exp() * (f.eval(x) * x.ln()),
        lit(a),
        lit(b),
        lit::<T>(1e-15).max(T::epsilon()),
    )
}
