//! The correction Dirichlet polynomials `P_{d0,d1}^{(χ)}(s)` and
//! `Q_{m0,m1}^{(χ′)}(w)` attached to the square part of the twisting index.
//!
//! For `p^α ‖ d1` the local factor of `P` is
//! `Σ_{n≤α} χ(p^{2n}) p^{n−2ns} − Σ_{n≤α−1} (χ_{d0}χ)(p^{2n+1}) p^{n−(2n+1)s}`.
//! `Q` has the same shape with `χ̃_{m0}χ′` in the odd sum. Two upper limits
//! for that odd sum are supported: `β` ([`Variant::QAsPrinted`]) and `β−1`
//! ([`Variant::QAlphaMinusOne`]). Only the `β−1` form satisfies the
//! reflection `Q(w) = m1^{1−2w} χ′(m1²) Q(1−w)` and the exact coefficient
//! identity behind the interchange of the `d`- and `m`-sums; it is the one
//! used everywhere downstream ([`Q_VARIANT`]).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::arith::{QuadChar, SquarefreeSplit};
use crate::error::{domain, Result};
use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    P,
    QAsPrinted,
    QAlphaMinusOne,
}

/// The `Q` form selected by the reflection and sum-interchange checks.
pub const Q_VARIANT: Variant = Variant::QAlphaMinusOne;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorrectionPolyKey {
    pub split: SquarefreeSplit,
    pub twist: QuadChar,
    pub variant: Variant,
}

impl CorrectionPolyKey {
    pub fn new(split: SquarefreeSplit, twist: QuadChar, variant: Variant) -> Self {
        CorrectionPolyKey {
            split,
            twist,
            variant,
        }
    }

    /// Character value at `p` in the odd-index sum.
    fn odd_char(&self, p: u64) -> i8 {
        let t = self.twist.eval_u(p);
        if t == 0 {
            return 0;
        }
        let d0 = self.split.d0;
        let x = match self.variant {
            // χ_{d0}(p) = (d0/p)
            Variant::P => crate::arith::jacobi(d0, p),
            // χ̃_{m0}(p) = (p/m0)
            _ => {
                if d0 == 1 {
                    1
                } else {
                    crate::arith::jacobi(p, d0)
                }
            }
        };
        t * x
    }

    fn odd_top(&self, alpha: u32) -> Option<u32> {
        match self.variant {
            Variant::P | Variant::QAlphaMinusOne => alpha.checked_sub(1),
            Variant::QAsPrinted => Some(alpha),
        }
    }
}

fn local<T: Real>(key: &CorrectionPolyKey, p: u64, alpha: u32, s: Complex<T>) -> Complex<T> {
    let lp = lit::<T>(p as f64).ln();
    let c2 = key.twist.eval_u(p).abs();
    let c1 = key.odd_char(p);
    let mut v = Complex::new(T::one(), T::zero());
    if c2 != 0 {
        for n in 1..=alpha {
            let nf = T::from_u32(n).unwrap();
            v = v + ((Complex::new(nf, T::zero()) - s * (nf + nf)) * lp).exp();
        }
    }
    if let Some(top) = key.odd_top(alpha) {
        if c1 != 0 {
            let sign = T::from_i8(c1).unwrap();
            for n in 0..=top {
                let nf = T::from_u32(n).unwrap();
                let e = Complex::new(nf, T::zero()) - s * (nf + nf + T::one());
                v = v - (e * lp).exp() * sign;
            }
        }
    }
    v
}

/// Evaluates the polynomial named by `key.variant`.
pub fn eval_poly<T: Real>(key: &CorrectionPolyKey, s: Complex<T>) -> Complex<T> {
    let mut v = Complex::new(T::one(), T::zero());
    for &(p, a) in &key.split.d1_factorization {
        v = v * local(key, p, a, s);
    }
    v
}

#[allow(non_snake_case)]
pub fn eval_P<T: Real>(key: &CorrectionPolyKey, s: Complex<T>) -> Result<Complex<T>> {
    if key.variant != Variant::P {
        return domain("eval_P needs a P key");
    }
    Ok(eval_poly(key, s))
}

#[allow(non_snake_case)]
pub fn eval_Q<T: Real>(key: &CorrectionPolyKey, w: Complex<T>) -> Result<Complex<T>> {
    if key.variant == Variant::P {
        return domain("eval_Q needs a Q key");
    }
    Ok(eval_poly(key, w))
}

/// Both sides of the reflection `F(z) = d1^{1−2z} χ(d1²) F(1−z)`.
pub fn reflection_sides<T: Real>(
    key: &CorrectionPolyKey,
    z: Complex<T>,
) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    let lhs = eval_poly(key, z);
    let d1 = key.split.d1;
    let chi_sq = T::from_i8(key.twist.eval_u(d1).abs()).unwrap();
    let rhs = ((one - z * lit::<T>(2.0)) * lit::<T>(d1 as f64).ln()).exp()
        * chi_sq
        * eval_poly(key, one - z);
    (lhs, rhs)
}

/// `|F(z) − d1^{1−2z} χ(d1²) F(1−z)|`.
pub fn check_reflection<T: Real>(key: &CorrectionPolyKey, z: Complex<T>) -> T {
    let (l, r) = reflection_sides(key, z);
    (l - r).norm()
}

/// Reflection residual divided by the larger side.
pub fn check_reflection_relative<T: Real>(key: &CorrectionPolyKey, z: Complex<T>) -> T {
    let (l, r) = reflection_sides(key, z);
    let scale = l.norm().max(r.norm()).max(T::min_positive_value());
    (l - r).norm() / scale
}

/// Integer Dirichlet coefficients: the polynomial equals `Σ c_e e^{−z}` over
/// the returned `(e, c_e)`, sorted by `e`.
pub fn dirichlet_coefficients(key: &CorrectionPolyKey) -> Vec<(u64, i64)> {
    let mut acc: Vec<(u64, i64)> = vec![(1, 1)];
    for &(p, a) in &key.split.d1_factorization {
        let c2 = key.twist.eval_u(p).abs() as i64;
        let c1 = key.odd_char(p) as i64;
        let mut loc: Vec<(u64, i64)> = vec![(1, 1)];
        for n in 1..=a {
            loc.push((p.pow(2 * n), c2 * p.pow(n) as i64));
        }
        if let Some(top) = key.odd_top(a) {
            for n in 0..=top {
                loc.push((p.pow(2 * n + 1), -c1 * p.pow(n) as i64));
            }
        }
        let mut next = Vec::with_capacity(acc.len() * loc.len());
        for &(e, c) in &acc {
            for &(f, d) in &loc {
                if c * d != 0 {
                    next.push((e * f, c * d));
                }
            }
        }
        acc = next;
    }
    acc.sort_unstable();
    acc
}
