use num_complex::Complex;

use super::gamma::ln_gamma;
use crate::scalar::{lit, Real};

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x)/Γ(a)` for `a > 0`,
/// `x ≥ 0`: power series for `x < a + 1`, Lentz continued fraction otherwise.
pub fn gamma_q<T: Real>(a: T, x: T) -> T {
    gamma_q_lg(a, x, ln_gamma(Complex::new(a, T::zero())).re)
}

/// [`gamma_q`] with `log Γ(a)` supplied by the caller.
pub(crate) fn gamma_q_lg<T: Real>(a: T, x: T, lga: T) -> T {
    if x <= T::zero() {
        return T::one();
    }
    let eps = T::epsilon();
    if x < a + T::one() {
        let mut ap = a;
        let mut del = T::one() / a;
        let mut sum = del;
        for _ in 0..1000 {
            ap += T::one();
            del = del * x / ap;
            sum += del;
            if del.abs() < sum.abs() * eps {
                break;
            }
        }
        let p = sum * (-x + a * x.ln() - lga).exp();
        T::one() - p
    } else {
        let tiny = lit::<T>(1e-300).max(T::min_positive_value());
        let mut b = x + T::one() - a;
        let mut c = T::one() / tiny;
        let mut d = T::one() / b;
        let mut h = d;
        for i in 1..1000 {
            let fi = T::from_usize(i).unwrap();
            let an = -fi * (fi - a);
            b += lit(2.0);
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = T::one() / d;
            let del = d * c;
            h *= del;
            if (del - T::one()).abs() < eps {
                break;
            }
        }
        (-x + a * x.ln() - lga).exp() * h
    }
}
