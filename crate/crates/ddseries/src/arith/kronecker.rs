use crate::error::{domain, Result};

/// Jacobi symbol `(a/n)` for odd positive `n`.
///
/// Binary reduction: powers of two are stripped with a trailing-zero count and
/// handled by the second supplement, odd parts by reciprocity.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n & 1 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z & 1 == 1 && matches!(n & 7, 3 | 5) {
            t = -t;
        }
        if a & n & 3 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `(a/2)` in the Kronecker sense.
#[inline]
fn two_symbol(a: i64) -> i8 {
    match a.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> Result<i8> {
    if n == 0 {
        return domain("kronecker symbol (a/0) is undefined");
    }
    let mut k = 1i8;
    if n < 0 && a < 0 {
        k = -k;
    }
    let mut b = n.unsigned_abs();
    let v = b.trailing_zeros();
    if v > 0 {
        if a & 1 == 0 {
            return Ok(0);
        }
        b >>= v;
        if v & 1 == 1 {
            k *= two_symbol(a);
        }
    }
    let r = (a as i128).rem_euclid(b as i128) as u64;
    Ok(k * jacobi(r, b))
}

/// `χ_d(n) = (d/n)` for odd positive `d`, `n`, evaluated through reciprocity
/// as `(n/d)` or `(n/d)·ψ₋₁(n)` according to `d mod 4`.
pub fn reciprocity_flip(d: u64, n: u64) -> Result<i8> {
    if d & 1 == 0 || n & 1 == 0 {
        return domain(format!(
            "reciprocity_flip needs odd positive arguments, got ({d}, {n})"
        ));
    }
    let t = jacobi(n, d);
    Ok(if d & 3 == 3 && n & 3 == 3 { -t } else { t })
}
