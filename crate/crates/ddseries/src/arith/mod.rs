//! Integer and quadratic-character arithmetic.

mod character;
mod kronecker;
mod primes;
mod squarefree;

pub use character::{kappa, EightChar, QuadChar};
pub use kronecker::{jacobi, kronecker, reciprocity_flip};
pub use primes::{prime_divisors, primes_up_to, squarefree_sieve, SpfTable};
pub use squarefree::{is_squarefree, squarefree_kernel, squarefree_split, SquarefreeSplit};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Integer square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}
