use serde::{Deserialize, Serialize};

use super::isqrt;
use crate::error::{domain, Result};

/// `d = d0·d1²` with `d0` squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquarefreeSplit {
    pub d: u64,
    pub d0: u64,
    pub d1: u64,
    pub d1_factorization: Vec<(u64, u32)>,
}

impl SquarefreeSplit {
    /// Builds the split from a full factorization of `d`.
    pub fn from_factorization(d: u64, fac: &[(u64, u32)]) -> Self {
        let mut d0 = 1;
        let mut d1 = 1;
        let mut d1f = Vec::new();
        for &(p, e) in fac {
            if e & 1 == 1 {
                d0 *= p;
            }
            if e >= 2 {
                d1 *= p.pow(e / 2);
                d1f.push((p, e / 2));
            }
        }
        SquarefreeSplit {
            d,
            d0,
            d1,
            d1_factorization: d1f,
        }
    }
}

/// Trial division by all `p ≤ d^{1/3}`; the cofactor then has at most two
/// prime factors, so it is either squarefree or a prime square.
pub fn squarefree_split(d: u64) -> Result<SquarefreeSplit> {
    if d == 0 {
        return domain("squarefree_split(0)");
    }
    let mut r = d;
    let mut d0 = 1;
    let mut d1 = 1;
    let mut d1f = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= d && p * p <= r {
        if r % p == 0 {
            let mut e = 0u32;
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            if e & 1 == 1 {
                d0 *= p;
            }
            if e >= 2 {
                d1 *= p.pow(e / 2);
                d1f.push((p, e / 2));
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if r > 1 {
        let q = isqrt(r);
        if q * q == r {
            d1 *= q;
            d1f.push((q, 1));
        } else {
            d0 *= r;
        }
    }
    Ok(SquarefreeSplit {
        d,
        d0,
        d1,
        d1_factorization: d1f,
    })
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && squarefree_split(n).map(|s| s.d1 == 1).unwrap_or(false)
}

/// Product of the primes dividing `n` to an odd power.
pub fn squarefree_kernel(n: u64) -> u64 {
    squarefree_split(n).map(|s| s.d0).unwrap_or(0)
}
