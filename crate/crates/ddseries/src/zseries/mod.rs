//! Truncated evaluation of
//! `Z(s, w; χ, χ′) = Σ_{(d,2MN)=1} L^{(2MN)}(s, χ_{d0}χ) χ′(d0) P_{d0,d1}^{(χ)}(s) d^{−w}`,
//! its interchanged form, the coefficient functions `K`, `F`, `G`, `A` and
//! the first functional equation.

mod coeff;
mod direct;
mod funceq;
mod probe;
mod switch;

pub use coeff::{coeff_a, coeff_f_g, coeff_f_g_special, coeff_k, k_four_term, ADivisor};
pub use direct::{cutoff_sequence, z_direct, z_direct_term, z_swapped, z_swapped_term};
pub use funceq::{funceq1_rhs, funceq1_term, BracketForm, S_term};
pub use probe::{convexity_probe, convexity_probe_table, ProbeRow};
pub use switch::coefficient_switch_mismatches;

use crate::arith::{gcd, QuadChar, SpfTable, SquarefreeSplit};
use crate::error::{domain, Error, Result};
use crate::C64;

/// A point `(s, w)` together with the twists and the level `(M, N)`.
///
/// `chi` and `chi_prime` carry their 2-parts, so they stand for `χψ` and
/// `χ′ψ′`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZPoint {
    pub s: C64,
    pub w: C64,
    pub chi: QuadChar,
    pub chi_prime: QuadChar,
    pub m: u64,
    pub n: u64,
}

fn prime_or_one(x: u64) -> bool {
    x == 1 || (x > 2 && (2..).take_while(|p| p * p <= x).all(|p| x % p != 0))
}

impl ZPoint {
    pub fn new(s: C64, w: C64, chi: QuadChar, chi_prime: QuadChar, m: u64, n: u64) -> Result<Self> {
        if !prime_or_one(m) || !prime_or_one(n) {
            return domain(format!("M = {m} and N = {n} must be odd primes or 1"));
        }
        let l = m * n / gcd(m, n);
        for c in [&chi, &chi_prime] {
            if l % c.odd_conductor() != 0 {
                return domain(format!(
                    "conductor of {c} does not divide 8·lcm(M, N) = {}",
                    8 * l
                ));
            }
        }
        Ok(ZPoint {
            s,
            w,
            chi,
            chi_prime,
            m,
            n,
        })
    }

    /// Trivial twists, `M = N = 1`.
    pub fn plain(s: C64, w: C64) -> Self {
        ZPoint {
            s,
            w,
            chi: QuadChar::trivial(),
            chi_prime: QuadChar::trivial(),
            m: 1,
            n: 1,
        }
    }

    /// `2MN`.
    pub fn modulus(&self) -> u64 {
        2 * self.m * self.n
    }

    pub fn coprime(&self, d: u64) -> bool {
        d & 1 == 1 && (self.m == 1 || d % self.m != 0) && (self.n == 1 || d % self.n != 0)
    }

    /// The point with `(s, χ)` and `(w, χ′)` exchanged.
    pub fn swapped(&self) -> Self {
        ZPoint {
            s: self.w,
            w: self.s,
            chi: self.chi_prime,
            chi_prime: self.chi,
            m: self.m,
            n: self.n,
        }
    }
}

/// Growth exponent in `d` of `|L(σ, χ_{d0}·)|·|P_{d0,d1}(σ)|`.
pub(crate) fn growth_exponent(sigma: f64) -> f64 {
    if sigma >= 1.0 {
        0.0
    } else if sigma > 0.0 {
        (1.0 - sigma) / 2.0
    } else {
        0.5 - sigma
    }
}

/// Absolute-convergence region of the `d`-sum, shrunk by `margin`: the inner
/// variable `inner` is the L-function argument, `outer` the summation one.
pub(crate) fn check_region(inner: C64, outer: C64, margin: f64, names: (&str, &str)) -> Result<()> {
    let (a, b) = names;
    let polar = [
        ((inner - 1.0).norm(), format!("{a} = 1")),
        ((outer - 1.0).norm(), format!("{b} = 1")),
        ((inner + outer - 1.5).norm(), format!("{a} + {b} = 3/2")),
    ];
    for (dist, line) in polar {
        if dist < 1e-3 {
            return Err(Error::Region(format!(
                "within 1e-3 of the polar line {line}"
            )));
        }
    }
    let sigma = inner.re;
    let ok = outer.re - growth_exponent(sigma) > 1.0 + margin;
    if !ok {
        let cond = if sigma > 1.0 {
            format!("Re {b} > 1 + margin")
        } else if sigma > 0.0 {
            format!("Re {a}/2 + Re {b} > 3/2 + margin")
        } else {
            format!("Re {a} + Re {b} > 3/2 + margin")
        };
        return Err(Error::Region(format!(
            "{cond} fails at ({a}, {b}) = ({inner}, {outer}), margin {margin}"
        )));
    }
    if sigma > 1.0 && sigma - 1.0 <= margin {
        return Err(Error::Region(format!(
            "Re {a} > 1 + margin fails at {a} = {inner}"
        )));
    }
    Ok(())
}

pub(crate) fn split_with(spf: &SpfTable, d: u64) -> SquarefreeSplit {
    SquarefreeSplit::from_factorization(d, &spf.factor(d))
}
