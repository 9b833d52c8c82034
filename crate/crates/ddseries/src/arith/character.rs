use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::kronecker::jacobi;
use super::squarefree::squarefree_split;
use crate::error::{domain, Error, Result};

/// The four characters of conductor dividing 8.
///
/// `ψ₁` is the trivial character of modulus 1, so `ψ₁(2) = 1`; the other three
/// vanish on even integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EightChar {
    Psi1,
    PsiM1,
    Psi2,
    PsiM2,
}

impl EightChar {
    pub const ALL: [EightChar; 4] = [
        EightChar::Psi1,
        EightChar::PsiM1,
        EightChar::Psi2,
        EightChar::PsiM2,
    ];

    pub fn conductor(self) -> u64 {
        match self {
            EightChar::Psi1 => 1,
            EightChar::PsiM1 => 4,
            EightChar::Psi2 | EightChar::PsiM2 => 8,
        }
    }

    #[inline]
    pub fn eval(self, n: i64) -> i8 {
        if self == EightChar::Psi1 {
            return 1;
        }
        if n & 1 == 0 {
            return 0;
        }
        let r = n.rem_euclid(8);
        let m1 = if r & 3 == 1 { 1 } else { -1 };
        let two = if r == 1 || r == 7 { 1 } else { -1 };
        match self {
            EightChar::Psi1 => 1,
            EightChar::PsiM1 => m1,
            EightChar::Psi2 => two,
            EightChar::PsiM2 => m1 * two,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            EightChar::Psi1 => (false, false),
            EightChar::PsiM1 => (true, false),
            EightChar::Psi2 => (false, true),
            EightChar::PsiM2 => (true, true),
        }
    }

    fn from_bits(m1: bool, two: bool) -> Self {
        match (m1, two) {
            (false, false) => EightChar::Psi1,
            (true, false) => EightChar::PsiM1,
            (false, true) => EightChar::Psi2,
            (true, true) => EightChar::PsiM2,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Self::from_bits(a ^ c, b ^ d)
    }

    pub fn kappa(self) -> u8 {
        self.bits().0 as u8
    }

    pub fn tag(self) -> &'static str {
        match self {
            EightChar::Psi1 => "1",
            EightChar::PsiM1 => "-1",
            EightChar::Psi2 => "2",
            EightChar::PsiM2 => "-2",
        }
    }
}

impl fmt::Display for EightChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EightChar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches("psi") {
            "1" => Ok(EightChar::Psi1),
            "-1" | "m1" => Ok(EightChar::PsiM1),
            "2" => Ok(EightChar::Psi2),
            "-2" | "m2" => Ok(EightChar::PsiM2),
            other => domain(format!("unknown mod-8 character tag {other:?}")),
        }
    }
}

/// A real primitive character `n ↦ (n/k)·ψ(n)` with `k` odd squarefree and
/// `ψ` one of the characters of conductor dividing 8.
///
/// Products are canonicalized to this primitive form, so `χ_d = (d/·)` and
/// `χ̃_d = (·/d)` are obtained through [`QuadChar::chi_d`] and
/// [`QuadChar::tilde`] rather than stored with a flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadChar {
    odd_conductor: u64,
    eight_part: EightChar,
}

impl QuadChar {
    pub fn new(odd_conductor: u64, eight_part: EightChar) -> Result<Self> {
        if odd_conductor & 1 == 0 {
            return domain(format!("odd conductor {odd_conductor} is even"));
        }
        if squarefree_split(odd_conductor)?.d1 != 1 {
            return domain(format!("odd conductor {odd_conductor} is not squarefree"));
        }
        Ok(QuadChar {
            odd_conductor,
            eight_part,
        })
    }

    pub const fn trivial() -> Self {
        QuadChar {
            odd_conductor: 1,
            eight_part: EightChar::Psi1,
        }
    }

    pub fn eight(psi: EightChar) -> Self {
        QuadChar {
            odd_conductor: 1,
            eight_part: psi,
        }
    }

    /// `χ̃_d = (·/d)` for odd `d`, reduced to its primitive form.
    pub fn tilde(d: u64) -> Result<Self> {
        if d & 1 == 0 {
            return domain(format!("tilde character needs odd d, got {d}"));
        }
        let k = squarefree_split(d)?.d0;
        Ok(QuadChar {
            odd_conductor: k,
            eight_part: EightChar::Psi1,
        })
    }

    /// `χ_d = (d/·)` for odd `d`: `χ̃_{d0}` or `χ̃_{d0}ψ₋₁` by `d0 mod 4`.
    pub fn chi_d(d: u64) -> Result<Self> {
        if d & 1 == 0 {
            return domain(format!("chi_d needs odd d, got {d}"));
        }
        let k = squarefree_split(d)?.d0;
        let psi = if k & 3 == 3 {
            EightChar::PsiM1
        } else {
            EightChar::Psi1
        };
        Ok(QuadChar {
            odd_conductor: k,
            eight_part: psi,
        })
    }

    /// The primitive character agreeing with the Kronecker symbol `(e/·)` on
    /// odd integers, for any positive `e` (odd or even).
    pub fn kronecker_symbol(e: u64) -> Result<Self> {
        if e == 0 {
            return domain("kronecker character of 0");
        }
        let k = squarefree_split(e)?.d0;
        let two = k & 1 == 0;
        let odd = if two { k / 2 } else { k };
        let mut c = QuadChar::chi_d(odd)?;
        if two {
            c.eight_part = c.eight_part.mul(EightChar::Psi2);
        }
        Ok(c)
    }

    pub fn odd_conductor(&self) -> u64 {
        self.odd_conductor
    }

    pub fn eight_part(&self) -> EightChar {
        self.eight_part
    }

    pub fn conductor(&self) -> u64 {
        self.odd_conductor * self.eight_part.conductor()
    }

    pub fn is_trivial(&self) -> bool {
        self.odd_conductor == 1 && self.eight_part == EightChar::Psi1
    }

    #[inline]
    pub fn eval(&self, n: i64) -> i8 {
        let e = self.eight_part.eval(n);
        if e == 0 || self.odd_conductor == 1 {
            return e;
        }
        let r = n.rem_euclid(self.odd_conductor as i64) as u64;
        e * jacobi(r, self.odd_conductor)
    }

    #[inline]
    pub fn eval_u(&self, n: u64) -> i8 {
        let e = self.eight_part.eval((n & 7) as i64);
        if e == 0 || self.odd_conductor == 1 {
            return e;
        }
        e * jacobi(n, self.odd_conductor)
    }

    pub fn kappa(&self) -> u8 {
        ((1 - self.eval(-1)) / 2) as u8
    }

    /// Pointwise product, reduced to the primitive character.
    pub fn mul(&self, other: &QuadChar) -> QuadChar {
        let g = super::gcd(self.odd_conductor, other.odd_conductor);
        QuadChar {
            odd_conductor: (self.odd_conductor / g) * (other.odd_conductor / g),
            eight_part: self.eight_part.mul(other.eight_part),
        }
    }

    pub fn with_eight(&self, psi: EightChar) -> QuadChar {
        QuadChar {
            odd_conductor: self.odd_conductor,
            eight_part: self.eight_part.mul(psi),
        }
    }
}

impl fmt::Display for QuadChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.odd_conductor, self.eight_part)
    }
}

impl FromStr for QuadChar {
    type Err = Error;
    /// `k` or `k:psi` with `psi` in `{1,-1,2,-2}`.
    fn from_str(s: &str) -> Result<Self> {
        let (k, psi) = match s.split_once(':') {
            Some((k, p)) => (k, p.parse()?),
            None => (s, EightChar::Psi1),
        };
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad conductor {k:?}")))?;
        QuadChar::new(k, psi)
    }
}

/// `κ(χ) = (1 − χ(−1))/2`.
pub fn kappa(chi: &QuadChar) -> u8 {
    chi.kappa()
}
