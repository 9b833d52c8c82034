//! Double character sums, the quadratic large sieve and fourth moments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::io::Write;

use crate::arith::{jacobi, kronecker, squarefree_sieve, QuadChar, SpfTable};
use crate::error::{domain, Result};
use crate::lfunc::{l_central, l_value_hurwitz};
use crate::policy::TruncationPolicy;
use crate::scalar::{par_block_sum, par_map, ComplexSum, Neumaier};
use crate::value::ValueWithError;
use crate::C64;

/// Values `f(1), …, f(len)` of a completely multiplicative `f` from its
/// values at primes. Index 0 is unused and set to 0.
pub fn multiplicative_row<F: Fn(u64) -> i8>(len: u64, spf: &SpfTable, at_prime: F) -> Vec<i8> {
    let mut row = vec![0i8; len as usize + 1];
    if len >= 1 {
        row[1] = 1;
    }
    for n in 2..=len {
        let p = spf.spf(n);
        row[n as usize] = if p == n {
            at_prime(p)
        } else {
            row[p as usize] * row[(n / p) as usize]
        };
    }
    row
}

/// Kronecker symbols `(d/n)` for `n = 0..=len`, built from the values at primes.
pub fn kronecker_row(d: u64, len: u64, spf: &SpfTable) -> Vec<i8> {
    multiplicative_row(len, spf, |p| kronecker(d as i64, p as i64).unwrap_or(0))
}

/// `Σ_{d≤P} Σ_{n≤Q} χ_d(n) χ(n) χ′(d) (dn)^{−1/2}` over odd `d` and `n`, with
/// `χ_d(n)` the Jacobi symbol `(d/n)`.
pub fn double_char_sum(p: u64, q: u64, chi: &QuadChar, chi_prime: &QuadChar) -> C64 {
    let spf = SpfTable::new(q.max(2));
    let ds: Vec<u64> = (1..=p)
        .step_by(2)
        .filter(|&d| chi_prime.eval_u(d) != 0)
        .collect();
    let weights: Vec<f64> = (0..=q)
        .map(|n| {
            if n == 0 {
                0.0
            } else {
                (n as f64).sqrt().recip()
            }
        })
        .collect();
    let tw: Vec<i8> = (0..=q).map(|n| chi.eval_u(n)).collect();
    par_block_sum(ds.len(), |i| {
        let d = ds[i];
        let row = kronecker_row(d, q, &spf);
        let mut acc = Neumaier::new();
        for n in (1..=q as usize).step_by(2) {
            let x = row[n] * tw[n];
            if x != 0 {
                acc.add(x as f64 * weights[n]);
            }
        }
        let v = acc.value() * chi_prime.eval_u(d) as f64 / (d as f64).sqrt();
        ValueWithError::exact(C64::new(v, 0.0))
    })
    .value
}

/// Coefficients `a_n` on odd `n ≤ bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSeq {
    bound: u64,
    entries: Vec<C64>,
    norm_sq: f64,
}

impl CoeffSeq {
    /// `a_n = f(n)` for odd `n ≤ bound`.
    pub fn from_fn<F: Fn(u64) -> C64>(bound: u64, f: F) -> Self {
        let entries: Vec<C64> = (1..=bound).step_by(2).map(f).collect();
        let mut s = CoeffSeq {
            bound,
            entries,
            norm_sq: 0.0,
        };
        s.norm_sq = s.starred_norm_sq();
        s
    }

    /// Independent uniform signs `±1`.
    pub fn random_signs<R: Rng>(bound: u64, rng: &mut R) -> Self {
        let signs: Vec<f64> = (1..=bound)
            .step_by(2)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        Self::from_fn(bound, |n| C64::new(signs[(n / 2) as usize], 0.0))
    }

    /// `a_n = ±n^{−1/2}` with independent uniform signs.
    pub fn random_normalized<R: Rng>(bound: u64, rng: &mut R) -> Self {
        let signs = Self::random_signs(bound, rng);
        Self::from_fn(bound, |n| signs.get(n) / (n as f64).sqrt())
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `a_n`, zero for even or out-of-range `n`.
    pub fn get(&self, n: u64) -> C64 {
        if n & 1 == 0 || n > self.bound {
            C64::new(0.0, 0.0)
        } else {
            self.entries[(n / 2) as usize]
        }
    }

    /// Cached `Σ*|a_n|²` over odd squarefree `n`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Recomputes `Σ*|a_n|²`.
    pub fn starred_norm_sq(&self) -> f64 {
        let sf = squarefree_sieve(self.bound.max(1));
        let mut acc = Neumaier::new();
        for (i, a) in self.entries.iter().enumerate() {
            if sf[2 * i + 1] {
                acc.add(a.norm_sqr());
            }
        }
        acc.value()
    }
}

/// Symbols `(n/m)` for odd squarefree `m ≤ P`, `n ≤ Q`, computed once per
/// shape and reused across coefficient draws.
#[derive(Clone, Debug)]
pub struct LargeSieve {
    p: u64,
    q: u64,
    ns: Vec<u64>,
    rows: Vec<Vec<i8>>,
}

fn odd_squarefree(b: u64) -> Vec<u64> {
    let sf = squarefree_sieve(b.max(1));
    (1..=b).step_by(2).filter(|&n| sf[n as usize]).collect()
}

impl LargeSieve {
    pub fn new(p: u64, q: u64) -> Self {
        let spf = SpfTable::new(q.max(2));
        let ms = odd_squarefree(p);
        let ns = odd_squarefree(q);
        let rows = par_map(ms.len(), |i| {
            let m = ms[i];
            let full = multiplicative_row(q, &spf, |pr| jacobi(pr, m));
            ns.iter().map(|&n| full[n as usize]).collect()
        });
        LargeSieve { p, q, ns, rows }
    }

    pub fn shape(&self) -> (u64, u64) {
        (self.p, self.q)
    }

    /// `Σ*_{m≤P} |Σ*_{n≤Q} a_n (n/m)|² / ((P+Q) Σ*_{n≤Q} |a_n|²)`.
    pub fn ratio(&self, coeffs: &CoeffSeq) -> Result<f64> {
        let a: Vec<C64> = self.ns.iter().map(|&n| coeffs.get(n)).collect();
        let mut norm = Neumaier::new();
        for x in &a {
            norm.add(x.norm_sqr());
        }
        let norm = norm.value();
        if !(norm > 0.0) {
            return domain("coefficient sequence has zero starred norm");
        }
        let inner: Vec<f64> = par_map(self.rows.len(), |i| {
            let mut s = ComplexSum::new();
            for (x, &sym) in a.iter().zip(&self.rows[i]) {
                if sym != 0 {
                    s.add(*x * sym as f64);
                }
            }
            s.value().norm_sqr()
        });
        let mut outer = Neumaier::new();
        for v in inner {
            outer.add(v);
        }
        Ok(outer.value() / ((self.p + self.q) as f64 * norm))
    }
}

/// One-shot [`LargeSieve::ratio`].
pub fn large_sieve_ratio(p: u64, q: u64, coeffs: &CoeffSeq) -> Result<f64> {
    LargeSieve::new(p, q).ratio(coeffs)
}

/// `Σ_{m≤P odd} Σ_{n≤Q odd} a_m b_n (n0/m)` with `n0` the squarefree part of `n`.
pub fn bilinear_sum(p: u64, q: u64, a: &CoeffSeq, b: &CoeffSeq) -> C64 {
    let spf = SpfTable::new(q.max(2));
    let n0: Vec<u64> = (0..=q)
        .map(|n| {
            if n == 0 {
                0
            } else {
                crate::zseries::split_with(&spf, n).d0
            }
        })
        .collect();
    let ms: Vec<u64> = (1..=p).step_by(2).collect();
    par_block_sum(ms.len(), |i| {
        let m = ms[i];
        let row = multiplicative_row(q, &spf, |pr| jacobi(pr, m));
        let mut s = ComplexSum::new();
        for n in (1..=q).step_by(2) {
            // (n0/m) = (n/m) unless gcd(n1, m) > 1
            let sym = if n0[n as usize] == n {
                row[n as usize]
            } else {
                jacobi(n0[n as usize], m)
            };
            if sym != 0 {
                s.add(b.get(n) * sym as f64);
            }
        }
        ValueWithError::exact(s.value() * a.get(m))
    })
    .value
}

/// Ratios for `draws` random sign sequences at shape `(P, Q)`, drawn in
/// order from `ChaCha8Rng::seed_from_u64(seed)` before any evaluation.
pub fn large_sieve_trials(p: u64, q: u64, draws: usize, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seqs: Vec<CoeffSeq> = (0..draws)
        .map(|_| CoeffSeq::random_signs(q, &mut rng))
        .collect();
    let sieve = LargeSieve::new(p, q);
    seqs.iter().map(|c| sieve.ratio(c)).collect()
}

/// `|bilinear_sum| / (P+Q)^{1/2}`.
pub fn bilinear_ratio(p: u64, q: u64, a: &CoeffSeq, b: &CoeffSeq) -> f64 {
    bilinear_sum(p, q, a, b).norm() / ((p + q) as f64).sqrt()
}

/// `Σ_{d0≤X odd squarefree} |L(s, χ_{d0}χ)|⁴ / (X q |s|)^{1.05}` with `q` the
/// conductor of `χ`.
pub fn fourth_moment_ratio(
    x: f64,
    chi: &QuadChar,
    s: C64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    if s.re < 0.5 {
        return domain(format!("fourth moment needs Re s ≥ 1/2, got {s}"));
    }
    let central = s == C64::new(0.5, 0.0);
    let ds = odd_squarefree(x.floor().max(0.0) as u64);
    let vals: Vec<Result<f64>> = par_map(ds.len(), |i| {
        let xi = QuadChar::chi_d(ds[i])?.mul(chi);
        let l = if central {
            l_central::<f64>(&xi, policy)?
        } else {
            l_value_hurwitz::<f64>(s, &xi)?
        };
        Ok(l.norm().powi(4))
    });
    let mut acc = Neumaier::new();
    for v in vals {
        acc.add(v?);
    }
    Ok(acc.value() / (x * chi.conductor() as f64 * s.norm()).powf(1.05))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    #[serde(rename = "P")]
    pub p: u64,
    #[serde(rename = "Q")]
    pub q: u64,
    pub value_re: f64,
    pub value_im: f64,
    /// `|S| / (P+Q)^{1/2}`.
    pub ratio: f64,
}

/// `S(P, P; χ, χ′)` for `P = 2^k`, `k` in `ks`.
pub fn growth_table(
    ks: std::ops::RangeInclusive<u32>,
    chi: &QuadChar,
    chi_prime: &QuadChar,
) -> Vec<GrowthRow> {
    ks.map(|k| {
        let p = 1u64 << k;
        let v = double_char_sum(p, p, chi, chi_prime);
        GrowthRow {
            p,
            q: p,
            value_re: v.re,
            value_im: v.im,
            ratio: v.norm() / ((2 * p) as f64).sqrt(),
        }
    })
    .collect()
}

pub fn write_growth_csv<W: Write>(out: W, rows: &[GrowthRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
