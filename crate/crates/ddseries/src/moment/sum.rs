use crate::arith::{gcd, is_squarefree, prime_divisors, EightChar, QuadChar, SpfTable};
use crate::correction::{eval_poly, CorrectionPolyKey, Variant};
use crate::error::{domain, Result};
use crate::lfunc::{afe_terms, remove_euler_factors, LCache};
use crate::policy::TruncationPolicy;
use crate::scalar::{par_block_sum, par_map};
use crate::special::{mellin_weight, SmoothWeight};
use crate::value::ValueWithError;
use crate::zseries::split_with;
use crate::C64;

use super::ZETA2;

fn check_chi(chi: &QuadChar) -> Result<u64> {
    if chi.eight_part() != EightChar::Psi1 {
        return domain(format!("moment twist {chi} must have odd conductor"));
    }
    Ok(chi.odd_conductor())
}

/// Odd `d ≤ 5X/4` coprime to `N` with `h(d/X) > 0`, and their weights.
fn window(x: f64, n: u64, h: &SmoothWeight) -> Vec<(u64, f64)> {
    let top = (h.support().1 * x).floor() as u64;
    (1..=top)
        .step_by(2)
        .filter(|&d| gcd(d, n) == 1)
        .map(|d| (d, h.eval(d as f64 / x)))
        .filter(|&(_, w)| w > 0.0)
        .collect()
}

/// `S(X;χ)` by the direct `d`-sum, central values from the approximate
/// functional equation through `cache`.
#[allow(non_snake_case)]
pub fn moment_sum_S(
    x: f64,
    chi: &QuadChar,
    h: &SmoothWeight,
    policy: &TruncationPolicy,
    cache: &LCache,
) -> Result<ValueWithError<f64>> {
    if !(x > 0.0) {
        return domain(format!("X must be positive, got {x}"));
    }
    let n = check_chi(chi)?;
    let ds = window(x, n, h);
    let spf = SpfTable::new(ds.last().map_or(2, |d| d.0).max(2));
    let half = C64::new(0.5, 0.0);
    let terms: Vec<Result<ValueWithError<f64>>> = par_map(ds.len(), |i| {
        let (d, w) = ds[i];
        let split = split_with(&spf, d);
        let xi = QuadChar::chi_d(split.d0)?.mul(chi);
        let l = remove_euler_factors(cache.central(&xi, policy)?, half, &xi, 2 * n);
        let p = eval_poly(&CorrectionPolyKey::new(split, *chi, Variant::P), half);
        Ok(l.scale(p * w))
    });
    let mut vals = Vec::with_capacity(terms.len());
    for t in terms {
        vals.push(t?);
    }
    Ok(par_block_sum(vals.len(), |i| vals[i]))
}

/// `S(X;χ)` split as `(S_□, S_{□̄})`: `L^{(2)}·P(1/2)` is expanded as
/// `Σ_{f1|d1} Σ_{g|2f1} μ(g)ξ(g)g^{−1/2} L(1/2, ξ)` and the terms `n` of the
/// approximate functional equation are sorted by whether `ng` is a square.
pub fn moment_sum_split(
    x: f64,
    chi: &QuadChar,
    h: &SmoothWeight,
    policy: &TruncationPolicy,
) -> Result<(ValueWithError<f64>, ValueWithError<f64>)> {
    if !(x > 0.0) {
        return domain(format!("X must be positive, got {x}"));
    }
    let n = check_chi(chi)?;
    let ds = window(x, n, h);
    let spf = SpfTable::new(ds.last().map_or(2, |d| d.0).max(2));
    let parts: Vec<Result<(ValueWithError<f64>, ValueWithError<f64>)>> = par_map(ds.len(), |i| {
        let (d, w) = ds[i];
        let split = split_with(&spf, d);
        let xi = QuadChar::chi_d(split.d0)?.mul(chi);
        let afe = afe_terms::<f64>(&xi, policy);
        let total: f64 = afe.terms.iter().sum::<f64>() - afe.residue;
        let primes: Vec<(u64, u32)> = split.d1_factorization.clone();
        let (mut sq, mut rest) = (0.0, 0.0);
        let mut err = 0.0;
        // f1 runs over divisors of d1; only rad(f1) matters for the g-sum
        let mut exps = vec![0u32; primes.len()];
        loop {
            let rad: Vec<u64> = primes
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e > 0)
                .map(|(&(p, _), _)| p)
                .collect();
            let mut gs = vec![1u64];
            for &p in std::iter::once(&2).chain(rad.iter()) {
                let more: Vec<u64> = gs.iter().map(|g| g * p).collect();
                gs.extend(more);
            }
            for g in gs {
                let x = xi.eval_u(g);
                if x == 0 {
                    continue;
                }
                let mu = if prime_divisors(g).len() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let c = mu * x as f64 / (g as f64).sqrt();
                // ng square with g squarefree means n = g k²
                let mut s = if g == 1 { -afe.residue } else { 0.0 };
                let mut k = 1u64;
                while g * k * k <= afe.terms.len() as u64 {
                    s += afe.terms[(g * k * k - 1) as usize];
                    k += 1;
                }
                sq += c * s;
                rest += c * (total - s);
                err += c.abs() * afe.error;
            }
            let mut j = 0;
            while j < primes.len() {
                exps[j] += 1;
                if exps[j] <= primes[j].1 {
                    break;
                }
                exps[j] = 0;
                j += 1;
            }
            if j == primes.len() {
                break;
            }
        }
        Ok((
            ValueWithError::real(sq * w, err * w),
            ValueWithError::real(rest * w, err * w),
        ))
    });
    let mut vals = Vec::with_capacity(parts.len());
    for p in parts {
        vals.push(p?);
    }
    let sq = par_block_sum(vals.len(), |i| vals[i].0);
    let rest = par_block_sum(vals.len(), |i| vals[i].1);
    Ok((sq, rest))
}

/// The character `ψ` in the sums `T(s;Y,ψ)`: the principal character
/// modulo `m`, optionally times a primitive quadratic character.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CharSpec {
    Principal { m: u64 },
    Twisted { m: u64, chi: QuadChar },
}

impl CharSpec {
    fn eval(&self, d: u64) -> i8 {
        match self {
            CharSpec::Principal { m } => (gcd(d, *m) == 1) as i8,
            CharSpec::Twisted { m, chi } => {
                if gcd(d, *m) == 1 {
                    chi.eval_u(d)
                } else {
                    0
                }
            }
        }
    }
}

/// `T(s;Y,ψ) = Σ_{d0 squarefree} ψ(d0) d0^{s/2} h(d0/Y)`.
pub fn t_sum(s: C64, y: f64, psi: &CharSpec, h: &SmoothWeight) -> Result<ValueWithError<f64>> {
    if s.re <= 0.0 {
        return domain(format!("T(s;Y,ψ) needs Re s > 0, got {s}"));
    }
    let (lo, hi) = h.support();
    let first = (lo * y).floor().max(1.0) as u64;
    let last = (hi * y).floor() as u64;
    if last < first {
        return Ok(ValueWithError::zero());
    }
    let ds: Vec<u64> = (first..=last)
        .filter(|&d| is_squarefree(d) && psi.eval(d) != 0)
        .collect();
    Ok(par_block_sum(ds.len(), |i| {
        let d = ds[i];
        let w = h.eval(d as f64 / y) * psi.eval(d) as f64;
        ValueWithError::exact((s * 0.5 * (d as f64).ln()).exp() * w)
    }))
}

/// `h̃(1+s/2)/ζ(2) · Π_{p|m}(1+1/p)^{−1} · Y^{1+s/2}`.
pub fn t_main_term(s: C64, y: f64, m: u64, h: &SmoothWeight) -> ValueWithError<f64> {
    let z = s * 0.5 + 1.0;
    let mut f = 1.0 / ZETA2;
    for p in prime_divisors(m) {
        f /= 1.0 + 1.0 / p as f64;
    }
    mellin_weight(h, z).scale((z * y.ln()).exp() * f)
}
