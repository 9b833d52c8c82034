use serde::Serialize;

use super::{split_with, ZPoint};
use crate::arith::{primes_up_to, QuadChar, SpfTable};
use crate::correction::{eval_poly, CorrectionPolyKey, Variant};
use crate::error::{Error, Result};
use crate::lfunc::{l_central, remove_euler_factors};
use crate::policy::TruncationPolicy;
use crate::scalar::{par_block_sum, par_map};
use crate::value::ValueWithError;
use crate::C64;

/// `|Z_D(1/2, w)| / ((MN)^ε k^{1/4+ε} (1+|s|)^{1/4+ε})` with `ε = Re w − 1`,
/// `k` the conductor of `χ` and `Z_D` the `d`-sum truncated at `d_cutoff`
/// with central values from the approximate functional equation.
pub fn convexity_probe(p: &ZPoint, policy: &TruncationPolicy) -> Result<f64> {
    if p.s != C64::new(0.5, 0.0) {
        return Err(Error::Region(format!(
            "convexity probe runs at s = 1/2, got {}",
            p.s
        )));
    }
    let eps = p.w.re - 1.0;
    if eps <= 0.0 {
        return Err(Error::Region(format!(
            "convexity probe needs Re w > 1, got {}",
            p.w
        )));
    }
    let cut = policy.d_cutoff;
    let spf = SpfTable::new(cut);
    let ds: Vec<u64> = (1..=cut).filter(|&d| p.coprime(d)).collect();
    let half = C64::new(0.5, 0.0);
    let terms: Vec<Result<ValueWithError<f64>>> = par_map(ds.len(), |i| {
        let d = ds[i];
        let split = split_with(&spf, d);
        let x = p.chi_prime.eval_u(split.d0);
        if x == 0 {
            return Ok(ValueWithError::zero());
        }
        let xi = QuadChar::chi_d(split.d0)?.mul(&p.chi);
        let l = remove_euler_factors(l_central::<f64>(&xi, policy)?, half, &xi, p.modulus());
        let poly = eval_poly(&CorrectionPolyKey::new(split, p.chi, Variant::P), half);
        Ok(l.scale(poly * (-p.w * (d as f64).ln()).exp() * x as f64))
    });
    let mut vals = Vec::with_capacity(terms.len());
    for t in terms {
        vals.push(t?);
    }
    let z = par_block_sum(vals.len(), |i| vals[i]);
    let k = p.chi.conductor() as f64;
    let mn = (p.m * p.n) as f64;
    let denom = mn.powf(eps) * k.powf(0.25 + eps) * (1.0 + p.s.norm()).powf(0.25 + eps);
    Ok(z.norm() / denom)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub m: u64,
    pub n: u64,
    pub ratio: f64,
}

/// Probe ratios at `(1/2, w)` over all pairs of odd primes `M, N ≤ bound`
/// with `χ = χ̃_N`, `χ′ = χ̃_M`.
pub fn convexity_probe_table(
    w: C64,
    bound: u64,
    policy: &TruncationPolicy,
) -> Result<Vec<ProbeRow>> {
    let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| p > 2).collect();
    let mut rows = Vec::new();
    for &m in &primes {
        for &n in &primes {
            let p = ZPoint::new(
                C64::new(0.5, 0.0),
                w,
                QuadChar::tilde(n)?,
                QuadChar::tilde(m)?,
                m,
                n,
            )?;
            rows.push(ProbeRow {
                m,
                n,
                ratio: convexity_probe(&p, policy)?,
            });
        }
    }
    Ok(rows)
}
