use super::{check_region, growth_exponent, split_with, ZPoint};
use crate::arith::{QuadChar, SpfTable};
use crate::correction::{eval_poly, CorrectionPolyKey, Variant, Q_VARIANT};
use crate::error::Result;
use crate::lfunc::l_restricted;
use crate::policy::TruncationPolicy;
use crate::scalar::par_map;
use crate::value::ValueWithError;
use crate::C64;

/// Which side of the interchange formula to sum.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Direct,
    Swapped,
}

fn l_target(policy: &TruncationPolicy, d: u64, outer_re: f64, cutoff: u64) -> f64 {
    policy.tolerance * (d as f64).powf(outer_re - 1.0) / (1.0 + (cutoff as f64).ln())
}

fn term(
    p: &ZPoint,
    side: Side,
    spf: &SpfTable,
    d: u64,
    policy: &TruncationPolicy,
    cutoff: u64,
) -> Result<ValueWithError<f64>> {
    let split = split_with(spf, d);
    let (inner, outer) = match side {
        Side::Direct => (p.s, p.w),
        Side::Swapped => (p.w, p.s),
    };
    let (lchar, weight, key) = match side {
        Side::Direct => (
            QuadChar::chi_d(split.d0)?.mul(&p.chi),
            p.chi_prime.eval_u(split.d0),
            CorrectionPolyKey::new(split, p.chi, Variant::P),
        ),
        Side::Swapped => (
            QuadChar::tilde(split.d0)?.mul(&p.chi_prime),
            p.chi.eval_u(d),
            CorrectionPolyKey::new(split, p.chi_prime, Q_VARIANT),
        ),
    };
    if weight == 0 {
        return Ok(ValueWithError::zero());
    }
    let l = l_restricted(
        inner,
        &lchar,
        p.modulus(),
        l_target(policy, d, outer.re, cutoff),
    )?;
    let poly = eval_poly(&key, inner);
    let dw = (-outer * (d as f64).ln()).exp();
    Ok(l.scale(poly * dw * weight as f64))
}

fn sum_side(
    p: &ZPoint,
    side: Side,
    policy: &TruncationPolicy,
    cutoff: u64,
) -> Result<ValueWithError<f64>> {
    policy.validate()?;
    let (inner, outer, names) = match side {
        Side::Direct => (p.s, p.w, ("s", "w")),
        Side::Swapped => (p.w, p.s, ("w", "s")),
    };
    check_region(inner, outer, policy.tail_exponent_margin, names)?;
    let spf = SpfTable::new(cutoff);
    let ds: Vec<u64> = (1..=cutoff).filter(|&d| p.coprime(d)).collect();
    let terms: Vec<Result<ValueWithError<f64>>> =
        par_map(ds.len(), |i| term(p, side, &spf, ds[i], policy, cutoff));
    let mut vals = Vec::with_capacity(terms.len());
    for t in terms {
        vals.push(t?);
    }
    let total = crate::scalar::par_block_sum(vals.len(), |i| vals[i]);
    // Tail from the top half of the range at the decay rate the region
    // guarantees; only about half of the indices are coprime to 2MN, the
    // factor 2 is a safety margin.
    let g = growth_exponent(inner.re);
    let expo = outer.re - g;
    let mut amp: f64 = 0.0;
    for (d, v) in ds.iter().zip(&vals) {
        if 2 * d > cutoff {
            amp = amp.max(v.value.norm() * (*d as f64).powf(expo));
        }
    }
    let tail = amp * (cutoff as f64).powf(1.0 - expo) / (expo - 1.0);
    Ok(total.with_extra_error(tail))
}

/// Truncated `Z(s, w)` summed over `d ≤ d_cutoff`.
pub fn z_direct(p: &ZPoint, policy: &TruncationPolicy) -> Result<ValueWithError<f64>> {
    sum_side(p, Side::Direct, policy, policy.d_cutoff)
}

/// Truncated interchanged series
/// `Σ_{(m,2MN)=1} L^{(2MN)}(w, χ̃_{m0}χ′) χ(m) Q_{m0,m1}^{(χ′)}(w) m^{−s}`
/// over `m ≤ m_cutoff`.
pub fn z_swapped(p: &ZPoint, policy: &TruncationPolicy) -> Result<ValueWithError<f64>> {
    sum_side(p, Side::Swapped, policy, policy.m_cutoff)
}

/// The single term of index `d` in [`z_direct`] (zero when `(d, 2MN) > 1`).
pub fn z_direct_term(p: &ZPoint, d: u64, policy: &TruncationPolicy) -> Result<ValueWithError<f64>> {
    if !p.coprime(d) {
        return Ok(ValueWithError::zero());
    }
    term(
        p,
        Side::Direct,
        &SpfTable::new(d.max(2)),
        d,
        policy,
        d.max(2),
    )
}

/// The single term of index `m` in [`z_swapped`].
pub fn z_swapped_term(
    p: &ZPoint,
    m: u64,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    if !p.coprime(m) {
        return Ok(ValueWithError::zero());
    }
    term(
        p,
        Side::Swapped,
        &SpfTable::new(m.max(2)),
        m,
        policy,
        m.max(2),
    )
}

/// `z_direct` at each cutoff in `cutoffs`, sharing one pass over the terms.
pub fn cutoff_sequence(p: &ZPoint, policy: &TruncationPolicy, cutoffs: &[u64]) -> Result<Vec<C64>> {
    let top = *cutoffs.iter().max().unwrap_or(&10);
    let spf = SpfTable::new(top);
    let ds: Vec<u64> = (1..=top).filter(|&d| p.coprime(d)).collect();
    let terms: Vec<Result<ValueWithError<f64>>> = par_map(ds.len(), |i| {
        term(p, Side::Direct, &spf, ds[i], policy, top)
    });
    let mut out = Vec::new();
    for &c in cutoffs {
        let mut acc = crate::scalar::ComplexSum::new();
        for (d, t) in ds.iter().zip(&terms) {
            if *d <= c {
                match t {
                    Ok(v) => acc.add(v.value),
                    Err(e) => return Err(crate::Error::Domain(e.to_string())),
                }
            }
        }
        out.push(acc.value());
    }
    Ok(out)
}
