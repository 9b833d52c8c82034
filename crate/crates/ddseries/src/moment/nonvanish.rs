use serde::Serialize;
use std::io::Write;

use crate::arith::{primes_up_to, QuadChar};
use crate::error::{domain, Error, Result};
use crate::lfunc::LCache;
use crate::policy::TruncationPolicy;
use crate::scalar::par_map;
use crate::value::ValueWithError;

/// Certification threshold: `|L| > CERTIFY·abs_error`.
pub const CERTIFY: f64 = 10.0;

/// A twist that failed certification, with its computed value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Margin {
    pub d: u64,
    pub value: ValueWithError<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonvanishRecord {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "D_of_N")]
    pub d_of_n: u64,
    pub l_value: ValueWithError<f64>,
    pub certified: bool,
    /// Every `d < D(N)`.
    pub margins: Vec<Margin>,
}

/// Smallest `d ≤ d_max` with `L(1/2, χ_{dN})` certified nonzero, where
/// `χ_{dN}` is the primitive character of the Kronecker symbol `(dN/·)`.
pub fn nonvanish_scan(
    n: u64,
    d_max: u64,
    policy: &TruncationPolicy,
    cache: &LCache,
) -> Result<NonvanishRecord> {
    if n < 3 || primes_up_to(n).last() != Some(&n) {
        return domain(format!("N = {n} must be an odd prime"));
    }
    if d_max == 0 {
        return domain("d_max must be at least 1");
    }
    let mut margins = Vec::new();
    for d in 1..=d_max {
        let xi = QuadChar::kronecker_symbol(d * n)?;
        let v = cache.central(&xi, policy)?;
        if v.norm() > CERTIFY * v.abs_error {
            return Ok(NonvanishRecord {
                n,
                d_of_n: d,
                l_value: v,
                certified: true,
                margins,
            });
        }
        margins.push(Margin { d, value: v });
    }
    Err(Error::Inconclusive { n, d_max })
}

/// [`nonvanish_scan`] for every odd prime `N ≤ nmax`, in increasing order.
pub fn nonvanish_sweep(
    nmax: u64,
    d_max: u64,
    policy: &TruncationPolicy,
    cache: &LCache,
) -> Result<Vec<NonvanishRecord>> {
    let ns: Vec<u64> = primes_up_to(nmax).into_iter().filter(|&p| p > 2).collect();
    par_map(ns.len(), |i| nonvanish_scan(ns[i], d_max, policy, cache))
        .into_iter()
        .collect()
}

#[derive(Serialize)]
struct Row {
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "D")]
    d: u64,
    re: f64,
    im: f64,
    abs_error: f64,
    certified: bool,
}

/// Writes `N,D,re,im,abs_error,certified`.
pub fn write_nonvanish_csv<W: Write>(out: W, records: &[NonvanishRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(Row {
            n: r.n,
            d: r.d_of_n,
            re: r.l_value.value.re,
            im: r.l_value.value.im,
            abs_error: r.l_value.abs_error,
            certified: r.certified,
        })?;
    }
    w.flush()?;
    Ok(())
}
