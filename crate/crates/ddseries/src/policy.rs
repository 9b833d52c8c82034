use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Truncation and accuracy settings shared by every infinite sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TruncationPolicy {
    /// Upper limit of the `d`-sum in direct evaluations of `Z`.
    pub d_cutoff: u64,
    /// Upper limit of the `m`-sum in swapped and reflected evaluations.
    pub m_cutoff: u64,
    /// Required distance of the tail exponent from the boundary of absolute
    /// convergence.
    pub tail_exponent_margin: f64,
    /// Absolute accuracy target for individual L-values.
    pub tolerance: f64,
    /// Approximate functional equation length factor `T`: terms stop at
    /// `n ≤ T·√conductor` at the latest.
    pub afe_length: f64,
    /// Largest prime used in truncated Euler products.
    pub prime_cutoff: u64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            d_cutoff: 1000,
            m_cutoff: 1000,
            tail_exponent_margin: 0.1,
            tolerance: 1e-10,
            afe_length: 12.0,
            prime_cutoff: 1_000_000,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.d_cutoff < 10 || self.m_cutoff < 10 {
            return domain(format!(
                "cutoffs must be at least 10 (d: {}, m: {})",
                self.d_cutoff, self.m_cutoff
            ));
        }
        if !(self.tolerance > 0.0) || !(self.tail_exponent_margin > 0.0) || !(self.afe_length > 0.0)
        {
            return domain("tolerance, margin and AFE length must be positive");
        }
        if self.prime_cutoff < 2 {
            return domain("prime cutoff must be at least 2");
        }
        Ok(())
    }

    pub fn with_cutoffs(mut self, d: u64, m: u64) -> Self {
        self.d_cutoff = d;
        self.m_cutoff = m;
        self
    }
}
