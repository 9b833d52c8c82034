//! Dirichlet L-values of real primitive characters.

mod afe;
mod cache;
mod series;

pub(crate) use afe::afe_terms;
pub use afe::{c0_table, l_central, l_central_afe};
pub use cache::{LCache, LRecord, Method};
pub use series::{
    convexity_bound_envelope, l_restricted, l_series_restricted, l_value_hurwitz,
    remove_euler_factors,
};
