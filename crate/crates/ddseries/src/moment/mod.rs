//! The first moment
//! `S(X;χ) = Σ_{(d,2N)=1} L^{(2N)}(1/2, χ_{d0}χ) P_{d0,d1}^{(χ)}(1/2) h(d/X)`,
//! its main term `a_N X log X + b_N X`, and the search for the first
//! non-vanishing twist `D(N)`.

mod euler;
mod nonvanish;
mod residue;
mod sum;

pub use euler::{
    e0_closed_form, e0_main, euler_E0, euler_E0_checked, euler_E1, h_function, h_main,
};
pub use nonvanish::{
    nonvanish_scan, nonvanish_sweep, write_nonvanish_csv, Margin, NonvanishRecord, CERTIFY,
};
pub use residue::{fit_moment, residue_coefficients, MomentReport, ResidueCoefficients};
pub use sum::{moment_sum_S, moment_sum_split, t_main_term, t_sum, CharSpec};

/// `ζ(2)`.
pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
