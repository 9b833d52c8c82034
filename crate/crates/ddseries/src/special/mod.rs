//! Gamma, digamma, Hurwitz zeta, the weight `G_κ`, smooth weights and their
//! Mellin transforms.

mod gamma;
mod hurwitz;
mod identities;
mod incgamma;
mod quad;
mod smooth;
mod weight;

pub use gamma::{digamma, gamma_complex, ln_gamma};
pub use hurwitz::hurwitz_zeta;
pub use identities::{cot_pi, gamma_ratio_kappa, gamma_ratio_kappa_cot_route};
pub use incgamma::gamma_q;
pub(crate) use incgamma::gamma_q_lg;
pub use quad::gauss_kronrod;
pub use smooth::{mellin_weight, mellin_weight_log, SmoothWeight, WeightKind};
pub use weight::{g_weight, g_weight_closed};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
