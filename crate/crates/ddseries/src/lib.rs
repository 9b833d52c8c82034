//! Numerics for a double Dirichlet series built from quadratic twists of
//! Dirichlet L-functions.
//!
//! The crate covers quadratic character arithmetic, central and off-center
//! L-values, the correction polynomials `P` and `Q`, truncated evaluation of
//! `Z(s, w; χ, χ′)` with its functional-equation coefficients, large-sieve and
//! fourth-moment ratio checks, and the first moment of twisted central values
//! together with a non-vanishing scanner.
//!
//! Special functions and the correction polynomials are generic over
//! [`Real`]; everything downstream works in `f64` through the aliases below.

pub mod arith;
pub mod correction;
pub mod error;
pub mod lfunc;
pub mod moment;
pub mod policy;
pub mod scalar;
pub mod sieve;
pub mod special;
pub mod value;
pub mod verify;
pub mod zseries;

pub use arith::{EightChar, QuadChar, SquarefreeSplit};
pub use error::{Error, Result};
pub use policy::TruncationPolicy;
pub use scalar::Real;
pub use value::ValueWithError;

/// Double-precision complex number.
pub type C64 = num_complex::Complex<f64>;
/// Double-precision value with error bound.
pub type Value64 = ValueWithError<f64>;
/// Single-precision value with error bound.
pub type Value32 = ValueWithError<f32>;
