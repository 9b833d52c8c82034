use serde::Serialize;

use crate::arith::{prime_divisors, QuadChar};
use crate::error::{domain, Error, Result};
use crate::lfunc::LCache;
use crate::policy::TruncationPolicy;
use crate::special::{digamma, mellin_weight, mellin_weight_log, SmoothWeight, EULER_GAMMA};
use crate::value::ValueWithError;
use crate::C64;

use super::{e0_main, h_main, moment_sum_S, ZETA2};

/// Main-term coefficients of `S(X;χ̃_N) ≈ a_N X log X + b_N X` with the
/// ingredients they are assembled from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueCoefficients {
    pub a_n: f64,
    pub b_n: f64,
    /// `h̃(1)` and `h̃′(1)`.
    pub h1: f64,
    pub h1_prime: f64,
    pub e0: f64,
    pub e0_prime: f64,
    pub h0: f64,
    pub h0_prime: f64,
    /// `κ = κ(χ̃_N)`.
    pub kappa: u8,
    /// `g₀ = ψ((1/2+κ)/2)/2`.
    pub g0: f64,
}

/// Central difference with one Richardson step.
fn derivative<F: Fn(f64) -> f64>(f: F, step: f64) -> f64 {
    let d1 = (f(step) - f(-step)) / (2.0 * step);
    let d2 = (f(step / 2.0) - f(-step / 2.0)) / step;
    (4.0 * d2 - d1) / 3.0
}

fn is_prime_or_one(n: u64) -> bool {
    n == 1 || prime_divisors(n) == [n]
}

/// `a_N`, `b_N` from the residue at the double pole `s = 0`.
pub fn residue_coefficients(
    n: u64,
    h: &SmoothWeight,
    policy: &TruncationPolicy,
) -> Result<ResidueCoefficients> {
    if n % 2 == 0 || !is_prime_or_one(n) {
        return domain(format!("N = {n} must be an odd prime or 1"));
    }
    let kappa = (n % 4 == 3) as u8;
    let pc = policy.prime_cutoff;
    let h1 = mellin_weight(h, C64::new(1.0, 0.0)).re();
    let h1_prime = mellin_weight_log(h, C64::new(1.0, 0.0)).re();
    let e0 = e0_main(0.0, n, pc).re();
    let e0_prime = derivative(|u| e0_main(u, n, pc).re(), 1e-5);
    let h0 = h_main(0.0, n, pc).re();
    let h0_prime = derivative(|u| h_main(u, n, pc).re(), 1e-5);
    let g0 = 0.5 * digamma(C64::new((0.5 + kappa as f64) / 2.0, 0.0))?.re();
    let f0 = h1 * e0 * h0 / ZETA2;
    let a_n = f0 / 4.0;
    let b_n = f0
        * (0.25 * h1_prime / h1
            + 0.25 * (n as f64 / std::f64::consts::PI).ln()
            + std::f64::consts::LN_2
            + 0.5 * e0_prime / e0
            + 0.5 * h0_prime / h0
            + EULER_GAMMA
            + 0.5 * g0);
    Ok(ResidueCoefficients {
        a_n,
        b_n,
        h1,
        h1_prime,
        e0,
        e0_prime,
        h0,
        h0_prime,
        kappa,
        g0,
    })
}

/// Moment values on a grid, the least-squares fit against `{X log X, X}` and
/// the residue coefficients side by side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "X_grid")]
    pub x_grid: Vec<f64>,
    #[serde(rename = "S_values")]
    pub s_values: Vec<ValueWithError<f64>>,
    #[serde(rename = "fitted_aN")]
    pub fitted_a_n: f64,
    #[serde(rename = "fitted_bN")]
    pub fitted_b_n: f64,
    #[serde(rename = "residue_aN")]
    pub residue_a_n: f64,
    #[serde(rename = "residue_bN")]
    pub residue_b_n: f64,
    /// `S(X) − a X log X − b X` with the fitted coefficients.
    pub fit_residuals: Vec<f64>,
    /// `S(X) − a_N X log X − b_N X` with the residue coefficients.
    pub residuals: Vec<f64>,
}

/// Least squares for `y ≈ a·X log X + b·X`.
fn fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let (mut suu, mut suv, mut svv, mut suy, mut svy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let u = x * x.ln();
        let v = x;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        suy += u * y;
        svy += v * y;
    }
    let det = suu * svv - suv * suv;
    if !(det > 1e-10 * suu * svv) {
        return Err(Error::Fit(format!(
            "normal equations are singular (relative determinant {:e})",
            det / (suu * svv)
        )));
    }
    Ok(((svv * suy - suv * svy) / det, (suu * svy - suv * suy) / det))
}

pub fn fit_moment(
    n: u64,
    x_grid: &[f64],
    h: &SmoothWeight,
    policy: &TruncationPolicy,
    cache: &LCache,
) -> Result<MomentReport> {
    if x_grid.len() < 4 {
        return Err(Error::Fit(format!(
            "need at least 4 grid points, got {}",
            x_grid.len()
        )));
    }
    if x_grid.windows(2).any(|w| !(w[0] < w[1])) || !(x_grid[0] >= 4.0) {
        return Err(Error::Fit(
            "grid must be strictly increasing and start at 4 or above".into(),
        ));
    }
    if x_grid[x_grid.len() - 1] / x_grid[0] < 16.0 {
        return Err(Error::Fit("grid must span a factor of at least 16".into()));
    }
    let res = residue_coefficients(n, h, policy)?;
    let chi = if n == 1 {
        QuadChar::trivial()
    } else {
        QuadChar::tilde(n)?
    };
    let mut s_values = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        s_values.push(moment_sum_S(x, &chi, h, policy, cache)?);
    }
    let ys: Vec<f64> = s_values.iter().map(|v| v.re()).collect();
    let (a, b) = fit(x_grid, &ys)?;
    let main = |a: f64, b: f64, x: f64| a * x * x.ln() + b * x;
    let fit_residuals = x_grid
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| y - main(a, b, x))
        .collect();
    let residuals = x_grid
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| y - main(res.a_n, res.b_n, x))
        .collect();
    Ok(MomentReport {
        n,
        x_grid: x_grid.to_vec(),
        s_values,
        fitted_a_n: a,
        fitted_b_n: b,
        residue_a_n: res.a_n,
        residue_b_n: res.b_n,
        fit_residuals,
        residuals,
    })
}
