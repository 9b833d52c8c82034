use crate::arith::{jacobi, prime_divisors, QuadChar};
use crate::error::{domain, Error, Result};
use crate::C64;

fn pow(p: u64, e: C64) -> C64 {
    (e * (p as f64).ln()).exp()
}

/// `K_P(w; χ*) = Π_{p | P} (1 − χ*(p) p^{w−1})^{−1} (1 − χ*(p) p^{−w})`.
pub fn coeff_k(modulus: u64, w: C64, chi: &QuadChar) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut v = one;
    for p in prime_divisors(modulus) {
        let x = chi.eval_u(p) as f64;
        if x == 0.0 {
            continue;
        }
        let den = one - pow(p, w - 1.0) * x;
        if den.norm() < 1e-8 {
            return Err(Error::Pole(format!(
                "K_{p} denominator vanishes at w = {w}"
            )));
        }
        v *= (one - pow(p, -w) * x) / den;
    }
    Ok(v)
}

/// `(F_P(w), G_P(w))` for `P` prime or 1:
/// `F = (χ*(P²)P − P²)/(χ*(P²)P^{2w} − P²)`,
/// `G = χ*(P)(P^{2−w} − P^{1+w})/(χ*(P²)P^{2w} − P²)`.
pub fn coeff_f_g(p: u64, w: C64, chi: &QuadChar) -> Result<(C64, C64)> {
    if p == 1 {
        return Ok((C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
    }
    let c1 = chi.eval_u(p) as f64;
    let c2 = c1 * c1;
    let pf = p as f64;
    let den = pow(p, w * 2.0) * c2 - pf * pf;
    if den.norm() < 1e-8 * pf * pf {
        return Err(Error::Pole(format!(
            "F/G denominator vanishes at P = {p}, w = {w}"
        )));
    }
    let f = (C64::new(c2 * pf - pf * pf, 0.0)) / den;
    let g = (pow(p, 2.0 - w) - pow(p, 1.0 + w)) * c1 / den;
    Ok((f, g))
}

/// `F_P` and `G_P` at `w = 1/2 − z` in the closed forms valid when
/// `χ*(P²) = 1`.
pub fn coeff_f_g_special(p: u64, z: C64, chi: &QuadChar) -> Result<(C64, C64)> {
    let c1 = chi.eval_u(p) as f64;
    if c1 == 0.0 {
        return domain(format!("P = {p} divides the conductor of {chi}"));
    }
    let one = C64::new(1.0, 0.0);
    let den = pow(p, -z * 2.0 - 1.0) - one;
    let f = (one / p as f64 - one) / den;
    let g = pow(p, z - 0.5) * c1 * (one - pow(p, -z * 2.0)) / den;
    Ok((f, g))
}

/// Divisors of `MN` indexing the `A` coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ADivisor {
    One,
    M,
    N,
    MN,
}

/// `A_1 = F_M F_N`, `A_M = F_N G_M`, `A_N = F_M G_N`, `A_{MN} = G_M G_N`.
pub fn coeff_a(which: ADivisor, chi: &QuadChar, w: C64, m: u64, n: u64) -> Result<C64> {
    let (fm, gm) = coeff_f_g(m, w, chi)?;
    let (fn_, gn) = coeff_f_g(n, w, chi)?;
    Ok(match which {
        ADivisor::One => fm * fn_,
        ADivisor::M => fn_ * gm,
        ADivisor::N => fm * gn,
        ADivisor::MN => gm * gn,
    })
}

/// `Σ_{n | MN} χ_n(m0) A_n^{(χ*)}(w)`, which equals `K_{MN}(w; χ̃_{m0}χ*)`.
pub fn k_four_term(m0: u64, w: C64, chi: &QuadChar, m: u64, n: u64) -> Result<C64> {
    let sym = |x: u64| if x == 1 { 1.0 } else { jacobi(x, m0) as f64 };
    Ok(coeff_a(ADivisor::One, chi, w, m, n)?
        + coeff_a(ADivisor::M, chi, w, m, n)? * sym(m)
        + coeff_a(ADivisor::N, chi, w, m, n)? * sym(n)
        + coeff_a(ADivisor::MN, chi, w, m, n)? * sym(m * n))
}
