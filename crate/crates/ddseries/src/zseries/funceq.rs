use super::coeff::coeff_k;
use super::{split_with, ZPoint};
use crate::arith::{QuadChar, SpfTable};
use crate::correction::{eval_poly, CorrectionPolyKey, Q_VARIANT};
use crate::error::{Error, Result};
use crate::lfunc::l_restricted;
use crate::policy::TruncationPolicy;
use crate::scalar::{par_block_sum, par_map};
use crate::special::{cot_pi, gamma_ratio_kappa};
use crate::value::ValueWithError;
use crate::C64;

/// How the cotangent factor of each `m`-term is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketForm {
    /// `(1+ψ₋₁(m0)) cot(πw/2)^{κ′} + (1−ψ₋₁(m0)) cot(πw/2)^{1−κ′}`.
    Literal,
    /// `2 cot(πw/2)^{κ̂′}` with `κ̂′ = κ(χ̃_{m0}χ′ψ′)`.
    Sieved,
}

/// Radius and node count of the circle average used at removable
/// singularities.
const CIRCLE_RADIUS: f64 = 0.1;
const CIRCLE_NODES: usize = 16;

/// `S(s, w; m, χ*) = L^{(2MN)}(1−w, χ̃_{m0}χ′ψ′) χ*(m) Q_{m0,m1}^{(χ′ψ′)}(1−w) m^{−(s+w−1/2)}`.
#[allow(non_snake_case)]
pub fn S_term(
    p: &ZPoint,
    m: u64,
    twist: &QuadChar,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    s_at(p, p.w, m, twist, &SpfTable::new(m.max(2)), policy)
}

fn s_at(
    p: &ZPoint,
    w: C64,
    m: u64,
    twist: &QuadChar,
    spf: &SpfTable,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    let x = twist.eval_u(m);
    if x == 0 || !p.coprime(m) {
        return Ok(ValueWithError::zero());
    }
    let split = split_with(spf, m);
    let lchar = QuadChar::tilde(split.d0)?.mul(&p.chi_prime);
    let one_minus_w = C64::new(1.0, 0.0) - w;
    let l = l_restricted(one_minus_w, &lchar, p.modulus(), policy.tolerance)?;
    let q = eval_poly(
        &CorrectionPolyKey::new(split, p.chi_prime, Q_VARIANT),
        one_minus_w,
    );
    let mw = (-(p.s + w - 0.5) * (m as f64).ln()).exp();
    Ok(l.scale(q * mw * x as f64))
}

fn psi_m1(n: u64) -> f64 {
    if n & 3 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Exponent of `cot(πw/2)` in the nonzero part of the bracket, and the
/// bracket's constant factor.
fn bracket_shape(p: &ZPoint, m0: u64, form: BracketForm) -> (u8, f64) {
    let kp = p.chi_prime.kappa();
    match form {
        BracketForm::Literal => {
            if psi_m1(m0) > 0.0 {
                (kp, 2.0)
            } else {
                (1 - kp, 2.0)
            }
        }
        BracketForm::Sieved => {
            let khat = QuadChar::tilde(m0)
                .map(|c| c.mul(&p.chi_prime).kappa())
                .unwrap_or(0);
            (khat, 2.0)
        }
    }
}

fn bracket(p: &ZPoint, m0: u64, w: C64, form: BracketForm) -> C64 {
    let cot = cot_pi(w * 0.5);
    match form {
        BracketForm::Literal => {
            let kp = p.chi_prime.kappa() as i32;
            let e = psi_m1(m0);
            let c1 = if kp == 1 { cot } else { C64::new(1.0, 0.0) };
            let c2 = if kp == 0 { cot } else { C64::new(1.0, 0.0) };
            c1 * (1.0 + e) + c2 * (1.0 - e)
        }
        BracketForm::Sieved => {
            let (k, c) = bracket_shape(p, m0, form);
            if k == 1 {
                cot * c
            } else {
                C64::new(c, 0.0)
            }
        }
    }
}

fn term_at(
    p: &ZPoint,
    w: C64,
    m: u64,
    spf: &SpfTable,
    form: BracketForm,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    let s = s_at(p, w, m, &p.chi, spf, policy)?;
    if s.value == C64::new(0.0, 0.0) && s.abs_error == 0.0 {
        return Ok(s);
    }
    let m0 = crate::arith::squarefree_kernel(m);
    let chi_star = QuadChar::tilde(m0)?.mul(&p.chi_prime);
    let k = coeff_k(p.modulus(), w, &chi_star)?;
    Ok(s.scale(k * bracket(p, m0, w, form)))
}

fn near_even_integer(w: C64) -> bool {
    let r = (w.re / 2.0).round() * 2.0;
    (w - C64::new(r, 0.0)).norm() < CIRCLE_RADIUS / 2.0
}

/// One term of the `m`-sum on the right of the first functional equation,
/// without the common prefactor. Near a pole of `cot(πw/2)` the cotangent
/// multiplies a trivial zero of `L(1−w, ·)`; the term is then evaluated as
/// its mean over a small circle around `w`.
pub fn funceq1_term(
    p: &ZPoint,
    m: u64,
    form: BracketForm,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    term(p, m, &SpfTable::new(m.max(2)), form, policy)
}

fn term(
    p: &ZPoint,
    m: u64,
    spf: &SpfTable,
    form: BracketForm,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    if !p.coprime(m) || p.chi.eval_u(m) == 0 {
        return Ok(ValueWithError::zero());
    }
    let m0 = crate::arith::squarefree_kernel(m);
    let (k, _) = bracket_shape(p, m0, form);
    if k == 1 && near_even_integer(p.w) {
        let mut acc = crate::scalar::ComplexSum::new();
        let mut half = crate::scalar::ComplexSum::new();
        let mut err = 0.0;
        for j in 0..CIRCLE_NODES {
            let th = std::f64::consts::TAU * (j as f64 + 0.5) / CIRCLE_NODES as f64;
            let z = p.w + C64::from_polar(CIRCLE_RADIUS, th);
            let v = term_at(p, z, m, spf, form, policy)?;
            acc.add(v.value);
            if j % 2 == 0 {
                half.add(v.value);
            }
            err += v.abs_error;
        }
        let n = CIRCLE_NODES as f64;
        let mean = acc.value() / n;
        let coarse = half.value() / (n / 2.0);
        // The 8-node mean is off by roughly the square root of the 16-node
        // aliasing error; its distance is a generous bound.
        return Ok(ValueWithError::new(mean, err / n + (mean - coarse).norm()));
    }
    term_at(p, p.w, m, spf, form, policy)
}

/// Right-hand side of the first functional equation
/// `Z(s, w; χψ, χ′ψ′) = ½ π^{w−1/2} Γ((1−w)/2)/Γ(w/2) (jC_{ψ′})^{1/2−w}
///   Σ_m K_{2MN}(w; χ̃_{m0}χ′ψ′) S(s, w; m, χψ) [bracket]`,
/// summed over `m ≤ m_cutoff`.
pub fn funceq1_rhs(
    p: &ZPoint,
    form: BracketForm,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<f64>> {
    policy.validate()?;
    if p.s.re < 3.0 || p.w.re <= 1.0 || p.w.re > 2.5 {
        return Err(Error::Region(format!(
            "first functional equation needs Re s >= 3 and 1 < Re w <= 2.5, got ({}, {})",
            p.s, p.w
        )));
    }
    for (d, line) in [((p.w - 1.0).norm(), "w = 1"), ((p.s - 1.0).norm(), "s = 1")] {
        if d < 1e-3 {
            return Err(Error::Region(format!(
                "within 1e-3 of the polar line {line}"
            )));
        }
    }
    let cut = policy.m_cutoff;
    let spf = SpfTable::new(cut);
    let ms: Vec<u64> = (1..=cut).filter(|&m| p.coprime(m)).collect();
    let terms: Vec<Result<ValueWithError<f64>>> =
        par_map(ms.len(), |i| term(p, ms[i], &spf, form, policy));
    let mut vals = Vec::with_capacity(ms.len());
    for t in terms {
        vals.push(t?);
    }
    let sum = par_block_sum(vals.len(), |i| vals[i]);
    let expo = p.s.re;
    let mut amp: f64 = 0.0;
    for (m, v) in ms.iter().zip(&vals) {
        if 2 * m > cut {
            amp = amp.max(v.value.norm() * (*m as f64).powf(expo));
        }
    }
    let tail = amp * (cut as f64).powf(1.0 - expo) / (expo - 1.0);

    let jc = (p.chi_prime.conductor()) as f64;
    let g = gamma_ratio_kappa(p.w, 0)?;
    let pi_pow = ((p.w - 0.5) * std::f64::consts::PI.ln()).exp();
    let jc_pow = ((-p.w + 0.5) * jc.ln()).exp();
    let pre = ValueWithError::new(
        g.value * pi_pow * jc_pow * 0.5,
        g.abs_error * (pi_pow * jc_pow).norm() * 0.5,
    );
    Ok(pre * sum.with_extra_error(tail))
}
