use num_complex::Complex;

use crate::arith::{gcd, EightChar, QuadChar};
use crate::error::{domain, Result};
use crate::policy::TruncationPolicy;
use crate::scalar::{lit, Neumaier, Real};
use crate::special::{gamma_q_lg, ln_gamma};
use crate::value::ValueWithError;

/// Power of two in the conductor of `χ_{d0}ψ`.
pub fn c0_table(d0: u64, psi: EightChar) -> Result<u8> {
    if d0 & 1 == 0 {
        return domain(format!("c0_table needs odd d0, got {d0}"));
    }
    Ok(match (d0 & 3, psi) {
        (_, EightChar::Psi2 | EightChar::PsiM2) => 8,
        (1, EightChar::Psi1) | (3, EightChar::PsiM1) => 1,
        _ => 4,
    })
}

/// `L(1/2, χ_{d0}χψ)` by the approximate functional equation.
///
/// `χ` must have trivial 2-part and odd conductor coprime to `d0`.
pub fn l_central_afe<T: Real>(
    d0: u64,
    chi: &QuadChar,
    psi: EightChar,
    policy: &TruncationPolicy,
) -> Result<ValueWithError<T>> {
    if chi.eight_part() != EightChar::Psi1 {
        return domain(format!("character {chi} must have odd conductor"));
    }
    if d0 & 1 == 0 || gcd(d0, chi.odd_conductor()) != 1 {
        return domain(format!(
            "d0 = {d0} clashes with conductor {}",
            chi.conductor()
        ));
    }
    if !crate::arith::is_squarefree(d0) {
        return domain(format!("d0 = {d0} must be squarefree"));
    }
    let total = QuadChar::chi_d(d0)?.mul(chi).with_eight(psi);
    l_central(&total, policy)
}

/// Central value of any real primitive character:
/// `L(1/2, ξ) = 2 Σ ξ(n) n^{−1/2} V(n/√C)` with `V(y) = Γ(a, πy²)/Γ(a)`,
/// `a = (1/2+κ)/2`. For the trivial character the two polar residues
/// `4π^{1/4}/Γ(1/4)` are subtracted.
///
/// Terms stop once the tail bound `n^{−1/2} V(y_n) r/(1−r)`,
/// `r = e^{−2πn/C}`, drops below a thousandth of the tolerance, or at
/// `n = T√C`.
pub fn l_central<T: Real>(xi: &QuadChar, policy: &TruncationPolicy) -> Result<ValueWithError<T>> {
    let t = afe_terms::<T>(xi, policy);
    let mut sum = Neumaier::new();
    for &x in &t.terms {
        sum.add(x);
    }
    Ok(ValueWithError::real(sum.value() - t.residue, lit(t.error)))
}

/// The individual terms `2ξ(n) n^{−1/2} V(n/√C)`, `n = 1, 2, …`, of the
/// central-value sum, with the residue correction kept apart.
pub(crate) struct AfeTerms<T> {
    pub terms: Vec<T>,
    pub residue: T,
    pub error: f64,
}

pub(crate) fn afe_terms<T: Real>(xi: &QuadChar, policy: &TruncationPolicy) -> AfeTerms<T> {
    let c = xi.conductor() as f64;
    let a = (0.5 + xi.kappa() as f64) * 0.5;
    let at = lit::<T>(a);
    let pi_over_c = lit::<T>(std::f64::consts::PI / c);
    let n_max = (policy.afe_length * c.sqrt()).ceil().max(2.0) as u64;
    let target = policy.tolerance * 1e-3;
    let mut terms = Vec::new();
    let mut mag = T::zero();
    let mut tail = f64::INFINITY;
    let lga = ln_gamma(Complex::new(at, T::zero())).re;
    let two = lit::<T>(2.0);
    for n in 1..=n_max {
        let nf = lit::<T>(n as f64);
        let v = gamma_q_lg(at, pi_over_c * nf * nf, lga);
        let x = xi.eval_u(n);
        let t = if x != 0 {
            two * v / nf.sqrt() * T::from_i8(x).unwrap()
        } else {
            T::zero()
        };
        terms.push(t);
        mag += t.abs();
        let r = (-2.0 * std::f64::consts::PI * n as f64 / c).exp();
        if r < 1.0 {
            tail = v.to_f64().unwrap() / (n as f64).sqrt() * r / (1.0 - r);
            if 2.0 * tail <= target {
                break;
            }
        }
    }
    let mut error = 2.0 * tail + 4.0 * T::epsilon().to_f64().unwrap() * mag.to_f64().unwrap();
    let mut residue = T::zero();
    if xi.is_trivial() {
        let quarter = Complex::new(lit::<T>(0.25), T::zero());
        let g = ln_gamma(quarter).re.exp();
        residue = lit::<T>(4.0) * T::PI().powf(lit(0.25)) / g;
        error += 1e-15;
    }
    AfeTerms {
        terms,
        residue,
        error,
    }
}
