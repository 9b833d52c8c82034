use crate::arith::{squarefree_split, QuadChar};
use crate::correction::{dirichlet_coefficients, CorrectionPolyKey, Variant};
use crate::error::Result;

/// Counts index pairs `(a, b) < bound`, both coprime to `2MN`, where the
/// Dirichlet coefficients of `a^{−s} b^{−w}` on the two sides of the
/// interchange formula differ. The comparison is exact integer arithmetic.
pub fn coefficient_switch_mismatches(
    m: u64,
    n: u64,
    chi: &QuadChar,
    chi_prime: &QuadChar,
    q_variant: Variant,
    bound: u64,
) -> Result<usize> {
    let coprime = |x: u64| x & 1 == 1 && (m == 1 || x % m != 0) && (n == 1 || x % n != 0);
    let idx: Vec<u64> = (1..bound).filter(|&x| coprime(x)).collect();
    let mut direct = Vec::with_capacity(idx.len());
    let mut swapped = Vec::with_capacity(idx.len());
    for &x in &idx {
        let split = squarefree_split(x)?;
        let pc = dirichlet_coefficients(&CorrectionPolyKey::new(split.clone(), *chi, Variant::P));
        let qc = dirichlet_coefficients(&CorrectionPolyKey::new(
            split.clone(),
            *chi_prime,
            q_variant,
        ));
        direct.push((
            QuadChar::chi_d(split.d0)?.mul(chi),
            pc,
            chi_prime.eval_u(x) as i64,
        ));
        swapped.push((
            QuadChar::tilde(split.d0)?.mul(chi_prime),
            qc,
            chi.eval_u(x) as i64,
        ));
    }
    let conv = |c: &QuadChar, poly: &[(u64, i64)], target: u64| -> i64 {
        poly.iter()
            .filter(|(e, _)| target % e == 0)
            .map(|(e, k)| k * c.eval_u(target / e) as i64)
            .sum()
    };
    let mut bad = 0;
    for (i, &a) in idx.iter().enumerate() {
        for (j, &b) in idx.iter().enumerate() {
            let (xb, pb, wb) = &direct[j];
            let lhs = wb * conv(xb, pb, a);
            let (xa, qa, wa) = &swapped[i];
            let rhs = wa * conv(xa, qa, b);
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    Ok(bad)
}
