use ddseries::arith::{gcd, jacobi, squarefree_split};
use ddseries::correction::*;
use ddseries::{EightChar, QuadChar, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn key(d: u64, twist: QuadChar, v: Variant) -> CorrectionPolyKey {
    CorrectionPolyKey::new(squarefree_split(d).unwrap(), twist, v)
}

fn cpow(b: f64, z: C64) -> C64 {
    (z * b.ln()).exp()
}

/// Term-by-term expansion of one local factor, written out directly.
fn local_oracle(p: u64, alpha: u32, top: Option<u32>, c2: i8, c1: i8, s: C64) -> C64 {
    let pf = p as f64;
    let mut v = C64::new(0.0, 0.0);
    for n in 0..=alpha {
        let c = if n == 0 { 1.0 } else { c2 as f64 };
        v += c * pf.powi(n as i32) * cpow(pf, -2.0 * n as f64 * s);
    }
    if let Some(top) = top {
        for n in 0..=top {
            v -= c1 as f64 * pf.powi(n as i32) * cpow(pf, -(2.0 * n as f64 + 1.0) * s);
        }
    }
    v
}

#[test]
fn empty_products() {
    let s = C64::new(0.3, 4.0);
    for v in [Variant::P, Variant::QAsPrinted, Variant::QAlphaMinusOne] {
        for d in [1u64, 3, 15, 105] {
            let k = key(d, QuadChar::trivial(), v);
            assert_eq!(eval_poly(&k, s), C64::new(1.0, 0.0));
            assert_eq!(check_reflection(&k, s), 0.0);
        }
    }
    assert!(eval_P(&key(9, QuadChar::trivial(), Variant::QAsPrinted), s).is_err());
    assert!(eval_Q(&key(9, QuadChar::trivial(), Variant::P), s).is_err());
}

#[test]
fn single_prime_at_half() {
    // d = 11·3² with χ trivial: χ_{11}(3) = (11/3) = −1
    assert_eq!(jacobi(11, 3), -1);
    let k = key(99, QuadChar::trivial(), Variant::P);
    let s = C64::new(0.5, 0.0);
    // 1 + 3·3⁻¹ + 3⁻¹ᐟ²
    let want = 2.0 + 3f64.powf(-0.5);
    assert!((eval_P(&k, s).unwrap() - want).norm() < 1e-15);
    // d = 13·3², (13/3) = 1: 1 + 1 − 3^{−1/2}
    let k = key(117, QuadChar::trivial(), Variant::P);
    assert!((eval_P(&k, s).unwrap() - (2.0 - 3f64.powf(-0.5))).norm() < 1e-15);
}

#[test]
fn matches_direct_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let d = rng.random_range(1..20_000u64) | 1;
        let j = [1u64, 3, 5, 7, 11, 15, 21][rng.random_range(0..7)];
        if gcd(d, j) != 1 {
            continue;
        }
        let twist = QuadChar::tilde(j).unwrap();
        let split = squarefree_split(d).unwrap();
        let s = C64::new(rng.random_range(-1.5..2.5), rng.random_range(-10.0..10.0));
        for v in [Variant::P, Variant::QAsPrinted, Variant::QAlphaMinusOne] {
            let k = CorrectionPolyKey::new(split.clone(), twist, v);
            let mut want = C64::new(1.0, 0.0);
            for &(p, a) in &split.d1_factorization {
                let c2 = twist.eval_u(p * p);
                let inner = match v {
                    Variant::P => QuadChar::chi_d(split.d0).unwrap().eval_u(p),
                    _ => QuadChar::tilde(split.d0).unwrap().eval_u(p),
                };
                let c1 = inner * twist.eval_u(p);
                let top = match v {
                    Variant::QAsPrinted => Some(a),
                    _ => a.checked_sub(1),
                };
                want *= local_oracle(p, a, top, c2, c1, s);
            }
            let got = eval_poly(&k, s);
            assert!(
                (got - want).norm() <= 1e-12 * want.norm().max(1.0),
                "d={d} j={j} {v:?}"
            );

            let coeffs = dirichlet_coefficients(&k);
            let series: C64 = coeffs
                .iter()
                .map(|&(e, c)| c as f64 * cpow(e as f64, -s))
                .sum();
            assert!((series - got).norm() <= 1e-11 * got.norm().max(1.0));
        }
    }
}

#[test]
fn p_reflection_random_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 200 {
        let d0 = rng.random_range(1..10_000u64) | 1;
        let d1 = rng.random_range(1..10_000u64) | 1;
        let j = [1u64, 3, 5, 7, 35][rng.random_range(0..5)];
        let Ok(sp) = squarefree_split(d0) else {
            continue;
        };
        if sp.d1 != 1 || gcd(d0 * d1, j) != 1 || (d0 * d1).checked_mul(d1).is_none() {
            continue;
        }
        let k = key(d0 * d1 * d1, QuadChar::tilde(j).unwrap(), Variant::P);
        let s = C64::new(rng.random_range(-1.5..2.5), rng.random_range(-30.0..30.0));
        worst = worst.max(check_reflection_relative(&k, s));
        n += 1;
    }
    assert!(worst <= 1e-10, "{worst:e}");
}

#[test]
fn q_variants_at_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m0 in [1u64, 5, 7, 11, 13] {
        let m = m0 * 9;
        let good = key(m, QuadChar::trivial(), Variant::QAlphaMinusOne);
        let bad = key(m, QuadChar::trivial(), Variant::QAsPrinted);
        let mut g = 0.0f64;
        let mut b = f64::INFINITY;
        for _ in 0..50 {
            let w = C64::new(rng.random_range(-1.5..2.5), rng.random_range(-20.0..20.0));
            g = g.max(check_reflection_relative(&good, w));
            b = b.min(check_reflection_relative(&bad, w));
        }
        assert!(g <= 1e-10, "m0={m0}: {g:e}");
        assert!(b > 1e-3, "m0={m0}: {b:e}");
    }
}

#[test]
fn q_variants_agree_without_square_part() {
    let w = C64::new(0.7, -2.0);
    for m in [1u64, 7, 15, 2 * 3 * 5 * 7 * 11 + 1] {
        let Ok(sp) = squarefree_split(m) else {
            continue;
        };
        if sp.d1 != 1 {
            continue;
        }
        let a = eval_Q(
            &key(m, QuadChar::tilde(13).unwrap(), Variant::QAsPrinted),
            w,
        )
        .unwrap();
        let b = eval_Q(
            &key(m, QuadChar::tilde(13).unwrap(), Variant::QAlphaMinusOne),
            w,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn q_variant_constant() {
    assert_eq!(Q_VARIANT, Variant::QAlphaMinusOne);
}

#[test]
fn growth_envelope() {
    const EPS: f64 = 0.25;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut c_eps = 0.0f64;
    for sigma in [0.0, 0.25, 0.5, 1.0] {
        for _ in 0..300 {
            let d0 = [1u64, 3, 5, 7, 11][rng.random_range(0..5)];
            let d1 = rng.random_range(1..3000u64) | 1;
            if gcd(d0, d1) != 1 {
                continue;
            }
            let k = key(d0 * d1 * d1, QuadChar::trivial(), Variant::P);
            let s = C64::new(sigma, rng.random_range(-50.0..50.0));
            let v = eval_P(&k, s).unwrap().norm();
            let env = (d1 as f64).powf((1.0 - 2.0 * sigma).max(0.0) + EPS);
            c_eps = c_eps.max(v / env);
        }
    }
    // recorded constant
    println!("growth constant C_eps = {c_eps:.3}");
    assert!(c_eps <= 4.0, "C_eps = {c_eps}");
}

#[test]
fn multiplicative_in_square_part() {
    let s = C64::new(0.4, 1.3);
    let twist = QuadChar::tilde(7).unwrap();
    for (a, b) in [(3u64, 5u64), (9, 25), (27, 11), (5, 13 * 13)] {
        assert_eq!(gcd(a, b), 1);
        let d0 = 17;
        let ab = eval_P(&key(d0 * a * a * b * b, twist, Variant::P), s).unwrap();
        let pa = eval_P(&key(d0 * a * a, twist, Variant::P), s).unwrap();
        let pb = eval_P(&key(d0 * b * b, twist, Variant::P), s).unwrap();
        assert!((ab - pa * pb).norm() <= 1e-12 * ab.norm().max(1.0));
    }
}

#[test]
fn twist_vanishing_at_p_kills_the_local_factor() {
    let s = C64::new(0.9, 0.0);
    // χ̃₃(3) = 0: the local factor at 3 is 1
    let k = key(7 * 81, QuadChar::tilde(3).unwrap(), Variant::P);
    assert_eq!(eval_P(&k, s).unwrap(), C64::new(1.0, 0.0));
    let k = key(7 * 4, QuadChar::eight(EightChar::PsiM1), Variant::P);
    assert_eq!(eval_P(&k, s).unwrap(), C64::new(1.0, 0.0));
}

proptest! {
    #[test]
    fn reflection_holds_for_p(d0 in (0u64..2000).prop_map(|x| 2 * x + 1), d1 in (0u64..500).prop_map(|x| 2 * x + 1),
                              re in -1.5f64..2.5, im in -40.0f64..40.0) {
        let sp = squarefree_split(d0).unwrap();
        prop_assume!(sp.d1 == 1);
        let k = key(d0 * d1 * d1, QuadChar::tilde(5).unwrap(), Variant::P);
        prop_assume!(gcd(d0 * d1, 5) == 1);
        prop_assert!(check_reflection_relative(&k, C64::new(re, im)) <= 1e-10);
    }

    #[test]
    fn reflection_holds_for_selected_q(m in (0u64..200_000).prop_map(|x| 2 * x + 1), re in -1.5f64..2.5, im in -40.0f64..40.0) {
        let k = key(m, QuadChar::trivial(), Q_VARIANT);
        prop_assert!(check_reflection_relative(&k, C64::new(re, im)) <= 1e-10);
    }

    #[test]
    fn real_on_real_axis(d in (0u64..100_000).prop_map(|x| 2 * x + 1), s in -2.0f64..3.0) {
        let v = eval_poly(&key(d, QuadChar::trivial(), Variant::P), C64::new(s, 0.0));
        prop_assert_eq!(v.im, 0.0);
    }
}
