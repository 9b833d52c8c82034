use ddseries::arith::{gcd, is_squarefree, jacobi};
use ddseries::correction::{Variant, Q_VARIANT};
use ddseries::lfunc::l_restricted;
use ddseries::zseries::*;
use ddseries::{EightChar, Error, QuadChar, TruncationPolicy, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn policy(cut: u64) -> TruncationPolicy {
    TruncationPolicy::default().with_cutoffs(cut, cut)
}

fn tilde(k: u64) -> QuadChar {
    QuadChar::tilde(k).unwrap()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// The four `(χ, χ′)` choices at level `(M, N)`.
fn twist_pairs(m: u64, n: u64) -> [(QuadChar, QuadChar); 4] {
    let t = QuadChar::trivial();
    [(t, t), (tilde(n), t), (t, tilde(m)), (tilde(n), tilde(m))]
}

#[test]
fn zpoint_validation() {
    assert!(ZPoint::new(c(3.0, 0.0), c(3.0, 0.0), tilde(5), tilde(3), 3, 5).is_ok());
    assert!(ZPoint::new(c(3.0, 0.0), c(3.0, 0.0), tilde(7), tilde(3), 3, 5).is_err());
    assert!(ZPoint::new(c(3.0, 0.0), c(3.0, 0.0), tilde(1), tilde(1), 9, 5).is_err());
    assert!(ZPoint::new(c(3.0, 0.0), c(3.0, 0.0), tilde(15), tilde(1), 3, 5).is_ok());
    let p = ZPoint::plain(c(3.0, 1.0), c(2.5, 0.0));
    assert_eq!(p.modulus(), 2);
    assert_eq!(p.swapped().s, c(2.5, 0.0));
}

#[test]
fn first_term_is_the_l_value() {
    for (m, n) in [(1, 1), (3, 5), (5, 5)] {
        for (chi, chip) in twist_pairs(m, n) {
            let p = ZPoint::new(c(3.0, 0.0), c(3.0, 0.0), chi, chip, m, n).unwrap();
            let t = z_direct_term(&p, 1, &policy(10)).unwrap();
            let l = l_restricted(c(3.0, 0.0), &chi, 2 * m * n, 1e-14).unwrap();
            assert!((t.value - l.value).norm() <= t.abs_error + l.abs_error);
            let t = z_swapped_term(&p, 1, &policy(10)).unwrap();
            let l = l_restricted(c(3.0, 0.0), &chip, 2 * m * n, 1e-14).unwrap();
            assert!((t.value - l.value).norm() <= t.abs_error + l.abs_error);
        }
    }
    let p = ZPoint::plain(c(3.0, 0.0), c(3.0, 0.0));
    assert_eq!(
        z_direct_term(&p, 4, &policy(10)).unwrap().value,
        c(0.0, 0.0)
    );
}

#[test]
fn region_gate() {
    let pol = policy(100);
    let bad = ZPoint::plain(c(0.5, 0.0), c(0.5, 0.0));
    assert!(matches!(z_direct(&bad, &pol), Err(Error::Region(_))));
    assert!(matches!(z_swapped(&bad, &pol), Err(Error::Region(_))));
    // polar lines
    assert!(matches!(
        z_direct(&ZPoint::plain(c(1.0, 0.0), c(3.0, 0.0)), &pol),
        Err(Error::Region(_))
    ));
    assert!(matches!(
        z_direct(&ZPoint::plain(c(3.0, 0.0), c(1.0005, 0.0)), &pol),
        Err(Error::Region(_))
    ));
    // s/2 + w > 3/2 + margin fails at (1/2, 1.3)
    let e = z_direct(&ZPoint::plain(c(0.5, 0.0), c(1.3, 0.0)), &pol).unwrap_err();
    assert!(e.to_string().contains("Re s/2 + Re w"), "{e}");
    assert!(z_direct(&ZPoint::plain(c(0.5, 0.0), c(1.4, 0.0)), &pol).is_ok());
    assert!(z_direct(&ZPoint::plain(c(3.0, 0.0), c(1.05, 0.0)), &pol).is_err());
    assert!(z_direct(&ZPoint::plain(c(-1.0, 0.0), c(3.0, 0.0)), &pol).is_ok());
}

#[test]
fn interchange_at_three_three() {
    let pol = policy(1000);
    for (m, n) in [(1, 1), (1, 3), (3, 5), (5, 5)] {
        for (chi, chip) in twist_pairs(m, n) {
            let p = ZPoint::new(c(3.0, 0.0), c(3.0, 0.0), chi, chip, m, n).unwrap();
            let a = z_direct(&p, &pol).unwrap();
            let b = z_swapped(&p, &pol).unwrap();
            let d = (a.value - b.value).norm();
            assert!(
                d <= a.abs_error + b.abs_error,
                "M={m} N={n} χ={chi} χ′={chip}: {d:e}"
            );
            assert!(d / a.norm() <= 1e-4);
        }
    }
}

#[test]
fn interchange_off_axis() {
    let pol = policy(2000);
    let p = ZPoint::new(c(2.5, 3.0), c(3.5, -1.0), tilde(3), tilde(5), 5, 3).unwrap();
    let a = z_direct(&p, &pol).unwrap();
    let b = z_swapped(&p, &pol).unwrap();
    assert!((a.value - b.value).norm() <= a.abs_error + b.abs_error);
}

#[test]
fn refinement_is_consistent() {
    let p = ZPoint::plain(c(3.0, 0.0), c(3.0, 0.0));
    let lo = z_direct(&p, &policy(1000)).unwrap();
    let hi = z_direct(&p, &policy(10_000)).unwrap();
    assert!((lo.value - hi.value).norm() <= lo.abs_error);
    assert!(hi.abs_error < lo.abs_error);
}

#[test]
fn cutoff_halving_rate() {
    let p = ZPoint::plain(c(3.0, 0.0), c(3.0, 0.0));
    let cuts = [250, 500, 1000, 2000, 4000];
    let z = cutoff_sequence(&p, &policy(4000), &cuts).unwrap();
    let diffs: Vec<f64> = z.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    // cutoff^{1−3}: each doubling divides the increment by about 4
    for w in diffs.windows(2) {
        let r = w[1] / w[0];
        assert!(r > 0.1 && r < 0.45, "{diffs:?}");
    }
}

#[test]
fn k_basics() {
    let w = c(0.3, 2.0);
    assert_eq!(coeff_k(1, w, &tilde(7)).unwrap(), c(1.0, 0.0));
    // at w = 1/2 numerator and denominator coincide
    for p in [3u64, 5, 7, 11, 13, 35] {
        let k = coeff_k(
            p,
            c(0.5, 0.0),
            &tilde(7 * 13).mul(&QuadChar::eight(EightChar::Psi2)),
        )
        .unwrap();
        assert!((k - 1.0).norm() < 1e-15);
    }
    // K_N(w; χ̃_{m0}χ̃_N) = 1
    for m0 in [1u64, 7, 11, 21] {
        let k = coeff_k(5, w, &tilde(m0).mul(&tilde(5))).unwrap();
        assert_eq!(k, c(1.0, 0.0));
    }
    // pole: χ*(3) = 1 and w = 1
    assert!(matches!(
        coeff_k(3, c(1.0, 0.0), &QuadChar::trivial()),
        Err(Error::Pole(_))
    ));
}

#[test]
fn k_two_term_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    let mut n = 0;
    while n < 100 {
        let p = primes[rng.random_range(0..primes.len())];
        let m0 = 2 * rng.random_range(0..1000u64) + 1;
        let base = [1u64, 3, 5, 7, 15][rng.random_range(0..5)];
        let psi = EightChar::ALL[rng.random_range(0..4)];
        if !is_squarefree(m0) || gcd(m0, p * base) != 1 || base % p == 0 {
            continue;
        }
        let chi = tilde(base).with_eight(psi);
        let w = c(rng.random_range(-2.0..3.0), rng.random_range(-5.0..5.0));
        let k = coeff_k(p, w, &tilde(m0).mul(&chi)).unwrap();
        let (f, g) = coeff_f_g(p, w, &chi).unwrap();
        let want = f + g * jacobi(p, m0) as f64;
        assert!(
            (k - want).norm() <= 1e-12 * k.norm().max(1.0),
            "p={p} m0={m0} w={w}"
        );
        n += 1;
    }
}

#[test]
fn f_g_values() {
    assert_eq!(
        coeff_f_g(1, c(0.7, 1.0), &tilde(3)).unwrap(),
        (c(1.0, 0.0), c(0.0, 0.0))
    );
    for p in [3u64, 7, 31] {
        let chi = tilde(5);
        let (f, g) = coeff_f_g_special(p, c(0.0, 0.0), &chi).unwrap();
        assert!((f - 1.0).norm() < 1e-15 && g.norm() < 1e-15);
        let z = c(0.2, -1.5);
        let (f1, g1) = coeff_f_g_special(p, z, &chi).unwrap();
        let (f2, g2) = coeff_f_g(p, c(0.5, 0.0) - z, &chi).unwrap();
        assert!(rel(f1, f2) < 1e-13 && rel(g1, g2) < 1e-13);
    }
    assert!(coeff_f_g_special(5, c(0.1, 0.0), &tilde(5)).is_err());
}

#[test]
fn a_coefficients() {
    let w = c(0.8, 2.0);
    // (q, P) > 1 kills A_P
    let chi = tilde(3);
    assert_eq!(coeff_a(ADivisor::M, &chi, w, 3, 7).unwrap(), c(0.0, 0.0));
    assert_eq!(coeff_a(ADivisor::MN, &chi, w, 3, 7).unwrap(), c(0.0, 0.0));
    assert_ne!(coeff_a(ADivisor::N, &chi, w, 3, 7).unwrap(), c(0.0, 0.0));
    // q = MN gives A_1 = 1
    assert_eq!(
        coeff_a(ADivisor::One, &tilde(21), w, 3, 7).unwrap(),
        c(1.0, 0.0)
    );
    assert_eq!(
        coeff_a(ADivisor::One, &tilde(5), w, 1, 1).unwrap(),
        c(1.0, 0.0)
    );
    assert_eq!(
        coeff_a(ADivisor::N, &tilde(5), w, 1, 1).unwrap(),
        c(0.0, 0.0)
    );
}

#[test]
fn f_g_asymptotic_regimes() {
    let chi = tilde(1).with_eight(EightChar::Psi2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let primes: Vec<u64> = ddseries::arith::primes_up_to(2000)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    for sigma in [-0.5, 0.2, 0.6, 0.75, 1.3, 2.0] {
        for _ in 0..60 {
            let p = primes[rng.random_range(0..primes.len())];
            let w = c(sigma, rng.random_range(-20.0..20.0));
            let (f, g) = coeff_f_g(p, w, &chi).unwrap();
            let pf = p as f64;
            let fe = if sigma < 1.0 {
                1.0
            } else {
                pf.powf(2.0 - 2.0 * sigma)
            };
            let ge = if sigma < 0.5 {
                pf.powf(-sigma)
            } else if sigma < 1.0 {
                pf.powf(sigma - 1.0)
            } else {
                pf.powf(1.0 - sigma)
            };
            let (rf, rg) = (f.norm() / fe, g.norm() / ge);
            assert!(rf > 0.2 && rf < 5.0, "σ={sigma} p={p}: F ratio {rf}");
            assert!(rg > 0.2 && rg < 5.0, "σ={sigma} p={p}: G ratio {rg}");
        }
    }
}

#[test]
fn four_term_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let primes = [3u64, 5, 7, 11, 13];
    let mut n_done = 0;
    while n_done < 100 {
        let m = primes[rng.random_range(0..5)];
        let n = if n_done % 4 == 0 {
            m
        } else {
            primes[rng.random_range(0..5)]
        };
        let m0 = 2 * rng.random_range(0..2000u64) + 1;
        let psi = EightChar::ALL[rng.random_range(0..4)];
        let base = if m == n {
            tilde(n)
        } else {
            tilde([1u64, 3, 5, 7][rng.random_range(0..4)])
        };
        if !is_squarefree(m0) || gcd(m0, m * n * base.odd_conductor()) != 1 {
            continue;
        }
        let chi = base.with_eight(psi);
        let w = c(rng.random_range(-2.0..3.0), rng.random_range(-5.0..5.0));
        let four = k_four_term(m0, w, &chi, m, n).unwrap();
        let want = if m == n {
            c(1.0, 0.0)
        } else {
            coeff_k(m * n, w, &tilde(m0).mul(&chi)).unwrap()
        };
        assert!(
            (four - want).norm() <= 1e-12 * want.norm().max(1.0),
            "M={m} N={n} m0={m0}"
        );
        n_done += 1;
    }
}

#[test]
fn exact_coefficient_switch() {
    for (m, n) in [(1, 1), (1, 3), (3, 5), (5, 5)] {
        for (chi, chip) in twist_pairs(m, n) {
            assert_eq!(
                coefficient_switch_mismatches(m, n, &chi, &chip, Q_VARIANT, 300).unwrap(),
                0
            );
        }
    }
    let t = QuadChar::trivial();
    assert!(coefficient_switch_mismatches(1, 1, &t, &t, Variant::QAsPrinted, 300).unwrap() > 0);
}

#[test]
fn funceq_plain() {
    let pol = policy(1000);
    let p = ZPoint::plain(c(3.0, 0.0), c(2.0, 0.0));
    let lhs = z_direct(&p, &pol).unwrap();
    let rhs = funceq1_rhs(&p, BracketForm::Literal, &pol).unwrap();
    assert!(
        rel(lhs.value, rhs.value) <= 1e-3,
        "{} vs {}",
        lhs.value,
        rhs.value
    );
    assert!((lhs.value - rhs.value).norm() <= lhs.abs_error + rhs.abs_error);
}

#[test]
fn funceq_with_level() {
    let pol = policy(1000);
    let p = ZPoint::new(
        c(3.0, 0.0),
        c(2.0, 0.0),
        tilde(5),
        QuadChar::trivial(),
        1,
        5,
    )
    .unwrap();
    let lhs = z_direct(&p, &pol).unwrap();
    let rhs = funceq1_rhs(&p, BracketForm::Literal, &pol).unwrap();
    assert!(
        rel(lhs.value, rhs.value) <= 1e-3,
        "{} vs {}",
        lhs.value,
        rhs.value
    );
    let p = ZPoint::new(c(3.2, 0.5), c(2.3, -0.4), tilde(3), tilde(3), 3, 1).unwrap();
    let lhs = z_direct(&p, &pol).unwrap();
    let rhs = funceq1_rhs(&p, BracketForm::Literal, &pol).unwrap();
    assert!(
        rel(lhs.value, rhs.value) <= 1e-3,
        "{} vs {}",
        lhs.value,
        rhs.value
    );
}

#[test]
fn funceq_region() {
    let pol = policy(100);
    assert!(matches!(
        funceq1_rhs(
            &ZPoint::plain(c(2.0, 0.0), c(2.0, 0.0)),
            BracketForm::Literal,
            &pol
        ),
        Err(Error::Region(_))
    ));
    assert!(matches!(
        funceq1_rhs(
            &ZPoint::plain(c(3.0, 0.0), c(2.7, 0.0)),
            BracketForm::Literal,
            &pol
        ),
        Err(Error::Region(_))
    ));
    assert!(matches!(
        funceq1_rhs(
            &ZPoint::plain(c(3.0, 0.0), c(1.0, 0.0)),
            BracketForm::Literal,
            &pol
        ),
        Err(Error::Region(_))
    ));
}

#[test]
fn sieved_bracket_matches_literal() {
    let pol = policy(10);
    for (chi, chip, m, n) in [
        (QuadChar::trivial(), QuadChar::trivial(), 1, 1),
        (tilde(5), tilde(3), 3, 5),
        (
            QuadChar::trivial(),
            tilde(3).with_eight(EightChar::Psi2),
            3,
            1,
        ),
        (tilde(7), tilde(7).with_eight(EightChar::PsiM1), 7, 7),
    ] {
        for w in [c(2.0, 0.0), c(2.2, 0.7)] {
            let p = ZPoint::new(c(3.0, 0.0), w, chi, chip, m, n).unwrap();
            let mut a = C64::new(0.0, 0.0);
            let mut b = C64::new(0.0, 0.0);
            for k in 1..300 {
                a += funceq1_term(&p, k, BracketForm::Literal, &pol)
                    .unwrap()
                    .value;
                b += funceq1_term(&p, k, BracketForm::Sieved, &pol)
                    .unwrap()
                    .value;
                assert!(
                    (a - b).norm() <= 1e-14 * a.norm().max(1e-300),
                    "m={k} χ′={chip} w={w}"
                );
            }
        }
    }
}

#[test]
fn s_sum_is_a_swapped_series() {
    // Σ_m S(s, w; m, χ*) = Z(s+w−1/2, 1−w; χ*, χ′ψ′), the right side summed
    // in its interchanged form
    let pol = policy(500);
    for (chi, chip, m, n) in [
        (QuadChar::trivial(), QuadChar::trivial(), 1, 1),
        (tilde(5), tilde(3), 3, 5),
    ] {
        let p = ZPoint::new(c(4.0, 0.0), c(2.0, 0.3), chi, chip, m, n).unwrap();
        let mut sum = C64::new(0.0, 0.0);
        for k in 1..=500 {
            sum += S_term(&p, k, &chi, &pol).unwrap().value;
        }
        let q = ZPoint::new(p.s + p.w - 0.5, c(1.0, 0.0) - p.w, chi, chip, m, n).unwrap();
        let z = z_swapped(&q, &pol).unwrap();
        assert!(
            (sum - z.value).norm() <= z.abs_error + 1e-12 * z.norm(),
            "{sum} vs {}",
            z.value
        );
    }
}

#[test]
fn convexity_probe_small_levels() {
    let pol = policy(300);
    let w = c(1.1, 0.0);
    let r = convexity_probe(&ZPoint::plain(c(0.5, 0.0), w), &pol).unwrap();
    assert!(r.is_finite() && r > 0.0);
    assert!(convexity_probe(&ZPoint::plain(c(0.6, 0.0), w), &pol).is_err());
    let rows = convexity_probe_table(w, 13, &pol).unwrap();
    assert_eq!(rows.len(), 25);
    for row in &rows {
        assert!(row.ratio <= 50.0, "{row:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_term_twist_multiplicativity(k in 1u64..400, a in 0usize..4, b in 0usize..4, wr in 1.2f64..2.4, wi in -3.0f64..3.0) {
        let chars = [QuadChar::trivial(), tilde(3), tilde(5), tilde(15)];
        let p = ZPoint::new(c(3.5, 0.0), c(wr, wi), chars[a], tilde(3), 3, 5).unwrap();
        let pol = policy(10);
        let lhs = S_term(&p, k, &chars[a], &pol).unwrap().value * chars[b].eval_u(k) as f64;
        let rhs = S_term(&p, k, &chars[a].mul(&chars[b]), &pol).unwrap();
        prop_assert!((lhs - rhs.value).norm() <= rhs.abs_error + 1e-15 * lhs.norm());
    }

    #[test]
    fn k_modulus_one_on_half_line(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), t in -30.0f64..30.0, k in 0usize..3) {
        // the numerator is the conjugate of the denominator on Re w = 1/2
        let chi = [QuadChar::trivial(), tilde(15), tilde(7).with_eight(EightChar::PsiM1)][k];
        prop_assume!(chi.eval_u(p) != 0);
        let v = coeff_k(p, c(0.5, t), &chi).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
    }
}
