use ddseries::arith::*;
use ddseries::{EightChar, QuadChar};
use proptest::prelude::*;

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Euler's criterion at an odd prime.
fn euler(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Kronecker symbol from the factorization of `n`.
fn kronecker_oracle(a: i64, n: i64) -> i8 {
    let mut k = if n < 0 && a < 0 { -1 } else { 1 };
    for (p, e) in trial_factor(n.unsigned_abs()) {
        let x = if p == 2 {
            match a.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            euler(a, p)
        };
        k *= x.pow(e);
    }
    k
}

#[test]
fn kronecker_examples() {
    for n in 1..50 {
        assert_eq!(kronecker(1, n).unwrap(), 1);
    }
    assert_eq!(kronecker(5, 3).unwrap(), euler(5, 3));
    assert_eq!(kronecker(5, 3).unwrap(), -1);
    assert_eq!(kronecker(2, 15).unwrap(), euler(2, 3) * euler(2, 5));
    assert_eq!(kronecker(2, 15).unwrap(), 1);
    assert!(kronecker(7, 0).is_err());
}

#[test]
fn kronecker_matches_factorwise_oracle() {
    for a in -60i64..=60 {
        for n in (-60i64..=60).filter(|&n| n != 0) {
            assert_eq!(
                kronecker(a, n).unwrap(),
                kronecker_oracle(a, n),
                "({a}/{n})"
            );
        }
    }
}

#[test]
fn kronecker_vanishes_exactly_on_common_factors() {
    for a in 0i64..150 {
        for n in 1i64..150 {
            let g = gcd(a as u64, n as u64);
            assert_eq!(kronecker(a, n).unwrap() == 0, g > 1, "({a}/{n})");
        }
    }
}

#[test]
fn reciprocity_flip_exhaustive() {
    for d in (1..=999u64).step_by(2) {
        for n in (1..=999u64).step_by(2) {
            assert_eq!(
                reciprocity_flip(d, n).unwrap(),
                kronecker(d as i64, n as i64).unwrap(),
                "({d}, {n})"
            );
        }
    }
}

#[test]
fn reciprocity_flip_examples() {
    assert_eq!(reciprocity_flip(3, 3).unwrap(), 0);
    assert!(reciprocity_flip(2, 3).is_err());
    assert!(reciprocity_flip(3, 4).is_err());
    for d in (1..200u64).step_by(4) {
        for n in (1..200u64).step_by(2) {
            assert_eq!(reciprocity_flip(d, n).unwrap(), jacobi(n, d));
        }
    }
}

#[test]
fn kronecker_completely_multiplicative() {
    for a in -200i64..=200 {
        for b in [-7i64, -3, 2, 5, 11, 12, 97, 200] {
            for n in (1..=200i64).step_by(2) {
                assert_eq!(
                    kronecker(a * b, n).unwrap(),
                    kronecker(a, n).unwrap() * kronecker(b, n).unwrap(),
                    "a={a} b={b} n={n}"
                );
            }
        }
    }
}

#[test]
fn eight_characters() {
    assert_eq!(EightChar::PsiM1.eval(3), -1);
    assert_eq!(EightChar::Psi2.eval(7), 1);
    assert_eq!(EightChar::PsiM2.eval(7), -1);
    for n in -40..40 {
        assert_eq!(
            EightChar::PsiM2.eval(n),
            EightChar::Psi2.eval(n) * EightChar::PsiM1.eval(n)
        );
    }
    let ones: Vec<i64> = (0..8).filter(|&n| EightChar::Psi2.eval(n) == 1).collect();
    assert_eq!(ones, [1, 7]);
    assert_eq!(EightChar::Psi1.kappa(), 0);
    assert_eq!(EightChar::PsiM1.kappa(), 1);
    assert_eq!(EightChar::Psi2.kappa(), 0);
    assert_eq!(EightChar::PsiM2.kappa(), 1);
    for e in EightChar::ALL {
        assert_eq!(e.tag().parse::<EightChar>().unwrap(), e);
    }
}

#[test]
fn kappa_examples() {
    assert_eq!(kappa(&QuadChar::trivial()), 0);
    assert_eq!(kappa(&QuadChar::eight(EightChar::PsiM1)), 1);
    let a = QuadChar::tilde(3).unwrap();
    let b = QuadChar::tilde(5).unwrap();
    assert_eq!(kappa(&a), 1);
    assert_eq!(kappa(&b), 0);
    for x in [a, b, QuadChar::tilde(7).unwrap()] {
        for y in EightChar::ALL.map(QuadChar::eight) {
            assert_eq!(kappa(&x.mul(&y)), (kappa(&x) + kappa(&y)) % 2);
        }
    }
}

#[test]
fn conductors() {
    let c = QuadChar::new(15, EightChar::Psi2).unwrap();
    assert_eq!(c.conductor(), 120);
    assert_eq!(QuadChar::new(15, EightChar::PsiM1).unwrap().conductor(), 60);
    assert!(QuadChar::new(9, EightChar::Psi1).is_err());
    assert!(QuadChar::new(6, EightChar::Psi1).is_err());
    assert_eq!(QuadChar::chi_d(3).unwrap().eight_part(), EightChar::PsiM1);
    assert_eq!(QuadChar::chi_d(5).unwrap().eight_part(), EightChar::Psi1);
    assert_eq!(QuadChar::tilde(45).unwrap().odd_conductor(), 5);
    assert_eq!(
        "15:-2".parse::<QuadChar>().unwrap(),
        QuadChar::new(15, EightChar::PsiM2).unwrap()
    );
}

#[test]
fn chi_d_is_the_symbol_d_over_n() {
    for d in (1..300u64).step_by(2) {
        let c = QuadChar::chi_d(d).unwrap();
        for n in (1..300u64).step_by(2) {
            let k = kronecker(d as i64, n as i64).unwrap();
            if gcd(d, n) == 1 {
                assert_eq!(c.eval_u(n), k, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn kronecker_symbol_character_even_arguments() {
    for e in 1..400u64 {
        let c = QuadChar::kronecker_symbol(e).unwrap();
        for n in (1..200u64).step_by(2) {
            if gcd(e, n) == 1 {
                assert_eq!(
                    c.eval_u(n),
                    kronecker(e as i64, n as i64).unwrap(),
                    "e={e} n={n}"
                );
            }
        }
    }
}

#[test]
fn squarefree_split_examples() {
    let s = squarefree_split(1).unwrap();
    assert_eq!((s.d0, s.d1), (1, 1));
    let s = squarefree_split(12).unwrap();
    assert_eq!((s.d0, s.d1), (3, 2));
    assert_eq!(s.d1_factorization, [(2, 1)]);
    let s = squarefree_split(45).unwrap();
    assert_eq!((s.d0, s.d1), (5, 3));
    assert!(squarefree_split(0).is_err());
    let big = 999_999_937u64;
    assert_eq!(squarefree_split(big).unwrap().d0, big);
    let s = squarefree_split(31_607 * 31_607).unwrap();
    assert_eq!((s.d0, s.d1), (1, 31_607));
}

#[test]
fn primes_examples() {
    assert_eq!(primes_up_to(10), [2, 3, 5, 7]);
    assert_eq!(primes_up_to(2), [2]);
    assert_eq!(primes_up_to(100).len(), 25);
    let oracle = (2..2000u64)
        .filter(|&n| trial_factor(n) == [(n, 1)])
        .count();
    assert_eq!(primes_up_to(2000).len(), oracle);
    assert_eq!(prime_divisors(360), [2, 3, 5]);
    let spf = SpfTable::new(1000);
    for n in 2..=1000 {
        assert_eq!(spf.factor(n), trial_factor(n));
    }
    let sf = squarefree_sieve(500);
    for n in 1..=500u64 {
        assert_eq!(sf[n as usize], is_squarefree(n));
    }
}

fn odd_squarefree() -> impl Strategy<Value = u64> {
    (0u64..5000)
        .prop_map(|x| 2 * x + 1)
        .prop_filter("squarefree", |&k| is_squarefree(k))
}

fn eight() -> impl Strategy<Value = EightChar> {
    prop::sample::select(EightChar::ALL.to_vec())
}

proptest! {
    #[test]
    fn split_recombines(d in 1u64..1_000_000_000) {
        let s = squarefree_split(d).unwrap();
        prop_assert_eq!(s.d0 * s.d1 * s.d1, d);
        prop_assert!(is_squarefree(s.d0));
        let back: u64 = s.d1_factorization.iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(back, s.d1);
    }

    #[test]
    fn char_periodic(k in odd_squarefree(), psi in eight(), n in -1_000_000i64..1_000_000) {
        let c = QuadChar::new(k, psi).unwrap();
        prop_assert_eq!(c.eval(n), c.eval(n + 8 * k as i64));
    }

    #[test]
    fn char_multiplicative(k in odd_squarefree(), psi in eight(), a in -3000i64..3000, b in -3000i64..3000) {
        let c = QuadChar::new(k, psi).unwrap();
        prop_assert_eq!(c.eval(a * b), c.eval(a) * c.eval(b));
    }

    #[test]
    fn char_zero_iff_shares_conductor(k in odd_squarefree(), psi in eight(), n in 1u64..100_000) {
        let c = QuadChar::new(k, psi).unwrap();
        let clash = gcd(n, k) > 1 || (psi != EightChar::Psi1 && n % 2 == 0);
        prop_assert_eq!(c.eval_u(n) == 0, clash);
        prop_assert_eq!(c.eval_u(n), c.eval(n as i64));
    }

    #[test]
    fn twist_depends_on_squarefree_part(j in odd_squarefree(), d in 1u64..200_000, psi in eight()) {
        // χ′(d) = χ′(d0) when (d, 2C_χ′) = 1
        let cp = QuadChar::new(j, psi).unwrap();
        prop_assume!(d % 2 == 1 && gcd(d, j) == 1);
        let d0 = squarefree_split(d).unwrap().d0;
        prop_assert_eq!(cp.eval_u(d), cp.eval_u(d0));
    }

    #[test]
    fn products_are_primitive(a in odd_squarefree(), b in odd_squarefree(), p in eight(), q in eight(), n in 1u64..50_000) {
        let x = QuadChar::new(a, p).unwrap();
        let y = QuadChar::new(b, q).unwrap();
        let z = x.mul(&y);
        prop_assert!(is_squarefree(z.odd_conductor()));
        if gcd(n, 2 * a * b) == 1 {
            prop_assert_eq!(z.eval_u(n), x.eval_u(n) * y.eval_u(n));
        }
    }
}
