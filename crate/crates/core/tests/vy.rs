use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vypoly_core::symfunc::{h_table, Times, TimesSpec};
use vypoly_core::vy::{
    certify_pii, hirota_degree_bound, miura_holds, qn_family_recurrence, qn_hankel_square, qn_recurrence, qn_schur,
    rational_solution, verify_dodgson, verify_dodgson_hirota, verify_freak, verify_freak_on, verify_miura,
    VYPolynomial,
};
use vypoly_core::diffalg::pii_residual;
use vypoly_core::{ExactScalar, XPolynomial};

fn rational(rng: &mut ChaCha8Rng) -> ExactScalar {
    let mut v = ExactScalar::zero();
    while v.is_zero() {
        v = ExactScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
    }
    v
}

fn generic_spec(rng: &mut ChaCha8Rng, n_cap: usize) -> TimesSpec {
    let mut t = TimesSpec::new(n_cap).unwrap();
    for j in (3..2 * n_cap).step_by(2) {
        t = t.with_time(j, rational(rng)).unwrap();
    }
    t
}

#[test]
fn routes_agree_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n_cap in 1..=3 {
        let t = generic_spec(&mut rng, n_cap);
        let family = qn_family_recurrence(5, &t).unwrap();
        for (n, q) in family.iter().enumerate() {
            let s = qn_schur(n, &t).unwrap();
            assert_eq!(s.poly(), q, "n = {n}, N = {n_cap}");
            assert_eq!(qn_hankel_square(n, &t).unwrap(), q.pow(2), "n = {n}, N = {n_cap}");
        }
    }
}

#[test]
fn recurrence_matches_closed_form_for_each_n() {
    let t = TimesSpec::new(2).unwrap();
    for n in 0..=4 {
        assert_eq!(qn_recurrence(n, &t).unwrap(), qn_schur(n, &t).unwrap());
    }
}

#[test]
fn rotational_support() {
    for n_cap in 1..=4usize {
        let t = TimesSpec::new(n_cap).unwrap();
        for n in 0..=7usize {
            let q = qn_schur(n, &t).unwrap();
            let d = n * (n + 1) / 2;
            for (m, c) in q.poly().coeffs().iter().enumerate() {
                if !c.is_zero() {
                    assert_eq!((d - m) % (2 * n_cap + 1), 0, "n = {n}, N = {n_cap}, m = {m}");
                }
            }
        }
    }
}

#[test]
fn freak_identity_generic_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n_cap in 1..=3 {
        let t = generic_spec(&mut rng, n_cap);
        for n in 0..=6 {
            assert!(verify_freak(n, &t).unwrap(), "n = {n}, N = {n_cap}");
        }
    }
    let even = Times::with_x().set(2, ExactScalar::ratio(1, 2)).set(3, ExactScalar::ratio(-1, 3));
    assert!(!verify_freak_on(2, &h_table(&even, 8)).unwrap());
}

#[test]
fn miura_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n_cap in 1..=3 {
        let t = generic_spec(&mut rng, n_cap);
        for n in 1..=4 {
            assert!(verify_miura(n, &t).unwrap(), "n = {n}, N = {n_cap}");
        }
    }
}

#[test]
fn miura_negative_control() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..5 {
        let deg = rng.gen_range(2..6);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).chain([1]).collect();
        let p = XPolynomial::from_ints(&coeffs);
        let q = XPolynomial::from_ints(&[4, 0, 0, 1]);
        assert!(!miura_holds(&XPolynomial::x(), &p).unwrap() || p == q);
    }
    // the genuine pair passes
    let t = TimesSpec::new(1).unwrap();
    assert!(miura_holds(qn_schur(2, &t).unwrap().poly(), qn_schur(3, &t).unwrap().poly()).unwrap());
}

#[test]
fn dodgson_with_even_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut t = Times::with_x();
    for j in 2..=6 {
        t = t.set(j, rational(&mut rng));
    }
    let h = h_table(&t, 16);
    for n in 0..=5 {
        for l in 1..=3 {
            assert!(verify_dodgson(n, l, &h).unwrap(), "n = {n}, l = {l}");
        }
    }
}

#[test]
fn dodgson_hirota_distinct_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for n_cap in 1..=3 {
        let t = generic_spec(&mut rng, n_cap).with_t1(rational(&mut rng));
        let s = generic_spec(&mut rng, n_cap).with_t1(rational(&mut rng));
        for n in 0..=3 {
            for l in 1..=2 {
                assert!(
                    verify_dodgson_hirota(n, l, &t, &s, hirota_degree_bound(n, l)).unwrap(),
                    "n = {n}, l = {l}, N = {n_cap}"
                );
            }
        }
    }
}

#[test]
fn pii_certification_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for n_cap in 1..=2 {
        let t = generic_spec(&mut rng, n_cap);
        for n in 0..=3 {
            assert!(certify_pii(n, &t).unwrap(), "n = {n}, N = {n_cap}");
            let u = rational_solution(n, &t).unwrap();
            assert!(pii_residual(&u, &ExactScalar::from(n as i64), &t).unwrap().is_zero());
            if n > 0 {
                assert!(!pii_residual(&u, &ExactScalar::from(n as i64 + 1), &t).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    let t = generic_spec(&mut rng, 3).with_time(3, ExactScalar::new(rug::Rational::from((1, 3)), rug::Rational::from((-2, 5)))).unwrap();
    let q = qn_schur(4, &t).unwrap();
    let json = q.to_json();
    let back = VYPolynomial::from_json(&json).unwrap();
    assert_eq!(back, q);
    assert_eq!(back.to_json(), json);
}

#[test]
fn json_layout() {
    let q = qn_schur(2, &TimesSpec::new(1).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&q.to_json()).unwrap();
    assert_eq!(v["N"], 1);
    assert_eq!(v["coeffs"], serde_json::json!(["4", "0", "0", "1"]));
    assert_eq!(v["times"][0]["re"], "-1/3");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monic_degree_invariant(seed in any::<u64>(), n in 0usize..7, n_cap in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = generic_spec(&mut rng, n_cap);
        let q = qn_schur(n, &t).unwrap();
        prop_assert!(q.poly().is_monic());
        prop_assert_eq!(q.poly().degree(), (n * (n + 1) / 2) as isize);
    }
}
