use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Integer;
use vypoly_core::exact::factorial;
use vypoly_core::symfunc::{h_table, rectangle, schur, staircase, Times, TimesSpec};
use vypoly_core::{ExactScalar, Partition, XPolynomial};

fn rational(rng: &mut ChaCha8Rng) -> ExactScalar {
    let mut v = ExactScalar::zero();
    while v.is_zero() {
        v = ExactScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
    }
    v
}

fn random_odd_spec(rng: &mut ChaCha8Rng, n_cap: usize) -> TimesSpec {
    let mut t = TimesSpec::new(n_cap).unwrap();
    for j in (3..2 * n_cap).step_by(2) {
        t = t.with_time(j, rational(rng)).unwrap();
    }
    t.with_top_time(rational(rng))
}

/// Truncated `exp(Σ t_j w^j)` by summing powers of the exponent series.
fn series_exp(t: &Times, k_max: usize) -> Vec<XPolynomial> {
    let mut arg = vec![XPolynomial::zero(); k_max + 1];
    if k_max >= 1 {
        arg[1] = XPolynomial::x();
    }
    for (j, v) in t.higher() {
        if j <= k_max {
            arg[j] = XPolynomial::constant(v.clone());
        }
    }
    let mul = |a: &[XPolynomial], b: &[XPolynomial]| -> Vec<XPolynomial> {
        let mut out = vec![XPolynomial::zero(); k_max + 1];
        for i in 0..=k_max {
            for j in 0..=k_max - i {
                out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
            }
        }
        out
    };
    let mut sum = vec![XPolynomial::zero(); k_max + 1];
    sum[0] = XPolynomial::one();
    let mut power = sum.clone();
    for m in 1..=k_max {
        power = mul(&power, &arg);
        let inv = ExactScalar::from(factorial(m as u32)).inv().unwrap();
        for k in 0..=k_max {
            sum[k] = &sum[k] + &power[k].scale(&inv);
        }
    }
    sum
}

#[test]
fn h_table_matches_series_exponentiation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n_cap in 1..=4 {
        let t = random_odd_spec(&mut rng, n_cap).to_times();
        let h = h_table(&t, 12);
        assert_eq!(h.entries(), series_exp(&t, 12).as_slice(), "N = {n_cap}");
    }
    // even times as well
    let t = Times::with_x().set(2, rational(&mut rng)).set(3, rational(&mut rng)).set(4, rational(&mut rng));
    assert_eq!(h_table(&t, 12).entries(), series_exp(&t, 12).as_slice());
}

#[test]
fn transpose_symmetry_on_odd_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let t = random_odd_spec(&mut rng, 4).to_times();
    for w in 0..=10 {
        for lambda in Partition::all_of(w) {
            assert_eq!(schur(&lambda, &t), schur(&lambda.transpose(), &t), "{lambda}");
        }
    }
}

#[test]
fn transpose_symmetry_fails_with_even_times() {
    let t = Times::with_x().set(2, ExactScalar::one());
    let lambda = Partition::new(vec![2]).unwrap();
    assert_ne!(schur(&lambda, &t), schur(&lambda.transpose(), &t));
}

#[test]
fn staircase_square_is_rectangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let spec = random_odd_spec(&mut rng, 3);
    for n in 0..=6i64 {
        let lhs = schur(&staircase(n).unwrap(), &spec.kdv_scaled()).pow(2);
        let rect = schur(&rectangle(n + 1, n).unwrap(), &spec.to_times());
        let two_pow = ExactScalar::from(Integer::from(1) << (n * n) as u32);
        assert_eq!(lhs, rect.scale(&two_pow), "n = {n}");
    }
}

#[test]
fn leading_coefficient_of_staircase_is_inverse_hook_product() {
    let t = TimesSpec::new(2).unwrap().kdv_scaled();
    for n in 1..=6 {
        let lambda = staircase(n).unwrap();
        let s = schur(&lambda, &t);
        assert_eq!(s.degree(), lambda.weight() as isize);
        assert_eq!(s.leading_coeff().unwrap(), &vypoly_core::symfunc::hook_product(&lambda));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weighted_homogeneity(seed in any::<u64>(), w in 0usize..=12, pick in any::<prop::sample::Index>(),
                            eps_num in 1i64..6, eps_den in 1i64..6, neg in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Times::with_x();
        for j in 2..=7 {
            t = t.set(j, rational(&mut rng));
        }
        let parts = Partition::all_of(w);
        let lambda = &parts[pick.index(parts.len())];
        let eps = ExactScalar::ratio(if neg { -eps_num } else { eps_num }, eps_den);
        let lhs = schur(lambda, &t);
        // t1 = x ↦ x/ε on the right
        let rhs = schur(lambda, &t.rescale_higher(&eps))
            .scale_argument(&eps.inv().unwrap())
            .scale(&eps.pow(lambda.weight() as u32));
        prop_assert_eq!(lhs, rhs);
    }
}
