use num_complex::Complex64;
use proptest::prelude::*;
use rug::{Complex, Float};
use vypoly_core::asymptotics::*;

const PREC: u32 = 256;

fn c(re: f64, im: f64) -> Complex {
    Complex::with_val(PREC, (re, im))
}

fn dist(u: &Complex, v: &Complex) -> f64 {
    Float::with_val(64, Complex::with_val(PREC, u - v).abs_ref()).to_f64()
}

fn nearest(p: &Complex, set: &[Complex]) -> f64 {
    set.iter().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min)
}

#[test]
fn corners_closed_under_rotation() {
    for n_cap in 1..=4 {
        let xs = star_corners(n_cap, PREC).unwrap();
        assert_eq!(xs.len(), 2 * n_cap + 1);
        let th = 2.0 * std::f64::consts::PI / (2 * n_cap + 1) as f64;
        let omega = c(th.cos(), th.sin());
        for x in &xs {
            let r = Complex::with_val(PREC, x * &omega);
            assert!(nearest(&r, &xs) < 1e-14);
        }
    }
}

#[test]
fn saddle_condition_reproduces_corners() {
    for n_cap in 1..=4 {
        let xs = star_corners(n_cap, PREC).unwrap();
        let alt = corners_from_saddle_condition(n_cap, PREC).unwrap();
        for (x, a) in alt.iter().zip(corner_a_values(n_cap, PREC).unwrap()) {
            assert!(nearest(x, &xs) < 1e-60);
            assert!(g2_residual(x, &a, n_cap) < 1e-60);
        }
    }
}

#[test]
fn saddles_meet_branch_points_at_the_corner() {
    let x0 = Complex::with_val(PREC, (real_corner(2, PREC).unwrap(), 0));
    let a = branch_a(&x0, 2).unwrap();
    let p = p_polynomial(&a, 2).unwrap();
    let ia = Complex::with_val(PREC, &a * c(0.0, 1.0));
    for z in [ia.clone(), -ia] {
        let v = eval_poly(&p, &z);
        assert!(Float::with_val(64, v.abs_ref()) < 1e-60);
    }
    let shifted = Complex::with_val(PREC, &x0 * c(1.0 + 1e-10, 0.0));
    let a_near = branch_a(&shifted, 2).unwrap();
    assert!(dist(&a, &a_near) < 1e-4);
}

#[test]
fn saddles_closed_under_negation() {
    for n_cap in 1..=3 {
        let a = branch_a(&c(1.5, 2.5), n_cap).unwrap();
        let zs = saddles(&a, n_cap).unwrap();
        assert_eq!(zs.len(), 2 * n_cap);
        let p = p_polynomial(&a, n_cap).unwrap();
        for z in &zs {
            assert!(nearest(&Complex::with_val(PREC, -z), &zs) < 1e-60);
            assert!(Float::with_val(64, eval_poly(&p, z).abs_ref()) < 1e-50);
        }
    }
}

#[test]
fn imaginary_saddles_have_zero_potential() {
    let a0 = Float::with_val(PREC, 0.75).root(5);
    for step in 0..8 {
        let a = Complex::with_val(PREC, (Float::with_val(PREC, &a0 + 0.3 * step as f64), 0));
        let zs = saddles(&a, 2).unwrap();
        let imaginary: Vec<&Complex> = zs.iter().filter(|z| z.real().to_f64().abs() < 1e-40).collect();
        assert_eq!(imaginary.len(), 2, "a = {}", to_c64(&a));
        for z in imaginary {
            assert!(phi(z, &a, 2).unwrap().real().to_f64().abs() < 1e-40);
        }
    }
}

#[test]
fn phi_plus_two_log_settles_at_infinity() {
    let a = c(0.9, 0.4);
    for n_cap in 1..=3 {
        let tail = |r: f64| {
            let z = c(r * 0.6, r * 0.8);
            let v = phi(&z, &a, n_cap).unwrap() + Complex::with_val(PREC, z.ln_ref()) * 2u32;
            to_c64(&v)
        };
        assert!(phi_distance(tail(1e4), tail(1e8)) < 1e-3, "N = {n_cap}");
    }
}

#[test]
fn quadrature_oracle() {
    let cases = [(1, (0.8, 1.7), (1.1, -0.3)), (2, (-1.4, 0.5), (0.7, 0.7)), (3, (0.3, -2.0), (-0.9, 1.2))];
    for (n_cap, z, a) in cases {
        let (z, a) = (c(z.0, z.1), c(a.0, a.1));
        let q = phi_by_quadrature(&z, &a, n_cap).unwrap();
        assert!(phi_distance(to_c64(&phi(&z, &a, n_cap).unwrap()), q) < 1e-10);
    }
}

#[test]
fn finite_difference_is_second_order() {
    let (z, x) = (c(0.5, 0.9), c(3.0, 1.5));
    for n_cap in 1..=3 {
        let e1 = phi_x_derivative_check(&z, &x, n_cap, 1e-4).unwrap();
        let e2 = phi_x_derivative_check(&z, &x, n_cap, 5e-5).unwrap();
        assert!(e1 < 1e-6);
        assert!((3.5..4.5).contains(&(e1 / e2)), "N = {n_cap}: {e1:e} {e2:e}");
    }
}

#[test]
fn boutroux_at_origin() {
    for n_cap in 1..=3 {
        assert!(max_genus_boutroux_check(n_cap, PREC).unwrap() < 1e-8);
        let r = 2f64.powf(-1.0 / (2 * n_cap + 1) as f64);
        for b in boutroux_branch_points(n_cap, PREC).unwrap() {
            assert!((to_c64(&b).norm() - r).abs() < 1e-12);
        }
    }
}

#[test]
fn real_saddle_potential_is_monotone() {
    let a0 = 0.75f64.powf(0.2);
    let mut last = f64::NEG_INFINITY;
    for k in 1..=16 {
        let a = Float::with_val(PREC, a0 + 0.25 * k as f64);
        let v = real_saddle_potential(&a, 2).unwrap().to_f64();
        assert!(v > 0.0 && v > last, "a = {a}");
        last = v;
    }
}

#[test]
fn spectral_json() {
    let x = c(2.0, 1.0);
    let data = saddle_values(&x, 2).unwrap();
    assert!(g2_residual(&x, &data.a, 2) < 1e-60);
    let doc: SpectralDocument = serde_json::from_str(&data.to_json()).unwrap();
    assert_eq!(doc, data.to_document());
    assert_eq!(doc.n_cap, 2);
    assert_eq!(doc.saddles.len(), 4);
    assert_eq!(doc.phi_at_saddles.len(), 4);
    assert!(saddle_values(&c(0.0, 0.0), 2).is_err());
}

#[test]
fn small_locus_is_symmetric_and_flip_invariant() {
    let opts = LocusOptions {
        resolution: 60,
        ..LocusOptions::default()
    };
    let arcs = locus_trace_with(1, &opts).unwrap();
    assert!(arcs.vertex_count() > 0);
    let diag = arcs.cell_diagonal();
    assert!(rotation_hausdorff(&arcs, 0.95 * arcs.half_width) < 2.0 * diag);
    for x in star_corners(1, PREC).unwrap() {
        assert!(arcs.distance_to(to_c64(&x)) < diag);
    }
    let flipped = locus_trace_with(1, &LocusOptions { flip_root: true, ..opts }).unwrap();
    let pts: Vec<Complex64> = flipped.arcs.iter().flatten().copied().collect();
    assert!(arcs.distances_to(&pts).iter().all(|&d| d < 1e-9));

    let back = LocusArcs::from_csv(&arcs.to_csv()).unwrap();
    assert_eq!(back.vertex_count(), arcs.vertex_count());
    assert_eq!(back.n_cap, 1);
    assert!(arcs.to_svg().starts_with("<svg"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn branch_solves_g2(re in -6.0f64..6.0, im in 0.05f64..6.0, n_cap in 1usize..4) {
        let x = c(re, im);
        let a = branch_a(&x, n_cap).unwrap();
        prop_assert!(g2_residual(&x, &a, n_cap) < 1e-60);
        let conj = branch_a(&c(re, -im), n_cap).unwrap();
        prop_assert!(dist(&Complex::with_val(PREC, conj.conj_ref()), &a) < 1e-60);
    }
}
