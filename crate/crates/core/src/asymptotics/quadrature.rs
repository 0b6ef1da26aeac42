//! Adaptive Gauss–Kronrod (7/15) quadrature of complex-valued integrands.

use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 4000;

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    Piece {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).norm(),
    }
}

/// `∫_a^b f` to `max(abs_tol, rel_tol·|I|)`, bisecting the worst interval first.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Complex64> {
    let first = kronrod(&f, a, b);
    let mut total = first.value;
    let mut err = first.error;
    let mut heap = BinaryHeap::from([first]);
    // negated so that a NaN error keeps refining until the finiteness check trips
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    while !(err <= abs_tol.max(rel_tol * total.norm())) {
        if heap.len() >= MAX_INTERVALS || !err.is_finite() || !total.norm().is_finite() {
            return Err(Error::Quadrature {
                estimate: format!("{total}"),
                error: err,
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of the running updates
    let sum: Complex64 = heap.iter().map(|p| p.value).sum();
    if !sum.is_finite() {
        return Err(Error::Quadrature {
            estimate: format!("{sum}"),
            error: err,
        });
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|t| Complex64::new(t * t, 1.0), 0.0, 3.0, 1e-14, 1e-14).unwrap();
        assert!((v - Complex64::new(9.0, 3.0)).norm() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        let v = integrate(|t| Complex64::new(t.sqrt(), 0.0), 0.0, 1.0, 1e-12, 1e-12).unwrap();
        assert!((v.re - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn oscillatory() {
        let v = integrate(|t| Complex64::new(0.0, 30.0 * t).exp(), 0.0, 1.0, 1e-13, 1e-13).unwrap();
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 30.0);
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn divergent_integrand_errors() {
        let r = integrate(|t| Complex64::new(1.0 / t, 0.0), 0.0, 1.0, 1e-12, 1e-12);
        assert!(r.is_err(), "{r:?}");
    }
}
