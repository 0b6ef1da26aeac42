//! Multiprecision numerics of the large-`n` picture: the branch `a(x)`, the saddle
//! polynomial `P(z; a)`, the effective potential `φ(z; a)`, the star corners,
//! the zero locus and the maximal-genus check at `x = 0`.

mod locus;
pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::roots::{aberth, float_string};

pub use locus::{locus_trace, locus_trace_with, render_svg, rotation_hausdorff, LocusArcs, LocusOptions};

pub type BigComplex = Complex;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 128;

pub(crate) fn prec_of(c: &Complex) -> u32 {
    let (a, b) = c.prec();
    a.max(b).max(MIN_PRECISION)
}

fn abs(c: &Complex) -> Float {
    Float::with_val(prec_of(c), c.abs_ref())
}

pub fn to_c64(c: &Complex) -> Complex64 {
    Complex64::new(c.real().to_f64(), c.imag().to_f64())
}

pub fn from_c64(prec: u32, c: Complex64) -> Complex {
    Complex::with_val(prec, (c.re, c.im))
}

/// `c^n` by repeated squaring; the library power goes through `exp ∘ log`.
pub fn pow_u(c: &Complex, n: u32) -> Complex {
    let prec = prec_of(c);
    let mut acc = Complex::with_val(prec, 1);
    let mut base = c.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base.square_mut();
        }
    }
    acc
}

fn decimal_digits(prec: u32) -> i32 {
    (prec as f64 * std::f64::consts::LOG10_2).floor() as i32
}

/// `10^{−(digits−8)}` for the working precision.
pub fn working_tolerance(prec: u32) -> Float {
    Float::with_val(prec, 10).pow(-(decimal_digits(prec) - 8))
}

fn check_n_cap(n_cap: usize) -> Result<()> {
    if n_cap == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    Ok(())
}

fn sign(n_cap: usize) -> i32 {
    if n_cap.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `C(α, k) = α(α−1)…(α−k+1)/k!`.
pub fn generalized_binomial(alpha: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    for j in 0..k {
        acc *= Rational::from(alpha - j);
        acc /= j + 1;
    }
    acc
}

/// `T_{m,α}(ζ) = Σ_{k=0}^{m} C(α,k) ζ^k`, the Maclaurin polynomial of `(1+ζ)^α`.
pub fn maclaurin_t(m: usize, alpha: &Rational, zeta: &Complex) -> Complex {
    let prec = prec_of(zeta);
    let mut acc = Complex::new(prec);
    for k in (0..=m as u32).rev() {
        acc *= zeta;
        acc += Float::with_val(prec, &generalized_binomial(alpha, k));
    }
    acc
}

/// `c_N = (−1)^N C(2N,N) / 2^{2N}`.
pub fn c_n(n_cap: usize) -> Rational {
    let c = Rational::from((binomial(2 * n_cap as u32, n_cap as u32), Integer::from(1) << (2 * n_cap as u32)));
    c * sign(n_cap)
}

/// Right-hand side `(−1)^N (2N+1) ((2N+1)/2N)^{2N} C(2N,N)` of the corner equation.
pub fn corner_rhs(n_cap: usize) -> Rational {
    let m = 2 * n_cap as u32;
    let ratio = Rational::from((m + 1, m)).pow(m);
    ratio * (m + 1) * binomial(m, n_cap as u32) * sign(n_cap)
}

/// The `m` roots of `w^m = v` for real `v`, at angles `(arg v + 2πk)/m`.
fn real_roots_of_unity_scaled(v: &Float, m: u32, prec: u32) -> Vec<Complex> {
    let r = Float::with_val(prec, v.abs_ref()).pow(Float::with_val(prec, 1) / m);
    let pi = Float::with_val(prec, Constant::Pi);
    let base = if v.is_sign_negative() { pi.clone() } else { Float::new(prec) };
    (0..m)
        .map(|k| {
            let th = Float::with_val(prec, &base + Float::with_val(prec, &pi * (2 * k))) / m;
            let (s, c) = th.sin_cos(Float::new(prec));
            Complex::with_val(prec, (Float::with_val(prec, &r * &c), Float::with_val(prec, &r * &s)))
        })
        .collect()
}

/// The `2N+1` outer vertices `x_k^{[N]}` of the star-shaped root region.
pub fn star_corners(n_cap: usize, prec: u32) -> Result<Vec<Complex>> {
    check_n_cap(n_cap)?;
    let prec = prec.max(MIN_PRECISION);
    let rhs = Float::with_val(prec, &corner_rhs(n_cap));
    Ok(real_roots_of_unity_scaled(&rhs, 2 * n_cap as u32 + 1, prec))
}

/// The real corner `x_0^{[N]}`.
pub fn real_corner(n_cap: usize, prec: u32) -> Result<Float> {
    check_n_cap(n_cap)?;
    let rhs = Float::with_val(prec, &corner_rhs(n_cap));
    let r = Float::with_val(prec, rhs.abs_ref()).pow(Float::with_val(prec, 1) / (2 * n_cap as u32 + 1));
    Ok(if rhs.is_sign_negative() { -r } else { r })
}

/// `|x_0^{[N]}|`.
pub fn corner_radius(n_cap: usize) -> f64 {
    let m = (2 * n_cap + 1) as f64;
    Float::with_val(64, &corner_rhs(n_cap)).to_f64().abs().powf(1.0 / m)
}

/// The values of `a` at the corners: `a^{2N+1} = (−1)^N N C(2N,N) / 2^{2N}`.
pub fn corner_a_values(n_cap: usize, prec: u32) -> Result<Vec<Complex>> {
    check_n_cap(n_cap)?;
    let prec = prec.max(MIN_PRECISION);
    let v = Rational::from((
        binomial(2 * n_cap as u32, n_cap as u32) * n_cap as u32,
        Integer::from(1) << (2 * n_cap as u32),
    )) * sign(n_cap);
    Ok(real_roots_of_unity_scaled(&Float::with_val(prec, &v), 2 * n_cap as u32 + 1, prec))
}

/// `x = 2a + c_N a^{−2N}`.
pub fn x_of_a(a: &Complex, n_cap: usize) -> Complex {
    let prec = prec_of(a);
    let c = Float::with_val(prec, &c_n(n_cap));
    let pow = pow_u(a, 2 * n_cap as u32);
    Complex::with_val(prec, a * 2u32) + Complex::with_val(prec, c / pow)
}

/// Corners obtained by mapping the saddle/branch-point coincidence values of `a`
/// through `x = 2a + c_N a^{−2N}`.
pub fn corners_from_saddle_condition(n_cap: usize, prec: u32) -> Result<Vec<Complex>> {
    Ok(corner_a_values(n_cap, prec)?.iter().map(|a| x_of_a(a, n_cap)).collect())
}

/// `|x − 2a − c_N/a^{2N}|`.
pub fn g2_residual(x: &Complex, a: &Complex, n_cap: usize) -> Float {
    abs(&Complex::with_val(prec_of(x), x - x_of_a(a, n_cap)))
}

/// `b = 2a` solves `b^m − x b^{m−1} + K = 0` with `m = 2N+1`, `K = (−1)^N C(2N,N)`.
struct BranchEquation {
    m: usize,
    k: f64,
}

impl BranchEquation {
    fn new(n_cap: usize) -> Self {
        BranchEquation {
            m: 2 * n_cap + 1,
            k: sign(n_cap) as f64 * binomial(2 * n_cap as u32, n_cap as u32).to_f64(),
        }
    }

    fn eval(&self, b: Complex64, x: Complex64) -> (Complex64, Complex64) {
        let bm2 = b.powu(self.m as u32 - 2);
        let bm1 = bm2 * b;
        let f = bm1 * (b - x) + self.k;
        let df = bm2 * (b * self.m as f64 - x * (self.m - 1) as f64);
        (f, df)
    }

    /// Warm-started Aberth sweeps on all `m` roots. Stops at `f64` resolution, or
    /// once the corrections stall at a small size (nearly double roots).
    fn polish(&self, roots: &mut [Complex64], x: Complex64, sweeps: usize) -> bool {
        let mut previous = f64::INFINITY;
        for sweep in 0..sweeps {
            let mut worst = 0.0f64;
            for i in 0..roots.len() {
                let (f, df) = self.eval(roots[i], x);
                let ratio = f / df;
                let s: Complex64 = (0..roots.len())
                    .filter(|&j| j != i)
                    .map(|j| (roots[i] - roots[j]).inv())
                    .sum();
                let w = ratio / (1.0 - ratio * s);
                if !w.is_finite() {
                    return false;
                }
                roots[i] -= w;
                worst = worst.max(w.norm() / roots[i].norm().max(1.0));
            }
            if worst < 1e-14 || (sweep > 6 && worst < 1e-7 && worst > 0.5 * previous) {
                return true;
            }
            previous = worst;
        }
        false
    }

    fn start(&self, x: Complex64) -> Vec<Complex64> {
        let small = (Complex64::new(self.k, 0.0) / x).powf(1.0 / (self.m - 1) as f64);
        let mut roots = vec![x - self.k / x.powu(self.m as u32 - 1)];
        for j in 0..self.m - 1 {
            let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / (self.m - 1) as f64);
            roots.push(small * w);
        }
        roots
    }
}

fn nearest(roots: &[Complex64], p: Complex64) -> usize {
    (0..roots.len())
        .min_by(|&i, &j| (roots[i] - p).norm().total_cmp(&(roots[j] - p).norm()))
        .expect("nonempty")
}

/// Tracks `b = 2a` in `f64` along the ray from `R x/|x|` to `x`; returns the
/// estimate and its distance to the nearest other root.
fn track_ray(x: Complex64, n_cap: usize) -> Result<(Complex64, f64)> {
    let eq = BranchEquation::new(n_cap);
    let lost = || Error::BranchTrackingLost { x: format!("{x}") };
    let dir = x / x.norm();
    let scale = corner_radius(n_cap);
    let t_end = x.norm();
    let mut t = (100.0 * scale).max(t_end);
    let mut roots = eq.start(dir * t);
    if !eq.polish(&mut roots, dir * t, 200) {
        return Err(lost());
    }
    let mut sel = nearest(&roots, dir * t);
    let max_step = |t: f64| 0.1 * t.max(scale);
    let mut h = max_step(t);
    while t > t_end {
        let t_new = if t - t_end <= h { t_end } else { t - h };
        let mut trial = roots.clone();
        let ok = eq.polish(&mut trial, dir * t_new, 60);
        if ok && nearest(&trial, roots[sel]) == sel {
            let motion = (trial[sel] - roots[sel]).norm();
            let sep = (0..trial.len())
                .filter(|&j| j != sel)
                .map(|j| (trial[j] - trial[sel]).norm())
                .fold(f64::INFINITY, f64::min);
            if sep >= 10.0 * motion {
                roots = trial;
                t = t_new;
                h = (1.5 * h).min(max_step(t));
                continue;
            }
        }
        h *= 0.5;
        if h < 1e-14 * t.max(1.0) {
            return Err(lost());
        }
    }
    sel = nearest(&roots, roots[sel]);
    let sep = (0..roots.len())
        .filter(|&j| j != sel)
        .map(|j| (roots[j] - roots[sel]).norm())
        .fold(f64::INFINITY, f64::min);
    Ok((roots[sel], sep))
}

/// The branch of `(2a)^{2N+1} − x(2a)^{2N} + (−1)^N C(2N,N) = 0` with `a ~ x/2` at
/// infinity, continued along the ray from `|x| = 100|x_0|` and polished at the
/// precision of `x`.
///
/// At a corner (to within a few ulps) the branch meets another root; the common
/// double root is returned there.
pub fn branch_a(x: &Complex, n_cap: usize) -> Result<Complex> {
    check_n_cap(n_cap)?;
    if x.is_zero() {
        return Err(Error::InvalidArgument("x = 0 lies on every cut".into()));
    }
    let prec = prec_of(x);
    let near = Float::with_val(prec, Float::i_exp(1, 4 - prec as i32)) * abs(x);
    for a in corner_a_values(n_cap, prec)? {
        if abs(&Complex::with_val(prec, x - x_of_a(&a, n_cap))) <= near {
            return Ok(a);
        }
    }
    let (b64, sep) = track_ray(to_c64(x), n_cap)?;
    let m = 2 * n_cap as u32 + 1;
    let k = Float::with_val(prec, binomial(2 * n_cap as u32, n_cap as u32)) * sign(n_cap);
    let mut b = from_c64(prec, b64);
    let eps = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    let mut converged = false;
    for _ in 0..200 {
        let bm2 = pow_u(&b, m - 2);
        let bm1 = Complex::with_val(prec, &bm2 * &b);
        let f = Complex::with_val(prec, &b - x) * &bm1 + &k;
        let df = bm2 * (Complex::with_val(prec, &b * m) - Complex::with_val(prec, x * (m - 1)));
        let delta = Complex::with_val(prec, &f / &df);
        b -= &delta;
        let size = abs(&b).max(&Float::with_val(prec, 1));
        if abs(&delta) <= Float::with_val(prec, &eps * &size) {
            converged = true;
            break;
        }
    }
    let lost = || Error::BranchTrackingLost { x: format!("{}", to_c64(x)) };
    if !converged || (to_c64(&b) - b64).norm() > 0.5 * sep {
        return Err(lost());
    }
    let a = b / 2u32;
    let tol = working_tolerance(prec) * abs(x).max(&Float::with_val(prec, 1));
    if g2_residual(x, &a, n_cap) > tol {
        return Err(lost());
    }
    Ok(a)
}

fn check_a(a: &Complex) -> Result<()> {
    if a.is_zero() {
        Err(Error::DegenerateA)
    } else {
        Ok(())
    }
}

/// Coefficients of `P` as a polynomial in `ζ = z²`: `ζ^N − (1/2a) T_{N−1,−1/2}(ζ/a²)`.
fn p_in_zeta(a: &Complex, n_cap: usize) -> Result<Vec<Complex>> {
    check_a(a)?;
    let prec = prec_of(a);
    let half = Rational::from((-1, 2));
    let inv_a2 = Complex::with_val(prec, a.square_ref()).recip();
    let mut scale = Complex::with_val(prec, a * 2u32).recip() * -1i32;
    let mut out = Vec::with_capacity(n_cap + 1);
    for k in 0..n_cap as u32 {
        out.push(Complex::with_val(prec, &scale * Float::with_val(prec, &generalized_binomial(&half, k))));
        scale *= &inv_a2;
    }
    out.push(Complex::with_val(prec, 1));
    Ok(out)
}

/// `P(z; a) = z^{2N} − (1/2a) T_{N−1,−1/2}(z²/a²)`, ascending coefficients in `z`.
pub fn p_polynomial(a: &Complex, n_cap: usize) -> Result<Vec<Complex>> {
    check_n_cap(n_cap)?;
    let prec = prec_of(a);
    let zeta = p_in_zeta(a, n_cap)?;
    let mut out = vec![Complex::new(prec); 2 * n_cap + 1];
    for (k, c) in zeta.into_iter().enumerate() {
        out[2 * k] = c;
    }
    Ok(out)
}

pub fn eval_poly(coeffs: &[Complex], z: &Complex) -> Complex {
    let mut acc = Complex::new(prec_of(z));
    for c in coeffs.iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

/// The `2N` roots of `P(z; a)`, ordered as `z_1, −z_1, z_2, −z_2, …` with `z_j`
/// the principal square root of the `j`-th root in `z²`.
pub fn saddles(a: &Complex, n_cap: usize) -> Result<Vec<Complex>> {
    check_n_cap(n_cap)?;
    let prec = prec_of(a);
    let (zetas, _) = aberth(&p_in_zeta(a, n_cap)?, prec)?;
    let mut out = Vec::with_capacity(2 * n_cap);
    for zeta in zetas {
        let z = zeta.sqrt();
        let minus = Complex::with_val(prec, -&z);
        out.push(z);
        out.push(minus);
    }
    Ok(out)
}

/// Principal `(z² + a²)^{1/2}`.
pub fn principal_root(z: &Complex, a: &Complex) -> Complex {
    let prec = prec_of(z).max(prec_of(a));
    (Complex::with_val(prec, z.square_ref()) + Complex::with_val(prec, a.square_ref())).sqrt()
}

fn near_zero(v: &Complex, size: &Float) -> bool {
    let prec = prec_of(v);
    let eps = Float::with_val(prec, Float::i_exp(1, 24 - prec as i32));
    abs(v) <= eps * size
}

/// `φ(z; a)` with principal logarithm and principal fractional powers.
pub fn phi(z: &Complex, a: &Complex, n_cap: usize) -> Result<Complex> {
    let s = principal_root(z, a);
    phi_with_root(z, a, &s, n_cap)
}

/// The same formula with a caller-chosen determination `s` of `(z² + a²)^{1/2}`.
pub fn phi_with_root(z: &Complex, a: &Complex, s: &Complex, n_cap: usize) -> Result<Complex> {
    check_n_cap(n_cap)?;
    check_a(a)?;
    let prec = prec_of(z).max(prec_of(a)).max(prec_of(s));
    let size = abs(z).max(&abs(a));
    if z.is_zero() || near_zero(s, &size) {
        return Err(Error::PoleOrBranchPoint);
    }
    let ia = Complex::with_val(prec, a * Complex::with_val(prec, (0, 1)));
    let log = (Complex::with_val(prec, z + s) / &ia).ln();
    let mut out = Complex::with_val(prec, &log * -2i32);
    out += Complex::with_val(prec, s * 2u32) / z;
    let zeta = Complex::with_val(prec, z.square_ref()) / Complex::with_val(prec, a.square_ref());
    let t = maclaurin_t(n_cap - 1, &Rational::from((-3, 2)), &zeta);
    let num = t * pow_u(s, 3);
    let den = pow_u(a, 3) * pow_u(z, 2 * n_cap as u32 + 1);
    out -= num / den / (2 * n_cap as u32 + 1);
    Ok(out)
}

/// `|Re u − Re v|` and `|Im u − Im v|` reduced modulo `4π`, whichever is larger.
pub fn phi_distance(u: Complex64, v: Complex64) -> f64 {
    let d = u - v;
    let period = 4.0 * PI;
    let im = d.im - period * (d.im / period).round();
    d.re.abs().max(im.abs())
}

/// `2∫_{ia}^{z} y(w) dw` along the segment, `y = −s(w)P(w)/w^{2N+2}`, with `s`
/// continued along the segment from the principal value at `z`. The sign of `y`
/// is the one whose primitive is the closed form of [`phi`].
///
/// The segment must avoid `w = 0`; it does whenever `(z − ia)/(2ia)` is not a real
/// number at most `−1/2`.
pub fn phi_by_quadrature(z: &Complex, a: &Complex, n_cap: usize) -> Result<Complex64> {
    check_n_cap(n_cap)?;
    check_a(a)?;
    let z = to_c64(z);
    let a = to_c64(a);
    let ia = Complex64::i() * a;
    let u = z - ia;
    let zeta = u / (2.0 * ia);
    if zeta.im.abs() < 1e-9 && zeta.re <= -0.5 {
        return Err(Error::PoleOrBranchPoint);
    }
    let root = (2.0 * ia * u).sqrt();
    let at_end = root * (1.0 + zeta).sqrt();
    let principal = (z * z + a * a).sqrt();
    let eps = if (at_end - principal).norm() <= (at_end + principal).norm() { 1.0 } else { -1.0 };
    let coeffs: Vec<Complex64> = {
        let half = Rational::from((-1, 2));
        let mut c = Vec::with_capacity(n_cap);
        let mut scale = -1.0 / (2.0 * a);
        for k in 0..n_cap as u32 {
            c.push(scale * generalized_binomial(&half, k).to_f64());
            scale /= a * a;
        }
        c
    };
    let p = |w: Complex64| {
        let w2 = w * w;
        let mut acc = Complex64::new(1.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * w2 + c;
        }
        acc
    };
    let integrand = |tau: f64| {
        let w = ia + u * tau * tau;
        let s = eps * tau * root * (1.0 + zeta * tau * tau).sqrt();
        let y = -s * p(w) / w.powu(2 * n_cap as u32 + 2);
        2.0 * y * 2.0 * u * tau
    };
    quadrature::integrate(integrand, 0.0, 1.0, 1e-13, 1e-13)
}

/// `|[φ(z; a(x+h)) − φ(z; a(x−h))]/(2h) + ŝ/(z a(x))|`, where `∂φ/∂x = −ŝ/(z a)`.
///
/// `ŝ` is the determination of `(z²+a²)^{1/2}` in which `φ' = 2ŝP/z^{2N+2}`; for the
/// closed form of [`phi`] that is minus the principal root, so the check adds
/// `−s/(z a)` with `s` principal.
pub fn phi_x_derivative_check(z: &Complex, x: &Complex, n_cap: usize, h: f64) -> Result<f64> {
    let prec = prec_of(x).max(prec_of(z));
    let step = Float::with_val(prec, h);
    let xp = Complex::with_val(prec, x + &step);
    let xm = Complex::with_val(prec, x - &step);
    let a = branch_a(x, n_cap)?;
    let fp = phi(z, &branch_a(&xp, n_cap)?, n_cap)?;
    let fm = phi(z, &branch_a(&xm, n_cap)?, n_cap)?;
    let mut diff = fp - fm;
    // a 4πi jump of the logarithm between the two stencil points
    let period = Float::with_val(prec, Constant::Pi) * 4u32;
    let turns = Float::with_val(prec, diff.imag() / &period).round();
    *diff.mut_imag() -= turns * &period;
    let fd = diff / Float::with_val(prec, &step * 2u32);
    let s_hat = -principal_root(z, &a);
    let exact = s_hat / Complex::with_val(prec, z * &a);
    Ok(abs(&(fd + exact)).to_f64())
}

/// `a(x)`, the saddle polynomial, its roots and `Re φ` at each root.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub n_cap: usize,
    pub x: Complex,
    pub a: Complex,
    pub p_coeffs: Vec<Complex>,
    pub saddles: Vec<Complex>,
    pub phi_at_saddles: Vec<Float>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalComplex {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralDocument {
    #[serde(rename = "N")]
    pub n_cap: usize,
    pub precision: u32,
    pub x: DecimalComplex,
    pub a: DecimalComplex,
    pub p_coeffs: Vec<DecimalComplex>,
    pub saddles: Vec<DecimalComplex>,
    pub phi_at_saddles: Vec<String>,
}

impl SpectralData {
    pub fn to_document(&self) -> SpectralDocument {
        let prec = prec_of(&self.x);
        let digits = decimal_digits(prec) as usize;
        let dc = |c: &Complex| DecimalComplex {
            re: float_string(c.real(), digits),
            im: float_string(c.imag(), digits),
        };
        SpectralDocument {
            n_cap: self.n_cap,
            precision: prec,
            x: dc(&self.x),
            a: dc(&self.a),
            p_coeffs: self.p_coeffs.iter().map(dc).collect(),
            saddles: self.saddles.iter().map(dc).collect(),
            phi_at_saddles: self.phi_at_saddles.iter().map(|f| float_string(f, digits)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("plain data serializes")
    }
}

pub fn saddle_values(x: &Complex, n_cap: usize) -> Result<SpectralData> {
    let a = branch_a(x, n_cap)?;
    let p_coeffs = p_polynomial(&a, n_cap)?;
    let saddles = saddles(&a, n_cap)?;
    let phi_at_saddles = saddles
        .iter()
        .map(|z| phi(z, &a, n_cap).map(|v| v.real().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralData {
        n_cap,
        x: x.clone(),
        a,
        p_coeffs,
        saddles,
        phi_at_saddles,
    })
}

/// `Re φ` at the positive real root of `P(z; a)` for real `a > 0`.
pub fn real_saddle_potential(a: &Float, n_cap: usize) -> Result<Float> {
    let prec = a.prec().max(MIN_PRECISION);
    let ac = Complex::with_val(prec, (a, 0));
    let (zetas, _) = aberth(&p_in_zeta(&ac, n_cap)?, prec)?;
    let tiny = Float::with_val(prec, Float::i_exp(1, 32 - prec as i32));
    let positive: Vec<&Complex> = zetas
        .iter()
        .filter(|z| Float::with_val(prec, z.imag().abs_ref()) <= tiny && z.real().is_sign_positive())
        .collect();
    if positive.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "expected one positive real saddle, found {}",
            positive.len()
        )));
    }
    let z = Complex::with_val(prec, (positive[0].real(), 0)).sqrt();
    Ok(phi(&z, &ac, n_cap)?.real().clone())
}

/// Roots of `z^{4N+2} + 1/4`, sorted by argument in `[0, 2π)`.
pub fn boutroux_branch_points(n_cap: usize, prec: u32) -> Result<Vec<Complex>> {
    check_n_cap(n_cap)?;
    let prec = prec.max(MIN_PRECISION);
    let mut coeffs = vec![Complex::new(prec); 4 * n_cap + 3];
    coeffs[0] = Complex::with_val(prec, 0.25);
    coeffs[4 * n_cap + 2] = Complex::with_val(prec, 1);
    let (mut roots, _) = aberth(&coeffs, prec)?;
    let angle = |c: &Complex| {
        let t = to_c64(c).arg();
        if t < 0.0 {
            t + 2.0 * PI
        } else {
            t
        }
    };
    roots.sort_by(|u, v| angle(u).total_cmp(&angle(v)));
    Ok(roots)
}

/// Largest `|Re ∮ R^{1/2} z^{−2N−2} dz|`, `R = z^{4N+2} + 1/4`, over the cycles
/// around consecutive branch points. Each cycle is twice the segment integral.
pub fn max_genus_boutroux_check(n_cap: usize, prec: u32) -> Result<f64> {
    let pts: Vec<Complex64> = boutroux_branch_points(n_cap, prec)?.iter().map(to_c64).collect();
    let m = pts.len();
    let mut worst = 0.0f64;
    for k in 0..m {
        let (b0, b1) = (pts[k], pts[(k + 1) % m]);
        let delta = b1 - b0;
        let mid = 0.5 * (b0 + b1);
        let others: Vec<Complex64> = (0..m).filter(|&j| j != k && j != (k + 1) % m).map(|j| pts[j]).collect();
        let c: Complex64 = others.iter().map(|&b| (mid - b).sqrt()).product();
        let integrand = |theta: f64| {
            let w = 0.5 * (1.0 - theta.cos());
            let z = b0 + delta * w;
            let g: Complex64 = others.iter().map(|&b| ((z - b) / (mid - b)).sqrt()).product();
            let half_sin = 0.5 * theta.sin();
            Complex64::i() * delta * delta * half_sin * half_sin * c * g / z.powu(2 * n_cap as u32 + 2)
        };
        let v = 2.0 * quadrature::integrate(integrand, 0.0, PI, 1e-14, 1e-13)?;
        worst = worst.max(v.re.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(prec: u32, re: f64, im: f64) -> Complex {
        Complex::with_val(prec, (re, im))
    }

    #[test]
    fn corner_values() {
        let x1 = real_corner(1, 256).unwrap().to_f64();
        assert!((x1 + 13.5f64.cbrt()).abs() < 1e-12);
        let x2 = real_corner(2, 256).unwrap().to_f64();
        assert!((x2 - 2.36021).abs() < 1e-4);
        assert!((corner_radius(2) - x2).abs() < 1e-12);
        let corners = star_corners(2, 256).unwrap();
        assert_eq!(corners.len(), 5);
        assert!((to_c64(&corners[0]) - Complex64::new(x2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn maclaurin_small_cases() {
        let z = c(256, 0.3, -0.2);
        let t = maclaurin_t(1, &Rational::from((-3, 2)), &z);
        assert!((to_c64(&t) - (1.0 - 1.5 * to_c64(&z))).norm() < 1e-15);
        assert_eq!(to_c64(&maclaurin_t(4, &Rational::from((1, 3)), &c(256, 0.0, 0.0))), Complex64::new(1.0, 0.0));
        let z = c(256, 1e-3, 0.0);
        for m in 0..4 {
            let t = maclaurin_t(m, &Rational::from((-1, 2)), &z).real().to_f64();
            let exact = 1.001f64.powf(-0.5);
            assert!((t - exact).abs() < 1e-3f64.powi(m as i32 + 1));
        }
    }

    #[test]
    fn p_polynomial_examples() {
        let a = c(256, 0.7, 0.2);
        let p = p_polynomial(&a, 2).unwrap();
        let inv_a3 = 1.0 / to_c64(&a).powu(3);
        assert!((to_c64(&p[2]) - 0.25 * inv_a3).norm() < 1e-14);
        assert!((to_c64(&p[0]) + 0.5 / to_c64(&a)).norm() < 1e-14);
        assert!(p[1].is_zero() && p[3].is_zero());
        assert_eq!(to_c64(&p[4]), Complex64::new(1.0, 0.0));
        assert!(matches!(p_polynomial(&c(256, 0.0, 0.0), 1), Err(Error::DegenerateA)));
    }

    #[test]
    fn branch_far_field() {
        for n_cap in 1..=3 {
            let x = c(256, 40.0, 25.0);
            let a = branch_a(&x, n_cap).unwrap();
            let gap = (to_c64(&a) - to_c64(&x) / 2.0).norm();
            // a − x/2 = c_N/(2a^{2N}) with |c_N| < 1
            assert!(gap < (abs(&x).to_f64() / 2.0).powi(-2 * n_cap as i32), "N = {n_cap}: {gap}");
            assert!(g2_residual(&x, &a, n_cap).to_f64() < 1e-60);
        }
        assert!(branch_a(&c(256, 0.0, 0.0), 2).is_err());
    }

    #[test]
    fn phi_vanishes_at_branch_point_limit() {
        let a = c(256, 0.8, 0.0);
        let z = c(256, 1e-30, 0.8);
        assert!(abs(&phi(&z, &a, 2).unwrap()).to_f64() < 1e-10);
        assert!(matches!(phi(&c(256, 0.0, 0.8), &a, 2), Err(Error::PoleOrBranchPoint)));
        assert!(matches!(phi(&c(256, 0.0, 0.0), &a, 2), Err(Error::PoleOrBranchPoint)));
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let a = c(256, 0.9, 0.3);
        let z = c(256, 1.1, 0.4);
        for n_cap in 1..=3 {
            let closed = to_c64(&phi(&z, &a, n_cap).unwrap());
            let quad = phi_by_quadrature(&z, &a, n_cap).unwrap();
            assert!(phi_distance(closed, quad) < 1e-10, "N = {n_cap}: {closed} vs {quad}");
        }
    }

    #[test]
    fn boutroux_points_modulus() {
        for n_cap in 1..=2 {
            let pts = boutroux_branch_points(n_cap, 256).unwrap();
            let target = 2f64.powf(-1.0 / (2 * n_cap + 1) as f64);
            for p in &pts {
                assert!((abs(p).to_f64() - target).abs() < 1e-14);
            }
        }
    }
}
