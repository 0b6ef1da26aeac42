//! Multiprecision Aberth–Ehrlich root finding and the scaled VY root sets.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Assign, Complex, Float};

use crate::error::{Error, Result};
use crate::exact::XPolynomial;
use crate::symfunc::TimesSpec;
use crate::vy::qn_schur;

const MAX_SWEEPS: usize = 2000;
const SEED: u64 = 0x5eed_0fab;

/// Roots of a polynomial, optionally the rescaled VY root set `𝔯_n^{[N]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub n: Option<usize>,
    pub n_cap: Option<usize>,
    pub scaled: bool,
    pub roots: Vec<Complex>,
    /// `max |p(r)/p'(r)|` over the returned roots plus the rounding floor, in
    /// the same variable as `roots`. Kept as a 64-bit `Float` because at high
    /// precision it lies far below the `f64` range.
    pub residual_bound: Float,
    pub precision: u32,
}

/// Default working precision for a polynomial of the given degree.
pub fn default_precision(degree: usize) -> u32 {
    256.max(16 * degree as u32)
}

fn decimal_digits(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

pub(crate) fn float_string(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.to_string_radix(10, Some(digits))
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| Float::with_val(64, r.abs_ref()).to_f64())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .map(|r| Complex64::new(r.real().to_f64(), r.imag().to_f64()))
            .collect()
    }

    /// One `re,im` row per root after a `#` metadata line and a column header.
    pub fn to_csv(&self) -> String {
        let digits = decimal_digits(self.precision);
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        let mut out = format!(
            "# n={},N={},scaled={},residual_bound={}\nre,im\n",
            opt(self.n),
            opt(self.n_cap),
            self.scaled,
            float_string(&self.residual_bound, 6)
        );
        for r in &self.roots {
            let _ = writeln!(out, "{},{}", float_string(r.real(), digits), float_string(r.imag(), digits));
        }
        out
    }

    /// Reads the CSV layout written by [`RootSet::to_csv`].
    pub fn from_csv(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let meta = lines
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .ok_or_else(|| Error::Parse("missing root set header".into()))?;
        let mut rs = RootSet {
            n: None,
            n_cap: None,
            scaled: false,
            roots: Vec::new(),
            residual_bound: Float::new(64),
            precision: 128,
        };
        for field in meta.trim().split(',') {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
            let bad = |_| Error::Parse(format!("bad value for {k}: {v:?}"));
            match k {
                "n" => rs.n = v.parse().ok(),
                "N" => rs.n_cap = v.parse().ok(),
                "scaled" => rs.scaled = v.parse().map_err(|_| Error::Parse(format!("bad flag {v:?}")))?,
                "residual_bound" => rs.residual_bound = Float::with_val(64, Float::parse(v).map_err(bad)?),
                _ => {}
            }
        }
        let mut rows = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty() && l.trim() != "re,im") {
            let (re, im) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad root row {line:?}")))?;
            rows.push((re.trim().to_string(), im.trim().to_string()));
        }
        let longest = rows.iter().map(|(a, b)| a.len().max(b.len())).max().unwrap_or(0);
        rs.precision = 128.max((longest as f64 / std::f64::consts::LOG10_2) as u32);
        for (re, im) in rows {
            let parse = |s: &str| {
                Float::parse(s)
                    .map(|p| Float::with_val(rs.precision, p))
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            };
            rs.roots.push(Complex::with_val(rs.precision, (parse(&re)?, parse(&im)?)));
        }
        Ok(rs)
    }
}

fn horner(coeffs: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
    let n = coeffs.len() - 1;
    let mut p = coeffs[n].clone();
    let mut dp = Complex::new(prec);
    for c in coeffs[..n].iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += c;
    }
    (p, dp)
}

fn ln_abs(c: &Complex) -> Option<f64> {
    if c.is_zero() {
        None
    } else {
        Some(Float::with_val(64, c.abs_ref()).ln().to_f64())
    }
}

/// Fujiwara bound on the root moduli of `Σ c_k z^k`.
fn fujiwara_radius(coeffs: &[Complex]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = ln_abs(&coeffs[n]).expect("nonzero leading coefficient");
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        if let Some(l) = ln_abs(&coeffs[n - k]) {
            let extra = if k == n { -std::f64::consts::LN_2 } else { 0.0 };
            best = best.max((l - lead + extra) / k as f64);
        }
    }
    if best == f64::NEG_INFINITY {
        return 1.0;
    }
    2.0 * best.exp()
}

fn sweeps(coeffs: &[Complex], z: &mut [Complex], prec: u32, max_sweeps: usize) -> (bool, f64) {
    let n = z.len();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2));
    let mut active = vec![true; n];
    let mut last = f64::INFINITY;
    let mut s = Complex::new(prec);
    let mut d = Complex::new(prec);
    for _ in 0..max_sweeps {
        let mut worst = 0.0f64;
        let mut any = false;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            any = true;
            let (p, dp) = horner(coeffs, &z[i], prec);
            if p.is_zero() {
                active[i] = false;
                continue;
            }
            s.assign((0, 0));
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    d.assign(&z[i] - zj);
                    d.recip_mut();
                    s += &d;
                }
            }
            // w = p / (p' − p S)
            d.assign(&p * &s);
            let mut den = Complex::with_val(prec, &dp - &d);
            if den.is_zero() {
                den = Complex::with_val(prec, (Float::i_exp(1, -(prec as i32) / 4), 0));
            }
            let w = Complex::with_val(prec, &p / &den);
            z[i] -= &w;
            let wa = Float::with_val(prec, w.abs_ref());
            let scale = Float::with_val(prec, z[i].abs_ref()).max(&Float::with_val(prec, 1));
            if wa <= Float::with_val(prec, &tol * &scale) {
                active[i] = false;
            }
            worst = worst.max((wa / scale).to_f64());
        }
        last = worst;
        if !any {
            return (true, 0.0);
        }
    }
    (false, last)
}

/// `max |p/p'|` over `z`, floored by the rounding noise of evaluating `p` at `prec` bits.
fn newton_bound(coeffs: &[Complex], z: &[Complex], prec: u32) -> Float {
    let mut bound = Float::new(64);
    let eps = Float::with_val(64, Float::i_exp(1, -(prec as i32)));
    for zi in z {
        let (p, dp) = horner(coeffs, zi, prec);
        let r = Float::with_val(64, zi.abs_ref());
        let mut size = Float::new(64);
        for c in coeffs.iter().rev() {
            size *= &r;
            size += Float::with_val(64, c.abs_ref());
        }
        let num = Float::with_val(64, p.abs_ref()) + size * &eps;
        let den = Float::with_val(64, dp.abs_ref());
        let q = if den.is_zero() {
            Float::with_val(64, rug::float::Special::Infinity)
        } else {
            num / den
        };
        if q > bound {
            bound = q;
        }
    }
    bound
}

/// All roots of `Σ coeffs[k] z^k` at the given precision, with the final
/// Newton-correction bound. The leading coefficient must be nonzero.
///
/// High-degree problems are first iterated at an eighth of the precision and then
/// refined, which takes a few sweeps since the final stage starts in the
/// quadratic regime.
pub fn aberth(coeffs: &[Complex], prec: u32) -> Result<(Vec<Complex>, Float)> {
    if coeffs.len() < 2 || coeffs.last().is_none_or(|c| c.is_zero()) {
        return Err(Error::InvalidArgument("root finding needs a nonconstant polynomial".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let coeffs: Vec<Complex> = coeffs[zeros..].iter().map(|c| Complex::with_val(prec, c)).collect();
    let mut out: Vec<Complex> = (0..zeros).map(|_| Complex::new(prec)).collect();
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok((out, Float::new(64)));
    }

    let radius = fujiwara_radius(&coeffs);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    let offset = rng.gen::<f64>() * 2.0 * PI / n as f64;
    let start: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let th = offset + 2.0 * PI * k as f64 / n as f64 + 0.25 * rng.gen::<f64>() / n as f64;
            (radius * th.cos(), radius * th.sin())
        })
        .collect();

    let coarse = (prec / 8).max(128);
    let mut z: Vec<Complex>;
    if n >= 32 && coarse < prec {
        let low: Vec<Complex> = coeffs.iter().map(|c| Complex::with_val(coarse, c)).collect();
        let mut zl: Vec<Complex> = start.iter().map(|&p| Complex::with_val(coarse, p)).collect();
        // an unconverged coarse stage is still a good start for the fine one
        let _ = sweeps(&low, &mut zl, coarse, MAX_SWEEPS);
        z = zl.iter().map(|c| Complex::with_val(prec, c)).collect();
    } else {
        z = start.iter().map(|&p| Complex::with_val(prec, p)).collect();
    }
    let (done, last) = sweeps(&coeffs, &mut z, prec, MAX_SWEEPS);
    if !done {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            correction: last,
            best_iterate: z,
        });
    }
    let bound = newton_bound(&coeffs, &z, prec);
    out.extend(z);
    Ok((out, bound))
}

/// Converts exact coefficients after dividing by the largest magnitude.
pub fn scaled_coefficients(p: &XPolynomial, prec: u32) -> Vec<Complex> {
    let cs: Vec<Complex> = p.coeffs().iter().map(|c| c.to_complex(prec)).collect();
    let big = cs
        .iter()
        .map(|c| Float::with_val(prec, c.abs_ref()))
        .fold(Float::with_val(prec, 0), |a, b| if b > a { b } else { a });
    if big.is_zero() {
        return cs;
    }
    cs.into_iter().map(|c| c / &big).collect()
}

/// Aberth–Ehrlich roots of `p` at `precision` bits.
pub fn find_roots(p: &XPolynomial, precision: u32) -> Result<RootSet> {
    if p.degree() < 1 {
        return Err(Error::InvalidArgument("root finding needs a nonconstant polynomial".into()));
    }
    let prec = precision.max(128);
    let (roots, residual_bound) = aberth(&scaled_coefficients(p, prec), prec)?;
    Ok(RootSet {
        n: None,
        n_cap: None,
        scaled: false,
        roots,
        residual_bound,
        precision: prec,
    })
}

/// `n^{2N/(2N+1)}`.
pub fn root_scale(n: usize, n_cap: usize, prec: u32) -> Float {
    let e = Float::with_val(prec, 2 * n_cap) / Float::with_val(prec, 2 * n_cap + 1);
    Float::with_val(prec, n).pow(e)
}

/// Roots of the higher VY polynomial `Q_n^{[N]}` divided by `n^{2N/(2N+1)}`.
pub fn scaled_root_set(n: usize, n_cap: usize, precision: Option<u32>) -> Result<RootSet> {
    let t = TimesSpec::new(n_cap)?;
    let q = qn_schur(n, &t)?;
    let deg = n * (n + 1) / 2;
    let prec = precision.unwrap_or_else(|| default_precision(deg)).max(128);
    let mut rs = if deg == 0 {
        RootSet {
            n: None,
            n_cap: None,
            scaled: false,
            roots: Vec::new(),
            residual_bound: Float::new(64),
            precision: prec,
        }
    } else {
        find_roots(q.poly(), prec)?
    };
    if n > 0 {
        let scale = root_scale(n, n_cap, prec);
        for r in &mut rs.roots {
            *r /= &scale;
        }
        rs.residual_bound /= &scale;
    }
    rs.n = Some(n);
    rs.n_cap = Some(n_cap);
    rs.scaled = true;
    Ok(rs)
}

/// Largest distance from `ω r` to the set, `ω = e^{2πi/(2N+1)}`.
pub fn rotation_pairing_error(roots: &[Complex], n_cap: usize) -> Float {
    let Some(prec) = roots.first().map(|r| r.prec().0) else {
        return Float::new(64);
    };
    let th = Float::with_val(prec, rug::float::Constant::Pi) * 2u32 / Float::with_val(prec, 2 * n_cap + 1);
    let omega = Complex::with_val(prec, (th.clone().cos(), th.sin()));
    let mut worst = Float::new(64);
    for r in roots {
        let w = Complex::with_val(prec, r * &omega);
        let best = roots
            .iter()
            .map(|s| Float::with_val(64, Complex::with_val(prec, &w - s).abs_ref()))
            .min_by(|a, b| a.total_cmp(b))
            .expect("nonempty");
        if best > worst {
            worst = best;
        }
    }
    worst
}

/// `|Σ r + c_{d−1}/c_d|` for the roots of `p`, dividing the target by
/// the root scale when the set is scaled.
pub fn vieta_sum_error(p: &XPolynomial, rs: &RootSet) -> Float {
    let d = p.degree();
    let prec = rs.precision;
    if d < 1 {
        return Float::new(64);
    }
    let lead = p.coeff(d as usize).to_complex(prec);
    let next = p.coeff(d as usize - 1).to_complex(prec);
    let mut sum = Complex::with_val(prec, &next / &lead);
    if rs.scaled {
        if let Some(n) = rs.n.filter(|&n| n > 0) {
            sum /= root_scale(n, rs.n_cap.unwrap_or(0), prec);
        }
    }
    for r in &rs.roots {
        sum += r;
    }
    Float::with_val(64, sum.abs_ref())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentReport {
    pub max_modulus: f64,
    pub corner_radius: f64,
    /// `max_modulus − corner_radius`.
    pub excess: f64,
    /// Per-root distance to the nearest locus segment, when arcs are supplied.
    pub arc_distances: Option<Vec<f64>>,
}

/// Compares a scaled root set with the star-corner radius and, optionally, a traced locus.
pub fn containment_report(rs: &RootSet, n_cap: usize, arcs: Option<&crate::asymptotics::LocusArcs>) -> Result<ContainmentReport> {
    if !rs.scaled {
        return Err(Error::InvalidArgument("containment needs a scaled root set".into()));
    }
    let corner_radius = crate::asymptotics::corner_radius(n_cap);
    let max_modulus = rs.max_modulus();
    let arc_distances = arcs.map(|a| rs.to_f64().iter().map(|&r| a.distance_to(r)).collect());
    Ok(ContainmentReport {
        max_modulus,
        corner_radius,
        excess: max_modulus - corner_radius,
        arc_distances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(c: &Complex) -> Float {
        Float::with_val(c.prec().0, c.abs_ref())
    }

    #[test]
    fn cube_roots_of_minus_four() {
        let rs = find_roots(&XPolynomial::from_ints(&[4, 0, 0, 1]), 256).unwrap();
        assert_eq!(rs.len(), 3);
        for r in &rs.roots {
            let cube = crate::asymptotics::pow_u(r, 3);
            let err = Float::with_val(256, (cube + 4u32).abs_ref()).to_f64();
            assert!(err < 1e-60, "{err}");
        }
        assert!(rs.residual_bound < 1e-60 && rs.residual_bound > 0);
    }

    #[test]
    fn linear_and_zero_roots() {
        let rs = find_roots(&XPolynomial::x(), 128).unwrap();
        assert_eq!(rs.len(), 1);
        assert!(rs.roots[0].is_zero());
        let rs = find_roots(&XPolynomial::from_ints(&[0, 0, -1, 1]), 128).unwrap();
        let zeros = rs.roots.iter().filter(|r| r.is_zero()).count();
        assert_eq!(zeros, 2);
        assert!(find_roots(&XPolynomial::from_ints(&[3]), 128).is_err());
    }

    #[test]
    fn scaled_q2_on_unit_circle() {
        let rs = scaled_root_set(2, 1, None).unwrap();
        for r in &rs.roots {
            assert!((modulus(r).to_f64() - 1.0).abs() < 1e-40);
        }
        let one = scaled_root_set(1, 2, None).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.roots[0].is_zero());
    }

    #[test]
    fn csv_round_trip() {
        let rs = scaled_root_set(3, 1, Some(128)).unwrap();
        let back = RootSet::from_csv(&rs.to_csv()).unwrap();
        assert_eq!(back.n, Some(3));
        assert!(back.scaled);
        assert_eq!(back.len(), 6);
        for (a, b) in rs.roots.iter().zip(&back.roots) {
            assert!(Float::with_val(128, Complex::with_val(128, a - b).abs_ref()).to_f64() < 1e-30);
        }
    }
}
