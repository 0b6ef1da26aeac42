use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Integer, Rational};

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial in `x` over the Gaussian rationals.
///
/// `coeffs[k]` is the coefficient of `x^k`. The leading coefficient is never
/// zero; the zero polynomial has no coefficients and degree `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XPolynomial {
    coeffs: Vec<ExactScalar>,
}

/// Below this size schoolbook multiplication on rationals beats the
/// common-denominator integer path.
const INTEGER_MUL_THRESHOLD: usize = 6;

impl XPolynomial {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(ExactScalar::is_zero) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactScalar::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(ExactScalar::one(), 1)
    }

    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(ExactScalar::is_one)
    }

    pub fn leading_coeff(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_rational(&Rational::from(k as u64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: &Complex) -> Complex {
        let prec = x.prec().0.max(x.prec().1);
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c.to_complex(prec);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(c·x)`.
    pub fn scale_argument(&self, c: &ExactScalar) -> Self {
        let mut pw = ExactScalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        Self::new(out)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &XPolynomial) -> Result<(XPolynomial, XPolynomial)> {
        let Some(lc) = d.leading_coeff() else {
            return Err(Error::DivisionByZero);
        };
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = lc.inv()?;
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut q = vec![ExactScalar::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let qk = top * &lc_inv;
            for (j, dj) in d.coeffs.iter().enumerate().take(dd) {
                if !dj.is_zero() {
                    let t = &qk * dj;
                    rem[k + j] -= &t;
                }
            }
            rem[k + dd] = ExactScalar::zero();
            q[k] = qk;
        }
        rem.truncate(dd);
        Ok((Self::new(q), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &XPolynomial) -> Result<XPolynomial> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                remainder_degree: r.degree(),
            });
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &XPolynomial) -> XPolynomial {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.monic(), other.monic())
        } else {
            (other.monic(), self.monic())
        };
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    fn mul_schoolbook(&self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    fn mul_integer(&self, rhs: &XPolynomial) -> XPolynomial {
        let a = IntegerForm::from_poly(self);
        let b = IntegerForm::from_poly(rhs);
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut re = vec![Integer::new(); len];
        let mut im = vec![Integer::new(); len];
        let real = a.im.is_none() && b.im.is_none();
        for (i, ar) in a.re.iter().enumerate() {
            if ar.is_zero() {
                continue;
            }
            for (j, br) in b.re.iter().enumerate() {
                re[i + j] += ar * br;
            }
        }
        if !real {
            if let Some(bim) = &b.im {
                for (i, ar) in a.re.iter().enumerate() {
                    for (j, bi) in bim.iter().enumerate() {
                        im[i + j] += ar * bi;
                    }
                }
            }
            if let Some(aim) = &a.im {
                for (i, ai) in aim.iter().enumerate() {
                    for (j, br) in b.re.iter().enumerate() {
                        im[i + j] += ai * br;
                    }
                    if let Some(bim) = &b.im {
                        for (j, bi) in bim.iter().enumerate() {
                            re[i + j] -= ai * bi;
                        }
                    }
                }
            }
        }
        let den = Integer::from(&a.den * &b.den);
        let coeffs = re
            .into_iter()
            .zip(im)
            .map(|(r, i)| {
                ExactScalar::new(
                    Rational::from((r, den.clone())),
                    Rational::from((i, den.clone())),
                )
            })
            .collect();
        Self::new(coeffs)
    }
}

/// `p = (re + i·im) / den` with integer coefficient vectors.
struct IntegerForm {
    re: Vec<Integer>,
    im: Option<Vec<Integer>>,
    den: Integer,
}

impl IntegerForm {
    fn from_poly(p: &XPolynomial) -> Self {
        let mut den = Integer::from(1);
        let mut complex = false;
        for c in &p.coeffs {
            den.lcm_mut(c.re().denom());
            if !c.is_real() {
                complex = true;
                den.lcm_mut(c.im().denom());
            }
        }
        let lift = |r: &Rational| -> Integer {
            let f = Integer::from(&den / r.denom());
            Integer::from(r.numer() * &f)
        };
        let re = p.coeffs.iter().map(|c| lift(c.re())).collect();
        let im = complex.then(|| p.coeffs.iter().map(|c| lift(c.im())).collect());
        IntegerForm { re, im, den }
    }
}

impl<'a> Add<&'a XPolynomial> for &'a XPolynomial {
    type Output = XPolynomial;
    fn add(self, rhs: &XPolynomial) -> XPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += s;
        }
        XPolynomial::new(out)
    }
}

impl<'a> Sub<&'a XPolynomial> for &'a XPolynomial {
    type Output = XPolynomial;
    fn sub(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), ExactScalar::zero());
        }
        for (o, s) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= s;
        }
        XPolynomial::new(out)
    }
}

impl<'a> Mul<&'a XPolynomial> for &'a XPolynomial {
    type Output = XPolynomial;
    fn mul(self, rhs: &XPolynomial) -> XPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return XPolynomial::zero();
        }
        if self.coeffs.len().min(rhs.coeffs.len()) < INTEGER_MUL_THRESHOLD {
            self.mul_schoolbook(rhs)
        } else {
            self.mul_integer(rhs)
        }
    }
}

impl Neg for &XPolynomial {
    type Output = XPolynomial;
    fn neg(self) -> XPolynomial {
        XPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<XPolynomial> for XPolynomial {
            type Output = XPolynomial;
            fn $m(self, rhs: XPolynomial) -> XPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a XPolynomial> for XPolynomial {
            type Output = XPolynomial;
            fn $m(self, rhs: &XPolynomial) -> XPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}
