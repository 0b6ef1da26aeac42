use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::{Complex, Integer, Rational};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i` with both parts kept in lowest terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    re: Rational,
    im: Rational,
}

impl ExactScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        ExactScalar { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    pub fn i() -> Self {
        ExactScalar::new(Rational::new(), Rational::from(1))
    }

    /// The real rational `num/den`. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from(Rational::from((num, den)))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_one(&self) -> bool {
        self.im.cmp0().is_eq() && self.re == 1
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn conj(&self) -> Self {
        ExactScalar::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `|z|²` as an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Self::from(Rational::from(self.re.recip_ref())));
        }
        let n = self.norm_sqr();
        Ok(ExactScalar::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if self.is_real() {
            return Self::from(Rational::from(&self.re * r));
        }
        ExactScalar::new(Rational::from(&self.re * r), Rational::from(&self.im * r))
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (&self.re, &self.im))
    }

    /// Approximate `f64` parts, for diagnostics only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> Integer {
        self.re.denom().clone().lcm(self.im.denom())
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::new(Rational::from(v), Rational::new())
    }
}

impl From<i32> for ExactScalar {
    fn from(v: i32) -> Self {
        Self::from(v as i64)
    }
}

impl From<Integer> for ExactScalar {
    fn from(v: Integer) -> Self {
        ExactScalar::new(Rational::from(v), Rational::new())
    }
}

impl From<Rational> for ExactScalar {
    fn from(v: Rational) -> Self {
        ExactScalar::new(v, Rational::new())
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        match (self.is_real(), rhs.is_real()) {
            (true, true) => ExactScalar::from(Rational::from(&self.re * &rhs.re)),
            (true, false) => rhs.mul_rational(&self.re),
            (false, true) => self.mul_rational(&rhs.re),
            (false, false) => {
                let rr = Rational::from(&self.re * &rhs.re);
                let ii = Rational::from(&self.im * &rhs.im);
                let ri = Rational::from(&self.re * &rhs.im);
                let ir = Rational::from(&self.im * &rhs.re);
                ExactScalar::new(rr - ii, ri + ir)
            }
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::inv`] for a checked inverse.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        if rhs.is_real() {
            assert!(!rhs.is_zero(), "division by zero");
            return ExactScalar::new(
                Rational::from(&self.re / &rhs.re),
                Rational::from(&self.im / &rhs.re),
            );
        }
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        if !rhs.is_real() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        if !rhs.is_real() {
            self.im -= &rhs.im;
        }
    }
}

/// Canonical text form: `p/q` for reals, `p/q+r/si` or `p/q-r/si` otherwise.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.cmp0().is_lt() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, Rational::from(self.im.abs_ref()))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    Rational::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ExactScalar::from(parse_rational(s)?));
        };
        // split at the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or_else(|| Error::Parse(format!("{s:?}: missing real part")))?;
        let (re, im) = body.split_at(split);
        let im = im.strip_prefix('+').unwrap_or(im);
        Ok(ExactScalar::new(parse_rational(re)?, parse_rational(im)?))
    }
}
