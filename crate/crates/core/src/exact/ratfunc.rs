use std::fmt;

use super::poly::XPolynomial;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Quotient `num/den` of polynomials, kept coprime with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XRationalFunction {
    num: XPolynomial,
    den: XPolynomial,
}

impl XRationalFunction {
    pub fn new(num: XPolynomial, den: XPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: XPolynomial, den: XPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            return XRationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        XRationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        XRationalFunction {
            num: XPolynomial::zero(),
            den: XPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(XPolynomial::one())
    }

    pub fn from_poly(p: XPolynomial) -> Self {
        XRationalFunction {
            num: p,
            den: XPolynomial::one(),
        }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_poly(XPolynomial::constant(c))
    }

    pub fn num(&self) -> &XPolynomial {
        &self.num
    }

    pub fn den(&self) -> &XPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Re-runs normalization; a no-op on values built through this API.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        Self::normalized(num, &a * &rhs.den)
    }

    pub fn neg(&self) -> Self {
        XRationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Self::normalized(&n1 * &n2, &d1 * &d2)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XRationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn derivative(&self) -> Self {
        // (n/d)' = (n' d - n d') / d²; with g = gcd(d, d') the shared factor cancels early
        let dprime = self.den.derivative();
        if dprime.is_zero() {
            return XRationalFunction {
                num: self.num.derivative(),
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&dprime);
        let d_over_g = self.den.exact_div(&g).expect("gcd divides");
        let dp_over_g = dprime.exact_div(&g).expect("gcd divides");
        let num = &(&self.num.derivative() * &d_over_g) - &(&self.num * &dp_over_g);
        Self::normalized(num, &self.den * &d_over_g)
    }

    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(x) / &d)
    }
}

/// `(p''·p − p'·p')/p²`, the second logarithmic derivative of `p`.
pub fn rf_log_second_derivative(p: &XPolynomial) -> Result<XRationalFunction> {
    if p.is_zero() {
        return Err(Error::LogOfZero);
    }
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let num = &(&d2 * p) - &(&d1 * &d1);
    XRationalFunction::new(num, p * p)
}

/// `p'/p`.
pub fn rf_log_derivative(p: &XPolynomial) -> Result<XRationalFunction> {
    if p.is_zero() {
        return Err(Error::LogOfZero);
    }
    XRationalFunction::new(p.derivative(), p.clone())
}

impl fmt::Display for XRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}
