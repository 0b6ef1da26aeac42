//! Determinants over exact integral domains.

use super::poly::XPolynomial;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// The ring operations fraction-free elimination needs.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, rhs: &Self) -> Result<Self>;
}

impl ExactRing for XPolynomial {
    fn zero() -> Self {
        XPolynomial::zero()
    }
    fn one() -> Self {
        XPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        XPolynomial::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        XPolynomial::exact_div(self, rhs)
    }
}

impl ExactRing for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }
}

fn check_square<R>(m: &[Vec<R>]) -> Result<usize> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    Ok(n)
}

/// Bareiss fraction-free elimination. Every division is exact and checked.
pub fn det_fraction_free<R: ExactRing>(m: &[Vec<R>]) -> Result<R> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(R::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let t = pivot_row[k].mul(&row[j]).sub(&row[k].mul(&pivot_row[j]));
                row[j] = t.exact_div(&prev)?;
            }
            row[k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Laplace expansion along the first row. Exponential cost; reference use only.
pub fn det_cofactor<R: ExactRing>(m: &[Vec<R>]) -> Result<R> {
    let n = check_square(m)?;
    Ok(cofactor_rec(m, n))
}

fn cofactor_rec<R: ExactRing>(m: &[Vec<R>], n: usize) -> R {
    match n {
        0 => R::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = R::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul(&cofactor_rec(&minor, n - 1));
                acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}
