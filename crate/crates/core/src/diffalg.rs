//! Differential polynomials in `u, u_x, u_xx, …`, the Lenard recursion and the
//! Painlevé II hierarchy operator.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, Partition, XPolynomial, XRationalFunction};
use crate::symfunc::TimesSpec;

/// Dense exponent vector `(e_0, e_1, …, e_m)` with `e_m > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key(Vec<u32>);

impl Key {
    fn from_map(m: &BTreeMap<usize, u32>) -> Key {
        let len = m.keys().next_back().map_or(0, |&i| i + 1);
        let mut v = vec![0; len];
        for (&i, &e) in m {
            v[i] = e;
        }
        Key(v).trimmed()
    }

    fn trimmed(mut self) -> Key {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &e)| e as usize * (i + 2)).sum()
    }

    fn mul(&self, rhs: &Key) -> Key {
        let n = self.0.len().max(rhs.0.len());
        Key((0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + rhs.0.get(i).copied().unwrap_or(0))
            .collect())
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `coeff · Π u_{(i)}^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    pub coeff: ExactScalar,
    /// Derivative order to exponent; no zero exponents.
    pub exponents: BTreeMap<usize, u32>,
}

impl DiffMonomial {
    /// `u` has weight 2 and every x-derivative adds 1.
    pub fn weight(&self) -> usize {
        self.exponents.iter().map(|(&i, &e)| e as usize * (i + 2)).sum()
    }
}

/// A differential polynomial, fully combined and stored in canonical order:
/// by highest derivative order, then by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPolynomial {
    terms: BTreeMap<Key, ExactScalar>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Key(vec![]), c);
        p
    }

    /// `u_{(order)}`: `u`, `u_x`, `u_xx`, …
    pub fn u(order: usize) -> Self {
        let mut v = vec![0; order + 1];
        v[order] = 1;
        let mut p = Self::zero();
        p.add_term(Key(v), ExactScalar::one());
        p
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = DiffMonomial>) -> Self {
        let mut p = Self::zero();
        for m in ms {
            if m.exponents.values().any(|&e| e == 0) {
                panic!("zero exponent in differential monomial");
            }
            p.add_term(Key::from_map(&m.exponents), m.coeff);
        }
        p
    }

    fn add_term(&mut self, k: Key, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn monomials(&self) -> Vec<DiffMonomial> {
        self.terms
            .iter()
            .map(|(k, c)| DiffMonomial {
                coeff: c.clone(),
                exponents: k
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order that occurs, `None` for constants.
    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0.len()).max().filter(|&l| l > 0).map(|l| l - 1)
    }

    pub fn is_homogeneous(&self, weight: usize) -> bool {
        self.terms.keys().all(|k| k.weight() == weight)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        DiffPolynomial {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.mul(kb), ca * cb);
            }
        }
        out
    }

    pub fn d_total(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            for (i, &e) in k.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut v = k.0.clone();
                v[i] -= 1;
                if v.len() == i + 1 {
                    v.push(0);
                }
                v[i + 1] += 1;
                out.add_term(Key(v).trimmed(), c.mul_rational(&rug::Rational::from(e)));
            }
        }
        out
    }

    /// Replaces `u` by the differential polynomial `q`, so `u_{(i)} ↦ D^i q`.
    pub fn compose(&self, q: &DiffPolynomial) -> DiffPolynomial {
        substitute(self, q)
    }
}

/// Total x-derivative.
pub fn d_total(p: &DiffPolynomial) -> DiffPolynomial {
    p.d_total()
}

fn order_name(i: usize) -> String {
    match i {
        0 => "u".into(),
        1..=4 => format!("u_{}", "x".repeat(i)),
        _ => format!("u_({i})"),
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = k
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { order_name(i) } else { format!("{}^{e}", order_name(i)) })
                .collect();
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "({c})*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `(D³ + 4uD + 2u_x) p`.
pub fn lenard_operator(p: &DiffPolynomial) -> DiffPolynomial {
    let d1 = p.d_total();
    let d3 = d1.d_total().d_total();
    let four = ExactScalar::from(4);
    let two = ExactScalar::from(2);
    d3.add(&DiffPolynomial::u(0).mul(&d1).scale(&four))
        .add(&DiffPolynomial::u(1).mul(p).scale(&two))
}

/// All monomials `Π u_{(i)}^{e_i}` of the given positive weight.
fn monomial_basis(weight: usize) -> Vec<Key> {
    Partition::all_of(weight)
        .into_iter()
        .filter(|p| p.parts().iter().all(|&q| q >= 2))
        .map(|p| {
            let mut v = vec![0u32; p.parts()[0] - 1];
            for &q in p.parts() {
                v[q - 2] += 1;
            }
            Key(v)
        })
        .collect()
}

/// Solves `A c = b` exactly; `None` when inconsistent or rank deficient.
#[allow(clippy::needless_range_loop)]
fn solve_exact(mut a: Vec<Vec<ExactScalar>>, mut b: Vec<ExactScalar>, cols: usize) -> Option<Vec<ExactScalar>> {
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv().ok()?;
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &b[r] * &f;
                b[i] = &b[i] - &t;
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(b[..cols].to_vec())
}

/// Finds the differential polynomial of weight `weight` without constant term
/// whose total derivative is `rhs`.
fn integrate(rhs: &DiffPolynomial, weight: usize, level: usize) -> Result<DiffPolynomial> {
    let basis = monomial_basis(weight);
    let derivs: Vec<DiffPolynomial> = basis
        .iter()
        .map(|k| {
            let mut p = DiffPolynomial::zero();
            p.add_term(k.clone(), ExactScalar::one());
            p.d_total()
        })
        .collect();
    let mut row_keys: Vec<Key> = rhs.terms.keys().cloned().collect();
    for d in &derivs {
        row_keys.extend(d.terms.keys().cloned());
    }
    row_keys.sort();
    row_keys.dedup();
    let a: Vec<Vec<ExactScalar>> = row_keys
        .iter()
        .map(|k| derivs.iter().map(|d| d.terms.get(k).cloned().unwrap_or_default()).collect())
        .collect();
    let b: Vec<ExactScalar> = row_keys.iter().map(|k| rhs.terms.get(k).cloned().unwrap_or_default()).collect();
    let c = solve_exact(a, b, basis.len()).ok_or(Error::LenardIntegration(level))?;
    let mut out = DiffPolynomial::zero();
    for (k, v) in basis.into_iter().zip(c) {
        out.add_term(k, v);
    }
    Ok(out)
}

static LENARD: LazyLock<RwLock<Vec<DiffPolynomial>>> =
    LazyLock::new(|| RwLock::new(vec![DiffPolynomial::constant(ExactScalar::ratio(1, 2))]));

/// `𝓛_N[u]`, with `𝓛_0 = 1/2`, `D 𝓛_{N+1} = (D³ + 4uD + 2u_x) 𝓛_N` and `𝓛_N[0] = 0`.
pub fn lenard(n: usize) -> Result<DiffPolynomial> {
    {
        let table = LENARD.read().expect("lenard table poisoned");
        if let Some(p) = table.get(n) {
            return Ok(p.clone());
        }
    }
    let mut table = LENARD.write().expect("lenard table poisoned");
    while table.len() <= n {
        let k = table.len();
        let next = integrate(&lenard_operator(&table[k - 1]), 2 * k, k)?;
        table.push(next);
    }
    Ok(table[n].clone())
}

/// A differential ring in which differential polynomials can be evaluated.
pub trait DiffRing: Clone {
    fn zero_like(&self) -> Self;
    fn constant_like(&self, c: &ExactScalar) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &ExactScalar) -> Self;
    fn derivative(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A differential ring of functions of `x`.
pub trait DiffField: DiffRing {
    fn x_like(&self) -> Self;
}

impl DiffRing for XRationalFunction {
    fn zero_like(&self) -> Self {
        XRationalFunction::zero()
    }
    fn constant_like(&self, c: &ExactScalar) -> Self {
        XRationalFunction::constant(c.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        XRationalFunction::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        XRationalFunction::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        XRationalFunction::mul(self, rhs)
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        XRationalFunction::scale(self, c)
    }
    fn derivative(&self) -> Self {
        XRationalFunction::derivative(self)
    }
    fn is_zero(&self) -> bool {
        XRationalFunction::is_zero(self)
    }
}

impl DiffField for XRationalFunction {
    fn x_like(&self) -> Self {
        XRationalFunction::from_poly(XPolynomial::x())
    }
}

impl DiffRing for DiffPolynomial {
    fn zero_like(&self) -> Self {
        DiffPolynomial::zero()
    }
    fn constant_like(&self, c: &ExactScalar) -> Self {
        DiffPolynomial::constant(c.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        DiffPolynomial::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        DiffPolynomial::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        DiffPolynomial::mul(self, rhs)
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        DiffPolynomial::scale(self, c)
    }
    fn derivative(&self) -> Self {
        self.d_total()
    }
    fn is_zero(&self) -> bool {
        DiffPolynomial::is_zero(self)
    }
}

/// `num / base^exp` with a shared base and no cancellation.
///
/// Every operation stays in the ring `K[x][1/base]`, so no gcd is ever taken.
#[derive(Clone, Debug)]
pub struct PoweredFraction {
    num: XPolynomial,
    base: Arc<XPolynomial>,
    exp: u32,
}

impl PoweredFraction {
    pub fn new(num: XPolynomial, base: Arc<XPolynomial>, exp: u32) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PoweredFraction { num, base, exp })
    }

    pub fn from_poly(p: XPolynomial, base: Arc<XPolynomial>) -> Result<Self> {
        Self::new(p, base, 0)
    }

    pub fn num(&self) -> &XPolynomial {
        &self.num
    }

    pub fn base(&self) -> &XPolynomial {
        &self.base
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    /// Numerator over `base^e`, `e ≥ exp`.
    pub fn numerator_at(&self, e: u32) -> XPolynomial {
        assert!(e >= self.exp);
        if e == self.exp {
            self.num.clone()
        } else {
            &self.num * &self.base.pow(e - self.exp)
        }
    }

    pub fn to_rational_function(&self) -> XRationalFunction {
        XRationalFunction::new(self.num.clone(), self.base.pow(self.exp)).expect("nonzero base")
    }

    fn with(&self, num: XPolynomial, exp: u32) -> Self {
        PoweredFraction {
            num,
            base: self.base.clone(),
            exp,
        }
    }

    fn check_base(&self, rhs: &Self) {
        debug_assert!(Arc::ptr_eq(&self.base, &rhs.base) || self.base == rhs.base, "mismatched bases");
    }
}

impl DiffRing for PoweredFraction {
    fn zero_like(&self) -> Self {
        self.with(XPolynomial::zero(), 0)
    }
    fn constant_like(&self, c: &ExactScalar) -> Self {
        self.with(XPolynomial::constant(c.clone()), 0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check_base(rhs);
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        let e = self.exp.max(rhs.exp);
        self.with(&self.numerator_at(e) + &rhs.numerator_at(e), e)
    }
    fn sub(&self, rhs: &Self) -> Self {
        DiffRing::add(self, &rhs.with(-&rhs.num, rhs.exp))
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check_base(rhs);
        if self.num.is_zero() || rhs.num.is_zero() {
            return self.zero_like();
        }
        self.with(&self.num * &rhs.num, self.exp + rhs.exp)
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        self.with(self.num.scale(c), self.exp)
    }
    fn derivative(&self) -> Self {
        // (n/b^e)' = (n'b − e·n·b')/b^{e+1}
        if self.exp == 0 {
            return self.with(self.num.derivative(), 0);
        }
        let e = ExactScalar::from(self.exp as i64);
        let num = &(&self.num.derivative() * &self.base) - &(&self.num * &self.base.derivative()).scale(&e);
        self.with(num, self.exp + 1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl DiffField for PoweredFraction {
    fn x_like(&self) -> Self {
        self.with(XPolynomial::x(), 0)
    }
}

/// Replaces each `u_{(i)}` by the `i`-th derivative of `u_val`.
pub fn substitute<R: DiffRing>(p: &DiffPolynomial, u_val: &R) -> R {
    let Some(max) = p.max_order() else {
        return p
            .terms
            .get(&Key(vec![]))
            .map_or_else(|| u_val.zero_like(), |c| u_val.constant_like(c));
    };
    let mut derivs = vec![u_val.clone()];
    for i in 0..max {
        let d = derivs[i].derivative();
        derivs.push(d);
    }
    // powers[i][e] = (u_{(i)})^e
    let mut powers: Vec<Vec<R>> = derivs.iter().map(|d| vec![d.constant_like(&ExactScalar::one()), d.clone()]).collect();
    let mut acc = u_val.zero_like();
    for (k, c) in &p.terms {
        let mut term = u_val.constant_like(c);
        for (i, &e) in k.0.iter().enumerate() {
            let e = e as usize;
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e {
                let next = powers[i].last().unwrap().mul(&derivs[i]);
                powers[i].push(next);
            }
            term = term.mul(&powers[i][e]);
        }
        acc = acc.add(&term);
    }
    acc
}

/// `p` evaluated at `u_val' − u_val²`.
pub fn substitute_composite<R: DiffRing>(p: &DiffPolynomial, u_val: &R) -> R {
    let w = u_val.derivative().sub(&u_val.mul(u_val));
    substitute(p, &w)
}

/// Left minus right side of the `N`-th Painlevé II hierarchy member,
/// `(D + 2u) 𝓛_N[u_x − u²] = Σ_{k=1}^{N−1} (2k+1) t_{2k+1} (D + 2u) 𝓛_k[u_x − u²] + xu + α`,
/// with `N` and the times taken from `t`. A non-default top time `t_{2N+1}`
/// multiplies the left side by `−(2N+1) t_{2N+1}`.
pub fn pii_residual<F: DiffField>(u_val: &F, alpha: &ExactScalar, t: &TimesSpec) -> Result<F> {
    let n_cap = t.n_cap();
    let w = u_val.derivative().sub(&u_val.mul(u_val));
    let two_u = u_val.scale(&ExactScalar::from(2));
    let flow = |k: usize| -> Result<F> {
        let lk = substitute(&lenard(k)?, &w);
        Ok(lk.derivative().add(&two_u.mul(&lk)))
    };
    let top_coeff = t
        .odd_time(2 * n_cap + 1)
        .mul_rational(&rug::Rational::from(-(2 * n_cap as i64 + 1)));
    let mut res = flow(n_cap)?.scale(&top_coeff);
    for k in 1..n_cap {
        let tk = t.odd_time(2 * k + 1);
        if tk.is_zero() {
            continue;
        }
        let c = tk.mul_rational(&rug::Rational::from(2 * k as i64 + 1));
        res = res.sub(&flow(k)?.scale(&c));
    }
    res = res.sub(&u_val.x_like().mul(u_val));
    Ok(res.sub(&u_val.constant_like(alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> DiffPolynomial {
        DiffPolynomial::u(i)
    }

    fn c(v: i64) -> ExactScalar {
        ExactScalar::from(v)
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(u(0).d_total(), u(1));
        assert_eq!(u(0).mul(&u(0)).d_total(), u(0).mul(&u(1)).scale(&c(2)));
        assert_eq!(u(0).mul(&u(2)).d_total(), u(1).mul(&u(2)).add(&u(0).mul(&u(3))));
        assert!(DiffPolynomial::constant(c(5)).d_total().is_zero());
    }

    #[test]
    fn lenard_low_orders() {
        assert_eq!(lenard(0).unwrap(), DiffPolynomial::constant(ExactScalar::ratio(1, 2)));
        assert_eq!(lenard(1).unwrap(), u(0));
        assert_eq!(lenard(2).unwrap(), u(2).add(&u(0).mul(&u(0)).scale(&c(3))));
        let l3 = u(4)
            .add(&u(1).mul(&u(1)).scale(&c(5)))
            .add(&u(0).mul(&u(2)).scale(&c(10)))
            .add(&u(0).mul(&u(0)).mul(&u(0)).scale(&c(10)));
        assert_eq!(lenard(3).unwrap(), l3);
    }

    #[test]
    fn basis_sizes() {
        // parts ≥ 2: weight 2 → {u}, 4 → {u_xx, u²}, 6 → {u_4, u u_xx, u_x², u³}
        assert_eq!(monomial_basis(2).len(), 1);
        assert_eq!(monomial_basis(4).len(), 2);
        assert_eq!(monomial_basis(5).len(), 2);
        assert_eq!(monomial_basis(6).len(), 4);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(lenard(2).unwrap().to_string(), "u_xx + (3)*u^2");
    }

    #[test]
    fn substitute_examples() {
        let v = XRationalFunction::new(XPolynomial::from_ints(&[-1]), XPolynomial::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(substitute(&u(0), &v), v);
        assert!(substitute(&lenard(2).unwrap(), &XRationalFunction::zero()).is_zero());
        let inv_x = XRationalFunction::new(XPolynomial::from_ints(&[-1]), XPolynomial::x()).unwrap();
        assert!(substitute_composite(&lenard(1).unwrap(), &inv_x).is_zero());
        assert_eq!(
            substitute_composite(&lenard(0).unwrap(), &inv_x),
            XRationalFunction::constant(ExactScalar::ratio(1, 2))
        );
        let k = XRationalFunction::constant(c(3));
        assert_eq!(substitute_composite(&lenard(1).unwrap(), &k), XRationalFunction::constant(c(-9)));
    }

    #[test]
    fn pii_for_inverse_x() {
        let t = TimesSpec::new(1).unwrap();
        let u_val = XRationalFunction::new(XPolynomial::from_ints(&[-1]), XPolynomial::x()).unwrap();
        assert!(pii_residual(&u_val, &c(1), &t).unwrap().is_zero());
        assert!(!pii_residual(&u_val, &c(2), &t).unwrap().is_zero());
        assert!(pii_residual(&XRationalFunction::zero(), &c(0), &t).unwrap().is_zero());
    }

    #[test]
    fn powered_fraction_matches_rational_function() {
        let base = Arc::new(XPolynomial::from_ints(&[4, 0, 0, 1]));
        let p = PoweredFraction::new(XPolynomial::from_ints(&[1, 2]), base.clone(), 2).unwrap();
        let r = p.to_rational_function();
        assert_eq!(DiffRing::derivative(&p).to_rational_function(), r.derivative());
        let l2 = lenard(2).unwrap();
        assert_eq!(substitute(&l2, &p).to_rational_function(), substitute(&l2, &r));
    }
}
