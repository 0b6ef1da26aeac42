//! Complete homogeneous symmetric functions, Schur polynomials and the
//! time vectors they are evaluated on.

use std::collections::BTreeMap;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det_fraction_free, ExactScalar, Partition, XPolynomial};

/// Value of the first time `t1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FirstTime {
    /// `t1 = x`; every `h_k` becomes a polynomial in `x`.
    Indeterminate,
    Value(ExactScalar),
}

/// A general time vector `t = (t1, t2, t3, ...)` with finitely many nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Times {
    first: FirstTime,
    higher: BTreeMap<usize, ExactScalar>,
}

impl Times {
    pub fn with_x() -> Self {
        Times {
            first: FirstTime::Indeterminate,
            higher: BTreeMap::new(),
        }
    }

    pub fn scalar(t1: ExactScalar) -> Self {
        Times {
            first: FirstTime::Value(t1),
            higher: BTreeMap::new(),
        }
    }

    pub fn first(&self) -> &FirstTime {
        &self.first
    }

    /// Sets `t_j` for `j ≥ 2`.
    pub fn set(mut self, j: usize, v: ExactScalar) -> Self {
        assert!(j >= 2, "t1 is set through the constructor");
        if v.is_zero() {
            self.higher.remove(&j);
        } else {
            self.higher.insert(j, v);
        }
        self
    }

    /// `t_j` for `j ≥ 2` (zero when unset).
    pub fn get(&self, j: usize) -> ExactScalar {
        self.higher.get(&j).cloned().unwrap_or_default()
    }

    pub fn higher(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.higher.iter().map(|(&j, v)| (j, v))
    }

    pub fn has_even_times(&self) -> bool {
        self.higher.keys().any(|j| j % 2 == 0)
    }

    /// `t_j ↦ ε^{−j} t_j` for `j ≥ 2`; `t1` is left alone.
    pub fn rescale_higher(&self, eps: &ExactScalar) -> Self {
        let inv = eps.inv().expect("nonzero scaling");
        let higher = self
            .higher
            .iter()
            .map(|(&j, v)| (j, v * &inv.pow(j as u32)))
            .collect();
        Times {
            first: self.first.clone(),
            higher,
        }
    }

    /// Entrywise difference of two scalar time vectors.
    pub fn difference(&self, other: &Times) -> Result<Times> {
        let (FirstTime::Value(a), FirstTime::Value(b)) = (&self.first, &other.first) else {
            return Err(Error::InvalidArgument("time difference needs scalar t1".into()));
        };
        let mut out = Times::scalar(a - b);
        let keys: std::collections::BTreeSet<usize> =
            self.higher.keys().chain(other.higher.keys()).copied().collect();
        for j in keys {
            out = out.set(j, &self.get(j) - &other.get(j));
        }
        Ok(out)
    }
}

/// Odd time vector `(t1, 0, t3, 0, …, t_{2N+1}, 0, …)` of the `N`-th hierarchy member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimesSpec {
    n_cap: usize,
    odd: BTreeMap<usize, ExactScalar>,
    top_time: ExactScalar,
    first: FirstTime,
}

impl TimesSpec {
    /// `t1 = x`, all tunable times zero and `t_{2N+1} = −1/(2N+1)`.
    pub fn new(n_cap: usize) -> Result<Self> {
        if n_cap == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        Ok(TimesSpec {
            n_cap,
            odd: BTreeMap::new(),
            top_time: ExactScalar::ratio(-1, 2 * n_cap as i64 + 1),
            first: FirstTime::Indeterminate,
        })
    }

    /// Sets a tunable time `t_j`, `j` odd with `3 ≤ j ≤ 2N−1`.
    pub fn with_time(mut self, j: usize, v: ExactScalar) -> Result<Self> {
        if j.is_multiple_of(2) || j < 3 || j > 2 * self.n_cap - 1 {
            return Err(Error::InvalidArgument(format!(
                "t_{j} is not a tunable time for N = {}",
                self.n_cap
            )));
        }
        if v.is_zero() {
            self.odd.remove(&j);
        } else {
            self.odd.insert(j, v);
        }
        Ok(self)
    }

    pub fn with_top_time(mut self, v: ExactScalar) -> Self {
        self.top_time = v;
        self
    }

    pub fn with_t1(mut self, v: ExactScalar) -> Self {
        self.first = FirstTime::Value(v);
        self
    }

    pub fn n_cap(&self) -> usize {
        self.n_cap
    }

    pub fn first(&self) -> &FirstTime {
        &self.first
    }

    pub fn top_time(&self) -> &ExactScalar {
        &self.top_time
    }

    pub fn has_default_top_time(&self) -> bool {
        self.top_time == ExactScalar::ratio(-1, 2 * self.n_cap as i64 + 1)
    }

    /// `t_j` for odd `j ≥ 3`: tunable times, the top time at `2N+1`, zero beyond.
    pub fn odd_time(&self, j: usize) -> ExactScalar {
        if j == 2 * self.n_cap + 1 {
            self.top_time.clone()
        } else {
            self.odd.get(&j).cloned().unwrap_or_default()
        }
    }

    pub fn tunable(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.odd.iter().map(|(&j, v)| (j, v))
    }

    pub fn tunable_times_vanish(&self) -> bool {
        self.odd.is_empty()
    }

    fn build(&self, scale_by_powers_of_four: bool) -> Times {
        let mut t = Times {
            first: self.first.clone(),
            higher: BTreeMap::new(),
        };
        for k in 1..=self.n_cap {
            let j = 2 * k + 1;
            let mut v = self.odd_time(j);
            if scale_by_powers_of_four {
                v = v.mul_rational(&Rational::from(Integer::from(1) << (2 * k as u32)));
            }
            t = t.set(j, v);
        }
        t
    }

    /// `t_o = (t1, 0, t3, 0, …, t_{2N+1}, 0, …)`.
    pub fn to_times(&self) -> Times {
        self.build(false)
    }

    /// `(t1, 0, 2²t3, 0, 2⁴t5, …, 2^{2N} t_{2N+1}, 0, …)`, the KdV tau-function times.
    pub fn kdv_scaled(&self) -> Times {
        self.build(true)
    }
}

/// Table of `h_0 … h_{k_max}` on a fixed time vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    entries: Vec<XPolynomial>,
    zero: XPolynomial,
}

impl HTable {
    /// Fills the table from `k·h_k = Σ_{j=1}^{k} j·t_j·h_{k−j}`.
    pub fn new(times: &Times, k_max: usize) -> Self {
        let t1 = match &times.first {
            FirstTime::Indeterminate => XPolynomial::x(),
            FirstTime::Value(v) => XPolynomial::constant(v.clone()),
        };
        let mut entries: Vec<XPolynomial> = Vec::with_capacity(k_max + 1);
        entries.push(XPolynomial::one());
        for k in 1..=k_max {
            let mut acc = &t1 * &entries[k - 1];
            for (j, tj) in times.higher() {
                if j > k {
                    break;
                }
                let c = tj.mul_rational(&Rational::from(j as u64));
                acc = &acc + &entries[k - j].scale(&c);
            }
            entries.push(acc.scale(&ExactScalar::ratio(1, k as i64)));
        }
        HTable {
            entries,
            zero: XPolynomial::zero(),
        }
    }

    pub fn k_max(&self) -> usize {
        self.entries.len() - 1
    }

    /// `h_k`, zero for `k < 0`. Panics beyond `k_max`.
    pub fn get(&self, k: isize) -> &XPolynomial {
        if k < 0 {
            return &self.zero;
        }
        &self.entries[k as usize]
    }

    pub fn entries(&self) -> &[XPolynomial] {
        &self.entries
    }
}

/// `h_0 … h_{k_max}` evaluated on `t`.
pub fn h_table(t: &Times, k_max: usize) -> HTable {
    HTable::new(t, k_max)
}

/// Jacobi–Trudi determinant `det[h_{λ_j − j + k}]`.
pub fn schur(lambda: &Partition, t: &Times) -> XPolynomial {
    let k_max = lambda.parts().first().copied().unwrap_or(0) + lambda.len();
    schur_from_table(lambda, &HTable::new(t, k_max))
}

pub fn schur_from_table(lambda: &Partition, h: &HTable) -> XPolynomial {
    let l = lambda.len();
    let m: Vec<Vec<XPolynomial>> = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| h.get(lambda.parts()[j] as isize - j as isize + k as isize).clone())
                .collect()
        })
        .collect();
    det_fraction_free(&m).expect("square matrix")
}

/// Hankel determinant `det[h_{shift+j+k}]_{j,k=0}^{size−1}` (one for `size = 0`).
pub fn hankel_det(h: &HTable, size: usize, shift: usize) -> XPolynomial {
    let m: Vec<Vec<XPolynomial>> = (0..size)
        .map(|j| (0..size).map(|k| h.get((shift + j + k) as isize).clone()).collect())
        .collect();
    det_fraction_free(&m).expect("square matrix")
}

/// `δ_n = (n, n−1, …, 1)`.
pub fn staircase(n: i64) -> Result<Partition> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("staircase({n})")));
    }
    Partition::new((1..=n as usize).rev().collect())
}

/// `height` rows of length `width`.
pub fn rectangle(height: i64, width: i64) -> Result<Partition> {
    if height < 0 || width < 0 {
        return Err(Error::InvalidArgument(format!("rectangle({height}, {width})")));
    }
    if width == 0 {
        return Ok(Partition::empty());
    }
    Partition::new(vec![width as usize; height as usize])
}

/// Reciprocal of the product of the hook lengths of `λ`, i.e. the coefficient
/// of `t1^{|λ|}` in `s_λ`. For staircases this is `Π_{k=1}^{n} 2^k k!/(2k)!`.
pub fn hook_product(lambda: &Partition) -> ExactScalar {
    ExactScalar::from(Rational::from((Integer::from(1), lambda.hook_length_product())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftDirection {
    /// `t − [z]`: the generating series gains a factor `(1 − zw)`.
    Minus,
    /// `t + [z]`: the generating series gains a factor `(1 − zw)^{−1}`.
    Plus,
}

/// For each `k`, the coefficients in `z` of `h_k(t ∓ [z])`.
pub fn shift_times(h: &HTable, direction: ShiftDirection) -> Vec<Vec<XPolynomial>> {
    (0..=h.k_max() as isize)
        .map(|k| match direction {
            ShiftDirection::Minus => {
                let mut v = vec![h.get(k).clone()];
                if k >= 1 {
                    v.push(-h.get(k - 1));
                }
                v
            }
            ShiftDirection::Plus => (0..=k).map(|j| h.get(k - j).clone()).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n1_scaled() -> Times {
        TimesSpec::new(1).unwrap().kdv_scaled()
    }

    #[test]
    fn h_table_basics() {
        let h = h_table(&n1_scaled(), 3);
        assert_eq!(h.get(0), &XPolynomial::one());
        assert_eq!(h.get(1), &XPolynomial::x());
        assert!(h.get(-1).is_zero());
        // exp(xw − (4/3)w³) to order w³ by multiplying the two series:
        // (1 + xw + x²w²/2 + x³w³/6)(1 − (4/3)w³) → x³/6 − 4/3
        let expected = XPolynomial::new(vec![
            ExactScalar::ratio(-4, 3),
            ExactScalar::zero(),
            ExactScalar::zero(),
            ExactScalar::ratio(1, 6),
        ]);
        assert_eq!(h.get(3), &expected);
    }

    #[test]
    fn schur_small_cases() {
        let t = n1_scaled();
        assert_eq!(schur(&Partition::empty(), &t), XPolynomial::one());
        assert_eq!(schur(&staircase(1).unwrap(), &t), XPolynomial::x());
        // h2·h1 − h3·h0 = x³/2 − x³/6 + 4/3
        let expected = XPolynomial::new(vec![
            ExactScalar::ratio(4, 3),
            ExactScalar::zero(),
            ExactScalar::zero(),
            ExactScalar::ratio(1, 3),
        ]);
        assert_eq!(schur(&staircase(2).unwrap(), &t), expected);
    }

    #[test]
    fn partition_constructors() {
        assert_eq!(staircase(3).unwrap().parts(), &[3, 2, 1]);
        assert!(staircase(0).unwrap().is_empty());
        assert!(staircase(-1).is_err());
        assert_eq!(rectangle(3, 2).unwrap().parts(), &[2, 2, 2]);
        assert!(rectangle(-1, 2).is_err());
    }

    #[test]
    fn hook_product_of_staircases() {
        assert_eq!(hook_product(&staircase(1).unwrap()), ExactScalar::one());
        assert_eq!(hook_product(&staircase(2).unwrap()), ExactScalar::ratio(1, 3));
        for n in 1..=7u32 {
            let mut formula = ExactScalar::one();
            for k in 1..=n {
                let num = (Integer::from(1) << k) * crate::exact::factorial(k);
                formula = &formula * &ExactScalar::from(Rational::from((num, crate::exact::factorial(2 * k))));
            }
            assert_eq!(hook_product(&staircase(n as i64).unwrap()), formula, "n = {n}");
        }
    }

    #[test]
    fn shifted_series() {
        let h = h_table(&Times::with_x(), 4);
        let minus = shift_times(&h, ShiftDirection::Minus);
        let plus = shift_times(&h, ShiftDirection::Plus);
        assert_eq!(minus[0], vec![XPolynomial::one()]);
        assert_eq!(plus[0], vec![XPolynomial::one()]);
        assert_eq!(minus[1], vec![XPolynomial::x(), -&XPolynomial::one()]);
        assert_eq!(plus[2], vec![h.get(2).clone(), h.get(1).clone(), XPolynomial::one()]);
    }

    #[test]
    fn times_spec_validation() {
        assert!(TimesSpec::new(0).is_err());
        let t = TimesSpec::new(3).unwrap();
        assert!(t.clone().with_time(3, ExactScalar::one()).is_ok());
        assert!(t.clone().with_time(5, ExactScalar::one()).is_ok());
        assert!(t.clone().with_time(7, ExactScalar::one()).is_err());
        assert!(t.clone().with_time(4, ExactScalar::one()).is_err());
        assert_eq!(t.odd_time(7), ExactScalar::ratio(-1, 7));
        assert_eq!(t.odd_time(9), ExactScalar::zero());
        assert!(!t.to_times().has_even_times());
    }
}
