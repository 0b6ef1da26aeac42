//! Exact checks of the determinantal and differential identities.

use crate::error::{Error, Result};
use crate::exact::{det_fraction_free, rf_log_derivative, rf_log_second_derivative, ExactScalar, XPolynomial};
use crate::symfunc::{
    h_table, hankel_det, schur, shift_times, staircase, FirstTime, HTable, ShiftDirection, Times, TimesSpec,
};

/// `Δ_{n,ℓ} = det[h_{ℓ+j+k−2}]_{j,k=1}^{n}`, with `Δ_{0,ℓ} = 1` and `Δ_{−1,ℓ} = 0`.
pub fn delta(h: &HTable, n: isize, l: usize) -> Result<XPolynomial> {
    if n < 0 {
        return Ok(XPolynomial::zero());
    }
    let n = n as usize;
    if n > 0 && l + 2 * n - 2 > h.k_max() {
        return Err(Error::Truncation {
            needed: l + 2 * n - 2,
            got: h.k_max(),
        });
    }
    Ok(hankel_det(h, n, l))
}

/// `Δ_{n+1,0} = (−1)^n Δ_{n,2}` on the odd times of `t`.
pub fn verify_freak(n: usize, t: &TimesSpec) -> Result<bool> {
    verify_freak_on(n, &h_table(&t.to_times(), 2 * n + 2))
}

/// The same identity on an arbitrary table; fails in general once even times are present.
pub fn verify_freak_on(n: usize, h: &HTable) -> Result<bool> {
    let lhs = delta(h, n as isize + 1, 0)?;
    let rhs = delta(h, n as isize, 2)?;
    Ok(if n.is_multiple_of(2) { lhs == rhs } else { lhs == -&rhs })
}

/// `2 (ln s_n)'' = −W'' − (W')²` with `W' = (ln s_{n+1})' − (ln s_n)'`.
pub fn miura_holds(s_n: &XPolynomial, s_next: &XPolynomial) -> Result<bool> {
    let g2 = rf_log_second_derivative(s_n)?;
    let w1 = rf_log_derivative(s_next)?.sub(&rf_log_derivative(s_n)?);
    let lhs = g2.scale(&ExactScalar::from(2));
    let rhs = w1.derivative().add(&w1.mul(&w1)).neg();
    Ok(lhs == rhs)
}

pub fn verify_miura(n: usize, t: &TimesSpec) -> Result<bool> {
    let times = t.kdv_scaled();
    let s_n = schur(&staircase(n as i64)?, &times);
    let s_next = schur(&staircase(n as i64 + 1)?, &times);
    miura_holds(&s_n, &s_next)
}

/// `Δ_{n,ℓ}² = Δ_{n,ℓ−1}Δ_{n,ℓ+1} − Δ_{n+1,ℓ−1}Δ_{n−1,ℓ+1}`.
pub fn verify_dodgson(n: usize, l: usize, h: &HTable) -> Result<bool> {
    if l == 0 {
        return Err(Error::InvalidArgument("Dodgson identity needs l >= 1".into()));
    }
    let n = n as isize;
    let lhs = delta(h, n, l)?.pow(2);
    let rhs = &(&delta(h, n, l - 1)? * &delta(h, n, l + 1)?) - &(&delta(h, n + 1, l - 1)? * &delta(h, n - 1, l + 1)?);
    Ok(lhs == rhs)
}

/// Upper bound on the z-degree of `Δ_{n,ℓ}(t−[z]) Δ_{n,ℓ}(s+[z])`.
pub fn hirota_degree_bound(n: usize, l: usize) -> usize {
    if n == 0 {
        return 0;
    }
    // the plus shift gives h_m degree m in z, the minus shift degree ≤ 1
    n * (l + 2 * n - 2) + n
}

fn scalar_times(t: &TimesSpec) -> Result<Times> {
    match t.first() {
        FirstTime::Value(_) => Ok(t.to_times()),
        FirstTime::Indeterminate => Err(Error::InvalidArgument("the residue check needs numeric t1".into())),
    }
}

/// `Δ_{n,ℓ}` at `t ∓ [z]` as a polynomial in `z`.
fn shifted_delta(h: &HTable, n: usize, l: usize, dir: ShiftDirection) -> Result<XPolynomial> {
    if n == 0 {
        return Ok(XPolynomial::one());
    }
    let series = shift_times(h, dir);
    let to_z = |k: usize| -> XPolynomial {
        XPolynomial::new(series[k].iter().map(|c| c.coeff(0)).collect())
    };
    let m: Vec<Vec<XPolynomial>> = (0..n).map(|j| (0..n).map(|k| to_z(l + j + k)).collect()).collect();
    det_fraction_free(&m)
}

/// The residue identity: `res_{z=0} z^{−1} e^{θ(z;t)−θ(z;s)} Δ_{n,ℓ}(t−[z]) Δ_{n,ℓ}(s+[z])`
/// equals `Δ_{n,ℓ−1}(t)Δ_{n,ℓ+1}(s) − Δ_{n+1,ℓ−1}(t)Δ_{n−1,ℓ+1}(s)`.
///
/// The exponential contributes `h_k(t − s)` at order `z^{−k}`, so the residue is the
/// finite sum `Σ_k h_k(t − s) m_k` over the z-coefficients `m_k` of the product.
pub fn verify_dodgson_hirota(n: usize, l: usize, t: &TimesSpec, s: &TimesSpec, k_cut: usize) -> Result<bool> {
    if l == 0 {
        return Err(Error::InvalidArgument("the residue identity needs l >= 1".into()));
    }
    let tt = scalar_times(t)?;
    let ss = scalar_times(s)?;
    let k_max = l + 2 * n + 2;
    let ht = h_table(&tt, k_max);
    let hs = h_table(&ss, k_max);
    let product = &shifted_delta(&ht, n, l, ShiftDirection::Minus)? * &shifted_delta(&hs, n, l, ShiftDirection::Plus)?;
    let deg = product.degree().max(0) as usize;
    if k_cut < deg {
        return Err(Error::Truncation { needed: deg, got: k_cut });
    }
    let hc = h_table(&tt.difference(&ss)?, k_cut);
    let mut lhs = ExactScalar::zero();
    for k in 0..=deg {
        lhs = &lhs + &(&hc.get(k as isize).coeff(0) * &product.coeff(k));
    }
    let n = n as isize;
    let rhs = &(&delta(&ht, n, l - 1)? * &delta(&hs, n, l + 1)?) - &(&delta(&ht, n + 1, l - 1)? * &delta(&hs, n - 1, l + 1)?);
    Ok(XPolynomial::constant(lhs) == rhs)
}
