//! Generalized Vorob'ev–Yablonski polynomials `Q_n^{[N]}(x; t)`.

mod serial;
mod verify;

use std::sync::Arc;

use rug::{Integer, Rational};

use crate::diffalg::{lenard, pii_residual, substitute, DiffField, DiffRing, PoweredFraction};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rf_log_derivative, ExactScalar, XPolynomial, XRationalFunction};
use crate::symfunc::{h_table, hankel_det, schur, staircase, FirstTime, HTable, TimesSpec};

pub use serial::VYDocument;
pub use verify::{
    delta, hirota_degree_bound, miura_holds, verify_dodgson, verify_dodgson_hirota, verify_freak,
    verify_freak_on, verify_miura,
};

/// `Q_n^{[N]}(x; t)` together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VYPolynomial {
    n: usize,
    times: TimesSpec,
    poly: XPolynomial,
}

impl VYPolynomial {
    /// Checks the monic-degree invariant.
    pub fn new(n: usize, times: TimesSpec, poly: XPolynomial) -> Result<Self> {
        let deg = (n * (n + 1) / 2) as isize;
        if poly.degree() != deg || !poly.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "Q_{n} must be monic of degree {deg}, got degree {}",
                poly.degree()
            )));
        }
        Ok(VYPolynomial { n, times, poly })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_cap(&self) -> usize {
        self.times.n_cap()
    }

    pub fn times(&self) -> &TimesSpec {
        &self.times
    }

    pub fn poly(&self) -> &XPolynomial {
        &self.poly
    }

    pub fn into_poly(self) -> XPolynomial {
        self.poly
    }
}

/// `μ_0 … μ_{k_max}` from `exp(Σ t_j w^j)` on the unscaled odd times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    table: HTable,
}

impl MuTable {
    pub fn new(t: &TimesSpec, k_max: usize) -> Self {
        MuTable {
            table: h_table(&t.to_times(), k_max),
        }
    }

    pub fn entries(&self) -> &[XPolynomial] {
        self.table.entries()
    }

    pub fn as_h_table(&self) -> &HTable {
        &self.table
    }
}

fn require_x(t: &TimesSpec) -> Result<()> {
    match t.first() {
        FirstTime::Indeterminate => Ok(()),
        FirstTime::Value(_) => Err(Error::InvalidArgument("t1 must be the indeterminate x".into())),
    }
}

/// `Π_{k=1}^{n} (2k)!/(2^k k!)`.
pub fn staircase_normalization(n: usize) -> ExactScalar {
    let mut acc = Rational::from(1);
    for k in 1..=n as u32 {
        acc *= Rational::from((factorial(2 * k), (Integer::from(1) << k) * factorial(k)));
    }
    ExactScalar::from(acc)
}

/// Normalized staircase Schur polynomial on the KdV-scaled times.
pub fn qn_schur(n: usize, t: &TimesSpec) -> Result<VYPolynomial> {
    require_x(t)?;
    let s = schur(&staircase(n as i64)?, &t.kdv_scaled());
    VYPolynomial::new(n, t.clone(), s.scale(&staircase_normalization(n)))
}

/// `Q_0 … Q_n` from the differential-difference recurrence.
pub fn qn_family_recurrence(n: usize, t: &TimesSpec) -> Result<Vec<XPolynomial>> {
    require_x(t)?;
    if !t.has_default_top_time() {
        return Err(Error::InvalidArgument(
            "the recurrence needs t_{2N+1} = -1/(2N+1)".into(),
        ));
    }
    let mut qs = vec![XPolynomial::one(), XPolynomial::x()];
    let n_cap = t.n_cap();
    while qs.len() <= n {
        let k = qs.len() - 1;
        let q = &qs[k];
        let rhs = if n_cap == 1 {
            let d1 = q.derivative();
            let wronsk = &(&d1.derivative() * q) - &(&d1 * &d1);
            &(&XPolynomial::x() * &(q * q)) - &wronsk.scale(&ExactScalar::from(4))
        } else {
            recurrence_rhs(q, t)?
        };
        let next = rhs.exact_div(&qs[k - 1])?;
        qs.push(next);
    }
    qs.truncate(n + 1);
    Ok(qs)
}

/// `Q² {x − 2𝓛_N[u] + 2 Σ (2k+1) t_{2k+1} 𝓛_k[u]}` with `u = 2 (ln Q)''`.
fn recurrence_rhs(q: &XPolynomial, t: &TimesSpec) -> Result<XPolynomial> {
    let base = Arc::new(q.clone());
    let d1 = q.derivative();
    let wronsk = &(&d1.derivative() * q) - &(&d1 * &d1);
    let u = PoweredFraction::new(wronsk.scale(&ExactScalar::from(2)), base.clone(), 2)?;
    let two = ExactScalar::from(2);
    let mut bracket = u.x_like();
    bracket = bracket.sub(&substitute(&lenard(t.n_cap())?, &u).scale(&two));
    for k in 1..t.n_cap() {
        let tk = t.odd_time(2 * k + 1);
        if tk.is_zero() {
            continue;
        }
        let c = tk.mul_rational(&Rational::from(2 * (2 * k as i64 + 1)));
        bracket = bracket.add(&substitute(&lenard(k)?, &u).scale(&c));
    }
    let e = bracket.exp();
    if e >= 2 {
        bracket.num().exact_div(&q.pow(e - 2))
    } else {
        Ok(&bracket.numerator_at(e) * &q.pow(2 - e))
    }
}

pub fn qn_recurrence(n: usize, t: &TimesSpec) -> Result<VYPolynomial> {
    let poly = qn_family_recurrence(n, t)?.pop().expect("nonempty family");
    VYPolynomial::new(n, t.clone(), poly)
}

/// Hankel-determinant route to `Q_n²`.
pub fn qn_hankel_square(n: usize, t: &TimesSpec) -> Result<XPolynomial> {
    require_x(t)?;
    let mu = MuTable::new(t, 2 * n);
    let det = hankel_det(mu.as_h_table(), n + 1, 0);
    Ok(det.scale(&hankel_prefactor(n)))
}

/// `(−1)^{C(n+1,2)} 2^{−n} Π_{k=1}^{n} [(2k)!/k!]²`.
pub fn hankel_prefactor(n: usize) -> ExactScalar {
    let mut acc = Rational::from((Integer::from(1), Integer::from(1) << n as u32));
    for k in 1..=n as u32 {
        let r = factorial(2 * k) / factorial(k);
        acc *= Rational::from(r.square());
    }
    if binomial(n as u32 + 1, 2).is_odd() {
        acc = -acc;
    }
    ExactScalar::from(acc)
}

/// `u(x; n) = (ln Q_{n−1}/Q_n)'`, zero for `n = 0`.
pub fn rational_solution(n: usize, t: &TimesSpec) -> Result<XRationalFunction> {
    if n == 0 {
        return Ok(XRationalFunction::zero());
    }
    let prev = qn_schur(n - 1, t)?;
    let cur = qn_schur(n, t)?;
    Ok(rf_log_derivative(prev.poly())?.sub(&rf_log_derivative(cur.poly())?))
}

/// Same function as [`rational_solution`], kept over the denominator `Q_{n−1} Q_n`
/// without cancellation.
pub fn rational_solution_powered(n: usize, t: &TimesSpec) -> Result<PoweredFraction> {
    let prev = qn_schur(n.saturating_sub(1), t)?.into_poly();
    let cur = if n == 0 { XPolynomial::one() } else { qn_schur(n, t)?.into_poly() };
    let base = Arc::new(&prev * &cur);
    if n == 0 {
        return PoweredFraction::from_poly(XPolynomial::zero(), base);
    }
    let num = &(&prev.derivative() * &cur) - &(&cur.derivative() * &prev);
    PoweredFraction::new(num, base, 1)
}

/// `pii_residual(u(x; n), n, t) = 0`, evaluated without gcds.
pub fn certify_pii(n: usize, t: &TimesSpec) -> Result<bool> {
    let u = rational_solution_powered(n, t)?;
    Ok(DiffRing::is_zero(&pii_residual(&u, &ExactScalar::from(n as i64), t)?))
}
