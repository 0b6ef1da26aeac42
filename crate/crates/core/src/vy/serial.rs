use serde::{Deserialize, Serialize};

use super::VYPolynomial;
use crate::error::{Error, Result};
use crate::exact::{ExactScalar, XPolynomial};
use crate::symfunc::TimesSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeEntry {
    pub index: usize,
    pub re: String,
    pub im: String,
}

/// JSON layout of a [`VYPolynomial`]. Every number is an exact rational string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VYDocument {
    pub n: usize,
    #[serde(rename = "N")]
    pub n_cap: usize,
    /// `t_3, t_5, …, t_{2N+1}`; `t1` is always `x`.
    pub times: Vec<TimeEntry>,
    /// Ascending degree.
    pub coeffs: Vec<String>,
}

fn parse_rational(s: &str) -> Result<rug::Rational> {
    s.parse::<rug::Rational>()
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

impl VYDocument {
    pub fn from_polynomial(q: &VYPolynomial) -> Self {
        let t = q.times();
        let times = (1..=t.n_cap())
            .map(|k| {
                let v = t.odd_time(2 * k + 1);
                TimeEntry {
                    index: 2 * k + 1,
                    re: v.re().to_string(),
                    im: v.im().to_string(),
                }
            })
            .collect();
        VYDocument {
            n: q.n(),
            n_cap: t.n_cap(),
            times,
            coeffs: q.poly().coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<VYPolynomial> {
        let mut t = TimesSpec::new(self.n_cap)?;
        for e in &self.times {
            let v = ExactScalar::new(parse_rational(&e.re)?, parse_rational(&e.im)?);
            if e.index == 2 * self.n_cap + 1 {
                t = t.with_top_time(v);
            } else {
                t = t.with_time(e.index, v)?;
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.parse::<ExactScalar>())
            .collect::<Result<Vec<_>>>()?;
        VYPolynomial::new(self.n, t, XPolynomial::new(coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl VYPolynomial {
    pub fn to_json(&self) -> String {
        VYDocument::from_polynomial(self).to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        VYDocument::from_json(s)?.to_polynomial()
    }
}
