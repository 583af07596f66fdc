use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::BTreeMap;
use std::fmt;

use super::parampoly::ParamPoly;
use crate::error::{Error, Result};

/// Laurent polynomial in the hyperplane class `u` with [`ParamPoly`]
/// coefficients: exponent -> coefficient, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, ParamPoly>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(ParamPoly::one())
    }

    pub fn constant(p: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(0, p);
        }
        Laurent { terms }
    }

    pub fn int(c: i64) -> Self {
        Laurent::constant(ParamPoly::int(c))
    }

    /// `coeff * u^exp`
    pub fn monomial(exp: i64, coeff: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn u(exp: i64) -> Self {
        Laurent::monomial(exp, ParamPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> ParamPoly {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    fn insert(&mut self, exp: i64, coeff: ParamPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                out.insert(ea + eb, ca.mul(cb));
            }
        }
        out
    }

    /// Multiply by `u^k` (a twist).
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Duality on twists: `u^a -> u^{-a}`.
    pub fn dual(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Sum of coefficients, i.e. the evaluation u = 1 (rank functional).
    pub fn eval_at_one(&self) -> ParamPoly {
        self.terms
            .values()
            .fold(ParamPoly::zero(), |acc, c| acc.add(c))
    }

    /// Weighted sum `sum_a a * coeff_a` (first-Chern functional of twists).
    pub fn weighted_exponent_sum(&self) -> ParamPoly {
        self.terms.iter().fold(ParamPoly::zero(), |acc, (&e, c)| {
            acc.add(&c.scale(&BigInt::from(e)))
        })
    }

    /// `Some((exp, +1/-1))` when this is a single term `±u^exp`.
    pub fn as_unit_monomial(&self) -> Option<(i64, i8)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        let c = c.as_constant()?;
        if c.is_one() {
            Some((e, 1))
        } else if (-&c).is_one() {
            Some((e, -1))
        } else {
            None
        }
    }

    /// Lowest-exponent term.
    pub fn lowest_term(&self) -> Option<(i64, &ParamPoly)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Division with a constant (u-degree 0) remainder:
    /// `self = q * divisor + r`. Requires the divisor's extreme coefficients
    /// to be unit constants so the reduction stays in the integer Laurent
    /// ring; this covers the divisors that arise here (1 and 1 + u).
    pub fn div_with_constant_remainder(&self, divisor: &Laurent) -> Result<(Laurent, ParamPoly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionImpossible("division by zero".into()));
        }
        if let Some((a, sign)) = divisor.as_unit_monomial() {
            let q = self.shift(-a);
            let q = if sign < 0 { q.neg() } else { q };
            return Ok((q, ParamPoly::zero()));
        }
        let dmax = divisor.max_exp().unwrap();
        let dmin = divisor.min_exp().unwrap();
        let lead = divisor.coeff(dmax);
        let low = divisor.coeff(dmin);
        let unit = |p: &ParamPoly| -> Option<BigInt> {
            let c = p.as_constant()?;
            if c.abs().is_one() {
                Some(c)
            } else {
                None
            }
        };
        let mut q = Laurent::zero();
        let mut r = self.clone();
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 10_000 {
                return Err(Error::DivisionImpossible(
                    "reduction did not terminate".into(),
                ));
            }
            if let Some(top) = r.max_exp() {
                if top > 0 {
                    let lu = unit(&lead).ok_or_else(|| {
                        Error::DivisionImpossible(format!(
                            "leading coefficient {} of divisor is not a unit",
                            lead
                        ))
                    })?;
                    let c = r.coeff(top);
                    let qc = if lu.is_one() { c } else { c.neg() };
                    let qt = Laurent::monomial(top - dmax, qc);
                    r = r.sub(&qt.mul(divisor));
                    q = q.add(&qt);
                    continue;
                }
            }
            if let Some(bottom) = r.min_exp() {
                if bottom < 0 {
                    let lu = unit(&low).ok_or_else(|| {
                        Error::DivisionImpossible(format!(
                            "lowest coefficient {} of divisor is not a unit",
                            low
                        ))
                    })?;
                    let c = r.coeff(bottom);
                    let qc = if lu.is_one() { c } else { c.neg() };
                    let qt = Laurent::monomial(bottom - dmin, qc);
                    r = r.sub(&qt.mul(divisor));
                    q = q.add(&qt);
                    continue;
                }
            }
            break;
        }
        Ok((q, r.coeff(0)))
    }

    /// Exact division, failing unless the remainder vanishes.
    pub fn div_exact(&self, divisor: &Laurent) -> Result<Laurent> {
        let (q, r) = self.div_with_constant_remainder(divisor)?;
        if !r.is_zero() {
            return Err(Error::DivisionImpossible(format!(
                "({}) is not divisible by ({}), remainder {}",
                self, divisor, r
            )));
        }
        Ok(q)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&e, c) in &self.terms {
            let coeff = if c.is_constant() || e == 0 {
                format!("{}", c)
            } else {
                format!("({})", c)
            };
            let part = match e {
                0 => coeff,
                1 if coeff == "1" => "u".to_string(),
                1 if coeff == "-1" => "-u".to_string(),
                1 => format!("{}*u", coeff),
                _ if coeff == "1" => format!("u^{}", e),
                _ if coeff == "-1" => format!("-u^{}", e),
                _ => format!("{}*u^{}", coeff, e),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
