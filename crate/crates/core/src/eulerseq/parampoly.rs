use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Monomial in the integer parameter ring: parameter name -> exponent.
pub type Monomial = BTreeMap<String, u32>;

/// Multivariate polynomial with exact integer coefficients in named scalar
/// parameters (n, delta, N, k, l, m as needed by callers). The term map is
/// ordered, so equality of canonical forms is structural equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        ParamPoly { terms }
    }

    pub fn int(c: i64) -> Self {
        ParamPoly::constant(BigInt::from(c))
    }

    pub fn param(name: &str) -> Self {
        let mut mono = Monomial::new();
        mono.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(mono, BigInt::one());
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::new()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Sign of the first stored term (+1 for the zero polynomial); used to
    /// pick a canonical representative among unit multiples.
    pub fn leading_sign(&self) -> i8 {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => -1,
            _ => 1,
        }
    }

    fn insert_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                for (name, e) in mb {
                    *m.entry(name.clone()).or_insert(0) += e;
                }
                out.insert_term(m, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Evaluate at an integer assignment. Parameters missing from the
    /// assignment are an error surfaced as None.
    pub fn eval(&self, assignment: &BTreeMap<String, BigInt>) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (name, &e) in mono {
                let v = assignment.get(name)?;
                for _ in 0..e {
                    term *= v;
                }
            }
            total += term;
        }
        Some(total)
    }

    /// Substitute a polynomial for a parameter.
    pub fn substitute(&self, name: &str, value: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut rest = mono.clone();
            let e = rest.remove(name).unwrap_or(0);
            let mut term = ParamPoly {
                terms: BTreeMap::from([(rest, coeff.clone())]),
            };
            for _ in 0..e {
                term = term.mul(value);
            }
            out = out.add(&term);
        }
        out
    }

    /// Split as `A * name + B` with A, B free of `name`; None if the degree
    /// in `name` exceeds 1.
    pub fn split_linear(&self, name: &str) -> Option<(ParamPoly, ParamPoly)> {
        let mut linear = ParamPoly::zero();
        let mut rest = ParamPoly::zero();
        for (mono, coeff) in &self.terms {
            match mono.get(name).copied().unwrap_or(0) {
                0 => rest.insert_term(mono.clone(), coeff.clone()),
                1 => {
                    let mut m = mono.clone();
                    m.remove(name);
                    linear.insert_term(m, coeff.clone());
                }
                _ => return None,
            }
        }
        Some((linear, rest))
    }

    pub fn params(&self) -> BTreeMap<String, u32> {
        let mut out = BTreeMap::new();
        for mono in self.terms.keys() {
            for (name, &e) in mono {
                let entry = out.entry(name.clone()).or_insert(0);
                *entry = (*entry).max(e);
            }
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = mono
                .iter()
                .map(|(name, &e)| {
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{}^{}", name, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
