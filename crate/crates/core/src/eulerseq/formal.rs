use std::collections::BTreeMap;
use std::fmt;

use super::laurent::Laurent;
use super::parampoly::ParamPoly;
use crate::error::{Error, Result};

/// Declared facts about a bundle symbol: formal rank, optional first Chern
/// class (as a multiple of the hyperplane generator h), and the dual partner
/// when duality is needed. Symbols with no declared rank stay symbolic in the
/// Chern functional instead of failing.
#[derive(Clone, Debug, Default)]
pub struct SymbolDecl {
    pub rank: Option<ParamPoly>,
    pub c1_h: Option<ParamPoly>,
    pub partner: Option<String>,
    /// True for the starred side of a dual pair.
    pub starred: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    decls: BTreeMap<String, SymbolDecl>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, rank: Option<ParamPoly>) {
        self.decls.insert(
            name.to_string(),
            SymbolDecl {
                rank,
                ..Default::default()
            },
        );
    }

    /// Declare `starred` as the dual of `name`; ranks agree by definition.
    pub fn declare_dual_pair(&mut self, name: &str, starred: &str) {
        let rank = self.decls.get(name).and_then(|d| d.rank.clone());
        if let Some(d) = self.decls.get_mut(name) {
            d.partner = Some(starred.to_string());
        }
        self.decls.insert(
            starred.to_string(),
            SymbolDecl {
                rank,
                c1_h: None,
                partner: Some(name.to_string()),
                starred: true,
            },
        );
    }

    pub fn decl(&self, name: &str) -> Option<&SymbolDecl> {
        self.decls.get(name)
    }

    pub fn dual_name(&self, name: &str) -> Result<&str> {
        self.decls
            .get(name)
            .and_then(|d| d.partner.as_deref())
            .ok_or_else(|| {
                Error::InvalidInput(format!("symbol `{}` has no declared dual partner", name))
            })
    }

    /// Canonical primal representative for Chern bookkeeping:
    /// `(primal_name, sign)` with c1(s*) = -c1(s).
    pub fn primal(&self, name: &str) -> (String, i8) {
        match self.decls.get(name) {
            Some(d) if d.starred => (d.partner.clone().unwrap_or_else(|| name.to_string()), -1),
            _ => (name.to_string(), 1),
        }
    }

    pub fn rank(&self, name: &str) -> Option<ParamPoly> {
        self.decls.get(name).and_then(|d| d.rank.clone())
    }
}

/// Linear combination of unknown bundle symbols with Laurent-in-u
/// coefficients plus a scalar Laurent part. Asserting such a class to be zero
/// encodes one K-theory relation.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FormalKClass {
    pub scalar: Laurent,
    pub symbols: BTreeMap<String, Laurent>,
}

impl FormalKClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_scalar(s: Laurent) -> Self {
        FormalKClass {
            scalar: s,
            symbols: BTreeMap::new(),
        }
    }

    pub fn constant(p: ParamPoly) -> Self {
        Self::from_scalar(Laurent::constant(p))
    }

    pub fn int(c: i64) -> Self {
        Self::from_scalar(Laurent::int(c))
    }

    pub fn symbol(name: &str) -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert(name.to_string(), Laurent::one());
        FormalKClass {
            scalar: Laurent::zero(),
            symbols,
        }
    }

    /// `coeff * name`
    pub fn symbol_term(name: &str, coeff: Laurent) -> Self {
        let mut symbols = BTreeMap::new();
        if !coeff.is_zero() {
            symbols.insert(name.to_string(), coeff);
        }
        FormalKClass {
            scalar: Laurent::zero(),
            symbols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.symbols.is_empty()
    }

    pub fn add(&self, other: &FormalKClass) -> FormalKClass {
        let mut out = self.clone();
        out.scalar = out.scalar.add(&other.scalar);
        for (name, c) in &other.symbols {
            let entry = out.symbols.entry(name.clone()).or_default();
            *entry = entry.add(c);
            if entry.is_zero() {
                out.symbols.remove(name);
            }
        }
        out
    }

    pub fn neg(&self) -> FormalKClass {
        FormalKClass {
            scalar: self.scalar.neg(),
            symbols: self
                .symbols
                .iter()
                .map(|(n, c)| (n.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FormalKClass) -> FormalKClass {
        self.add(&other.neg())
    }

    /// Scale every part by a Laurent factor.
    pub fn scale(&self, f: &Laurent) -> FormalKClass {
        let mut symbols = BTreeMap::new();
        for (n, c) in &self.symbols {
            let prod = c.mul(f);
            if !prod.is_zero() {
                symbols.insert(n.clone(), prod);
            }
        }
        FormalKClass {
            scalar: self.scalar.mul(f),
            symbols,
        }
    }

    /// Tensor by O(a): shifts every Laurent coefficient, never introduces
    /// new symbols.
    pub fn twist(&self, a: i64) -> FormalKClass {
        self.scale(&Laurent::u(a))
    }

    /// Duality: u^a -> u^{-a} on coefficients, symbols to their declared
    /// partners.
    pub fn dual(&self, table: &SymbolTable) -> Result<FormalKClass> {
        let mut symbols: BTreeMap<String, Laurent> = BTreeMap::new();
        for (n, c) in &self.symbols {
            let partner = table.dual_name(n)?.to_string();
            let entry = symbols.entry(partner).or_default();
            *entry = entry.add(&c.dual());
        }
        symbols.retain(|_, c| !c.is_zero());
        Ok(FormalKClass {
            scalar: self.scalar.dual(),
            symbols,
        })
    }

    pub fn symbol_coeff(&self, name: &str) -> Option<&Laurent> {
        self.symbols.get(name)
    }

    /// Replace `name` by `replacement` wherever it occurs.
    pub fn substitute(&self, name: &str, replacement: &FormalKClass) -> FormalKClass {
        match self.symbols.get(name) {
            None => self.clone(),
            Some(coeff) => {
                let coeff = coeff.clone();
                let mut out = self.clone();
                out.symbols.remove(name);
                out.add(&replacement.scale(&coeff))
            }
        }
    }

    /// Canonical representative among unit Laurent multiples `±u^e * self`:
    /// the anchor term (the first symbol's lowest coefficient term, or the
    /// lowest scalar term for purely scalar classes) is normalized to sit at
    /// u^0 with positive leading sign. Identities that differ only by which
    /// equation survived an elimination agree after this normalization.
    pub fn canonical_unit_form(&self) -> FormalKClass {
        let anchor = self
            .symbols
            .values()
            .next()
            .and_then(|c| c.lowest_term())
            .or_else(|| self.scalar.lowest_term());
        match anchor {
            None => self.clone(),
            Some((e, c)) => {
                let normalized = self.scale(&Laurent::u(-e));
                if c.leading_sign() < 0 {
                    normalized.neg()
                } else {
                    normalized
                }
            }
        }
    }
}

impl fmt::Display for FormalKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.scalar.is_zero() {
            parts.push(format!("{}", self.scalar));
        }
        for (name, c) in &self.symbols {
            if let Some((0, 1)) = c.as_unit_monomial() {
                parts.push(name.clone());
            } else {
                parts.push(format!("({})*{}", c, name));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FormalKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An exact sequence interpreted as a K-theory relation: the alternating sum
/// of its terms vanishes.
#[derive(Clone, Debug)]
pub struct ExactSequenceRelation {
    pub label: String,
    pub terms: Vec<FormalKClass>,
}

impl ExactSequenceRelation {
    pub fn new(label: &str, terms: Vec<FormalKClass>) -> Self {
        ExactSequenceRelation {
            label: label.to_string(),
            terms,
        }
    }

    /// The class asserted to vanish: sum_i (-1)^i term_i.
    pub fn relation_class(&self) -> FormalKClass {
        let mut acc = FormalKClass::zero();
        for (i, t) in self.terms.iter().enumerate() {
            if i % 2 == 0 {
                acc = acc.add(t);
            } else {
                acc = acc.sub(t);
            }
        }
        acc
    }
}
