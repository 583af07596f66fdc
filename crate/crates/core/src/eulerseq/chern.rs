use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

use super::formal::{FormalKClass, SymbolTable};
use super::parampoly::ParamPoly;

/// Degree <= 1 truncation of the Chern character applied to a formal class:
/// the rank functional and the first Chern class in units of the hyperplane
/// generator h. Symbols without declared data stay symbolic.
///
/// Conventions: rank(u^a) = 1, c1(u^a) = a*h, rank is additive and
/// multiplicative, and c1(ab) = rank(a) c1(b) + rank(b) c1(a). Duality sends
/// c1(s*) to -c1(s) and preserves rank.
#[derive(Clone, Debug, Default)]
pub struct ChernTrunc {
    /// Fully evaluated part of the rank.
    pub rank_const: ParamPoly,
    /// Coefficients of symbolic rank(s) terms, keyed by primal symbol.
    pub rank_syms: BTreeMap<String, ParamPoly>,
    /// Fully evaluated multiple of h in c1.
    pub h_const: ParamPoly,
    /// Coefficients of symbolic c1(s) terms, keyed by primal symbol.
    pub c1_syms: BTreeMap<String, ParamPoly>,
    /// Coefficients of symbolic rank(s)*h terms (from twists of symbols with
    /// undeclared rank).
    pub rank_h_syms: BTreeMap<String, ParamPoly>,
}

fn accumulate(map: &mut BTreeMap<String, ParamPoly>, key: &str, val: ParamPoly) {
    if val.is_zero() {
        return;
    }
    let entry = map.entry(key.to_string()).or_default();
    *entry = entry.add(&val);
    if entry.is_zero() {
        map.remove(key);
    }
}

pub fn chern_trunc(table: &SymbolTable, class: &FormalKClass) -> ChernTrunc {
    let mut out = ChernTrunc {
        rank_const: class.scalar.eval_at_one(),
        h_const: class.scalar.weighted_exponent_sum(),
        ..Default::default()
    };

    for (name, coeff) in &class.symbols {
        let (primal, sign) = table.primal(name);
        let sign_poly = ParamPoly::int(sign as i64);
        let total: ParamPoly = coeff.eval_at_one();
        let weighted: ParamPoly = coeff.weighted_exponent_sum();
        let rank_decl = table.rank(name);
        let c1_decl = table
            .decl(&primal)
            .and_then(|d| d.c1_h.clone())
            .map(|c| c.mul(&sign_poly));

        match &rank_decl {
            Some(r) => {
                out.rank_const = out.rank_const.add(&total.mul(r));
                out.h_const = out.h_const.add(&weighted.mul(r));
            }
            None => {
                accumulate(&mut out.rank_syms, &primal, total.clone());
                accumulate(&mut out.rank_h_syms, &primal, weighted);
            }
        }
        match &c1_decl {
            Some(c) => out.h_const = out.h_const.add(&total.mul(c)),
            None => accumulate(&mut out.c1_syms, &primal, total.mul(&sign_poly)),
        }
    }
    out
}

impl ChernTrunc {
    pub fn rank_is_resolved(&self) -> bool {
        self.rank_syms.is_empty()
    }

    /// Render the c1 part of an identity (class = 0) as an equation with the
    /// symbolic c1 terms on the left: `2*c1(W) = -(n - delta)*h`. The overall
    /// sign is normalized so the first symbolic term is positive.
    pub fn c1_equation(&self) -> String {
        let flip = self
            .c1_syms
            .values()
            .next()
            .map(|c| c.leading_sign() < 0)
            .unwrap_or(false);
        let norm = |p: &ParamPoly| if flip { p.neg() } else { p.clone() };
        let mut lhs = Vec::new();
        for (name, c) in &self.c1_syms {
            lhs.push(coeff_term(&norm(c), &format!("c1({})", name)));
        }
        for (name, c) in &self.rank_h_syms {
            lhs.push(coeff_term(&norm(c), &format!("rank({})*h", name)));
        }
        let lhs = if lhs.is_empty() {
            "0".to_string()
        } else {
            lhs.join(" + ")
        };
        let neg = if flip {
            self.h_const.clone()
        } else {
            self.h_const.neg()
        };
        let rhs = if neg.is_zero() {
            "0".to_string()
        } else if neg.is_constant() {
            format!("{}*h", neg)
        } else {
            format!("({})*h", neg)
        };
        format!("{} = {}", lhs, rhs)
    }

    /// Render the rank part of an identity as `lhs = rhs`.
    pub fn rank_equation(&self) -> String {
        let mut lhs = Vec::new();
        for (name, c) in &self.rank_syms {
            lhs.push(coeff_term(c, &format!("rank({})", name)));
        }
        let lhs = if lhs.is_empty() {
            "0".to_string()
        } else {
            lhs.join(" + ")
        };
        format!("{} = {}", lhs, self.rank_const.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.rank_const.is_zero()
            && self.h_const.is_zero()
            && self.rank_syms.is_empty()
            && self.c1_syms.is_empty()
            && self.rank_h_syms.is_empty()
    }
}

fn coeff_term(c: &ParamPoly, name: &str) -> String {
    if let Some(k) = c.as_constant() {
        if k == BigInt::from(1) {
            return name.to_string();
        }
        if k == BigInt::from(-1) {
            return format!("-{}", name);
        }
        return format!("{}*{}", k, name);
    }
    format!("({})*{}", c, name)
}

impl fmt::Display for ChernTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank: {}; c1: {}",
            self.rank_equation(),
            self.c1_equation()
        )
    }
}
