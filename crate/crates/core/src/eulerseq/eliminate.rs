use super::formal::{ExactSequenceRelation, FormalKClass, SymbolTable};
use super::laurent::Laurent;
use crate::error::{Error, Result};

/// One recorded substitution: `symbol := expression`, solved from the
/// equation at `equation_index`. When the symbol has a dual partner the same
/// step also substitutes the dualized expression for the partner.
#[derive(Clone, Debug)]
pub struct EliminationStep {
    pub symbol: String,
    pub expression: FormalKClass,
    pub equation_index: usize,
    pub equation_label: String,
}

/// Result of sequential elimination, carrying a replayable certificate.
#[derive(Clone, Debug)]
pub struct DerivedIdentity {
    /// The surviving relation, asserted to vanish.
    pub identity: FormalKClass,
    pub steps: Vec<EliminationStep>,
    /// The original system (labels and relation classes).
    pub original: Vec<(String, FormalKClass)>,
}

/// Sequentially eliminate `order` from `system`.
///
/// Each symbol must occur with an invertible coefficient (a unit Laurent
/// monomial `±u^a`) in some not-yet-consumed equation; equations are scanned
/// in index order so the outcome is deterministic. Exactly one relation must
/// survive (or none, in which case the identity is zero).
pub fn eliminate(
    table: &SymbolTable,
    system: &[ExactSequenceRelation],
    order: &[&str],
) -> Result<DerivedIdentity> {
    let original: Vec<(String, FormalKClass)> = system
        .iter()
        .map(|r| (r.label.clone(), r.relation_class()))
        .collect();
    let mut eqs: Vec<Option<FormalKClass>> =
        original.iter().map(|(_, c)| Some(c.clone())).collect();
    let mut steps = Vec::new();

    for &sym in order {
        let partner = table.dual_name(sym).ok().map(str::to_string);
        let mut chosen: Option<usize> = None;
        for (i, eq) in eqs.iter().enumerate() {
            if let Some(eq) = eq {
                // An equation containing both the symbol and its dual cannot
                // be solved for either side: the dualized substitution would
                // reintroduce the symbol.
                if let Some(p) = &partner {
                    if eq.symbol_coeff(p).is_some() {
                        continue;
                    }
                }
                if let Some(coeff) = eq.symbol_coeff(sym) {
                    if coeff.as_unit_monomial().is_some() {
                        chosen = Some(i);
                        break;
                    }
                }
            }
        }
        let idx = chosen.ok_or_else(|| Error::EliminationBlocked {
            symbol: sym.to_string(),
        })?;
        let eq = eqs[idx].take().expect("chosen equation present");
        let coeff = eq.symbol_coeff(sym).expect("symbol present").clone();
        let (a, sign) = coeff.as_unit_monomial().expect("checked invertible");
        // eq = coeff * sym + rest = 0  =>  sym = -coeff^{-1} * rest
        let mut rest = eq.clone();
        rest.symbols.remove(sym);
        let inv = if sign > 0 {
            Laurent::u(-a).neg()
        } else {
            Laurent::u(-a)
        };
        let expression = rest.scale(&inv);
        let dual_expr = if table.dual_name(sym).is_ok() {
            Some((table.dual_name(sym)?.to_string(), expression.dual(table)?))
        } else {
            None
        };
        for slot in eqs.iter_mut() {
            if let Some(e) = slot {
                let mut updated = e.substitute(sym, &expression);
                if let Some((dual_sym, dual_e)) = &dual_expr {
                    updated = updated.substitute(dual_sym, dual_e);
                }
                *slot = Some(updated);
            }
        }
        steps.push(EliminationStep {
            symbol: sym.to_string(),
            expression,
            equation_index: idx,
            equation_label: original[idx].0.clone(),
        });
    }

    let mut remaining: Vec<FormalKClass> = eqs.into_iter().flatten().collect();
    remaining.retain(|c| !c.is_zero());
    let identity = match remaining.len() {
        0 => FormalKClass::zero(),
        1 => remaining.pop().unwrap(),
        n => {
            return Err(Error::InvalidInput(format!(
                "elimination left {} independent relations; solve order is incomplete",
                n
            )))
        }
    };
    Ok(DerivedIdentity {
        identity,
        steps,
        original,
    })
}

/// Replay a certificate: apply the recorded substitutions to the original
/// system and verify that every consumed equation collapses to exactly zero
/// while the surviving one reproduces the derived identity.
pub fn replay(table: &SymbolTable, derived: &DerivedIdentity) -> Result<()> {
    let mut eqs: Vec<FormalKClass> = derived.original.iter().map(|(_, c)| c.clone()).collect();
    for step in &derived.steps {
        let dual_expr = if let Ok(dual_sym) = table.dual_name(&step.symbol) {
            Some((dual_sym.to_string(), step.expression.dual(table)?))
        } else {
            None
        };
        for eq in eqs.iter_mut() {
            let mut updated = eq.substitute(&step.symbol, &step.expression);
            if let Some((dual_sym, dual_e)) = &dual_expr {
                updated = updated.substitute(dual_sym, dual_e);
            }
            *eq = updated;
        }
    }
    let mut survivors = Vec::new();
    for (i, eq) in eqs.iter().enumerate() {
        if !eq.is_zero() {
            survivors.push((i, eq.clone()));
        }
    }
    match survivors.len() {
        0 if derived.identity.is_zero() => Ok(()),
        1 if survivors[0].1 == derived.identity => Ok(()),
        _ => Err(Error::CertificateInvalid(format!(
            "replay left {} nonzero relations where the recorded identity is `{}`",
            survivors.len(),
            derived.identity
        ))),
    }
}
