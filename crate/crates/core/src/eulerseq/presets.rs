use num_bigint::BigInt;
use num_traits::One;

use super::chern::{chern_trunc, ChernTrunc};
use super::eliminate::{eliminate, replay, DerivedIdentity};
use super::formal::{ExactSequenceRelation, FormalKClass, SymbolTable};
use super::laurent::Laurent;
use super::parampoly::ParamPoly;
use crate::error::{Error, Result};

/// Outcome of dividing an identity `divisor * S = scalar` by the divisor with
/// constant remainder, introducing a named witness symbol for the quotient
/// class.
#[derive(Clone, Debug)]
pub struct FactoredIdentity {
    pub witness_name: String,
    /// The witness expressed in the original symbols.
    pub witness: FormalKClass,
    pub quotient: Laurent,
    pub remainder: ParamPoly,
    /// `divisor * [witness] - remainder`, asserted zero.
    pub factored: FormalKClass,
    pub divisor: Laurent,
}

/// Rearrange an identity `divisor*S + scalar = 0` as
/// `divisor * (witness) = remainder` with the remainder constant in u.
///
/// Every symbol coefficient must be exactly divisible by the divisor; the
/// scalar part is divided with constant remainder. The witness symbol is
/// registered in the table with its computed rank so the Chern functional
/// can consume the factored identity.
pub fn factor_constant_remainder(
    table: &mut SymbolTable,
    identity: &FormalKClass,
    divisor: &Laurent,
    witness_name: &str,
) -> Result<FactoredIdentity> {
    let mut s_part = FormalKClass::zero();
    for (name, coeff) in &identity.symbols {
        let q = coeff.div_exact(divisor)?;
        s_part = s_part.add(&FormalKClass::symbol_term(name, q));
    }
    let (q, remainder) = identity.scalar.div_with_constant_remainder(divisor)?;
    // identity = divisor*(s_part + q) + remainder = 0
    //   =>  divisor * witness = remainder, witness = -(s_part + q)
    let witness = s_part.add(&FormalKClass::from_scalar(q.clone())).neg();

    let rank = {
        let ct = chern_trunc(table, &witness);
        ct.rank_is_resolved().then_some(ct.rank_const)
    };
    table.declare(witness_name, rank);

    let factored = FormalKClass::symbol_term(witness_name, divisor.clone())
        .sub(&FormalKClass::constant(remainder.clone()));
    Ok(FactoredIdentity {
        witness_name: witness_name.to_string(),
        witness,
        quotient: q,
        remainder,
        factored,
        divisor: divisor.clone(),
    })
}

fn poly_u(exp: i64, p: ParamPoly) -> FormalKClass {
    FormalKClass::from_scalar(Laurent::monomial(exp, p))
}

fn scalar_u(exp: i64) -> FormalKClass {
    FormalKClass::from_scalar(Laurent::u(exp))
}

/// The five exact sequences on a tangent-locus quadric inside a secant-
/// deficient manifold, restricted to the quadric with the fiberwise
/// trivialization of the relative O(1) already applied.
pub fn lqel_system(
    n: &ParamPoly,
    delta: &ParamPoly,
) -> (SymbolTable, Vec<ExactSequenceRelation>, Vec<&'static str>) {
    let mut table = SymbolTable::new();
    table.declare("That_Y", Some(n.add(&ParamPoly::one())));
    table.declare("T_Y", Some(n.clone()));
    table.declare("T_F", Some(delta.sub(&ParamPoly::one())));
    table.declare("T_Pdelta", Some(delta.clone()));
    table.declare("T_Theta|F", Some(n.scale(&BigInt::from(2))));

    let one = FormalKClass::int(1);
    let relations = vec![
        // 0 -> O -> That_Y(1) -> T_Y -> 0
        ExactSequenceRelation::new(
            "tangent-lift",
            vec![
                one.clone(),
                FormalKClass::symbol("That_Y").twist(1),
                FormalKClass::symbol("T_Y"),
            ],
        ),
        // 0 -> O -> That_Y -> T_Theta|F -> T_Y -> 0 (relative O(1) trivial on the fibre)
        ExactSequenceRelation::new(
            "euler-four-term",
            vec![
                one.clone(),
                FormalKClass::symbol("That_Y"),
                FormalKClass::symbol("T_Theta|F"),
                FormalKClass::symbol("T_Y"),
            ],
        ),
        // 0 -> O -> O(1)^{delta+1} -> T_Pdelta -> 0
        ExactSequenceRelation::new(
            "euler-linear-span",
            vec![
                one.clone(),
                poly_u(1, delta.add(&ParamPoly::one())),
                FormalKClass::symbol("T_Pdelta"),
            ],
        ),
        // 0 -> T_F -> T_Pdelta|F -> O_F(2) -> 0
        ExactSequenceRelation::new(
            "quadric-in-span",
            vec![
                FormalKClass::symbol("T_F"),
                FormalKClass::symbol("T_Pdelta"),
                scalar_u(2),
            ],
        ),
        // 0 -> T_F -> T_Theta|F -> O_F^{2n+1-delta} -> 0
        ExactSequenceRelation::new(
            "fibre-normal",
            vec![
                FormalKClass::symbol("T_F"),
                FormalKClass::symbol("T_Theta|F"),
                FormalKClass::constant(n.scale(&BigInt::from(2)).add(&ParamPoly::one()).sub(delta)),
            ],
        ),
    ];
    let order = vec!["T_Pdelta", "T_F", "T_Theta|F", "T_Y"];
    (table, relations, order)
}

#[derive(Clone, Debug)]
pub struct LqelDerivation {
    pub table: SymbolTable,
    pub derived: DerivedIdentity,
    pub factored: FactoredIdentity,
    pub chern: ChernTrunc,
}

/// Eliminate the LQEL system down to the single relation in the lifted
/// tangent class and factor out (1 + u). The remainder is the constant
/// 2(n - delta) that drives every divisibility statement downstream.
pub fn derive_lqel(n: &ParamPoly, delta: &ParamPoly) -> Result<LqelDerivation> {
    let (mut table, relations, order) = lqel_system(n, delta);
    let derived = eliminate(&table, &relations, &order)?;
    replay(&table, &derived)?;
    let one_plus_u = Laurent::one().add(&Laurent::u(1));
    let factored = factor_constant_remainder(&mut table, &derived.identity, &one_plus_u, "W")?;
    let chern = chern_trunc(&table, &factored.factored);
    Ok(LqelDerivation {
        table,
        derived,
        factored,
        chern,
    })
}

/// Normal-bundle refinement: the four sequences comparing the quadric's
/// normal bundles inside its linear span, the entry-locus quadric and the
/// ambient manifold, with the standard identifications
/// N_{F|Q} = O(1), N_{F|Pdelta} = O(2), N_{Pdelta|PN} = O(1)^{N-delta}.
pub fn refined_normal_system(
    n: &ParamPoly,
    delta: &ParamPoly,
    cap_n: &ParamPoly,
) -> (SymbolTable, Vec<ExactSequenceRelation>, Vec<&'static str>) {
    let mut table = SymbolTable::new();
    table.declare("That_Y", Some(n.add(&ParamPoly::one())));
    table.declare("N_Y", Some(cap_n.sub(n)));
    table.declare("N_F|Y", Some(n.sub(delta).add(&ParamPoly::one())));
    table.declare("N_F|PN", Some(cap_n.sub(delta).add(&ParamPoly::one())));
    table.declare("N_Q|Y", Some(n.sub(delta)));

    let relations = vec![
        // 0 -> That_Y -> O^{N+1} -> N_Y(-1) -> 0
        ExactSequenceRelation::new(
            "tautological-normal",
            vec![
                FormalKClass::symbol("That_Y"),
                FormalKClass::constant(cap_n.add(&ParamPoly::one())),
                FormalKClass::symbol("N_Y").twist(-1),
            ],
        ),
        // 0 -> N_F|Y -> N_F|PN -> N_Y|F -> 0
        ExactSequenceRelation::new(
            "normal-restriction",
            vec![
                FormalKClass::symbol("N_F|Y"),
                FormalKClass::symbol("N_F|PN"),
                FormalKClass::symbol("N_Y"),
            ],
        ),
        // 0 -> O(2) -> N_F|PN -> O(1)^{N-delta} -> 0
        ExactSequenceRelation::new(
            "span-normal",
            vec![
                scalar_u(2),
                FormalKClass::symbol("N_F|PN"),
                poly_u(1, cap_n.sub(delta)),
            ],
        ),
        // 0 -> O(1) -> N_F|Y -> N_Q|Y -> 0
        ExactSequenceRelation::new(
            "entry-locus-normal",
            vec![
                scalar_u(1),
                FormalKClass::symbol("N_F|Y"),
                FormalKClass::symbol("N_Q|Y"),
            ],
        ),
    ];
    let order = vec!["N_F|PN", "N_F|Y", "N_Y"];
    (table, relations, order)
}

#[derive(Clone, Debug)]
pub struct RefinedNormalDerivation {
    pub table: SymbolTable,
    pub derived: DerivedIdentity,
    /// `W - N_Q|Y(-1)`, asserted zero (the witness of the LQEL factorization
    /// is the twisted normal bundle of the entry locus).
    pub witness_match: FormalKClass,
    /// `N_Q|Y + N_Q|Y(-1) - 2(n-delta)`, asserted zero: the direct sum is
    /// stably trivial on the tangent-locus quadric.
    pub stable_triviality: FormalKClass,
    pub remainder: ParamPoly,
}

pub fn derive_refined_normal(
    n: &ParamPoly,
    delta: &ParamPoly,
    cap_n: &ParamPoly,
) -> Result<RefinedNormalDerivation> {
    let (table, relations, order) = refined_normal_system(n, delta, cap_n);
    let derived = eliminate(&table, &relations, &order)?;
    replay(&table, &derived)?;

    // The surviving identity must say That_Y - (delta+2) + u = N_Q|Y(-1),
    // i.e. W = N_Q|Y(-1) for the same W as in the LQEL factorization.
    let w_expr = FormalKClass::symbol("That_Y")
        .sub(&FormalKClass::constant(delta.add(&ParamPoly::int(2))))
        .add(&FormalKClass::from_scalar(Laurent::u(1)));
    let nq_twisted = FormalKClass::symbol("N_Q|Y").twist(-1);
    let witness_match = w_expr.sub(&nq_twisted);
    if derived.identity.canonical_unit_form() != witness_match.canonical_unit_form() {
        return Err(Error::CertificateInvalid(format!(
            "refined normal derivation produced `{}`, expected `{}` up to a unit",
            derived.identity, witness_match
        )));
    }

    // Substituting W = N_Q|Y(-1) into (1+u)W = 2(n-delta):
    let remainder = n.sub(delta).scale(&BigInt::from(2));
    let stable_triviality = nq_twisted
        .clone()
        .add(&FormalKClass::symbol("N_Q|Y"))
        .sub(&FormalKClass::constant(remainder.clone()));
    Ok(RefinedNormalDerivation {
        table,
        derived,
        witness_match,
        stable_triviality,
        remainder,
    })
}

/// The generalized Euler sequence of the projectivized twisted conormal
/// bundle, restricted to a contact locus, plus the ambient tangent and normal
/// comparisons on the contact linear space.
pub fn dual_variety_system(
    n: &ParamPoly,
    cap_n: &ParamPoly,
    k: &ParamPoly,
) -> (SymbolTable, Vec<ExactSequenceRelation>, Vec<&'static str>) {
    let mut table = SymbolTable::new();
    table.declare("T_C", Some(k.clone()));
    table.declare("T_PN", Some(cap_n.clone()));
    table.declare("T_Phi|C", Some(cap_n.sub(&ParamPoly::one())));
    table.declare("T_Y", Some(n.clone()));
    table.declare("N_Y", Some(cap_n.sub(n)));
    table.declare_dual_pair("N_Y", "N_Y*");
    table.declare("N_C|Y", Some(n.sub(k)));
    table.declare_dual_pair("N_C|Y", "N_C|Y*");

    let one = FormalKClass::int(1);
    let relations = vec![
        // 0 -> O -> N_Y*(1) -> T_Phi|C -> T_Y -> 0 (relative O(1) trivial on the fibre)
        ExactSequenceRelation::new(
            "conormal-euler",
            vec![
                one.clone(),
                FormalKClass::symbol("N_Y*").twist(1),
                FormalKClass::symbol("T_Phi|C"),
                FormalKClass::symbol("T_Y"),
            ],
        ),
        // 0 -> O -> O(1)^{k+1} -> T_C -> 0
        ExactSequenceRelation::new(
            "euler-contact-locus",
            vec![
                one.clone(),
                poly_u(1, k.add(&ParamPoly::one())),
                FormalKClass::symbol("T_C"),
            ],
        ),
        // 0 -> T_Y -> T_PN|Y -> N_Y -> 0
        ExactSequenceRelation::new(
            "ambient-tangent",
            vec![
                FormalKClass::symbol("T_Y"),
                FormalKClass::symbol("T_PN"),
                FormalKClass::symbol("N_Y"),
            ],
        ),
        // 0 -> O -> O(1)^{N+1} -> T_PN -> 0
        ExactSequenceRelation::new(
            "euler-ambient",
            vec![
                one.clone(),
                poly_u(1, cap_n.add(&ParamPoly::one())),
                FormalKClass::symbol("T_PN"),
            ],
        ),
        // 0 -> T_C -> T_Phi|C -> O^{N-1-k} -> 0
        ExactSequenceRelation::new(
            "fibre-normal",
            vec![
                FormalKClass::symbol("T_C"),
                FormalKClass::symbol("T_Phi|C"),
                FormalKClass::constant(cap_n.sub(&ParamPoly::one()).sub(k)),
            ],
        ),
    ];
    let order = vec!["T_C", "T_PN", "T_Phi|C", "T_Y"];
    (table, relations, order)
}

#[derive(Clone, Debug)]
pub struct DualVarietyDerivation {
    pub table: SymbolTable,
    /// `u*N_Y* - N_Y - (k - N)(u - 1)`, asserted zero.
    pub landman: DerivedIdentity,
    /// `N_C|Y - u*N_C|Y*`, asserted zero.
    pub normal_iso: DerivedIdentity,
    pub chern: ChernTrunc,
}

pub fn derive_dual_variety(
    n: &ParamPoly,
    cap_n: &ParamPoly,
    k: &ParamPoly,
) -> Result<DualVarietyDerivation> {
    let (table, relations, order) = dual_variety_system(n, cap_n, k);
    let landman = eliminate(&table, &relations, &order)?;
    replay(&table, &landman)?;

    // Eliminate the ambient normal bundle with
    // 0 -> N_C|Y -> O(1)^{N-k} -> N_Y|C -> 0.
    let stage2 = vec![
        ExactSequenceRelation::new("ambient-normal-relation", vec![landman.identity.clone()]),
        ExactSequenceRelation::new(
            "contact-normal-sum",
            vec![
                FormalKClass::symbol("N_C|Y"),
                poly_u(1, cap_n.sub(k)),
                FormalKClass::symbol("N_Y"),
            ],
        ),
    ];
    let normal_iso = eliminate(&table, &stage2, &["N_Y"])?;
    replay(&table, &normal_iso)?;
    let chern = chern_trunc(&table, &normal_iso.identity);
    Ok(DualVarietyDerivation {
        table,
        landman,
        normal_iso,
        chern,
    })
}

#[derive(Clone, Debug)]
pub struct ScrollResult {
    /// The dual deficiency forced by compatibility, `k = l - m`.
    pub k: ParamPoly,
    /// Residual coefficients after substituting the solution; all zero.
    pub consistent: bool,
}

/// For a scroll the contact locus lies in a fibre, so
/// N_C|Y = m + (l-k) O(1) in K-theory; compatibility with the self-duality
/// of the contact normal bundle pins down k.
pub fn derive_scroll(l: &ParamPoly, m_base: &ParamPoly) -> Result<ScrollResult> {
    if let (Some(lc), Some(mc)) = (l.as_constant(), m_base.as_constant()) {
        if mc >= lc {
            return Err(Error::InvalidInput(format!(
                "scroll requires base dimension m < fibre dimension l (got l = {}, m = {})",
                lc, mc
            )));
        }
    }
    let k = ParamPoly::param("k");
    // N_C|Y as an explicit scalar class.
    let ncy = Laurent::constant(m_base.clone()).add(&Laurent::monomial(1, l.sub(&k)));
    // Residual of N_C|Y = N_C|Y*(1):
    let residual = ncy.sub(&ncy.dual().shift(1));

    let mut solution: Option<ParamPoly> = None;
    let mut coeffs: Vec<ParamPoly> = residual.terms().map(|(_, c)| c.clone()).collect();
    for c in &coeffs {
        if let Some((a, b)) = c.split_linear("k") {
            if let Some(ac) = a.as_constant() {
                if ac == BigInt::one() {
                    solution = Some(b.neg());
                    break;
                }
                if (-&ac).is_one() {
                    solution = Some(b);
                    break;
                }
            }
        }
    }
    let k_sol = solution.ok_or_else(|| {
        Error::NoSolution("no coefficient equation is linear in k with unit coefficient".into())
    })?;
    for c in coeffs.iter_mut() {
        *c = c.substitute("k", &k_sol);
    }
    let consistent = coeffs.iter().all(|c| c.is_zero());
    if !consistent {
        return Err(Error::NoSolution(format!(
            "the coefficient system is inconsistent after substituting k = {}",
            k_sol
        )));
    }
    Ok(ScrollResult {
        k: k_sol,
        consistent,
    })
}
