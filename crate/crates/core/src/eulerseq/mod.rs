//! Symbolic exact-sequence elimination over K-theory.
//!
//! Exact sequences of vector bundles become linear relations among formal
//! bundle symbols with Laurent coefficients in the hyperplane class
//! u = [O(1)]; sequential substitution derives closed identities with a
//! replayable certificate, and a truncated Chern functional extracts the
//! rank and first-Chern consequences. The coefficient ring imposes no
//! relations on u: nilpotency of the reduced hyperplane class lives in the
//! quadric ring, not here, because these derivations hold before any quadric
//! relation is used.

mod chern;
mod eliminate;
mod formal;
mod laurent;
mod parampoly;
mod presets;

pub use chern::{chern_trunc, ChernTrunc};
pub use eliminate::{eliminate, replay, DerivedIdentity, EliminationStep};
pub use formal::{ExactSequenceRelation, FormalKClass, SymbolDecl, SymbolTable};
pub use laurent::Laurent;
pub use parampoly::ParamPoly;
pub use presets::{
    derive_dual_variety, derive_lqel, derive_refined_normal, derive_scroll, dual_variety_system,
    factor_constant_remainder, lqel_system, refined_normal_system, DualVarietyDerivation,
    FactoredIdentity, LqelDerivation, RefinedNormalDerivation, ScrollResult,
};
