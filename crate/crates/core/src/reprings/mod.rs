//! Representation-ring oracle for the quadric K-ring.
//!
//! The quadric is a homogeneous space of the simply-connected Spin group,
//! so its K-theory is the representation ring of the rank-preserving
//! isotropy subgroup modulo the ideal generated by the augmentation ideal of
//! the ambient group. Everything here is computed from explicit weight
//! characters in doubled coordinates (so spin weights are integers), and the
//! resulting multiplication table ships with replayable ideal-membership
//! witnesses rather than as trusted output.

mod m3;
mod quotient;
mod spin;
mod weight;

pub use m3::{m3_special_table, verify_m3_certificate};
pub use quotient::{
    quotient_table, quotient_table_auto, verify_certificate, IdealTerm, ProductCert, Provenance,
    QuotientCertificate, QuotientContext, XKind, CERTIFICATE_SCHEMA_VERSION,
};
pub use spin::{
    clifford_cross_sum, descended_generators, exterior_power, half_spin_characters, lambda_char,
    restrict_to_h, spin_character, spin_generators, split_middle_exterior, standard_weights,
    t_char, t_inv_char, torus_rank, x_char, x_pm_chars, x_rank, RingPresentation,
};
pub use weight::{
    canonicalize, is_canonical, CompressedCharacter, Weight, WeightCharacter, WeylKind,
};
