//! The topological K-theory ring of the non-singular (m-1)-dimensional
//! complex quadric, with exact multiplication and an integer divisibility
//! oracle. Table entries with no closed form (the spin-class squares) are
//! loaded from representation-ring certificates shipped as data; everything
//! else is rebuilt from the stated relations and cross-checked against the
//! certificate at construction time.

mod certs;
mod jsondoc;
mod ring;

pub use certs::{
    build_ring, build_ring_with, embedded_certificate_json, load_certificate, save_certificate,
    EMBEDDED_MAX, EMBEDDED_MIN,
};
pub use jsondoc::{RingDocument, RING_SCHEMA_VERSION};
pub use ring::{
    basis_labels, hyperplane_divides, hyperplane_mult_matrix, integer_divisibility_threshold,
    ring_rank, KClass, Parity, QuadricKRing, XProvenance,
};

#[cfg(test)]
mod tests;
