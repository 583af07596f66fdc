//! Exact computer-algebra workbench for the topological K-theory of complex
//! quadrics.
//!
//! The crate is organized around four subsystems:
//!
//! - [`zlattice`]: exact integer linear algebra (Hermite normal form,
//!   Diophantine solving, lattice membership) used by everything else.
//! - [`reprings`]: representation-ring oracle. Builds Spin characters from
//!   explicit weights, realizes the restriction to the isotropy subgroup, and
//!   certifies the quadric K-ring multiplication table as a quotient by the
//!   augmentation ideal, with replayable ideal-membership witnesses.
//! - [`kquadric`]: the K-theory ring of the (m-1)-dimensional complex quadric
//!   with exact multiplication and an integer divisibility oracle.
//! - [`eulerseq`]: symbolic exact-sequence elimination over formal bundle
//!   classes with Laurent coefficients in the hyperplane class, plus a
//!   truncated first-Chern-class functional.
//!
//! The `qk` binary exposes the user-facing commands; see [`cli`].

pub mod cli;
pub mod error;
pub mod eulerseq;
pub mod kquadric;
pub mod report;
pub mod reprings;
pub mod zlattice;

pub use error::{Error, Result};
