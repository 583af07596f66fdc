use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ring::{basis_labels, Parity, QuadricKRing, XProvenance};
use crate::error::{Error, Result};

pub const RING_SCHEMA_VERSION: u32 = 1;

/// Serialized form of a quadric K-ring: dimension, basis labels, the full
/// multiplication table (coordinates as decimal strings so arbitrary
/// precision survives), and the provenance of the spin-class product rows.
/// Round-trips bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDocument {
    pub schema_version: u32,
    pub m: usize,
    pub rank: usize,
    pub parity: Parity,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
    pub x_provenance: XProvenance,
}

impl QuadricKRing {
    pub fn to_document(&self) -> RingDocument {
        RingDocument {
            schema_version: RING_SCHEMA_VERSION,
            m: self.m(),
            rank: self.rank(),
            parity: self.parity(),
            basis: self.basis_labels().to_vec(),
            table: self
                .table()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(BigInt::to_string).collect())
                        .collect()
                })
                .collect(),
            x_provenance: self.x_provenance().clone(),
        }
    }

    pub fn export_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    /// Rebuild a ring from its document. The closed-form part of the table
    /// is revalidated against the stated relations, so a tampered document
    /// does not import.
    pub fn from_document(doc: &RingDocument) -> Result<Self> {
        if doc.schema_version != RING_SCHEMA_VERSION {
            return Err(Error::CertificateInvalid(format!(
                "unsupported ring schema version {}",
                doc.schema_version
            )));
        }
        if doc.basis != basis_labels(doc.m) {
            return Err(Error::CertificateInvalid(
                "ring document basis labels do not match the canonical basis".into(),
            ));
        }
        let mut table = Vec::with_capacity(doc.rank);
        for row in &doc.table {
            let mut out_row = Vec::with_capacity(doc.rank);
            for cell in row {
                let coords: std::result::Result<Vec<BigInt>, _> =
                    cell.iter().map(|s| s.parse::<BigInt>()).collect();
                out_row.push(coords.map_err(|_| {
                    Error::CertificateInvalid("non-integer coordinate in ring document".into())
                })?);
            }
            table.push(out_row);
        }
        QuadricKRing::from_parts(doc.m, table, doc.x_provenance.clone())
    }

    pub fn import_json(text: &str) -> Result<Self> {
        let doc: RingDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}
