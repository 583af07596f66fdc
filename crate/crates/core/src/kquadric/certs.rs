use std::path::{Path, PathBuf};

use super::ring::QuadricKRing;
use crate::error::{Error, Result};
use crate::reprings::{
    quotient_table, quotient_table_auto, verify_certificate, QuotientCertificate,
};

/// Ambient dimensions whose oracle certificates ship with the crate. The
/// tables were generated once by the representation-ring oracle and are
/// replay-verified in the test suite; dimensions outside the range are
/// computed on demand.
pub const EMBEDDED_MIN: usize = 3;
pub const EMBEDDED_MAX: usize = 12;

pub fn embedded_certificate_json(m: usize) -> Option<&'static str> {
    Some(match m {
        3 => include_str!("../../data/certs/m3.json"),
        4 => include_str!("../../data/certs/m4.json"),
        5 => include_str!("../../data/certs/m5.json"),
        6 => include_str!("../../data/certs/m6.json"),
        7 => include_str!("../../data/certs/m7.json"),
        8 => include_str!("../../data/certs/m8.json"),
        9 => include_str!("../../data/certs/m9.json"),
        10 => include_str!("../../data/certs/m10.json"),
        11 => include_str!("../../data/certs/m11.json"),
        12 => include_str!("../../data/certs/m12.json"),
        _ => return None,
    })
}

/// Load the product certificate for m, preferring (in order): a file in
/// `cert_dir`, the embedded data, a fresh oracle run. An explicit degree
/// bound always forces a fresh run at that bound. When `verify` is set the
/// certificate's ideal combinations are replayed before use.
pub fn load_certificate(
    m: usize,
    cert_dir: Option<&Path>,
    degree_bound: Option<usize>,
    verify: bool,
) -> Result<(QuotientCertificate, String)> {
    if let Some(dir) = cert_dir {
        let path = dir.join(format!("m{}.json", m));
        if path.is_file() {
            let text = std::fs::read_to_string(&path)?;
            let cert = QuotientCertificate::from_json(&text)?;
            if cert.m != m {
                return Err(Error::CertificateInvalid(format!(
                    "{} contains a certificate for m = {}",
                    path.display(),
                    cert.m
                )));
            }
            verify_certificate(&cert)?;
            return Ok((cert, format!("file:{}", path.display())));
        }
    }
    if let Some(bound) = degree_bound {
        let cert = quotient_table(m, bound)?;
        return Ok((cert, format!("computed (degree bound {})", bound)));
    }
    if let Some(json) = embedded_certificate_json(m) {
        let cert = QuotientCertificate::from_json(json)?;
        if verify {
            verify_certificate(&cert)?;
        }
        return Ok((cert, "embedded".to_string()));
    }
    let cert = quotient_table_auto(m)?;
    Ok((cert, "computed".to_string()))
}

/// Build the K-ring of the (m-1)-dimensional quadric for m >= 3, using the
/// shipped certificate data when available.
pub fn build_ring(m: usize) -> Result<QuadricKRing> {
    build_ring_with(m, None, None)
}

pub fn build_ring_with(
    m: usize,
    cert_dir: Option<&Path>,
    degree_bound: Option<usize>,
) -> Result<QuadricKRing> {
    if m < 3 {
        return Err(Error::UnsupportedDimension { m: m as i64 });
    }
    let (cert, source) = load_certificate(m, cert_dir, degree_bound, false)?;
    QuadricKRing::from_certificate(&cert, &source)
}

pub fn save_certificate(cert: &QuotientCertificate, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("m{}.json", cert.m));
    std::fs::write(&path, cert.to_json()?)?;
    Ok(path)
}
