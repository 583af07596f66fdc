//! Exact integer linear algebra: Hermite normal form, Diophantine solving,
//! and lattice membership. Everything downstream (ring divisibility oracles,
//! ideal-membership certificates) reduces to these primitives, so all results
//! here are deterministic and certificate-grade: no floating point, no
//! modular arithmetic, no randomization.

mod hnf;
mod matrix;

pub use hnf::{hnf, is_unimodular, HnfDecomposition, IncrementalHnf, SparseRow};
pub use matrix::{extended_gcd, IntMatrix};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Solve `c * g = v` for a row vector `c` over the rows of `g`.
///
/// This decides membership of `v` in the lattice spanned by the rows of `g`
/// and produces explicit coordinates when it holds.
fn solve_left(g: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != g.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} does not match column count {}",
            v.len(),
            g.cols()
        )));
    }
    let dec = hnf(g);
    solve_left_with(&dec, g.rows(), v)
}

/// Lattice-membership solve against a precomputed decomposition; callers
/// testing many right-hand sides against one lattice should use this.
pub fn solve_left_with(
    dec: &HnfDecomposition,
    n_rows: usize,
    v: &[BigInt],
) -> Result<Option<Vec<BigInt>>> {
    if v.len() != dec.h.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} does not match column count {}",
            v.len(),
            dec.h.cols()
        )));
    }
    let mut rem = v.to_vec();
    let mut d = vec![BigInt::zero(); dec.h.rows()];
    for (i, &pcol) in dec.pivots.iter().enumerate() {
        let pivot = dec.h.get(i, pcol);
        let (q, r) = num_integer::Integer::div_rem(&rem[pcol], pivot);
        if !r.is_zero() {
            return Ok(None);
        }
        if !q.is_zero() {
            for c in 0..dec.h.cols() {
                rem[c] -= &q * dec.h.get(i, c);
            }
        }
        d[i] = q;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    // Map back through u: c = d * u.
    let mut coords = vec![BigInt::zero(); n_rows];
    for (i, di) in d.iter().enumerate() {
        if di.is_zero() {
            continue;
        }
        for (j, coord) in coords.iter_mut().enumerate() {
            *coord += di * dec.u.get(i, j);
        }
    }
    Ok(Some(coords))
}

/// Solve `a * x = b` exactly over the integers, or decide that no integer
/// solution exists. The decision goes through the Hermite normal form of the
/// transposed system, so it is exact in both directions.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side length {} does not match row count {}",
            b.len(),
            a.rows()
        )));
    }
    solve_left(&a.transpose(), b)
}

/// Z-basis of the kernel `{x : a * x = 0}`, one basis vector per row of the
/// result (a 0 x cols matrix when the kernel is trivial). The returned basis
/// is itself in Hermite normal form, hence canonical.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let at = a.transpose();
    let dec = hnf(&at);
    let mut rows = Vec::new();
    for r in 0..dec.h.rows() {
        if dec.h.is_zero_row(r) {
            rows.push(dec.u.row(r).to_vec());
        }
    }
    if rows.is_empty() {
        return IntMatrix::zero(0, a.cols());
    }
    let raw = IntMatrix::from_rows(rows).expect("kernel rows share length");
    hnf(&raw).h
}

/// Coordinates of `v` in the lattice spanned by the rows of `generators`,
/// i.e. `c` with `c * generators = v`, or `None` when `v` is not a member.
pub fn lattice_member(generators: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    solve_left(generators, v)
}

#[cfg(test)]
mod tests;
