use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reprings::QuotientCertificate;
use crate::zlattice::{kernel, solve_integer, IntMatrix};

/// Parity of the ambient projective dimension m; decides the basis shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Where the spin-class product rows of a ring came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XProvenance {
    pub source: String,
    pub method: String,
    pub degree_bound: usize,
    pub tool: String,
}

/// The K-theory ring of the non-singular (m-1)-dimensional complex quadric:
/// a torsion-free ring of rank m (m even) or m + 1 (m odd) with canonical
/// basis (1, L, ..., L^{m-2}, X) or (1, L, ..., L^{m-2}, X+, X-), where
/// L = O(1) - 1 is nilpotent of index exactly m.
///
/// Products involving only L-powers and the L*X rows follow from the closed
/// relations; the spin-class squares have no stated closed form and are
/// loaded from a representation-ring certificate, never guessed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricKRing {
    m: usize,
    rank: usize,
    parity: Parity,
    basis_labels: Vec<String>,
    table: Vec<Vec<Vec<BigInt>>>,
    x_provenance: XProvenance,
}

/// Element of a quadric K-ring: an integer coordinate vector in the
/// canonical basis (the group is free abelian; there is no torsion to
/// track). Carries the ambient dimension so cross-ring arithmetic is an
/// error instead of silent nonsense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    pub(crate) m: usize,
    pub(crate) coords: Vec<BigInt>,
}

impl KClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

pub fn ring_rank(m: usize) -> usize {
    if m.is_multiple_of(2) {
        m
    } else {
        m + 1
    }
}

pub fn basis_labels(m: usize) -> Vec<String> {
    let mut labels = vec!["1".to_string()];
    for i in 1..=(m - 2) {
        labels.push(if i == 1 {
            "L".to_string()
        } else {
            format!("L^{}", i)
        });
    }
    if m.is_multiple_of(2) {
        labels.push("X".to_string());
    } else {
        labels.push("X+".to_string());
        labels.push("X-".to_string());
    }
    labels
}

fn two_pow(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Coordinates of L^{m-1} re-expressed in the canonical basis via the
/// alternating-sum relation:
///   even m: 2^{m/2} X       = 2^{m-1} - 2^{m-2} L + ... + 2 L^{m-2} - L^{m-1}
///   odd m:  2^{(m-1)/2}(X+ + X-) = 2^{m-1} - ... - 2 L^{m-2} + L^{m-1}
fn l_top_coords(m: usize) -> Vec<BigInt> {
    let rank = ring_rank(m);
    let mut v = vec![BigInt::zero(); rank];
    if m.is_multiple_of(2) {
        for i in 0..=(m - 2) {
            let c = two_pow(m - 1 - i);
            v[i] = if i % 2 == 0 { c } else { -c };
        }
        v[rank - 1] = -two_pow(m / 2);
    } else {
        for i in 0..=(m - 2) {
            let c = two_pow(m - 1 - i);
            v[i] = if i % 2 == 0 { -c } else { c };
        }
        let h = two_pow((m - 1) / 2);
        v[rank - 2] = h.clone();
        v[rank - 1] = h;
    }
    v
}

/// L * e_j for every basis vector, from the closed relations only
/// (L * L^{m-2} uses the alternating sum; L * X uses the stated L X rows).
fn mul_by_l_column(m: usize, j: usize) -> Vec<BigInt> {
    let rank = ring_rank(m);
    let mut v = vec![BigInt::zero(); rank];
    let x0 = m - 1; // index of the first spin class
    if j < x0 {
        // L * L^j = L^{j+1}
        if j < m - 2 {
            v[j + 1] = BigInt::one();
        } else {
            v = l_top_coords(m);
        }
    } else if m.is_multiple_of(2) {
        // L X = 2^{m/2} - 2X
        v[0] = two_pow(m / 2);
        v[x0] = BigInt::from(-2);
    } else {
        // L X± = 2^{(m-1)/2} - X± - X∓
        v[0] = two_pow((m - 1) / 2);
        v[x0] = -BigInt::one();
        v[x0 + 1] = -BigInt::one();
    }
    v
}

fn mul_by_l(m: usize, coords: &[BigInt]) -> Vec<BigInt> {
    let rank = ring_rank(m);
    let mut out = vec![BigInt::zero(); rank];
    for (j, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, cell) in mul_by_l_column(m, j).iter().enumerate() {
            out[i] += c * cell;
        }
    }
    out
}

/// The full multiplication table minus the spin-class squares, which have no
/// closed form here. `None` marks the products that must come from the
/// oracle certificate.
#[allow(clippy::type_complexity)]
fn closed_form_table(m: usize) -> Vec<Vec<Option<Vec<BigInt>>>> {
    let rank = ring_rank(m);
    let x0 = m - 1;
    // Powers of L up to L^{2(m-2)}, reduced into the basis.
    let mut lp: Vec<Vec<BigInt>> = Vec::with_capacity(2 * (m - 2) + 1);
    for k in 0..=(m - 2) {
        let mut v = vec![BigInt::zero(); rank];
        v[k] = BigInt::one();
        lp.push(v);
    }
    lp.push(l_top_coords(m));
    for _ in m..=(2 * (m - 2)).max(m) {
        let next = mul_by_l(m, lp.last().unwrap());
        lp.push(next);
    }
    // Nilpotency of index exactly m must fall out of the closed relations.
    debug_assert!(lp[m].iter().all(Zero::is_zero), "L^m != 0 at m = {}", m);

    // L^i * X columns by iterated multiplication by L.
    let n_x = rank - x0;
    let mut xl: Vec<Vec<Vec<BigInt>>> = Vec::new(); // xl[s][i] = L^i * X_s
    for s in 0..n_x {
        let mut rows = Vec::with_capacity(m - 1);
        let mut cur = vec![BigInt::zero(); rank];
        cur[x0 + s] = BigInt::one();
        rows.push(cur.clone());
        for _ in 1..=(m - 2) {
            cur = mul_by_l(m, &cur);
            rows.push(cur.clone());
        }
        xl.push(rows);
    }

    let mut table: Vec<Vec<Option<Vec<BigInt>>>> = vec![vec![None; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let entry = if i < x0 && j < x0 {
                Some(lp[i + j].clone())
            } else if i < x0 {
                Some(xl[j - x0][i].clone())
            } else if j < x0 {
                Some(xl[i - x0][j].clone())
            } else {
                None
            };
            table[i][j] = entry;
        }
    }
    table
}

/// Multiplication-by-(2 + L) matrix in the canonical basis, assembled from
/// the closed relations alone (no spin-class squares are involved), so it is
/// available for every m >= 3 without running the oracle.
pub fn hyperplane_mult_matrix(m: usize) -> Result<IntMatrix> {
    if m < 3 {
        return Err(Error::UnsupportedDimension { m: m as i64 });
    }
    let rank = ring_rank(m);
    let mut mat = IntMatrix::zero(rank, rank);
    for j in 0..rank {
        let mut col = mul_by_l_column(m, j);
        col[j] += BigInt::from(2);
        for i in 0..rank {
            mat.set(i, j, std::mem::take(&mut col[i]));
        }
    }
    Ok(mat)
}

/// Decide whether 1 + O(1) = 2 + L divides the integer class l * 1 in K(F),
/// returning the witness coordinates when it does. This is the lattice
/// oracle behind every divisibility verdict; it needs no oracle table.
pub fn hyperplane_divides(m: usize, l: &BigInt) -> Result<Option<KClass>> {
    let mat = hyperplane_mult_matrix(m)?;
    let mut rhs = vec![BigInt::zero(); mat.rows()];
    rhs[0] = l.clone();
    Ok(solve_integer(&mat, &rhs)?.map(|coords| KClass { m, coords }))
}

/// 2^[(m+1)/2]: the exact threshold such that 2 + L divides l * 1 in K(F)
/// iff the threshold divides l in the integers.
pub fn integer_divisibility_threshold(m: usize) -> BigInt {
    two_pow(m.div_ceil(2))
}

impl QuadricKRing {
    /// Build the ring from a verified oracle certificate. The closed-form
    /// rows are recomputed independently and must agree with the certified
    /// table entry by entry; the spin-class squares are taken from the
    /// certificate.
    pub fn from_certificate(cert: &QuotientCertificate, source: &str) -> Result<Self> {
        let m = cert.m;
        if m < 3 {
            return Err(Error::UnsupportedDimension { m: m as i64 });
        }
        if cert.rank != ring_rank(m) || cert.basis != basis_labels(m) {
            return Err(Error::CertificateInvalid(format!(
                "certificate shape does not match the rank-{} canonical basis at m = {}",
                ring_rank(m),
                m
            )));
        }
        Self::from_parts(
            m,
            cert.full_table()?,
            XProvenance {
                source: source.to_string(),
                method: cert.provenance.method.clone(),
                degree_bound: cert.provenance.degree_bound,
                tool: cert.provenance.tool.clone(),
            },
        )
    }

    /// Assemble and validate a ring from a raw table: every entry covered by
    /// a closed relation must match the relation, and the loaded spin-class
    /// squares must commute with the L rows.
    pub(crate) fn from_parts(
        m: usize,
        table: Vec<Vec<Vec<BigInt>>>,
        x_provenance: XProvenance,
    ) -> Result<Self> {
        if m < 3 {
            return Err(Error::UnsupportedDimension { m: m as i64 });
        }
        let rank = ring_rank(m);
        if table.len() != rank
            || table
                .iter()
                .any(|row| row.len() != rank || row.iter().any(|cell| cell.len() != rank))
        {
            return Err(Error::CertificateInvalid(format!(
                "table is not {rank} x {rank} x {rank}"
            )));
        }
        let labels = basis_labels(m);
        let closed = closed_form_table(m);
        for i in 0..rank {
            for j in 0..rank {
                if let Some(expected) = &closed[i][j] {
                    if expected != &table[i][j] {
                        return Err(Error::CertificateInvalid(format!(
                            "product {}*{} contradicts the closed relation",
                            labels[i], labels[j]
                        )));
                    }
                }
                if table[i][j] != table[j][i] {
                    return Err(Error::CertificateInvalid(format!(
                        "table is not commutative at {}*{}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let ring = QuadricKRing {
            m,
            rank,
            parity: if m.is_multiple_of(2) {
                Parity::Even
            } else {
                Parity::Odd
            },
            basis_labels: labels,
            table,
            x_provenance,
        };
        ring.check_x_consistency()?;
        Ok(ring)
    }

    /// Cheap structural checks tying the loaded spin-class squares to the
    /// stated relations: multiplying the L X row by X must agree with
    /// multiplying the X X row by L.
    fn check_x_consistency(&self) -> Result<()> {
        let x0 = self.m - 1;
        let l = self.basis_class(1)?;
        for s in x0..self.rank {
            for t in x0..self.rank {
                let xs = self.basis_class(s)?;
                let xt = self.basis_class(t)?;
                let lhs = self.mul(&self.mul(&l, &xs)?, &xt)?;
                let rhs = self.mul(&l, &self.mul(&xs, &xt)?)?;
                if lhs != rhs {
                    return Err(Error::CertificateInvalid(format!(
                        "(L*{a})*{b} != L*({a}*{b})",
                        a = self.basis_labels[s],
                        b = self.basis_labels[t]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn table(&self) -> &Vec<Vec<Vec<BigInt>>> {
        &self.table
    }

    pub fn x_provenance(&self) -> &XProvenance {
        &self.x_provenance
    }

    pub fn class(&self, coords: Vec<BigInt>) -> Result<KClass> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "class has {} coordinates, ring rank is {}",
                coords.len(),
                self.rank
            )));
        }
        Ok(KClass { m: self.m, coords })
    }

    pub fn zero(&self) -> KClass {
        KClass {
            m: self.m,
            coords: vec![BigInt::zero(); self.rank],
        }
    }

    pub fn one(&self) -> KClass {
        self.basis_class(0).expect("rank >= 1")
    }

    pub fn scalar(&self, c: BigInt) -> KClass {
        let mut k = self.zero();
        k.coords[0] = c;
        k
    }

    pub fn basis_class(&self, i: usize) -> Result<KClass> {
        if i >= self.rank {
            return Err(Error::DimensionMismatch(format!(
                "basis index {} out of range for rank {}",
                i, self.rank
            )));
        }
        let mut k = self.zero();
        k.coords[i] = BigInt::one();
        Ok(k)
    }

    /// O(1) = 1 + L.
    pub fn hyperplane_class(&self) -> KClass {
        let mut k = self.zero();
        k.coords[0] = BigInt::one();
        k.coords[1] = BigInt::one();
        k
    }

    fn check_same_ring(&self, a: &KClass) -> Result<()> {
        if a.m != self.m || a.coords.len() != self.rank {
            return Err(Error::RingMismatch {
                left: self.m,
                right: a.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.check_same_ring(a)?;
        self.check_same_ring(b)?;
        Ok(KClass {
            m: self.m,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.add(a, &self.neg(b)?)
    }

    pub fn neg(&self, a: &KClass) -> Result<KClass> {
        self.check_same_ring(a)?;
        Ok(KClass {
            m: self.m,
            coords: a.coords.iter().map(|x| -x.clone()).collect(),
        })
    }

    /// Bilinear extension of the basis multiplication table.
    pub fn mul(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.check_same_ring(a)?;
        self.check_same_ring(b)?;
        let mut out = vec![BigInt::zero(); self.rank];
        for (i, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let prod = ca * cb;
                for (k, cell) in self.table[i][j].iter().enumerate() {
                    if !cell.is_zero() {
                        out[k] += &prod * cell;
                    }
                }
            }
        }
        Ok(KClass {
            m: self.m,
            coords: out,
        })
    }

    pub fn pow(&self, a: &KClass, e: usize) -> Result<KClass> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `d` in the canonical basis (column j is
    /// d * e_j).
    pub fn mult_matrix(&self, d: &KClass) -> Result<IntMatrix> {
        self.check_same_ring(d)?;
        let mut mat = IntMatrix::zero(self.rank, self.rank);
        for j in 0..self.rank {
            let col = self.mul(d, &self.basis_class(j)?)?;
            for i in 0..self.rank {
                mat.set(i, j, col.coords[i].clone());
            }
        }
        Ok(mat)
    }

    /// Does `d` divide `t` in the ring? Returns a witness w with d*w = t via
    /// the exact integer lattice solver.
    pub fn divides(&self, d: &KClass, t: &KClass) -> Result<Option<KClass>> {
        self.check_same_ring(d)?;
        self.check_same_ring(t)?;
        let mat = self.mult_matrix(d)?;
        Ok(solve_integer(&mat, &t.coords)?.map(|coords| KClass { m: self.m, coords }))
    }

    /// Is `d` a zero divisor? Exact: the kernel of the multiplication matrix
    /// is computed over the integers.
    pub fn is_zero_divisor(&self, d: &KClass) -> Result<bool> {
        let mat = self.mult_matrix(d)?;
        Ok(kernel(&mat).rows() > 0)
    }

    pub fn integer_divisibility_threshold(&self) -> BigInt {
        integer_divisibility_threshold(self.m)
    }

    /// Render a class as a readable combination of basis labels.
    pub fn format_class(&self, a: &KClass) -> String {
        let mut out = String::new();
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.magnitude();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&self.basis_labels[i]);
            } else {
                out.push_str(&format!("{}*{}", mag, self.basis_labels[i]));
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}
