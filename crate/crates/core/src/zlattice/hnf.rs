use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{extended_gcd, IntMatrix};

/// Row Hermite normal form together with the unimodular transform:
/// `u * a = h`, `|det u| = 1`.
///
/// Canonical form: pivot entries positive, entries above each pivot reduced
/// into `[0, pivot)`, zero rows last. This is the unique representative of the
/// row space, so lattice equality is literal matrix equality.
#[derive(Debug, Clone)]
pub struct HnfDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

pub fn hnf(a: &IntMatrix) -> HnfDecomposition {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut pivots = Vec::new();
    let mut pr = 0usize; // next pivot row
    for col in 0..a.cols() {
        if pr >= h.rows() {
            break;
        }
        if h.get(pr, col).is_zero() {
            if let Some(r) = (pr + 1..h.rows()).find(|&r| !h.get(r, col).is_zero()) {
                h.swap_rows(pr, r);
                u.swap_rows(pr, r);
            } else {
                continue;
            }
        }
        // Clear the column below the pivot with unimodular 2x2 combinations.
        for r in pr + 1..h.rows() {
            if h.get(r, col).is_zero() {
                continue;
            }
            let a0 = h.get(pr, col).clone();
            let b0 = h.get(r, col).clone();
            let (g, s, t) = extended_gcd(&a0, &b0);
            let p = -(&b0 / &g);
            let q = &a0 / &g;
            // det [[s, t], [p, q]] = (s*a0 + t*b0)/g = 1
            h.combine_rows(pr, r, &s, &t, &p, &q);
            u.combine_rows(pr, r, &s, &t, &p, &q);
        }
        if h.get(pr, col).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        // Reduce entries above the pivot into [0, pivot).
        let pivot = h.get(pr, col).clone();
        for r in 0..pr {
            let q = h.get(r, col).div_floor(&pivot);
            if !q.is_zero() {
                h.sub_scaled_row(r, pr, &q);
                u.sub_scaled_row(r, pr, &q);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    HnfDecomposition { h, u, pivots }
}

/// Incrementally maintained row HNF over a growing set of generator rows,
/// with coordinate tracking back to the original rows. Rows are stored
/// sparsely; the column universe may grow, provided previously inserted rows
/// are zero on all columns added later.
///
/// This is the workhorse behind staged ideal-lattice certification, where
/// generators arrive in waves and each wave should only pay for its own
/// reduction.
#[derive(Debug, Default, Clone)]
pub struct IncrementalHnf {
    /// Echelon rows, sorted by pivot column; each row is sparse col -> value.
    rows: Vec<SparseRow>,
    /// For echelon row i: coordinates over the original rows.
    combos: Vec<SparseRow>,
    n_orig: usize,
}

pub type SparseRow = std::collections::BTreeMap<usize, BigInt>;

fn addmul(dst: &mut SparseRow, src: &SparseRow, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for (&k, v) in src {
        let entry = dst.entry(k).or_insert_with(BigInt::zero);
        *entry += c * v;
        if entry.is_zero() {
            dst.remove(&k);
        }
    }
}

fn scale(dst: &mut SparseRow, c: &BigInt) {
    for v in dst.values_mut() {
        *v *= c;
    }
}

/// (s*a + t*b, p*a + q*b)
fn combine(
    a: &SparseRow,
    b: &SparseRow,
    s: &BigInt,
    t: &BigInt,
    p: &BigInt,
    q: &BigInt,
) -> (SparseRow, SparseRow) {
    let mut x = SparseRow::new();
    addmul(&mut x, a, s);
    addmul(&mut x, b, t);
    let mut y = SparseRow::new();
    addmul(&mut y, a, p);
    addmul(&mut y, b, q);
    (x, y)
}

impl IncrementalHnf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn echelon_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn original_rows(&self) -> usize {
        self.n_orig
    }

    /// Insert one generator row, restoring the canonical echelon form.
    pub fn append_row(&mut self, row: SparseRow) {
        let orig_index = self.n_orig;
        self.n_orig += 1;
        let mut work = row;
        let mut combo = SparseRow::new();
        combo.insert(orig_index, BigInt::one());

        let mut i = 0;
        while let Some((&lead, _)) = work.first_key_value() {
            // Find the echelon row whose pivot matches `lead`, or the slot
            // where a new pivot row must be inserted.
            while i < self.rows.len() && self.pivot_col(i) < lead {
                i += 1;
            }
            if i < self.rows.len() && self.pivot_col(i) == lead {
                let a0 = self.rows[i].get(&lead).unwrap().clone();
                let b0 = work.get(&lead).unwrap().clone();
                if (&b0 % &a0).is_zero() {
                    let q = -(&b0 / &a0);
                    let (pivot_row, pivot_combo) = (self.rows[i].clone(), self.combos[i].clone());
                    addmul(&mut work, &pivot_row, &q);
                    addmul(&mut combo, &pivot_combo, &q);
                } else {
                    let (g, s, t) = extended_gcd(&a0, &b0);
                    let p = -(&b0 / &g);
                    let q = &a0 / &g;
                    let (new_pivot, new_work) = combine(&self.rows[i], &work, &s, &t, &p, &q);
                    let (new_pc, new_wc) = combine(&self.combos[i], &combo, &s, &t, &p, &q);
                    self.rows[i] = new_pivot;
                    self.combos[i] = new_pc;
                    work = new_work;
                    combo = new_wc;
                    self.normalize_above(i);
                }
            } else {
                // New pivot column: insert and normalize.
                if work.get(&lead).unwrap().is_negative() {
                    scale(&mut work, &BigInt::from(-1));
                    scale(&mut combo, &BigInt::from(-1));
                }
                self.rows.insert(i, work);
                self.combos.insert(i, combo);
                self.normalize_above(i);
                return;
            }
        }
        // Row reduced to zero: dependent, nothing to insert.
    }

    fn pivot_col(&self, i: usize) -> usize {
        *self.rows[i].first_key_value().expect("echelon row empty").0
    }

    /// Reduce the entries above pivot `i` into [0, pivot).
    fn normalize_above(&mut self, i: usize) {
        let pcol = self.pivot_col(i);
        let pivot = self.rows[i].get(&pcol).unwrap().clone();
        let (pivot_row, pivot_combo) = (self.rows[i].clone(), self.combos[i].clone());
        for r in 0..i {
            if let Some(v) = self.rows[r].get(&pcol) {
                let q = -v.div_floor(&pivot);
                if !q.is_zero() {
                    addmul(&mut self.rows[r], &pivot_row, &q);
                    addmul(&mut self.combos[r], &pivot_combo, &q);
                }
            }
        }
    }

    /// Solve `x * M = v` over the original rows `M`, if an integer solution
    /// exists. Returns coordinates over the original rows (sparse).
    pub fn solve(&self, v: &SparseRow) -> Option<SparseRow> {
        let mut rem = v.clone();
        let mut coords = SparseRow::new();
        for i in 0..self.rows.len() {
            let pcol = self.pivot_col(i);
            if let Some(c) = rem.get(&pcol) {
                let pivot = self.rows[i].get(&pcol).unwrap();
                let (q, r) = c.div_rem(pivot);
                if !r.is_zero() {
                    return None;
                }
                let nq = -&q;
                addmul(&mut rem, &self.rows[i], &nq);
                addmul(&mut coords, &self.combos[i], &q);
            }
        }
        if rem.is_empty() {
            Some(coords)
        } else {
            None
        }
    }
}

/// |det u| == 1 sanity used by tests.
pub fn is_unimodular(u: &IntMatrix) -> bool {
    match u.determinant() {
        Ok(d) => d.abs() == BigInt::one(),
        Err(_) => false,
    }
}
