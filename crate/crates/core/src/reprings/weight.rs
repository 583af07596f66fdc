use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A torus weight in doubled coordinates (twice the usual normalization), so
/// half-integral spin weights become honest integers. Coordinate 0 is the
/// circle factor; the remaining coordinates carry the Spin(m-1) torus.
pub type Weight = Vec<i32>;

/// Weyl group type of the x-part (coordinates 1..): all signed permutations
/// for odd orthogonal groups, even sign changes for even ones.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeylKind {
    TypeB,
    TypeD,
}

/// Finitely supported integer-multiplicity function on the weight lattice.
/// Characters of actual representations have nonnegative multiplicities;
/// virtual characters may go negative. Arithmetic is exact.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeightCharacter {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl WeightCharacter {
    pub fn zero(rank: usize) -> Self {
        WeightCharacter {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], BigInt::one())
    }

    pub fn monomial(weight: Weight, mult: BigInt) -> Self {
        let rank = weight.len();
        let mut terms = BTreeMap::new();
        if !mult.is_zero() {
            terms.insert(weight, mult);
        }
        WeightCharacter { rank, terms }
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn insert(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.len(), self.rank);
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            let dead: Vec<Weight> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &WeightCharacter) -> WeightCharacter {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> WeightCharacter {
        WeightCharacter {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &WeightCharacter) -> WeightCharacter {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> WeightCharacter {
        if c.is_zero() {
            return WeightCharacter::zero(self.rank);
        }
        WeightCharacter {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Exact product (convolution of supports).
    pub fn mul(&self, other: &WeightCharacter) -> WeightCharacter {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = WeightCharacter::zero(self.rank);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w: Weight = wa.iter().zip(wb).map(|(a, b)| a + b).collect();
                out.insert(w, ca * cb);
            }
        }
        out
    }

    /// Multiply by the circle character t^{k/2}, i.e. shift coordinate 0 by
    /// `k` in doubled units (t itself is k = 2).
    pub fn shift_circle(&self, k: i32) -> WeightCharacter {
        WeightCharacter {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut w = w.clone();
                    w[0] += k;
                    (w, c.clone())
                })
                .collect(),
        }
    }

    /// Dimension: the character evaluated at the identity, i.e. the sum of
    /// multiplicities. A ring homomorphism to the integers.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// All stored coordinates even, i.e. the weight is integral (non-spin)
    /// in the undoubled normalization.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(|x| x % 2 == 0))
    }

    /// Descends to the rank-preserving central quotient: every weight has a
    /// uniform coordinate parity (all even or all odd), so the diagonal
    /// element of the double cover acts trivially.
    pub fn descends_to_spin_c(&self) -> bool {
        self.terms.keys().all(|w| {
            let p = w.first().map(|x| x.rem_euclid(2)).unwrap_or(0);
            w.iter().all(|x| x.rem_euclid(2) == p)
        })
    }

    /// Invariance under the x-part Weyl group, checked on generators
    /// (adjacent transpositions plus the appropriate sign change).
    pub fn is_weyl_invariant(&self, kind: WeylKind) -> bool {
        let xr = self.rank.saturating_sub(1);
        let check = |f: &dyn Fn(&Weight) -> Weight| -> bool {
            self.terms.iter().all(|(w, c)| &self.coeff(&f(w)) == c)
        };
        for i in 1..xr {
            let swap = move |w: &Weight| {
                let mut v = w.clone();
                v.swap(i, i + 1);
                v
            };
            if !check(&swap) {
                return false;
            }
        }
        if xr >= 1 {
            match kind {
                WeylKind::TypeB => {
                    let flip = |w: &Weight| {
                        let mut v = w.clone();
                        v[1] = -v[1];
                        v
                    };
                    if !check(&flip) {
                        return false;
                    }
                }
                WeylKind::TypeD => {
                    if xr >= 2 {
                        let flip2 = |w: &Weight| {
                            let mut v = w.clone();
                            v[1] = -v[1];
                            v[2] = -v[2];
                            v
                        };
                        if !check(&flip2) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Restriction to canonical orbit representatives. Exact and injective
    /// on Weyl-invariant characters, so equality and lattice membership can
    /// be decided in compressed coordinates.
    pub fn compress(&self, kind: WeylKind) -> CompressedCharacter {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            if is_canonical(w, kind) {
                out.insert(w.clone(), c.clone());
            }
        }
        CompressedCharacter { terms: out }
    }

    /// Product computed directly in compressed coordinates: only pair sums
    /// landing on a canonical representative are accumulated, which is
    /// exactly the coefficient of that representative in the full product.
    pub fn mul_compressed(&self, other: &WeightCharacter, kind: WeylKind) -> CompressedCharacter {
        let mut out: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w: Weight = wa.iter().zip(wb).map(|(a, b)| a + b).collect();
                if is_canonical(&w, kind) {
                    let entry = out.entry(w).or_insert_with(BigInt::zero);
                    *entry += ca * cb;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        CompressedCharacter { terms: out }
    }
}

impl fmt::Debug for WeightCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WeightCharacter(rank {}, {} terms, dim {})",
            self.rank,
            self.terms.len(),
            self.dimension()
        )
    }
}

/// Is `w` the canonical representative of its Weyl orbit? The x-part must be
/// sorted by decreasing absolute value with nonnegative entries, except that
/// in type D a weight without zero entries keeps the orbit's sign invariant
/// on its last coordinate.
pub fn is_canonical(w: &Weight, kind: WeylKind) -> bool {
    let xs = &w[1..];
    match kind {
        WeylKind::TypeB => xs.iter().all(|&x| x >= 0) && xs.windows(2).all(|p| p[0] >= p[1]),
        WeylKind::TypeD => {
            let n = xs.len();
            if n == 0 {
                return true;
            }
            for i in 0..n - 1 {
                if xs[i] < 0 {
                    return false;
                }
                if xs[i] < xs[i + 1].abs() {
                    return false;
                }
            }
            let last = xs[n - 1];
            if xs.contains(&0) {
                last >= 0
            } else {
                // Both signs are canonical: they index different orbits.
                xs[..n - 1].iter().all(|&x| x >= last.abs())
            }
        }
    }
}

/// Canonical representative of the orbit of `w`.
pub fn canonicalize(w: &Weight, kind: WeylKind) -> Weight {
    let mut xs: Vec<i32> = w[1..].to_vec();
    match kind {
        WeylKind::TypeB => {
            for x in xs.iter_mut() {
                *x = x.abs();
            }
            xs.sort_unstable_by(|a, b| b.cmp(a));
        }
        WeylKind::TypeD => {
            let negatives = xs.iter().filter(|&&x| x < 0).count();
            let has_zero = xs.contains(&0);
            for x in xs.iter_mut() {
                *x = x.abs();
            }
            xs.sort_unstable_by(|a, b| b.cmp(a));
            if !has_zero && negatives % 2 == 1 {
                if let Some(last) = xs.last_mut() {
                    *last = -*last;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(w.len());
    out.push(w[0]);
    out.extend(xs);
    out
}

/// A Weyl-invariant character restricted to canonical orbit representatives.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CompressedCharacter {
    pub terms: BTreeMap<Weight, BigInt>,
}

impl CompressedCharacter {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift_circle(&self, k: i32) -> CompressedCharacter {
        CompressedCharacter {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut w = w.clone();
                    w[0] += k;
                    (w, c.clone())
                })
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &CompressedCharacter, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            let entry = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
            *entry += c * v;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit_brute(w: &Weight, kind: WeylKind) -> std::collections::BTreeSet<Weight> {
        // Generate the full orbit by closing under generators.
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![w.clone()];
        while let Some(v) = queue.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            let xr = v.len() - 1;
            for i in 1..xr {
                let mut s = v.clone();
                s.swap(i, i + 1);
                queue.push(s);
            }
            match kind {
                WeylKind::TypeB => {
                    for i in 1..=xr {
                        let mut s = v.clone();
                        s[i] = -s[i];
                        queue.push(s);
                    }
                }
                WeylKind::TypeD => {
                    for i in 1..=xr {
                        for j in 1..=xr {
                            if i < j {
                                let mut s = v.clone();
                                s[i] = -s[i];
                                s[j] = -s[j];
                                queue.push(s);
                            }
                        }
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn canonicalization_picks_unique_orbit_representative() {
        for kind in [WeylKind::TypeB, WeylKind::TypeD] {
            for w in [
                vec![3, 1, 0, -2],
                vec![0, -1, -1, -1],
                vec![2, 2, -2, 1],
                vec![-1, 0, 0, 0],
                vec![1, -3, 2, 0],
            ] {
                let orbit = orbit_brute(&w, kind);
                let canonical: Vec<&Weight> =
                    orbit.iter().filter(|v| is_canonical(v, kind)).collect();
                assert_eq!(
                    canonical.len(),
                    1,
                    "orbit of {:?} under {:?} has {} canonical reps",
                    w,
                    kind,
                    canonical.len()
                );
                assert_eq!(canonical[0], &canonicalize(&w, kind));
                for v in &orbit {
                    assert_eq!(&canonicalize(v, kind), canonical[0]);
                }
            }
        }
    }

    #[test]
    fn type_d_sign_orbits_stay_separate() {
        // (1,1) and (1,-1) lie in different D-orbits.
        let a = vec![0, 1, 1];
        let b = vec![0, 1, -1];
        let oa = orbit_brute(&a, WeylKind::TypeD);
        assert!(!oa.contains(&b));
        assert!(is_canonical(&a, WeylKind::TypeD));
        assert!(is_canonical(&b, WeylKind::TypeD));
    }

    #[test]
    fn symmetrized_random_characters_compress_faithfully() {
        use num_bigint::BigInt;
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x0b17);
        for case in 0..200 {
            let rank = rng.gen_range(2..=4);
            let kind = if case % 2 == 0 {
                WeylKind::TypeB
            } else {
                WeylKind::TypeD
            };
            // Build an invariant character by summing random weights over
            // their full orbits.
            let mut a = WeightCharacter::zero(rank);
            let mut b = WeightCharacter::zero(rank);
            for target in [&mut a, &mut b] {
                for _ in 0..rng.gen_range(1..=3) {
                    let w: Weight = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
                    let c = BigInt::from(rng.gen_range(-3i64..=3));
                    for v in orbit_brute(&w, kind) {
                        target.insert(v, c.clone());
                    }
                }
            }
            assert!(a.is_weyl_invariant(kind));
            assert!(b.is_weyl_invariant(kind));
            // Compression is injective: expanding the compressed form over
            // orbits reproduces the character exactly.
            let ca = a.compress(kind);
            let mut expanded = WeightCharacter::zero(rank);
            for (w, c) in &ca.terms {
                for v in orbit_brute(w, kind) {
                    expanded.insert(v, c.clone());
                }
            }
            assert_eq!(expanded, a);
            // Products computed directly in compressed coordinates agree
            // with compressing the full product.
            assert_eq!(a.mul(&b).compress(kind), a.mul_compressed(&b, kind));
        }
    }

    #[test]
    fn compressed_product_matches_full_product() {
        use num_bigint::BigInt;
        let mut a = WeightCharacter::zero(3);
        a.insert(vec![0, 1, 1], BigInt::from(1));
        a.insert(vec![0, 1, -1], BigInt::from(1));
        a.insert(vec![0, -1, 1], BigInt::from(1));
        a.insert(vec![0, -1, -1], BigInt::from(1));
        let mut b = WeightCharacter::zero(3);
        b.insert(vec![2, 2, 0], BigInt::from(1));
        b.insert(vec![2, -2, 0], BigInt::from(1));
        b.insert(vec![2, 0, 2], BigInt::from(1));
        b.insert(vec![2, 0, -2], BigInt::from(1));
        for kind in [WeylKind::TypeB, WeylKind::TypeD] {
            assert!(a.is_weyl_invariant(kind));
            assert!(b.is_weyl_invariant(kind));
            let full = a.mul(&b).compress(kind);
            let direct = a.mul_compressed(&b, kind);
            assert_eq!(full, direct);
        }
    }
}
