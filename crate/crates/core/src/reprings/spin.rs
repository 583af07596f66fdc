use num_bigint::BigInt;
use num_traits::One;

use super::weight::{Weight, WeightCharacter};
use crate::error::{Error, Result};

/// Named character list for a group in a fixed torus coordinate system,
/// with the dimension of each generator (the character at the identity).
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub group: String,
    pub torus_rank: usize,
    pub generators: Vec<(String, WeightCharacter)>,
}

impl RingPresentation {
    pub fn generator(&self, name: &str) -> Option<&WeightCharacter> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn dimension_map(&self) -> Vec<(String, BigInt)> {
        self.generators
            .iter()
            .map(|(n, c)| (n.clone(), c.dimension()))
            .collect()
    }
}

/// Weights of the standard n-dimensional representation of Spin(n), embedded
/// at coordinates [offset, offset + floor(n/2)) of a rank-`rank` torus:
/// {±e_j} in doubled units, plus one zero weight when n is odd.
pub fn standard_weights(n: usize, rank: usize, offset: usize) -> Vec<Weight> {
    let half = n / 2;
    assert!(offset + half <= rank, "standard weights exceed torus rank");
    let mut out = Vec::with_capacity(n);
    for j in 0..half {
        for sign in [2i32, -2] {
            let mut w = vec![0; rank];
            w[offset + j] = sign;
            out.push(w);
        }
    }
    if n % 2 == 1 {
        out.push(vec![0; rank]);
    }
    out
}

/// i-th exterior power of the standard representation: the i-th elementary
/// symmetric function of the weight multiset (dimension C(n, i)).
pub fn exterior_power(n: usize, i: usize, rank: usize, offset: usize) -> WeightCharacter {
    let weights = standard_weights(n, rank, offset);
    // DP over the weights, tracking partial elementary symmetric sums.
    let mut table: Vec<WeightCharacter> = Vec::with_capacity(i + 1);
    table.push(WeightCharacter::one(rank));
    for _ in 0..i {
        table.push(WeightCharacter::zero(rank));
    }
    for w in &weights {
        let wchar = WeightCharacter::monomial(w.clone(), BigInt::one());
        for d in (1..=i).rev() {
            let bumped = table[d - 1].mul(&wchar);
            table[d] = table[d].add(&bumped);
        }
    }
    table.swap_remove(i)
}

/// The 2^r-dimensional spin character of Spin(2r+1): all half-integral sign
/// patterns (doubled coordinates ±1).
pub fn spin_character(n: usize, rank: usize, offset: usize) -> WeightCharacter {
    assert!(n % 2 == 1, "spin_character expects odd n");
    let r = n / 2;
    sign_pattern_character(r, rank, offset, None)
}

/// Half-spin characters of Spin(2r): sign patterns with an even (+) or odd
/// (-) number of minus signs, each of dimension 2^{r-1}.
pub fn half_spin_characters(
    n: usize,
    rank: usize,
    offset: usize,
) -> (WeightCharacter, WeightCharacter) {
    assert!(n.is_multiple_of(2), "half_spin_characters expects even n");
    let r = n / 2;
    (
        sign_pattern_character(r, rank, offset, Some(0)),
        sign_pattern_character(r, rank, offset, Some(1)),
    )
}

fn sign_pattern_character(
    r: usize,
    rank: usize,
    offset: usize,
    minus_parity: Option<usize>,
) -> WeightCharacter {
    assert!(offset + r <= rank, "sign patterns exceed torus rank");
    assert!(
        r < 63,
        "spin character with 2^{} weights is not representable",
        r
    );
    let mut out = WeightCharacter::zero(rank);
    for mask in 0u64..(1u64 << r) {
        let minuses = mask.count_ones() as usize;
        if let Some(p) = minus_parity {
            if minuses % 2 != p {
                continue;
            }
        }
        let mut w = vec![0; rank];
        for j in 0..r {
            w[offset + j] = if mask & (1 << j) != 0 { -1 } else { 1 };
        }
        out.insert(w, BigInt::one());
    }
    out
}

/// Generator characters of Spin(n) in its own torus coordinates: the
/// exterior powers of the standard representation and the (half-)spin
/// characters. The polynomial generators of the representation ring are the
/// sublist dropping the top exterior powers; the full list is returned
/// because branching tests and the ideal construction consume it wholesale.
pub fn spin_generators(n: usize) -> Result<RingPresentation> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "spin_generators requires n >= 2, got {}",
            n
        )));
    }
    let rank = n / 2;
    let mut generators = Vec::new();
    for i in 1..=rank {
        generators.push((format!("Lambda_{}", i), exterior_power(n, i, rank, 0)));
    }
    if n % 2 == 1 {
        generators.push(("Delta".to_string(), spin_character(n, rank, 0)));
    } else {
        let (dp, dm) = half_spin_characters(n, rank, 0);
        generators.push(("Delta+".to_string(), dp));
        generators.push(("Delta-".to_string(), dm));
    }
    Ok(RingPresentation {
        group: format!("Spin({})", n),
        torus_rank: rank,
        generators,
    })
}

/// Torus rank of the x-part for the quadric of ambient dimension m, i.e. the
/// rank of Spin(m-1).
pub fn x_rank(m: usize) -> usize {
    (m - 1) / 2
}

/// Total torus rank shared by Spin(m+1) and its isotropy subgroup: one
/// circle coordinate plus the Spin(m-1) torus.
pub fn torus_rank(m: usize) -> usize {
    1 + x_rank(m)
}

/// Re-express a Spin(m+1) character in the coordinates of the maximal-rank
/// subgroup (circle first, Spin(m-1) torus after). The block embedding makes
/// this the identity on stored weights; the operation checks rank
/// compatibility and re-types the character, and the branching identities
/// asserted in tests give it content.
pub fn restrict_to_h(m: usize, g_char: &WeightCharacter) -> Result<WeightCharacter> {
    if g_char.rank() != torus_rank(m) {
        return Err(Error::DimensionMismatch(format!(
            "character has torus rank {}, the subgroup torus has rank {}",
            g_char.rank(),
            torus_rank(m)
        )));
    }
    Ok(g_char.clone())
}

/// The circle character t (doubled weight 2 on coordinate 0).
pub fn t_char(m: usize) -> WeightCharacter {
    let rank = torus_rank(m);
    let mut w = vec![0; rank];
    w[0] = 2;
    WeightCharacter::monomial(w, BigInt::one())
}

pub fn t_inv_char(m: usize) -> WeightCharacter {
    let rank = torus_rank(m);
    let mut w = vec![0; rank];
    w[0] = -2;
    WeightCharacter::monomial(w, BigInt::one())
}

/// lambda_i of Spin(m-1), placed on the x-coordinates.
pub fn lambda_char(m: usize, i: usize) -> WeightCharacter {
    exterior_power(m - 1, i, torus_rank(m), 1)
}

/// The descended twisted spin class X = t^{-1/2} delta for even m.
pub fn x_char(m: usize) -> WeightCharacter {
    assert!(m.is_multiple_of(2));
    spin_character(m - 1, torus_rank(m), 1).shift_circle(-1)
}

/// The descended twisted half-spin classes X± = t^{-1/2} delta± for odd m.
pub fn x_pm_chars(m: usize) -> (WeightCharacter, WeightCharacter) {
    assert!(m % 2 == 1);
    let (dp, dm) = half_spin_characters(m - 1, torus_rank(m), 1);
    (dp.shift_circle(-1), dm.shift_circle(-1))
}

/// Generators of the representation ring of the isotropy subgroup: the
/// Laurent circle classes, the exterior powers of Spin(m-1) (split middle
/// power included for odd m), and the twisted spin classes. Every returned
/// character descends to the rank-preserving central quotient.
pub fn descended_generators(m: usize) -> Result<RingPresentation> {
    if m < 3 {
        return Err(Error::UnsupportedDimension { m: m as i64 });
    }
    let rank = torus_rank(m);
    let mut generators = vec![
        ("t".to_string(), t_char(m)),
        ("t^-1".to_string(), t_inv_char(m)),
    ];
    if m.is_multiple_of(2) {
        for i in 1..=(m / 2 - 1) {
            generators.push((format!("lambda_{}", i), lambda_char(m, i)));
        }
        generators.push(("X".to_string(), x_char(m)));
    } else {
        let s = x_rank(m); // Spin(m-1) = Spin(2s)
        for i in 1..s {
            generators.push((format!("lambda_{}", i), lambda_char(m, i)));
        }
        // Split middle exterior power, recovered from the Clifford algebra
        // decomposition of the half-spin squares.
        let (lp, lm) = split_middle_exterior(m);
        generators.push(("lambda+".to_string(), lp));
        generators.push(("lambda-".to_string(), lm));
        let (xp, xm) = x_pm_chars(m);
        generators.push(("X+".to_string(), xp));
        generators.push(("X-".to_string(), xm));
    }
    for (name, c) in &generators {
        if !c.descends_to_spin_c() {
            return Err(Error::CertificateInvalid(format!(
                "generator {} does not descend to the central quotient",
                name
            )));
        }
    }
    Ok(RingPresentation {
        group: format!("Spin^c({})", m - 1),
        torus_rank: rank,
        generators,
    })
}

/// The two halves of the middle exterior power of Spin(2s), s = x_rank(m):
/// lambda± = (delta±)^2 - lambda_{s-2} - lambda_{s-4} - ...
pub fn split_middle_exterior(m: usize) -> (WeightCharacter, WeightCharacter) {
    assert!(m % 2 == 1);
    let s = x_rank(m);
    let rank = torus_rank(m);
    let (dp, dm) = half_spin_characters(m - 1, rank, 1);
    let mut lower = WeightCharacter::zero(rank);
    let mut j = s as i64 - 2;
    while j >= 0 {
        lower = lower.add(&lambda_char(m, j as usize));
        j -= 2;
    }
    (dp.mul(&dp).sub(&lower), dm.mul(&dm).sub(&lower))
}

/// delta+ * delta- of Spin(2s) equals lambda_{s-1} + lambda_{s-3} + ...
pub fn clifford_cross_sum(m: usize) -> WeightCharacter {
    assert!(m % 2 == 1);
    let s = x_rank(m);
    let rank = torus_rank(m);
    let mut acc = WeightCharacter::zero(rank);
    let mut j = s as i64 - 1;
    while j >= 0 {
        acc = acc.add(&lambda_char(m, j as usize));
        j -= 2;
    }
    acc
}
