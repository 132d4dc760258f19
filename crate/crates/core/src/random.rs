//! Seeded generators for matrices, vectors and monomial maps.
//!
//! Entries are ratios of small integers so that cycle products and bounds
//! stay exact and compact. All generators take the caller's RNG; pairing
//! them with a counter-seeded stream cipher RNG gives reproducible suites.

use rand::Rng;

use crate::equality::spc_canonical;
use crate::matrix::{PositiveVector, ReciprocalMatrix};
use crate::monomial::{monomial_conjugate, MonomialMap};
use crate::rational::{rat, Rat};

/// Random reciprocal matrix: each upper-triangle entry is p/q with p, q
/// drawn from 1..=max_part.
pub fn random_reciprocal<R: Rng>(n: usize, max_part: u64, rng: &mut R) -> ReciprocalMatrix {
    let upper: Vec<Rat> = (0..n * (n - 1) / 2)
        .map(|_| {
            rat(
                rng.gen_range(1..=max_part) as i64,
                rng.gen_range(1..=max_part) as i64,
            )
        })
        .collect();
    ReciprocalMatrix::from_upper_triangle(n, &upper).expect("generated entries are positive")
}

/// Random inconsistent reciprocal matrix; requires n >= 3 since every 2x2
/// reciprocal matrix is consistent.
pub fn random_inconsistent<R: Rng>(n: usize, max_part: u64, rng: &mut R) -> ReciprocalMatrix {
    assert!(n >= 3, "2x2 matrices are always consistent");
    loop {
        let a = random_reciprocal(n, max_part, rng);
        if !a.is_consistent() {
            return a;
        }
    }
}

/// Random positive vector with coordinates p/q, p, q in 1..=max_part.
pub fn random_positive_vector<R: Rng>(n: usize, max_part: u64, rng: &mut R) -> PositiveVector {
    PositiveVector::new(
        (0..n)
            .map(|_| {
                rat(
                    rng.gen_range(1..=max_part) as i64,
                    rng.gen_range(1..=max_part) as i64,
                )
            })
            .collect(),
    )
    .expect("generated coordinates are positive")
}

/// Random monomial map: a uniform permutation with positive rational scales.
pub fn random_monomial<R: Rng>(n: usize, max_part: u64, rng: &mut R) -> MonomialMap {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let scale: Vec<Rat> = (0..n)
        .map(|_| {
            rat(
                rng.gen_range(1..=max_part) as i64,
                rng.gen_range(1..=max_part) as i64,
            )
        })
        .collect();
    MonomialMap::new(perm, scale).expect("generated map is valid")
}

/// Random matrix monomially similar to a canonical single-pair matrix:
/// draws x > 1 and conjugates by a random monomial map.
pub fn random_spc<R: Rng>(n: usize, max_part: u64, rng: &mut R) -> ReciprocalMatrix {
    let x = random_above_one(max_part, rng);
    let canonical = spc_canonical(n, x).expect("x > 1 yields a valid matrix");
    monomial_conjugate(&canonical, &random_monomial(n, max_part, rng))
        .expect("matching dimensions")
}

/// Random rational strictly above one: 1 + p/q.
pub fn random_above_one<R: Rng>(max_part: u64, rng: &mut R) -> Rat {
    Rat::from_integer(1.into())
        + rat(
            rng.gen_range(1..=max_part) as i64,
            rng.gen_range(1..=max_part) as i64,
        )
}
