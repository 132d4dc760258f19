// Shared by all integration suites; each uses a different subset.
#![allow(dead_code)]

use effmat::matrix::{PositiveVector, ReciprocalMatrix};
use effmat::monomial::MonomialMap;
use effmat::random::random_monomial;
use effmat::rational::{rat, Rat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn ratio() -> impl Strategy<Value = Rat> {
    (1i64..=6, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

pub fn reciprocal(n: usize) -> impl Strategy<Value = ReciprocalMatrix> {
    proptest::collection::vec(ratio(), n * (n - 1) / 2)
        .prop_map(move |upper| {
            ReciprocalMatrix::from_upper_triangle(n, &upper).expect("positive entries")
        })
}

pub fn inconsistent(n: usize) -> impl Strategy<Value = ReciprocalMatrix> {
    reciprocal(n).prop_filter("inconsistent", |a| !a.is_consistent())
}

pub fn any_inconsistent() -> impl Strategy<Value = ReciprocalMatrix> {
    (3usize..=5).prop_flat_map(inconsistent)
}

pub fn positive_vector(n: usize) -> impl Strategy<Value = PositiveVector> {
    proptest::collection::vec(ratio(), n)
        .prop_map(|entries| PositiveVector::new(entries).expect("positive entries"))
}

pub fn monomial_map(n: usize) -> impl Strategy<Value = MonomialMap> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_monomial(n, 4, &mut rng)
    })
}
