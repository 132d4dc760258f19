use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::One;

use crate::cycles::{gamma_set, GammaSet, HCycle};
use crate::error::Error;
use crate::matrix::{ReciprocalMatrix, SquareMatrix};
use crate::paths::{global_bounds_over, require_below_one};
use crate::rational::Rat;

/// Ordered partition of the alternatives: every member of a block is weakly
/// above every member of all later blocks in every vector of the analyzed
/// cone, and no block admits a further such split.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderPartition {
    pub blocks: Vec<BTreeSet<usize>>,
}

fn above_set_of(m: &SquareMatrix) -> BTreeSet<(usize, usize)> {
    let one = Rat::one();
    let mut set = BTreeSet::new();
    for i in 0..m.n() {
        for j in 0..m.n() {
            if i != j && m.get(i, j) >= &one {
                set.insert((i, j));
            }
        }
    }
    set
}

fn unique_order_of(m: &SquareMatrix) -> Option<Vec<usize>> {
    let n = m.n();
    let above = above_set_of(m);
    if above.len() != (n * n - n) / 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        if above.contains(&(a, b)) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    // The one-per-pair count makes the relation total and path products make
    // it transitive, so the sorted chain must be internally consistent.
    let coherent = order.windows(2).all(|w| above.contains(&(w[0], w[1])));
    coherent.then_some(order)
}

/// Pairs (i, j) with `P(i, j) >= 1`: every vector in the cycle's cone weighs
/// i at least as much as j. At most one direction per pair can appear since
/// the two directions multiply to the below-one cycle product.
pub fn pairwise_above(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
) -> Result<BTreeSet<(usize, usize)>, Error> {
    let pm = require_below_one(a, cycle)?;
    Ok(above_set_of(pm.values()))
}

/// The common weak descending order of all vectors in the cycle's cone, when
/// one exists: present exactly when the path matrix has one entry >= 1 per
/// off-diagonal pair. Reported top-first.
pub fn cone_unique_order(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
) -> Result<Option<Vec<usize>>, Error> {
    let pm = require_below_one(a, cycle)?;
    Ok(unique_order_of(pm.values()))
}

/// The common weak descending order of all efficient vectors, when one
/// exists: the counting rule applied to the entrywise lower bound over all
/// below-one cycles (default enumeration cap).
pub fn global_unique_order(a: &ReciprocalMatrix) -> Result<Option<Vec<usize>>, Error> {
    global_unique_order_over(a, &gamma_set(a)?)
}

/// As [`global_unique_order`] over a precomputed below-one cycle set.
pub fn global_unique_order_over(
    a: &ReciprocalMatrix,
    gamma: &GammaSet,
) -> Result<Option<Vec<usize>>, Error> {
    let bounds = global_bounds_over(a, gamma)?;
    Ok(unique_order_of(&bounds.lower))
}

/// Pairs (i, j) ranked i-above-j by every efficient vector: positions where
/// the global lower bound is >= 1. Equals the intersection of
/// [`pairwise_above`] over all below-one cycles.
pub fn global_pairwise_above(a: &ReciprocalMatrix) -> Result<BTreeSet<(usize, usize)>, Error> {
    global_pairwise_above_over(a, &gamma_set(a)?)
}

/// As [`global_pairwise_above`] over a precomputed below-one cycle set.
pub fn global_pairwise_above_over(
    a: &ReciprocalMatrix,
    gamma: &GammaSet,
) -> Result<BTreeSet<(usize, usize)>, Error> {
    let bounds = global_bounds_over(a, gamma)?;
    Ok(above_set_of(&bounds.lower))
}

/// Splits the alternatives into inclusion-minimal front blocks: the first
/// block is the smallest set ranked weakly above everything else throughout
/// the cycle's cone, and the rule recurses on the remainder. A single block
/// means the cone forces no separation at all.
pub fn partial_order_partition(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
) -> Result<OrderPartition, Error> {
    let pm = require_below_one(a, cycle)?;
    let one = Rat::one();
    let mut remaining: Vec<usize> = (0..a.n()).collect();
    let mut blocks = Vec::new();
    while !remaining.is_empty() {
        let block = minimal_front_block(pm.values(), &remaining, &one);
        remaining.retain(|i| !block.contains(i));
        blocks.push(block);
    }
    Ok(OrderPartition { blocks })
}

/// Front blocks are closed under intersection and any two of them meet, so
/// the smallest one is unique and size-ordered enumeration finds it.
fn minimal_front_block(p: &SquareMatrix, remaining: &[usize], one: &Rat) -> BTreeSet<usize> {
    for size in 1..remaining.len() {
        for subset in remaining.iter().copied().combinations(size) {
            let qualifies = subset.iter().all(|&i| {
                remaining
                    .iter()
                    .all(|&j| subset.contains(&j) || p.get(i, j) >= one)
            });
            if qualifies {
                return subset.into_iter().collect();
            }
        }
    }
    remaining.iter().copied().collect()
}
