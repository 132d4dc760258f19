use std::collections::BTreeSet;

use num_traits::One;

use crate::cycles::{cycle_product, enumerate_hcycles_capped, GammaSet, HCycle, DEFAULT_MAX_N};
use crate::error::Error;
use crate::matrix::{PositiveVector, ReciprocalMatrix, SquareMatrix};
use crate::rational::Rat;

/// Matrix of forward path products along one cycle: entry (i, j) multiplies
/// the matrix entries along the cycle from i to j; the diagonal is 1.
///
/// For every i != j the two directions multiply back to the cycle product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathMatrix {
    cycle: HCycle,
    product: Rat,
    values: SquareMatrix,
}

impl PathMatrix {
    pub fn compute(a: &ReciprocalMatrix, cycle: &HCycle) -> Result<Self, Error> {
        let n = a.n();
        if n != cycle.n() {
            return Err(Error::dim_mismatch(n, cycle.n()));
        }
        // Prefix products along the cycle listing: prefix[t] is the product of
        // the first t edges. The wrap-around entry is the cycle product.
        let verts = cycle.vertices();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(Rat::one());
        for t in 0..n {
            let step = a.get(verts[t], verts[(t + 1) % n]);
            prefix.push(&prefix[t] * step);
        }
        let product = prefix[n].clone();

        let mut values = SquareMatrix::filled(n, Rat::one());
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                // Path from verts[u] forward to verts[v]; wrapping paths pick
                // up one full cycle product.
                let entry = if u < v {
                    &prefix[v] / &prefix[u]
                } else {
                    &product * &prefix[v] / &prefix[u]
                };
                values.set(verts[u], verts[v], entry);
            }
        }
        Ok(PathMatrix {
            cycle: cycle.clone(),
            product,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.values.n()
    }

    pub fn cycle(&self) -> &HCycle {
        &self.cycle
    }

    pub fn cycle_product(&self) -> &Rat {
        &self.product
    }

    pub fn values(&self) -> &SquareMatrix {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        self.values.get(i, j)
    }
}

/// Convenience wrapper building the path matrix of `cycle` in `a`.
pub fn path_matrix(a: &ReciprocalMatrix, cycle: &HCycle) -> Result<PathMatrix, Error> {
    PathMatrix::compute(a, cycle)
}

/// Two-sided entrywise bounds satisfied by the ratio matrix of every vector
/// in one cycle's cone: `lower <= W <= upper`, with `upper` the inverse
/// transpose of `lower`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeInterval {
    pub lower: PathMatrix,
    pub upper: SquareMatrix,
}

/// The interval of a below-one cycle. Cycles with product >= 1 are rejected:
/// the characterization only holds below one.
pub fn cone_interval(a: &ReciprocalMatrix, cycle: &HCycle) -> Result<ConeInterval, Error> {
    let lower = require_below_one(a, cycle)?;
    let upper = lower.values().inv_transpose();
    Ok(ConeInterval { lower, upper })
}

/// Computes the path matrix of `cycle`, failing unless its product is < 1.
pub(crate) fn require_below_one(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
) -> Result<PathMatrix, Error> {
    let pm = PathMatrix::compute(a, cycle)?;
    if pm.cycle_product() >= &Rat::one() {
        return Err(Error::CycleNotInGamma);
    }
    Ok(pm)
}

/// Entrywise bounds satisfied by the ratio matrix of every efficient vector:
/// `lower` is the entrywise minimum of the path matrices over all below-one
/// cycles and `upper` is its inverse transpose.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlobalBounds {
    pub lower: SquareMatrix,
    pub upper: SquareMatrix,
}

/// Global bounds of an inconsistent matrix (default enumeration cap).
pub fn global_bounds(a: &ReciprocalMatrix) -> Result<GlobalBounds, Error> {
    global_bounds_capped(a, DEFAULT_MAX_N)
}

/// As [`global_bounds`] with an explicit dimension cap. Streams over the
/// below-one cycles, folding an entrywise minimum, without keeping more than
/// one path matrix alive.
pub fn global_bounds_capped(a: &ReciprocalMatrix, cap: usize) -> Result<GlobalBounds, Error> {
    let one = Rat::one();
    let mut lower: Option<SquareMatrix> = None;
    for cycle in enumerate_hcycles_capped(a.n(), cap)? {
        if cycle_product(a, &cycle)? >= one {
            continue;
        }
        let pm = PathMatrix::compute(a, &cycle)?;
        lower = Some(match lower {
            None => pm.values().clone(),
            Some(acc) => acc.entrywise_min(pm.values()),
        });
    }
    let lower = lower.ok_or(Error::ConsistentMatrix)?;
    let upper = lower.inv_transpose();
    Ok(GlobalBounds { lower, upper })
}

/// As [`global_bounds`] over a precomputed cycle membership set.
pub fn global_bounds_over(a: &ReciprocalMatrix, gamma: &GammaSet) -> Result<GlobalBounds, Error> {
    let mut lower: Option<SquareMatrix> = None;
    for (cycle, _) in gamma.iter() {
        let pm = PathMatrix::compute(a, cycle)?;
        lower = Some(match lower {
            None => pm.values().clone(),
            Some(acc) => acc.entrywise_min(pm.values()),
        });
    }
    let lower = lower.ok_or(Error::ConsistentMatrix)?;
    let upper = lower.inv_transpose();
    Ok(GlobalBounds { lower, upper })
}

/// The (n^2 - n)/ 2 ordered positions where a single cone vector's ratio
/// matrix can simultaneously meet the cone's lower bound, anchored at one
/// index: the pairs (v_i, v_j), i < j, of the cycle listing re-rooted at the
/// anchor. Exactly one direction of every unordered pair appears, membership
/// is transitive, and every pair (anchor, q) appears.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AttainSet {
    cycle: HCycle,
    anchor: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl AttainSet {
    pub fn cycle(&self) -> &HCycle {
        &self.cycle
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Attainable-position set of `cycle` anchored at `k`.
pub fn attain_set(cycle: &HCycle, k: usize) -> Result<AttainSet, Error> {
    let order = cycle.rooted_at(k)?;
    let n = order.len();
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.insert((order[i], order[j]));
        }
    }
    Ok(AttainSet {
        cycle: cycle.clone(),
        anchor: k,
        pairs,
    })
}

/// The cone generator anchored at `k`: w_k = 1 and w_q = 1 / P(k, q). Its
/// ratio matrix meets the cone's lower bound exactly on `attain_set(cycle,
/// k)`.
pub fn extreme_vector(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
    k: usize,
) -> Result<PositiveVector, Error> {
    let pm = require_below_one(a, cycle)?;
    extreme_from_path_matrix(&pm, k)
}

/// As [`extreme_vector`] from a precomputed path matrix.
pub fn extreme_from_path_matrix(pm: &PathMatrix, k: usize) -> Result<PositiveVector, Error> {
    let n = pm.n();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let entries = (0..n)
        .map(|q| {
            if q == k {
                Rat::one()
            } else {
                pm.get(k, q).recip()
            }
        })
        .collect();
    PositiveVector::new(entries)
}

/// All n extremes of one cone, in anchor order 0..n. Pairwise projectively
/// distinct whenever the cycle product is below one.
pub fn extreme_vectors(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
) -> Result<Vec<PositiveVector>, Error> {
    let pm = require_below_one(a, cycle)?;
    (0..a.n()).map(|k| extreme_from_path_matrix(&pm, k)).collect()
}

/// Entrywise test `P_first <= P_second`; when it holds, the second cycle's
/// cone is contained in the first cycle's cone. Both cycles must have
/// below-one products.
pub fn cone_inclusion_test(
    a: &ReciprocalMatrix,
    first: &HCycle,
    second: &HCycle,
) -> Result<bool, Error> {
    let p_first = require_below_one(a, first)?;
    let p_second = require_below_one(a, second)?;
    Ok(p_first.values().le(p_second.values()))
}

/// Entrywise minimum of the path matrices of a consistent-free gamma set is
/// exposed through [`global_bounds`]; this helper restricts a grid to the
/// positions of an attain set for dominance comparisons.
pub fn restrict(values: &SquareMatrix, positions: &AttainSet) -> Vec<((usize, usize), Rat)> {
    positions
        .pairs()
        .iter()
        .map(|&(i, j)| ((i, j), values.get(i, j).clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::gamma_set;
    use crate::fixtures::{bounds4, decreasing4, grid, matrix, perturbed_ones};
    use crate::matrix::ratio_matrix;
    use crate::rational::{rat, rat_int};

    fn cycle(seq: &[usize]) -> HCycle {
        HCycle::new(seq.iter().map(|&v| v - 1).collect()).unwrap()
    }

    #[test]
    fn reference_path_matrices() {
        let a = bounds4();
        let p_alpha = path_matrix(&a, &cycle(&[1, 2, 3, 4])).unwrap();
        assert_eq!(
            p_alpha.values(),
            &grid("1 1 1 1; 1/7 1 1 1; 1/7 1/7 1 1; 1/7 1/7 1/7 1")
        );
        assert_eq!(p_alpha.cycle_product(), &rat(1, 7));

        let p_beta = path_matrix(&a, &cycle(&[1, 2, 4, 3])).unwrap();
        assert_eq!(
            p_beta.values(),
            &grid("1 1 2 2; 2/3 1 2 2; 1/3 1/3 1 2/3; 1/3 1/3 1 1")
        );

        let p_gamma = path_matrix(&a, &cycle(&[1, 3, 2, 4])).unwrap();
        assert_eq!(
            p_gamma.values(),
            &grid("1 3 3 6; 2/7 1 6/7 2; 2/7 1 1 2; 1/7 3/7 3/7 1")
        );
    }

    #[test]
    fn consistent_matrix_path_matrix_is_the_matrix() {
        let c = matrix("1 2 6; 1/2 1 3; 1/6 1/3 1");
        assert!(c.is_consistent());
        for hc in crate::cycles::enumerate_hcycles(3).unwrap() {
            assert_eq!(path_matrix(&c, &hc).unwrap().values(), c.matrix());
        }
    }

    #[test]
    fn directions_multiply_to_the_cycle_product() {
        let a = decreasing4();
        for hc in crate::cycles::enumerate_hcycles(4).unwrap() {
            let pm = path_matrix(&a, &hc).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert_eq!(&(pm.get(i, j) * pm.get(j, i)), pm.cycle_product());
                    }
                }
            }
        }
    }

    #[test]
    fn reversing_the_cycle_inverts_the_transpose() {
        let a = bounds4();
        for hc in crate::cycles::enumerate_hcycles(4).unwrap() {
            let forward = path_matrix(&a, &hc).unwrap();
            let backward = path_matrix(&a, &hc.reversed()).unwrap();
            assert_eq!(&forward.values().inv_transpose(), backward.values());
        }
    }

    #[test]
    fn reference_intervals() {
        let a = bounds4();
        let b1 = cone_interval(&a, &cycle(&[1, 2, 3, 4])).unwrap();
        assert_eq!(b1.upper, grid("1 7 7 7; 1 1 7 7; 1 1 1 7; 1 1 1 1"));

        let b2 = cone_interval(&a, &cycle(&[1, 2, 4, 3])).unwrap();
        assert_eq!(
            b2.lower.values(),
            &grid("1 1 2 2; 2/3 1 2 2; 1/3 1/3 1 2/3; 1/3 1/3 1 1")
        );
        assert_eq!(
            b2.upper,
            grid("1 3/2 3 3; 1 1 3 3; 1/2 1/2 1 1; 1/2 1/2 3/2 1")
        );

        let b3 = cone_interval(&a, &cycle(&[1, 3, 2, 4])).unwrap();
        assert_eq!(
            b3.upper,
            grid("1 7/2 7/2 7; 1/3 1 1 7/3; 1/3 7/6 1 7/3; 1/6 1/2 1/2 1")
        );

        assert_eq!(
            cone_interval(&a, &cycle(&[1, 4, 3, 2])).unwrap_err(),
            Error::CycleNotInGamma
        );
    }

    #[test]
    fn upper_entries_scale_lower_by_the_product() {
        let a = bounds4();
        for hc in gamma_set(&a).unwrap().cycles() {
            let interval = cone_interval(&a, hc).unwrap();
            let tau = interval.lower.cycle_product().clone();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert_eq!(
                            interval.upper.get(i, j),
                            &(interval.lower.get(i, j) / &tau)
                        );
                        assert!(interval.lower.get(i, j) <= interval.upper.get(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn reference_global_bounds() {
        let a = bounds4();
        let gb = global_bounds(&a).unwrap();
        assert_eq!(
            gb.lower,
            grid("1 1 1 1; 1/7 1 6/7 1; 1/7 1/7 1 2/3; 1/7 1/7 1/7 1")
        );
        assert_eq!(
            gb.upper,
            grid("1 7 7 7; 1 1 7 7; 1 7/6 1 7; 1 1 3/2 1")
        );
        assert_eq!(
            global_bounds_over(&a, &gamma_set(&a).unwrap()).unwrap(),
            gb
        );
    }

    #[test]
    fn consistent_matrix_has_no_global_bounds() {
        let c = matrix("1 2 6; 1/2 1 3; 1/6 1/3 1");
        assert_eq!(global_bounds(&c).unwrap_err(), Error::ConsistentMatrix);
    }

    #[test]
    fn reference_attain_sets() {
        let alpha = cycle(&[1, 2, 3, 4]);
        let s1 = attain_set(&alpha, 0).unwrap();
        let expect1: BTreeSet<(usize, usize)> =
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].into();
        assert_eq!(s1.pairs(), &expect1);

        let s3 = attain_set(&alpha, 2).unwrap();
        let expect3: BTreeSet<(usize, usize)> =
            [(2, 3), (2, 0), (2, 1), (3, 0), (3, 1), (0, 1)].into();
        assert_eq!(s3.pairs(), &expect3);
    }

    #[test]
    fn attain_set_structure() {
        let nu = cycle(&[1, 4, 2, 3]);
        for k in 0..4 {
            let s = attain_set(&nu, k).unwrap();
            assert_eq!(s.len(), 6);
            for p in 0..4 {
                for q in p + 1..4 {
                    assert!(s.contains(p, q) ^ s.contains(q, p));
                }
            }
            for q in 0..4 {
                if q != k {
                    assert!(s.contains(k, q));
                }
            }
            // Transitivity.
            for &(p, q) in s.pairs() {
                for &(q2, r) in s.pairs() {
                    if q == q2 && p != r {
                        assert!(s.contains(p, r));
                    }
                }
            }
        }
    }

    #[test]
    fn attain_sets_are_pairwise_distinct() {
        let mut seen = Vec::new();
        for hc in crate::cycles::enumerate_hcycles(4).unwrap() {
            for k in 0..4 {
                let pairs = attain_set(&hc, k).unwrap().pairs().clone();
                assert!(!seen.contains(&pairs), "duplicate attain set");
                seen.push(pairs);
            }
        }
    }

    #[test]
    fn reference_extremes() {
        let a = bounds4();
        let alpha = cycle(&[1, 2, 3, 4]);
        let e1 = extreme_vector(&a, &alpha, 0).unwrap();
        assert!(e1.projectively_eq(&PositiveVector::from_ints(&[1, 1, 1, 1]).unwrap()));
        let e4 = extreme_vector(&a, &alpha, 3).unwrap();
        assert!(e4.projectively_eq(&PositiveVector::from_ints(&[7, 7, 7, 1]).unwrap()));

        let ones = perturbed_ones(4, rat_int(2));
        let extremes = extreme_vectors(&ones, &alpha).unwrap();
        let expect = [
            [1, 1, 1, 1],
            [2, 1, 1, 1],
            [2, 2, 1, 1],
            [2, 2, 2, 1],
        ];
        for (k, values) in expect.iter().enumerate() {
            assert!(extremes[k].projectively_eq(&PositiveVector::from_ints(values).unwrap()));
        }
        // Pairwise projectively distinct.
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(!extremes[i].projectively_eq(&extremes[j]));
            }
        }
    }

    #[test]
    fn extremes_meet_the_bound_exactly_on_the_attain_set() {
        let a = decreasing4();
        for hc in gamma_set(&a).unwrap().cycles() {
            let pm = path_matrix(&a, hc).unwrap();
            for k in 0..4 {
                let w = extreme_vector(&a, hc, k).unwrap();
                let wm = ratio_matrix(&w);
                let s = attain_set(hc, k).unwrap();
                for i in 0..4 {
                    for j in 0..4 {
                        if i == j {
                            continue;
                        }
                        if s.contains(i, j) {
                            assert_eq!(wm.get(i, j), pm.get(i, j));
                        } else {
                            assert!(wm.get(i, j) >= pm.get(i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cone_inclusion_reference_cases() {
        let ones = perturbed_ones(4, rat_int(2));
        let alpha = cycle(&[1, 2, 3, 4]);
        let gamma = cycle(&[1, 3, 2, 4]);
        assert!(cone_inclusion_test(&ones, &alpha, &alpha).unwrap());
        // Neither cone of the perturbed all-ones matrix contains the other:
        // they share three generators but split on the fourth.
        assert!(!cone_inclusion_test(&ones, &gamma, &alpha).unwrap());
        assert!(!cone_inclusion_test(&ones, &alpha, &gamma).unwrap());

        let a = bounds4();
        let beta = cycle(&[1, 2, 4, 3]);
        assert!(!cone_inclusion_test(&a, &alpha, &beta).unwrap());
        assert!(!cone_inclusion_test(&a, &beta, &alpha).unwrap());
    }
}
