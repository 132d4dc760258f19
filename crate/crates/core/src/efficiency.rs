use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycles::{gamma_set, GammaSet, HCycle};
use crate::error::Error;
use crate::matrix::{PositiveVector, ReciprocalMatrix};
use crate::paths::{extreme_vectors, require_below_one, PathMatrix};
use crate::rational::Rat;

/// Outcome of testing a vector against every below-one cycle's cone.
///
/// For an inconsistent matrix, `efficient` holds exactly when `member_cones`
/// is nonempty. For a consistent matrix both lists are empty and `efficient`
/// records projective equality to a column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EfficiencyReport {
    pub efficient: bool,
    /// Below-one cycles whose cones contain the vector.
    pub member_cones: Vec<HCycle>,
    /// For each member cone, the positions where the ratio matrix meets the
    /// cone's lower bound exactly. Parallel to `member_cones`.
    pub tight_positions: Vec<BTreeSet<(usize, usize)>>,
}

/// Whether the ratio matrix of `w` lies above the path matrix of `cycle`
/// entrywise (the matching upper bound is implied by reciprocity).
pub fn in_cone(w: &PositiveVector, a: &ReciprocalMatrix, cycle: &HCycle) -> Result<bool, Error> {
    if w.n() != a.n() {
        return Err(Error::dim_mismatch(w.n(), a.n()));
    }
    let pm = require_below_one(a, cycle)?;
    Ok(cone_contains(&pm, w))
}

pub(crate) fn cone_contains(pm: &PathMatrix, w: &PositiveVector) -> bool {
    let n = pm.n();
    for i in 0..n {
        for j in 0..n {
            if i != j && &(w.get(i) / w.get(j)) < pm.get(i, j) {
                return false;
            }
        }
    }
    true
}

/// Cone membership of `w` in every below-one cycle of `a` (default
/// enumeration cap). `w` is efficient exactly when some cone contains it;
/// for a consistent matrix, exactly when it is proportional to a column.
pub fn efficiency_report(
    w: &PositiveVector,
    a: &ReciprocalMatrix,
) -> Result<EfficiencyReport, Error> {
    if w.n() != a.n() {
        return Err(Error::dim_mismatch(w.n(), a.n()));
    }
    if a.is_consistent() {
        return Ok(consistent_report(w, a));
    }
    efficiency_report_over(w, a, &gamma_set(a)?)
}

/// As [`efficiency_report`] over a precomputed below-one cycle set.
pub fn efficiency_report_over(
    w: &PositiveVector,
    a: &ReciprocalMatrix,
    gamma: &GammaSet,
) -> Result<EfficiencyReport, Error> {
    if w.n() != a.n() {
        return Err(Error::dim_mismatch(w.n(), a.n()));
    }
    if gamma.is_empty() {
        return Ok(consistent_report(w, a));
    }
    let mut member_cones = Vec::new();
    let mut tight_positions = Vec::new();
    for (cycle, _) in gamma.iter() {
        let pm = PathMatrix::compute(a, cycle)?;
        if !cone_contains(&pm, w) {
            continue;
        }
        let mut tight = BTreeSet::new();
        for i in 0..a.n() {
            for j in 0..a.n() {
                if i != j && &(w.get(i) / w.get(j)) == pm.get(i, j) {
                    tight.insert((i, j));
                }
            }
        }
        member_cones.push(cycle.clone());
        tight_positions.push(tight);
    }
    Ok(EfficiencyReport {
        efficient: !member_cones.is_empty(),
        member_cones,
        tight_positions,
    })
}

fn consistent_report(w: &PositiveVector, a: &ReciprocalMatrix) -> EfficiencyReport {
    EfficiencyReport {
        efficient: w.projectively_eq(&a.column(0)),
        member_cones: Vec::new(),
        tight_positions: Vec::new(),
    }
}

/// Shorthand for `efficiency_report(w, a)?.efficient`.
pub fn is_efficient(w: &PositiveVector, a: &ReciprocalMatrix) -> Result<bool, Error> {
    Ok(efficiency_report(w, a)?.efficient)
}

/// Independent efficiency oracle: build the digraph with an arc (i, j) for
/// every i != j with `a_ij * w_j >= w_i` and test strong connectivity.
///
/// At least one direction of every pair is present (both on ties), so the
/// graph is a tournament with ties. The orientation convention was calibrated
/// against the cone characterization on exhaustive small instances.
pub fn digraph_oracle(w: &PositiveVector, a: &ReciprocalMatrix) -> Result<bool, Error> {
    if w.n() != a.n() {
        return Err(Error::dim_mismatch(w.n(), a.n()));
    }
    let adj = comparison_digraph(w, a);
    let n = a.n();
    Ok(reach_from(&adj, 0).len() == n && reach_from(&transpose_adj(&adj), 0).len() == n)
}

fn comparison_digraph(w: &PositiveVector, a: &ReciprocalMatrix) -> Vec<Vec<bool>> {
    let n = a.n();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j) * w.get(j) >= *w.get(i) {
                adj[i][j] = true;
            }
        }
    }
    adj
}

fn transpose_adj(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[j][i] = adj[i][j];
        }
    }
    out
}

fn reach_from(adj: &[Vec<bool>], start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut queue = vec![start];
    seen.insert(start);
    while let Some(v) = queue.pop() {
        for (u, &arc) in adj[v].iter().enumerate() {
            if arc && seen.insert(u) {
                queue.push(u);
            }
        }
    }
    seen
}

/// Exact domination check: `|A - V| <= |A - W|` entrywise with strict
/// inequality somewhere, where V and W are the ratio matrices of `candidate`
/// and `incumbent`.
pub fn improves_approximation(
    a: &ReciprocalMatrix,
    candidate: &PositiveVector,
    incumbent: &PositiveVector,
) -> Result<bool, Error> {
    if candidate.n() != a.n() {
        return Err(Error::dim_mismatch(candidate.n(), a.n()));
    }
    if incumbent.n() != a.n() {
        return Err(Error::dim_mismatch(incumbent.n(), a.n()));
    }
    let n = a.n();
    let mut strict = false;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let res_new = (a.get(i, j) - candidate.get(i) / candidate.get(j)).abs();
            let res_old = (a.get(i, j) - incumbent.get(i) / incumbent.get(j)).abs();
            if res_new > res_old {
                return Ok(false);
            }
            if res_new < res_old {
                strict = true;
            }
        }
    }
    Ok(strict)
}

/// Searches for a vector dominating `w` by scaling coordinate subsets.
///
/// A returned vector is a certified refutation of efficiency: its ratio
/// matrix approximates `a` at least as well in every entry and strictly
/// better somewhere. Returning nothing proves nothing.
///
/// Scaling a subset S by f only moves the ratios across the cut, so S can
/// improve the approximation exactly when every cross-pair residual has the
/// same sign; the feasible factors then form an interval around 1 whose
/// endpoint is min or max of (2a_ij - W_ij) / W_ij over the cut, and the
/// midpoint between 1 and that endpoint is tried. Candidate subsets are the
/// singletons, the strongly connected components and reachability sets of
/// the comparison digraph with their complements, then `budget` seeded
/// random subsets. Deterministic for fixed inputs, seed and budget.
///
/// Panics when the dimensions of `w` and `a` differ.
pub fn refute_by_perturbation(
    w: &PositiveVector,
    a: &ReciprocalMatrix,
    budget: usize,
    seed: u64,
) -> Option<PositiveVector> {
    assert_eq!(w.n(), a.n(), "dimension mismatch");
    let n = a.n();

    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut push = |set: Vec<usize>, candidates: &mut Vec<Vec<usize>>| {
        if !set.is_empty() && set.len() < n && seen.insert(set.clone()) {
            candidates.push(set);
        }
    };

    for i in 0..n {
        push(vec![i], &mut candidates);
    }
    let adj = comparison_digraph(w, a);
    let radj = transpose_adj(&adj);
    let reaches: Vec<BTreeSet<usize>> = (0..n).map(|i| reach_from(&adj, i)).collect();
    let coreaches: Vec<BTreeSet<usize>> = (0..n).map(|i| reach_from(&radj, i)).collect();
    for i in 0..n {
        let scc: Vec<usize> = reaches[i].intersection(&coreaches[i]).copied().collect();
        push(scc, &mut candidates);
        let reach: Vec<usize> = reaches[i].iter().copied().collect();
        let complement: Vec<usize> = (0..n).filter(|v| !reaches[i].contains(v)).collect();
        push(reach, &mut candidates);
        push(complement, &mut candidates);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let mask = rng.gen_range(1..(1u64 << n) - 1);
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        push(set, &mut candidates);
    }

    for set in candidates {
        if let Some(v) = scale_set_refutation(w, a, &set) {
            return Some(v);
        }
    }
    None
}

/// Best uniform scaling of the coordinates in `set`, when one improves.
fn scale_set_refutation(
    w: &PositiveVector,
    a: &ReciprocalMatrix,
    set: &[usize],
) -> Option<PositiveVector> {
    let n = a.n();
    let in_set = {
        let mut flags = vec![false; n];
        for &i in set {
            flags[i] = true;
        }
        flags
    };
    let one = Rat::one();
    // Intersect per-pair feasible factor intervals. Residual signs across the
    // cut must agree: undershooting pairs force f > 1, overshooting f < 1 and
    // exact pairs admit only f = 1.
    let mut up: Option<Rat> = None;
    let mut down: Option<Rat> = None;
    for (i, flags) in in_set.iter().enumerate() {
        if !flags {
            continue;
        }
        for j in 0..n {
            if in_set[j] || i == j {
                continue;
            }
            let target = a.get(i, j);
            let current = w.get(i) / w.get(j);
            if target == &current {
                return None;
            }
            let bound = (target + target - &current) / &current;
            if &current < target {
                if down.is_some() {
                    return None;
                }
                up = Some(match up {
                    None => bound,
                    Some(u) => u.min(bound),
                });
            } else {
                if up.is_some() {
                    return None;
                }
                down = Some(match down {
                    None => bound,
                    Some(d) => d.max(bound),
                });
            }
        }
    }
    let factor = match (up, down) {
        (Some(hi), None) => (&one + hi) / Rat::from_integer(2.into()),
        (None, Some(lo)) => (&one + lo.max(Rat::zero())) / Rat::from_integer(2.into()),
        _ => return None,
    };
    let entries = (0..n)
        .map(|i| {
            if in_set[i] {
                w.get(i) * &factor
            } else {
                w.get(i).clone()
            }
        })
        .collect();
    let candidate = PositiveVector::new(entries).ok()?;
    match improves_approximation(a, &candidate, w) {
        Ok(true) => Some(candidate),
        _ => None,
    }
}

/// Nonnegative rational combination of the cone's n extreme vectors. The
/// cone is closed under positive combinations, so the result passes
/// [`in_cone`].
pub fn sample_cone(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
    coefficients: &[Rat],
) -> Result<PositiveVector, Error> {
    if coefficients.len() != a.n() {
        return Err(Error::dim_mismatch(coefficients.len(), a.n()));
    }
    for (i, c) in coefficients.iter().enumerate() {
        if c.is_negative() {
            return Err(Error::NegativeCoefficient { i });
        }
    }
    if coefficients.iter().all(|c| c.is_zero()) {
        return Err(Error::AllZeroCoefficients);
    }
    let extremes = extreme_vectors(a, cycle)?;
    let n = a.n();
    let entries = (0..n)
        .map(|i| {
            let mut total = Rat::zero();
            for (k, c) in coefficients.iter().enumerate() {
                total += c * extremes[k].get(i);
            }
            total
        })
        .collect();
    PositiveVector::new(entries)
}
