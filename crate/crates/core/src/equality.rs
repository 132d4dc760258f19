use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycles::{gamma_set, gamma_set_capped, GammaSet, HCycle, DEFAULT_MAX_N};
use crate::efficiency::cone_contains;
use crate::error::Error;
use crate::matrix::{PositiveVector, ReciprocalMatrix, SquareMatrix};
use crate::monomial::{apply_monomial, monomial_conjugate, MonomialMap};
use crate::paths::{attain_set, extreme_from_path_matrix, PathMatrix};
use crate::random::{random_inconsistent, random_above_one};
use crate::rational::{format_rational, rat, Rat};

/// Entrywise comparison of two grids restricted to a set of positions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Dominance {
    /// `m1 <= m2` on every listed position.
    pub holds: bool,
    /// `holds` with strict inequality somewhere.
    pub strict: bool,
}

/// Compares `m1[S] <= m2[S]` entrywise with a strictness flag.
pub fn dominates(
    m1: &SquareMatrix,
    m2: &SquareMatrix,
    positions: &BTreeSet<(usize, usize)>,
) -> Result<Dominance, Error> {
    if m1.n() != m2.n() {
        return Err(Error::dim_mismatch(m1.n(), m2.n()));
    }
    let n = m1.n();
    let mut strict = false;
    for &(i, j) in positions {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        if m1.get(i, j) > m2.get(i, j) {
            return Ok(Dominance {
                holds: false,
                strict: false,
            });
        }
        if m1.get(i, j) < m2.get(i, j) {
            strict = true;
        }
    }
    Ok(Dominance {
        holds: true,
        strict,
    })
}

/// Whether no other below-one cycle's path matrix dominates this cycle's on
/// the attainable positions anchored at `k` (default enumeration cap).
pub fn undominated(a: &ReciprocalMatrix, cycle: &HCycle, k: usize) -> Result<bool, Error> {
    undominated_over(a, cycle, k, &gamma_set(a)?)
}

/// As [`undominated`] over a precomputed below-one cycle set.
pub fn undominated_over(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
    k: usize,
    gamma: &GammaSet,
) -> Result<bool, Error> {
    let pm = crate::paths::require_below_one(a, cycle)?;
    let s = attain_set(cycle, k)?;
    for (other, _) in gamma.iter() {
        if other == cycle {
            continue;
        }
        let pn = PathMatrix::compute(a, other)?;
        if dominates(pn.values(), pm.values(), s.pairs())?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact equality of the global lower-bound grids of two inconsistent
/// matrices: a necessary condition for their efficient sets to coincide.
pub fn l_equal(a: &ReciprocalMatrix, b: &ReciprocalMatrix) -> Result<bool, Error> {
    if a.n() != b.n() {
        return Err(Error::dim_mismatch(a.n(), b.n()));
    }
    let la = crate::paths::global_bounds(a)?;
    let lb = crate::paths::global_bounds(b)?;
    Ok(la.lower == lb.lower)
}

/// All-ones matrix with one modified reciprocal pair: x at (0, n-1) and 1/x
/// at (n-1, 0). Inconsistent exactly when x != 1.
pub fn spc_canonical(n: usize, x: Rat) -> Result<ReciprocalMatrix, Error> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let mut a = ReciprocalMatrix::from_upper_triangle(n, &vec![Rat::one(); n * (n - 1) / 2])?;
    a.set_pair(0, n - 1, x)?;
    Ok(a)
}

/// Decomposition of a matrix that is monomially similar to a canonical
/// single-pair matrix: applying `map` to the all-ones matrix carrying `x` at
/// `(l, k)` reproduces the source exactly. The pair is normalized to
/// `l = 0`, `k = n - 1` with `x > 1`; `map` carries both the relabeling and
/// the diagonal scaling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpcForm {
    pub map: MonomialMap,
    pub x: Rat,
    pub l: usize,
    pub k: usize,
}

/// Detects whether the matrix is consistent except for one reciprocal entry
/// pair: for each pair, overwrite it with the value forced by a third index
/// and test consistency of the repair. Consistent input yields nothing (the
/// canonical form requires a genuine perturbation).
pub fn spc_form(a: &ReciprocalMatrix) -> Option<SpcForm> {
    let n = a.n();
    if n < 3 || a.is_consistent() {
        return None;
    }
    for l in 0..n {
        for k in l + 1..n {
            let m = (0..n).find(|&m| m != l && m != k).expect("n >= 3");
            let forced = a.get(l, m) * a.get(m, k);
            let mut repaired = a.clone();
            repaired
                .set_pair(l, k, forced.clone())
                .expect("forced entry is positive");
            if !repaired.is_consistent() {
                continue;
            }
            let y = a.get(l, k) / &forced;
            let (top, bottom, x) = if y > Rat::one() {
                (l, k, y)
            } else {
                (k, l, y.recip())
            };
            let w = repaired.column(0);
            let mut perm = Vec::with_capacity(n);
            perm.push(top);
            perm.extend((0..n).filter(|&t| t != top && t != bottom));
            perm.push(bottom);
            let scale: Vec<Rat> = (0..n).map(|t| w.get(t).clone()).collect();
            let map = MonomialMap::new(perm, scale).expect("valid monomial map");
            let form = SpcForm {
                map,
                x,
                l: 0,
                k: n - 1,
            };
            debug_assert_eq!(
                &monomial_conjugate(
                    &spc_canonical(n, form.x.clone()).expect("canonical form"),
                    &form.map,
                )
                .expect("matching dimensions"),
                a
            );
            return Some(form);
        }
    }
    None
}

/// Efficiency test in canonical coordinates: maps the vector through the
/// inverse of the canonicalizing map and checks
/// `v_k <= v_i <= v_l <= x * v_k` for every i.
pub fn spc_efficiency(w: &PositiveVector, form: &SpcForm) -> Result<bool, Error> {
    if w.n() != form.map.n() {
        return Err(Error::dim_mismatch(w.n(), form.map.n()));
    }
    let v = apply_monomial(&form.map.inverse(), w)?;
    let top = v.get(form.l);
    let bottom = v.get(form.k);
    if top > &(&form.x * bottom) {
        return Ok(false);
    }
    Ok((0..v.n()).all(|i| v.get(i) >= bottom && v.get(i) <= top))
}

/// Verdict of [`decide_equal_efficient_sets`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EqualStatus {
    Equal,
    NotEqual,
    Unknown,
}

/// Which input matrix a separating witness is efficient for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixSide {
    First,
    Second,
}

/// One named check with its outcome, e.g. lower-bound equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvidenceEntry {
    pub check: String,
    pub outcome: String,
}

/// Outcome of comparing two efficient sets. `NotEqual` always carries a
/// witness vector verified efficient for exactly one side; `Equal` is
/// returned only for entrywise-equal inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EqualityVerdict {
    pub status: EqualStatus,
    pub witness: Option<PositiveVector>,
    pub witness_side: Option<MatrixSide>,
    pub evidence: Vec<EvidenceEntry>,
}

/// Tuning knobs for the witness search inside the equality decision.
#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Dimension cap for cycle enumeration.
    pub cap: usize,
    /// Number of seeded random cone samples per direction.
    pub sample_budget: usize,
    /// Weights for pinned two-extreme mixtures.
    pub mixture_weights: Vec<i64>,
    /// Seed for the sampling stage.
    pub sample_seed: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            cap: DEFAULT_MAX_N,
            sample_budget: 400,
            mixture_weights: vec![2, 8],
            sample_seed: 0x0eff_a7,
        }
    }
}

/// Decides whether two matrices have the same efficient set, to the extent
/// the known necessary conditions allow.
///
/// Route order: identical inputs are `Equal`; a consistent input against a
/// distinct matrix is `NotEqual` with a column witness; two single-pair
/// forms are `NotEqual` (distinct such matrices have different lower-bound
/// grids); distinct matrices of dimension at most 4 cannot share their
/// efficient set; otherwise a battery of necessary conditions runs and any
/// failure produces a witness. When every condition passes the verdict is
/// `Unknown`: the tool never claims `Equal` for distinct inputs.
pub fn decide_equal_efficient_sets(
    a: &ReciprocalMatrix,
    b: &ReciprocalMatrix,
) -> Result<EqualityVerdict, Error> {
    decide_equal_efficient_sets_with(a, b, &DecideOptions::default())
}

/// As [`decide_equal_efficient_sets`] with an explicit dimension cap.
pub fn decide_equal_efficient_sets_capped(
    a: &ReciprocalMatrix,
    b: &ReciprocalMatrix,
    cap: usize,
) -> Result<EqualityVerdict, Error> {
    let options = DecideOptions {
        cap,
        ..DecideOptions::default()
    };
    decide_equal_efficient_sets_with(a, b, &options)
}

/// As [`decide_equal_efficient_sets`] with explicit search options.
pub fn decide_equal_efficient_sets_with(
    a: &ReciprocalMatrix,
    b: &ReciprocalMatrix,
    options: &DecideOptions,
) -> Result<EqualityVerdict, Error> {
    if a.n() != b.n() {
        return Err(Error::dim_mismatch(a.n(), b.n()));
    }
    let n = a.n();
    let mut evidence = Vec::new();

    if a == b {
        evidence.push(entry("entrywise-equality", "matrices are identical"));
        return Ok(EqualityVerdict {
            status: EqualStatus::Equal,
            witness: None,
            witness_side: None,
            evidence,
        });
    }
    let (di, dj) = first_difference(a, b).expect("distinct matrices differ somewhere");
    evidence.push(entry(
        "entrywise-equality",
        format!("matrices differ at {}", fmt_pos(di, dj)),
    ));

    if a.is_consistent() || b.is_consistent() {
        return consistent_route(a, b, evidence);
    }

    let pa = Prepared::build(a, options.cap)?;
    let pb = Prepared::build(b, options.cap)?;

    let spc_a = spc_form(a);
    let spc_b = spc_form(b);
    if spc_a.is_some() && spc_b.is_some() {
        evidence.push(entry(
            "single-pair-form",
            "both matrices are monomially similar to single-pair canonical forms; \
             distinct such matrices never share their efficient set",
        ));
    } else if n <= 4 {
        evidence.push(entry(
            "low-dimension",
            "distinct matrices of dimension at most 4 never share their efficient set",
        ));
    }

    let (witness, any_failed) = battery(&pa, &pb, options, &mut evidence)?;
    match witness {
        Some((w, side)) => {
            evidence.push(entry(
                "witness-verification",
                format!(
                    "vector is efficient for the {} matrix only",
                    side_name(side)
                ),
            ));
            Ok(EqualityVerdict {
                status: EqualStatus::NotEqual,
                witness: Some(w),
                witness_side: Some(side),
                evidence,
            })
        }
        None => {
            if any_failed {
                evidence.push(entry(
                    "witness-verification",
                    "a necessary condition failed but no separating vector was certified",
                ));
            }
            Ok(EqualityVerdict {
                status: EqualStatus::Unknown,
                witness: None,
                witness_side: None,
                evidence,
            })
        }
    }
}

fn consistent_route(
    a: &ReciprocalMatrix,
    b: &ReciprocalMatrix,
    mut evidence: Vec<EvidenceEntry>,
) -> Result<EqualityVerdict, Error> {
    let verdict = |witness: PositiveVector, side: MatrixSide, evidence: Vec<EvidenceEntry>| {
        Ok(EqualityVerdict {
            status: EqualStatus::NotEqual,
            witness: Some(witness),
            witness_side: Some(side),
            evidence,
        })
    };
    match (a.is_consistent(), b.is_consistent()) {
        (true, true) => {
            evidence.push(entry(
                "consistency",
                "both matrices are consistent with distinct column rays",
            ));
            verdict(a.column(0), MatrixSide::First, evidence)
        }
        (true, false) => {
            evidence.push(entry(
                "consistency",
                "first matrix is consistent, second is not",
            ));
            let w = a.column(0);
            if !crate::efficiency::is_efficient(&w, b)? {
                return verdict(w, MatrixSide::First, evidence);
            }
            let col = nonproportional_column(b, &w);
            verdict(col, MatrixSide::Second, evidence)
        }
        (false, true) => {
            evidence.push(entry(
                "consistency",
                "second matrix is consistent, first is not",
            ));
            let w = b.column(0);
            if !crate::efficiency::is_efficient(&w, a)? {
                return verdict(w, MatrixSide::Second, evidence);
            }
            let col = nonproportional_column(a, &w);
            verdict(col, MatrixSide::First, evidence)
        }
        (false, false) => unreachable!("caller checks consistency"),
    }
}

/// Some column of an inconsistent matrix is never proportional to a fixed
/// ray, otherwise all columns would coincide projectively and the matrix
/// would be consistent.
fn nonproportional_column(m: &ReciprocalMatrix, ray: &PositiveVector) -> PositiveVector {
    (0..m.n())
        .map(|j| m.column(j))
        .find(|col| !col.projectively_eq(ray))
        .expect("inconsistent matrices have non-proportional columns")
}

/// Precomputed per-matrix data for the comparison battery.
struct Prepared<'a> {
    matrix: &'a ReciprocalMatrix,
    gamma: GammaSet,
    path_matrices: Vec<PathMatrix>,
    lower: SquareMatrix,
}

impl<'a> Prepared<'a> {
    fn build(matrix: &'a ReciprocalMatrix, cap: usize) -> Result<Self, Error> {
        let gamma = gamma_set_capped(matrix, cap)?;
        let path_matrices: Vec<PathMatrix> = gamma
            .iter()
            .map(|(cycle, _)| PathMatrix::compute(matrix, cycle))
            .collect::<Result<_, _>>()?;
        let lower = path_matrices
            .iter()
            .skip(1)
            .fold(path_matrices[0].values().clone(), |acc, pm| {
                acc.entrywise_min(pm.values())
            });
        Ok(Prepared {
            matrix,
            gamma,
            path_matrices,
            lower,
        })
    }

    fn member(&self, w: &PositiveVector) -> bool {
        self.path_matrices.iter().any(|pm| cone_contains(pm, w))
    }
}

fn one_sided(w: &PositiveVector, pa: &Prepared, pb: &Prepared) -> Option<MatrixSide> {
    match (pa.member(w), pb.member(w)) {
        (true, false) => Some(MatrixSide::First),
        (false, true) => Some(MatrixSide::Second),
        _ => None,
    }
}

type Witness = (PositiveVector, MatrixSide);

/// Runs the necessary-condition battery, appending evidence, and returns the
/// first certified witness plus whether any necessary condition failed.
fn battery(
    pa: &Prepared,
    pb: &Prepared,
    options: &DecideOptions,
    evidence: &mut Vec<EvidenceEntry>,
) -> Result<(Option<Witness>, bool), Error> {
    let n = pa.matrix.n();
    let mut any_failed = false;

    // Lower-bound grids must coincide; a difference yields a constructive
    // witness: the extreme anchored at the row of the smaller entry, taken
    // in a cycle attaining the minimum, violates the other matrix's bound.
    if pa.lower == pb.lower {
        evidence.push(entry(
            "lower-bound-equality",
            "global lower-bound grids are identical",
        ));
    } else {
        any_failed = true;
        let (i, j) = first_grid_difference(&pa.lower, &pb.lower);
        evidence.push(entry(
            "lower-bound-equality",
            format!(
                "grids differ at {}: {} vs {}",
                fmt_pos(i, j),
                format_rational(pa.lower.get(i, j)),
                format_rational(pb.lower.get(i, j)),
            ),
        ));
        if let Some(w) = lower_difference_witness(pa, pb, i, j) {
            if let Some(side) = one_sided(&w, pa, pb) {
                return Ok((Some((w, side)), true));
            }
        }
    }

    if n == 4 {
        let min_a = pa.gamma.iter().map(|(_, p)| p).min().expect("nonempty");
        let min_b = pb.gamma.iter().map(|(_, p)| p).min().expect("nonempty");
        if min_a == min_b {
            evidence.push(entry(
                "min-cycle-product",
                format!("both minima equal {}", format_rational(min_a)),
            ));
        } else {
            any_failed = true;
            evidence.push(entry(
                "min-cycle-product",
                format!(
                    "minima differ: {} vs {}",
                    format_rational(min_a),
                    format_rational(min_b)
                ),
            ));
        }
    }

    // Every extreme of every cone is efficient for its own matrix, so it
    // must transfer if the efficient sets coincide.
    for (source, target, side) in [(pa, pb, MatrixSide::First), (pb, pa, MatrixSide::Second)] {
        for pm in &source.path_matrices {
            for k in 0..n {
                let w = extreme_from_path_matrix(pm, k)?;
                if !target.member(&w) {
                    evidence.push(entry(
                        "extreme-transfer",
                        format!(
                            "extreme of the {} matrix (cycle {}, anchor {}) is not \
                             efficient for the other",
                            side_name(side),
                            pm.cycle(),
                            k + 1
                        ),
                    ));
                    return Ok((Some((w, side)), true));
                }
            }
        }
    }
    evidence.push(entry(
        "extreme-transfer",
        "all cone extremes are efficient for both matrices",
    ));

    // Row cover: the other matrix must dominate each path matrix on every
    // anchored attainable set. Failure implies the anchored extreme does not
    // transfer, so reaching this point with a failure is unexpected; it is
    // still checked independently.
    let mut row_cover_clean = true;
    for (source, target, side) in [(pa, pb, MatrixSide::First), (pb, pa, MatrixSide::Second)] {
        for pm in &source.path_matrices {
            for k in 0..n {
                let s = attain_set(pm.cycle(), k)?;
                let covered = target
                    .path_matrices
                    .iter()
                    .any(|other| {
                        dominates(other.values(), pm.values(), s.pairs())
                            .map(|d| d.holds)
                            .unwrap_or(false)
                    });
                if !covered {
                    any_failed = true;
                    row_cover_clean = false;
                    evidence.push(entry(
                        "row-cover",
                        format!(
                            "no cycle of the other matrix covers the {} matrix's cycle {} \
                             at anchor {}",
                            side_name(side),
                            pm.cycle(),
                            k + 1
                        ),
                    ));
                    let w = extreme_from_path_matrix(pm, k)?;
                    if let Some(side) = one_sided(&w, pa, pb) {
                        return Ok((Some((w, side)), true));
                    }
                }
            }
        }
    }
    if row_cover_clean {
        evidence.push(entry(
            "row-cover",
            "every anchored path matrix is covered by the other matrix",
        ));
    }

    // Undominated anchors force the same cycle with the same attainable
    // values on the other side.
    let mut undominated_clean = true;
    for (source, target, side) in [(pa, pb, MatrixSide::First), (pb, pa, MatrixSide::Second)] {
        for pm in &source.path_matrices {
            for k in 0..n {
                if !undominated_over(source.matrix, pm.cycle(), k, &source.gamma)? {
                    continue;
                }
                let s = attain_set(pm.cycle(), k)?;
                let transferred = target.gamma.contains(pm.cycle()) && {
                    let other = PathMatrix::compute(target.matrix, pm.cycle())?;
                    s.pairs()
                        .iter()
                        .all(|&(i, j)| other.get(i, j) == pm.get(i, j))
                };
                if !transferred {
                    any_failed = true;
                    undominated_clean = false;
                    evidence.push(entry(
                        "undominated-transfer",
                        format!(
                            "undominated anchor {} of the {} matrix's cycle {} does not \
                             carry its values over",
                            k + 1,
                            side_name(side),
                            pm.cycle()
                        ),
                    ));
                    let w = extreme_from_path_matrix(pm, k)?;
                    if let Some(side) = one_sided(&w, pa, pb) {
                        return Ok((Some((w, side)), true));
                    }
                }
            }
        }
    }
    if undominated_clean {
        evidence.push(entry(
            "undominated-transfer",
            "all undominated anchors carry their values over",
        ));
    }

    // Sampled membership search: pinned two-extreme mixtures, then seeded
    // random nonnegative combinations, tested for one-sided efficiency.
    let mut samples = 0usize;
    for (source, target, side) in [(pa, pb, MatrixSide::First), (pb, pa, MatrixSide::Second)] {
        for pm in &source.path_matrices {
            let extremes: Vec<PositiveVector> = (0..n)
                .map(|k| extreme_from_path_matrix(pm, k))
                .collect::<Result<_, _>>()?;
            let sum = combine(&extremes, &vec![Rat::one(); n]);
            samples += 1;
            if !target.member(&sum) {
                evidence.push(entry("sampled-search", "a mixture of all extremes separates"));
                return Ok((Some((sum, side)), true));
            }
            for p in 0..n {
                for q in 0..n {
                    if p == q {
                        continue;
                    }
                    for weight in &options.mixture_weights {
                        let mut coeffs = vec![Rat::zero(); n];
                        coeffs[p] = Rat::from_integer((*weight).into());
                        coeffs[q] = Rat::one();
                        let w = combine(&extremes, &coeffs);
                        samples += 1;
                        if !target.member(&w) {
                            evidence.push(entry(
                                "sampled-search",
                                format!(
                                    "a pinned mixture in the {} matrix's cycle {} separates",
                                    side_name(side),
                                    pm.cycle()
                                ),
                            ));
                            return Ok((Some((w, side)), true));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.sample_seed);
    for round in 0..options.sample_budget {
        let (source, target, side) = if round % 2 == 0 {
            (pa, pb, MatrixSide::First)
        } else {
            (pb, pa, MatrixSide::Second)
        };
        let pm = &source.path_matrices[rng.gen_range(0..source.path_matrices.len())];
        let extremes: Vec<PositiveVector> = (0..n)
            .map(|k| extreme_from_path_matrix(pm, k))
            .collect::<Result<_, _>>()?;
        let coeffs: Vec<Rat> = loop {
            let draw: Vec<Rat> = (0..n)
                .map(|_| rat(rng.gen_range(0..=4), rng.gen_range(1..=3)))
                .collect();
            if draw.iter().any(|c| !c.is_zero()) {
                break draw;
            }
        };
        let w = combine(&extremes, &coeffs);
        samples += 1;
        if !target.member(&w) {
            evidence.push(entry(
                "sampled-search",
                format!("a random cone sample of the {} matrix separates", side_name(side)),
            ));
            return Ok((Some((w, side)), true));
        }
    }
    evidence.push(entry(
        "sampled-search",
        format!("no separating vector among {} cone samples", samples),
    ));

    Ok((None, any_failed))
}

fn combine(extremes: &[PositiveVector], coeffs: &[Rat]) -> PositiveVector {
    let n = extremes[0].n();
    let entries = (0..n)
        .map(|i| {
            let mut total = Rat::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    total += c * extremes[k].get(i);
                }
            }
            total
        })
        .collect();
    PositiveVector::new(entries).expect("nonnegative combination of positive vectors")
}

/// Extreme of the side with the smaller lower bound at (i, j), anchored at
/// i in a minimizing cycle; its ratio matrix hits the smaller value at
/// (i, j) and therefore violates the other side's global bound.
fn lower_difference_witness(pa: &Prepared, pb: &Prepared, i: usize, j: usize) -> Option<PositiveVector> {
    let (source, value) = if pa.lower.get(i, j) < pb.lower.get(i, j) {
        (pa, pa.lower.get(i, j))
    } else {
        (pb, pb.lower.get(i, j))
    };
    let pm = source
        .path_matrices
        .iter()
        .find(|pm| pm.get(i, j) == value)?;
    extreme_from_path_matrix(pm, i).ok()
}

fn first_difference(a: &ReciprocalMatrix, b: &ReciprocalMatrix) -> Option<(usize, usize)> {
    for i in 0..a.n() {
        for j in 0..a.n() {
            if a.get(i, j) != b.get(i, j) {
                return Some((i, j));
            }
        }
    }
    None
}

fn first_grid_difference(a: &SquareMatrix, b: &SquareMatrix) -> (usize, usize) {
    for i in 0..a.n() {
        for j in 0..a.n() {
            if a.get(i, j) != b.get(i, j) {
                return (i, j);
            }
        }
    }
    unreachable!("grids compare unequal")
}

fn entry(check: &str, outcome: impl Into<String>) -> EvidenceEntry {
    EvidenceEntry {
        check: check.to_string(),
        outcome: outcome.into(),
    }
}

fn side_name(side: MatrixSide) -> &'static str {
    match side {
        MatrixSide::First => "first",
        MatrixSide::Second => "second",
    }
}

fn fmt_pos(i: usize, j: usize) -> String {
    format!("({},{})", i + 1, j + 1)
}

/// Returns the first cone extreme of either matrix that is not efficient
/// for the other, if any.
pub fn extreme_transfer_check(
    a: &ReciprocalMatrix,
    b: &ReciprocalMatrix,
) -> Result<Option<PositiveVector>, Error> {
    if a.n() != b.n() {
        return Err(Error::dim_mismatch(a.n(), b.n()));
    }
    let pa = Prepared::build(a, DEFAULT_MAX_N)?;
    let pb = Prepared::build(b, DEFAULT_MAX_N)?;
    for (source, target) in [(&pa, &pb), (&pb, &pa)] {
        for pm in &source.path_matrices {
            for k in 0..a.n() {
                let w = extreme_from_path_matrix(pm, k)?;
                if !target.member(&w) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Candidate-pair generation strategy for the counterexample search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStrategy {
    /// Single-entry additive perturbations biased toward pairs with equal
    /// lower-bound grids.
    PerturbOne,
    /// Independent random inconsistent pairs.
    Random,
}

impl SearchStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            SearchStrategy::PerturbOne => "perturb",
            SearchStrategy::Random => "random",
        }
    }
}

impl fmt::Display for SearchStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "perturb" => Ok(SearchStrategy::PerturbOne),
            "random" => Ok(SearchStrategy::Random),
            other => Err(format!(
                "unknown strategy {:?}; expected \"perturb\" or \"random\"",
                other
            )),
        }
    }
}

/// One examined candidate pair that survived every necessary condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchRecord {
    pub iteration: usize,
    pub first: ReciprocalMatrix,
    pub second: ReciprocalMatrix,
    pub verdict: EqualityVerdict,
}

/// Outcome of a counterexample search run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub iterations: usize,
    pub seed: u64,
    pub strategy: SearchStrategy,
    pub examined: usize,
    pub not_equal: usize,
    pub unknown: usize,
    /// How many generated pairs had identical lower-bound grids.
    pub lower_bound_matches: usize,
    /// Pairs with verdict Unknown: survivors of every necessary condition.
    pub survivors: Vec<SearchRecord>,
    /// At n = 5: whether the built-in reference pair decides NotEqual.
    pub reference_pair_not_equal: Option<bool>,
}

/// Searches for candidate pairs with equal efficient sets in dimension
/// n >= 5 (default enumeration cap). Deterministic for fixed arguments:
/// iteration t draws from stream t of a counter-mode RNG seeded with `seed`.
pub fn search_counterexamples(
    n: usize,
    iterations: usize,
    seed: u64,
    strategy: SearchStrategy,
) -> Result<SearchReport, Error> {
    search_counterexamples_capped(n, iterations, seed, strategy, DEFAULT_MAX_N)
}

/// As [`search_counterexamples`] with an explicit dimension cap.
pub fn search_counterexamples_capped(
    n: usize,
    iterations: usize,
    seed: u64,
    strategy: SearchStrategy,
    cap: usize,
) -> Result<SearchReport, Error> {
    if n < 5 {
        return Err(Error::DimensionTooSmall { n, min: 5 });
    }
    if n > cap {
        return Err(Error::DimensionExceedsCap { n, cap });
    }

    let reference_pair_not_equal = if n == 5 {
        let (a, b) = crate::fixtures::hard_pair5();
        let verdict = decide_equal_efficient_sets_capped(&a, &b, cap)?;
        Some(verdict.status == EqualStatus::NotEqual)
    } else {
        None
    };

    let mut report = SearchReport {
        n,
        iterations,
        seed,
        strategy,
        examined: 0,
        not_equal: 0,
        unknown: 0,
        lower_bound_matches: 0,
        survivors: Vec::new(),
        reference_pair_not_equal,
    };

    for iteration in 0..iterations {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(iteration as u64);
        let (a, b) = generate_pair(n, strategy, &mut rng);
        let options = DecideOptions {
            cap,
            sample_budget: 48,
            mixture_weights: vec![2],
            sample_seed: seed ^ (iteration as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
        };
        if l_equal(&a, &b)? {
            report.lower_bound_matches += 1;
        }
        let verdict = decide_equal_efficient_sets_with(&a, &b, &options)?;
        report.examined += 1;
        match verdict.status {
            EqualStatus::NotEqual => report.not_equal += 1,
            EqualStatus::Unknown => {
                report.unknown += 1;
                report.survivors.push(SearchRecord {
                    iteration,
                    first: a,
                    second: b,
                    verdict,
                });
            }
            EqualStatus::Equal => unreachable!("generated pairs are distinct"),
        }
    }
    Ok(report)
}

/// Draws a candidate pair. The perturbation strategy adds 1/10 to one
/// off-diagonal entry at least 1, preferring a position that keeps the
/// lower-bound grids equal; paths through an already-large entry rarely
/// attain any minimum, so such perturbations tend to leave the grid fixed.
fn generate_pair<R: Rng>(
    n: usize,
    strategy: SearchStrategy,
    rng: &mut R,
) -> (ReciprocalMatrix, ReciprocalMatrix) {
    match strategy {
        SearchStrategy::Random => {
            let a = random_inconsistent(n, 6, rng);
            loop {
                let b = random_inconsistent(n, 6, rng);
                if b != a {
                    return (a, b);
                }
            }
        }
        SearchStrategy::PerturbOne => {
            let a = random_inconsistent(n, 6, rng);
            let mut positions: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && a.get(i, j) >= &Rat::one())
                .collect();
            for i in (1..positions.len()).rev() {
                positions.swap(i, rng.gen_range(0..=i));
            }
            let delta = rat(1, 10);
            let mut fallback = None;
            for &(i, j) in &positions {
                let mut b = a.clone();
                b.set_pair(i, j, a.get(i, j) + &delta).expect("positive entry");
                if b.is_consistent() {
                    continue;
                }
                if fallback.is_none() {
                    fallback = Some(b.clone());
                }
                if let Ok(true) = l_equal(&a, &b) {
                    return (a, b);
                }
            }
            match fallback {
                Some(b) => (a, b),
                None => {
                    let value = a.get(0, 1) + random_above_one(4, rng);
                    let mut b = a.clone();
                    b.set_pair(0, 1, value).expect("positive entry");
                    (a, b)
                }
            }
        }
    }
}
