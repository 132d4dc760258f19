use std::fmt;

use itertools::Itertools;
use num_traits::One;

use crate::error::Error;
use crate::matrix::ReciprocalMatrix;
use crate::rational::Rat;

/// Default cap on the matrix dimension for cycle enumeration: (n-1)! directed
/// cycles stay interactive up to n = 9 (8! = 40320).
pub const DEFAULT_MAX_N: usize = 9;

/// Directed Hamiltonian cycle over the index set {0, .., n-1}, stored from its
/// canonical rotation (first vertex 0). Direction is significant: a cycle and
/// its reverse are distinct values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HCycle {
    verts: Vec<usize>,
}

impl HCycle {
    /// Accepts the cycle listed from any starting vertex and stores the
    /// rotation that begins at 0.
    pub fn new(seq: Vec<usize>) -> Result<Self, Error> {
        let n = seq.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall { n, min: 2 });
        }
        let mut seen = vec![false; n];
        for &v in &seq {
            if v >= n || seen[v] {
                return Err(Error::MalformedCycle);
            }
            seen[v] = true;
        }
        let start = seq.iter().position(|&v| v == 0).expect("0 is present");
        let mut verts = Vec::with_capacity(n);
        verts.extend_from_slice(&seq[start..]);
        verts.extend_from_slice(&seq[..start]);
        Ok(HCycle { verts })
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// The same cycle walked in the opposite direction, in canonical form.
    pub fn reversed(&self) -> HCycle {
        let mut verts = Vec::with_capacity(self.n());
        verts.push(0);
        verts.extend(self.verts[1..].iter().rev());
        HCycle { verts }
    }

    /// The rotation of the vertex list that starts at `k`.
    pub fn rooted_at(&self, k: usize) -> Result<Vec<usize>, Error> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let start = self.position(k);
        let mut verts = Vec::with_capacity(n);
        verts.extend_from_slice(&self.verts[start..]);
        verts.extend_from_slice(&self.verts[..start]);
        Ok(verts)
    }

    /// Position of vertex `v` in the canonical listing. Panics if out of range.
    pub fn position(&self, v: usize) -> usize {
        self.verts.iter().position(|&x| x == v).expect("vertex in range")
    }

    /// Directed edges including the closing edge back to the start.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).map(move |t| (self.verts[t], self.verts[(t + 1) % n]))
    }
}

impl fmt::Display for HCycle {
    /// One-based closed walk, e.g. "12341"; dash-separated once two-digit
    /// labels appear.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .verts
            .iter()
            .chain(std::iter::once(&self.verts[0]))
            .map(|v| (v + 1).to_string())
            .collect();
        if self.n() < 10 {
            write!(f, "{}", labels.concat())
        } else {
            write!(f, "{}", labels.join("-"))
        }
    }
}

impl fmt::Debug for HCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HCycle({self})")
    }
}

/// All (n-1)! canonical directed Hamiltonian cycles on n vertices, in
/// lexicographic order of their vertex sequences.
pub fn enumerate_hcycles(n: usize) -> Result<Vec<HCycle>, Error> {
    enumerate_hcycles_capped(n, DEFAULT_MAX_N)
}

/// As [`enumerate_hcycles`] with an explicit dimension cap.
pub fn enumerate_hcycles_capped(n: usize, cap: usize) -> Result<Vec<HCycle>, Error> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if n > cap {
        return Err(Error::DimensionExceedsCap { n, cap });
    }
    let mut cycles = Vec::new();
    for tail in (1..n).permutations(n - 1) {
        let mut verts = Vec::with_capacity(n);
        verts.push(0);
        verts.extend(tail);
        cycles.push(HCycle { verts });
    }
    Ok(cycles)
}

/// Product of the matrix entries along the closed walk of `cycle`.
pub fn cycle_product(a: &ReciprocalMatrix, cycle: &HCycle) -> Result<Rat, Error> {
    if a.n() != cycle.n() {
        return Err(Error::dim_mismatch(a.n(), cycle.n()));
    }
    let mut product = Rat::one();
    for (u, v) in cycle.edges() {
        product *= a.get(u, v);
    }
    Ok(product)
}

/// Product of the matrix entries along `cycle` walked forward from `i` to `j`.
pub fn path_product(
    a: &ReciprocalMatrix,
    cycle: &HCycle,
    i: usize,
    j: usize,
) -> Result<Rat, Error> {
    let n = a.n();
    if n != cycle.n() {
        return Err(Error::dim_mismatch(n, cycle.n()));
    }
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if i == j {
        return Err(Error::IndicesEqual);
    }
    let verts = cycle.vertices();
    let mut product = Rat::one();
    let mut t = cycle.position(i);
    loop {
        let u = verts[t];
        let v = verts[(t + 1) % n];
        product *= a.get(u, v);
        if v == j {
            return Ok(product);
        }
        t = (t + 1) % n;
    }
}

/// The cycles whose product in a fixed matrix is below one, with products,
/// sorted lexicographically by canonical vertex sequence. Nonempty exactly
/// when the matrix is inconsistent; at most one of each cycle/reverse pair
/// qualifies, so the size is at most (n-1)!/2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaSet {
    items: Vec<(HCycle, Rat)>,
}

impl GammaSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(HCycle, Rat)> {
        self.items.iter()
    }

    pub fn cycles(&self) -> impl Iterator<Item = &HCycle> {
        self.items.iter().map(|(cycle, _)| cycle)
    }

    pub fn contains(&self, cycle: &HCycle) -> bool {
        self.product_of(cycle).is_some()
    }

    pub fn product_of(&self, cycle: &HCycle) -> Option<&Rat> {
        self.items
            .binary_search_by(|(c, _)| c.cmp(cycle))
            .ok()
            .map(|at| &self.items[at].1)
    }
}

/// Membership set of the below-one cycles of `a` (empty iff `a` is
/// consistent).
pub fn gamma_set(a: &ReciprocalMatrix) -> Result<GammaSet, Error> {
    gamma_set_capped(a, DEFAULT_MAX_N)
}

/// As [`gamma_set`] with an explicit dimension cap.
pub fn gamma_set_capped(a: &ReciprocalMatrix, cap: usize) -> Result<GammaSet, Error> {
    let one = Rat::one();
    let mut items = Vec::new();
    for cycle in enumerate_hcycles_capped(a.n(), cap)? {
        let product = cycle_product(a, &cycle)?;
        if product < one {
            items.push((cycle, product));
        }
    }
    Ok(GammaSet { items })
}

/// Minimum cycle product of an inconsistent matrix together with every cycle
/// attaining it (the minimizer need not be unique), sorted canonically.
pub fn min_cycles(a: &ReciprocalMatrix) -> Result<(Rat, Vec<HCycle>), Error> {
    min_cycles_capped(a, DEFAULT_MAX_N)
}

/// As [`min_cycles`] with an explicit dimension cap.
pub fn min_cycles_capped(a: &ReciprocalMatrix, cap: usize) -> Result<(Rat, Vec<HCycle>), Error> {
    let gamma = gamma_set_capped(a, cap)?;
    min_cycles_over(&gamma)
}

/// As [`min_cycles`] over a precomputed membership set.
pub fn min_cycles_over(gamma: &GammaSet) -> Result<(Rat, Vec<HCycle>), Error> {
    let value = gamma
        .iter()
        .map(|(_, product)| product)
        .min()
        .ok_or(Error::ConsistentMatrix)?
        .clone();
    let cycles = gamma
        .iter()
        .filter(|(_, product)| *product == value)
        .map(|(cycle, _)| cycle.clone())
        .collect();
    Ok((value, cycles))
}
