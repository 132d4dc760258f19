use num_traits::{One, Signed};

use crate::error::Error;
use crate::matrix::{PositiveVector, ReciprocalMatrix, SquareMatrix};
use crate::rational::Rat;

/// Change of coordinates combining a relabeling of alternatives with positive
/// per-alternative rescaling: index `i` maps to `perm[i]` and the coordinate
/// landing at position `p` is multiplied by `scale[p]`.
///
/// Acting on vectors: `(map w)[perm[i]] = scale[perm[i]] * w[i]`.
/// Conjugating matrices preserves reciprocity, consistency, cycle products up
/// to relabeling, and efficiency of the paired vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scale: Vec<Rat>,
}

impl MonomialMap {
    pub fn new(perm: Vec<usize>, scale: Vec<Rat>) -> Result<Self, Error> {
        let n = perm.len();
        if scale.len() != n {
            return Err(Error::dim_mismatch(n, scale.len()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotAPermutation);
            }
            seen[p] = true;
        }
        for (i, value) in scale.iter().enumerate() {
            if !value.is_positive() {
                return Err(Error::NonPositiveCoordinate { i });
            }
        }
        Ok(MonomialMap { perm, scale })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap {
            perm: (0..n).collect(),
            scale: vec![Rat::from_integer(1.into()); n],
        }
    }

    /// Pure relabeling with no rescaling.
    pub fn permutation(perm: Vec<usize>) -> Result<Self, Error> {
        let n = perm.len();
        MonomialMap::new(perm, vec![Rat::from_integer(1.into()); n])
    }

    /// Pure rescaling with no relabeling.
    pub fn diagonal(scale: Vec<Rat>) -> Result<Self, Error> {
        let n = scale.len();
        MonomialMap::new((0..n).collect(), scale)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[Rat] {
        &self.scale
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.scale.iter().all(|s| s.is_one())
    }

    pub fn inverse(&self) -> MonomialMap {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut scale = vec![Rat::from_integer(1.into()); n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            scale[i] = self.scale[self.perm[i]].recip();
        }
        MonomialMap { perm, scale }
    }
}

/// `map` applied to `w`: relabel coordinates and rescale.
pub fn apply_monomial(map: &MonomialMap, w: &PositiveVector) -> Result<PositiveVector, Error> {
    if map.n() != w.n() {
        return Err(Error::dim_mismatch(map.n(), w.n()));
    }
    let n = w.n();
    let mut entries = vec![Rat::one(); n];
    for i in 0..n {
        entries[map.perm[i]] = &map.scale[map.perm[i]] * w.get(i);
    }
    PositiveVector::new(entries)
}

/// The conjugate matrix `S A S^{-1}` for the monomial matrix S encoded by
/// `map`: entry (perm[i], perm[j]) becomes `scale[perm[i]] / scale[perm[j]] *
/// a[i][j]`. The result is reciprocal by construction.
pub fn monomial_conjugate(
    a: &ReciprocalMatrix,
    map: &MonomialMap,
) -> Result<ReciprocalMatrix, Error> {
    if map.n() != a.n() {
        return Err(Error::dim_mismatch(map.n(), a.n()));
    }
    let n = a.n();
    let mut out = SquareMatrix::filled(n, Rat::one());
    for i in 0..n {
        for j in 0..n {
            let value = &map.scale[map.perm[i]] / &map.scale[map.perm[j]] * a.get(i, j);
            out.set(map.perm[i], map.perm[j], value);
        }
    }
    Ok(ReciprocalMatrix::from_parts_unchecked(out))
}
