use std::fmt;

use num_traits::{One, Signed};

use crate::error::Error;
use crate::rational::{format_rational, Rat};

/// Dense square grid of exact rationals, row major. This is the raw container
/// shared by validated matrices, path matrices and bound matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Rat>,
}

impl SquareMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn filled(n: usize, value: Rat) -> Self {
        SquareMatrix {
            n,
            entries: vec![value; n * n],
        }
    }

    /// Builds from rows, which must form a square grid.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::dim_mismatch(n, row.len()));
            }
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rat) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        self.entries.chunks(self.n)
    }

    /// Entrywise inverse of the transpose: `out[i][j] = 1 / self[j][i]`.
    /// An involution on positive matrices. Panics on a zero entry.
    pub fn inv_transpose(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self.get(j, i).recip())
    }

    /// Entrywise minimum. Panics on dimension mismatch.
    pub fn entrywise_min(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SquareMatrix::from_fn(self.n, |i, j| self.get(i, j).clone().min(other.get(i, j).clone()))
    }

    /// `true` when `self <= other` in every entry. Panics on dimension mismatch.
    pub fn le(&self, other: &SquareMatrix) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid: Vec<Vec<String>> = self
            .rows()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        f.debug_tuple("SquareMatrix").field(&grid).finish()
    }
}

/// Checks positivity, unit diagonal and pairwise reciprocity, reporting the
/// first violating position in row-major scan order.
pub fn validate_reciprocal(mat: &SquareMatrix) -> Result<(), Error> {
    let n = mat.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    for i in 0..n {
        for j in 0..n {
            if !mat.get(i, j).is_positive() {
                return Err(Error::NonPositiveEntry { i, j });
            }
        }
    }
    for i in 0..n {
        if !mat.get(i, i).is_one() {
            return Err(Error::DiagonalNotOne { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !(mat.get(i, j) * mat.get(j, i)).is_one() {
                return Err(Error::ReciprocityViolation { i, j });
            }
        }
    }
    Ok(())
}

/// Positive square matrix with unit diagonal and `a[j][i] = 1 / a[i][j]`,
/// recording pairwise ratio judgments among n alternatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReciprocalMatrix {
    mat: SquareMatrix,
}

impl ReciprocalMatrix {
    pub fn new(mat: SquareMatrix) -> Result<Self, Error> {
        validate_reciprocal(&mat)?;
        Ok(ReciprocalMatrix { mat })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        ReciprocalMatrix::new(SquareMatrix::from_rows(rows)?)
    }

    /// Builds from the strict upper triangle given in row-major order
    /// ((0,1), (0,2), …, (n-2,n-1)), filling the diagonal and reciprocals.
    pub fn from_upper_triangle(n: usize, upper: &[Rat]) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { n, min: 2 });
        }
        let expected = n * (n - 1) / 2;
        if upper.len() != expected {
            return Err(Error::dim_mismatch(expected, upper.len()));
        }
        let mut mat = SquareMatrix::filled(n, Rat::one());
        let mut next = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let value = next.next().expect("length checked").clone();
                if !value.is_positive() {
                    return Err(Error::NonPositiveEntry { i, j });
                }
                mat.set(j, i, value.recip());
                mat.set(i, j, value);
            }
        }
        ReciprocalMatrix::new(mat)
    }

    /// Internal constructor for matrices that are reciprocal by construction.
    pub(crate) fn from_parts_unchecked(mat: SquareMatrix) -> Self {
        debug_assert!(validate_reciprocal(&mat).is_ok());
        ReciprocalMatrix { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        self.mat.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.mat
    }

    /// Overwrites the entry at (i, j) and its reciprocal partner at (j, i).
    pub fn set_pair(&mut self, i: usize, j: usize, value: Rat) -> Result<(), Error> {
        let n = self.n();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        if i == j {
            return Err(Error::IndicesEqual);
        }
        if !value.is_positive() {
            return Err(Error::NonPositiveEntry { i, j });
        }
        self.mat.set(j, i, value.recip());
        self.mat.set(i, j, value);
        Ok(())
    }

    /// `true` iff `a[i][j] * a[j][k] = a[i][k]` for every triple.
    pub fn is_consistent(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if &(self.get(i, j) * self.get(j, k)) != self.get(i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Column `j` as a positive vector.
    pub fn column(&self, j: usize) -> PositiveVector {
        PositiveVector::new((0..self.n()).map(|i| self.get(i, j).clone()).collect())
            .expect("columns of a validated matrix are positive")
    }
}

/// Consistent matrix of coordinate ratios `w_i / w_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatioMatrix {
    mat: ReciprocalMatrix,
}

impl RatioMatrix {
    pub fn matrix(&self) -> &SquareMatrix {
        self.mat.matrix()
    }

    pub fn as_reciprocal(&self) -> &ReciprocalMatrix {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        self.mat.get(i, j)
    }
}

/// `W[i][j] = w_i / w_j`; the result is always consistent.
pub fn ratio_matrix(w: &PositiveVector) -> RatioMatrix {
    let mat = SquareMatrix::from_fn(w.n(), |i, j| w.get(i) / w.get(j));
    RatioMatrix {
        mat: ReciprocalMatrix::from_parts_unchecked(mat),
    }
}

/// Strictly positive weight vector. Treated projectively in comparisons:
/// vectors on the same ray describe the same ranking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositiveVector {
    entries: Vec<Rat>,
}

impl PositiveVector {
    pub fn new(entries: Vec<Rat>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::DimensionTooSmall { n: 0, min: 1 });
        }
        for (i, value) in entries.iter().enumerate() {
            if !value.is_positive() {
                return Err(Error::NonPositiveCoordinate { i });
            }
        }
        Ok(PositiveVector { entries })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self, Error> {
        PositiveVector::new(values.iter().map(|&v| crate::rational::rat_int(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// Ray equality: `self = c * other` for some c > 0.
    pub fn projectively_eq(&self, other: &PositiveVector) -> bool {
        self.n() == other.n()
            && (0..self.n())
                .all(|i| self.get(i) * other.get(0) == other.get(i) * self.get(0))
    }

    /// The representative on the same ray with first coordinate 1.
    pub fn normalized(&self) -> PositiveVector {
        let head = self.entries[0].clone();
        PositiveVector {
            entries: self.entries.iter().map(|v| v / &head).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn grid(rows: &[&[(i64, i64)]]) -> SquareMatrix {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn accepts_reference_matrix() {
        let mat = grid(&[
            &[(1, 1), (1, 1), (3, 1), (7, 1)],
            &[(1, 1), (1, 1), (1, 1), (2, 1)],
            &[(1, 3), (1, 1), (1, 1), (1, 1)],
            &[(1, 7), (1, 2), (1, 1), (1, 1)],
        ]);
        assert!(ReciprocalMatrix::new(mat).is_ok());
    }

    #[test]
    fn accepts_all_ones() {
        let mat = SquareMatrix::filled(5, Rat::one());
        let a = ReciprocalMatrix::new(mat).unwrap();
        assert!(a.is_consistent());
    }

    #[test]
    fn rejects_non_reciprocal_pair() {
        let mat = grid(&[&[(1, 1), (2, 1)], &[(3, 1), (1, 1)]]);
        assert_eq!(
            ReciprocalMatrix::new(mat).unwrap_err(),
            Error::ReciprocityViolation { i: 0, j: 1 }
        );
    }

    #[test]
    fn rejects_bad_diagonal_and_nonpositive() {
        let mat = grid(&[&[(1, 1), (2, 1)], &[(1, 2), (2, 1)]]);
        assert_eq!(
            ReciprocalMatrix::new(mat).unwrap_err(),
            Error::DiagonalNotOne { i: 1 }
        );
        let mat = grid(&[&[(1, 1), (-2, 1)], &[(-1, 2), (1, 1)]]);
        assert_eq!(
            ReciprocalMatrix::new(mat).unwrap_err(),
            Error::NonPositiveEntry { i: 0, j: 1 }
        );
    }

    #[test]
    fn rejects_too_small() {
        let mat = SquareMatrix::filled(1, Rat::one());
        assert_eq!(
            ReciprocalMatrix::new(mat).unwrap_err(),
            Error::DimensionTooSmall { n: 1, min: 2 }
        );
    }

    #[test]
    fn two_by_two_is_always_consistent() {
        let mat = grid(&[&[(1, 1), (5, 3)], &[(3, 5), (1, 1)]]);
        assert!(ReciprocalMatrix::new(mat).unwrap().is_consistent());
    }

    #[test]
    fn ratio_matrix_is_consistent_and_exact() {
        let w = PositiveVector::new(vec![rat_int(2), rat_int(1), rat(1, 3)]).unwrap();
        let wm = ratio_matrix(&w);
        assert!(wm.as_reciprocal().is_consistent());
        assert_eq!(wm.get(0, 1), &rat_int(2));
        assert_eq!(wm.get(2, 0), &rat(1, 6));

        let w = PositiveVector::new(vec![
            rat_int(5),
            rat_int(5),
            rat(3, 10),
            rat_int(1),
            rat(1, 100),
        ])
        .unwrap();
        let wm = ratio_matrix(&w);
        assert_eq!(wm.get(0, 4), &rat_int(500));
        assert_eq!(wm.get(2, 4), &rat_int(30));
    }

    #[test]
    fn inv_transpose_is_an_involution() {
        let m = grid(&[&[(1, 1), (3, 2)], &[(5, 7), (1, 1)]]);
        assert_eq!(m.inv_transpose().inv_transpose(), m);
        assert_eq!(m.inv_transpose().get(0, 1), &rat(7, 5));
    }

    #[test]
    fn projective_equality_ignores_scale() {
        let v = PositiveVector::from_ints(&[2, 4, 6]).unwrap();
        let w = PositiveVector::from_ints(&[1, 2, 3]).unwrap();
        let u = PositiveVector::from_ints(&[1, 2, 4]).unwrap();
        assert!(v.projectively_eq(&w));
        assert!(!v.projectively_eq(&u));
        assert_eq!(v.normalized(), w.normalized().normalized());
    }

    #[test]
    fn upper_triangle_round_trip() {
        let a = ReciprocalMatrix::from_upper_triangle(
            3,
            &[rat(1, 2), rat_int(6), rat(1, 2)],
        )
        .unwrap();
        assert_eq!(a.get(1, 0), &rat_int(2));
        assert_eq!(a.get(2, 1), &rat_int(2));
        assert_eq!(a.get(0, 2), &rat_int(6));
    }
}
