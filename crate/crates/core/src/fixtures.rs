//! Reference matrices shared by the unit, integration and acceptance suites.
//!
//! Hidden from documentation: these exist so every suite freezes the same
//! exact inputs.

use crate::matrix::{PositiveVector, ReciprocalMatrix, SquareMatrix};
use crate::rational::{parse_rational, Rat};

/// Parses a semicolon/whitespace grid of rational literals into a plain
/// square matrix without reciprocity checks (expected path matrices and
/// bounds are not reciprocal).
pub fn grid(grid: &str) -> SquareMatrix {
    let rows: Vec<Vec<Rat>> = grid
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|cell| parse_rational(cell).expect("fixture literal"))
                .collect()
        })
        .collect();
    SquareMatrix::from_rows(rows).expect("fixture grid is square")
}

/// Parses a semicolon/whitespace grid of rational literals, e.g.
/// `"1 1 3 7; 1 1 1 2; 1/3 1 1 1; 1/7 1/2 1 1"`, validating reciprocity.
pub fn matrix(text: &str) -> ReciprocalMatrix {
    ReciprocalMatrix::new(grid(text)).expect("fixture matrix is reciprocal")
}

/// Parses a whitespace-separated positive vector.
pub fn vector(text: &str) -> PositiveVector {
    PositiveVector::new(
        text.split_whitespace()
            .map(|cell| parse_rational(cell).expect("fixture literal"))
            .collect(),
    )
    .expect("fixture vector is positive")
}

/// 4x4 matrix with exactly three below-one cycles (products 1/7, 2/3, 6/7);
/// its cone intervals and global bounds are frozen in the test suites.
pub fn bounds4() -> ReciprocalMatrix {
    matrix("1 1 3 7; 1 1 1 2; 1/3 1 1 1; 1/7 1/2 1 1")
}

/// 4x4 matrix whose efficient vectors all rank the alternatives in the
/// decreasing order 1, 2, 3, 4; two below-one cycles (1/2 and 8/9) and two
/// cycles with product exactly 1.
pub fn decreasing4() -> ReciprocalMatrix {
    matrix("1 1 3 4; 1 1 2 3; 1/3 1/2 1 1; 1/4 1/3 1 1")
}

/// 4x4 matrix with two free reciprocal pairs at (1,3) and (2,4); analyses of
/// cycle 12341 are independent of the two parameters. The cone of that cycle
/// splits the alternatives into the blocks {1,2} above {3,4} and its extremes
/// realize exactly three distinct orders.
pub fn star4(c13: Rat, c24: Rat) -> ReciprocalMatrix {
    let mut a = matrix("1 1/2 1 4; 2 1 6 1; 1 1/6 1 1/2; 1/4 1 2 1");
    a.set_pair(0, 2, c13).expect("positive parameter");
    a.set_pair(1, 3, c24).expect("positive parameter");
    a
}

/// n x n all-ones matrix with the single entry (1, n) set to `a` (and its
/// reciprocal partner); for a > 1 this is the canonical one-perturbation
/// matrix S_{1,n}(a).
pub fn perturbed_ones(n: usize, a: Rat) -> ReciprocalMatrix {
    use num_traits::One;
    let mut m = ReciprocalMatrix::from_parts_unchecked(crate::matrix::SquareMatrix::filled(
        n,
        Rat::one(),
    ));
    m.set_pair(0, n - 1, a).expect("positive parameter");
    m
}

/// 5x5 pair with identical global lower bounds but different efficient sets:
/// the second matrix differs from the first only in the (3,5) entry, 30 vs
/// 30.1. The vector from [`hard_pair_witness`] is efficient for the first
/// matrix only.
pub fn hard_pair5() -> (ReciprocalMatrix, ReciprocalMatrix) {
    let a = matrix(
        "1 1 1/10 9 500; 1 1 1 5 11; 10 1 1 1 30; 1/9 1/5 1 1 1; 1/500 1/11 1/30 1 1",
    );
    let b = matrix(
        "1 1 1/10 9 500; 1 1 1 5 11; 10 1 1 1 30.1; 1/9 1/5 1 1 1; 1/500 1/11 10/301 1 1",
    );
    (a, b)
}

/// Vector separating the efficient sets of [`hard_pair5`].
pub fn hard_pair_witness() -> PositiveVector {
    vector("5 5 3/10 1 1/100")
}
