//! Exact rational analysis of efficient priority vectors for positive
//! reciprocal pairwise comparison matrices.
//!
//! A priority vector is efficient for a matrix when no other vector
//! approximates the matrix at least as well in every entry and strictly
//! better somewhere. This crate characterizes the efficient set through the
//! below-one Hamiltonian cycles of the matrix: each such cycle contributes a
//! cone of efficient vectors described by an exact entrywise interval, and
//! the efficient set is the union of these cones.
//!
//! Everything is computed in arbitrary-precision rational arithmetic, so
//! membership tests, bounds, orders, and counterexample certificates are
//! exact rather than floating-point approximations.
//!
//! Indices are zero-based throughout the API; rendered output (cycle
//! notation, error messages) is one-based.

pub mod cycles;
pub mod efficiency;
pub mod equality;
mod error;
#[doc(hidden)]
pub mod fixtures;
pub mod matrix;
pub mod monomial;
pub mod orders;
pub mod paths;
pub mod random;
pub mod rational;

pub use cycles::{
    cycle_product, enumerate_hcycles, gamma_set, min_cycles, GammaSet, HCycle, DEFAULT_MAX_N,
};
pub use efficiency::{
    digraph_oracle, efficiency_report, improves_approximation, is_efficient,
    refute_by_perturbation, sample_cone, EfficiencyReport,
};
pub use equality::{
    decide_equal_efficient_sets, dominates, extreme_transfer_check, l_equal,
    search_counterexamples, spc_canonical, spc_efficiency, spc_form, DecideOptions, Dominance,
    EqualStatus, EqualityVerdict, EvidenceEntry, MatrixSide, SearchRecord, SearchReport,
    SearchStrategy, SpcForm,
};
pub use error::Error;
pub use matrix::{
    ratio_matrix, PositiveVector, RatioMatrix, ReciprocalMatrix, SquareMatrix,
};
pub use monomial::{apply_monomial, monomial_conjugate, MonomialMap};
pub use orders::{
    cone_unique_order, global_pairwise_above, global_unique_order, partial_order_partition,
    pairwise_above, OrderPartition,
};
pub use paths::{
    attain_set, cone_interval, extreme_vector, extreme_vectors, global_bounds, path_matrix,
    AttainSet, ConeInterval, GlobalBounds, PathMatrix,
};
pub use rational::{format_rational, parse_rational, Rat};
