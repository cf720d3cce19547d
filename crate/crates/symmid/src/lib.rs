//! Exact-arithmetic toolkit for symmetric ideals generated by general forms.
//!
//! Everything here runs over the rationals with no floating point anywhere.
//! The crate builds ideals of `k[x_1..x_n]` that are generated by the
//! symmetric-group orbits of an `r`-dimensional space of degree-`d` forms,
//! and verifies their invariants (Hilbert function, socle, graded Betti
//! numbers, Weak Lefschetz behavior, linear syzygies) against independent
//! linear-algebra oracles. The `chains` module packages the whole family of
//! rings over a growing number of variables into equivariant Hilbert and
//! Poincaré series and checks them coefficient by coefficient.
//!
//! Module map:
//! - [`partitions`]: integer partitions, subpartitions, box-adding
//!   coefficients, stabilizer counts.
//! - [`polyring`]: sparse rational polynomials, the symmetric-group action,
//!   Reynolds operator, contraction pairing, the `m`/`M` symmetric bases.
//! - [`exactla`]: exact rational matrices — rank, kernel, echelon forms,
//!   canonical subspaces.
//! - [`duality`]: annihilators and inverse-system graded pieces, orthogonal
//!   complements of invariant subspaces.
//! - [`construction`]: admissible binomials, the explicit generator
//!   polynomials `f_alpha`, orbit spans, genericity certification.
//! - [`invariants`]: Hilbert function, socle, syzygy spaces, WLP rank
//!   checks, Betti tables by closed formula and by Koszul homology.
//! - [`chains`]: equivariant Hilbert/Poincaré series as exact rational
//!   functions, multiplicity growth, chain stability across `n`.
//! - [`cli`]: batch driver behind the `symmid` binary.

pub mod chains;
pub mod cli;
pub mod construction;
pub mod duality;
pub mod exactla;
pub mod exec;
pub mod invariants;
pub mod partitions;
pub mod polyring;
pub mod ratio;

pub use exactla::{RatMatrix, Subspace};
pub use partitions::{Partition, PartitionTable};
pub use polyring::{Monomial, Polynomial};
pub use ratio::Rat;
