//! Exact-arithmetic bounded double complexes.
//!
//! A double complex is a bigraded vector space with two anticommuting
//! square-zero differentials of bidegrees (1,0) and (0,1). Every bounded
//! double complex splits into irreducible pieces of exactly two kinds:
//! 4-dimensional squares and staircase-shaped zigzags. This crate
//! represents complexes with dense matrices over the Gaussian rationals,
//! computes their cohomological invariants exactly, and solves the inverse
//! problem of recovering the full multiset of squares and zigzags.
//!
//! The main entry points:
//!
//! - [`shape`]: symbolic zigzags/squares, multisets, and [`shape::synthesize`]
//!   building the canonical complex of a multiset.
//! - [`complex`]: the [`complex::DoubleComplex`] carrier with validation,
//!   direct sums, cuttings, and transposition.
//! - [`cohomology`]: total (de Rham), one-sided (Dolbeault-style),
//!   Bott-Chern, Aeppli, the six Varouchas groups, both spectral
//!   sequences, corner-truncated (Bigolin) numbers, and the aggregate
//!   [`cohomology::InvariantBundle`].
//! - [`mod@decompose`]: the inverse problem ([`decompose::decompose`]) and
//!   the matrix-free counting oracle [`decompose::predict_invariants`].
//! - [`formal`]: zigzag-class counting in symmetric grids, invisible
//!   formal differences, and the named fixture multisets.
//! - [`lie`]: Chevalley-Eilenberg complexes from structure equations, the
//!   six-dimensional nilpotent family, and the almost-abelian family with
//!   its weight-theoretic decomposition formulas.
//!
//! The `examples/` directory walks through each capability; the thin
//! `bicomplex` binary exposes the same operations on files.
//!
//! Everything is exact: ranks and dimensions are computed over Q(i) with
//! arbitrary-precision rationals, so every reported invariant is an
//! integer fact, not an approximation. All types are immutable after
//! construction and all operations are pure; bundle aggregation evaluates
//! independent bidegrees in parallel (cap the worker count with the
//! `BICOMPLEX_THREADS` environment variable).

pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod formal;
pub mod io;
pub mod lie;
pub mod matrix;
pub mod pieces;
pub mod report;
pub mod scalar;
pub mod shape;
pub mod spectral;

pub use crate::cohomology::{invariant_bundle, InvariantBundle};
pub use crate::complex::{Bidegree, DoubleComplex};
pub use crate::decompose::{decompose, predict_invariants};
pub use crate::error::{Error, Result};
pub use crate::matrix::ExactMatrix;
pub use crate::scalar::Scalar;
pub use crate::shape::{synthesize, IrreducibleShape, Multiset};
