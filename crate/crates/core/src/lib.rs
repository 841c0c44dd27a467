//! Exact integer chain calculus on cubical and simplicial complexes.
//!
//! Chains are finite integer-weighted sums of oriented cells. On top of the
//! chain layer the crate provides Smith-normal-form homology (absolute and
//! relative), semi-algebraic rasterization, a cubical deformation
//! `T = P + Q + ∂L`, simplicial retractions, and mass-minimizing
//! homologous-cycle search. All arithmetic is exact.
//!
//! Batch-style entry points take an [`Exec`] policy. With the `parallel`
//! feature (on by default) [`Exec::Parallel`] fans work out with rayon;
//! without it both policies run sequentially.

pub mod axioms;
pub mod cell;
pub mod chain;
pub mod complex;
pub mod corpus;
pub mod deformation;
mod error;
pub mod exec;
pub mod grid;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod minimize;
pub mod ops;
pub mod rational;
pub mod retract;
pub mod selftest;
pub mod semialg;
pub mod snf;

pub use cell::{Cell, Cube, Simplex};
pub use chain::Chain;
pub use complex::CellComplex;
pub use error::{Error, Result};
pub use exec::Exec;
pub use grid::CubicalGrid;
pub use rational::Q;
