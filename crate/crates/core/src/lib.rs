//! Hypergraph Lagrangians and the extremal 3-graphs built from
//! `K_{3t+3}^{3-}` by mix-crossed blowups.
//!
//! - [`hypergraph`]: canonical r-graphs with links, codegrees, shadows.
//! - [`lagrangian`]: the Lagrangian polynomial, a multi-restart simplex
//!   optimizer, a lattice oracle and the closed forms for `K_{3t+3}^{3-}`.
//! - [`blowup`]: blowups, maximum blowups and `G_n^i`.
//! - [`hom`]: homomorphism search and the forbidden-family oracle.
//! - [`construct`]: mix-crossed blowups, `G_i`, symmetrization, edit distance.
//! - [`verify`]: the end-to-end numerical check suite.

pub mod blowup;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod hypergraph;
pub mod lagrangian;
pub mod verify;

pub use error::{Error, Result};
pub use hom::VertexMap;
pub use hypergraph::{Hypergraph, Pair, Vertex};
pub use lagrangian::{LagrangianOptions, LagrangianReport, VertexWeighting};
