//! Finite classical geometries and the orbit computations that certify them.
//!
//! The crate is organized in layers:
//!
//! - [`field`]: exact arithmetic in GF(p^e), Frobenius maps, conjugation.
//! - [`linear`]: vectors, canonical subspaces, projective points over GF(q).
//! - [`polar`]: symplectic/orthogonal/hermitian forms, perps, totally
//!   singular subspaces, and the counting identities they satisfy.
//! - [`incidence`]: point-line geometries, metric regularity, generalized
//!   polygon checks, projective embedding axioms.
//! - [`hexagon`]: construction of the split Cayley generalized hexagon
//!   inside a 7-dimensional orthogonal space, with its verification steps.
//! - [`groups`]: semilinear maps, orbits, Schreier stabilizers, permutation
//!   rank, antiflag transitivity, imprimitivity blocks.
//! - [`constraints`]: feasibility arithmetic for rank-3/rank-4 parameter
//!   sets, primitive divisors, and the symplectic elimination table.
//! - [`showcase`]: worked end-to-end verifications (an alternating group
//!   inside O+(8,2), the O+(8,2) point stabilizer, a semilinear example).
//! - [`report`] and [`cli`]: deterministic JSON/table reporting and the
//!   `geomforge` command-line surface.

pub mod acceptance;
pub mod cli;
pub mod constraints;
pub mod field;
pub mod groups;
pub mod hexagon;
pub mod incidence;
pub mod linear;
pub mod polar;
pub mod report;
pub mod showcase;

mod error;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
