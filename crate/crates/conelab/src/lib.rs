//! Polyhedral cones of spectra.
//!
//! This crate generates, minimizes and tests the inequality descriptions of
//! several cones that relate the eigenvalues or singular values of a matrix
//! to those of its blocks:
//!
//! * `Horn(n)` — eigenvalue triples `(e(X), e(Y), e(X+Y))` of Hermitian matrices,
//! * `LR(m,n)` — spectra of a Hermitian matrix and of its two diagonal blocks,
//! * `A(p,q)`, `S(p,q)`, `T(p,q)` — eigenvalues or singular values of a matrix
//!   against singular values of its off-diagonal (`A`, `S`) or diagonal (`T`)
//!   blocks.
//!
//! The inequality lists are parameterized by non-vanishing Littlewood-Richardson
//! coefficients; [`lr`] implements the tableau rule together with an independent
//! symmetric-polynomial oracle. [`lp`] performs exact rational redundancy
//! elimination on the generated descriptions, and [`verify`] stress-tests the
//! membership predicates against random matrix ensembles from [`matrix`].

pub mod combinat;
pub mod doc;
pub mod exec;
pub mod horn;
pub mod ineq;
pub mod lp;
pub mod lr;
pub mod lrmn;
pub mod matrix;
pub mod offdiag;
pub mod point;
pub mod verify;

mod error;

pub use error::{Error, Result};
