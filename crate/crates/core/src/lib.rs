//! Exact computations with rational Cherednik algebras.
//!
//! The crate is organised bottom up: [`scalars`] provides exact coefficients,
//! [`groups`] enumerates finite matrix groups and their reflections,
//! [`cherednik`] multiplies in PBW normal form and [`dunkl`] realises the
//! algebra by Dunkl operators. [`hc`], [`jets`], [`gluing`] and [`induction`]
//! build the Harish-Chandra, jet and induction checks on top.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod scalars;

pub use error::{ForgeError, Result};
pub use scalars::{CycNum, MPoly, Monomial, Ring, Scalar, Q};
pub mod cherednik;
pub mod groups;
pub mod sampling;
pub mod dunkl;
pub mod jets;
pub mod hc;
pub mod gluing;
pub mod induction;
pub mod parse;
pub mod suite;
