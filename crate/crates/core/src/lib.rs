//! Finite-dimensional quantum groups: Hopf *-algebras with Haar integrals,
//! their modular data, Pontryagin duals, multiplicative unitaries, the GNS
//! realization and closed quantum subgroups, with checks for the identities
//! relating them.

pub mod error;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub mod hopf;
pub mod analytic;
pub mod duality;
pub mod integrals;
pub mod io;
pub mod models;
pub mod report;
pub mod subgroups;
pub mod suite;
