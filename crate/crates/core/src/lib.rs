//! Exact and p-adic verification of Eulerian-polynomial identities twisted by
//! Dirichlet characters, with the associated L-function.

pub mod chi_eulerian;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod eulerian;
pub mod exact;
pub mod lfunction;
pub mod numeric;
pub mod padic_verify;
pub mod report;
pub mod suite;
pub mod table;

pub use error::{Error, Result};
