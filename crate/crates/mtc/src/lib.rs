//! Exact data for fermionic modular tensor categories.
//!
//! The crate represents a modular tensor category by its `(S, T)` matrices
//! over cyclotomic fields, validates the structural axioms with exact
//! equality, computes Verlinde fusion, quantum/global dimensions and Gauss
//! sums, and builds the sixteen free-fermion categories `F_l` together with
//! their sector gradings, super S-matrix blocks, and the ladder of minimal
//! modular extensions distinguished by Gauss sums.
//!
//! A numeric q-series engine cross-checks the exact `F_l` S-matrices against
//! the modular transformations of free-fermion characters.
//!
//! The `mtc` binary exposes all of it on the command line over a JSON file
//! format (`mtc-data/1`).

pub mod catalog;
pub mod characters;
pub mod cli;
pub mod extension;
pub mod family;
pub mod fermionic;
pub mod format;
pub mod modular;
pub mod scalar;
pub mod superalg;

pub use extension::{extend, extend_data, sixteen_table, ExtensionData};
pub use family::{ising_like, s_from_twists, FamilyParams};
pub use fermionic::{
    assemble_super_s, centralizer, check_minimal_extension, check_supermodular, find_fermions,
    sector_grading, GradedData,
};
pub use modular::{FusionTensor, ModularData, ValidationReport};
pub use scalar::{Cyclotomic, Scalar, ScalarError};

use thiserror::Error;

/// Crate-level error: input/shape problems, exact-arithmetic failures,
/// data that fails to be modular, and structural violations (input not of
/// the graded form the operations require).
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(#[from] ScalarError),
    #[error("not modular data: {0}")]
    NotModular(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
