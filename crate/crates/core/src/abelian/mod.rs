//! Finitely generated abelian groups and the lower K-theory bookkeeping.
//!
//! Integer linear algebra is generic over the scalar type (any signed
//! `num_integer::Integer`); everything K-theoretic uses arbitrary-precision
//! integers.

mod assemble;
mod group;
mod ktheory;
mod matrix;
mod nil;

use thiserror::Error;

pub use assemble::{
    amalgam_k_assemble, bundled_spec, bundled_spec_names, Assembly, AssemblySpec, DegreeResult, MapSpec, NilEntry,
};
pub use group::{big_matrix, AbelianMap, AbelianPresentation, FgAbelianGroup};
pub use ktheory::{
    bundled_ksheet, bundled_ksheets, carter_rank, k_minus1, negk_consistency, schur_even_count, Degree, KSheet,
    NegKCheck,
};
pub use matrix::{column_basis, null_space, smith_normal_form, solve, IntMatrix, IntScalar, Snf};
pub use nil::{nil_classify, NilTag, NilValue, VcType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KError {
    #[error("no bundled Schur-index data for {0}")]
    UnknownSchurData(String),
    #[error("assembly spec has no map in degree {0}")]
    MissingDegree(Degree),
    #[error("ill-formed map: {0}")]
    IllFormedMap(String),
    #[error("no K-sheet for {0}")]
    MissingSheet(String),
    #[error("schema error: {0}")]
    Schema(String),
}
