//! Lower algebraic K-theory of integral group rings of amalgamated products
//! of finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite groups as Cayley tables, conjugacy, quotients,
//!   homomorphisms and isomorphism testing.
//! * [`presentation`]: words, presentations, coset enumeration and the
//!   braid groups of the projective plane.
//! * [`amalgam`]: amalgamated products of finite groups with unique normal
//!   forms, and graphs of groups read off a finite group action.
//! * [`repcount`]: counting irreducible representations over Q, Q_p and F_p
//!   by fusing conjugacy classes.
//! * [`abelian`]: integer Smith normal form (generic over the integer type),
//!   finitely generated abelian groups, and the K-theory bookkeeping.
//! * [`casebook`]: end-to-end reproductions of the three worked examples.

pub mod abelian;
pub mod amalgam;
pub mod casebook;
pub mod group;
pub mod presentation;
pub mod repcount;

pub use num_bigint::BigInt;

/// Integer matrices with arbitrary-precision entries; the default for all
/// K-group computations.
pub type BigMatrix = abelian::IntMatrix<BigInt>;
/// Machine-integer matrices, for callers that know their entries stay small.
pub type SmallMatrix = abelian::IntMatrix<i64>;
/// Smith normal form over arbitrary-precision integers.
pub type BigSnf = abelian::Snf<BigInt>;

pub use abelian::{AbelianMap, FgAbelianGroup, KSheet, NilTag, NilValue};
pub use amalgam::{Amalgam, AmalgamElement, ElementOrder};
pub use group::{build_group, FiniteGroup, GroupHom, Subgroup};
pub use presentation::{Presentation, Word, WordGroup};
pub use casebook::{run_case, CaseReport, CASES};
