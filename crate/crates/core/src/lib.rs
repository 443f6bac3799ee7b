//! Minimal free resolutions of stable monomial ideals, built from the poset
//! of admissible symbols and checked against independent computations.
//!
//! The pipeline is
//! [`MonomialIdeal`] → [`PosetOfSymbols`] → [`FreeComplex`] / [`GradedCWComplex`],
//! with [`topology`] supplying the signed basic cycles behind the
//! differential and [`koszul`] providing Betti numbers computed without
//! reference to the poset.

pub mod corpus;
pub mod cw;
pub mod error;
pub mod field;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod poset;
pub mod report;
pub mod resolution;
pub mod topology;
pub mod verify;

pub use cw::GradedCWComplex;
pub use error::{Error, Result};
pub use field::{FieldScalar, PrimeField};
pub use ideal::{Decomposition, MonomialIdeal};
pub use monomial::{Monomial, Multidegree, Variables};
pub use poset::{AdmissibleSymbol, IndexSet, PosetOfSymbols};
pub use report::CheckReport;
pub use resolution::{BettiTable, FreeComplex};
