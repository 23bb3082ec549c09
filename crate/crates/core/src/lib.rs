//! Exact-arithmetic workbench for graded unipotent groups over polynomial
//! rings, their staircase subgroups and coset complexes, machine-checked
//! derivation certificates for word problems over those subgroups, and the
//! testable expansion properties of the resulting complexes (spectra,
//! diameter, coboundary expansion, covers, agreement testing) at desk scale.
//!
//! Everything upstream of the final spectral step is exact: prime-field
//! coefficients, rational weights, and byte-stable canonical encodings.

pub mod algebra;
pub mod error;
pub mod unipotent;

pub mod rewrite;

pub mod blocks;

pub mod complex;

pub mod cohomology;

pub mod tester;

pub mod report;

pub use error::{AlgebraError, BlockError, CohomologyError, ComplexError, GroupError, RewriteError, TesterError};
