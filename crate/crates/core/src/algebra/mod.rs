//! Exact arithmetic: prime fields, degree-capped polynomials, quotient
//! rings, and the graded matrix sets underlying the unipotent group.

pub mod fp;
pub mod matrix;
pub mod poly;
pub mod quotient;

pub use fp::PrimeField;
pub use matrix::{Interval, RectMatrix, TriMatrix};
pub use poly::GradedPoly;
pub use quotient::{Modulus, QuotientRing, RingElement};
