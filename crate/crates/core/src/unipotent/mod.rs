//! The graded unipotent group as a concrete matrix group: elements,
//! staircase subgroups, canonical factorizations, retractions and shifts.

pub mod element;
pub mod factor;
pub mod maps;
pub mod staircase;

pub use element::{GroupCtx, UnipotentElement};
pub use factor::{canonical_factorization, default_ordering, GeneratorTerm};
pub use maps::{isom_shift, padding_homomorphism, retract, unshift, PaddingHom};
pub use staircase::{
    admissible_pairs, enumerate_staircase, group_order, staircase_member, subgroup_product_check,
    MoatSet,
};
