//! Error types shared across the workbench.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {degree} exceeds bound {bound}")]
    BoundViolation { degree: isize, bound: usize },
    #[error("interval mismatch between operands")]
    IntervalMismatch,
    #[error("[{lo}, {hi}] is not an interval")]
    NotAnInterval { lo: usize, hi: usize },
    #[error("modulus must have positive degree")]
    DegenerateModulus,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator degree too high: deg {degree} with cap {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },
    #[error("bad generator indices ({i}, {j}) for n = {n}")]
    BadIndices { i: usize, j: usize, n: usize },
    #[error("group context mismatch")]
    CtxMismatch,
    #[error("element support not inside the interval")]
    SupportOutsideInterval,
    #[error("interval [{lo}, {hi}] not inside [0, {n}]")]
    NotAnInterval { lo: usize, hi: usize, n: usize },
    #[error("moat index {moat} outside [1, {n}]")]
    BadMoat { moat: usize, n: usize },
    #[error("bad product decomposition: {0}")]
    BadDecomposition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("letter element is not in the claimed subgroup (tag {tag})")]
    NotInSubgroup { tag: usize },
    #[error("unknown subgroup tag {tag} (family has {count})")]
    UnknownTag { tag: usize, count: usize },
    #[error("group context mismatch")]
    CtxMismatch,
    #[error("oracle failure: {0}")]
    OracleFailure(String),
    #[error("homomorphism violation detected on a product spot-check")]
    HomomorphismViolation,
    #[error("rewrite does not apply at position {pos}: {reason}")]
    BadRewrite { pos: usize, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("invalid moat configuration: {0}")]
    CfgViolation(String),
    #[error("pack argument out of range: z = {z}, x = {x}, y = {y}")]
    OutOfRange { z: u64, x: u64, y: u64 },
    #[error("matrix violates the grading required for its block type")]
    GradingViolation,
    #[error("no room: band constraint violated ({0})")]
    NoRoom(String),
    #[error("input word is not a relator")]
    NotARelator,
    #[error("bad arguments for lemma {0}")]
    BadArgs(String),
    #[error("construction hit an unhandled degenerate case: {0}")]
    ConstructionGap(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("enumeration cap of {cap} elements exceeded")]
    EnumerationCapExceeded { cap: usize },
    #[error("pinned word is not supported by the complex")]
    UnsupportedPin,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("power iteration failed to converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error("part {0} unknown")]
    UnknownPart(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("computation cap exceeded: {0}")]
    CapExceeded(String),
    #[error("rank too small: need 3r <= |I|, got r = {r}, |I| = {parts}")]
    RankTooSmall { r: usize, parts: usize },
    #[error("labeling violates antisymmetry")]
    NotAntisymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TesterError {
    #[error("cannot sample part sets with |A| = |A'| = {k}, |A ∩ A'| = {t} from {parts} parts")]
    InfeasibleIntersection { k: usize, t: usize, parts: usize },
    #[error("prover table is missing an assignment for a sampled face")]
    MissingAssignment,
}
