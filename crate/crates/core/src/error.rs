use thiserror::Error;

/// Errors shared by the whole workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("scalar backend mismatch")]
    BackendMismatch,
    #[error("incompatible modulus: {0}")]
    IncompatibleModulus(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value {0} is not invertible")]
    NotInvertible(u64),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("inadmissible polyad length {len} for arity {arity}")]
    InadmissibleLength { len: usize, arity: usize },
    #[error("budget exceeded: domain of size {domain} over budget {budget}")]
    BudgetExceeded { domain: u128, budget: u64 },
    #[error("no querelement solution for {0}")]
    NoQuerelement(usize),
    #[error("querelement for {0} is not unique")]
    AmbiguousQuerelement(usize),
    #[error("querelement of {element} fails at position {position}")]
    QuerelementPosition { element: usize, position: usize },
    #[error("structure is not a {0}")]
    StructureViolation(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("maps do not commute")]
    NonCommutingMaps,
    #[error("map does not preserve grades at basis {0}")]
    NotGradePreserving(usize),
    #[error("element is not homogeneous")]
    NonHomogeneous,
    #[error("factor depends on cancelled arguments: {0}")]
    FactorDependence(String),
    #[error("bracket pattern mismatch at node: {0}")]
    PatternMismatch(String),
    #[error("position maps are not composable: {0} -> {1}")]
    NotComposable(usize, usize),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
