use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("polynomial syntax error at byte {pos}: {msg}")]
    Polynomial { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid document: {0}")]
    Document(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("form {0} is identically zero")]
    ZeroForm(usize),
    #[error("forms {0} and {1} define the same hyperplane")]
    DuplicateHyperplane(usize, usize),
    #[error("form {index} has {got} coefficients, expected {expected}")]
    WrongLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("operation requires a central arrangement")]
    NotCentral,
    #[error("operation requires an affine (non-central) arrangement")]
    NotAffine,
    #[error("operation requires an essential arrangement")]
    NotEssential,
    #[error("index set is not a flat (not closed)")]
    NotAFlat,
    #[error("weight vector has length {got}, arrangement has {expected} hyperplanes")]
    WeightLength { got: usize, expected: usize },
    #[error("point lies on hyperplane {0}")]
    PointOnHyperplane(usize),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("computation budget of {0} reduction steps exceeded")]
    BudgetExceeded(u64),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogModuleError {
    #[error("candidate {0} is not a logarithmic derivation")]
    NotLogarithmic(usize),
    #[error("expected {expected} candidate derivations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("Saito determinant vanishes")]
    ZeroDeterminant,
    #[error("Saito determinant is not a nonzero multiple of the defining polynomial")]
    NotMultipleOfQ,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("pairing is not polynomial: derivation {0} is not logarithmic")]
    NotDivisible(usize),
    #[error("check not applicable: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}
