use thiserror::Error;

/// Errors raised by the exact linear algebra layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    /// The two boundary maps of a would-be chain complex do not compose to zero.
    #[error("boundary maps do not compose to zero at row {row}, col {col}")]
    CompositionNonzero { row: usize, col: usize },
    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    DimensionMismatch(usize, usize, usize, usize),
}

/// Errors raised by the symbolic algebra layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    /// A derivation was applied to a generator without an assigned image.
    #[error("no differential image assigned to generator `{0}`")]
    MissingImage(String),
    /// A cup-2 monomial differential was requested on a non-cocycle base.
    #[error("cup-2 base generator `{0}` is not a cocycle")]
    NonCocycleBase(String),
    /// The differential of the left operand does not have a supported shape.
    #[error("differential of `{0}` matches neither supported shape: {1}")]
    UnsupportedShape(String, String),
    /// A required E-operation symbol was not materialized in the fragment.
    #[error("required E-operation symbol `{0}` is not materialized")]
    MissingEOp(String),
    /// The augmented cup-1 product failed its defining closure property.
    #[error("augmented cup-1 product on `{0}` failed the closure check: {1}")]
    BoldCupUnverified(String, String),
}

/// Errors raised by the model catalog and fragment searches.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("supplied data contradicts the requested sequence case: {0}")]
    CaseMismatch(String),
    #[error("degree {degree} is outside the fragment truncation {truncation}")]
    DegreeOutOfRange { degree: i64, truncation: i64 },
    #[error("bar degree {requested} exceeds truncation bound {bound}")]
    TruncationExceeded { requested: i64, bound: i64 },
    /// The side condition of the sequence-extension step fails: the fragment
    /// contains a relation d(u) = mu*x modulo decomposables.
    #[error("extension obstructed: fragment relation d({witness}) = {mu}*{base} mod decomposables")]
    Obstructed {
        witness: String,
        mu: String,
        base: String,
    },
    #[error("named element `{0}` is not a cocycle of the small complex")]
    NotCocycle(String),
    #[error("truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Errors raised while reading a structured presentation file.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed input document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

impl InputError {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }
}
