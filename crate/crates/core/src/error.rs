use thiserror::Error;

use crate::arith::FieldTag;

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wraps the error with the place in a document where it happened.
    pub fn at(self, locus: impl Into<String>) -> Error {
        Error::Located {
            locus: locus.into(),
            inner: Box::new(self),
        }
    }

    /// The innermost error, without location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { inner, .. } => inner.root(),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // scalars
    #[error("malformed number {0:?}")]
    MalformedNumber(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("malformed expression at byte {position}: {message}")]
    MalformedExpression { position: usize, message: String },

    // linear algebra
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bases do not span the same subspace")]
    NotSameSpan,
    #[error("target row is not in the row space")]
    NoSolution,
    #[error("rows are linearly dependent")]
    LinearlyDependent,
    #[error("matrix is singular")]
    Singular,

    // complexes and maps
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("NotAComplex at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("degree {degree} out of range for a complex of length {length}")]
    DegreeOutOfRange { degree: usize, length: usize },
    #[error("NotChainMap at degree {degree}")]
    NotChainMap { degree: usize },
    #[error("complexes do not match for composition")]
    ComplexMismatch,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("chain map is not a quasi-isomorphism")]
    NotQuasiIsomorphism,
    #[error("complex is not acyclic")]
    NotAcyclic,
    #[error("chain map is not a self-map")]
    NotSelfMap,
    #[error("invalid basis choice at degree {degree}: {reason}")]
    InvalidBasisChoice { degree: usize, reason: String },

    // polynomial complexes
    #[error("homology in degree {degree} has positive rank")]
    PositiveRankHomology { degree: usize },
    #[error("chain map is not a quasi-isomorphism after tensoring with Q(t)")]
    NotQuasiIsomorphismAfterTensor,
    #[error("entry {0:?} is not a polynomial")]
    NotPolynomial(String),

    // documents
    #[error("{locus}: {inner}")]
    Located { locus: String, inner: Box<Error> },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    // generator
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}
