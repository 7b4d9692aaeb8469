use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Morse word at slice {index}: {reason}")]
    MalformedWord { index: usize, reason: String },
    #[error("invalid slice syntax {0:?}")]
    SliceSyntax(String),
    #[error("invalid PD code: {0}")]
    InvalidPd(String),
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("expected a knot (one component), found {0} components")]
    NotAKnot(usize),
    #[error("abelianization is not infinite cyclic: {0}")]
    AbelianizationNotZ(String),
    #[error("not a knot polynomial: {0}")]
    NotKnotPolynomial(String),
    #[error("ambient manifold is not an integral homology sphere (H1 = {0})")]
    NotHomologySphere(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("signature sample lies on a jump of the signature function")]
    OnJump,
    #[error("catalog file error: {0}")]
    Catalog(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
