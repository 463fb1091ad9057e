use thiserror::Error;

/// Every failure the engine can report. Variant names double as the
/// machine-readable error names surfaced by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("comonoid mismatch: {0}")]
    ComonoidMismatch(String),
    #[error("not a comonoid map: {0}")]
    NotComonoidMap(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("the two Godement composites differ")]
    GodementMismatch,
    #[error("f1 . u_A differs from u_B . f0")]
    IdentityMismatch,
    #[error("2-cell is not between images of internal functors")]
    NotPhiImage,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("map is not bi-natural: {0}")]
    NotBiNatural(String),
    #[error("not a t-algebra: {0}")]
    NotTAlgebra(String),
    #[error("not an isomorphism of internal categories: {0}")]
    NotIsomorphism(String),
    #[error("element is not B-central: {0}")]
    NotCentral(String),
    #[error("not convolution invertible: {0}")]
    NotConvolutionInvertible(String),
    #[error("canonical map is not bijective")]
    NotGalois,
    #[error("element is not group-like")]
    NotGrouplike,
    #[error("law violation: {0}")]
    LawViolation(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),
    #[error("bad scalar `{0}`")]
    BadScalar(String),
}

impl Error {
    /// Stable identifier used in reports and by the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NoFactorization(_) => "NoFactorization",
            Error::ComonoidMismatch(_) => "ComonoidMismatch",
            Error::NotComonoidMap(_) => "NotComonoidMap",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::GodementMismatch => "GodementMismatch",
            Error::IdentityMismatch => "IdentityMismatch",
            Error::NotPhiImage => "NotPhiImage",
            Error::NotInvertible(_) => "NotInvertible",
            Error::NotBiNatural(_) => "NotBiNatural",
            Error::NotTAlgebra(_) => "NotTAlgebra",
            Error::NotIsomorphism(_) => "NotIsomorphism",
            Error::NotCentral(_) => "NotCentral",
            Error::NotConvolutionInvertible(_) => "NotConvolutionInvertible",
            Error::NotGalois => "NotGalois",
            Error::NotGrouplike => "NotGrouplike",
            Error::LawViolation(_) => "LawViolation",
            Error::Mismatch(_) => "Mismatch",
            Error::Parse { .. } => "ParseError",
            Error::UnresolvedReference(_) => "UnresolvedReference",
            Error::BadScalar(_) => "BadScalar",
        }
    }

    /// True for errors caused by malformed input documents.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnresolvedReference(_) | Error::BadScalar(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
