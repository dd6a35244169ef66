//! Error type shared across the crate.

use crate::moebius::ClassTag;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lay outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation hit the pole of a Moebius transformation.
    #[error("evaluation at a pole of the transformation")]
    Pole,

    /// The operation is not defined for maps of this class.
    #[error("operation undefined for {0:?} maps")]
    Class(ClassTag),

    /// A computed quantity failed its internal consistency check.
    #[error("numerical validation failed: {0}")]
    Numerical(String),

    /// A representation was paired with a map of the wrong class.
    #[error("representation kind does not match the map: {0}")]
    KindMismatch(String),

    /// The operation needs an exact rational rotation parameter.
    #[error("exact rational rotation parameter required: {0}")]
    RationalityRequired(String),
}

pub type Result<T> = std::result::Result<T, Error>;
