use thiserror::Error;

use crate::lattice::LatticeError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("missing operation `{0}`")]
    MissingOperation(String),
    #[error("operation `{symbol}`: {reason}")]
    InvalidTable { symbol: String, reason: String },
    #[error("profile `{profile}` does not accept operation `{symbol}`")]
    RejectedOperation { profile: String, symbol: String },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("precondition not verified: {0}")]
    PreconditionUnverified(String),
    #[error("operation `{symbol}` leaves the center at arguments {args:?}")]
    CenterNotClosed { symbol: String, args: Vec<usize> },
    #[error("the lattice has no relative pseudocomplement")]
    NoResidual,
    /// A result that a proven property guarantees failed to materialise.
    #[error("counterexample: {0}")]
    Counterexample(String),
}
