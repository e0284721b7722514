//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by all operator families.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Gamma evaluated at a nonpositive integer.
    #[error("gamma pole at x = {x}")]
    GammaPole { x: f64 },

    /// An argument left the domain an operator is defined on.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// An argument exceeded the range a method is trusted on.
    #[error("range error in {what}: {detail}")]
    Range { what: &'static str, detail: String },

    /// A series failed to reach the requested tolerance.
    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    /// Iterated-integral terms stopped decreasing.
    #[error("{what}: term magnitudes failed to decay over {span} consecutive terms")]
    NonDecay { what: &'static str, span: usize },

    /// Malformed expression text.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    /// Expression used a name outside the supported function set.
    #[error("unknown identifier `{name}` at byte {position}")]
    UnknownIdentifier { position: usize, name: String },

    /// A sampling grid cannot resolve the feature it is asked for.
    #[error("grid too coarse: {detail}")]
    GridTooCoarse { detail: String },

    /// A truncated basis or matrix is too small for the request.
    #[error("truncation error in {what}: {detail}")]
    Truncation { what: &'static str, detail: String },

    /// An amplitude vanished where a quantum potential divides by it.
    #[error("amplitude magnitude {magnitude:e} below safe division threshold at xi = {at}")]
    AmplitudeZero { at: f64, magnitude: f64 },

    /// Profile amplitude disagrees with the declared parity.
    #[error("parity mismatch at xi = {at}: |r(xi) - parity*r(-xi)| = {deviation:e}")]
    ParityMismatch { at: f64, deviation: f64 },

    /// Input was not supplied in the representation an operator needs.
    #[error("basis expansion error in {what}: {detail}")]
    BasisExpansion { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }
}
