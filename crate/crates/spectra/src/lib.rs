//! Exact signature counting for torus links and their iterated cables.

mod cable;
mod profile;
mod rational;
mod torus;

pub use cable::{cable_breakpoints, cable_signature_tl, signature_profile_cable, CableChain};
pub use profile::{ProfileRow, SignatureProfile};
pub use rational::Rational;
pub use torus::{
    closed_form_small, signature_profile_torus, torus_signature, torus_signature_tl,
    torus_spectrum, SpectrumMultiset, TorusLinkParams,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("torus parameters must be positive, got ({0}, {1})")]
    BadTorus(i64, i64),
    #[error("closed form only covers p in {{2,3,4}} with a knot, got ({0}, {1})")]
    NoClosedForm(i64, i64),
    #[error("x = {0} is outside (0, 1)")]
    OutOfRange(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("cable stage ({0}, {1}) is not a coprime pair of positive integers")]
    BadStage(i64, i64),
    #[error("empty cable chain")]
    EmptyChain,
    #[error("profile: {0}")]
    BadProfile(String),
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}
