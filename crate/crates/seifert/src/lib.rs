//! Seifert matrices of positive braid closures and their Tristram-Levine forms.

mod braid;
mod form;
mod matrix;
mod rank;

pub use braid::{torus_braid, BraidWord};
pub use form::{
    classical_signature, inertia, signature_nullity, signature_nullity_star, tl_form,
    InertiaResult, DEFAULT_TOL,
};
pub use matrix::{connected_sum, disconnected_sum, seifert_from_positive_braid, SeifertMatrix};
pub use rank::{generic_corank, positive_braid_generic_corank};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SeifertError {
    #[error("braid needs at least one strand")]
    NoStrands,
    #[error("letter {0} out of range for {1} strands")]
    LetterOutOfRange(i64, usize),
    #[error("negative letter {0}: only positive braids are supported")]
    NegativeLetter(i64),
    #[error("torus braid needs p >= 2 and q >= 1, got ({0}, {1})")]
    BadTorus(i64, i64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("x = {0} is outside (0, 1)")]
    OutOfRange(f64),
    #[error("ill-conditioned form: eigenvalue {value:e} within the band around threshold {threshold:e}")]
    IllConditioned { value: f64, threshold: f64 },
    #[error("right limit at x = {0} did not stabilise after refinement")]
    NoRightLimit(f64),
}
