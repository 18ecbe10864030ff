//! Link descriptors with uniform access to `(σ*, n*, c)`.

mod checks;
mod descriptor;
mod puiseux;
mod verdict;

pub use checks::{nemethi_check, sigmult_check, stupid_check};
pub use descriptor::{descriptor_invariants, LinkDescriptor, LinkInvariants};
pub use puiseux::{cable_chain_from_puiseux, PuiseuxData, SingularityData};
pub use verdict::{Relation, Verdict};

use sigmorse_spectra::SpectraError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("puiseux data: {0}")]
    BadPuiseux(String),
    #[error("given link {name:?} has no data at x = {x}")]
    NoDataAt { name: String, x: String },
    #[error("singularity data: {0}")]
    BadSingularity(String),
    #[error("empty sum")]
    EmptySum,
}
