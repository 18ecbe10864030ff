//! Handle calculus for the distance function on a plane curve, and checkers
//! for the signature inequalities it yields.

mod bounds;
mod handles;
mod scenario;

pub use bounds::{
    check_intermediate, cormain_bound, cusp_bound_check, cusp_max, handle_counts_smooth,
    ratknot2_check, ratknot_check,
};
pub use handles::{apply_handle, fake_counts, replay, replay_from, FakeCounts, HandleEvent, Ledger, SurfaceState};
pub use scenario::{
    bundled_scenarios, check_betti, check_mthm2, check_tlbetti, w_u, MorseScenario, ScenarioFile, ScenarioSingularity, SCHEMA,
};
pub use sigmorse_links::{Relation, Verdict};

use sigmorse_links::LinkError;
use sigmorse_spectra::SpectraError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("negative count after {event}: {state}")]
    Negative { event: String, state: String },
    #[error("inconsistent crossing data: {0}")]
    Inconsistent(String),
    #[error("scenario: {0}")]
    BadScenario(String),
    #[error("first Betti number {given} disagrees with 2pg + R + d - 1 = {derived}")]
    BettiMismatch { given: i64, derived: i64 },
}
