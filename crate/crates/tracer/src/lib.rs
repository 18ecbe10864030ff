//! Slices a plane algebraic curve by spheres about a centre: critical radii,
//! traced links, linking numbers and handle classification.

mod critical;
mod curve;
mod implicit;
mod link;
mod local;
mod poly;
mod sweep;
pub mod svg;
mod trace;

use serde::{Deserialize, Serialize};
use sigmorse_morse::MorseError;

pub use critical::{critical_points, CriticalKind, CriticalPoint};
pub use curve::{CurveKind, CurveSpec, Jet, ParamCurve, Poly2};
pub use implicit::transversality_det;
pub use link::{choose_pole, gauss_linking, linking_matrix, Projection};
pub use poly::{Coeff, Poly};
pub use sweep::{
    genericity_check, group_criticals, sweep, CriticalGroup, GenericityReport, SweepResult, Tolerances, TracedEvent,
    G1_TOL, G2_TOL, G3_TOL,
};
pub use trace::{trace_link, trace_link_with, LinkSnapshot, SnapshotDiagnostics, RESAMPLE};

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("bad curve: {0}")]
    BadSpec(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("critical points are not isolated: {0}")]
    NonIsolated(String),
    #[error("step size underflow while tracing at r = {r}")]
    StepUnderflow { r: f64 },
    #[error("component at r = {r} does not close (gap {gap:.3e})")]
    OpenComponent { r: f64, gap: f64 },
    #[error("radius {r} is too close to the critical radius {rho}")]
    NearCritical { r: f64, rho: f64 },
    #[error("unresolved classification: {0}")]
    Unresolved(String),
    #[error(transparent)]
    Morse(#[from] MorseError),
}

/// `d(d − 2)`: transversality points of a generic degree-`d` curve, counted
/// with multiplicity.
pub fn bezout_budget(d: usize) -> i64 {
    let d = d as i64;
    d * (d - 2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetEntry {
    pub rho: f64,
    pub kind: CriticalKind,
    /// 1 for a smooth point, `μ − 1` at a singular point (None if μ is unknown).
    pub contribution: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub degree: usize,
    pub budget: i64,
    pub entries: Vec<BudgetEntry>,
    pub detected: i64,
    pub note: String,
}

/// Detected critical points against the Bézout budget. Informational:
/// local multiplicities may be negative, so the sums need not agree.
pub fn budget_report(spec: &CurveSpec) -> Result<BudgetReport, TraceError> {
    let crit = critical_points(spec)?;
    let param = spec.as_parametric().ok();
    let entries: Vec<BudgetEntry> = crit
        .iter()
        .map(|p| {
            let contribution = match &p.kind {
                CriticalKind::Smooth { .. } => Some(1),
                CriticalKind::Singular { .. } => {
                    param.as_ref().and_then(|c| local::singularity_data(c, p).mu).map(|mu| mu - 1)
                }
            };
            BudgetEntry { rho: p.rho, kind: p.kind.clone(), contribution }
        })
        .collect();
    let detected = entries.iter().filter_map(|e| e.contribution).sum();
    let budget = bezout_budget(spec.degree());
    Ok(BudgetReport {
        degree: spec.degree(),
        budget,
        entries,
        detected,
        note: "counts are signed; a mismatch with the budget is not an error".into(),
    })
}
