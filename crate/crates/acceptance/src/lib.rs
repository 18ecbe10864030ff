//! Acceptance criteria, shared by the `acceptance` test target and the
//! `selftest` subcommand.

use std::fmt;
use std::time::{Duration, Instant};

mod criteria;
mod suites;

pub use criteria::*;

/// One sub-check of a criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    /// Informational criteria never fail the suite.
    pub blocking: bool,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    /// Runtime budget, when the criterion has one.
    pub budget: Option<Duration>,
    /// Extra report lines (tables).
    pub report: Vec<String>,
}

impl CriterionResult {
    fn run(
        id: u8,
        title: &'static str,
        budget: Option<Duration>,
        f: impl FnOnce(&mut Vec<Check>, &mut Vec<String>),
    ) -> Self {
        let start = Instant::now();
        let mut checks = Vec::new();
        let mut report = Vec::new();
        f(&mut checks, &mut report);
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            checks.push(Check::new(
                "runtime",
                elapsed <= b,
                format!("{:.2} s (budget {} s)", elapsed.as_secs_f64(), b.as_secs()),
            ));
        }
        CriterionResult { id, title, blocking: true, checks, elapsed, budget, report }
    }

    fn informational(mut self) -> Self {
        self.blocking = false;
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `[PASS] C1 title (n/m checks, t s)`; failing checks follow on
    /// indented lines.
    pub fn lines(&self) -> Vec<String> {
        let tag = match (self.blocking, self.pass()) {
            (false, _) => "INFO",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        let ok = self.checks.iter().filter(|c| c.pass).count();
        let mut out = vec![format!(
            "[{tag}] C{} {} ({ok}/{} checks, {:.2} s)",
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed.as_secs_f64()
        )];
        for c in self.checks.iter().filter(|c| !c.pass) {
            out.push(format!("       failed: {}: {}", c.name, c.detail));
        }
        out.extend(self.report.iter().map(|l| format!("       {l}")));
        out
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lines().join("\n"))
    }
}

/// Every criterion, in order.
pub fn run_all() -> Vec<CriterionResult> {
    (1..=9).map(|i| run_one(i).expect("criterion id")).collect()
}

pub fn run_one(id: u8) -> Option<CriterionResult> {
    Some(match id {
        1 => c1_closed_forms(),
        2 => c2_oracle_equivalence(),
        3 => c3_scenarios(),
        4 => c4_a2k_bounds(),
        5 => c5_cusp_density(),
        6 => c6_cubic_trace(),
        7 => c7_swallowtail_trace(),
        8 => c8_property_suites(),
        9 => c9_nc_table(),
        _ => return None,
    })
}
