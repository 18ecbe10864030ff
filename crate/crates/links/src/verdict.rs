use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// Outcome of one inequality `lhs ≤ rhs` or `lhs ≥ rhs`; slack is the
/// non-negative margin when it holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
    pub holds: bool,
    pub slack: i64,
}

impl Verdict {
    pub fn at_most(lhs: i64, rhs: i64) -> Self {
        Verdict { lhs, rhs, relation: Relation::AtMost, holds: lhs <= rhs, slack: rhs - lhs }
    }

    pub fn at_least(lhs: i64, rhs: i64) -> Self {
        Verdict { lhs, rhs, relation: Relation::AtLeast, holds: lhs >= rhs, slack: lhs - rhs }
    }

    /// Same numbers, different truth value (for extra side conditions).
    pub fn with_holds(mut self, holds: bool) -> Self {
        self.holds = holds;
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::AtMost => "≤",
            Relation::AtLeast => "≥",
        };
        let word = if self.holds { "HOLDS" } else { "FAILS" };
        write!(f, "{} {} {} {} (slack {})", self.lhs, op, self.rhs, word, self.slack)
    }
}
