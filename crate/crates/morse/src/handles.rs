use std::fmt;

use serde::{Deserialize, Serialize};
use sigmorse_links::SingularityData;

use crate::MorseError;

/// Topology of the part of the curve inside a ball.
///
/// `defect` is `R = Σ(r − 1)` over the singular points already crossed; the
/// smooth relation `2k − 2pg = χ + c` becomes `2k − 2pg = χ + R + c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceState {
    pub c: i64,
    pub k: i64,
    pub chi: i64,
    pub pg: i64,
    #[serde(default)]
    pub defect: i64,
}

impl SurfaceState {
    pub fn new(c: i64, k: i64, chi: i64, pg: i64) -> Self {
        SurfaceState { c, k, chi, pg, defect: 0 }
    }

    pub fn euler_relation_holds(&self) -> bool {
        2 * self.k - 2 * self.pg == self.chi + self.defect + self.c
    }

    /// First Betti number of the (singular) surface.
    pub fn betti(&self) -> i64 {
        self.k - self.chi
    }
}

impl fmt::Display for SurfaceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c={}, k={}, chi={}, pg={}, R={})", self.c, self.k, self.chi, self.pg, self.defect)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HandleEvent {
    Birth,
    Death,
    Join,
    Divorce,
    Marriage,
    #[serde(rename = "singular")]
    SingularCrossing {
        sing: SingularityData,
        #[serde(rename = "deltaC")]
        delta_c: i64,
        #[serde(rename = "deltaG")]
        delta_g: i64,
        #[serde(rename = "deltaK")]
        delta_k: i64,
    },
}

impl HandleEvent {
    pub fn name(&self) -> &'static str {
        match self {
            HandleEvent::Birth => "birth",
            HandleEvent::Death => "death",
            HandleEvent::Join => "join",
            HandleEvent::Divorce => "divorce",
            HandleEvent::Marriage => "marriage",
            HandleEvent::SingularCrossing { .. } => "singular",
        }
    }
}

/// Fake handles hidden in a singular crossing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FakeCounts {
    pub marriages: i64,
    pub divorces: i64,
    pub joins: i64,
}

impl FakeCounts {
    pub fn total(&self) -> i64 {
        self.marriages + self.divorces + self.joins
    }
}

/// Splits a crossing with changes `(ΔC, ΔG, ΔK)` through a point with `r`
/// branches into fake marriages, divorces and joins.
///
/// The `r` local disks are born first, then glued on by one-handles, so
/// `ΔK = r − f_j`, `ΔG = f_m`, `ΔC = r − f_j + f_d − f_m`.
pub fn fake_counts(delta_c: i64, delta_g: i64, delta_k: i64, r: i64) -> Result<FakeCounts, MorseError> {
    let f = FakeCounts {
        marriages: delta_g,
        divorces: delta_c + delta_g - delta_k,
        joins: r - delta_k,
    };
    if f.marriages < 0 || f.divorces < 0 || f.joins < 0 {
        return Err(MorseError::Inconsistent(format!(
            "(deltaC, deltaG, deltaK, r) = ({delta_c}, {delta_g}, {delta_k}, {r}) gives {f:?}"
        )));
    }
    Ok(f)
}

pub fn apply_handle(s: SurfaceState, e: &HandleEvent) -> Result<SurfaceState, MorseError> {
    let (dc, dk, dchi, dpg, dr) = match e {
        HandleEvent::Birth => (1, 1, 1, 0, 0),
        HandleEvent::Death => (-1, 0, 1, 0, 0),
        HandleEvent::Join => (-1, -1, -1, 0, 0),
        HandleEvent::Divorce => (1, 0, -1, 0, 0),
        HandleEvent::Marriage => (-1, 0, -1, 1, 0),
        HandleEvent::SingularCrossing { sing, delta_c, delta_g, delta_k } => {
            let f = fake_counts(*delta_c, *delta_g, *delta_k, sing.r)?;
            if f.total() != sing.p {
                return Err(MorseError::Inconsistent(format!(
                    "fake handles {f:?} do not add up to the multiplicity {}",
                    sing.p
                )));
            }
            // r disks, p one-handles, then the r centres collapse to one point
            (*delta_c, *delta_k, 1 - sing.p, *delta_g, sing.r - 1)
        }
    };
    let next = SurfaceState {
        c: s.c + dc,
        k: s.k + dk,
        chi: s.chi + dchi,
        pg: s.pg + dpg,
        defect: s.defect + dr,
    };
    if next.c < 0 || next.k < 0 || next.pg < 0 {
        return Err(MorseError::Negative { event: e.name().to_string(), state: next.to_string() });
    }
    Ok(next)
}

/// Handle counts accumulated during a replay; fake handles are kept apart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub births: i64,
    pub deaths: i64,
    pub joins: i64,
    pub divorces: i64,
    pub marriages: i64,
    pub fake: FakeCounts,
}

pub fn replay(events: &[HandleEvent]) -> Result<(SurfaceState, Ledger), MorseError> {
    replay_from(SurfaceState::default(), events)
}

/// Like [`replay`], starting from `start` instead of the empty surface.
pub fn replay_from(start: SurfaceState, events: &[HandleEvent]) -> Result<(SurfaceState, Ledger), MorseError> {
    let mut s = start;
    let mut l = Ledger::default();
    for e in events {
        s = apply_handle(s, e)?;
        match e {
            HandleEvent::Birth => l.births += 1,
            HandleEvent::Death => l.deaths += 1,
            HandleEvent::Join => l.joins += 1,
            HandleEvent::Divorce => l.divorces += 1,
            HandleEvent::Marriage => l.marriages += 1,
            HandleEvent::SingularCrossing { sing, delta_c, delta_g, delta_k } => {
                let f = fake_counts(*delta_c, *delta_g, *delta_k, sing.r)?;
                l.fake.marriages += f.marriages;
                l.fake.divorces += f.divorces;
                l.fake.joins += f.joins;
            }
        }
    }
    Ok((s, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(dc: i64, dg: i64, dk: i64) -> HandleEvent {
        HandleEvent::SingularCrossing { sing: SingularityData::node(), delta_c: dc, delta_g: dg, delta_k: dk }
    }

    #[test]
    fn table_rows() {
        let s = apply_handle(SurfaceState::default(), &HandleEvent::Birth).unwrap();
        assert_eq!(s, SurfaceState::new(1, 1, 1, 0));
        let s = apply_handle(SurfaceState::new(2, 2, 2, 0), &HandleEvent::Join).unwrap();
        assert_eq!(s, SurfaceState::new(1, 1, 1, 0));
        let s = apply_handle(SurfaceState::new(1, 1, 1, 0), &node(0, 0, 0)).unwrap();
        assert_eq!((s.c, s.k, s.chi, s.pg), (1, 1, 0, 0));
        assert!(s.euler_relation_holds());
        assert!(apply_handle(SurfaceState::default(), &HandleEvent::Death).is_err());
    }

    #[test]
    fn fake_examples() {
        let f = fake_counts(0, 0, 0, 2).unwrap();
        assert_eq!((f.marriages, f.divorces), (0, 0));
        // cusp joining two disks
        let f = fake_counts(-1, 0, -1, 1).unwrap();
        assert_eq!(f, FakeCounts { marriages: 0, divorces: 0, joins: 2 });
        assert_eq!(fake_counts(1, 0, 0, 1).unwrap().divorces, 1);
        assert!(fake_counts(-1, 0, 0, 1).is_err());
        // fake handles must use up the multiplicity
        let bad = HandleEvent::SingularCrossing {
            sing: SingularityData::cusp(),
            delta_c: 0,
            delta_g: 0,
            delta_k: 0,
        };
        assert!(apply_handle(SurfaceState::new(1, 1, 1, 0), &bad).is_err());
    }

    #[test]
    fn swallowtail_replay() {
        let cusp = HandleEvent::SingularCrossing {
            sing: SingularityData::cusp(),
            delta_c: -1,
            delta_g: 0,
            delta_k: -1,
        };
        let ev = [HandleEvent::Birth, HandleEvent::Birth, HandleEvent::Birth, cusp.clone(), cusp, node(0, 0, 0)];
        let (s, l) = replay(&ev).unwrap();
        assert_eq!((s.c, s.k, s.pg, s.defect, s.betti()), (1, 1, 0, 1, 1));
        assert!(s.euler_relation_holds());
        assert_eq!(l.fake.joins, 6);
    }
}
