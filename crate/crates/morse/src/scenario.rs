use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sigmorse_links::{descriptor_invariants, LinkDescriptor, LinkInvariants, SingularityData, Verdict};
use sigmorse_spectra::Rational;

use crate::handles::{replay, HandleEvent};
use crate::MorseError;

pub const SCHEMA: &str = "sigmorse/1";

/// `(w, u)` from `(σ, n, c)`.
pub fn w_u(sigma: i64, n: i64, c: i64) -> (i64, i64) {
    (-sigma + n - c, -sigma - n + c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioSingularity {
    #[serde(flatten)]
    pub sing: SingularityData,
    #[serde(rename = "deltaC", default, skip_serializing_if = "Option::is_none")]
    pub delta_c: Option<i64>,
    #[serde(rename = "deltaG", default, skip_serializing_if = "Option::is_none")]
    pub delta_g: Option<i64>,
    #[serde(rename = "deltaK", default, skip_serializing_if = "Option::is_none")]
    pub delta_k: Option<i64>,
}

impl From<SingularityData> for ScenarioSingularity {
    fn from(sing: SingularityData) -> Self {
        ScenarioSingularity { sing, delta_c: None, delta_g: None, delta_k: None }
    }
}

/// Singular points of an affine curve, its link at infinity and genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct MorseScenario {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub singularities: Vec<ScenarioSingularity>,
    pub infinity: LinkDescriptor,
    pub pg: i64,
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    /// Optional handle sequence in order of increasing radius.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub events: Vec<HandleEvent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    name: String,
    #[serde(default)]
    description: String,
    singularities: Vec<ScenarioSingularity>,
    infinity: LinkDescriptor,
    pg: i64,
    d: Option<i64>,
    b: Option<i64>,
    #[serde(default)]
    events: Vec<HandleEvent>,
}

impl TryFrom<RawScenario> for MorseScenario {
    type Error = MorseError;
    fn try_from(r: RawScenario) -> Result<Self, MorseError> {
        let mut sc = MorseScenario::new(r.singularities, r.infinity, r.pg, r.b)?;
        if let Some(d) = r.d {
            if d != sc.d {
                return Err(MorseError::BadScenario(format!(
                    "d = {d} but the link at infinity has {} components",
                    sc.d
                )));
            }
        }
        sc.name = r.name;
        sc.description = r.description;
        sc.with_events(r.events)
    }
}

impl MorseScenario {
    pub fn new(
        singularities: Vec<ScenarioSingularity>,
        infinity: LinkDescriptor,
        pg: i64,
        b: Option<i64>,
    ) -> Result<Self, MorseError> {
        let d = infinity.components();
        if d < 1 {
            return Err(MorseError::BadScenario(format!("d = {d} must be at least 1")));
        }
        if pg < 0 {
            return Err(MorseError::BadScenario(format!("pg = {pg} is negative")));
        }
        let sc = MorseScenario {
            name: String::new(),
            description: String::new(),
            singularities,
            infinity,
            pg,
            d,
            b,
            events: Vec::new(),
        };
        sc.betti()?;
        Ok(sc)
    }

    /// Attaches a handle sequence after checking it ends in this scenario's
    /// `(c, pg, b)`.
    pub fn with_events(mut self, events: Vec<HandleEvent>) -> Result<Self, MorseError> {
        if !events.is_empty() {
            let (s, _) = replay(&events)?;
            let b = self.betti()?;
            if s.c != self.d || s.pg != self.pg || s.betti() != b {
                return Err(MorseError::BadScenario(format!(
                    "events end in {s} with b = {}, expected c = {}, pg = {}, b = {b}",
                    s.betti(),
                    self.d,
                    self.pg
                )));
            }
        }
        self.events = events;
        Ok(self)
    }

    /// `R = Σ(r_k − 1)`.
    pub fn branch_defect(&self) -> i64 {
        self.singularities.iter().map(|s| s.sing.r - 1).sum()
    }

    /// First Betti number: the given one if present (after cross-checking),
    /// else `2pg + R + d − 1`.
    pub fn betti(&self) -> Result<i64, MorseError> {
        let derived = 2 * self.pg + self.branch_defect() + self.d - 1;
        match self.b {
            Some(given) if given != derived => Err(MorseError::BettiMismatch { given, derived }),
            _ => Ok(derived),
        }
    }

    pub fn singularity_invariants(&self, x: Rational) -> Result<Vec<LinkInvariants>, MorseError> {
        self.singularities
            .iter()
            .map(|s| Ok(descriptor_invariants(&s.sing.link, x)?))
            .collect()
    }

    pub fn infinity_invariants(&self, x: Rational) -> Result<LinkInvariants, MorseError> {
        Ok(descriptor_invariants(&self.infinity, x)?)
    }
}

fn half() -> Rational {
    Rational::new(1, 2).expect("1/2")
}

fn wu(i: &LinkInvariants) -> (i64, i64) {
    w_u(i.sigma_star, i.n_star, i.c)
}

/// Lower bound on `w(L∞)` and upper bound on `u(L∞)` at `x`.
pub fn check_mthm2(sc: &MorseScenario, x: Rational) -> Result<(Verdict, Verdict), MorseError> {
    let (mut sw, mut su) = (0, 0);
    for i in sc.singularity_invariants(x)? {
        let (w, u) = wu(&i);
        sw += w;
        su += u;
    }
    let (w_inf, u_inf) = wu(&sc.infinity_invariants(x)?);
    let shift = 2 * (sc.pg + sc.d - 1);
    Ok((Verdict::at_least(w_inf, sw - shift), Verdict::at_most(u_inf, su + shift)))
}

/// `|σ(L∞) − Σσ(L_k)| ≤ b + n(L∞) − 1`.
pub fn check_betti(sc: &MorseScenario) -> Result<Verdict, MorseError> {
    let b = sc.betti()?;
    let sum: i64 = sc.singularity_invariants(half())?.iter().map(|i| i.sigma_star).sum();
    let inf = sc.infinity_invariants(half())?;
    Ok(Verdict::at_most((inf.sigma_star - sum).abs(), b + inf.n_star - 1))
}

/// `|σ*_x(L∞) − Σσ*_x(L_k)| ≤ b + n_0(L∞)`.
pub fn check_tlbetti(sc: &MorseScenario, x: Rational) -> Result<Verdict, MorseError> {
    let b = sc.betti()?;
    let sum: i64 = sc.singularity_invariants(x)?.iter().map(|i| i.sigma_star).sum();
    let inf = sc.infinity_invariants(x)?;
    Ok(Verdict::at_most((inf.sigma_star - sum).abs(), b + inf.n_star - 1))
}

/// On-disk form: schema tag, scenario, and optionally the verdicts the
/// author expects (`true` = holds) keyed by checker name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: String,
    pub scenario: MorseScenario,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, bool>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        let f: ScenarioFile = serde_json::from_str(text)?;
        if f.schema != SCHEMA {
            return Err(serde::de::Error::custom(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                f.schema
            )));
        }
        Ok(f)
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("cubic-node", include_str!("../scenarios/cubic-node.json")),
    ("swallowtail", include_str!("../scenarios/swallowtail.json")),
    ("three-cusp", include_str!("../scenarios/three-cusp.json")),
    ("cable", include_str!("../scenarios/cable.json")),
    ("cable-t49", include_str!("../scenarios/cable-t49.json")),
    ("smooth-line", include_str!("../scenarios/smooth-line.json")),
];

/// Scenarios shipped with the library, by name.
pub fn bundled_scenarios() -> Vec<(&'static str, ScenarioFile)> {
    BUNDLED
        .iter()
        .map(|(n, t)| (*n, ScenarioFile::parse(t).unwrap_or_else(|e| panic!("bundled {n}: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(name: &str) -> MorseScenario {
        bundled_scenarios().into_iter().find(|(n, _)| *n == name).unwrap().1.scenario
    }

    #[test]
    fn w_u_examples() {
        assert_eq!(w_u(-1, 1, 2), (0, 2));
        assert_eq!(w_u(-2, 1, 1), (2, 2));
        assert_eq!(w_u(-6, 1, 1), (6, 6));
    }

    #[test]
    fn bundled_numbers() {
        let h = half();
        let (w, u) = check_mthm2(&get("cubic-node"), h).unwrap();
        assert_eq!((w.lhs, w.rhs, u.lhs, u.rhs), (2, 0, 2, 2));
        let (w, u) = check_mthm2(&get("swallowtail"), h).unwrap();
        assert_eq!((w.to_string(), u.to_string()), ("6 ≥ 4 HOLDS (slack 2)".into(), "6 ≤ 6 HOLDS (slack 0)".into()));
        let v = check_betti(&get("swallowtail")).unwrap();
        assert_eq!((v.lhs, v.rhs), (1, 1));
        let (w, _) = check_mthm2(&get("three-cusp"), h).unwrap();
        assert_eq!((w.lhs, w.rhs, w.slack), (4, 4, 0));
        let v = check_betti(&get("three-cusp")).unwrap();
        assert_eq!((v.lhs, v.rhs), (1, 1));
        let (w, u) = check_mthm2(&get("cable"), h).unwrap();
        assert_eq!((w.lhs, w.rhs, w.holds, u.lhs, u.rhs), (8, 14, false, 8, 20));
        let (w, u) = check_mthm2(&get("cable-t49"), h).unwrap();
        assert_eq!((w.lhs, w.rhs, u.lhs, u.rhs), (16, 14, 16, 20));
        assert!(w.holds && u.holds);
        let v = check_tlbetti(&get("cubic-node"), h).unwrap();
        assert_eq!((v.lhs, v.rhs), (1, 1));
    }

    #[test]
    fn expected_verdicts_match() {
        for (name, f) in bundled_scenarios() {
            let (w, u) = check_mthm2(&f.scenario, half()).unwrap();
            let got = [
                ("mthm2_w", w.holds),
                ("mthm2_u", u.holds),
                ("betti", check_betti(&f.scenario).unwrap().holds),
            ];
            for (k, v) in got {
                if let Some(e) = f.expected.get(k) {
                    // the printed cable verdict is embedded as published and does not reproduce
                    if name == "cable" && k == "mthm2_w" {
                        assert!(*e && !v);
                    } else {
                        assert_eq!(*e, v, "{name} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn betti_mismatch_is_an_error() {
        let text = r#"{"singularities":[],"infinity":{"type":"torus","p":1,"q":1},"pg":0,"b":3}"#;
        assert!(serde_json::from_str::<MorseScenario>(text).is_err());
        let text = r#"{"singularities":[],"infinity":{"type":"torus","p":2,"q":3},"pg":0,"d":2}"#;
        assert!(serde_json::from_str::<MorseScenario>(text).is_err());
    }

    #[test]
    fn json_round_trip() {
        for (_, f) in bundled_scenarios() {
            let s = serde_json::to_string(&f).unwrap();
            assert_eq!(ScenarioFile::parse(&s).unwrap(), f);
        }
    }
}
