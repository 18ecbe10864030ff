use std::collections::BTreeMap;

use sigmorse_morse::{
    check_betti, check_intermediate, check_mthm2, check_tlbetti, replay, MorseScenario, ScenarioFile, Verdict,
};
use sigmorse_spectra::Rational;

/// One checker outcome; `Err` when the checker cannot be evaluated.
pub struct Outcome {
    pub checker: String,
    pub verdict: Result<Verdict, String>,
    pub expected: Option<bool>,
}

impl Outcome {
    /// Mismatch with the expectation, or a plain failure when none is given.
    pub fn bad(&self) -> bool {
        match (&self.verdict, self.expected) {
            (Ok(v), Some(e)) => v.holds != e,
            (Ok(v), None) => !v.holds,
            (Err(_), Some(_)) => true,
            (Err(_), None) => false,
        }
    }
}

pub fn evaluate(f: &ScenarioFile, x: Rational) -> Vec<Outcome> {
    let sc = &f.scenario;
    let mut got: Vec<(String, Result<Verdict, String>)> = Vec::new();
    match check_mthm2(sc, x) {
        Ok((w, u)) => {
            got.push(("mthm2_w".into(), Ok(w)));
            got.push(("mthm2_u".into(), Ok(u)));
        }
        Err(e) => {
            got.push(("mthm2_w".into(), Err(e.to_string())));
            got.push(("mthm2_u".into(), Err(e.to_string())));
        }
    }
    got.push(("betti".into(), check_betti(sc).map_err(|e| e.to_string())));
    got.push(("tlbetti".into(), check_tlbetti(sc, x).map_err(|e| e.to_string())));
    if !sc.events.is_empty() {
        got.push(("intermediate".into(), intermediate(sc)));
    }
    got.into_iter()
        .map(|(checker, verdict)| Outcome { expected: f.expected.get(&checker).copied(), checker, verdict })
        .collect()
}

/// Between the empty ball and the whole curve.
fn intermediate(sc: &MorseScenario) -> Result<Verdict, String> {
    let (end, ledger) = replay(&sc.events).map_err(|e| e.to_string())?;
    Ok(check_intermediate(0, end.pg, 0, end.c, 0, end.k, ledger.divorces, ledger.fake.divorces))
}

pub fn lines(name: &str, outcomes: &[Outcome]) -> Vec<String> {
    let mut out = vec![format!("scenario {name}")];
    for o in outcomes {
        let body = match &o.verdict {
            Ok(v) => v.to_string(),
            Err(e) => format!("not evaluated: {e}"),
        };
        let note = match o.expected {
            Some(e) if o.bad() => format!("  MISMATCH (expected {})", if e { "HOLDS" } else { "FAILS" }),
            Some(_) => "  (as expected)".into(),
            None => String::new(),
        };
        out.push(format!("  {:<13}{body}{note}", o.checker));
    }
    out
}

pub fn json(outcomes: &[Outcome]) -> serde_json::Value {
    let map: BTreeMap<&str, serde_json::Value> = outcomes
        .iter()
        .map(|o| {
            let v = match &o.verdict {
                Ok(v) => serde_json::json!({
                    "text": v.to_string(),
                    "holds": v.holds,
                    "lhs": v.lhs,
                    "rhs": v.rhs,
                    "slack": v.slack,
                    "expected": o.expected,
                }),
                Err(e) => serde_json::json!({ "error": e, "expected": o.expected }),
            };
            (o.checker.as_str(), v)
        })
        .collect();
    serde_json::json!(map)
}
