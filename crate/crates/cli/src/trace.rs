use sigmorse_tracer::{budget_report, svg, sweep, CriticalPoint, CurveSpec, LinkSnapshot, SweepResult};
use serde_json::{json, Value};

use crate::args::TraceArgs;
use crate::fail::{self, Failure};

/// Fixed precision for every float in the report.
fn fx(v: f64) -> f64 {
    // + 0.0 turns -0.0 into 0.0
    (v * 1e9).round() / 1e9 + 0.0
}

fn sci(v: f64) -> String {
    format!("{v:.2e}")
}

fn critical(p: &CriticalPoint) -> Value {
    json!({
        "rho": fx(p.rho),
        "kind": p.kind,
        "point": p.point.iter().map(|z| json!([fx(z.re), fx(z.im)])).collect::<Vec<_>>(),
        "preimages": p.preimages.iter().map(|z| json!([fx(z.re), fx(z.im)])).collect::<Vec<_>>(),
    })
}

fn snapshot(s: &LinkSnapshot) -> Value {
    let d = &s.diagnostics;
    json!({
        "r": fx(s.r),
        "c": s.c,
        "k": s.k,
        "linking": s.linking,
        "level_residual": sci(d.level_residual),
        "closure_gap": sci(d.closure_gap),
        "linking_residual": sci(d.linking_residual),
        "pole_clearance": fx(d.pole_clearance),
        "warnings": d.warnings,
    })
}

pub fn report(spec: &CurveSpec, res: &SweepResult) -> Result<Value, Failure> {
    let budget = budget_report(spec).map_err(fail::tracer)?;
    let ledger = match res.initial {
        Some(_) => {
            let (end, l) = res.replay().map_err(fail::tracer)?;
            json!({ "initial": res.initial, "final": end, "counts": l })
        }
        None => Value::Null,
    };
    let g = &res.genericity;
    Ok(json!({
        "schema": sigmorse_morse::SCHEMA,
        "r_min": fx(res.r_min),
        "r_max": fx(res.r_max),
        "criticals": res.criticals.iter().map(critical).collect::<Vec<_>>(),
        "events": res.events.iter().map(|e| json!({
            "rho": fx(e.rho),
            "critical": e.critical,
            "composite": e.composite,
            "event": e.event,
        })).collect::<Vec<_>>(),
        "snapshots": res.snapshots.iter().map(snapshot).collect::<Vec<_>>(),
        "ledger": ledger,
        "genericity": {
            "g1": g.g1, "g2": g.g2, "g3": g.g3,
            "near_violations": g.near_violations,
            "tolerances": [sci(g.tolerances.g1), sci(g.tolerances.g2), sci(g.tolerances.g3)],
        },
        "budget": {
            "degree": budget.degree,
            "budget": budget.budget,
            "detected": budget.detected,
            "note": budget.note,
        },
    }))
}

pub fn run(a: &TraceArgs) -> Result<String, Failure> {
    if !(a.r_min.is_finite() && a.r_max.is_finite() && a.r_min > 0.0 && a.r_max > a.r_min) {
        return Err(Failure::input(format!("need 0 < r-min < r-max, got {} and {}", a.r_min, a.r_max)));
    }
    let text = std::fs::read_to_string(&a.curve).map_err(|e| Failure::input(format!("{}: {e}", a.curve.display())))?;
    let spec: CurveSpec = serde_json::from_str(&text).map_err(|e| fail::json_error(&a.curve, &e))?;
    spec.validate().map_err(fail::tracer)?;
    let res = sweep(&spec, a.r_min, a.r_max, a.samples).map_err(fail::tracer)?;
    if let Some(dir) = &a.svg {
        for s in &res.snapshots {
            svg::write_svg(s, spec.center, dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        }
    }
    let v = report(&spec, &res)?;
    Ok(serde_json::to_string_pretty(&v).expect("json"))
}
