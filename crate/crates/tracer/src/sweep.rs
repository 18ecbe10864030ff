use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sigmorse_morse::{replay_from, HandleEvent, Ledger, SurfaceState};

use crate::critical::{critical_points, CriticalKind, CriticalPoint};
use crate::curve::{CurveKind, CurveSpec, ParamCurve};
use crate::local::{alpha_beta, branch_tangent, descend, descending_sectors, singularity_data};
use crate::trace::{point_in_polygon, trace_link_with, LinkSnapshot};
use crate::TraceError;

/// Relative tolerance below which two critical radii count as equal.
pub const G1_TOL: f64 = 1e-7;
pub const G2_TOL: f64 = 1e-6;
pub const G3_TOL: f64 = 1e-6;

/// Critical points sharing one radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalGroup {
    pub rho: f64,
    pub members: Vec<usize>,
}

impl CriticalGroup {
    pub fn composite(&self) -> bool {
        self.members.len() > 1
    }
}

pub fn group_criticals(crit: &[CriticalPoint]) -> Vec<CriticalGroup> {
    let mut groups: Vec<CriticalGroup> = Vec::new();
    for (i, p) in crit.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (p.rho - g.rho).abs() <= G1_TOL * p.rho.max(1.0) => g.members.push(i),
            _ => groups.push(CriticalGroup { rho: p.rho, members: vec![i] }),
        }
    }
    groups
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub g1: bool,
    pub g2: bool,
    pub g3: bool,
    pub near_violations: Vec<String>,
    pub tolerances: Tolerances,
}

pub fn genericity_check(spec: &CurveSpec) -> Result<GenericityReport, TraceError> {
    let crit = critical_points(spec)?;
    Ok(genericity_of(spec, &crit))
}

pub(crate) fn genericity_of(spec: &CurveSpec, crit: &[CriticalPoint]) -> GenericityReport {
    let mut near = Vec::new();
    let mut g1 = true;
    for i in 0..crit.len() {
        for j in i + 1..crit.len() {
            let d = (crit[i].rho - crit[j].rho).abs();
            let s = crit[i].rho.max(1.0);
            if d <= G1_TOL * s {
                g1 = false;
                near.push(format!("G1: critical points {i} and {j} share radius {:.9}", crit[i].rho));
            } else if d <= 1e-3 * s {
                near.push(format!("G1: radii {:.9} and {:.9} are close", crit[i].rho, crit[j].rho));
            }
        }
    }
    let mut g2 = true;
    for (i, p) in crit.iter().enumerate() {
        if let Some(h) = p.hessian {
            if h.abs() <= G2_TOL {
                g2 = false;
                near.push(format!("G2: degenerate critical point {i} (normalised det {h:.3e})"));
            }
        }
    }
    let mut g3 = true;
    if let CurveKind::Parametric { .. } = spec.kind {
        let c = spec.as_parametric().expect("parametric");
        for (i, p) in crit.iter().enumerate() {
            if let CriticalKind::Singular { orders, .. } = &p.kind {
                for (t, &o) in p.preimages.iter().zip(orders) {
                    let v = branch_tangent(&c, *t, o);
                    let (a, b) = alpha_beta(v, p.point, spec.xi());
                    let vv = v[0].norm_sqr() + v[1].norm_sqr();
                    let m = (a * b).norm() / vv.max(1e-300);
                    if m <= G3_TOL {
                        g3 = false;
                        near.push(format!("G3: branch at t = {t:.6} of singular point {i} has |αβ|/|v|² = {m:.3e}"));
                    }
                }
            }
        }
    }
    GenericityReport { g1, g2, g3, near_violations: near, tolerances: Tolerances { g1: G1_TOL, g2: G2_TOL, g3: G3_TOL } }
}

/// One classified handle at a critical radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracedEvent {
    pub rho: f64,
    /// Index into the critical point list.
    pub critical: usize,
    /// Part of a group of critical points at one radius.
    pub composite: bool,
    pub event: HandleEvent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub r_min: f64,
    pub r_max: f64,
    pub criticals: Vec<CriticalPoint>,
    pub groups: Vec<CriticalGroup>,
    pub snapshots: Vec<LinkSnapshot>,
    /// Empty when the handle types could not be classified (implicit input).
    pub events: Vec<TracedEvent>,
    /// State at `r_min`.
    pub initial: Option<SurfaceState>,
    pub genericity: GenericityReport,
}

impl SweepResult {
    pub fn handle_events(&self) -> Vec<HandleEvent> {
        self.events.iter().map(|e| e.event.clone()).collect()
    }

    /// Replays the classified events from the state at `r_min`.
    pub fn replay(&self) -> Result<(SurfaceState, Ledger), TraceError> {
        let init = self.initial.ok_or_else(|| TraceError::Unresolved("no classified events".into()))?;
        Ok(replay_from(init, &self.handle_events())?)
    }

    pub fn snapshot_at(&self, r: f64) -> Option<&LinkSnapshot> {
        self.snapshots.iter().find(|s| (s.r - r).abs() <= 1e-12 * r.max(1.0))
    }
}

fn clear_of(r: f64, crit: &[CriticalPoint]) -> bool {
    crit.iter().all(|p| (p.rho - r).abs() > 1e-3 * r.max(1.0))
}

/// Snapshots bracketing every critical radius in `(r_min, r_max)`, plus
/// `samples` evenly spaced extra radii, and the handle events in between.
pub fn sweep(spec: &CurveSpec, r_min: f64, r_max: f64, samples: usize) -> Result<SweepResult, TraceError> {
    if !(r_min > 0.0 && r_max > r_min) {
        return Err(TraceError::BadSpec(format!("need 0 < r_min < r_max, got {r_min}, {r_max}")));
    }
    let crit = critical_points(spec)?;
    let groups = group_criticals(&crit);
    let inside: Vec<&CriticalGroup> = groups.iter().filter(|g| g.rho > r_min && g.rho < r_max).collect();
    let mut radii = vec![r_min, r_max];
    for w in inside.windows(2) {
        radii.push(0.5 * (w[0].rho + w[1].rho));
    }
    if let (Some(first), Some(last)) = (inside.first(), inside.last()) {
        // keep the bracketing radii away from the first and last critical radius
        radii.push(0.5 * (r_min.max(0.5 * first.rho) + first.rho));
        radii.push(0.5 * (last.rho + r_max));
    }
    for k in 0..samples {
        let r = r_min + (r_max - r_min) * (k as f64 + 0.5) / samples as f64;
        if clear_of(r, &crit) {
            radii.push(r);
        }
    }
    radii.sort_by(f64::total_cmp);
    radii.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.max(1.0));
    for &r in &[r_min, r_max] {
        if let Some(p) = crit.iter().find(|p| (p.rho - r).abs() <= 1e-6 * r.max(1.0)) {
            return Err(TraceError::NearCritical { r, rho: p.rho });
        }
    }
    let snapshots: Vec<LinkSnapshot> =
        radii.par_iter().map(|&r| trace_link_with(spec, r, &crit)).collect::<Result<_, _>>()?;
    let genericity = genericity_of(spec, &crit);
    let (events, initial) = match spec.kind {
        CurveKind::Parametric { .. } => {
            let c = spec.as_parametric()?;
            let (ev, init) = classify(&c, &crit, &inside, &snapshots, r_min)?;
            (ev, Some(init))
        }
        CurveKind::Implicit { .. } => (Vec::new(), None),
    };
    Ok(SweepResult { r_min, r_max, criticals: crit, groups, snapshots, events, initial, genericity })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        let mut i = i;
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[b] = a;
        true
    }

    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

fn classify(
    c: &ParamCurve,
    crit: &[CriticalPoint],
    inside: &[&CriticalGroup],
    snaps: &[LinkSnapshot],
    r_min: f64,
) -> Result<(Vec<TracedEvent>, SurfaceState), TraceError> {
    let first = &snaps[0];
    let k0 = first.k.unwrap_or(first.c) as i64;
    let defect0: i64 = crit
        .iter()
        .filter(|p| p.rho < r_min)
        .map(|p| match &p.kind {
            CriticalKind::Singular { r, .. } => *r as i64 - 1,
            _ => 0,
        })
        .sum();
    let init = SurfaceState { c: first.c as i64, k: k0, chi: k0 - defect0, pg: 0, defect: defect0 };
    let scale = c.seed_radius();
    let mut events = Vec::new();
    for g in inside {
        let before = snaps.iter().filter(|s| s.r < g.rho).last().expect("r_min below the group");
        let after = snaps.iter().find(|s| s.r > g.rho).expect("r_max above the group");
        let level = before.r * before.r;
        let rho2 = g.rho * g.rho;
        let mut dsu = Dsu((0..before.params.len()).collect());
        let locate = |t: C| -> Result<usize, TraceError> {
            let d = descend(c, t, level, scale)
                .ok_or_else(|| TraceError::Unresolved(format!("descent from {t} at radius {} failed", g.rho)))?;
            before.params.iter().position(|poly| point_in_polygon(poly, d)).ok_or_else(|| {
                TraceError::Unresolved(format!("descent from {t} ended outside every component at r = {}", before.r))
            })
        };
        // births first so that every later handle sees the new disks
        let mut order: Vec<usize> = g.members.clone();
        order.sort_by_key(|&i| match crit[i].kind {
            CriticalKind::Smooth { index: 0 } => 0,
            _ => 1,
        });
        for &i in &order {
            let p = &crit[i];
            let event = match &p.kind {
                CriticalKind::Smooth { index: 0 } => {
                    dsu.add();
                    HandleEvent::Birth
                }
                CriticalKind::Smooth { .. } => {
                    let t0 = p.preimages[0];
                    let sectors = sectors_at(c, t0, rho2, 2)?;
                    let a = locate(sectors[0])?;
                    let b = locate(sectors[1])?;
                    if dsu.union(a, b) {
                        HandleEvent::Join
                    } else {
                        HandleEvent::Divorce
                    }
                }
                CriticalKind::Singular { orders, .. } => {
                    let mut merges = 0i64;
                    for (&t, &o) in p.preimages.iter().zip(orders) {
                        if o == 0 {
                            continue;
                        }
                        let sectors = sectors_at(c, t, rho2, o + 1)?;
                        let ids = sectors.into_iter().map(&locate).collect::<Result<Vec<_>, _>>()?;
                        for w in ids.windows(2) {
                            if dsu.union(w[0], w[1]) {
                                merges += 1;
                            }
                        }
                    }
                    HandleEvent::SingularCrossing {
                        sing: singularity_data(c, p),
                        delta_c: -merges,
                        delta_g: 0,
                        delta_k: -merges,
                    }
                }
            };
            events.push(TracedEvent { rho: p.rho, critical: i, composite: g.composite(), event });
        }
        let classes = dsu.classes();
        if classes != after.c {
            return Err(TraceError::Unresolved(format!(
                "at radius {:.9}: handles predict {classes} components, tracing at r = {} found {}",
                g.rho, after.r, after.c
            )));
        }
    }
    Ok((events, init))
}

fn sectors_at(c: &ParamCurve, t0: C, level: f64, expected: usize) -> Result<Vec<C>, TraceError> {
    let mut delta = 1e-3 * (1.0 + t0.norm());
    for _ in 0..4 {
        let s = descending_sectors(c, t0, level, delta);
        if s.len() == expected {
            return Ok(s);
        }
        delta *= 0.1;
    }
    Err(TraceError::Unresolved(format!("expected {expected} descending sectors at t = {t0}")))
}
