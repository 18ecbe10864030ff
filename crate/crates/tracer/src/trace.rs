use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::critical::{critical_points, CriticalPoint};
use crate::curve::{CurveKind, CurveSpec, ParamCurve};
use crate::link::linking_matrix;
use crate::{implicit, TraceError};

/// Points per traced component after resampling.
pub const RESAMPLE: usize = 384;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SnapshotDiagnostics {
    /// `max |g − r²| / r²` over the output points.
    pub level_residual: f64,
    /// Largest closure gap, relative to `r`.
    pub closure_gap: f64,
    /// Largest distance of a Gauss integral from the nearest integer.
    pub linking_residual: f64,
    pub pole: [f64; 4],
    /// Distance from the pole to the link on the unit sphere.
    pub pole_clearance: f64,
    pub warnings: Vec<String>,
}

/// `L_r`: the curve cut by the sphere of radius `r` about the centre.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkSnapshot {
    pub r: f64,
    /// Closed polylines in `(Re w1, Im w1, Re w2, Im w2)`.
    pub components: Vec<Vec<[f64; 4]>>,
    /// Parameter-plane polylines (parametric curves only).
    #[serde(skip)]
    pub params: Vec<Vec<C>>,
    pub c: usize,
    /// Components of the sublevel set in the parameter plane.
    pub k: Option<usize>,
    pub linking: Vec<Vec<i64>>,
    pub diagnostics: SnapshotDiagnostics,
}

/// Traces `L_r`; `r` must stay clear of critical radii.
pub fn trace_link(spec: &CurveSpec, r: f64) -> Result<LinkSnapshot, TraceError> {
    let crit = critical_points(spec)?;
    trace_link_with(spec, r, &crit)
}

pub fn trace_link_with(spec: &CurveSpec, r: f64, crit: &[CriticalPoint]) -> Result<LinkSnapshot, TraceError> {
    if !(r.is_finite() && r > 0.0) {
        return Err(TraceError::BadSpec(format!("radius {r} must be positive")));
    }
    if let Some(p) = crit.iter().find(|p| (p.rho - r).abs() <= 1e-6 * r.max(1.0)) {
        return Err(TraceError::NearCritical { r, rho: p.rho });
    }
    let (comps4, params, k, level, gap) = match &spec.kind {
        CurveKind::Parametric { .. } => {
            let c = spec.as_parametric()?;
            let minima: Vec<C> =
                crit.iter().filter(|p| p.morse_index() == Some(0) && p.rho < r).map(|p| p.preimages[0]).collect();
            // a centre on a cusp is also a local minimum
            let mut minima = minima;
            for p in crit.iter().filter(|p| p.is_singular() && p.rho < 1e-9) {
                minima.extend(p.preimages.iter().copied());
            }
            let curves = level_curves(&c, &minima, r)?;
            let k = curves.len();
            let mut comps = Vec::new();
            let mut params = Vec::new();
            let (mut level, mut gap) = (0.0f64, 0.0f64);
            for lc in curves {
                gap = gap.max(lc.closure_gap / r);
                let t = resample(&c, &lc.t, r, RESAMPLE);
                for &u in &t {
                    level = level.max((c.g(u) - r * r).abs() / (r * r));
                }
                comps.push(t.iter().map(|&u| c.rel4(u)).collect::<Vec<_>>());
                params.push(t);
            }
            (comps, params, Some(k), level, gap)
        }
        CurveKind::Implicit { f } => {
            let (comps, level, gap) = implicit::implicit_link(f, spec.xi(), r)?;
            (comps, Vec::new(), None, level, gap)
        }
    };
    let unit: Vec<Vec<[f64; 4]>> = comps4.iter().map(|c| c.iter().map(|p| p.map(|v| v / r)).collect()).collect();
    let (linking, residual, proj, clearance) = linking_matrix(&unit);
    let mut warnings = Vec::new();
    if clearance < 0.05 {
        warnings.push(format!("pole clearance {clearance:.3} below 0.05"));
    }
    if residual > 0.05 {
        warnings.push(format!("linking residual {residual:.3} above 0.05"));
    }
    let xi = spec.center;
    let components = comps4
        .into_iter()
        .map(|c| c.into_iter().map(|p| [p[0] + xi[0], p[1] + xi[1], p[2] + xi[2], p[3] + xi[3]]).collect())
        .collect::<Vec<Vec<[f64; 4]>>>();
    Ok(LinkSnapshot {
        r,
        c: components.len(),
        components,
        params,
        k,
        linking,
        diagnostics: SnapshotDiagnostics {
            level_residual: level,
            closure_gap: gap,
            linking_residual: residual,
            pole: proj.pole,
            pole_clearance: clearance,
            warnings,
        },
    })
}

pub(crate) struct LevelCurve {
    pub t: Vec<C>,
    pub closure_gap: f64,
}

/// Moves `t` onto `g = r²` along the gradient.
pub(crate) fn correct(c: &ParamCurve, mut t: C, r2: f64) -> Option<C> {
    for _ in 0..30 {
        let h = c.h(t);
        if h.norm() == 0.0 {
            return None;
        }
        let d = (c.g(t) - r2) / (h * 2.0);
        t -= d;
        if !t.is_finite() {
            return None;
        }
        if d.norm() <= 1e-15 * (1.0 + t.norm()) || (c.g(t) - r2).abs() <= 1e-14 * r2 {
            return Some(t);
        }
    }
    ((c.g(t) - r2).abs() <= 1e-10 * r2).then_some(t)
}

/// Unit tangent, counterclockwise around the sublevel set.
fn tangent(c: &ParamCurve, t: C) -> C {
    let h = c.h(t);
    C::new(0.0, 1.0) * h.conj() / h.norm()
}

pub(crate) fn point_in_polygon(poly: &[C], p: C) -> bool {
    let mut inside = false;
    let n = poly.len();
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.im > p.im) != (b.im > p.im) && p.re < (b.re - a.re) * (p.im - a.im) / (b.im - a.im) + a.re {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// One boundary curve per sublevel component, seeded by a ray from a
/// minimum not yet enclosed.
pub(crate) fn level_curves(c: &ParamCurve, minima: &[C], r: f64) -> Result<Vec<LevelCurve>, TraceError> {
    let r2 = r * r;
    let scale = c.seed_radius();
    let mut curves: Vec<LevelCurve> = Vec::new();
    for &m in minima {
        if c.g(m) >= r2 || curves.iter().any(|lc| point_in_polygon(&lc.t, m)) {
            continue;
        }
        let seed = ray_exit(c, m, r2, scale).ok_or_else(|| {
            TraceError::NoConvergence(format!("no level crossing found from minimum {m} at r = {r}"))
        })?;
        let lc = trace_closed(c, seed, r, (seed - m).norm())?;
        if !point_in_polygon(&lc.t, m) {
            return Err(TraceError::OpenComponent { r, gap: f64::NAN });
        }
        curves.push(lc);
    }
    Ok(curves)
}

fn ray_exit(c: &ParamCurve, m: C, r2: f64, scale: f64) -> Option<C> {
    let dir = C::new(0.8, 0.6);
    let ds = scale / 4000.0;
    let mut s0 = 0.0;
    for i in 1..=40000 {
        let s = ds * i as f64;
        if c.g(m + dir * s) > r2 {
            let (mut lo, mut hi) = (s0, s);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if c.g(m + dir * mid) > r2 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return correct(c, m + dir * lo, r2);
        }
        s0 = s;
    }
    None
}

/// Predictor–corrector around a closed level curve, returning to the seed.
fn trace_closed(c: &ParamCurve, t0: C, r: f64, size: f64) -> Result<LevelCurve, TraceError> {
    let r2 = r * r;
    let size = size.max(1e-12);
    let max_step = 0.1 * size;
    let floor = 1e-9 * size;
    let mut step = 1e-3 * size;
    let mut pts = vec![t0];
    let mut t = t0;
    let mut tan = tangent(c, t0);
    let tan0 = tan;
    let mut arc = 0.0;
    for _ in 0..2_000_000 {
        let pred = t + tan * step;
        let next = correct(c, pred, r2).filter(|&u| {
            let nt = tangent(c, u);
            (u - pred).norm() < 0.3 * step && (nt * tan.conj()).arg().abs() < 0.3
        });
        let Some(u) = next else {
            step *= 0.5;
            if step < floor {
                return Err(TraceError::StepUnderflow { r });
            }
            continue;
        };
        let nt = tangent(c, u);
        let turn = (nt * tan.conj()).arg().abs();
        arc += (u - t).norm();
        t = u;
        tan = nt;
        pts.push(t);
        let to_start = t0 - t;
        let along = (to_start * tan.conj()).re;
        if arc > 4.0 * step && to_start.norm() < 1.5 * step && along > 0.0 && (tan * tan0.conj()).re > 0.5 {
            let gap = home(c, t, t0, r2);
            let p0 = c.rel4(t0);
            let pe = c.rel4(gap);
            let d: f64 = p0.iter().zip(pe.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            return Ok(LevelCurve { t: pts, closure_gap: d });
        }
        if turn < 0.05 {
            step = (step * 1.5).min(max_step);
        } else if turn > 0.15 {
            step *= 0.7;
        }
    }
    Err(TraceError::OpenComponent { r, gap: f64::INFINITY })
}

/// Walks from `t` along the curve onto the seed `t0`.
fn home(c: &ParamCurve, mut t: C, t0: C, r2: f64) -> C {
    for _ in 0..30 {
        let tan = tangent(c, t);
        let along = ((t0 - t) * tan.conj()).re;
        match correct(c, t + tan * along, r2) {
            Some(u) => t = u,
            None => break,
        }
        if (t - t0).norm() < 1e-13 * (1.0 + t0.norm()) {
            break;
        }
    }
    t
}

/// `n` points equally spaced in image arclength, each corrected onto the level.
pub(crate) fn resample(c: &ParamCurve, t: &[C], r: f64, n: usize) -> Vec<C> {
    let m = t.len();
    let img: Vec<[f64; 4]> = t.iter().map(|&u| c.rel4(u)).collect();
    let mut cum = vec![0.0];
    for i in 0..m {
        let (a, b) = (&img[i], &img[(i + 1) % m]);
        let d: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
        cum.push(cum[i] + d);
    }
    let total = cum[m];
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for k in 0..n {
        let s = total * k as f64 / n as f64;
        while seg + 1 < m && cum[seg + 1] <= s {
            seg += 1;
        }
        let len = cum[seg + 1] - cum[seg];
        let f = if len > 0.0 { (s - cum[seg]) / len } else { 0.0 };
        let u = t[seg] + (t[(seg + 1) % m] - t[seg]) * f;
        out.push(correct(c, u, r * r).unwrap_or(u));
    }
    out
}
