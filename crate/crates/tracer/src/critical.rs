use nalgebra::{DMatrix, Matrix2, Vector2};
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveKind, CurveSpec, ParamCurve};
use crate::poly::Poly;
use crate::{implicit, TraceError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CriticalKind {
    /// Nondegenerate-or-not critical point of the distance on a smooth part.
    Smooth { index: u8 },
    /// `orders[j]` is the vanishing order of the velocity at the j-th
    /// preimage (0 for an immersed branch).
    Singular { p: usize, r: usize, orders: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// Parameters mapping to the point (empty for implicit curves).
    pub preimages: Vec<C>,
    pub point: [C; 2],
    pub rho: f64,
    pub kind: CriticalKind,
    /// `det Hess g / (trace/2)²` at smooth points, in `[-1, 1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hessian: Option<f64>,
}

impl CriticalPoint {
    pub fn is_singular(&self) -> bool {
        matches!(self.kind, CriticalKind::Singular { .. })
    }

    pub fn morse_index(&self) -> Option<u8> {
        match self.kind {
            CriticalKind::Smooth { index } => Some(index),
            _ => None,
        }
    }
}

/// Critical points of the distance to the centre, sorted by radius.
pub fn critical_points(spec: &CurveSpec) -> Result<Vec<CriticalPoint>, TraceError> {
    spec.validate()?;
    let mut out = match &spec.kind {
        CurveKind::Parametric { .. } => parametric_critical_points(&spec.as_parametric()?)?,
        CurveKind::Implicit { f } => implicit::implicit_critical_points(f, spec.xi())?,
    };
    out.sort_by(|a, b| a.rho.total_cmp(&b.rho));
    Ok(out)
}

pub(crate) fn parametric_critical_points(c: &ParamCurve) -> Result<Vec<CriticalPoint>, TraceError> {
    let sing = singular_points(c)?;
    let cusp_params: Vec<(C, usize)> = sing
        .iter()
        .flat_map(|s| match &s.kind {
            CriticalKind::Singular { orders, .. } => {
                s.preimages.iter().zip(orders).filter(|(_, &o)| o > 0).map(|(&t, &o)| (t, o)).collect()
            }
            _ => Vec::new(),
        })
        .collect();
    let mut grid = 48;
    loop {
        let smooth = smooth_critical_points(c, grid, &cusp_params);
        // Poincaré–Hopf on the t-plane: minima count +1, saddles −1, a
        // velocity zero of order o counts −o unless it sits on the centre
        let mut index_sum: i64 = 0;
        for p in &smooth {
            index_sum += if p.morse_index() == Some(0) { 1 } else { -1 };
        }
        for &(t, o) in &cusp_params {
            index_sum += if c.g(t).sqrt() < 1e-9 { 1 } else { -(o as i64) };
        }
        if index_sum == 1 {
            let mut all = smooth;
            all.extend(sing);
            return Ok(all);
        }
        if grid >= 384 {
            return Err(TraceError::NoConvergence(format!(
                "critical point search incomplete: index sum {index_sum} instead of 1"
            )));
        }
        grid *= 2;
    }
}

/// Real Newton on `h(t) = 0` from a grid of seeds.
fn smooth_critical_points(c: &ParamCurve, grid: usize, cusps: &[(C, usize)]) -> Vec<CriticalPoint> {
    let r0 = c.seed_radius();
    let mut seeds = Vec::new();
    for i in 0..=grid {
        for j in 0..=grid {
            let t = C::new(
                -r0 + 2.0 * r0 * i as f64 / grid as f64,
                -r0 + 2.0 * r0 * j as f64 / grid as f64,
            );
            if t.norm() <= r0 * 1.001 {
                seeds.push(t);
            }
        }
    }
    for p in [c.rx(), c.ry()] {
        seeds.extend(p.roots());
        seeds.extend(p.derivative().roots());
    }
    let merge = (1e-8 * r0).max(1e-11);
    let mut found: Vec<CriticalPoint> = Vec::new();
    for s in seeds {
        let Some(t) = newton_h(c, s, r0) else { continue };
        if t.norm() > 4.0 * r0 {
            continue;
        }
        let j = c.jet(t);
        let vscale = c.rx().derivative().abs_scale(t).powi(2) + c.ry().derivative().abs_scale(t).powi(2);
        if j.b <= 1e-16 * vscale.max(1e-300) || cusps.iter().any(|&(u, _)| (u - t).norm() < 1e-6 * (1.0 + r0)) {
            continue;
        }
        if found.iter().any(|f| (f.preimages[0] - t).norm() < merge) {
            continue;
        }
        let a = j.a.norm();
        let index = if j.b > a { 0 } else { 1 };
        found.push(CriticalPoint {
            preimages: vec![t],
            point: c.point(t),
            rho: j.g.max(0.0).sqrt(),
            kind: CriticalKind::Smooth { index },
            hessian: Some((j.b * j.b - a * a) / (j.b * j.b).max(1e-300)),
        });
    }
    found
}

fn newton_h(c: &ParamCurve, mut t: C, r0: f64) -> Option<C> {
    for _ in 0..80 {
        let j = c.jet(t);
        let ab = j.a + j.b;
        let amb = (j.a - j.b) * C::new(0.0, 1.0);
        let m = Matrix2::new(ab.re, amb.re, ab.im, amb.im);
        let rhs = Vector2::new(-j.h.re, -j.h.im);
        let d = m.lu().solve(&rhs)?;
        let mut step = C::new(d[0], d[1]);
        let cap = 0.25 * r0;
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        t += step;
        if !t.is_finite() || t.norm() > 10.0 * r0 {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + t.norm()) {
            break;
        }
    }
    let res = c.h(t).norm() / c.h_scale(t);
    (res < 1e-11).then_some(t)
}

/// Divided difference `(p(t) − p(s))/(t − s)` and its partials.
fn divided(p: &Poly, t: C, s: C) -> (C, C, C) {
    let a = p.coeffs();
    let zero = C::new(0.0, 0.0);
    let (mut v, mut dt, mut ds) = (zero, zero, zero);
    for (k, &ak) in a.iter().enumerate().skip(1) {
        for j in 0..k {
            let e = k - 1 - j;
            v += ak * t.powu(e as u32) * s.powu(j as u32);
            if e > 0 {
                dt += ak * (e as f64) * t.powu(e as u32 - 1) * s.powu(j as u32);
            }
            if j > 0 {
                ds += ak * (j as f64) * t.powu(e as u32) * s.powu(j as u32 - 1);
            }
        }
    }
    (v, dt, ds)
}

/// `(p(t) − p(s))/(t − s)` as a polynomial in `s`.
fn divided_in_s(p: &Poly, t: C) -> Vec<C> {
    let a = p.coeffs();
    let n = a.len().saturating_sub(1);
    let mut c = vec![C::new(0.0, 0.0); n.max(1)];
    for (k, &ak) in a.iter().enumerate().skip(1) {
        for (j, cj) in c.iter_mut().enumerate().take(k) {
            *cj += ak * t.powu((k - 1 - j) as u32);
        }
    }
    c
}

/// Sylvester determinant and its Hadamard bound.
fn sylvester_det(a: &[C], b: &[C]) -> (C, f64) {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return (C::new(1.0, 0.0), 1.0);
    }
    let mut s = DMatrix::<C>::zeros(size, size);
    for i in 0..n {
        for (k, &ak) in a.iter().rev().enumerate() {
            s[(i, i + k)] = ak;
        }
    }
    for i in 0..m {
        for (k, &bk) in b.iter().rev().enumerate() {
            s[(n + i, i + k)] = bk;
        }
    }
    let bound = s.row_iter().map(|r| r.norm()).product::<f64>();
    (s.determinant(), bound)
}

/// Double points (by a resultant in the second parameter) and velocity
/// zeros, grouped by image point.
pub(crate) fn singular_points(c: &ParamCurve) -> Result<Vec<CriticalPoint>, TraceError> {
    let (x, y) = (&c.x, &c.y);
    let mut pre: Vec<(C, usize)> = Vec::new();
    // velocity zeros
    let (dx, dy) = (x.derivative(), y.derivative());
    let cand = match (dx.is_constant(), dy.is_constant()) {
        (true, true) => Vec::new(),
        (true, false) => if dx.coeffs()[0].norm() == 0.0 { dy.roots() } else { Vec::new() },
        (false, true) => if dy.coeffs()[0].norm() == 0.0 { dx.roots() } else { Vec::new() },
        (false, false) => {
            if dx.degree() <= dy.degree() { dx.roots() } else { dy.roots() }
        }
    };
    for t in cand {
        let sx = dx.abs_scale(t).max(1e-300);
        let sy = dy.abs_scale(t).max(1e-300);
        if dx.eval(t).norm() <= 1e-7 * sx && dy.eval(t).norm() <= 1e-7 * sy {
            let t = polish_cusp(&dx, &dy, t);
            if !pre.iter().any(|(u, _)| (u - t).norm() < 1e-7 * (1.0 + t.norm())) {
                pre.push((t, vanishing_order(x, y, t)));
            }
        }
    }
    // double points t ≠ s
    let mut pairs: Vec<(C, C)> = Vec::new();
    if x.degree().min(y.degree()) == 0 && x.degree().max(y.degree()) >= 2 {
        return Err(TraceError::NonIsolated("the parametrisation is not injective (a coordinate is constant)".into()));
    }
    if x.degree() >= 2 && y.degree() >= 2 {
        let bound = (x.degree() - 1) * (y.degree() - 1);
        let n = (bound + 1).next_power_of_two().max(8);
        let w: Vec<C> =
            (0..n).map(|k| C::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
        let dets: Vec<(C, f64)> =
            w.iter().map(|&t| sylvester_det(&divided_in_s(x, t), &divided_in_s(y, t))).collect();
        let vals: Vec<C> = dets.iter().map(|d| d.0).collect();
        let rel = dets.iter().map(|(d, b)| d.norm() / b.max(1e-300)).fold(0.0, f64::max);
        let mut coef: Vec<C> = (0..n)
            .map(|j| vals.iter().enumerate().map(|(k, v)| v * w[(j * (n - k)) % n]).sum::<C>() / n as f64)
            .collect();
        let big = coef.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let vmax = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if vmax == 0.0 || big <= 1e-12 * vmax || rel < 1e-10 {
            return Err(TraceError::NonIsolated(
                "the parametrisation is not injective (resultant vanishes identically)".into(),
            ));
        }
        for z in coef.iter_mut() {
            if z.norm() < 1e-12 * big {
                *z = C::new(0.0, 0.0);
            }
        }
        let r = Poly::new(coef);
        for t in r.roots() {
            let sx = divided_in_s(x, t);
            for s in Poly::new(sx).roots() {
                let Some((t1, s1)) = polish_pair(x, y, t, s) else { continue };
                if (t1 - s1).norm() <= 1e-6 * (1.0 + t1.norm()) {
                    continue;
                }
                let dup = pairs.iter().any(|&(a, b)| {
                    let tol = 1e-7 * (1.0 + a.norm());
                    ((a - t1).norm() < tol && (b - s1).norm() < tol) || ((a - s1).norm() < tol && (b - t1).norm() < tol)
                });
                if !dup {
                    pairs.push((t1, s1));
                }
            }
        }
    }
    for (t, s) in pairs {
        for u in [t, s] {
            if !pre.iter().any(|(v, _)| (v - u).norm() < 1e-7 * (1.0 + u.norm())) {
                pre.push((u, vanishing_order(x, y, u)));
            }
        }
    }
    // group preimages by image point
    let mut groups: Vec<(Vec<(C, usize)>, [C; 2])> = Vec::new();
    for (t, o) in pre {
        let p = c.point(t);
        let tol = 1e-6 * (1.0 + p[0].norm() + p[1].norm());
        match groups.iter_mut().find(|(_, q)| (q[0] - p[0]).norm() + (q[1] - p[1]).norm() < tol) {
            Some(g) => g.0.push((t, o)),
            None => groups.push((vec![(t, o)], p)),
        }
    }
    Ok(groups
        .into_iter()
        .filter(|(m, _)| m.len() >= 2 || m[0].1 > 0)
        .map(|(m, _)| {
            let t0 = m[0].0;
            let orders: Vec<usize> = m.iter().map(|e| e.1).collect();
            CriticalPoint {
                preimages: m.iter().map(|e| e.0).collect(),
                point: c.point(t0),
                rho: c.g(t0).sqrt(),
                kind: CriticalKind::Singular {
                    p: orders.iter().map(|o| o + 1).sum(),
                    r: orders.len(),
                    orders,
                },
                hessian: None,
            }
        })
        .collect())
}

fn polish_cusp(dx: &Poly, dy: &Poly, mut t: C) -> C {
    // Newton on the better-conditioned of x', y'; falls back to the seed
    let p = if dx.degree() >= dy.degree() && !dy.is_constant() { dy } else { dx };
    let d = p.derivative();
    for _ in 0..50 {
        let dv = d.eval(t);
        if dv.norm() == 0.0 {
            break;
        }
        let step = p.eval(t) / dv;
        if !step.is_finite() {
            break;
        }
        t -= step;
        if step.norm() < 1e-16 * (1.0 + t.norm()) {
            break;
        }
    }
    t
}

/// Number of leading derivatives of `(x, y)` vanishing at `t`.
pub(crate) fn vanishing_order(x: &Poly, y: &Poly, t: C) -> usize {
    let tx = x.taylor(t);
    let ty = y.taylor(t);
    let scale = tx.iter().chain(ty.iter()).map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let mut o = 0;
    for k in 1..tx.len().max(ty.len()) {
        let a = tx.get(k).map_or(0.0, |z| z.norm());
        let b = ty.get(k).map_or(0.0, |z| z.norm());
        if a.max(b) > 1e-7 * scale {
            break;
        }
        o += 1;
    }
    o
}

fn polish_pair(x: &Poly, y: &Poly, mut t: C, mut s: C) -> Option<(C, C)> {
    for _ in 0..60 {
        let (fx, xt, xs) = divided(x, t, s);
        let (fy, yt, ys) = divided(y, t, s);
        let det = xt * ys - xs * yt;
        if det.norm() == 0.0 {
            break;
        }
        let dt = (fx * ys - xs * fy) / det;
        let ds = (xt * fy - fx * yt) / det;
        if !dt.is_finite() || !ds.is_finite() {
            return None;
        }
        t -= dt;
        s -= ds;
        if dt.norm() + ds.norm() < 1e-15 * (1.0 + t.norm() + s.norm()) {
            break;
        }
    }
    let px = x.eval(t) - x.eval(s);
    let py = y.eval(t) - y.eval(s);
    let scale = x.abs_scale(t) + x.abs_scale(s) + y.abs_scale(t) + y.abs_scale(s);
    (px.norm() + py.norm() <= 1e-9 * scale.max(1e-300)).then_some((t, s))
}
