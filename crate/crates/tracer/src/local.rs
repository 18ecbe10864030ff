//! Local data at singular points: link type, branch tangents, sectors.

use num_complex::Complex64 as C;
use sigmorse_links::{LinkDescriptor, SingularityData};

use crate::critical::{CriticalKind, CriticalPoint};
use crate::curve::ParamCurve;

/// First non-vanishing Taylor vector of the branch through `t`.
pub(crate) fn branch_tangent(c: &ParamCurve, t: C, order: usize) -> [C; 2] {
    let tx = c.x.taylor(t);
    let ty = c.y.taylor(t);
    let k = order + 1;
    [tx.get(k).copied().unwrap_or_default(), ty.get(k).copied().unwrap_or_default()]
}

/// `(α, β)` of a branch with tangent `v` at a point `p`: coordinates of `v`
/// along the sphere's complex tangent and (negated) the radial direction.
pub(crate) fn alpha_beta(v: [C; 2], p: [C; 2], xi: [C; 2]) -> (C, C) {
    let u = [p[0] - xi[0], p[1] - xi[1]];
    let n = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    if n == 0.0 {
        return (C::default(), C::default());
    }
    let e = [u[0] / n, u[1] / n];
    let beta = -(v[0] * e[0].conj() + v[1] * e[1].conj());
    let alpha = -v[0] * e[1] + v[1] * e[0];
    (alpha, beta)
}

type Series = Vec<C>;

fn mul(a: &Series, b: &Series, n: usize) -> Series {
    let mut out = vec![C::default(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `√(1 + w)` for a series `w` without constant term.
fn sqrt1p(w: &Series, n: usize) -> Series {
    // y² = 1 + w, y0 = 1
    let mut y = vec![C::default(); n];
    y[0] = C::new(1.0, 0.0);
    for k in 1..n {
        let mut s = w.get(k).copied().unwrap_or_default();
        for j in 1..k {
            s -= y[j] * y[k - j];
        }
        y[k] = s / 2.0;
    }
    y
}

fn compose(a: &Series, b: &Series, n: usize) -> Series {
    // a(b(s)), b without constant term
    let mut out = vec![C::default(); n];
    let mut pow = vec![C::default(); n];
    pow[0] = C::new(1.0, 0.0);
    for coef in a.iter().take(n) {
        for k in 0..n {
            out[k] += coef * pow[k];
        }
        pow = mul(&pow, b, n);
    }
    out
}

/// Exponent `q` of a single cuspidal branch of multiplicity 2, i.e. the
/// branch is `(2; q)` and its link is `T(2, q)`.
fn cusp_exponent(c: &ParamCurve, t: C) -> Option<i64> {
    let tx = c.x.taylor(t);
    let ty = c.y.taylor(t);
    let n = 2 * tx.len().max(ty.len()) + 4;
    let get = |v: &Vec<C>, k: usize| v.get(k).copied().unwrap_or_default();
    let (a2, b2) = (get(&tx, 2), get(&ty, 2));
    let scale = tx.iter().chain(ty.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    if a2.norm() + b2.norm() < 1e-9 * scale {
        return None;
    }
    // u along the tangent, v kills the τ² term
    let (ca, cb) = (a2.conj(), b2.conj());
    let mut u: Series = (0..n).map(|k| ca * get(&tx, k) + cb * get(&ty, k)).collect();
    let mut v: Series = (0..n).map(|k| -b2 * get(&tx, k) + a2 * get(&ty, k)).collect();
    u[0] = C::default();
    v[0] = C::default();
    let u2 = u[2];
    // s = √u2 · τ · √(1 + w(τ)) with w = Σ u_{k+2}/u2 τ^k
    let w: Series = (0..n).map(|k| if k == 0 { C::default() } else { get(&u, k + 2) / u2 }).collect();
    let root = sqrt1p(&w, n);
    let su2 = u2.sqrt();
    let mut phi = vec![C::default(); n];
    for k in 0..n - 1 {
        phi[k + 1] = su2 * root[k];
    }
    // invert s = φ(τ) by fixed-point iteration on τ = (s − (φ(τ) − φ1 τ))/φ1
    let p1 = phi[1];
    let mut tau = vec![C::default(); n];
    tau[1] = C::new(1.0, 0.0) / p1;
    let mut rest = phi.clone();
    rest[1] = C::default();
    for _ in 0..n {
        let h = compose(&rest, &tau, n);
        let mut next = vec![C::default(); n];
        next[1] = C::new(1.0, 0.0) / p1;
        for k in 2..n {
            next[k] = -h[k] / p1;
        }
        tau = next;
    }
    let vs = compose(&v, &tau, n);
    let vscale = vs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    (3..n).step_by(2).find(|&k| vs[k].norm() > 1e-7 * vscale).map(|k| k as i64)
}

/// Link type, multiplicity and branch count of a singular point.
pub(crate) fn singularity_data(c: &ParamCurve, cp: &CriticalPoint) -> SingularityData {
    let CriticalKind::Singular { p, r, orders } = &cp.kind else {
        unreachable!("smooth point")
    };
    let (p, r) = (*p as i64, *r as i64);
    let unknown = || SingularityData::new(
        LinkDescriptor::Given { name: "unidentified".into(), sigma: None, n: None, profile: None, c: r },
        p,
        r,
        None,
        None,
    )
    .expect("valid counts");
    if r >= 2 && orders.iter().all(|&o| o == 0) {
        let tangents: Vec<[C; 2]> = cp.preimages.iter().map(|&t| branch_tangent(c, t, 0)).collect();
        let transverse = (0..tangents.len()).all(|i| {
            (i + 1..tangents.len()).all(|j| {
                let (a, b) = (tangents[i], tangents[j]);
                let cross = (a[0] * b[1] - a[1] * b[0]).norm();
                cross > 1e-6 * (a[0].norm() + a[1].norm()) * (b[0].norm() + b[1].norm())
            })
        });
        if transverse {
            let link = LinkDescriptor::torus(r, r).expect("r ≥ 2");
            return SingularityData::new(link, p, r, Some((r - 1) * (r - 1)), None).expect("ordinary point");
        }
        return unknown();
    }
    if r == 1 && orders[0] == 1 {
        if let Some(q) = cusp_exponent(c, cp.preimages[0]) {
            let link = LinkDescriptor::torus(2, q).expect("coprime");
            return SingularityData::new(link, 2, 1, Some(q - 1), None).expect("A_{q-1}");
        }
    }
    unknown()
}

/// Directions around `t0` (at distance `delta`) in which `g` drops below
/// `level`; one per descending sector.
pub(crate) fn descending_sectors(c: &ParamCurve, t0: C, level: f64, delta: f64) -> Vec<C> {
    let n = 720;
    let pts: Vec<C> = (0..n)
        .map(|k| t0 + C::from_polar(delta, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let below: Vec<bool> = pts.iter().map(|&t| c.g(t) < level).collect();
    if below.iter().all(|&b| b) {
        return vec![pts[0]];
    }
    let start = below.iter().position(|&b| !b).unwrap();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        let i = (start + k) % n;
        if below[i] {
            // take the lowest point of this arc
            let mut best = i;
            let mut j = k;
            while j < n && below[(start + j) % n] {
                let idx = (start + j) % n;
                if c.g(pts[idx]) < c.g(pts[best]) {
                    best = idx;
                }
                j += 1;
            }
            out.push(pts[best]);
            k = j;
        } else {
            k += 1;
        }
    }
    out
}

/// Follows `−∇g` from `t` until `g < 0.9·level` (or a minimum below
/// `level`), so the end point sits well inside the sublevel set.
pub(crate) fn descend(c: &ParamCurve, mut t: C, level: f64, scale: f64) -> Option<C> {
    let mut step = 1e-4 * scale;
    let stuck = |t: C| (c.g(t) < level).then_some(t);
    for _ in 0..200_000 {
        let g = c.g(t);
        if g < 0.9 * level {
            return Some(t);
        }
        let h = c.h(t);
        if h.norm() == 0.0 {
            return stuck(t);
        }
        let dir = -h.conj() / h.norm();
        let u = t + dir * step;
        if c.g(u) < g {
            t = u;
            step *= 1.3;
        } else {
            step *= 0.5;
            if step < 1e-14 * scale {
                return stuck(t);
            }
        }
    }
    stuck(t)
}
