use nalgebra::{Matrix3, Matrix4, SMatrix, Vector3, Vector4};
use num_complex::Complex64 as C;

use crate::critical::{CriticalKind, CriticalPoint};
use crate::curve::Poly2;
use crate::TraceError;

/// `conj(∂F/∂w1)·(w2 − ξ2) − conj(∂F/∂w2)·(w1 − ξ1)`; vanishes where the
/// sphere about `ξ` through `w` is tangent to the curve (and at singular points).
pub fn transversality_det(f: &Poly2, xi: [C; 2], w: [C; 2]) -> C {
    let (_, f1, f2) = f.eval_grad(w);
    f1.conj() * (w[1] - xi[1]) - f2.conj() * (w[0] - xi[0])
}

fn to4(w: [C; 2]) -> Vector4<f64> {
    Vector4::new(w[0].re, w[0].im, w[1].re, w[1].im)
}

fn to2(z: &Vector4<f64>) -> [C; 2] {
    [C::new(z[0], z[1]), C::new(z[2], z[3])]
}

fn swap(f: &Poly2) -> Poly2 {
    Poly2::new(f.terms().iter().map(|&(i, j, a)| (j, i, a)).collect())
}

/// Points of `F = 0` over a grid of first (and second) coordinates.
fn curve_samples(f: &Poly2, xi: [C; 2], radius: f64, n: usize) -> Vec<[C; 2]> {
    let mut out = Vec::new();
    let g = swap(f);
    for i in 0..=n {
        for j in 0..=n {
            let d = C::new(
                -radius + 2.0 * radius * i as f64 / n as f64,
                -radius + 2.0 * radius * j as f64 / n as f64,
            );
            if d.norm() > radius {
                continue;
            }
            for w2 in f.in_w2(xi[0] + d).roots() {
                out.push([xi[0] + d, w2]);
            }
            for w1 in g.in_w2(xi[1] + d).roots() {
                out.push([w1, xi[1] + d]);
            }
        }
    }
    out
}

fn second_derivs(f: &Poly2, w: [C; 2]) -> (C, C, C) {
    let h = 1e-6 * (1.0 + w[0].norm() + w[1].norm());
    let (_, a1, a2) = f.eval_grad([w[0] + h, w[1]]);
    let (_, b1, b2) = f.eval_grad([w[0] - h, w[1]]);
    let (_, _, c2) = f.eval_grad([w[0], w[1] + h]);
    let (_, _, d2) = f.eval_grad([w[0], w[1] - h]);
    ((a1 - b1) / (2.0 * h), (a2 - b2) / (2.0 * h), (c2 - d2) / (2.0 * h))
}

fn crit_residual(f: &Poly2, xi: [C; 2], z: &Vector4<f64>) -> Vector4<f64> {
    let w = to2(z);
    let fv = f.eval(w);
    let j = transversality_det(f, xi, w);
    Vector4::new(fv.re, fv.im, j.re, j.im)
}

fn newton_crit(f: &Poly2, xi: [C; 2], w: [C; 2]) -> Option<[C; 2]> {
    let mut z = to4(w);
    for _ in 0..60 {
        let e = crit_residual(f, xi, &z);
        let h = 1e-7 * (1.0 + z.norm());
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            let mut zp = z;
            let mut zm = z;
            zp[k] += h;
            zm[k] -= h;
            m.set_column(k, &((crit_residual(f, xi, &zp) - crit_residual(f, xi, &zm)) / (2.0 * h)));
        }
        let d = m.svd(true, true).solve(&(-e), 1e-12).ok()?;
        z += d;
        if !z.iter().all(|v| v.is_finite()) {
            return None;
        }
        if d.norm() < 1e-14 * (1.0 + z.norm()) {
            break;
        }
    }
    let w = to2(&z);
    let fs = coef_scale(f, w);
    let (_, f1, f2) = f.eval_grad(w);
    let js = (f1.norm() + f2.norm()) * (1.0 + (w[0] - xi[0]).norm() + (w[1] - xi[1]).norm());
    (f.eval(w).norm() < 1e-9 * fs && transversality_det(f, xi, w).norm() < 1e-7 * js.max(fs)).then_some(w)
}

/// Size of the terms of `F` near `w`, never zero.
fn coef_scale(f: &Poly2, w: [C; 2]) -> f64 {
    let m = f.terms().iter().map(|t| t.2.norm()).fold(0.0, f64::max);
    m * (1.0 + w[0].norm() + w[1].norm()).powi(f.degree() as i32)
}

fn is_singular(f: &Poly2, w: [C; 2]) -> bool {
    let (v, f1, f2) = f.eval_grad(w);
    let s = coef_scale(f, w);
    v.norm() < 1e-10 * s && f1.norm() + f2.norm() < 1e-8 * s
}

/// Newton on `∂F/∂w1 = ∂F/∂w2 = 0`.
fn polish_singular(f: &Poly2, mut w: [C; 2]) -> [C; 2] {
    for _ in 0..40 {
        let (_, f1, f2) = f.eval_grad(w);
        let (h11, h12, h22) = second_derivs(f, w);
        let det = h11 * h22 - h12 * h12;
        if det.norm() == 0.0 {
            break;
        }
        let d1 = (f1 * h22 - h12 * f2) / det;
        let d2 = (h11 * f2 - h12 * f1) / det;
        if !(d1.is_finite() && d2.is_finite()) {
            break;
        }
        w = [w[0] - d1, w[1] - d2];
        if d1.norm() + d2.norm() < 1e-15 * (1.0 + w[0].norm() + w[1].norm()) {
            break;
        }
    }
    w
}

/// Lowest degree present in the Taylor expansion of `F` at `w0`.
fn multiplicity(f: &Poly2, w0: [C; 2]) -> usize {
    let d = f.degree();
    let mut coef = vec![vec![C::new(0.0, 0.0); d + 1]; d + 1];
    let binom = |n: usize, k: usize| -> f64 { (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    for &(i, j, a) in f.terms() {
        for k in 0..=i {
            for l in 0..=j {
                coef[k][l] += a
                    * binom(i, k)
                    * binom(j, l)
                    * w0[0].powu((i - k) as u32)
                    * w0[1].powu((j - l) as u32);
            }
        }
    }
    let scale = f.abs_scale(w0).max(f.terms().iter().map(|t| t.2.norm()).fold(0.0, f64::max));
    (0..=2 * d)
        .find(|&m| (0..=m.min(d)).any(|k| m - k <= d && coef[k][m - k].norm() > 1e-7 * scale))
        .unwrap_or(0)
}

pub(crate) fn implicit_critical_points(f: &Poly2, xi: [C; 2]) -> Result<Vec<CriticalPoint>, TraceError> {
    let radius = 6.0 * (1.0 + xi[0].norm() + xi[1].norm());
    let mut found: Vec<[C; 2]> = Vec::new();
    let samples = curve_samples(f, xi, radius, 28);
    for &s in &samples {
        let Some(w) = newton_crit(f, xi, s) else { continue };
        if found.iter().any(|u| (u[0] - w[0]).norm() + (u[1] - w[1]).norm() < 1e-6 * (1.0 + w[0].norm())) {
            continue;
        }
        found.push(w);
    }
    let mut out = Vec::new();
    let mut singular: Vec<[C; 2]> = Vec::new();
    // singular points straight from the gradient system; Newton on the
    // transversality system is unreliable there
    for s in &samples {
        let w = polish_singular(f, *s);
        if is_singular(f, w) && !singular.iter().any(|u| (u[0] - w[0]).norm() + (u[1] - w[1]).norm() < 1e-6 * (1.0 + w[0].norm())) {
            singular.push(w);
        }
    }
    for &w in &singular {
        let p = multiplicity(f, w);
        let eps = 1e-3 * (1.0 + w[0].norm() + w[1].norm());
        let r = implicit_link(f, w, eps).map(|(c, _, _)| c.len()).unwrap_or(0);
        let rho = ((w[0] - xi[0]).norm_sqr() + (w[1] - xi[1]).norm_sqr()).sqrt();
        out.push(CriticalPoint {
            preimages: Vec::new(),
            point: w,
            rho,
            kind: CriticalKind::Singular { p, r, orders: Vec::new() },
            hessian: None,
        });
    }
    for w in found {
        let near_singular =
            singular.iter().any(|u| (u[0] - w[0]).norm() + (u[1] - w[1]).norm() < 1e-4 * (1.0 + w[0].norm()));
        if near_singular || is_singular(f, w) {
            continue;
        }
        let (_, f1, f2) = f.eval_grad(w);
        let rho = ((w[0] - xi[0]).norm_sqr() + (w[1] - xi[1]).norm_sqr()).sqrt();
        // local parametrisation w0 + vτ + qτ²/2 of the smooth branch
        let v = [-f2, f1];
        let (h11, h12, h22) = second_derivs(f, w);
        let vhv = v[0] * v[0] * h11 + v[0] * v[1] * h12 * 2.0 + v[1] * v[1] * h22;
        let g2 = f1.norm_sqr() + f2.norm_sqr();
        let q = [-vhv * f1.conj() / g2, -vhv * f2.conj() / g2];
        let u = [w[0] - xi[0], w[1] - xi[1]];
        let a = (q[0] * u[0].conj() + q[1] * u[1].conj()).norm();
        let b = v[0].norm_sqr() + v[1].norm_sqr();
        out.push(CriticalPoint {
            preimages: Vec::new(),
            point: w,
            rho,
            kind: CriticalKind::Smooth { index: if b > a { 0 } else { 1 } },
            hessian: Some((b * b - a * a) / (b * b)),
        });
    }
    out.sort_by(|a, b| a.rho.total_cmp(&b.rho));
    Ok(out)
}

struct Slicer<'a> {
    f: &'a Poly2,
    xi: [C; 2],
    r2: f64,
}

impl Slicer<'_> {
    fn residual(&self, z: &Vector4<f64>) -> Vector3<f64> {
        let w = to2(z);
        let fv = f_eval(self.f, w);
        let g = (w[0] - self.xi[0]).norm_sqr() + (w[1] - self.xi[1]).norm_sqr();
        Vector3::new(fv.re, fv.im, g - self.r2)
    }

    fn jacobian(&self, z: &Vector4<f64>) -> SMatrix<f64, 3, 4> {
        let w = to2(z);
        let (_, f1, f2) = self.f.eval_grad(w);
        let x = [z[0] - self.xi[0].re, z[1] - self.xi[0].im, z[2] - self.xi[1].re, z[3] - self.xi[1].im];
        SMatrix::<f64, 3, 4>::new(
            f1.re, -f1.im, f2.re, -f2.im,
            f1.im, f1.re, f2.im, f2.re,
            2.0 * x[0], 2.0 * x[1], 2.0 * x[2], 2.0 * x[3],
        )
    }

    fn correct(&self, mut z: Vector4<f64>) -> Option<Vector4<f64>> {
        for _ in 0..30 {
            let e = self.residual(&z);
            let j = self.jacobian(&z);
            let jjt: Matrix3<f64> = j * j.transpose();
            let y = jjt.lu().solve(&e)?;
            let d = j.transpose() * y;
            z -= d;
            if d.norm() < 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        self.on_curve(&z).then_some(z)
    }

    fn on_curve(&self, z: &Vector4<f64>) -> bool {
        let w = to2(z);
        let e = self.residual(z);
        (e[0].hypot(e[1])) <= 1e-10 * self.f.abs_scale(w).max(1e-300) && e[2].abs() <= 1e-10 * self.r2
    }

    /// Unit tangent oriented as the boundary of the curve inside the ball.
    fn tangent(&self, z: &Vector4<f64>) -> Option<Vector4<f64>> {
        let j = self.jacobian(z);
        let mut t = Vector4::zeros();
        for k in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
            let m = Matrix3::from_fn(|r, c| j[(r, cols[c])]);
            t[k] = if k % 2 == 0 { m.determinant() } else { -m.determinant() };
        }
        let n = t.norm();
        if n == 0.0 {
            return None;
        }
        let w = to2(z);
        let (_, f1, f2) = self.f.eval_grad(w);
        let v = [-f2, f1];
        let u = [w[0] - self.xi[0], w[1] - self.xi[1]];
        let vv = v[0].norm_sqr() + v[1].norm_sqr();
        let c = (u[0] * v[0].conj() + u[1] * v[1].conj()) / vv;
        let i = C::new(0.0, 1.0);
        let reference = to4([i * c * v[0], i * c * v[1]]);
        let t = t / n;
        Some(if t.dot(&reference) < 0.0 { -t } else { t })
    }
}

fn f_eval(f: &Poly2, w: [C; 2]) -> C {
    f.eval(w)
}

fn trace_closed4(s: &Slicer, z0: Vector4<f64>, r: f64) -> Result<(Vec<Vector4<f64>>, f64), TraceError> {
    let max_step = 0.05 * r;
    let floor = 1e-9 * r;
    let mut step = 1e-3 * r;
    let mut pts = vec![z0];
    let mut z = z0;
    let mut tan = s.tangent(&z0).ok_or(TraceError::StepUnderflow { r })?;
    let tan0 = tan;
    let mut arc = 0.0;
    for _ in 0..2_000_000 {
        let pred = z + tan * step;
        let next = s.correct(pred).and_then(|u| {
            let nt = s.tangent(&u)?;
            ((u - pred).norm() < 0.3 * step && nt.dot(&tan) > 0.95).then_some((u, nt))
        });
        let Some((u, nt)) = next else {
            step *= 0.5;
            if step < floor {
                return Err(TraceError::StepUnderflow { r });
            }
            continue;
        };
        let turn = nt.dot(&tan).clamp(-1.0, 1.0).acos();
        arc += (u - z).norm();
        z = u;
        tan = nt;
        pts.push(z);
        let to_start = z0 - z;
        if arc > 4.0 * step && to_start.norm() < 1.5 * step && to_start.dot(&tan) > 0.0 && tan.dot(&tan0) > 0.5 {
            let mut y = z;
            for _ in 0..30 {
                let t = s.tangent(&y).unwrap_or(tan);
                match s.correct(y + t * (z0 - y).dot(&t)) {
                    Some(u) => y = u,
                    None => break,
                }
                if (y - z0).norm() < 1e-13 * (1.0 + z0.norm()) {
                    break;
                }
            }
            return Ok((pts, (y - z0).norm()));
        }
        if turn < 0.05 {
            step = (step * 1.5).min(max_step);
        } else if turn > 0.15 {
            step *= 0.7;
        }
    }
    Err(TraceError::OpenComponent { r, gap: f64::INFINITY })
}

fn resample4(s: &Slicer, pts: &[Vector4<f64>], n: usize) -> Vec<Vector4<f64>> {
    let m = pts.len();
    let mut cum = vec![0.0];
    for i in 0..m {
        cum.push(cum[i] + (pts[(i + 1) % m] - pts[i]).norm());
    }
    let total = cum[m];
    let mut seg = 0;
    (0..n)
        .map(|k| {
            let at = total * k as f64 / n as f64;
            while seg + 1 < m && cum[seg + 1] <= at {
                seg += 1;
            }
            let len = cum[seg + 1] - cum[seg];
            let f = if len > 0.0 { (at - cum[seg]) / len } else { 0.0 };
            let z = pts[seg] + (pts[(seg + 1) % m] - pts[seg]) * f;
            s.correct(z).unwrap_or(z)
        })
        .collect()
}

fn polyline_distance(c: &[Vector4<f64>], z: &Vector4<f64>) -> f64 {
    (0..c.len())
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            let d = b - a;
            let l2 = d.norm_squared();
            let f = if l2 > 0.0 { ((z - a).dot(&d) / l2).clamp(0.0, 1.0) } else { 0.0 };
            (a + d * f - z).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Components of `{F = 0} ∩ S(ξ, r)` relative to `ξ`, with the largest
/// relative level residual and closure gap.
#[allow(clippy::type_complexity)]
pub(crate) fn implicit_link(f: &Poly2, xi: [C; 2], r: f64) -> Result<(Vec<Vec<[f64; 4]>>, f64, f64), TraceError> {
    let s = Slicer { f, xi, r2: r * r };
    let mut traced: Vec<Vec<Vector4<f64>>> = Vec::new();
    let mut raw: Vec<Vec<Vector4<f64>>> = Vec::new();
    let mut gap: f64 = 0.0;
    for w in curve_samples(f, xi, r * 1.0001, 64) {
        let g = (w[0] - xi[0]).norm_sqr() + (w[1] - xi[1]).norm_sqr();
        if (g - r * r).abs() > 0.5 * r * r {
            continue;
        }
        let Some(z) = s.correct(to4(w)) else { continue };
        // raw steps are at most 0.05·r with small turning, so chords stay
        // within about 1e-3·r of the curve
        if raw.iter().any(|c| polyline_distance(c, &z) < 5e-3 * r) {
            continue;
        }
        let (pts, g) = trace_closed4(&s, z, r)?;
        gap = gap.max(g / r);
        traced.push(resample4(&s, &pts, crate::trace::RESAMPLE));
        raw.push(pts);
    }
    let mut level: f64 = 0.0;
    let comps = traced
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|z| {
                    let w = to2(&z);
                    let g = (w[0] - xi[0]).norm_sqr() + (w[1] - xi[1]).norm_sqr();
                    level = level.max((g - r * r).abs() / (r * r));
                    [z[0] - xi[0].re, z[1] - xi[0].im, z[2] - xi[1].re, z[3] - xi[1].im]
                })
                .collect()
        })
        .collect();
    Ok((comps, level, gap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> Poly2 {
        Poly2::real(&[(3, 0, 1.0), (2, 0, -1.0), (0, 2, -1.0)])
    }

    #[test]
    fn determinant_examples() {
        let line = Poly2::real(&[(1, 0, 1.0)]);
        let z = C::new(0.0, 0.0);
        let one = C::new(1.0, 0.0);
        // F = w1 gives conj(1)·(1 − 0) − 0 = 1
        assert_eq!(transversality_det(&line, [z, z], [z, one]), one);
        let xi = [C::new(-1.0, 0.0), z];
        assert_eq!(transversality_det(&cubic(), xi, [z, z]).norm(), 0.0);
        // (1, 0) is a smooth point of the cubic where the circle is tangent (the
        // real saddle); (2, 2) is generic
        let w = [C::new(2.0, 0.0), C::new(2.0, 0.0)];
        assert!(transversality_det(&cubic(), xi, w).norm() > 1.0);
    }

    #[test]
    fn small_sphere_around_the_node_meets_two_branches() {
        let (c, _, _) = implicit_link(&cubic(), [C::new(0.0, 0.0), C::new(0.0, 0.0)], 1e-2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(multiplicity(&cubic(), [C::new(0.0, 0.0), C::new(0.0, 0.0)]), 2);
    }
}
