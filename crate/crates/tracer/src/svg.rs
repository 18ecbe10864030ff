//! Planar diagrams of traced links with gaps at under-crossings.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::link::Projection;
use crate::trace::LinkSnapshot;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// `link_r<radius>.svg`
pub fn file_name(r: f64) -> String {
    format!("link_r{r}.svg")
}

fn project(s: &LinkSnapshot, center: [f64; 4]) -> Vec<Vec<[f64; 3]>> {
    let proj = Projection::new(s.diagnostics.pole);
    s.components
        .iter()
        .map(|c| {
            c.iter()
                .map(|p| {
                    let u = [0, 1, 2, 3].map(|i| (p[i] - center[i]) / s.r);
                    proj.apply(&u)
                })
                .collect()
        })
        .collect()
}

/// Crossing of segments `a0a1` and `b0b1` in the plane: parameters on both.
fn crossing(a0: [f64; 3], a1: [f64; 3], b0: [f64; 3], b1: [f64; 3]) -> Option<(f64, f64)> {
    let (dx, dy) = (a1[0] - a0[0], a1[1] - a0[1]);
    let (ex, ey) = (b1[0] - b0[0], b1[1] - b0[1]);
    let den = dx * ey - dy * ex;
    if den.abs() < 1e-300 {
        return None;
    }
    let (fx, fy) = (b0[0] - a0[0], b0[1] - a0[1]);
    let s = (fx * ey - fy * ex) / den;
    let t = (fx * dy - fy * dx) / den;
    ((0.0..1.0).contains(&s) && (0.0..1.0).contains(&t)).then_some((s, t))
}

/// SVG document of the snapshot projected from its recorded pole.
pub fn render(s: &LinkSnapshot, center: [f64; 4]) -> String {
    let comps = project(s, center);
    let segs: Vec<(usize, usize)> =
        comps.iter().enumerate().flat_map(|(i, c)| (0..c.len()).map(move |k| (i, k))).collect();
    let seg = |(i, k): (usize, usize)| (comps[i][k], comps[i][(k + 1) % comps[i].len()]);
    // parameters along each under-segment where a gap goes
    let mut gaps: Vec<Vec<Vec<f64>>> = comps.iter().map(|c| vec![Vec::new(); c.len()]).collect();
    for x in 0..segs.len() {
        for y in x + 1..segs.len() {
            let (a, b) = (segs[x], segs[y]);
            if a.0 == b.0 && (a.1.abs_diff(b.1) <= 1 || a.1.abs_diff(b.1) + 1 == comps[a.0].len()) {
                continue;
            }
            let ((a0, a1), (b0, b1)) = (seg(a), seg(b));
            if let Some((sa, sb)) = crossing(a0, a1, b0, b1) {
                let za = a0[2] + sa * (a1[2] - a0[2]);
                let zb = b0[2] + sb * (b1[2] - b0[2]);
                if za < zb {
                    gaps[a.0][a.1].push(sa);
                } else {
                    gaps[b.0][b.1].push(sb);
                }
            }
        }
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in comps.iter().flatten() {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let size = 600.0;
    let map = |p: [f64; 3]| (20.0 + (p[0] - lo[0]) / span * (size - 40.0), 20.0 + (hi[1] - p[1]) / span * (size - 40.0));
    let half_gap = 0.012 * span;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(out, "<title>r = {}, c = {}</title>", s.r, s.c);
    for (i, c) in comps.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut path = String::new();
        let mut pen_down = false;
        for k in 0..c.len() {
            let (a, b) = seg((i, k));
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt().max(1e-300);
            let w = half_gap / len;
            let mut cuts: Vec<(f64, f64)> = gaps[i][k].iter().map(|&t| (t - w, t + w)).collect();
            cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut t = 0.0;
            let at = |u: f64| [a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]), 0.0];
            for (c0, c1) in cuts {
                if c0 > t {
                    if !pen_down {
                        let (x, y) = map(at(t));
                        let _ = write!(path, "M{x:.2},{y:.2}");
                    }
                    let (x, y) = map(at(c0));
                    let _ = write!(path, "L{x:.2},{y:.2}");
                }
                pen_down = false;
                t = t.max(c1);
            }
            if t < 1.0 {
                if !pen_down {
                    let (x, y) = map(at(t));
                    let _ = write!(path, "M{x:.2},{y:.2}");
                    pen_down = true;
                }
                let (x, y) = map(at(1.0));
                let _ = write!(path, "L{x:.2},{y:.2}");
            }
        }
        let _ = writeln!(out, "<path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>");
    }
    out.push_str("</svg>\n");
    out
}

/// Writes `link_r<radius>.svg` into `dir`.
pub fn write_svg(s: &LinkSnapshot, center: [f64; 4], dir: &Path) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(file_name(s.r));
    std::fs::write(&path, render(s, center))?;
    Ok(path)
}
