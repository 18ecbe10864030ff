use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pole of the stereographic projection plus an orthonormal frame of its
/// complement, oriented so the projection preserves orientation.
#[derive(Clone, Copy, Debug)]
pub struct Projection {
    pub pole: [f64; 4],
    basis: [[f64; 4]; 3],
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for i in col + 1..4 {
            let f = a[i][col] / a[col][col];
            for j in col..4 {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    det
}

impl Projection {
    pub fn new(pole: [f64; 4]) -> Self {
        let mut basis: Vec<[f64; 4]> = Vec::new();
        let mut frame = vec![pole];
        for e in 0..4 {
            let mut v = [0.0; 4];
            v[e] = 1.0;
            for f in &frame {
                let d = dot4(&v, f);
                for i in 0..4 {
                    v[i] -= d * f[i];
                }
            }
            let n = dot4(&v, &v).sqrt();
            if n > 1e-6 && basis.len() < 3 {
                let v = v.map(|x| x / n);
                frame.push(v);
                basis.push(v);
            }
        }
        let mut b = [basis[0], basis[1], basis[2]];
        // (outward normal at the antipode, e1, e2, e3) must be positive
        if det4([pole.map(|x| -x), b[0], b[1], b[2]]) < 0.0 {
            b[2] = b[2].map(|x| -x);
        }
        Projection { pole, basis: b }
    }

    /// Projects a point of the unit sphere to real 3-space.
    pub fn apply(&self, p: &[f64; 4]) -> [f64; 3] {
        let s = 1.0 - dot4(p, &self.pole);
        [0, 1, 2].map(|i| dot4(p, &self.basis[i]) / s)
    }
}

/// Picks a pole on the unit sphere far from every point; deterministic.
pub fn choose_pole(points: &[[f64; 4]]) -> (Projection, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = ([1.0, 0.0, 0.0, 0.0], -1.0);
    for round in 0..2 {
        let n = if round == 0 { 256 } else { 2048 };
        let mut k = 0;
        while k < n {
            let v: [f64; 4] = [0; 4].map(|_| rng.gen_range(-1.0..1.0));
            let len = dot4(&v, &v).sqrt();
            if !(0.1..=1.0).contains(&len) {
                continue;
            }
            k += 1;
            let v = v.map(|x| x / len);
            let d = points
                .iter()
                .map(|p| {
                    let e = [p[0] - v[0], p[1] - v[1], p[2] - v[2], p[3] - v[3]];
                    dot4(&e, &e)
                })
                .fold(f64::INFINITY, f64::min)
                .sqrt();
            if d > best.1 {
                best = (v, d);
            }
        }
        // re-select with more candidates when the pole is too close to the link
        if best.1 >= 0.05 {
            break;
        }
    }
    (Projection::new(best.0), best.1)
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: [f64; 3]) -> [f64; 3] {
    let n = dot3(a, a).sqrt();
    if n == 0.0 {
        a
    } else {
        a.map(|x| x / n)
    }
}

/// Gauss linking integral of two closed polygons, exact per segment pair
/// (signed solid angle of the quadrilateral they span).
pub fn gauss_linking(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let mut total = 0.0;
    for i in 0..a.len() {
        let (a1, a2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (b1, b2) = (b[j], b[(j + 1) % b.len()]);
            let r13 = sub(b1, a1);
            let r14 = sub(b2, a1);
            let r23 = sub(b1, a2);
            let r24 = sub(b2, a2);
            let n1 = unit(cross(r13, r14));
            let n2 = unit(cross(r14, r24));
            let n3 = unit(cross(r24, r23));
            let n4 = unit(cross(r23, r13));
            let asin = |x: f64| x.clamp(-1.0, 1.0).asin();
            let omega = asin(dot3(n1, n2)) + asin(dot3(n2, n3)) + asin(dot3(n3, n4)) + asin(dot3(n4, n1));
            let s = dot3(cross(sub(b2, b1), sub(a2, a1)), r13);
            total += omega * s.signum();
        }
    }
    total / (4.0 * std::f64::consts::PI)
}

/// Rounded linking matrix of closed curves on the unit sphere, with the
/// largest rounding residual, the projection and the pole clearance.
pub fn linking_matrix(comps: &[Vec<[f64; 4]>]) -> (Vec<Vec<i64>>, f64, Projection, f64) {
    let all: Vec<[f64; 4]> = comps.iter().flatten().copied().collect();
    let (proj, clearance) = choose_pole(&all);
    let projected: Vec<Vec<[f64; 3]>> = comps.iter().map(|c| c.iter().map(|p| proj.apply(p)).collect()).collect();
    let n = comps.len();
    let mut m = vec![vec![0i64; n]; n];
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let v = gauss_linking(&projected[i], &projected[j]);
            let k = v.round();
            residual = residual.max((v - k).abs());
            m[i][j] = k as i64;
            m[j][i] = k as i64;
        }
    }
    (m, residual, proj, clearance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_lines_form_a_positive_hopf_link() {
        let n = 200;
        let circle = |which: usize| -> Vec<[f64; 4]> {
            (0..n)
                .map(|k| {
                    let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    if which == 0 {
                        [th.cos(), th.sin(), 0.0, 0.0]
                    } else {
                        [0.0, 0.0, th.cos(), th.sin()]
                    }
                })
                .collect()
        };
        let (m, res, _, clearance) = linking_matrix(&[circle(0), circle(1)]);
        assert_eq!(m[0][1], 1);
        assert!(res < 0.05 && clearance > 0.05);
    }
}
