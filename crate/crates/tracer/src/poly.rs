use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

/// Univariate complex polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Coeff>", into = "Vec<Coeff>")]
pub struct Poly {
    c: Vec<C>,
}

/// JSON coefficient: a real number or `[re, im]`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Vec<Coeff>> for Poly {
    fn from(v: Vec<Coeff>) -> Self {
        Poly::new(
            v.into_iter()
                .map(|c| match c {
                    Coeff::Real(r) => C::new(r, 0.0),
                    Coeff::Complex([re, im]) => C::new(re, im),
                })
                .collect(),
        )
    }
}

impl From<Poly> for Vec<Coeff> {
    fn from(p: Poly) -> Self {
        p.c.iter().map(|z| Coeff::Complex([z.re, z.im])).collect()
    }
}

impl Poly {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.len() > 1 && c.last() == Some(&C::new(0.0, 0.0)) {
            c.pop();
        }
        if c.is_empty() {
            c.push(C::new(0.0, 0.0));
        }
        Poly { c }
    }

    pub fn real(c: &[f64]) -> Self {
        Poly::new(c.iter().map(|&r| C::new(r, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() == 1
    }

    pub fn eval(&self, t: C) -> C {
        self.c.iter().rev().fold(C::new(0.0, 0.0), |acc, &a| acc * t + a)
    }

    /// Value, first and second derivative.
    pub fn eval2(&self, t: C) -> (C, C, C) {
        let zero = C::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for &a in self.c.iter().rev() {
            d2 = d2 * t + d1 * 2.0;
            d1 = d1 * t + p;
            p = p * t + a;
        }
        (p, d1, d2)
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() == 1 {
            return Poly::new(vec![C::new(0.0, 0.0)]);
        }
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect())
    }

    pub fn add_constant(&self, z: C) -> Poly {
        let mut c = self.c.clone();
        c[0] += z;
        Poly::new(c)
    }

    /// Coefficients of `p(t0 + τ)` in `τ`.
    pub fn taylor(&self, t0: C) -> Vec<C> {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let v = c[j + 1] * t0;
                c[j] += v;
            }
        }
        c
    }

    /// Sum of coefficient moduli weighted by `max(1, |t|)^k`; scale for residuals.
    pub fn abs_scale(&self, t: C) -> f64 {
        let r = t.norm().max(1.0);
        self.c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
    }

    /// Every root has modulus below this.
    pub fn cauchy_bound(&self) -> f64 {
        let n = self.degree();
        if n == 0 {
            return 0.0;
        }
        let lead = self.c[n].norm();
        1.0 + self.c[..n].iter().map(|a| a.norm() / lead).fold(0.0, f64::max)
    }

    /// All roots by Aberth–Ehrlich iteration, polished by Newton.
    pub fn roots(&self) -> Vec<C> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![-self.c[0] / self.c[1]];
        }
        let d = self.derivative();
        let rad = self.cauchy_bound() * 0.5;
        let mut z: Vec<C> = (0..n)
            .map(|k| C::from_polar(rad, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
            .collect();
        for _ in 0..2000 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let p = self.eval(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / d.eval(z[i]);
                let s: C = (0..n).filter(|&j| j != i).map(|j| C::new(1.0, 0.0) / (z[i] - z[j])).sum();
                let w = ratio / (C::new(1.0, 0.0) - ratio * s);
                if w.is_finite() {
                    z[i] -= w;
                    moved = moved.max(w.norm() / (1.0 + z[i].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        // (t - 1)(t + 2)(t - i)
        let p = Poly::new(vec![
            C::new(0.0, 2.0),
            C::new(-2.0, -1.0),
            C::new(1.0, -1.0),
            C::new(1.0, 0.0),
        ]);
        let mut r = p.roots();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - C::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((r[1] - C::new(0.0, 1.0)).norm() < 1e-12);
        assert!((r[2] - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn taylor_shift() {
        let p = Poly::real(&[1.0, 2.0, 3.0]);
        let t = p.taylor(C::new(1.0, 0.0));
        assert_eq!(t, vec![C::new(6.0, 0.0), C::new(8.0, 0.0), C::new(3.0, 0.0)]);
        let (v, d1, d2) = p.eval2(C::new(2.0, 0.0));
        assert_eq!((v.re, d1.re, d2.re), (17.0, 14.0, 6.0));
    }
}
