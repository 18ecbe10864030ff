use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::poly::{Coeff, Poly};
use crate::TraceError;

/// Bivariate polynomial as a list of `(i, j, a)` meaning `a·w1^i·w2^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<(usize, usize, Coeff)>", into = "Vec<(usize, usize, Coeff)>")]
pub struct Poly2 {
    terms: Vec<(usize, usize, C)>,
}

impl From<Vec<(usize, usize, Coeff)>> for Poly2 {
    fn from(v: Vec<(usize, usize, Coeff)>) -> Self {
        Poly2::new(
            v.into_iter()
                .map(|(i, j, c)| {
                    let z = match c {
                        Coeff::Real(r) => C::new(r, 0.0),
                        Coeff::Complex([a, b]) => C::new(a, b),
                    };
                    (i, j, z)
                })
                .collect(),
        )
    }
}

impl From<Poly2> for Vec<(usize, usize, Coeff)> {
    fn from(p: Poly2) -> Self {
        p.terms.into_iter().map(|(i, j, z)| (i, j, Coeff::Complex([z.re, z.im]))).collect()
    }
}

impl Poly2 {
    pub fn new(terms: Vec<(usize, usize, C)>) -> Self {
        Poly2 { terms: terms.into_iter().filter(|t| t.2 != C::new(0.0, 0.0)).collect() }
    }

    pub fn real(terms: &[(usize, usize, f64)]) -> Self {
        Poly2::new(terms.iter().map(|&(i, j, a)| (i, j, C::new(a, 0.0))).collect())
    }

    pub fn terms(&self) -> &[(usize, usize, C)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0)
    }

    pub fn eval(&self, w: [C; 2]) -> C {
        self.terms.iter().map(|&(i, j, a)| a * w[0].powu(i as u32) * w[1].powu(j as u32)).sum()
    }

    /// `(F, ∂F/∂w1, ∂F/∂w2)`.
    pub fn eval_grad(&self, w: [C; 2]) -> (C, C, C) {
        let zero = C::new(0.0, 0.0);
        let (mut f, mut f1, mut f2) = (zero, zero, zero);
        for &(i, j, a) in &self.terms {
            let pi = w[0].powu(i as u32);
            let pj = w[1].powu(j as u32);
            f += a * pi * pj;
            if i > 0 {
                f1 += a * (i as f64) * w[0].powu(i as u32 - 1) * pj;
            }
            if j > 0 {
                f2 += a * (j as f64) * pi * w[1].powu(j as u32 - 1);
            }
        }
        (f, f1, f2)
    }

    /// `F(w1, ·)` as a polynomial in `w2`.
    pub fn in_w2(&self, w1: C) -> Poly {
        let n = self.terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut c = vec![C::new(0.0, 0.0); n + 1];
        for &(i, j, a) in &self.terms {
            c[j] += a * w1.powu(i as u32);
        }
        Poly::new(c)
    }

    /// Term moduli weighted by `max(1, |w_i|)` powers; scale for residuals.
    pub fn abs_scale(&self, w: [C; 2]) -> f64 {
        let (r1, r2) = (w[0].norm().max(1.0), w[1].norm().max(1.0));
        self.terms
            .iter()
            .map(|&(i, j, a)| a.norm() * r1.powi(i as i32) * r2.powi(j as i32))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Parametric { x: Poly, y: Poly },
    Implicit { f: Poly2 },
}

/// A plane curve and the centre `ξ` of the spheres slicing it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(flatten)]
    pub kind: CurveKind,
    /// `[Re ξ1, Im ξ1, Re ξ2, Im ξ2]`
    pub center: [f64; 4],
}

impl CurveSpec {
    pub fn parametric(x: Poly, y: Poly, xi: [C; 2]) -> Self {
        CurveSpec {
            kind: CurveKind::Parametric { x, y },
            center: [xi[0].re, xi[0].im, xi[1].re, xi[1].im],
        }
    }

    pub fn implicit(f: Poly2, xi: [C; 2]) -> Self {
        CurveSpec { kind: CurveKind::Implicit { f }, center: [xi[0].re, xi[0].im, xi[1].re, xi[1].im] }
    }

    pub fn xi(&self) -> [C; 2] {
        [C::new(self.center[0], self.center[1]), C::new(self.center[2], self.center[3])]
    }

    pub fn with_center(&self, xi: [C; 2]) -> Self {
        CurveSpec { kind: self.kind.clone(), center: [xi[0].re, xi[0].im, xi[1].re, xi[1].im] }
    }

    /// Degree of the curve.
    pub fn degree(&self) -> usize {
        match &self.kind {
            CurveKind::Parametric { x, y } => x.degree().max(y.degree()),
            CurveKind::Implicit { f } => f.degree(),
        }
    }

    pub fn validate(&self) -> Result<(), TraceError> {
        if self.center.iter().any(|v| !v.is_finite()) {
            return Err(TraceError::BadSpec("non-finite centre".into()));
        }
        match &self.kind {
            CurveKind::Parametric { x, y } => {
                if x.is_constant() && y.is_constant() {
                    return Err(TraceError::BadSpec("both coordinate polynomials are constant".into()));
                }
                if x.coeffs().iter().chain(y.coeffs()).any(|z| !z.is_finite()) {
                    return Err(TraceError::BadSpec("non-finite coefficient".into()));
                }
            }
            CurveKind::Implicit { f } => {
                if f.degree() == 0 {
                    return Err(TraceError::BadSpec("constant implicit polynomial".into()));
                }
            }
        }
        Ok(())
    }

    pub fn as_parametric(&self) -> Result<ParamCurve, TraceError> {
        match &self.kind {
            CurveKind::Parametric { x, y } => Ok(ParamCurve::new(x.clone(), y.clone(), self.xi())),
            CurveKind::Implicit { .. } => Err(TraceError::BadSpec("expected a parametric curve".into())),
        }
    }
}

/// `t ↦ (x(t), y(t))` together with the pulled-back squared distance
/// `g = |x − ξ1|² + |y − ξ2|²`.
#[derive(Clone, Debug)]
pub struct ParamCurve {
    pub x: Poly,
    pub y: Poly,
    pub xi: [C; 2],
    /// `x − ξ1`, `y − ξ2`
    rx: Poly,
    ry: Poly,
}

/// Local data of `g` at a parameter: `h = ∂g/∂t`, `A = ∂h/∂t`, `B = ∂h/∂t̄`.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    pub g: f64,
    pub h: C,
    pub a: C,
    pub b: f64,
}

impl ParamCurve {
    pub fn new(x: Poly, y: Poly, xi: [C; 2]) -> Self {
        let rx = x.add_constant(-xi[0]);
        let ry = y.add_constant(-xi[1]);
        ParamCurve { x, y, xi, rx, ry }
    }

    pub fn point(&self, t: C) -> [C; 2] {
        [self.x.eval(t), self.y.eval(t)]
    }

    /// Point relative to the centre.
    pub fn rel(&self, t: C) -> [C; 2] {
        [self.rx.eval(t), self.ry.eval(t)]
    }

    pub fn g(&self, t: C) -> f64 {
        let [a, b] = self.rel(t);
        a.norm_sqr() + b.norm_sqr()
    }

    pub fn h(&self, t: C) -> C {
        let (x, x1, _) = self.rx.eval2(t);
        let (y, y1, _) = self.ry.eval2(t);
        x1 * x.conj() + y1 * y.conj()
    }

    pub fn jet(&self, t: C) -> Jet {
        let (x, x1, x2) = self.rx.eval2(t);
        let (y, y1, y2) = self.ry.eval2(t);
        Jet {
            g: x.norm_sqr() + y.norm_sqr(),
            h: x1 * x.conj() + y1 * y.conj(),
            a: x2 * x.conj() + y2 * y.conj(),
            b: x1.norm_sqr() + y1.norm_sqr(),
        }
    }

    /// Magnitude against which `h` is compared.
    pub fn h_scale(&self, t: C) -> f64 {
        let d = self.rx.derivative().abs_scale(t) * self.rx.abs_scale(t)
            + self.ry.derivative().abs_scale(t) * self.ry.abs_scale(t);
        d.max(1e-300)
    }

    /// Velocity `(x'(t), y'(t))`.
    pub fn velocity(&self, t: C) -> [C; 2] {
        [self.rx.eval2(t).1, self.ry.eval2(t).1]
    }

    /// Radius beyond which no critical point of `g` lies, up to a safety factor.
    pub fn seed_radius(&self) -> f64 {
        2.0 * self.rx.cauchy_bound().max(self.ry.cauchy_bound()).max(1.0)
    }

    /// Image of `t` in real 4-space, relative to the centre.
    pub fn rel4(&self, t: C) -> [f64; 4] {
        let [a, b] = self.rel(t);
        [a.re, a.im, b.re, b.im]
    }

    pub fn rx(&self) -> &Poly {
        &self.rx
    }

    pub fn ry(&self) -> &Poly {
        &self.ry
    }
}
