use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::SeifertMatrix;
use crate::rank::generic_corank;
use crate::SeifertError;

/// Relative zero threshold for eigenvalues.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaResult {
    pub positive: usize,
    pub negative: usize,
    pub sigma: i64,
    pub nullity: usize,
    /// `nullity + 1`
    pub n_link: usize,
}

impl InertiaResult {
    fn from_counts(positive: usize, negative: usize, nullity: usize) -> Self {
        InertiaResult {
            positive,
            negative,
            sigma: positive as i64 - negative as i64,
            nullity,
            n_link: nullity + 1,
        }
    }
}

/// `(1-ζ)V + (1-ζ̄)V^T` with `ζ = exp(2πix)`.
pub fn tl_form(v: &SeifertMatrix, x: f64) -> Result<DMatrix<Complex<f64>>, SeifertError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(SeifertError::OutOfRange(x));
    }
    let zeta = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * x);
    let one = Complex::new(1.0, 0.0);
    let (a, b) = (one - zeta, one - zeta.conj());
    let n = v.size();
    Ok(DMatrix::from_fn(n, n, |i, j| a * v.get(i, j) as f64 + b * v.get(j, i) as f64))
}

/// Inertia of a Hermitian matrix with zero threshold `tol·‖H‖`.
///
/// Eigenvalues within `[0.1, 10]` times the threshold are refused.
pub fn inertia(h: &DMatrix<Complex<f64>>, tol: f64) -> Result<InertiaResult, SeifertError> {
    if h.nrows() == 0 {
        return Ok(InertiaResult::from_counts(0, 0, 0));
    }
    let eig = h.clone().symmetric_eigenvalues();
    let norm = eig.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    if norm == 0.0 {
        return Ok(InertiaResult::from_counts(0, 0, h.nrows()));
    }
    let thr = tol * norm;
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for &e in eig.iter() {
        let a = e.abs();
        if a >= 0.1 * thr && a <= 10.0 * thr {
            return Err(SeifertError::IllConditioned { value: e, threshold: thr });
        }
        if a < thr {
            zero += 1;
        } else if e > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Ok(InertiaResult::from_counts(pos, neg, zero))
}

/// Inertia of the form at `x` itself (no regularisation).
pub fn signature_nullity(v: &SeifertMatrix, x: f64) -> Result<InertiaResult, SeifertError> {
    inertia(&tl_form(v, x)?, DEFAULT_TOL)
}

/// Right limit `(σ*, n*)` at `x`; `n*` is the generic corank plus one.
pub fn signature_nullity_star(v: &SeifertMatrix, x: f64) -> Result<(i64, usize), SeifertError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(SeifertError::OutOfRange(x));
    }
    let n0 = generic_corank(v);
    let eps0 = (1e-4f64).min((1.0 - x) / 4.0);
    for attempt in 0..3 {
        let eps = eps0 / 10f64.powi(attempt);
        let near = signature_nullity(v, x + eps / 2.0);
        let far = signature_nullity(v, x + eps);
        if let (Ok(a), Ok(b)) = (near, far) {
            if a == b && a.nullity == n0 {
                return Ok((a.sigma, n0 + 1));
            }
        }
    }
    Err(SeifertError::NoRightLimit(x))
}

/// Exact signature and nullity of `V + V^T` by rational congruence.
pub fn classical_signature(v: &SeifertMatrix) -> InertiaResult {
    let sym = v.symmetrized();
    let mut a: Vec<Vec<BigRational>> = sym
        .iter()
        .map(|r| r.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect())
        .collect();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    while !active.is_empty() {
        if let Some(ki) = active.iter().position(|&k| !a[k][k].is_zero()) {
            let k = active.remove(ki);
            let d = a[k][k].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in &active {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &d;
                for &j in &active {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
            continue;
        }
        let pair = active.iter().find_map(|&i| {
            active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            zero += active.len();
            break;
        };
        // row_i += row_j, then col_i += col_j
        for c in 0..a.len() {
            let t = a[j][c].clone();
            a[i][c] += t;
        }
        for r in 0..a.len() {
            let t = a[r][j].clone();
            a[r][i] += t;
        }
    }
    InertiaResult::from_counts(pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{seifert_from_positive_braid, torus_braid};

    fn torus(p: i64, q: i64) -> SeifertMatrix {
        seifert_from_positive_braid(&torus_braid(p, q).unwrap())
    }

    #[test]
    fn hopf_forms() {
        let v = SeifertMatrix::new(vec![vec![-1]]).unwrap();
        let h = tl_form(&v, 0.5).unwrap();
        assert!((h[(0, 0)].re + 4.0).abs() < 1e-12);
        let h = tl_form(&v, 0.25).unwrap();
        assert!((h[(0, 0)].re + 2.0).abs() < 1e-12);
        let h = tl_form(&v, 1e-9).unwrap();
        assert!(h[(0, 0)].norm() < 1e-15);
        assert!(tl_form(&v, 1.0).is_err());
        for x in [0.1, 0.37, 0.9] {
            assert_eq!(signature_nullity_star(&v, x).unwrap(), (-1, 1));
        }
    }

    #[test]
    fn inertia_examples() {
        let h = DMatrix::from_element(1, 1, Complex::new(-4.0, 0.0));
        let r = inertia(&h, DEFAULT_TOL).unwrap();
        assert_eq!((r.sigma, r.nullity, r.n_link), (-1, 0, 1));
        let z = DMatrix::from_element(2, 2, Complex::new(0.0, 0.0));
        let r = inertia(&z, DEFAULT_TOL).unwrap();
        assert_eq!((r.sigma, r.nullity, r.n_link), (0, 2, 3));
        let r = signature_nullity(&torus(3, 4), 0.5).unwrap();
        assert_eq!(r.sigma, -6);
    }

    #[test]
    fn ill_conditioning_is_reported() {
        let h = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::new(1.0, 0.0),
            Complex::new(2e-9, 0.0),
        ]));
        assert!(matches!(inertia(&h, DEFAULT_TOL), Err(SeifertError::IllConditioned { .. })));
    }

    #[test]
    fn trefoil_star_values() {
        let v = torus(2, 3);
        assert_eq!(signature_nullity_star(&v, 1.0 / 6.0).unwrap(), (-2, 1));
        assert_eq!(signature_nullity_star(&v, 0.5).unwrap(), (-2, 1));
        assert_eq!(signature_nullity_star(&v, 0.9).unwrap(), (0, 1));
    }

    #[test]
    fn forms_are_hermitian() {
        let v = torus(4, 5);
        for x in [0.05, 0.3, 0.77] {
            let h = tl_form(&v, x).unwrap();
            let res = (&h - h.adjoint()).norm();
            assert!(res <= 1e-12 * h.norm());
        }
    }

    #[test]
    fn classical_matches_numeric() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (2, 4), (4, 4), (3, 6)] {
            let v = torus(p, q);
            let exact = classical_signature(&v);
            let num = signature_nullity(&v, 0.5).unwrap();
            assert_eq!(exact, num, "T({p},{q})");
        }
        assert_eq!(classical_signature(&torus(2, 5)).sigma, -4);
        let t = classical_signature(&torus(2, 3));
        assert_eq!((t.positive, t.negative), (0, 2));
    }
}
