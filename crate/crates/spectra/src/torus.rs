use serde::{Deserialize, Serialize};

use crate::profile::SignatureProfile;
use crate::{gcd, Rational, SpectraError};

/// Parameters of the torus link `T(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusLinkParams {
    pub p: i64,
    pub q: i64,
}

impl TorusLinkParams {
    pub fn new(p: i64, q: i64) -> Result<Self, SpectraError> {
        if p < 1 || q < 1 {
            return Err(SpectraError::BadTorus(p, q));
        }
        Ok(TorusLinkParams { p, q })
    }

    pub fn components(&self) -> i64 {
        gcd(self.p, self.q)
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }
}

/// The multiset `{i/p + j/q : 0 < i < p, 0 < j < q}`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumMultiset {
    elems: Vec<Rational>,
}

impl SpectrumMultiset {
    pub fn elements(&self) -> &[Rational] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Number of elements `<= x`.
    fn upto(&self, x: Rational) -> usize {
        self.elems.partition_point(|e| *e <= x)
    }

    /// Number of elements `< x`.
    fn below(&self, x: Rational) -> usize {
        self.elems.partition_point(|e| *e < x)
    }

    /// Elements in the half-open window `(lo, hi]`.
    pub fn count_open_closed(&self, lo: Rational, hi: Rational) -> usize {
        self.upto(hi).saturating_sub(self.upto(lo))
    }

    /// Elements in the open window `(lo, hi)`.
    pub fn count_open(&self, lo: Rational, hi: Rational) -> usize {
        self.below(hi).saturating_sub(self.upto(lo))
    }

    pub fn multiplicity(&self, x: Rational) -> usize {
        self.upto(x) - self.below(x)
    }

    /// Signature `#S - 2 #(S ∩ (x, 1+x])` for `x` in `(0, 1)`.
    pub fn window_signature(&self, x: Rational) -> i64 {
        let inside = self.count_open_closed(x, x + Rational::one());
        self.len() as i64 - 2 * inside as i64
    }

    /// Distinct fractional parts lying in `(0, 1)`, sorted.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut b: Vec<Rational> = self
            .elems
            .iter()
            .map(|e| e.fract())
            .filter(|f| !f.is_zero())
            .collect();
        b.sort();
        b.dedup();
        b
    }
}

pub fn torus_spectrum(p: i64, q: i64) -> Result<SpectrumMultiset, SpectraError> {
    TorusLinkParams::new(p, q)?;
    let mut elems = Vec::with_capacity(((p - 1) * (q - 1)) as usize);
    for i in 1..p {
        for j in 1..q {
            elems.push(Rational::new(i * q + j * p, p * q)?);
        }
    }
    elems.sort();
    Ok(SpectrumMultiset { elems })
}

/// Classical signature: `#S - 2 #(S ∩ (1/2, 3/2))`.
pub fn torus_signature(p: i64, q: i64) -> Result<i64, SpectraError> {
    let s = torus_spectrum(p, q)?;
    let inside = s.count_open(Rational::new(1, 2)?, Rational::new(3, 2)?);
    Ok(s.len() as i64 - 2 * inside as i64)
}

fn check_unit(x: Rational) -> Result<(), SpectraError> {
    if x.in_open_unit() {
        Ok(())
    } else {
        Err(SpectraError::OutOfRange(x.to_string()))
    }
}

/// Right-limit Tristram-Levine signature at `ζ = e^{2πix}`.
pub fn torus_signature_tl(p: i64, q: i64, x: Rational) -> Result<i64, SpectraError> {
    check_unit(x)?;
    Ok(torus_spectrum(p, q)?.window_signature(x))
}

/// Closed forms for `p ∈ {2, 3, 4}`; knots only.
pub fn closed_form_small(p: i64, q: i64) -> Result<i64, SpectraError> {
    TorusLinkParams::new(p, q)?;
    if gcd(p, q) != 1 {
        return Err(SpectraError::NoClosedForm(p, q));
    }
    match p {
        2 => Ok(-(q - 1)),
        3 => Ok(4 * (q / 6) - 2 * (q - 1)),
        4 => Ok(4 * (q / 4) - 3 * (q - 1)),
        _ => Err(SpectraError::NoClosedForm(p, q)),
    }
}

/// Piecewise-constant profile of `x ↦ σ*_x(T(p,q))` on `(0, 1)`.
///
/// Positive braids using every generator have a unimodular Seifert matrix,
/// so the generic corank vanishes and `n*` is 1 throughout.
pub fn signature_profile_torus(p: i64, q: i64) -> Result<SignatureProfile, SpectraError> {
    let s = torus_spectrum(p, q)?;
    SignatureProfile::from_breakpoints(&s.breakpoints(), |x| Ok((s.window_signature(x), 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b).unwrap()
    }

    #[test]
    fn trefoil_spectrum() {
        let s = torus_spectrum(2, 3).unwrap();
        assert_eq!(s.elements(), &[r(5, 6), r(7, 6)]);
        assert_eq!(torus_signature(2, 3).unwrap(), -2);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(torus_signature(3, 4).unwrap(), -6);
        assert_eq!(torus_signature(2, 2).unwrap(), -1);
        assert_eq!(torus_signature(2, 15).unwrap(), -14);
        assert_eq!(torus_signature(1, 7).unwrap(), 0);
    }

    #[test]
    fn tl_examples() {
        assert_eq!(torus_signature_tl(2, 3, r(1, 2)).unwrap(), -2);
        assert_eq!(torus_signature_tl(2, 3, r(1, 10)).unwrap(), 0);
        assert_eq!(torus_signature_tl(2, 3, r(1, 6)).unwrap(), -2);
        assert_eq!(torus_signature_tl(2, 3, r(5, 6)).unwrap(), 0);
        assert!(torus_signature_tl(2, 3, r(0, 1)).is_err());
        assert!(torus_signature_tl(2, 3, r(1, 1)).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_small(2, 7).unwrap(), -6);
        assert_eq!(closed_form_small(3, 7).unwrap(), -8);
        assert_eq!(closed_form_small(4, 5).unwrap(), -8);
        assert!(closed_form_small(5, 7).is_err());
        assert!(closed_form_small(4, 6).is_err());
    }

    #[test]
    fn invalid_params() {
        assert_eq!(torus_spectrum(0, 3), Err(SpectraError::BadTorus(0, 3)));
        assert!(torus_signature(-2, 3).is_err());
    }

    #[test]
    fn trefoil_profile() {
        let prof = signature_profile_torus(2, 3).unwrap();
        let vals: Vec<(String, String, i64)> = prof
            .rows
            .iter()
            .map(|row| (row.x_lo.to_string(), row.x_hi.to_string(), row.sigma_star))
            .collect();
        assert_eq!(
            vals,
            vec![
                ("0/1".into(), "1/6".into(), 0),
                ("1/6".into(), "5/6".into(), -2),
                ("5/6".into(), "1/1".into(), 0),
            ]
        );
    }

    #[test]
    fn hopf_profile_is_flat() {
        let prof = signature_profile_torus(2, 2).unwrap();
        assert_eq!(prof.rows.len(), 1);
        assert_eq!(prof.rows[0].sigma_star, -1);
    }
}
