use serde::{Deserialize, Serialize};

use crate::profile::SignatureProfile;
use crate::torus::torus_spectrum;
use crate::{gcd, Rational, SpectraError};

/// Iterated torus knot: the first stage is the torus knot `T(p1, q1)`; every
/// later `(p, q)` cables the previous knot with `q` strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct CableChain {
    stages: Vec<(i64, i64)>,
}

impl CableChain {
    pub fn new(stages: Vec<(i64, i64)>) -> Result<Self, SpectraError> {
        if stages.is_empty() {
            return Err(SpectraError::EmptyChain);
        }
        for &(p, q) in &stages {
            if p < 1 || q < 1 || gcd(p, q) != 1 {
                return Err(SpectraError::BadStage(p, q));
            }
        }
        Ok(CableChain { stages })
    }

    pub fn stages(&self) -> &[(i64, i64)] {
        &self.stages
    }
}

impl TryFrom<Vec<(i64, i64)>> for CableChain {
    type Error = SpectraError;
    fn try_from(v: Vec<(i64, i64)>) -> Result<Self, Self::Error> {
        CableChain::new(v)
    }
}

impl From<CableChain> for Vec<(i64, i64)> {
    fn from(c: CableChain) -> Self {
        c.stages
    }
}

fn stage_signature(stages: &[(i64, i64)], x: Rational) -> Result<i64, SpectraError> {
    let Some((&(p, q), rest)) = stages.split_last() else {
        return Ok(0);
    };
    let y = x.mul_int(q).fract();
    let companion = if y.is_zero() { 0 } else { stage_signature(rest, y)? };
    Ok(companion + torus_spectrum(p, q)?.window_signature(x))
}

/// `σ*_x` of the iterated cable via `σ_ζ(K_{p,q}) = σ_{ζ^q}(K) + σ_ζ(T_{p,q})`.
pub fn cable_signature_tl(chain: &CableChain, x: Rational) -> Result<i64, SpectraError> {
    if !x.in_open_unit() {
        return Err(SpectraError::OutOfRange(x.to_string()));
    }
    stage_signature(&chain.stages, x)
}

/// Points of `(0, 1)` where `x ↦ σ*_x` may jump.
pub fn cable_breakpoints(chain: &CableChain) -> Result<Vec<Rational>, SpectraError> {
    let mut prev: Vec<Rational> = Vec::new();
    for &(p, q) in &chain.stages {
        let mut cur = torus_spectrum(p, q)?.breakpoints();
        for b in std::iter::once(Rational::zero()).chain(prev.iter().copied()) {
            for j in 0..q {
                let x = Rational::new(b.numer() + j * b.denom(), b.denom() * q)?;
                if x.in_open_unit() {
                    cur.push(x);
                }
            }
        }
        cur.sort();
        cur.dedup();
        prev = cur;
    }
    Ok(prev)
}

pub fn signature_profile_cable(chain: &CableChain) -> Result<SignatureProfile, SpectraError> {
    SignatureProfile::from_breakpoints(&cable_breakpoints(chain)?, |x| {
        Ok((cable_signature_tl(chain, x)?, 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_signature_tl;

    fn half() -> Rational {
        Rational::new(1, 2).unwrap()
    }

    #[test]
    fn cable_examples_at_half() {
        let c = CableChain::new(vec![(2, 3), (15, 2)]).unwrap();
        assert_eq!(cable_signature_tl(&c, half()).unwrap(), -14);
        let c = CableChain::new(vec![(2, 3), (9, 2)]).unwrap();
        assert_eq!(cable_signature_tl(&c, half()).unwrap(), -8);
    }

    #[test]
    fn single_stage_is_torus() {
        let c = CableChain::new(vec![(3, 7)]).unwrap();
        for k in 1..42 {
            let x = Rational::new(k, 42).unwrap();
            assert_eq!(
                cable_signature_tl(&c, x).unwrap(),
                torus_signature_tl(3, 7, x).unwrap()
            );
        }
    }

    #[test]
    fn companion_enters_away_from_half() {
        let c = CableChain::new(vec![(2, 3), (15, 2)]).unwrap();
        let x = Rational::new(1, 3).unwrap();
        let companion = torus_signature_tl(2, 3, Rational::new(2, 3).unwrap()).unwrap();
        let pattern = torus_signature_tl(15, 2, x).unwrap();
        assert_eq!(cable_signature_tl(&c, x).unwrap(), companion + pattern);
    }

    #[test]
    fn rejects_bad_stages() {
        assert_eq!(CableChain::new(vec![]), Err(SpectraError::EmptyChain));
        assert_eq!(CableChain::new(vec![(2, 4)]), Err(SpectraError::BadStage(2, 4)));
        assert!(serde_json_like_round_trip());
    }

    fn serde_json_like_round_trip() -> bool {
        let c = CableChain::new(vec![(2, 3), (15, 2)]).unwrap();
        let v: Vec<(i64, i64)> = c.clone().into();
        CableChain::try_from(v).unwrap() == c
    }

    #[test]
    fn profile_matches_pointwise() {
        let c = CableChain::new(vec![(2, 3), (9, 2)]).unwrap();
        let prof = signature_profile_cable(&c).unwrap();
        prof.validate().unwrap();
        for k in 1..120 {
            let x = Rational::new(k, 120).unwrap();
            assert_eq!(prof.at(x).unwrap().0, cable_signature_tl(&c, x).unwrap(), "x={x}");
        }
    }
}
