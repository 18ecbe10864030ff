use std::fmt;

use serde::de::{self, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sigmorse_spectra::{
    cable_signature_tl, signature_profile_cable, signature_profile_torus, torus_signature_tl,
    CableChain, Rational, SignatureProfile, TorusLinkParams,
};

use crate::puiseux::{cable_chain_from_puiseux, PuiseuxData};
use crate::LinkError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkDescriptor {
    Torus(TorusLinkParams),
    Cable(CableChain),
    DisconnectedSum(Vec<LinkDescriptor>),
    ConnectedSum(Vec<LinkDescriptor>),
    /// Invariants supplied by the user: either `(σ, n)` valid at `x = 1/2`
    /// or a full profile.
    Given {
        name: String,
        sigma: Option<i64>,
        n: Option<i64>,
        profile: Option<SignatureProfile>,
        c: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkInvariants {
    pub sigma_star: i64,
    pub n_star: i64,
    pub c: i64,
}

impl LinkDescriptor {
    pub fn torus(p: i64, q: i64) -> Result<Self, LinkError> {
        Ok(LinkDescriptor::Torus(TorusLinkParams::new(p, q)?))
    }

    pub fn cable(stages: Vec<(i64, i64)>) -> Result<Self, LinkError> {
        Ok(LinkDescriptor::Cable(CableChain::new(stages)?))
    }

    pub fn given(name: &str, sigma: i64, n: i64, c: i64) -> Self {
        LinkDescriptor::Given { name: name.to_string(), sigma: Some(sigma), n: Some(n), profile: None, c }
    }

    pub fn hopf() -> Self {
        LinkDescriptor::Torus(TorusLinkParams { p: 2, q: 2 })
    }

    pub fn trefoil() -> Self {
        LinkDescriptor::Torus(TorusLinkParams { p: 2, q: 3 })
    }

    /// Number of components.
    pub fn components(&self) -> i64 {
        match self {
            LinkDescriptor::Torus(t) => t.components(),
            LinkDescriptor::Cable(_) => 1,
            LinkDescriptor::DisconnectedSum(v) => v.iter().map(|l| l.components()).sum(),
            LinkDescriptor::ConnectedSum(v) => {
                v.iter().map(|l| l.components()).sum::<i64>() - (v.len() as i64 - 1).max(0)
            }
            LinkDescriptor::Given { c, .. } => *c,
        }
    }

    pub fn is_hopf_or_unknot(&self) -> bool {
        match self {
            LinkDescriptor::Torus(t) => t.p.min(t.q) == 1 || (t.p == 2 && t.q == 2),
            LinkDescriptor::Cable(ch) => {
                ch.stages().iter().all(|&(p, q)| p.min(q) == 1)
            }
            _ => false,
        }
    }

    /// Full `x ↦ (σ*, n*)` profile where it can be derived.
    pub fn profile(&self) -> Result<SignatureProfile, LinkError> {
        match self {
            LinkDescriptor::Torus(t) => Ok(signature_profile_torus(t.p, t.q)?),
            LinkDescriptor::Cable(ch) => Ok(signature_profile_cable(ch)?),
            LinkDescriptor::Given { profile: Some(p), .. } => Ok(p.clone()),
            LinkDescriptor::Given { name, .. } => {
                Err(LinkError::NoDataAt { name: name.clone(), x: "(0,1)".into() })
            }
            LinkDescriptor::DisconnectedSum(_) | LinkDescriptor::ConnectedSum(_) => {
                let mut cuts = Vec::new();
                self.collect_cuts(&mut cuts)?;
                Ok(SignatureProfile::from_breakpoints(&cuts, |x| {
                    let inv = descriptor_invariants(self, x)
                        .map_err(|e| sigmorse_spectra::SpectraError::BadProfile(e.to_string()))?;
                    Ok((inv.sigma_star, inv.n_star))
                })?)
            }
        }
    }

    fn collect_cuts(&self, out: &mut Vec<Rational>) -> Result<(), LinkError> {
        match self {
            LinkDescriptor::DisconnectedSum(v) | LinkDescriptor::ConnectedSum(v) => {
                for l in v {
                    l.collect_cuts(out)?;
                }
            }
            other => out.extend(other.profile()?.rows.iter().map(|r| r.x_lo)),
        }
        Ok(())
    }
}

/// `(σ*_x, n*, c)` of a descriptor.
pub fn descriptor_invariants(l: &LinkDescriptor, x: Rational) -> Result<LinkInvariants, LinkError> {
    match l {
        LinkDescriptor::Torus(t) => Ok(LinkInvariants {
            sigma_star: torus_signature_tl(t.p, t.q, x)?,
            // positive braids using every generator have unimodular Seifert matrices
            n_star: 1,
            c: t.components(),
        }),
        LinkDescriptor::Cable(ch) => {
            Ok(LinkInvariants { sigma_star: cable_signature_tl(ch, x)?, n_star: 1, c: 1 })
        }
        LinkDescriptor::DisconnectedSum(parts) | LinkDescriptor::ConnectedSum(parts) => {
            if parts.is_empty() {
                return Err(LinkError::EmptySum);
            }
            let mut acc = LinkInvariants { sigma_star: 0, n_star: 0, c: 0 };
            for p in parts {
                let i = descriptor_invariants(p, x)?;
                acc.sigma_star += i.sigma_star;
                acc.n_star += i.n_star;
                acc.c += i.c;
            }
            if matches!(l, LinkDescriptor::ConnectedSum(_)) {
                let k = parts.len() as i64;
                acc.n_star -= k - 1;
                acc.c -= k - 1;
            }
            Ok(acc)
        }
        LinkDescriptor::Given { name, sigma, n, profile, c } => {
            let half = Rational::new(1, 2)?;
            if let (true, Some(s), Some(n)) = (x == half, sigma, n) {
                return Ok(LinkInvariants { sigma_star: *s, n_star: *n, c: *c });
            }
            match profile.as_ref().and_then(|p| p.at(x)) {
                Some((s, n)) => Ok(LinkInvariants { sigma_star: s, n_star: n, c: *c }),
                None => Err(LinkError::NoDataAt { name: name.clone(), x: x.to_string() }),
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum Tagged {
    Torus {
        p: i64,
        q: i64,
    },
    Cable {
        stages: CableChain,
    },
    Puiseux {
        n: i64,
        exponents: Vec<i64>,
    },
    Given {
        #[serde(default = "default_name")]
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        profile: Option<SignatureProfile>,
        c: i64,
    },
    Disconnected {
        parts: Vec<LinkDescriptor>,
    },
    Connected {
        parts: Vec<LinkDescriptor>,
    },
}

fn default_name() -> String {
    "given".to_string()
}

impl TryFrom<Tagged> for LinkDescriptor {
    type Error = LinkError;
    fn try_from(t: Tagged) -> Result<Self, LinkError> {
        Ok(match t {
            Tagged::Torus { p, q } => LinkDescriptor::torus(p, q)?,
            Tagged::Cable { stages } => LinkDescriptor::Cable(stages),
            Tagged::Puiseux { n, exponents } => {
                LinkDescriptor::Cable(cable_chain_from_puiseux(&PuiseuxData::new(n, exponents)?)?)
            }
            Tagged::Given { name, sigma, n, profile, c } => {
                if profile.is_none() && (sigma.is_none() || n.is_none()) {
                    return Err(LinkError::NoDataAt { name, x: "1/2".into() });
                }
                if let Some(p) = &profile {
                    p.validate()?;
                }
                LinkDescriptor::Given { name, sigma, n, profile, c }
            }
            Tagged::Disconnected { parts } => LinkDescriptor::DisconnectedSum(parts),
            Tagged::Connected { parts } => LinkDescriptor::ConnectedSum(parts),
        })
    }
}

impl From<&LinkDescriptor> for Tagged {
    fn from(l: &LinkDescriptor) -> Self {
        match l {
            LinkDescriptor::Torus(t) => Tagged::Torus { p: t.p, q: t.q },
            LinkDescriptor::Cable(c) => Tagged::Cable { stages: c.clone() },
            LinkDescriptor::DisconnectedSum(v) => Tagged::Disconnected { parts: v.clone() },
            LinkDescriptor::ConnectedSum(v) => Tagged::Connected { parts: v.clone() },
            LinkDescriptor::Given { name, sigma, n, profile, c } => Tagged::Given {
                name: name.clone(),
                sigma: *sigma,
                n: *n,
                profile: profile.clone(),
                c: *c,
            },
        }
    }
}

impl Serialize for LinkDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Tagged::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LinkDescriptor;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a link descriptor object or an array of descriptors")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut parts = Vec::new();
                while let Some(p) = seq.next_element()? {
                    parts.push(p);
                }
                Ok(LinkDescriptor::DisconnectedSum(parts))
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
                let t = Tagged::deserialize(de::value::MapAccessDeserializer::new(map))?;
                LinkDescriptor::try_from(t).map_err(de::Error::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2).unwrap()
    }

    #[test]
    fn examples_at_half() {
        let t = descriptor_invariants(&LinkDescriptor::trefoil(), half()).unwrap();
        assert_eq!((t.sigma_star, t.n_star, t.c), (-2, 1, 1));
        let s = LinkDescriptor::DisconnectedSum(vec![LinkDescriptor::trefoil(); 2]);
        let i = descriptor_invariants(&s, half()).unwrap();
        assert_eq!((i.sigma_star, i.n_star, i.c), (-4, 2, 2));
        let g = LinkDescriptor::given("splice-example L_inf", -5, 1, 2);
        let i = descriptor_invariants(&g, half()).unwrap();
        assert_eq!((i.sigma_star, i.n_star, i.c), (-5, 1, 2));
    }

    #[test]
    fn connected_sum_counts() {
        let s = LinkDescriptor::ConnectedSum(vec![LinkDescriptor::hopf(), LinkDescriptor::hopf()]);
        let i = descriptor_invariants(&s, half()).unwrap();
        assert_eq!((i.sigma_star, i.n_star, i.c), (-2, 1, 3));
        assert_eq!(s.components(), 3);
    }

    #[test]
    fn given_needs_data() {
        let g = LinkDescriptor::given("g", -5, 1, 2);
        assert!(matches!(
            descriptor_invariants(&g, Rational::new(1, 3).unwrap()),
            Err(LinkError::NoDataAt { .. })
        ));
    }

    #[test]
    fn hopf_and_unknot_detection() {
        assert!(LinkDescriptor::hopf().is_hopf_or_unknot());
        assert!(LinkDescriptor::torus(1, 5).unwrap().is_hopf_or_unknot());
        assert!(!LinkDescriptor::trefoil().is_hopf_or_unknot());
    }

    #[test]
    fn sum_profile() {
        let s = LinkDescriptor::DisconnectedSum(vec![LinkDescriptor::trefoil(), LinkDescriptor::hopf()]);
        let p = s.profile().unwrap();
        for k in 1..30 {
            let x = Rational::new(k, 30).unwrap();
            assert_eq!(p.at(x).unwrap().0, descriptor_invariants(&s, x).unwrap().sigma_star);
        }
    }
}
