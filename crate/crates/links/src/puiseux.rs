use serde::{Deserialize, Serialize};
use sigmorse_spectra::CableChain;

use crate::descriptor::LinkDescriptor;
use crate::LinkError;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Characteristic exponents of `w1 = t^n, w2 = Σ a_i t^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxData {
    pub n: i64,
    pub exponents: Vec<i64>,
}

impl PuiseuxData {
    pub fn new(n: i64, exponents: Vec<i64>) -> Result<Self, LinkError> {
        let bad = |m: String| Err(LinkError::BadPuiseux(m));
        if n < 2 {
            return bad(format!("n must be at least 2, got {n}"));
        }
        let Some(&first) = exponents.first() else {
            return bad("no exponents".into());
        };
        if first <= n {
            return bad(format!("first exponent {first} must exceed n = {n}"));
        }
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("exponents {exponents:?} are not increasing"));
        }
        let mut e = n;
        for &m in &exponents {
            let next = gcd(e, m);
            if next == e {
                return bad(format!("exponent {m} does not lower the gcd {e}"));
            }
            e = next;
        }
        if e != 1 {
            return bad(format!("gcd chain ends at {e}, not 1"));
        }
        Ok(PuiseuxData { n, exponents })
    }
}

/// Iterated torus data of the singularity link.
///
/// With `e_i = gcd(n, m_1..m_i)`, `n_i = e_{i-1}/e_i`, `μ_i = m_i/e_i`, the
/// first stage is `T(n_1, μ_1)` and stage `i` cables with `n_i` strands and
/// twist `a_i = a_{i-1} n_{i-1} n_i + μ_i − μ_{i-1} n_i`.
pub fn cable_chain_from_puiseux(d: &PuiseuxData) -> Result<CableChain, LinkError> {
    let d = PuiseuxData::new(d.n, d.exponents.clone())?;
    let mut stages = Vec::with_capacity(d.exponents.len());
    let mut e_prev = d.n;
    let (mut a_prev, mut n_prev, mut mu_prev) = (0, 0, 0);
    for (i, &m) in d.exponents.iter().enumerate() {
        let e = gcd(e_prev, m);
        let (ni, mu) = (e_prev / e, m / e);
        if i == 0 {
            stages.push((ni, mu));
            a_prev = mu;
        } else {
            let a = a_prev * n_prev * ni + mu - mu_prev * ni;
            stages.push((a, ni));
            a_prev = a;
        }
        n_prev = ni;
        mu_prev = mu;
        e_prev = e;
    }
    Ok(CableChain::new(stages)?)
}

/// Data of one singular point: its link, multiplicity and branch count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSingularity")]
pub struct SingularityData {
    pub link: LinkDescriptor,
    pub p: i64,
    pub r: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
}

#[derive(Deserialize)]
struct RawSingularity {
    link: LinkDescriptor,
    p: i64,
    r: i64,
    mu: Option<i64>,
    delta: Option<i64>,
}

impl TryFrom<RawSingularity> for SingularityData {
    type Error = LinkError;
    fn try_from(r: RawSingularity) -> Result<Self, LinkError> {
        SingularityData::new(r.link, r.p, r.r, r.mu, r.delta)
    }
}

impl SingularityData {
    pub fn new(
        link: LinkDescriptor,
        p: i64,
        r: i64,
        mu: Option<i64>,
        delta: Option<i64>,
    ) -> Result<Self, LinkError> {
        let bad = |m: String| Err(LinkError::BadSingularity(m));
        if r < 1 {
            return bad(format!("branch count r = {r} must be positive"));
        }
        if p < 1 {
            return bad(format!("multiplicity p = {p} must be positive"));
        }
        if p < r {
            return bad(format!("multiplicity {p} is smaller than the branch count {r}"));
        }
        if link.components() != r {
            return bad(format!("link has {} components but r = {r}", link.components()));
        }
        if let Some(mu) = mu {
            if (mu + r - 1) % 2 != 0 || mu < 0 {
                return bad(format!("mu + r - 1 = {} is not even", mu + r - 1));
            }
            if let Some(dl) = delta {
                if 2 * dl != mu + r - 1 {
                    return bad(format!("delta {dl} disagrees with (mu + r - 1)/2"));
                }
            }
        }
        Ok(SingularityData { link, p, r, mu, delta })
    }

    /// Ordinary double point.
    pub fn node() -> Self {
        SingularityData { link: LinkDescriptor::hopf(), p: 2, r: 2, mu: Some(1), delta: Some(1) }
    }

    /// Ordinary cusp `A_2`.
    pub fn cusp() -> Self {
        SingularityData { link: LinkDescriptor::trefoil(), p: 2, r: 1, mu: Some(2), delta: Some(1) }
    }

    pub fn delta(&self) -> Option<i64> {
        self.delta.or(self.mu.map(|mu| (mu + self.r - 1) / 2))
    }
}
