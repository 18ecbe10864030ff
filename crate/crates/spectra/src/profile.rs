use serde::{Deserialize, Serialize};

use crate::{Rational, SpectraError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub sigma_star: i64,
    pub n_star: i64,
}

/// Values of `(σ*, n*)` on consecutive half-open intervals `[x_lo, x_hi)`
/// covering `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureProfile {
    pub rows: Vec<ProfileRow>,
}

impl SignatureProfile {
    /// Builds the profile by sampling `eval` at interval midpoints.
    pub fn from_breakpoints<F>(breakpoints: &[Rational], mut eval: F) -> Result<Self, SpectraError>
    where
        F: FnMut(Rational) -> Result<(i64, i64), SpectraError>,
    {
        let mut cuts = vec![Rational::zero()];
        cuts.extend(breakpoints.iter().copied().filter(|b| b.in_open_unit()));
        cuts.push(Rational::one());
        cuts.sort();
        cuts.dedup();
        let mut rows: Vec<ProfileRow> = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let mid = w[0].midpoint(w[1]);
            let (sigma_star, n_star) = eval(mid)?;
            match rows.last_mut() {
                Some(last) if last.sigma_star == sigma_star && last.n_star == n_star => {
                    last.x_hi = w[1];
                }
                _ => rows.push(ProfileRow { x_lo: w[0], x_hi: w[1], sigma_star, n_star }),
            }
        }
        Ok(SignatureProfile { rows })
    }

    /// Value at `x ∈ (0, 1)`.
    pub fn at(&self, x: Rational) -> Option<(i64, i64)> {
        if !x.in_open_unit() {
            return None;
        }
        self.rows
            .iter()
            .find(|r| r.x_lo <= x && x < r.x_hi)
            .map(|r| (r.sigma_star, r.n_star))
    }

    pub fn max_sigma(&self) -> Option<i64> {
        self.rows.iter().map(|r| r.sigma_star).max()
    }

    pub fn validate(&self) -> Result<(), SpectraError> {
        let bad = |m: &str| Err(SpectraError::BadProfile(m.to_string()));
        let (Some(first), Some(last)) = (self.rows.first(), self.rows.last()) else {
            return bad("no rows");
        };
        if !first.x_lo.is_zero() || last.x_hi != Rational::one() {
            return bad("rows must cover (0, 1)");
        }
        for w in self.rows.windows(2) {
            if w[0].x_hi != w[1].x_lo {
                return bad("rows must be contiguous");
            }
        }
        if self.rows.iter().any(|r| r.x_lo >= r.x_hi) {
            return bad("empty interval");
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn from_csv(text: &str) -> Result<Self, SpectraError> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let rows = rdr
            .deserialize()
            .collect::<Result<Vec<ProfileRow>, _>>()
            .map_err(|e| SpectraError::BadProfile(e.to_string()))?;
        let p = SignatureProfile { rows };
        p.validate()?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature_profile_torus;

    #[test]
    fn csv_round_trip() {
        let p = signature_profile_torus(3, 4).unwrap();
        let text = p.to_csv();
        assert!(text.starts_with("x_lo,x_hi,sigma_star,n_star\n0/1,"));
        assert_eq!(SignatureProfile::from_csv(&text).unwrap(), p);
    }

    #[test]
    fn lookup_uses_half_open_rows() {
        let p = signature_profile_torus(2, 3).unwrap();
        assert_eq!(p.at("1/6".parse().unwrap()), Some((-2, 1)));
        assert_eq!(p.at("5/6".parse().unwrap()), Some((0, 1)));
        assert_eq!(p.at("1/12".parse().unwrap()), Some((0, 1)));
        assert_eq!(p.at("0/1".parse().unwrap()), None);
    }

    #[test]
    fn rejects_gaps() {
        let text = "x_lo,x_hi,sigma_star,n_star\n0/1,1/3,0,1\n1/2,1/1,0,1\n";
        assert!(SignatureProfile::from_csv(text).is_err());
    }
}
