use sigmorse_links::Verdict;
use sigmorse_spectra::{torus_signature, torus_signature_tl, Rational, SignatureProfile};

use crate::MorseError;

/// `a_d + f_d ≤ Δpg + Δc − Δk` between two radii.
#[allow(clippy::too_many_arguments)]
pub fn check_intermediate(pg0: i64, pg1: i64, c0: i64, c1: i64, k0: i64, k1: i64, a_d01: i64, f_d01: i64) -> Verdict {
    Verdict::at_most(a_d01 + f_d01, pg1 - pg0 + c1 - c0 - (k1 - k0))
}

/// `(a_m, a_d, a_b − a_j)` for a smooth curve of genus `pg` with `d` branches at infinity.
pub fn handle_counts_smooth(pg: i64, d: i64) -> (i64, i64, i64) {
    (pg, d + pg - 1, 1)
}

/// Largest `k` such that an `A_{2k}` branch fits under a `(p, q)` parametrisation.
pub fn cormain_bound(p: i64, q: i64) -> Result<i64, MorseError> {
    Ok((-torus_signature(p, q)?).div_euclid(2))
}

fn one_sixth() -> Rational {
    Rational::new(1, 6).expect("1/6")
}

/// Whether a degree `d` curve with `s` ordinary cusps passes the signature test at `x = 1/6`.
pub fn cusp_bound_check(d: i64, s: i64) -> Result<Verdict, MorseError> {
    if d < 1 || s < 0 {
        return Err(MorseError::BadScenario(format!("degree {d}, cusps {s}")));
    }
    let b = (d - 1) * (d - 1) - 2 * s;
    if b < 0 {
        return Err(MorseError::BadScenario(format!("{s} cusps make b = {b} negative in degree {d}")));
    }
    let sigma = torus_signature_tl(d, d, one_sixth())?;
    Ok(Verdict::at_most((sigma + 2 * s).abs(), b))
}

/// Largest `s` for which [`cusp_bound_check`] holds.
pub fn cusp_max(d: i64) -> Result<i64, MorseError> {
    let sigma = torus_signature_tl(d, d, one_sixth())?;
    let sq = (d - 1) * (d - 1);
    // for 2s ≥ −σ the test reads 4s ≤ (d−1)² − σ; below that it always holds
    let s = ((sq - sigma).div_euclid(4)).min(sq / 2);
    debug_assert!(cusp_bound_check(d, s)?.holds);
    Ok(s)
}

/// `−σ ≥ 2 − 2m − 2pg`.
pub fn ratknot_check(sigma: i64, m: i64, pg: i64) -> Verdict {
    Verdict::at_least(-sigma, 2 - 2 * m - 2 * pg)
}

/// Every value of the profile is non-positive.
pub fn ratknot2_check(profile: &SignatureProfile) -> Verdict {
    Verdict::at_most(profile.max_sigma().unwrap_or(0), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sigmorse_spectra::signature_profile_torus;

    #[test]
    fn cormain_closed_forms() {
        assert_eq!(cormain_bound(3, 7).unwrap(), 4);
        for q in (4..200).filter(|q| q % 3 != 0) {
            assert_eq!(cormain_bound(3, q).unwrap(), q - 1 - 2 * (q / 6), "q={q}");
        }
        for q in (5..200).step_by(2) {
            // (3/2)(q − 1) is an integer for odd q
            assert_eq!(cormain_bound(4, q).unwrap(), 3 * (q - 1) / 2 - 2 * (q / 4), "q={q}");
        }
    }

    #[test]
    fn cusps() {
        assert!(cusp_bound_check(3, 1).unwrap().holds);
        for d in [3, 6, 20, 60] {
            let m = cusp_max(d).unwrap();
            assert!(cusp_bound_check(d, m).unwrap().holds);
            if 2 * (m + 1) <= (d - 1) * (d - 1) {
                assert!(!cusp_bound_check(d, m + 1).unwrap().holds);
            }
        }
        let d = 120;
        let r = cusp_max(d).unwrap() as f64 / (d * d) as f64;
        assert!((r - 23.0 / 72.0).abs() < 0.02, "{r}");
        let s = (0.35 * (d * d) as f64).ceil() as i64;
        assert!(!cusp_bound_check(d, s).unwrap().holds);
        assert!(cusp_bound_check(3, 3).is_err());
    }

    #[test]
    fn cusp_signature_at_one_sixth() {
        assert_eq!(torus_signature_tl(2, 3, one_sixth()).unwrap(), -2);
    }

    #[test]
    fn intermediate_and_smooth() {
        let v = check_intermediate(0, 0, 2, 1, 2, 1, 0, 0);
        assert_eq!((v.rhs, v.holds), (0, true));
        assert!(!check_intermediate(0, 0, 1, 1, 1, 1, 1, 0).holds);
        assert_eq!(handle_counts_smooth(0, 1), (0, 0, 1));
        assert_eq!(handle_counts_smooth(0, 2), (0, 1, 1));
        assert_eq!(handle_counts_smooth(1, 1), (1, 1, 1));
    }

    #[test]
    fn ratknot() {
        assert!(ratknot_check(-2, 1, 0).holds);
        let v = ratknot_check(1, 1, 0);
        assert_eq!((v.lhs, v.rhs, v.holds), (-1, 0, false));
        let p = signature_profile_torus(2, 3).unwrap();
        assert!(ratknot2_check(&p).holds);
    }
}
