use crate::puiseux::SingularityData;
use crate::verdict::Verdict;

/// `σ ≤ 1 − r`, with equality only for the Hopf link or the unknot.
pub fn sigmult_check(s: &SingularityData, sigma: i64) -> Verdict {
    let v = Verdict::at_most(sigma, 1 - s.r);
    let ok = sigma < 1 - s.r || (sigma == 1 - s.r && s.link.is_hopf_or_unknot());
    v.with_holds(ok)
}

/// `σ(L) ≤ σ(K) + 1 − n`.
pub fn stupid_check(sigma_l: i64, sigma_k: i64, n: i64) -> Verdict {
    Verdict::at_most(sigma_l, sigma_k + 1 - n)
}

/// `σ ≤ σ_1 + σ_2`.
pub fn nemethi_check(sigma: i64, sigma1: i64, sigma2: i64) -> Verdict {
    Verdict::at_most(sigma, sigma1 + sigma2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LinkDescriptor;

    #[test]
    fn sigmult_examples() {
        assert!(sigmult_check(&SingularityData::cusp(), -2).holds);
        let h = sigmult_check(&SingularityData::node(), -1);
        assert!(h.holds && h.slack == 0);
        let three = SingularityData::new(
            LinkDescriptor::torus(3, 3).unwrap(), 3, 3, None, None).unwrap();
        assert!(!sigmult_check(&three, -1).holds);
        // equality for a non-Hopf link is refused
        let t24 = SingularityData::new(LinkDescriptor::torus(2, 4).unwrap(), 2, 2, None, None).unwrap();
        assert!(!sigmult_check(&t24, -1).holds);
    }

    #[test]
    fn stupid_examples() {
        assert!(stupid_check(-16, -14, 1).holds);
        assert!(stupid_check(0, 0, 0).holds);
        let v = stupid_check(-1, 0, 2);
        assert!(v.holds && v.slack == 0);
    }

    #[test]
    fn nemethi_examples() {
        assert!(nemethi_check(-6, -2, -2).holds);
        assert_eq!(nemethi_check(-2, -2, 0).slack, 0);
        assert_eq!(nemethi_check(-4, -2, -2).slack, 0);
        assert!(!nemethi_check(-1, -2, 0).holds);
    }
}
