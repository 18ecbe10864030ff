use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use sigmorse_links::*;
use sigmorse_spectra::Rational;

fn runner(cases: u32, seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, ..Config::default() },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn half() -> Rational {
    Rational::new(1, 2).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Conductor of the semigroup of the branch, i.e. 2δ = μ.
fn conductor(n: i64, exps: &[i64]) -> i64 {
    let mut beta_bar = vec![n, exps[0]];
    let mut e = vec![n, gcd(n, exps[0])];
    for i in 1..exps.len() {
        let ni = e[i - 1] / e[i];
        beta_bar.push(ni * beta_bar[i] + exps[i] - exps[i - 1]);
        e.push(gcd(e[i], exps[i]));
    }
    let mut c = 1 - n;
    for i in 1..beta_bar.len() {
        c += (e[i - 1] / e[i] - 1) * beta_bar[i];
    }
    c
}

/// Genus of an iterated cable knot.
fn cable_genus(stages: &[(i64, i64)]) -> i64 {
    let (p, q) = stages[0];
    let mut g = (p - 1) * (q - 1) / 2;
    for &(a, n) in &stages[1..] {
        g = n * g + (a - 1) * (n - 1) / 2;
    }
    g
}

fn puiseux_strategy() -> impl Strategy<Value = PuiseuxData> {
    // n = product of 1..3 small factors, exponents built to lower the gcd
    (prop::collection::vec(2i64..4, 1..=3), prop::collection::vec(1i64..5, 3))
        .prop_filter_map("valid chain", |(factors, steps)| {
            let n: i64 = factors.iter().product();
            let mut exps = Vec::new();
            let mut e = n;
            let mut last = n;
            for (k, f) in factors.iter().enumerate() {
                let next_e = e / f;
                // smallest exponent above `last` divisible by next_e but not by e
                let mut m = last + 1 + steps[k] * next_e;
                while m % next_e != 0 || m % e == 0 {
                    m += 1;
                }
                exps.push(m);
                last = m;
                e = next_e;
            }
            PuiseuxData::new(n, exps).ok()
        })
}

#[test]
fn cable_genus_matches_semigroup_conductor() {
    runner(200, 21)
        .run(&puiseux_strategy(), |d| {
            let chain = cable_chain_from_puiseux(&d).unwrap();
            prop_assert_eq!(2 * cable_genus(chain.stages()), conductor(d.n, &d.exponents));
            Ok(())
        })
        .unwrap();
}

#[test]
fn a2k_branches_have_signature_minus_2k() {
    for k in 1..30 {
        let chain = cable_chain_from_puiseux(&PuiseuxData::new(2, vec![2 * k + 1]).unwrap()).unwrap();
        let inv = descriptor_invariants(&LinkDescriptor::Cable(chain), half()).unwrap();
        assert_eq!(inv.sigma_star, -2 * k);
    }
}

#[test]
fn cable_anchor_difference() {
    let l1 = LinkDescriptor::Cable(
        cable_chain_from_puiseux(&PuiseuxData::new(4, vec![6, 9]).unwrap()).unwrap(),
    );
    let linf = LinkDescriptor::cable(vec![(2, 3), (9, 2)]).unwrap();
    let s1 = descriptor_invariants(&l1, half()).unwrap().sigma_star;
    let s2 = descriptor_invariants(&linf, half()).unwrap().sigma_star;
    assert_eq!((s1, s2), (-14, -8));
    assert_eq!((s1 - s2).abs(), 6);
}

#[test]
fn json_forms() {
    let cases = [
        r#"{"type":"torus","p":2,"q":3}"#,
        r#"{"type":"cable","stages":[[2,3],[15,2]]}"#,
        r#"{"type":"given","name":"splice","sigma":-5,"n":1,"c":2}"#,
        r#"{"type":"connected","parts":[{"type":"torus","p":2,"q":3},{"type":"torus","p":2,"q":2}]}"#,
    ];
    for c in cases {
        let d: LinkDescriptor = serde_json::from_str(c).unwrap();
        let back: LinkDescriptor = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d, "{c}");
    }
    let p: LinkDescriptor = serde_json::from_str(r#"{"type":"puiseux","n":4,"exponents":[6,9]}"#).unwrap();
    assert_eq!(p, LinkDescriptor::cable(vec![(2, 3), (15, 2)]).unwrap());
    let s: LinkDescriptor =
        serde_json::from_str(r#"[{"type":"torus","p":2,"q":3},{"type":"torus","p":2,"q":3}]"#).unwrap();
    assert_eq!(descriptor_invariants(&s, half()).unwrap().c, 2);
    for bad in [
        r#"{"type":"torus","p":0,"q":3}"#,
        r#"{"type":"knot"}"#,
        r#"{"type":"given","c":1}"#,
        r#"{"type":"puiseux","n":4,"exponents":[6]}"#,
        r#"{"type":"cable","stages":[[2,4]]}"#,
    ] {
        assert!(serde_json::from_str::<LinkDescriptor>(bad).is_err(), "{bad}");
    }
    let sd: SingularityData = serde_json::from_str(
        r#"{"link":{"type":"torus","p":2,"q":2},"p":2,"r":2,"mu":1}"#,
    )
    .unwrap();
    assert_eq!(sd, SingularityData::node().clone_without_delta());
}

trait NoDelta {
    fn clone_without_delta(&self) -> Self;
}

impl NoDelta for SingularityData {
    fn clone_without_delta(&self) -> Self {
        let mut s = self.clone();
        s.delta = None;
        s
    }
}

fn leaf() -> impl Strategy<Value = LinkDescriptor> {
    prop_oneof![
        (1i64..6, 1i64..6).prop_map(|(p, q)| LinkDescriptor::torus(p, q).unwrap()),
        Just(LinkDescriptor::cable(vec![(2, 3), (15, 2)]).unwrap()),
        Just(LinkDescriptor::cable(vec![(2, 5), (11, 2)]).unwrap()),
    ]
}

#[test]
fn sums_are_associative() {
    runner(120, 23)
        .run(&(leaf(), leaf(), leaf(), 1i64..40), |(a, b, c, k)| {
            let x = Rational::new(k, 41).unwrap();
            for make in [LinkDescriptor::DisconnectedSum, LinkDescriptor::ConnectedSum] {
                let left = make(vec![make(vec![a.clone(), b.clone()]), c.clone()]);
                let right = make(vec![a.clone(), make(vec![b.clone(), c.clone()])]);
                let flat = make(vec![a.clone(), b.clone(), c.clone()]);
                let l = descriptor_invariants(&left, x).unwrap();
                prop_assert_eq!(l, descriptor_invariants(&right, x).unwrap());
                prop_assert_eq!(l, descriptor_invariants(&flat, x).unwrap());
            }
            Ok(())
        })
        .unwrap();
}
