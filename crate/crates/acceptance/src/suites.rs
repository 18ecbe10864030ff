//! Seeded randomised suites; each returns one check.

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigmorse_links::{descriptor_invariants, LinkDescriptor};
use sigmorse_morse::w_u;
use sigmorse_seifert::{classical_signature, connected_sum, disconnected_sum, seifert_from_positive_braid, BraidWord};
use sigmorse_spectra::{torus_spectrum, Rational};
use sigmorse_tracer::{critical_points, CurveSpec, Poly, TraceError};

use crate::Check;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn word(r: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let s = r.gen_range(2..=max_strands);
    let len = r.gen_range(1..=max_len);
    let letters: Vec<i64> = (0..len).map(|_| r.gen_range(1..s as i64)).collect();
    BraidWord::new(s, &letters).expect("positive word")
}

/// (σ, n, c) at 1/2 of a braid closure.
fn snc(b: &BraidWord) -> (i64, i64, i64) {
    let r = classical_signature(&seifert_from_positive_braid(b));
    (r.sigma, r.n_link as i64, b.components() as i64)
}

fn summarize(name: &str, cases: usize, failures: Vec<String>) -> Check {
    let detail = if failures.is_empty() {
        format!("{cases} cases")
    } else {
        format!("{} of {cases} cases fail, first: {}", failures.len(), failures[0])
    };
    Check::new(name, failures.is_empty(), detail)
}

pub fn spectrum_symmetry(cases: usize) -> Check {
    let mut r = rng(0x5101);
    let two = Rational::integer(2);
    let mut bad = Vec::new();
    for _ in 0..cases {
        let (p, q) = (r.gen_range(1..=12i64), r.gen_range(1..=12i64));
        let s = torus_spectrum(p, q).expect("spectrum");
        let mut mirrored: Vec<Rational> = s.elements().iter().map(|&e| two - e).collect();
        mirrored.sort();
        if mirrored != s.elements() {
            bad.push(format!("T({p},{q})"));
        }
    }
    summarize("spectrum symmetry", cases, bad)
}

pub fn w_plus_u(cases: usize) -> Check {
    let mut r = rng(0x5102);
    let mut bad = Vec::new();
    for _ in 0..cases {
        let (p, q) = (r.gen_range(1..=9i64), r.gen_range(1..=9i64));
        let x = Rational::new(r.gen_range(1..61), 61).expect("x");
        let i = descriptor_invariants(&LinkDescriptor::torus(p, q).expect("torus"), x).expect("invariants");
        let (w, u) = w_u(i.sigma_star, i.n_star, i.c);
        if w + u != -2 * i.sigma_star {
            bad.push(format!("T({p},{q}) at {x}"));
        }
    }
    summarize("w + u = −2σ", cases, bad)
}

pub fn nullity_bounds(cases: usize) -> Check {
    let mut r = rng(0x5103);
    let mut bad = Vec::new();
    for _ in 0..cases {
        let b = word(&mut r, 5, 12);
        let (_, n, c) = snc(&b);
        if !(1 <= n && n <= c) {
            bad.push(format!("{:?}: n = {n}, c = {c}", b.letters()));
        }
    }
    summarize("1 ≤ n ≤ c", cases, bad)
}

pub fn block_sums(cases: usize) -> Check {
    let mut r = rng(0x5104);
    let mut bad = Vec::new();
    for _ in 0..cases {
        let (a, b) = (word(&mut r, 4, 9), word(&mut r, 4, 9));
        let (va, vb) = (seifert_from_positive_braid(&a), seifert_from_positive_braid(&b));
        let (ra, rb) = (classical_signature(&va), classical_signature(&vb));
        let c = classical_signature(&connected_sum(&va, &vb));
        let d = classical_signature(&disconnected_sum(&va, &vb));
        let ok = c.sigma == ra.sigma + rb.sigma
            && c.nullity == ra.nullity + rb.nullity
            && d.sigma == ra.sigma + rb.sigma
            && d.n_link == ra.n_link + rb.n_link;
        if !ok {
            bad.push(format!("{:?} + {:?}", a.letters(), b.letters()));
        }
    }
    summarize("block-sum additivity", cases, bad)
}

/// One extra positive letter anywhere; σ must move by 0, −1 or −2 and the
/// nullity by at most 1. A recorded counterexample is replayed first.
pub fn letter_insertion(cases: usize) -> Check {
    let mut r = rng(0x5105);
    let mut trials: Vec<(BraidWord, usize, usize)> =
        vec![(BraidWord::new(3, &[1, 2, 1, 1, 1, 2, 2, 1]).expect("word"), 1, 2)];
    for _ in 0..cases {
        let b = word(&mut r, 5, 12);
        let pos = r.gen_range(0..=b.letters().len());
        let l = r.gen_range(1..b.strands());
        trials.push((b, pos, l));
    }
    let mut bad = Vec::new();
    for (b, pos, l) in &trials {
        let b2 = b.with_letter(*pos, *l).expect("insertion");
        let r1 = classical_signature(&seifert_from_positive_braid(b));
        let r2 = classical_signature(&seifert_from_positive_braid(&b2));
        let ds = r2.sigma - r1.sigma;
        let dn = (r2.nullity as i64 - r1.nullity as i64).abs();
        if ![0, -1, -2].contains(&ds) || dn > 1 {
            bad.push(format!("{:?} + σ_{l} at {pos}: Δσ = {ds}, Δnull = {dn}", b.letters()));
        }
    }
    summarize("positive-letter insertion", trials.len(), bad)
}

pub fn w_replay(cases: usize) -> Check {
    let mut r = rng(0x5106);
    let (mut merges, mut splits) = (0, 0);
    let mut bad = Vec::new();
    for _ in 0..cases {
        let b = word(&mut r, 5, 10);
        let pos = r.gen_range(0..=b.letters().len());
        let l = r.gen_range(1..b.strands());
        let b2 = b.with_letter(pos, l).expect("insertion");
        let (s0, n0, c0) = snc(&b);
        let (s1, n1, c1) = snc(&b2);
        let (w0, _) = w_u(s0, n0, c0);
        let (w1, _) = w_u(s1, n1, c1);
        let ok = match c1 - c0 {
            -1 => {
                merges += 1;
                w1 >= w0
            }
            1 => {
                splits += 1;
                w1 >= w0 - 2
            }
            _ => false,
        };
        if !ok {
            bad.push(format!("{:?} + σ_{l} at {pos}: w {w0} -> {w1}, c {c0} -> {c1}", b.letters()));
        }
    }
    let mut c = summarize("w replay (merges monotone, divorces ≥ −2)", cases, bad);
    c.detail.push_str(&format!(" ({merges} merges, {splits} divorces)"));
    c
}

pub fn no_index_two(cases: usize) -> Check {
    let mut r = rng(0x5107);
    let mut bad = Vec::new();
    let mut run = 0;
    let mut skipped = 0;
    while run < cases {
        let mut poly = |lo: usize, hi: usize| {
            let d = r.gen_range(lo..=hi);
            Poly::new((0..=d).map(|_| C::new(r.gen_range(-2..=2) as f64, r.gen_range(-1..=1) as f64 * 0.5)).collect())
        };
        let (x, y) = (poly(1, 3), poly(1, 4));
        if x.degree() == 0 || y.degree() == 0 {
            continue;
        }
        let xi = [C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))];
        let spec = CurveSpec::parametric(x, y, xi);
        match critical_points(&spec) {
            Ok(crit) => {
                run += 1;
                if let Some(p) = crit.iter().find(|p| p.morse_index().is_some_and(|i| i > 1)) {
                    bad.push(format!("index {:?} at ρ = {}", p.morse_index(), p.rho));
                }
            }
            // not generically injective: outside the supported class
            Err(TraceError::NonIsolated(_)) => skipped += 1,
            Err(e) => {
                run += 1;
                bad.push(e.to_string());
            }
        }
    }
    let mut c = summarize("no index-2 criticals", cases, bad);
    c.detail.push_str(&format!(" ({skipped} non-injective inputs skipped)"));
    c
}

pub fn all(cases: usize) -> Vec<Check> {
    vec![
        spectrum_symmetry(cases),
        w_plus_u(cases),
        nullity_bounds(cases),
        block_sums(cases),
        letter_insertion(cases),
        w_replay(cases),
        no_index_two(cases),
    ]
}
