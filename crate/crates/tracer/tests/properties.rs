use num_complex::Complex64 as C;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use sigmorse_morse::{replay_from, HandleEvent};
use sigmorse_tracer::*;

fn runner(cases: u32, seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, max_global_rejects: 10_000, ..Config::default() },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn coeff() -> impl Strategy<Value = C> {
    (-2i32..=2, -1i32..=1).prop_map(|(a, b)| C::new(a as f64, b as f64 * 0.5))
}

/// Random parametric curves of low degree with a random centre.
fn curves() -> impl Strategy<Value = CurveSpec> {
    (
        prop::collection::vec(coeff(), 2..=4),
        prop::collection::vec(coeff(), 2..=5),
        prop::array::uniform4(-1.0f64..1.0),
    )
        .prop_map(|(x, y, xi)| {
            CurveSpec::parametric(Poly::new(x), Poly::new(y), [C::new(xi[0], xi[1]), C::new(xi[2], xi[3])])
        })
}

/// Critical points, or `None` for inputs outside the supported class.
fn crit_or_skip(spec: &CurveSpec) -> Option<Vec<CriticalPoint>> {
    if let CurveKind::Parametric { x, y } = &spec.kind {
        if x.degree() == 0 || y.degree() == 0 {
            return None;
        }
    }
    match critical_points(spec) {
        Ok(c) => Some(c),
        Err(TraceError::NonIsolated(_)) => None,
        Err(e) => panic!("{e}: {}", serde_json::to_string(spec).unwrap()),
    }
}

/// Radii strictly between consecutive distinct critical radii, plus one
/// beyond the last.
fn regular_radii(crit: &[CriticalPoint], per_gap: usize) -> Vec<f64> {
    let mut rho: Vec<f64> = crit.iter().map(|p| p.rho).collect();
    rho.dedup_by(|a, b| (*a - *b).abs() < 1e-3 * b.max(1.0));
    let mut edges = rho.clone();
    edges.push(rho.last().map_or(2.0, |r| 1.5 * r + 1.0));
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0].max(1e-2), w[1]);
        if b - a < 1e-2 * b.max(1.0) {
            continue;
        }
        for k in 1..=per_gap {
            out.push(a + (b - a) * k as f64 / (per_gap + 1) as f64);
        }
    }
    out
}

fn eval(p: &Poly, t: C) -> C {
    p.coeffs().iter().rev().fold(C::new(0.0, 0.0), |acc, &a| acc * t + a)
}

#[test]
fn no_local_maxima_and_index_matches_hessian() {
    runner(120, 41)
        .run(&curves(), |spec| {
            let Some(crit) = crit_or_skip(&spec) else { return Err(TestCaseError::reject("unsupported")) };
            let CurveKind::Parametric { x, y } = &spec.kind else { unreachable!() };
            let xi = spec.xi();
            let g = |t: C| (eval(x, t) - xi[0]).norm_sqr() + (eval(y, t) - xi[1]).norm_sqr();
            for p in crit.iter().filter(|p| !p.is_singular()) {
                let idx = p.morse_index().unwrap();
                prop_assert!(idx <= 1);
                let t = p.preimages[0];
                let e = 1e-4 * (1.0 + t.norm());
                let i = C::new(0.0, e);
                let hxx = (g(t + e) - 2.0 * g(t) + g(t - e)) / (e * e);
                let hyy = (g(t + i) - 2.0 * g(t) + g(t - i)) / (e * e);
                let hxy = (g(t + e + i) - g(t + e - i) - g(t - e + i) + g(t - e - i)) / (4.0 * e * e);
                let scale = hxx.abs() + hyy.abs() + hxy.abs() + 1e-12;
                // subharmonic: the Laplacian is never negative
                prop_assert!(hxx + hyy >= -1e-5 * scale);
                let det = hxx * hyy - hxy * hxy;
                if det.abs() > 1e-4 * scale * scale {
                    prop_assert_eq!(idx, if det > 0.0 { 0 } else { 1 });
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn snapshots_close_on_the_sphere() {
    runner(100, 42)
        .run(&curves(), |spec| {
            let Some(crit) = crit_or_skip(&spec) else { return Err(TestCaseError::reject("unsupported")) };
            let xi = spec.center;
            for r in regular_radii(&crit, 1) {
                let s = trace_link_with(&spec, r, &crit).unwrap();
                prop_assert_eq!(s.c, s.components.len());
                prop_assert_eq!(Some(s.c), s.k);
                prop_assert!(s.diagnostics.closure_gap <= 1e-6, "gap {}", s.diagnostics.closure_gap);
                prop_assert!(s.diagnostics.level_residual <= 1e-9);
                for comp in &s.components {
                    prop_assert_eq!(comp.len(), RESAMPLE);
                    for p in comp {
                        let d2: f64 = (0..4).map(|i| (p[i] - xi[i]).powi(2)).sum();
                        prop_assert!((d2 - r * r).abs() <= 1e-9 * r * r);
                    }
                }
                prop_assert!(s.diagnostics.linking_residual <= 0.05);
                for i in 0..s.c {
                    prop_assert_eq!(s.linking[i][i], 0);
                    for j in 0..s.c {
                        prop_assert_eq!(s.linking[i][j], s.linking[j][i]);
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn component_count_is_constant_between_critical_radii() {
    runner(100, 43)
        .run(&curves(), |spec| {
            let Some(crit) = crit_or_skip(&spec) else { return Err(TestCaseError::reject("unsupported")) };
            let radii = regular_radii(&crit, 3);
            for chunk in radii.chunks(3) {
                let cs: Vec<usize> = chunk.iter().map(|&r| trace_link_with(&spec, r, &crit).unwrap().c).collect();
                prop_assert!(cs.iter().all(|&c| c == cs[0]), "{:?} at {:?}", cs, chunk);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn replayed_events_match_every_snapshot() {
    runner(100, 44)
        .run(&curves(), |spec| {
            let Some(crit) = crit_or_skip(&spec) else { return Err(TestCaseError::reject("unsupported")) };
            let first = crit.iter().map(|p| p.rho).find(|&r| r > 1e-6).unwrap_or(1.0);
            let last = crit.last().map_or(1.0, |p| p.rho);
            let sw = sweep(&spec, 0.5 * first, 1.5 * last + 1.0, 3).unwrap();
            let init = sw.initial.unwrap();
            for s in &sw.snapshots {
                let before: Vec<HandleEvent> =
                    sw.events.iter().filter(|e| e.rho < s.r).map(|e| e.event.clone()).collect();
                let (st, ledger) = replay_from(init, &before).unwrap();
                prop_assert_eq!(st.c, s.c as i64);
                prop_assert_eq!(Some(st.k as usize), s.k);
                prop_assert!(st.euler_relation_holds());
                prop_assert_eq!(2 * st.k - 2 * st.pg, st.chi + st.defect + st.c);
                // sublevel sets in the parameter plane are disks
                prop_assert_eq!(st.c, st.k);
                prop_assert_eq!(ledger.divorces + ledger.marriages + ledger.deaths, 0);
            }
            Ok(())
        })
        .unwrap();
}

/// Closed curve `θ ↦ Σ a_k cos kθ + b_k sin kθ` plus a centre.
fn fourier(c: &[[f64; 3]; 6], theta: f64) -> ([f64; 3], [f64; 3]) {
    let mut p = c[0];
    let mut d = [0.0; 3];
    for k in 1..3 {
        let (a, b) = (c[2 * k - 1], c[2 * k]);
        let kf = k as f64;
        for i in 0..3 {
            p[i] += a[i] * (kf * theta).cos() + b[i] * (kf * theta).sin();
            d[i] += kf * (-a[i] * (kf * theta).sin() + b[i] * (kf * theta).cos());
        }
    }
    (p, d)
}

#[test]
fn polygon_linking_matches_the_gauss_double_integral() {
    let v3 = || prop::array::uniform3(-1.0f64..1.0);
    let curve = || prop::array::uniform6(v3());
    let linked = std::cell::Cell::new(0);
    runner(100, 45)
        .run(&(curve(), curve()), |(ca, mut cb)| {
            // make the first harmonic dominant and move b so the two curves
            // are likely to link
            cb[0] = [cb[0][0] * 0.3 + 0.8, cb[0][1] * 0.3, cb[0][2] * 0.3];
            let n = 600;
            let th = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let a: Vec<_> = (0..n).map(|k| fourier(&ca, th(k))).collect();
            let b: Vec<_> = (0..n).map(|k| fourier(&cb, th(k))).collect();
            let min_d = a
                .iter()
                .flat_map(|p| b.iter().map(move |q| (0..3).map(|i| (p.0[i] - q.0[i]).powi(2)).sum::<f64>().sqrt()))
                .fold(f64::INFINITY, f64::min);
            prop_assume!(min_d > 0.15);
            let mut sum = 0.0;
            for (p, dp) in &a {
                for (q, dq) in &b {
                    let r = [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
                    let cr = [dp[1] * dq[2] - dp[2] * dq[1], dp[2] * dq[0] - dp[0] * dq[2], dp[0] * dq[1] - dp[1] * dq[0]];
                    let num = r[0] * cr[0] + r[1] * cr[1] + r[2] * cr[2];
                    let den = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).powf(1.5);
                    sum += num / den;
                }
            }
            let h = 2.0 * std::f64::consts::PI / n as f64;
            let integral = sum * h * h / (4.0 * std::f64::consts::PI);
            let pa: Vec<[f64; 3]> = a.iter().map(|x| x.0).collect();
            let pb: Vec<[f64; 3]> = b.iter().map(|x| x.0).collect();
            let poly = gauss_linking(&pa, &pb);
            prop_assert!((poly - integral).abs() < 1e-2, "{} vs {}", poly, integral);
            prop_assert!((poly - poly.round()).abs() < 1e-2);
            if poly.round() != 0.0 {
                linked.set(linked.get() + 1);
            }
            Ok(())
        })
        .unwrap();
    assert!(linked.get() >= 10, "only {} linked pairs", linked.get());
}
