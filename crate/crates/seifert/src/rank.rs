use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::BraidWord;
use crate::matrix::SeifertMatrix;

const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let n = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..n).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], P - 2);
        for r in 0..n {
            if r != rank && m[r][c] != 0 {
                let f = mul(m[r][c], inv);
                for k in c..cols {
                    let sub = mul(f, m[rank][k]);
                    m[r][k] = (m[r][k] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Corank of `V - tV^T` for generic `t`.
///
/// Evaluated at three seeded random `t` modulo the prime `2^61 - 1`; the
/// largest rank wins. A modular rank never exceeds the rational one, so the
/// answer can only err upward, with probability far below `1e-15`.
pub fn generic_corank(v: &SeifertMatrix) -> usize {
    let n = v.size();
    if n == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = 0;
    for _ in 0..3 {
        let t = rng.gen_range(2..P - 1);
        let m: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (reduce(v.get(i, j)) + P - mul(t, reduce(v.get(j, i)))) % P)
                    .collect()
            })
            .collect();
        best = best.max(rank_mod_p(m));
    }
    n - best
}

/// Generic corank of a positive braid closure without building the matrix.
///
/// Each connected piece of the canonical surface has an upper unitriangular
/// Seifert matrix (determinant ±1), so only the split tubes contribute.
pub fn positive_braid_generic_corank(b: &BraidWord) -> usize {
    b.missing_generators()
}
