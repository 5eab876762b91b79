//! Shared generators for the integration suites.

#![allow(dead_code)]

use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistcube::cube::CubeSpec;
use twistcube::rep::CartanMatrix;

/// Uniform-enough integer in `lo..=hi` from a deterministic stream.
pub fn pick(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let width = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % width) as i64
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random cube spec with `1..=max_n` coordinates and entries bounded by
/// `c_abs` and `ell_abs`.
pub fn random_spec(rng: &mut ChaCha8Rng, max_n: usize, c_abs: i64, ell_abs: i64) -> CubeSpec {
    let n = 1 + (rng.next_u64() % max_n as u64) as usize;
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            entries.push((i, j, pick(rng, -c_abs, c_abs)));
        }
    }
    let ell: Vec<i64> = (0..n).map(|_| pick(rng, -ell_abs, ell_abs)).collect();
    CubeSpec::new(n, &entries, &ell).unwrap()
}

pub fn seeded_specs(
    seed: u64,
    count: usize,
    max_n: usize,
    c_abs: i64,
    ell_abs: i64,
) -> Vec<CubeSpec> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| random_spec(&mut rng, max_n, c_abs, ell_abs))
        .collect()
}

/// Proptest strategy over the same family of specs.
pub fn cube_strategy(max_n: usize, c_abs: i64, ell_abs: i64) -> impl Strategy<Value = CubeSpec> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(-c_abs..=c_abs, pairs),
            prop::collection::vec(-ell_abs..=ell_abs, n),
        )
            .prop_map(move |(cvals, ell)| {
                let mut entries = Vec::with_capacity(pairs);
                let mut idx = 0;
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        entries.push((i, j, cvals[idx]));
                        idx += 1;
                    }
                }
                CubeSpec::new(n, &entries, &ell).unwrap()
            })
    })
}

pub const SMALL_CARTAN_LABELS: [&str; 5] = ["A1", "A2", "A3", "B2", "G2"];

/// A random `(cartan, lambda, word)` triple over the small rank-at-most-3
/// types, with dominant weight coordinates in `0..=3` and word length
/// `0..=max_len`.
pub fn random_rep_instance(
    rng: &mut ChaCha8Rng,
    max_len: usize,
) -> (CartanMatrix, Vec<i64>, Vec<usize>) {
    let label = SMALL_CARTAN_LABELS[(rng.next_u64() % 5) as usize];
    let cartan = CartanMatrix::from_label(label).unwrap();
    let rank = cartan.rank();
    let lambda: Vec<i64> = (0..rank).map(|_| pick(rng, 0, 3)).collect();
    let len = (rng.next_u64() % (max_len as u64 + 1)) as usize;
    let word: Vec<usize> = (0..len)
        .map(|_| 1 + (rng.next_u64() % rank as u64) as usize)
        .collect();
    (cartan, lambda, word)
}
