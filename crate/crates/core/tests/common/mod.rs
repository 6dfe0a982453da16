#![allow(dead_code)]

use powerkit::rational::{frac, Rational};
use powerkit::{Coalition, SimpleGame, WeightedGame};
use rand::Rng;

pub fn wg(q: i64, w: &[i64]) -> SimpleGame {
    WeightedGame::from_integers(q, w).unwrap().to_simple()
}

pub fn fracs(pairs: &[(i64, i64)]) -> Vec<Rational> {
    pairs.iter().map(|&(a, b)| frac(a, b)).collect()
}

pub fn dictator(n: usize) -> SimpleGame {
    let mut w = vec![0; n];
    w[0] = 1;
    wg(1, &w)
}

/// Upward closure of a few random non-empty coalitions.
pub fn random_game<R: Rng>(rng: &mut R, n: usize) -> SimpleGame {
    let count = rng.gen_range(1..=4);
    let picks: Vec<Coalition> = (0..count)
        .map(|_| Coalition::from_mask(rng.gen_range(1..(1u32 << n))))
        .collect();
    let minimal: Vec<Coalition> = picks
        .iter()
        .copied()
        .filter(|&s| !picks.iter().any(|&t| t != s && t.is_subset_of(s)))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    SimpleGame::from_minimal_winning(n, &minimal).unwrap()
}

pub fn random_weighted_game<R: Rng>(rng: &mut R, n: usize) -> SimpleGame {
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        return wg(rng.gen_range(1..=total), &w);
    }
}
