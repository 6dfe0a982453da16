mod common;

use std::collections::BTreeMap;

use common::wg;
use num_traits::Zero;
use powerkit::extremal::{enumerate_games, ExtremalConfig, GameClass};
use powerkit::inverse::{best_approximation, gap_lower_bound, TargetDistribution};
use powerkit::rational::{frac, Rational};
use powerkit::{PowerIndex, SimpleGame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Profiles = BTreeMap<(PowerIndex, usize), Vec<(SimpleGame, Vec<Rational>)>>;

fn random_sigma(rng: &mut ChaCha8Rng, n: usize) -> TargetDistribution {
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
    let raw = if raw.iter().all(|&x| x == 0) {
        vec![1; n]
    } else {
        raw
    };
    let total: i64 = raw.iter().sum();
    TargetDistribution::new(raw.iter().map(|&x| frac(x, total)).collect()).unwrap()
}

fn class_for(index: PowerIndex) -> GameClass {
    if GameClass::Simple.supports(index) {
        GameClass::Simple
    } else {
        GameClass::Weighted
    }
}

#[test]
fn worked_example_distance() {
    let config = ExtremalConfig::default();
    let sigma = TargetDistribution::parse("3/4,1/4,0,0").unwrap();
    let report = gap_lower_bound(&sigma, PowerIndex::Pgi, 4, &frac(1, 2)).unwrap();
    assert_eq!(report.bound, frac(1, 4));
    let (game, distance) =
        best_approximation(&sigma, PowerIndex::Pgi, 4, GameClass::Simple, &config).unwrap();
    assert!(distance >= frac(1, 4));
    assert_eq!(
        sigma.distance(PowerIndex::Pgi.compute(&game).unwrap().values()),
        distance
    );
}

#[test]
fn achievable_targets_have_distance_zero() {
    let config = ExtremalConfig::default();
    let g = wg(5, &[3, 2, 1, 1]);
    let sigma =
        TargetDistribution::new(PowerIndex::Ssi.compute(&g).unwrap().into_values()).unwrap();
    let (found, d) =
        best_approximation(&sigma, PowerIndex::Ssi, 4, GameClass::Weighted, &config).unwrap();
    assert!(d.is_zero());
    assert_eq!(found, g);
    let even = TargetDistribution::parse("1/2,1/2").unwrap();
    for index in PowerIndex::STANDARD {
        let (found, d) = best_approximation(&even, index, 2, class_for(index), &config).unwrap();
        if !index.bounds_all_values() {
            assert!(d.is_zero(), "{index}");
            assert_eq!(found, wg(2, &[1, 1]), "{index}");
        }
    }
}

#[test]
fn random_targets_respect_the_lower_bound() {
    let config = ExtremalConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // Index profiles per (index, n) are computed once; best_approximation is run on a sample.
    let mut profiles: Profiles = BTreeMap::new();
    for case in 0..50 {
        let n = rng.gen_range(2..=4);
        let sigma = random_sigma(&mut rng, n);
        for index in PowerIndex::STANDARD {
            let class = class_for(index);
            let table = profiles.entry((index, n)).or_insert_with(|| {
                enumerate_games(n, class, &config)
                    .unwrap()
                    .into_iter()
                    .map(|g| {
                        let p = index.compute(&g).unwrap().into_values();
                        (g, p)
                    })
                    .collect()
            });
            let best = table.iter().map(|(_, p)| sigma.distance(p)).min().unwrap();
            let alpha = index.closed_form_alpha(n).unwrap();
            let report = gap_lower_bound(&sigma, index, n, &alpha).unwrap();
            assert!(best >= report.bound, "{index} n={n} {:?}", sigma.values());
            if case % 10 == 0 {
                let (game, d) = best_approximation(&sigma, index, n, class, &config).unwrap();
                assert_eq!(d, best);
                assert_eq!(sigma.distance(index.compute(&game).unwrap().values()), d);
            }
        }
    }
}

#[test]
fn simple_games_approximate_at_least_as_well_as_weighted_games() {
    let config = ExtremalConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let n = rng.gen_range(2..=4);
        let sigma = random_sigma(&mut rng, n);
        for index in [
            PowerIndex::Ssi,
            PowerIndex::Bzi,
            PowerIndex::Pgi,
            PowerIndex::Dp,
            PowerIndex::Js,
        ] {
            let (_, simple) =
                best_approximation(&sigma, index, n, GameClass::Simple, &config).unwrap();
            let (_, weighted) =
                best_approximation(&sigma, index, n, GameClass::Weighted, &config).unwrap();
            assert!(simple <= weighted, "{index}");
        }
    }
}
