//! Counting-based power indices: Shapley-Shubik, Penrose-Banzhaf, Public Good,
//! Deegan-Packel, Johnston, Shift and Shift Deegan-Packel.
//!
//! Every index accumulates integer numerators over coalitions and is turned
//! into exact rationals only once, at normalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::game::{Coalition, GameError, SimpleGame};
use crate::rational::Rational;

/// One exact value per player, flagged when the values sum to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerProfile {
    values: Vec<Rational>,
    efficient: bool,
}

impl PowerProfile {
    /// Scales a non-negative, non-zero vector to sum one.
    ///
    /// Panics on a zero vector; surjective games always produce positive mass.
    pub fn normalize(raw: &[Rational]) -> Self {
        let total: Rational = raw.iter().sum();
        assert!(!total.is_zero(), "normalizing a zero power vector");
        PowerProfile {
            values: raw.iter().map(|v| v / &total).collect(),
            efficient: true,
        }
    }

    pub fn new(values: Vec<Rational>, efficient: bool) -> Self {
        PowerProfile { values, efficient }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn get(&self, player: usize) -> &Rational {
        &self.values[player]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_efficient(&self) -> bool {
        self.efficient
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Same relabeling convention as [`SimpleGame::permute`].
    pub fn permute(&self, perm: &[usize]) -> PowerProfile {
        let mut values = vec![Rational::zero(); self.values.len()];
        for (i, v) in self.values.iter().enumerate() {
            values[perm[i]] = v.clone();
        }
        PowerProfile {
            values,
            efficient: self.efficient,
        }
    }

    /// Restricts to the given players, in order.
    pub fn select(&self, players: &[usize]) -> Vec<Rational> {
        players.iter().map(|&p| self.values[p].clone()).collect()
    }
}

/// Un-normalized index numerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCounts {
    pub values: Vec<Rational>,
}

impl RawCounts {
    pub fn normalize(&self) -> PowerProfile {
        PowerProfile::normalize(&self.values)
    }
}

fn to_rational(v: u128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn lcm_upto(n: usize) -> u128 {
    (1..=n as u128).fold(1, |acc, k| acc.lcm(&k))
}

fn factorials(n: usize) -> Vec<u128> {
    let mut f = vec![1u128; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as u128;
    }
    f
}

/// Shapley-Shubik: marginal contributions weighted by |S|!(n-|S|-1)!/n!.
pub fn ssi(v: &SimpleGame) -> PowerProfile {
    let n = v.num_players();
    let fact = factorials(n);
    let mut num = vec![0u128; n];
    for w in v.winning_coalitions() {
        let weight = fact[w.len() - 1] * fact[n - w.len()];
        for i in w.players() {
            if !v.is_winning(w.without(i)) {
                num[i] += weight;
            }
        }
    }
    let denom = Rational::from_integer(BigInt::from(fact[n]));
    PowerProfile::new(
        num.into_iter().map(|x| to_rational(x) / &denom).collect(),
        true,
    )
}

/// Swing counts ψ_i and the normalized Penrose-Banzhaf index.
pub fn banzhaf(v: &SimpleGame) -> (RawCounts, PowerProfile) {
    let mut count = vec![0u128; v.num_players()];
    for w in v.winning_coalitions() {
        for i in w.players() {
            if !v.is_winning(w.without(i)) {
                count[i] += 1;
            }
        }
    }
    let raw = RawCounts {
        values: count.into_iter().map(to_rational).collect(),
    };
    let profile = raw.normalize();
    (raw, profile)
}

/// Johnston: each winning coalition splits one unit equally among its critical players.
pub fn johnston(v: &SimpleGame) -> (RawCounts, PowerProfile) {
    let n = v.num_players();
    let scale = lcm_upto(n);
    let mut num = vec![0u128; n];
    for w in v.winning_coalitions() {
        let critical = v.critical_unchecked(w);
        if critical.is_empty() {
            continue;
        }
        let share = scale / critical.len() as u128;
        for i in critical.players() {
            num[i] += share;
        }
    }
    let scale = to_rational(scale);
    let raw = RawCounts {
        values: num.into_iter().map(|x| to_rational(x) / &scale).collect(),
    };
    let profile = raw.normalize();
    (raw, profile)
}

/// Per-player membership counts over `coalitions`, optionally split equally within each.
fn membership_profile(n: usize, coalitions: &[Coalition], equal_division: bool) -> PowerProfile {
    let scale = if equal_division { lcm_upto(n) } else { 1 };
    let mut num = vec![0u128; n];
    for s in coalitions {
        let share = if equal_division {
            scale / s.len() as u128
        } else {
            1
        };
        for i in s.players() {
            num[i] += share;
        }
    }
    PowerProfile::normalize(&num.into_iter().map(to_rational).collect::<Vec<_>>())
}

/// Public Good index: number of minimal winning coalitions containing each player.
pub fn pgi(v: &SimpleGame) -> PowerProfile {
    membership_profile(v.num_players(), &v.minimal_winning(), false)
}

/// Deegan-Packel index: equal division over minimal winning coalitions.
pub fn dp(v: &SimpleGame) -> PowerProfile {
    membership_profile(v.num_players(), &v.minimal_winning(), true)
}

pub fn shift_index(v: &SimpleGame) -> Result<PowerProfile, GameError> {
    Ok(membership_profile(
        v.num_players(),
        &v.shift_minimal_winning()?,
        false,
    ))
}

pub fn shift_dp(v: &SimpleGame) -> Result<PowerProfile, GameError> {
    Ok(membership_profile(
        v.num_players(),
        &v.shift_minimal_winning()?,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::rational::frac;

    fn wg(q: i64, w: &[i64]) -> SimpleGame {
        WeightedGame::from_integers(q, w).unwrap().to_simple()
    }

    fn fracs(pairs: &[(i64, i64)]) -> Vec<Rational> {
        pairs.iter().map(|&(a, b)| frac(a, b)).collect()
    }

    #[test]
    fn shapley_shubik() {
        assert_eq!(
            ssi(&wg(5, &[3, 2, 1, 1])).values(),
            fracs(&[(7, 12), (3, 12), (1, 12), (1, 12)])
        );
        assert_eq!(
            ssi(&wg(3, &[3, 1, 1, 1])).values(),
            fracs(&[(9, 12), (1, 12), (1, 12), (1, 12)])
        );
        assert_eq!(
            ssi(&wg(1, &[1, 0, 0])).values(),
            fracs(&[(1, 1), (0, 1), (0, 1)])
        );
    }

    #[test]
    fn penrose_banzhaf() {
        let (_, p) = banzhaf(&wg(5, &[3, 2, 1, 1]));
        assert_eq!(p.values(), fracs(&[(5, 10), (3, 10), (1, 10), (1, 10)]));
        let (raw, p) = banzhaf(&wg(3, &[3, 1, 1, 1]));
        assert_eq!(raw.values, fracs(&[(7, 1), (1, 1), (1, 1), (1, 1)]));
        assert_eq!(p.values(), fracs(&[(7, 10), (1, 10), (1, 10), (1, 10)]));
        assert_eq!(
            banzhaf(&wg(2, &[1, 1, 1])).1.values(),
            fracs(&[(1, 3), (1, 3), (1, 3)])
        );
    }

    #[test]
    fn public_good() {
        assert_eq!(
            pgi(&wg(5, &[3, 2, 1, 1])).values(),
            fracs(&[(2, 5), (1, 5), (1, 5), (1, 5)])
        );
        assert_eq!(
            pgi(&wg(1, &[1, 1, 0, 0])).values(),
            fracs(&[(1, 2), (1, 2), (0, 1), (0, 1)])
        );
        assert_eq!(pgi(&wg(1, &[1, 0])).values(), fracs(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn deegan_packel() {
        // Minimal winning {1,2} and {1,3,4}: shares 1/2+1/3, 1/2, 1/3, 1/3 over 2 coalitions.
        assert_eq!(
            dp(&wg(5, &[3, 2, 1, 1])).values(),
            fracs(&[(5, 12), (3, 12), (2, 12), (2, 12)])
        );
        assert_eq!(
            dp(&wg(2, &[1, 1, 0, 0])).values(),
            fracs(&[(1, 2), (1, 2), (0, 1), (0, 1)])
        );
        assert_eq!(
            dp(&wg(2, &[1, 1, 1])).values(),
            fracs(&[(1, 3), (1, 3), (1, 3)])
        );
    }

    #[test]
    fn johnston_index() {
        let (_, p) = johnston(&wg(3, &[3, 1, 1, 1]));
        assert_eq!(p.values(), fracs(&[(7, 8), (1, 24), (1, 24), (1, 24)]));
        // Winning coalitions and critical sets: {1,2}:{1,2}, {1,2,3}:{1,2}, {1,2,4}:{1,2},
        // {1,3,4}:{1,3,4}, {1,2,3,4}:{1}.
        let (raw, p) = johnston(&wg(5, &[3, 2, 1, 1]));
        assert_eq!(raw.values, fracs(&[(17, 6), (9, 6), (2, 6), (2, 6)]));
        assert_eq!(p.values(), fracs(&[(17, 30), (9, 30), (2, 30), (2, 30)]));
        assert_eq!(
            johnston(&wg(2, &[1, 1])).1.values(),
            fracs(&[(1, 2), (1, 2)])
        );
    }

    #[test]
    fn shift_indices() {
        let majority = wg(2, &[1, 1, 1]);
        assert_eq!(
            shift_index(&majority).unwrap().values(),
            fracs(&[(1, 3), (1, 3), (1, 3)])
        );
        assert_eq!(
            shift_dp(&majority).unwrap().values(),
            fracs(&[(1, 3), (1, 3), (1, 3)])
        );
        let dictator = wg(1, &[1, 0]);
        assert_eq!(
            shift_index(&dictator).unwrap().values(),
            fracs(&[(1, 1), (0, 1)])
        );
        assert_eq!(
            shift_dp(&dictator).unwrap().values(),
            fracs(&[(1, 1), (0, 1)])
        );
        let unanimity = wg(3, &[1, 1, 1]);
        assert_eq!(
            shift_dp(&unanimity).unwrap().values(),
            fracs(&[(1, 3), (1, 3), (1, 3)])
        );
        // Shift-minimal set of [5;3,2,1,1] is {1,2},{1,3,4}: counts 2,1,1,1.
        assert_eq!(
            shift_index(&wg(5, &[3, 2, 1, 1])).unwrap().values(),
            fracs(&[(2, 5), (1, 5), (1, 5), (1, 5)])
        );
        // [4;2,1,1,1,1]: the six {1,a,b} and {2,3,4,5} are all shift-minimal.
        let g = wg(4, &[2, 1, 1, 1, 1]);
        assert_eq!(
            shift_index(&g).unwrap().values(),
            fracs(&[(6, 22), (4, 22), (4, 22), (4, 22), (4, 22)])
        );
        let not_complete = SimpleGame::from_minimal_winning(
            4,
            &[
                Coalition::from_players([0, 1]),
                Coalition::from_players([2, 3]),
            ],
        )
        .unwrap();
        assert_eq!(shift_index(&not_complete), Err(GameError::GameNotComplete));
        assert_eq!(shift_dp(&not_complete), Err(GameError::GameNotComplete));
    }

    #[test]
    fn profiles_permute_with_games() {
        let g = wg(5, &[3, 2, 1, 1]);
        let perm = [2, 0, 3, 1];
        assert_eq!(ssi(&g.permute(&perm)), ssi(&g).permute(&perm));
    }
}
