//! Weightedness testing and the representation-based indices: minimum sum
//! representation index, average weight index and average representation index.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::counting::PowerProfile;
use crate::game::{Coalition, DesirabilityOrder, SimpleGame, WeightedGame};
use crate::lp::{LinearProgram, LpError, Relation};
use crate::polytope::{CentroidResult, GeometryError, Polytope};
use crate::rational::Rational;

/// Vertex enumeration grows quickly with the number of players.
pub const REPRESENTATION_MAX_PLAYERS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("the game is not weighted")]
    GameNotWeighted,
    #[error(
        "representation indices support at most {REPRESENTATION_MAX_PLAYERS} players, got {0}"
    )]
    PlayerCountTooLarge(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Integer quota and weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerRepresentation {
    pub quota: u64,
    pub weights: Vec<u64>,
}

impl IntegerRepresentation {
    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn to_weighted_game(&self) -> WeightedGame {
        let r = |x: u64| Rational::from_integer(BigInt::from(x));
        WeightedGame::new(r(self.quota), self.weights.iter().map(|&w| r(w)).collect())
            .expect("integer representations have a positive quota within the total weight")
    }
}

impl std::fmt::Display for IntegerRepresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "[{};{}]", self.quota, w.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolytopeKind {
    /// Normalized weight vectors w with w(S) ≥ w(T) for minimal winning S and maximal losing T.
    Weight,
    /// Pairs (q, w), quota first, with w(T) ≤ q ≤ w(S).
    Representation,
}

fn indicator(n: usize, s: Coalition) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            if s.contains(i) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Separating LP: w(S) ≥ q for minimal winning S, w(T) ≤ q - 1 for maximal
/// losing T, q ≥ 1, w ≥ 0, minimizing the total weight.
pub fn is_weighted(v: &SimpleGame) -> (bool, Option<WeightedGame>) {
    let n = v.num_players();
    let q = n;
    let mut lp = LinearProgram::new(n + 1);
    let mut objective = vec![Rational::one(); n + 1];
    objective[q] = Rational::zero();
    lp.set_objective(objective);
    let mut quota_row = vec![Rational::zero(); n + 1];
    quota_row[q] = Rational::one();
    lp.add(quota_row, Relation::Ge, Rational::one());
    for s in v.minimal_winning() {
        let mut row = indicator(n, s);
        row.push(-Rational::one());
        lp.add(row, Relation::Ge, Rational::zero());
    }
    for t in v.maximal_losing() {
        let mut row = indicator(n, t);
        row.push(-Rational::one());
        lp.add(row, Relation::Le, -Rational::one());
    }
    match lp.solve() {
        Ok(solution) => {
            let mut point = solution.point;
            let quota = point.pop().expect("quota variable");
            let game =
                WeightedGame::new(quota, point).expect("LP witness is a valid weighted game");
            debug_assert_eq!(&game.to_simple(), v);
            (true, Some(game))
        }
        Err(LpError::Infeasible) => (false, None),
        Err(e) => panic!("weightedness LP failed: {e}"),
    }
}

fn require_weighted(v: &SimpleGame) -> Result<(), RepresentationError> {
    if v.num_players() > REPRESENTATION_MAX_PLAYERS {
        return Err(RepresentationError::PlayerCountTooLarge(v.num_players()));
    }
    if !is_weighted(v).0 {
        return Err(RepresentationError::GameNotWeighted);
    }
    Ok(())
}

struct SumSearch<'a> {
    order: Vec<usize>,
    level: Vec<usize>,
    nonnull: usize,
    minimal_winning: &'a [Coalition],
    maximal_losing: &'a [Coalition],
    found: Vec<IntegerRepresentation>,
}

impl SumSearch<'_> {
    fn weight(weights: &[u64], s: Coalition) -> u64 {
        s.players().map(|p| weights[p]).sum()
    }

    fn leaf(&mut self, canonical: &[u64]) {
        let mut weights = vec![0u64; canonical.len()];
        for (pos, &player) in self.order.iter().enumerate() {
            weights[player] = canonical[pos];
        }
        let lo = self
            .maximal_losing
            .iter()
            .map(|&t| Self::weight(&weights, t))
            .max()
            .unwrap_or(0)
            + 1;
        let hi = self
            .minimal_winning
            .iter()
            .map(|&s| Self::weight(&weights, s))
            .min()
            .expect("surjective game");
        for quota in lo..=hi {
            self.found.push(IntegerRepresentation {
                quota,
                weights: weights.clone(),
            });
        }
    }

    /// Non-increasing weights along `order`, strictly decreasing across
    /// desirability levels, at least 1 for non-null players and 0 for null ones.
    fn extend(&mut self, assigned: &mut Vec<u64>, remaining: u64) {
        let pos = assigned.len();
        if pos == self.order.len() {
            if remaining == 0 {
                self.leaf(assigned);
            }
            return;
        }
        if pos >= self.nonnull {
            assigned.push(0);
            self.extend(assigned, remaining);
            assigned.pop();
            return;
        }
        let cap = match pos {
            0 => remaining,
            _ if self.level[pos] == self.level[pos - 1] => assigned[pos - 1],
            _ => assigned[pos - 1] - 1,
        };
        let left = (self.nonnull - pos - 1) as u64;
        for w in (1..=cap.min(remaining)).rev() {
            let rest = remaining - w;
            if rest < left || rest > left * w {
                continue;
            }
            assigned.push(w);
            self.extend(assigned, rest);
            assigned.pop();
        }
    }
}

/// Every arrangement of the multiset `values`, in lexicographic order.
fn distinct_permutations(values: &[u64]) -> Vec<Vec<u64>> {
    let mut current = values.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (0..current.len().saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..current.len())
            .rev()
            .find(|&j| current[j] > current[i])
            .unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
}

/// Spreads a canonical representation over all reorderings inside each desirability level.
fn expand_within_levels(
    rep: &IntegerRepresentation,
    order: &DesirabilityOrder,
) -> Vec<IntegerRepresentation> {
    let mut results = vec![rep.clone()];
    for class in order.levels.iter().filter(|c| c.len() > 1) {
        let values: Vec<u64> = class.iter().map(|&p| rep.weights[p]).collect();
        let arrangements = distinct_permutations(&values);
        results = results
            .iter()
            .flat_map(|base| {
                arrangements.iter().map(move |arr| {
                    let mut next = base.clone();
                    for (&p, &w) in class.iter().zip(arr) {
                        next.weights[p] = w;
                    }
                    next
                })
            })
            .collect();
    }
    results
}

/// All integer representations of minimum total weight, in sorted order.
pub fn min_sum_representations(
    v: &SimpleGame,
) -> Result<Vec<IntegerRepresentation>, RepresentationError> {
    require_weighted(v)?;
    let order = v.desirability_order().expect("weighted games are complete");
    let nulls = v.classify_players().null_players();
    let mut sequence: Vec<usize> = order
        .levels
        .iter()
        .flatten()
        .copied()
        .filter(|p| !nulls.contains(p))
        .collect();
    let nonnull = sequence.len();
    sequence.extend(&nulls);
    let minimal_winning = v.minimal_winning();
    let maximal_losing = v.maximal_losing();
    let mut search = SumSearch {
        level: sequence.iter().map(|&p| order.level_of[p]).collect(),
        order: sequence,
        nonnull,
        minimal_winning: &minimal_winning,
        maximal_losing: &maximal_losing,
        found: Vec::new(),
    };
    let mut total = nonnull as u64;
    loop {
        search.extend(&mut Vec::new(), total);
        if !search.found.is_empty() {
            break;
        }
        total += 1;
    }
    let mut all: Vec<IntegerRepresentation> = search
        .found
        .iter()
        .flat_map(|rep| expand_within_levels(rep, &order))
        .collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// Average over all minimum-sum representations of the normalized weights.
pub fn msri(v: &SimpleGame) -> Result<PowerProfile, RepresentationError> {
    let reps = min_sum_representations(v)?;
    let n = v.num_players();
    let mut acc = vec![Rational::zero(); n];
    for rep in &reps {
        let total = Rational::from_integer(BigInt::from(rep.weight_sum()));
        for (a, &w) in acc.iter_mut().zip(&rep.weights) {
            *a += Rational::from_integer(BigInt::from(w)) / &total;
        }
    }
    let count = Rational::from_integer(BigInt::from(reps.len()));
    Ok(PowerProfile::new(
        acc.into_iter().map(|a| a / &count).collect(),
        true,
    ))
}

pub fn build_polytope(v: &SimpleGame, kind: PolytopeKind) -> Result<Polytope, RepresentationError> {
    require_weighted(v)?;
    let n = v.num_players();
    let minimal_winning = v.minimal_winning();
    let maximal_losing = v.maximal_losing();
    let zero = Rational::zero;
    let one = Rational::one;
    let polytope = match kind {
        PolytopeKind::Weight => {
            let mut p = Polytope::new(n);
            p.add_equality(vec![one(); n], one())?;
            for i in 0..n {
                let mut e = vec![zero(); n];
                e[i] = one();
                p.add_ge(e, zero())?;
            }
            for &s in &minimal_winning {
                for &t in &maximal_losing {
                    // w(T) - w(S) <= 0
                    let coeffs = (0..n)
                        .map(|i| match (t.contains(i), s.contains(i)) {
                            (true, false) => one(),
                            (false, true) => -one(),
                            _ => zero(),
                        })
                        .collect();
                    p.add_le(coeffs, zero())?;
                }
            }
            p
        }
        PolytopeKind::Representation => {
            let with_quota = |q: i64, s: Coalition| -> Vec<Rational> {
                let mut row = vec![Rational::from_integer(BigInt::from(q))];
                row.extend(indicator(n, s));
                row
            };
            let mut p = Polytope::new(n + 1);
            p.add_equality(with_quota(0, v.grand_coalition()), one())?;
            for i in 0..=n {
                let mut e = vec![zero(); n + 1];
                e[i] = one();
                p.add_ge(e, zero())?;
            }
            p.add_le(with_quota(1, Coalition::EMPTY), one())?;
            for &s in &minimal_winning {
                // q - w(S) <= 0
                let row = with_quota(1, s)
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| if i == 0 { c } else { -c })
                    .collect();
                p.add_le(row, zero())?;
            }
            for &t in &maximal_losing {
                // w(T) - q <= 0
                p.add_le(with_quota(-1, t), zero())?;
            }
            p
        }
    };
    Ok(polytope)
}

pub fn polytope_centroid(p: &Polytope) -> Result<CentroidResult, RepresentationError> {
    Ok(p.centroid()?)
}

/// Centroid of the weight polytope.
pub fn awi(v: &SimpleGame) -> Result<PowerProfile, RepresentationError> {
    let c = polytope_centroid(&build_polytope(v, PolytopeKind::Weight)?)?;
    Ok(PowerProfile::new(c.centroid, true))
}

/// Weight coordinates of the centroid of the representation polytope.
pub fn ari(v: &SimpleGame) -> Result<PowerProfile, RepresentationError> {
    let c = polytope_centroid(&build_polytope(v, PolytopeKind::Representation)?)?;
    Ok(PowerProfile::new(c.centroid[1..].to_vec(), true))
}
