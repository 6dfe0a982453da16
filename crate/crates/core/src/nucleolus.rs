//! Nucleolus of a simple game by sequential exact min-max linear programs.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::counting::PowerProfile;
use crate::game::{Coalition, SimpleGame};
use crate::lp::{LinearProgram, LpError, Relation};
use crate::rational::Rational;

/// LPs carry one row per coalition, so the player count is capped.
pub const NUCLEOLUS_MAX_PLAYERS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NucleolusError {
    #[error("nucleolus supports at most {NUCLEOLUS_MAX_PLAYERS} players, got {0}")]
    PlayerCountTooLarge(usize),
    #[error("allocation total exceeds the value 1 of the grand coalition")]
    AllocationExceedsBudget,
    #[error("allocation has {got} entries for a game on {expected} players")]
    AllocationLength { got: usize, expected: usize },
    #[error("excess profiles of different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("stage linear program failed: {0}")]
    Lp(#[from] LpError),
}

/// All 2^n excesses v(S) - x(S), sorted weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessProfile(pub Vec<Rational>);

fn coalition_sum(x: &[Rational], s: Coalition) -> Rational {
    s.players().map(|p| &x[p]).sum()
}

pub fn excess_profile(v: &SimpleGame, x: &[Rational]) -> Result<ExcessProfile, NucleolusError> {
    if x.len() != v.num_players() {
        return Err(NucleolusError::AllocationLength {
            got: x.len(),
            expected: v.num_players(),
        });
    }
    if coalition_sum(x, v.grand_coalition()) > Rational::one() {
        return Err(NucleolusError::AllocationExceedsBudget);
    }
    let mut excesses: Vec<Rational> = v
        .coalitions()
        .map(|s| {
            let worth = if v.is_winning(s) {
                Rational::one()
            } else {
                Rational::zero()
            };
            worth - coalition_sum(x, s)
        })
        .collect();
    excesses.sort_unstable_by(|a, b| b.cmp(a));
    Ok(ExcessProfile(excesses))
}

pub fn lex_compare(a: &ExcessProfile, b: &ExcessProfile) -> Result<Ordering, NucleolusError> {
    if a.0.len() != b.0.len() {
        return Err(NucleolusError::LengthMismatch(a.0.len(), b.0.len()));
    }
    Ok(a.0.cmp(&b.0))
}

/// Rows kept in echelon form, used to decide whether a coalition's excess is
/// already pinned by the frozen ones.
struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone() / &row[*pivot];
            for (vj, rj) in v.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *vj -= &factor * rj;
                }
            }
        }
        v
    }

    fn contains(&self, v: Vec<Rational>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    fn insert(&mut self, v: Vec<Rational>) {
        let r = self.reduce(v);
        if let Some(pivot) = r.iter().position(|x| !x.is_zero()) {
            self.rows.push((pivot, r));
        }
    }
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

/// Lexicographic minimizer of the sorted excesses over x(N) ≤ 1 (and x ≥ 0 if requested).
///
/// Each stage minimizes the largest excess t among the unfrozen coalitions,
/// freezes those whose excess equals t on the whole optimal face, and drops
/// coalitions whose excess is already determined by the frozen ones.
pub fn nucleolus_with(v: &SimpleGame, nonnegative: bool) -> Result<PowerProfile, NucleolusError> {
    let n = v.num_players();
    if n > NUCLEOLUS_MAX_PLAYERS {
        return Err(NucleolusError::PlayerCountTooLarge(n));
    }
    let t = n;
    let one = Rational::one();
    let mut frozen: Vec<(Coalition, Rational)> = Vec::new();
    let mut span = Span { rows: Vec::new() };
    // The empty coalition has constant excess 0 and never changes the order.
    let mut active: Vec<Coalition> = v.coalitions().skip(1).collect();
    let mut witness: Vec<Rational> = Vec::new();

    while !active.is_empty() {
        let mut lp = LinearProgram::new(n + 1);
        if !nonnegative {
            for i in 0..n {
                lp.set_free(i);
            }
        }
        lp.set_free(t);
        let mut objective = vec![Rational::zero(); n + 1];
        objective[t] = one.clone();
        lp.set_objective(objective);

        let mut grand = vec![one.clone(); n + 1];
        grand[t] = Rational::zero();
        lp.add(grand, Relation::Le, one.clone());
        for (s, e) in &frozen {
            let mut row = indicator(n, *s);
            row.push(Rational::zero());
            let worth = if v.is_winning(*s) {
                one.clone()
            } else {
                Rational::zero()
            };
            lp.add(row, Relation::Eq, worth - e);
        }
        // v(S) - x(S) <= t   <=>   x(S) + t >= v(S)
        let first_active = lp.constraints.len();
        for &s in &active {
            let mut row = indicator(n, s);
            row.push(one.clone());
            let worth = if v.is_winning(s) {
                one.clone()
            } else {
                Rational::zero()
            };
            lp.add(row, Relation::Ge, worth);
        }
        let candidates: Vec<usize> = (first_active..lp.constraints.len()).collect();
        let stage = lp.min_max_among(&candidates)?;
        assert!(
            !stage.tight.is_empty(),
            "a min-max stage must pin at least one coalition"
        );

        let pinned: Vec<Coalition> = stage
            .tight
            .iter()
            .map(|&k| active[k - first_active])
            .collect();
        for &s in &pinned {
            frozen.push((s, stage.optimum.clone()));
            span.insert(indicator(n, s));
        }
        active.retain(|s| !pinned.contains(s) && !span.contains(indicator(n, *s)));
        witness = stage.witness[..n].to_vec();
    }
    Ok(PowerProfile::new(witness, true))
}

/// The nucleolus with explicit x ≥ 0 constraints.
pub fn nucleolus(v: &SimpleGame) -> Result<PowerProfile, NucleolusError> {
    nucleolus_with(v, true)
}

/// The player holding the whole nucleolus, which is exactly the unique veto player.
pub fn nucleolus_full_power_check(v: &SimpleGame) -> Option<usize> {
    match v.classify_players().veto_players().as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}
