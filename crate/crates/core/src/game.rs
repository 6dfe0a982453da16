//! Simple and weighted games with a dense winning-coalition indicator.
//!
//! Players are 0-based inside the library. Everything that is shown to a
//! user (display impls, the JSON format, error messages) is 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, Rational};

/// Largest supported player count; the indicator then takes 2 MiB.
pub const MAX_PLAYERS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("{0} players requested, at most {MAX_PLAYERS} are supported")]
    TooManyPlayers(usize),
    #[error("quota must be positive")]
    NonPositiveQuota,
    #[error("weight of player {0} is negative")]
    NegativeWeight(usize),
    #[error("quota {quota} exceeds the total weight {total}")]
    QuotaExceedsTotalWeight { quota: String, total: String },
    #[error("the list of minimal winning coalitions is empty")]
    EmptyList,
    #[error("coalition {0} contains coalition {1}")]
    NotAnAntichain(String, String),
    #[error("player {player} is out of range for a game on {n} players")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("the game is not monotone: {0} wins but {1} loses")]
    NotMonotone(String, String),
    #[error("the game is not surjective: the empty coalition must lose and the grand coalition must win")]
    NotSurjective,
    #[error("coalition {0} is not winning")]
    CoalitionNotWinning(String),
    #[error("the game is not complete")]
    GameNotComplete,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid indicator encoding: {0}")]
    BadEncoding(String),
}

/// A set of players encoded as a bit mask; bit `i` set means player `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grand(n: usize) -> Self {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Coalition(players.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << player)
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << player))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn players(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask >> i & 1 == 1)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.players().map(|p| (p + 1).to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// A monotone, surjective map from coalitions to {0, 1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleGame {
    n: usize,
    bits: Vec<u64>,
}

// Bit patterns selecting the positions without player i, for i < 6.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

fn check_player_count(n: usize) -> Result<(), GameError> {
    match n {
        0 => Err(GameError::NoPlayers),
        n if n > MAX_PLAYERS => Err(GameError::TooManyPlayers(n)),
        _ => Ok(()),
    }
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl SimpleGame {
    fn blank(n: usize) -> Self {
        SimpleGame {
            n,
            bits: vec![0; word_count(n)],
        }
    }

    fn set(&mut self, s: Coalition) {
        self.bits[s.index() >> 6] |= 1 << (s.index() & 63);
    }

    /// Builds a game from a winning predicate and validates it.
    pub fn from_fn<F: FnMut(Coalition) -> bool>(
        n: usize,
        mut winning: F,
    ) -> Result<Self, GameError> {
        check_player_count(n)?;
        let mut game = Self::blank(n);
        for mask in 0..(1u32 << n) {
            if winning(Coalition(mask)) {
                game.set(Coalition(mask));
            }
        }
        game.validate()?;
        Ok(game)
    }

    /// Truth table with bit `S` holding v(S); only for n ≤ 6.
    pub fn from_truth_table(n: usize, table: u64) -> Result<Self, GameError> {
        check_player_count(n)?;
        if n > 6 {
            return Err(GameError::BadEncoding(format!(
                "truth table needs n ≤ 6, got {n}"
            )));
        }
        if n < 6 && table >> (1u32 << n) != 0 {
            return Err(GameError::BadEncoding(format!(
                "{table:#x} has bits beyond 2^{n}"
            )));
        }
        let game = SimpleGame {
            n,
            bits: vec![table],
        };
        game.validate()?;
        Ok(game)
    }

    /// The upward closure of an antichain of minimal winning coalitions.
    pub fn from_minimal_winning(n: usize, minimal: &[Coalition]) -> Result<Self, GameError> {
        check_player_count(n)?;
        if minimal.is_empty() {
            return Err(GameError::EmptyList);
        }
        let grand = Coalition::grand(n);
        for &s in minimal {
            if !s.is_subset_of(grand) {
                let player = s.players().find(|&p| p >= n).unwrap_or(n) + 1;
                return Err(GameError::PlayerOutOfRange { player, n });
            }
        }
        for (a, &s) in minimal.iter().enumerate() {
            for (b, &t) in minimal.iter().enumerate() {
                if a != b && t.is_subset_of(s) {
                    return Err(GameError::NotAnAntichain(s.to_string(), t.to_string()));
                }
            }
        }
        let mut game = Self::blank(n);
        for &s in minimal {
            game.set(s);
        }
        game.close_upwards();
        game.validate()?;
        Ok(game)
    }

    fn close_upwards(&mut self) {
        for i in 0..self.n {
            if let Some(&mask) = LOW_MASKS.get(i) {
                let shift = 1u32 << i;
                for w in self.bits.iter_mut() {
                    *w |= (*w & mask) << shift;
                }
            } else {
                let step = 1usize << (i - 6);
                for w in 0..self.bits.len() {
                    if w & step == 0 {
                        self.bits[w | step] |= self.bits[w];
                    }
                }
            }
        }
    }

    fn validate(&self) -> Result<(), GameError> {
        if self.is_winning(Coalition::EMPTY) || !self.is_winning(Coalition::grand(self.n)) {
            return Err(GameError::NotSurjective);
        }
        for i in 0..self.n {
            let violation = if let Some(&mask) = LOW_MASKS.get(i) {
                let shift = 1u32 << i;
                self.bits.iter().enumerate().find_map(|(w, &word)| {
                    let bad = ((word & mask) << shift) & !word;
                    (bad != 0).then(|| (w * 64 + bad.trailing_zeros() as usize) as u32)
                })
            } else {
                let step = 1usize << (i - 6);
                (0..self.bits.len())
                    .filter(|w| w & step == 0)
                    .find_map(|w| {
                        let bad = self.bits[w] & !self.bits[w | step];
                        (bad != 0).then(|| ((w | step) * 64 + bad.trailing_zeros() as usize) as u32)
                    })
            };
            if let Some(superset) = violation {
                let superset = Coalition(superset);
                return Err(GameError::NotMonotone(
                    superset.without(i).to_string(),
                    superset.to_string(),
                ));
            }
        }
        Ok(())
    }

    pub fn num_players(&self) -> usize {
        self.n
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    pub fn is_winning(&self, s: Coalition) -> bool {
        let idx = s.index();
        self.bits[idx >> 6] >> (idx & 63) & 1 == 1
    }

    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> {
        (0..(1u32 << self.n)).map(Coalition)
    }

    pub fn winning_coalitions(&self) -> impl Iterator<Item = Coalition> + '_ {
        self.coalitions().filter(move |&s| self.is_winning(s))
    }

    pub fn num_winning(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Truth table for n ≤ 6, the inverse of [`SimpleGame::from_truth_table`].
    pub fn truth_table(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.bits[0])
    }

    /// Winning coalitions all of whose proper subsets lose, in mask order.
    pub fn minimal_winning(&self) -> Vec<Coalition> {
        self.winning_coalitions()
            .filter(|&s| s.players().all(|i| !self.is_winning(s.without(i))))
            .collect()
    }

    /// Losing coalitions all of whose proper supersets win, in mask order.
    pub fn maximal_losing(&self) -> Vec<Coalition> {
        let n = self.n;
        self.coalitions()
            .filter(|&t| !self.is_winning(t))
            .filter(|&t| {
                (0..n)
                    .filter(|&i| !t.contains(i))
                    .all(|i| self.is_winning(t.with(i)))
            })
            .collect()
    }

    pub fn coalition_analysis(&self) -> CoalitionAnalysis {
        CoalitionAnalysis {
            minimal_winning: self.minimal_winning(),
            maximal_losing: self.maximal_losing(),
        }
    }

    pub fn classify_players(&self) -> PlayerClassification {
        let mwc = self.minimal_winning();
        let players = (0..self.n)
            .map(|i| {
                let in_any = mwc.iter().any(|s| s.contains(i));
                let in_all = mwc.iter().all(|s| s.contains(i));
                PlayerClass {
                    is_null: !in_any,
                    is_veto: in_all,
                    is_passer: self.is_winning(Coalition::singleton(i)),
                    is_dictator: mwc.len() == 1 && mwc[0] == Coalition::singleton(i),
                }
            })
            .collect();
        PlayerClassification { players }
    }

    /// Returns `(i ⪰ j, j ⪰ i)` in the desirability relation.
    fn compare_players(&self, i: usize, j: usize) -> (bool, bool) {
        let (mut i_ge, mut j_ge) = (true, true);
        let pair = Coalition::singleton(i).with(j);
        for mask in 0..(1u32 << self.n) {
            let s = Coalition(mask);
            if s.mask() & pair.mask() != 0 {
                continue;
            }
            match (self.is_winning(s.with(i)), self.is_winning(s.with(j))) {
                (true, false) => j_ge = false,
                (false, true) => i_ge = false,
                _ => {}
            }
            if !i_ge && !j_ge {
                break;
            }
        }
        (i_ge, j_ge)
    }

    /// Classes of mutually symmetric players, each sorted, ordered by smallest member.
    pub fn symmetric_partition(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.compare_players(i, j) == (true, true) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for i in 0..self.n {
            let root = find(&mut parent, i);
            if slot[root] == usize::MAX {
                slot[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[root]].push(i);
        }
        classes
    }

    /// Members of the winning coalition `s` whose removal makes it lose.
    pub fn critical_players(&self, s: Coalition) -> Result<Coalition, GameError> {
        self.check_coalition(s)?;
        if !self.is_winning(s) {
            return Err(GameError::CoalitionNotWinning(s.to_string()));
        }
        Ok(self.critical_unchecked(s))
    }

    pub(crate) fn critical_unchecked(&self, s: Coalition) -> Coalition {
        Coalition::from_players(s.players().filter(|&i| !self.is_winning(s.without(i))))
    }

    fn check_coalition(&self, s: Coalition) -> Result<(), GameError> {
        match s.players().find(|&p| p >= self.n) {
            Some(p) => Err(GameError::PlayerOutOfRange {
                player: p + 1,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    /// Restriction to the non-null players, together with their original ids.
    pub fn remove_null_players(&self) -> (SimpleGame, Vec<usize>) {
        let classes = self.classify_players();
        let kept: Vec<usize> = (0..self.n)
            .filter(|&i| !classes.players[i].is_null)
            .collect();
        if kept.len() == self.n {
            return (self.clone(), kept);
        }
        let mut game = Self::blank(kept.len());
        for mask in 0..(1u32 << kept.len()) {
            let s = Coalition(mask);
            let original = Coalition::from_players(s.players().map(|p| kept[p]));
            if self.is_winning(original) {
                game.set(s);
            }
        }
        (game, kept)
    }

    /// The desirability preorder, if it is total.
    pub fn desirability_order(&self) -> Option<DesirabilityOrder> {
        let n = self.n;
        let mut dominated = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                match self.compare_players(i, j) {
                    (false, false) => return None,
                    (true, true) => {
                        dominated[i] += 1;
                        dominated[j] += 1;
                    }
                    (true, false) => dominated[i] += 1,
                    (false, true) => dominated[j] += 1,
                }
            }
        }
        // In a total preorder, more dominated players means strictly more desirable.
        let mut counts: Vec<usize> = dominated.clone();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        counts.dedup();
        let level_of: Vec<usize> = dominated
            .iter()
            .map(|d| counts.iter().position(|c| c == d).unwrap())
            .collect();
        let mut levels = vec![Vec::new(); counts.len()];
        for (player, &level) in level_of.iter().enumerate() {
            levels[level].push(player);
        }
        Some(DesirabilityOrder { levels, level_of })
    }

    pub fn is_complete(&self) -> bool {
        self.desirability_order().is_some()
    }

    /// Minimal winning coalitions that stay minimal under every shift of a
    /// member to a strictly less desirable outsider.
    pub fn shift_minimal_winning(&self) -> Result<Vec<Coalition>, GameError> {
        let order = self
            .desirability_order()
            .ok_or(GameError::GameNotComplete)?;
        Ok(self.shift_minimal_with(&order))
    }

    pub(crate) fn shift_minimal_with(&self, order: &DesirabilityOrder) -> Vec<Coalition> {
        let n = self.n;
        self.minimal_winning()
            .into_iter()
            .filter(|&s| {
                s.players().all(|i| {
                    (0..n)
                        .filter(|&j| !s.contains(j) && order.strictly_more(i, j))
                        .all(|j| !self.is_winning(s.without(i).with(j)))
                })
            })
            .collect()
    }

    /// Relabels players: player `i` of `self` becomes player `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> SimpleGame {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must match the player count"
        );
        let mut game = Self::blank(self.n);
        for s in self.winning_coalitions() {
            game.set(Coalition::from_players(s.players().map(|p| perm[p])));
        }
        game
    }

    /// Hex encoding of the indicator read as a 2^n-bit number, most significant digit first.
    pub fn to_hex(&self) -> String {
        if self.n < 6 {
            let digits = ((1usize << self.n) / 4).max(1);
            format!("{:0width$x}", self.bits[0], width = digits)
        } else {
            self.bits
                .iter()
                .rev()
                .map(|w| format!("{w:016x}"))
                .collect()
        }
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self, GameError> {
        check_player_count(n)?;
        let hex = hex.trim();
        let digits = ((1usize << n) / 4).max(1);
        if hex.len() != digits || !hex.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(GameError::BadEncoding(format!(
                "expected {digits} hex digits for n = {n}"
            )));
        }
        let mut game = Self::blank(n);
        let words = game.bits.len();
        for (k, chunk) in hex.as_bytes().rchunks(16).enumerate().take(words) {
            let text = std::str::from_utf8(chunk).expect("hex digits are ascii");
            game.bits[k] =
                u64::from_str_radix(text, 16).map_err(|e| GameError::BadEncoding(e.to_string()))?;
        }
        if n < 6 && game.bits[0] >> (1u32 << n) != 0 {
            return Err(GameError::BadEncoding(format!(
                "{hex} has bits beyond 2^{n}"
            )));
        }
        game.validate()?;
        Ok(game)
    }

    pub fn to_json(&self) -> SimpleGameJson {
        SimpleGameJson {
            n: self.n,
            minimal_winning: self
                .minimal_winning()
                .into_iter()
                .map(|s| s.players().map(|p| p + 1).collect())
                .collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, GameError> {
        let raw: SimpleGameJson = serde_json::from_str(text).map_err(|e| GameError::Parse {
            column: e.column(),
            message: e.to_string(),
        })?;
        raw.to_game()
    }
}

impl Ord for SimpleGame {
    /// Player count first, then the indicator read as a binary number.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for SimpleGame {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `{"n": 4, "minimal_winning": [[1,2],[1,3,4]]}` with 1-based players.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGameJson {
    pub n: usize,
    pub minimal_winning: Vec<Vec<usize>>,
}

impl SimpleGameJson {
    pub fn to_game(&self) -> Result<SimpleGame, GameError> {
        check_player_count(self.n)?;
        let mut coalitions = Vec::with_capacity(self.minimal_winning.len());
        for ids in &self.minimal_winning {
            if let Some(&bad) = ids.iter().find(|&&p| p == 0 || p > self.n) {
                return Err(GameError::PlayerOutOfRange {
                    player: bad,
                    n: self.n,
                });
            }
            coalitions.push(Coalition::from_players(ids.iter().map(|p| p - 1)));
        }
        SimpleGame::from_minimal_winning(self.n, &coalitions)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionAnalysis {
    pub minimal_winning: Vec<Coalition>,
    pub maximal_losing: Vec<Coalition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PlayerClass {
    pub is_null: bool,
    pub is_veto: bool,
    pub is_passer: bool,
    pub is_dictator: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerClassification {
    pub players: Vec<PlayerClass>,
}

impl PlayerClassification {
    pub fn veto_players(&self) -> Vec<usize> {
        self.select(|c| c.is_veto)
    }

    pub fn null_players(&self) -> Vec<usize> {
        self.select(|c| c.is_null)
    }

    pub fn passers(&self) -> Vec<usize> {
        self.select(|c| c.is_passer)
    }

    pub fn dictator(&self) -> Option<usize> {
        self.players.iter().position(|c| c.is_dictator)
    }

    fn select<F: Fn(&PlayerClass) -> bool>(&self, pred: F) -> Vec<usize> {
        self.players
            .iter()
            .enumerate()
            .filter(|(_, c)| pred(c))
            .map(|(i, _)| i)
            .collect()
    }
}

/// A total desirability preorder as ordered equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesirabilityOrder {
    /// Most desirable class first.
    pub levels: Vec<Vec<usize>>,
    pub level_of: Vec<usize>,
}

impl DesirabilityOrder {
    pub fn strictly_more(&self, i: usize, j: usize) -> bool {
        self.level_of[i] < self.level_of[j]
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.level_of[i] == self.level_of[j]
    }
}

/// A quota and non-negative weights, all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGame {
    quota: Rational,
    weights: Vec<Rational>,
}

impl WeightedGame {
    pub fn new(quota: Rational, weights: Vec<Rational>) -> Result<Self, GameError> {
        check_player_count(weights.len())?;
        if !quota.is_positive() {
            return Err(GameError::NonPositiveQuota);
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(GameError::NegativeWeight(i + 1));
        }
        let total = crate::rational::sum(&weights);
        if quota > total {
            return Err(GameError::QuotaExceedsTotalWeight {
                quota: format_rational(&quota),
                total: format_rational(&total),
            });
        }
        Ok(WeightedGame { quota, weights })
    }

    pub fn from_integers(quota: i64, weights: &[i64]) -> Result<Self, GameError> {
        Self::new(
            crate::rational::int(quota),
            weights.iter().map(|&w| crate::rational::int(w)).collect(),
        )
    }

    pub fn quota(&self) -> &Rational {
        &self.quota
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn num_players(&self) -> usize {
        self.weights.len()
    }

    /// Winning iff the coalition weight reaches the quota, evaluated on a common integer scale.
    pub fn to_simple(&self) -> SimpleGame {
        let n = self.weights.len();
        let scale = self
            .weights
            .iter()
            .fold(self.quota.denom().clone(), |acc, w| acc.lcm(w.denom()));
        let scaled = |r: &Rational| r.numer() * (&scale / r.denom());
        let quota = scaled(&self.quota);
        let weights: Vec<BigInt> = self.weights.iter().map(scaled).collect();
        let total: BigInt = weights.iter().sum();
        let mut game = SimpleGame::blank(n);
        match (total.to_i128(), quota.to_i128()) {
            (Some(_), Some(q)) => {
                let small: Vec<i128> = weights.iter().map(|w| w.to_i128().unwrap()).collect();
                let lo_bits = n.min(12);
                let table = |players: &[i128]| -> Vec<i128> {
                    let mut sums = vec![0i128; 1 << players.len()];
                    for mask in 1usize..sums.len() {
                        let low = mask.trailing_zeros() as usize;
                        sums[mask] = sums[mask & (mask - 1)] + players[low];
                    }
                    sums
                };
                let lo = table(&small[..lo_bits]);
                let hi = table(&small[lo_bits..]);
                for (h, hs) in hi.iter().enumerate() {
                    for (l, ls) in lo.iter().enumerate() {
                        if hs + ls >= q {
                            game.set(Coalition(((h << lo_bits) | l) as u32));
                        }
                    }
                }
            }
            _ => {
                for mask in 0..(1u32 << n) {
                    let s = Coalition(mask);
                    let w: BigInt = s.players().map(|p| &weights[p]).sum();
                    if w >= quota {
                        game.set(s);
                    }
                }
            }
        }
        debug_assert!(game.validate().is_ok());
        game
    }
}

impl fmt::Display for WeightedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(format_rational).collect();
        write!(
            f,
            "[{};{}]",
            format_rational(&self.quota),
            weights.join(",")
        )
    }
}

impl FromStr for WeightedGame {
    type Err = GameError;

    /// `[q; w1, ..., wn]`, numbers as integers, fractions or decimals.
    fn from_str(text: &str) -> Result<Self, GameError> {
        let err = |pos: usize, message: &str| GameError::Parse {
            column: pos + 1,
            message: message.to_string(),
        };
        let open = text
            .find(|c: char| !c.is_whitespace())
            .ok_or_else(|| err(0, "empty game"))?;
        if !text[open..].starts_with('[') {
            return Err(err(open, "expected `[`"));
        }
        let close = text
            .rfind(']')
            .ok_or_else(|| err(text.len(), "missing closing `]`"))?;
        if let Some(extra) = text[close + 1..].find(|c: char| !c.is_whitespace()) {
            return Err(err(close + 1 + extra, "unexpected text after `]`"));
        }
        let body_start = open + 1;
        let body = &text[body_start..close];
        let semi = body
            .find(';')
            .ok_or_else(|| err(close, "expected `;` after the quota"))?;
        let number = |start: usize, piece: &str| -> Result<Rational, GameError> {
            let lead = piece.len() - piece.trim_start().len();
            parse_rational(piece).map_err(|e| err(start + lead, &e.to_string()))
        };
        let quota = number(body_start, &body[..semi])?;
        let mut weights = Vec::new();
        let mut offset = body_start + semi + 1;
        for piece in body[semi + 1..].split(',') {
            weights.push(number(offset, piece)?);
            offset += piece.len() + 1;
        }
        WeightedGame::new(quota, weights)
    }
}

/// A game given either in the bracket text format or as simple-game JSON.
pub fn parse_game(text: &str) -> Result<SimpleGame, GameError> {
    if text.trim_start().starts_with('{') {
        SimpleGame::from_json_str(text)
    } else {
        Ok(text.parse::<WeightedGame>()?.to_simple())
    }
}
