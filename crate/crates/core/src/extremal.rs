//! Exhaustive enumeration of small games and extremal power values.
//!
//! Games on up to six players are handled as 64-bit truth tables. All scans
//! are parallel map-reduce passes whose merge keeps the earliest game in
//! indicator order, so results do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::game::SimpleGame;
use crate::indices::{Domain, IndexError, PowerIndex};
use crate::rational::{frac, Rational};
use crate::representation::is_weighted;

/// Truth tables fit in a u64 up to this many players.
pub const TABLE_MAX_PLAYERS: usize = 6;
/// Weight cap used when generating six-player weighted games from integer representations.
pub const GENERATOR_MAX_WEIGHT: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameClass {
    Simple,
    Weighted,
    Complete,
}

impl GameClass {
    pub fn name(self) -> &'static str {
        match self {
            GameClass::Simple => "simple",
            GameClass::Weighted => "weighted",
            GameClass::Complete => "complete",
        }
    }

    /// Whether an index is defined on every game of this class.
    pub fn supports(self, index: PowerIndex) -> bool {
        match index.domain() {
            Domain::Simple => true,
            Domain::Complete => self != GameClass::Simple,
            Domain::Weighted => self == GameClass::Weighted,
        }
    }
}

impl fmt::Display for GameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simple" => Ok(GameClass::Simple),
            "weighted" => Ok(GameClass::Weighted),
            "complete" => Ok(GameClass::Complete),
            other => Err(format!(
                "unknown game class '{other}'; valid classes: simple, weighted, complete"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("{what} supports n ≤ {cap}, got n = {n} (raise with POWERKIT_MAX_N)")]
    PlayerCountTooLarge { what: String, n: usize, cap: usize },
    #[error("need at least {min} players, got {n}")]
    TooFewPlayers { n: usize, min: usize },
    #[error("index {index} is not defined on all {class} games")]
    IndexClassMismatch { index: PowerIndex, class: GameClass },
    #[error("{0}")]
    Index(#[from] IndexError),
    #[error("record {line}: {message}")]
    Record { line: usize, message: String },
}

/// Player-count caps and worker count for the exhaustive runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtremalConfig {
    /// Replaces every default cap (enumeration stays within the truth-table limit).
    pub max_n_override: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl ExtremalConfig {
    pub fn enumeration_cap(&self, class: GameClass) -> usize {
        let default = match class {
            GameClass::Simple | GameClass::Complete => 5,
            GameClass::Weighted => 6,
        };
        self.max_n_override
            .map_or(default, |n| n.min(TABLE_MAX_PLAYERS))
    }

    pub fn index_cap(&self, index: PowerIndex) -> usize {
        let default = match index {
            PowerIndex::Nucleolus | PowerIndex::Msri | PowerIndex::Awi | PowerIndex::Ari => 4,
            _ => 5,
        };
        self.max_n_override.unwrap_or(default)
    }

    fn install<T: Send>(&self, op: impl FnOnce() -> T + Send) -> T {
        match self.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("worker pool")
                .install(op),
            None => op(),
        }
    }
}

/// Bit S of a table set iff S wins; tables of all monotone functions, sorted.
fn monotone_tables(n: usize) -> Vec<u64> {
    let mut tables = vec![0u64, 1];
    for k in 1..=n {
        let half = 1u32 << (k - 1);
        let mut next = Vec::new();
        for &a in &tables {
            for &b in &tables {
                if a & !b == 0 {
                    next.push(a | b << half);
                }
            }
        }
        tables = next;
    }
    tables.sort_unstable();
    tables
}

fn full_table(n: usize) -> u64 {
    if n == TABLE_MAX_PLAYERS {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn game_of(n: usize, table: u64) -> SimpleGame {
    SimpleGame::from_truth_table(n, table).expect("enumerated tables are simple games")
}

fn check_enumeration(
    n: usize,
    class: GameClass,
    config: &ExtremalConfig,
) -> Result<(), ExtremalError> {
    if n == 0 {
        return Err(ExtremalError::TooFewPlayers { n, min: 1 });
    }
    let cap = config.enumeration_cap(class);
    if n > cap {
        return Err(ExtremalError::PlayerCountTooLarge {
            what: format!("{class} game enumeration"),
            n,
            cap,
        });
    }
    Ok(())
}

/// Every labeled simple game on n players, in indicator order.
pub fn enumerate_simple_games(n: usize) -> Result<Vec<SimpleGame>, ExtremalError> {
    enumerate_games(n, GameClass::Simple, &ExtremalConfig::default())
}

/// Every labeled weighted game on n players, in indicator order.
pub fn enumerate_weighted_games(n: usize) -> Result<Vec<SimpleGame>, ExtremalError> {
    enumerate_games(n, GameClass::Weighted, &ExtremalConfig::default())
}

pub fn enumerate_games(
    n: usize,
    class: GameClass,
    config: &ExtremalConfig,
) -> Result<Vec<SimpleGame>, ExtremalError> {
    check_enumeration(n, class, config)?;
    if class == GameClass::Weighted && n == TABLE_MAX_PLAYERS {
        return Ok(weighted_games_by_representation(n, GENERATOR_MAX_WEIGHT));
    }
    let full = full_table(n);
    let simple: Vec<u64> = monotone_tables(n)
        .into_iter()
        .filter(|&t| t != 0 && t != full)
        .collect();
    let games: Vec<SimpleGame> = config.install(|| {
        simple
            .par_iter()
            .map(|&t| game_of(n, t))
            .filter(|g| match class {
                GameClass::Simple => true,
                GameClass::Complete => g.is_complete(),
                GameClass::Weighted => is_weighted(g).0,
            })
            .collect()
    });
    Ok(games)
}

/// Weighted games induced by integer weights up to `max_weight`, with every
/// quota between 1 and the total, closed under relabeling of players.
pub fn weighted_games_by_representation(n: usize, max_weight: u64) -> Vec<SimpleGame> {
    assert!((1..=TABLE_MAX_PLAYERS).contains(&n));
    let size = 1usize << n;
    let mut sorted_tables = BTreeSet::new();
    let mut weights = vec![0u64; n];
    // non-increasing weight vectors, odometer style
    loop {
        let mut sums = vec![0u64; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)] + weights[low];
        }
        let quotas: BTreeSet<u64> = sums.iter().copied().filter(|&s| s > 0).collect();
        for q in quotas {
            let table = (0..size)
                .filter(|&m| sums[m] >= q)
                .fold(0u64, |t, m| t | 1 << m);
            sorted_tables.insert(table);
        }
        // advance: find the last position that can grow without exceeding its predecessor
        let Some(pos) = (0..n)
            .rev()
            .find(|&i| weights[i] < if i == 0 { max_weight } else { weights[i - 1] })
        else {
            break;
        };
        weights[pos] += 1;
        for w in weights.iter_mut().skip(pos + 1) {
            *w = 0;
        }
    }
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            (0..size)
                .map(|m| {
                    (0..n)
                        .filter(|&i| m >> i & 1 == 1)
                        .fold(0, |acc, i| acc | 1 << p[i])
                })
                .collect()
        })
        .collect();
    let all: BTreeSet<u64> = sorted_tables
        .iter()
        .flat_map(|&t| {
            maps.iter().map(move |map| {
                (0..size)
                    .filter(|&m| t >> m & 1 == 1)
                    .fold(0u64, |acc, m| acc | 1 << map[m])
            })
        })
        .collect();
    all.into_iter().map(|t| game_of(n, t)).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for smaller in permutations(n - 1) {
        for slot in 0..n {
            let mut p = smaller.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out
}

/// Earliest game (by enumeration position) and player reaching a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Witness {
    game: usize,
    player: usize,
}

type Spectrum = BTreeMap<Rational, Witness>;

fn merge(mut a: Spectrum, b: Spectrum) -> Spectrum {
    for (value, w) in b {
        a.entry(value).and_modify(|e| *e = (*e).min(w)).or_insert(w);
    }
    a
}

fn spectrum(
    index: PowerIndex,
    games: &[SimpleGame],
    config: &ExtremalConfig,
) -> Result<Spectrum, ExtremalError> {
    config.install(|| {
        games
            .par_iter()
            .enumerate()
            .map(|(pos, g)| {
                let profile = index.compute(g)?;
                let mut s = Spectrum::new();
                for (player, value) in profile.values().iter().enumerate() {
                    s.entry(value.clone())
                        .or_insert(Witness { game: pos, player });
                }
                Ok(s)
            })
            .try_reduce(Spectrum::new, |a, b| Ok(merge(a, b)))
    })
}

fn check_index(
    index: PowerIndex,
    n: usize,
    class: GameClass,
    config: &ExtremalConfig,
) -> Result<(), ExtremalError> {
    if !class.supports(index) {
        return Err(ExtremalError::IndexClassMismatch { index, class });
    }
    let cap = config.index_cap(index);
    if n > cap {
        return Err(ExtremalError::PlayerCountTooLarge {
            what: format!("exhaustive {index} runs"),
            n,
            cap,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub index: PowerIndex,
    pub n: usize,
    pub class: GameClass,
    pub games_checked: usize,
    pub alpha_observed: Rational,
    pub alpha_closed_form: Option<Rational>,
    pub witness: SimpleGame,
    /// 0-based.
    pub witness_player: usize,
    pub within_bound: bool,
    pub attained: bool,
    /// For the gap indices: no value lies strictly between 1/2 and 1.
    pub gap_respected: Option<bool>,
}

impl BoundReport {
    pub fn verified(&self) -> bool {
        self.within_bound && self.attained && self.gap_respected != Some(false)
    }
}

fn report_from(
    index: PowerIndex,
    n: usize,
    class: GameClass,
    games: &[SimpleGame],
    spectrum: &Spectrum,
) -> Result<BoundReport, ExtremalError> {
    let one = frac(1, 1);
    let (alpha, w) = spectrum
        .iter()
        .rev()
        .find(|(v, _)| index.bounds_all_values() || **v < one)
        .ok_or(ExtremalError::TooFewPlayers { n, min: 2 })?;
    let closed = index.closed_form_alpha(n);
    let gap_respected = index
        .has_gap()
        .then(|| !spectrum.keys().any(|v| *v > frac(1, 2) && *v < one));
    Ok(BoundReport {
        index,
        n,
        class,
        games_checked: games.len(),
        alpha_observed: alpha.clone(),
        within_bound: closed.as_ref().is_none_or(|c| alpha <= c),
        attained: closed.as_ref().is_none_or(|c| alpha == c),
        alpha_closed_form: closed,
        witness: games[w.game].clone(),
        witness_player: w.player,
        gap_respected,
    })
}

/// Largest power below one (any power, for AWI and ARI) over a class of n-player games.
pub fn alpha(
    index: PowerIndex,
    n: usize,
    class: GameClass,
    config: &ExtremalConfig,
) -> Result<BoundReport, ExtremalError> {
    check_index(index, n, class, config)?;
    let games = enumerate_games(n, class, config)?;
    let s = spectrum(index, &games, config)?;
    report_from(index, n, class, &games, &s)
}

/// One report per standard index within its cap: counting indices and the
/// nucleolus over simple games, representation indices over weighted games.
pub fn verify_bounds(n: usize, config: &ExtremalConfig) -> Result<Vec<BoundReport>, ExtremalError> {
    if n < 2 {
        return Err(ExtremalError::TooFewPlayers { n, min: 2 });
    }
    let cap = PowerIndex::STANDARD
        .iter()
        .map(|&i| config.index_cap(i))
        .max()
        .unwrap_or(0);
    if n > cap {
        return Err(ExtremalError::PlayerCountTooLarge {
            what: "bound verification".into(),
            n,
            cap,
        });
    }
    let mut cache: BTreeMap<GameClass, Vec<SimpleGame>> = BTreeMap::new();
    let mut reports = Vec::new();
    for index in PowerIndex::STANDARD {
        if n > config.index_cap(index) {
            continue;
        }
        let class = if index.domain() == Domain::Simple {
            GameClass::Simple
        } else {
            GameClass::Weighted
        };
        if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(class) {
            slot.insert(enumerate_games(n, class, config)?);
        }
        let games = &cache[&class];
        let s = spectrum(index, games, config)?;
        reports.push(report_from(index, n, class, games, &s)?);
    }
    Ok(reports)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: Rational,
    pub witness: SimpleGame,
    /// 0-based.
    pub player: usize,
}

/// The k largest distinct power values, each with its earliest witness.
pub fn power_spectrum(
    index: PowerIndex,
    n: usize,
    class: GameClass,
    k: usize,
    config: &ExtremalConfig,
) -> Result<Vec<SpectrumEntry>, ExtremalError> {
    check_index(index, n, class, config)?;
    let games = enumerate_games(n, class, config)?;
    let s = spectrum(index, &games, config)?;
    Ok(s.iter()
        .rev()
        .take(k)
        .map(|(value, w)| SpectrumEntry {
            value: value.clone(),
            witness: games[w.game].clone(),
            player: w.player,
        })
        .collect())
}

/// One `n hex` line per game.
pub fn write_game_records<W: Write>(out: &mut W, games: &[SimpleGame]) -> std::io::Result<()> {
    for g in games {
        writeln!(out, "{} {}", g.num_players(), g.to_hex())?;
    }
    Ok(())
}

pub fn read_game_records<R: BufRead>(input: R) -> Result<Vec<SimpleGame>, ExtremalError> {
    let mut games = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let record = |message: String| ExtremalError::Record {
            line: i + 1,
            message,
        };
        let line = line.map_err(|e| record(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let (n, hex) = line
            .trim()
            .split_once(' ')
            .ok_or_else(|| record("expected 'n hex'".into()))?;
        let n: usize = n
            .parse()
            .map_err(|_| record(format!("bad player count '{n}'")))?;
        games.push(SimpleGame::from_hex(n, hex.trim()).map_err(|e| record(e.to_string()))?);
    }
    Ok(games)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;

    #[test]
    fn simple_game_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_simple_games(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 18, 166]);
        assert!(matches!(
            enumerate_simple_games(6),
            Err(ExtremalError::PlayerCountTooLarge { cap: 5, .. })
        ));
        assert!(matches!(
            enumerate_simple_games(0),
            Err(ExtremalError::TooFewPlayers { .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let games = enumerate_simple_games(4).unwrap();
        assert!(games.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn weighted_counts_and_generator_agree() {
        for n in 1..=4 {
            let filtered = enumerate_weighted_games(n).unwrap();
            assert_eq!(
                filtered,
                weighted_games_by_representation(n, GENERATOR_MAX_WEIGHT),
                "n={n}"
            );
        }
        assert_eq!(enumerate_weighted_games(4).unwrap().len(), 148);
    }

    #[test]
    fn small_alphas() {
        let config = ExtremalConfig::default();
        let ssi = alpha(PowerIndex::Ssi, 3, GameClass::Simple, &config).unwrap();
        assert_eq!(ssi.alpha_observed, frac(2, 3));
        assert!(ssi.attained);
        assert_eq!(
            PowerIndex::Ssi
                .compute(&ssi.witness)
                .unwrap()
                .get(ssi.witness_player),
            &frac(2, 3)
        );
        let bzi = alpha(PowerIndex::Bzi, 4, GameClass::Simple, &config).unwrap();
        assert_eq!(bzi.alpha_observed, frac(7, 10));
        let nuc = alpha(PowerIndex::Nucleolus, 3, GameClass::Simple, &config).unwrap();
        assert_eq!(nuc.alpha_observed, frac(1, 2));
        assert_eq!(
            alpha(PowerIndex::Msri, 3, GameClass::Simple, &config),
            Err(ExtremalError::IndexClassMismatch {
                index: PowerIndex::Msri,
                class: GameClass::Simple
            })
        );
    }

    #[test]
    fn two_player_bounds() {
        let reports = verify_bounds(2, &ExtremalConfig::default()).unwrap();
        assert_eq!(reports.len(), 9);
        assert!(reports.iter().all(BoundReport::verified), "{reports:#?}");
    }

    #[test]
    fn spectra() {
        let config = ExtremalConfig::default();
        let values = |i, n, k| -> Vec<Rational> {
            power_spectrum(i, n, GameClass::Simple, k, &config)
                .unwrap()
                .into_iter()
                .map(|e| e.value)
                .collect()
        };
        assert_eq!(
            values(PowerIndex::Ssi, 3, 3),
            vec![frac(1, 1), frac(2, 3), frac(1, 2)]
        );
        assert_eq!(values(PowerIndex::Pgi, 3, 2), vec![frac(1, 1), frac(1, 2)]);
        assert_eq!(values(PowerIndex::Ssi, 2, 2), vec![frac(1, 1), frac(1, 2)]);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = ExtremalConfig {
            jobs: Some(1),
            ..Default::default()
        };
        let four = ExtremalConfig {
            jobs: Some(4),
            ..Default::default()
        };
        assert_eq!(
            alpha(PowerIndex::Dp, 4, GameClass::Simple, &one).unwrap(),
            alpha(PowerIndex::Dp, 4, GameClass::Simple, &four).unwrap()
        );
    }

    #[test]
    fn records_round_trip() {
        let games = vec![
            WeightedGame::from_integers(5, &[3, 2, 1, 1])
                .unwrap()
                .to_simple(),
            WeightedGame::from_integers(1, &[1]).unwrap().to_simple(),
        ];
        let mut buf = Vec::new();
        write_game_records(&mut buf, &games).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "4 a888\n1 2\n");
        assert_eq!(read_game_records(buf.as_slice()).unwrap(), games);
        assert!(matches!(
            read_game_records("4\n".as_bytes()),
            Err(ExtremalError::Record { line: 1, .. })
        ));
    }
}
