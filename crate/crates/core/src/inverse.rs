//! Lower bounds for the inverse power index problem and exact brute-force
//! best approximations in the 1-norm.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::extremal::{enumerate_games, ExtremalConfig, ExtremalError, GameClass};
use crate::game::SimpleGame;
use crate::indices::PowerIndex;
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("target distribution must have entries in [0, 1] summing to 1 (sum is {0})")]
    SigmaNotNormalized(String),
    #[error("target entry {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("target has {got} entries for {expected} players")]
    LengthMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

/// A target power distribution σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetDistribution {
    sigma: Vec<Rational>,
}

impl TargetDistribution {
    pub fn new(sigma: Vec<Rational>) -> Result<Self, InverseError> {
        let total: Rational = sigma.iter().sum();
        let in_range = sigma
            .iter()
            .all(|s| !s.is_negative() && *s <= Rational::one());
        if sigma.is_empty() || !in_range || !total.is_one() {
            return Err(InverseError::SigmaNotNormalized(
                crate::rational::format_rational(&total),
            ));
        }
        Ok(TargetDistribution { sigma })
    }

    /// Comma separated fractions or decimals, e.g. `3/4,1/4,0,0`.
    pub fn parse(text: &str) -> Result<Self, InverseError> {
        let sigma = text
            .split(',')
            .enumerate()
            .map(|(i, part)| {
                parse_rational(part.trim()).map_err(|e| InverseError::Parse {
                    position: i + 1,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sigma)
    }

    pub fn values(&self) -> &[Rational] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn distance(&self, p: &[Rational]) -> Rational {
        self.sigma.iter().zip(p).map(|(s, x)| (s - x).abs()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub index: PowerIndex,
    pub n: usize,
    /// 0-based player giving the bound, if any coordinate qualifies.
    pub player: Option<usize>,
    pub bound: Rational,
    pub best_found: Option<(SimpleGame, Rational)>,
}

/// max over j with alpha ≤ σ_j ≤ 1 of min{1 - σ_j, σ_j - alpha}; zero if no j qualifies.
pub fn gap_lower_bound(
    sigma: &TargetDistribution,
    index: PowerIndex,
    n: usize,
    alpha: &Rational,
) -> Result<GapReport, InverseError> {
    if sigma.len() != n {
        return Err(InverseError::LengthMismatch {
            got: sigma.len(),
            expected: n,
        });
    }
    let one = Rational::one();
    let mut best: Option<(usize, Rational)> = None;
    for (j, s) in sigma.values().iter().enumerate() {
        if s < alpha {
            continue;
        }
        let candidate = (&one - s).min(s - alpha);
        if best.as_ref().is_none_or(|(_, b)| candidate > *b) {
            best = Some((j, candidate));
        }
    }
    let (player, bound) = match best {
        Some((j, b)) => (Some(j), b),
        None => (None, Rational::zero()),
    };
    Ok(GapReport {
        index,
        n,
        player,
        bound,
        best_found: None,
    })
}

/// A game minimizing the 1-norm distance to σ, earliest in indicator order on ties.
pub fn best_approximation(
    sigma: &TargetDistribution,
    index: PowerIndex,
    n: usize,
    class: GameClass,
    config: &ExtremalConfig,
) -> Result<(SimpleGame, Rational), InverseError> {
    if sigma.len() != n {
        return Err(InverseError::LengthMismatch {
            got: sigma.len(),
            expected: n,
        });
    }
    if !class.supports(index) {
        return Err(ExtremalError::IndexClassMismatch { index, class }.into());
    }
    let cap = config.index_cap(index);
    if n > cap {
        return Err(ExtremalError::PlayerCountTooLarge {
            what: format!("exhaustive {index} runs"),
            n,
            cap,
        }
        .into());
    }
    let games = enumerate_games(n, class, config)?;
    let scan = || {
        games
            .par_iter()
            .enumerate()
            .map(|(pos, g)| {
                let profile = index.compute(g).map_err(ExtremalError::from)?;
                Ok(Some((sigma.distance(profile.values()), pos)))
            })
            .try_reduce(|| None, |a, b| Ok(a.into_iter().chain(b).min()))
    };
    let best: Result<Option<(Rational, usize)>, ExtremalError> = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("worker pool")
            .install(scan),
        None => scan(),
    };
    let (distance, pos) = best?.expect("enumerations are never empty");
    Ok((games[pos].clone(), distance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::rational::frac;

    #[test]
    fn targets_are_validated() {
        assert!(TargetDistribution::parse("3/4, 1/4,0,0").is_ok());
        assert!(TargetDistribution::parse("0.5,0.5").is_ok());
        assert!(
            matches!(TargetDistribution::parse("1/2,1/4"), Err(InverseError::SigmaNotNormalized(s)) if s == "3/4")
        );
        assert!(matches!(
            TargetDistribution::parse("3/2,-1/2"),
            Err(InverseError::SigmaNotNormalized(_))
        ));
        assert!(matches!(
            TargetDistribution::parse("1/2,x"),
            Err(InverseError::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn bounds() {
        let s = TargetDistribution::parse("3/4,1/4,0,0").unwrap();
        let r = gap_lower_bound(&s, PowerIndex::Pgi, 4, &frac(1, 2)).unwrap();
        assert_eq!((r.bound, r.player), (frac(1, 4), Some(0)));
        let dictator = TargetDistribution::parse("1,0,0").unwrap();
        assert_eq!(
            gap_lower_bound(&dictator, PowerIndex::Ssi, 3, &frac(2, 3))
                .unwrap()
                .bound,
            frac(0, 1)
        );
        let even = TargetDistribution::parse("1/2,1/2").unwrap();
        assert_eq!(
            gap_lower_bound(&even, PowerIndex::Msri, 2, &frac(1, 2))
                .unwrap()
                .bound,
            frac(0, 1)
        );
        let flat = TargetDistribution::parse("1/4,1/4,1/4,1/4").unwrap();
        assert_eq!(
            gap_lower_bound(&flat, PowerIndex::Pgi, 4, &frac(1, 2))
                .unwrap()
                .player,
            None
        );
        assert!(matches!(
            gap_lower_bound(&even, PowerIndex::Pgi, 3, &frac(1, 2)),
            Err(InverseError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn approximations() {
        let config = ExtremalConfig::default();
        let g = WeightedGame::from_integers(5, &[3, 2, 1, 1])
            .unwrap()
            .to_simple();
        let sigma =
            TargetDistribution::new(PowerIndex::Ssi.compute(&g).unwrap().into_values()).unwrap();
        let (best, d) =
            best_approximation(&sigma, PowerIndex::Ssi, 4, GameClass::Weighted, &config).unwrap();
        assert_eq!((best, d), (g, frac(0, 1)));
        let even = TargetDistribution::parse("1/2,1/2").unwrap();
        let (best, d) =
            best_approximation(&even, PowerIndex::Bzi, 2, GameClass::Simple, &config).unwrap();
        assert_eq!(d, frac(0, 1));
        assert_eq!(
            best,
            WeightedGame::from_integers(2, &[1, 1]).unwrap().to_simple()
        );
        let target = TargetDistribution::parse("3/4,1/4,0,0").unwrap();
        let (_, d) =
            best_approximation(&target, PowerIndex::Pgi, 4, GameClass::Simple, &config).unwrap();
        assert!(d >= frac(1, 4));
    }
}
