//! Exact power indices for simple and weighted voting games.

pub mod counting;
pub mod extremal;
pub mod game;
pub mod indices;
pub mod inverse;
pub mod lp;
pub mod nucleolus;
pub mod polytope;
pub mod rational;
pub mod representation;

pub use counting::{PowerProfile, RawCounts};
pub use extremal::{BoundReport, ExtremalConfig, GameClass};
pub use game::{Coalition, GameError, SimpleGame, WeightedGame};
pub use indices::{IndexError, PowerIndex};
pub use rational::Rational;
