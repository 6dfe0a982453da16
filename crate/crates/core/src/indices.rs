//! Uniform access to every implemented power index by name.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::counting::{self, PowerProfile};
use crate::game::{GameError, SimpleGame};
use crate::nucleolus::{self, NucleolusError};
use crate::rational::{frac, Rational};
use crate::representation::{self, RepresentationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerIndex {
    Ssi,
    Bzi,
    Pgi,
    Dp,
    Js,
    Shift,
    ShiftDp,
    Nucleolus,
    Msri,
    Awi,
    Ari,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("unknown index '{0}'; valid names: {names}", names = PowerIndex::valid_names())]
    UnknownIndex(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Nucleolus(#[from] NucleolusError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

/// Which games an index is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Simple,
    Complete,
    Weighted,
}

impl PowerIndex {
    pub const EVERY: [PowerIndex; 11] = [
        PowerIndex::Ssi,
        PowerIndex::Bzi,
        PowerIndex::Pgi,
        PowerIndex::Dp,
        PowerIndex::Js,
        PowerIndex::Shift,
        PowerIndex::ShiftDp,
        PowerIndex::Nucleolus,
        PowerIndex::Msri,
        PowerIndex::Awi,
        PowerIndex::Ari,
    ];

    /// The selection behind `all`.
    pub const STANDARD: [PowerIndex; 9] = [
        PowerIndex::Ssi,
        PowerIndex::Bzi,
        PowerIndex::Pgi,
        PowerIndex::Dp,
        PowerIndex::Js,
        PowerIndex::Nucleolus,
        PowerIndex::Msri,
        PowerIndex::Awi,
        PowerIndex::Ari,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PowerIndex::Ssi => "ssi",
            PowerIndex::Bzi => "bzi",
            PowerIndex::Pgi => "pgi",
            PowerIndex::Dp => "dp",
            PowerIndex::Js => "js",
            PowerIndex::Shift => "shift",
            PowerIndex::ShiftDp => "shift-dp",
            PowerIndex::Nucleolus => "nucleolus",
            PowerIndex::Msri => "msri",
            PowerIndex::Awi => "awi",
            PowerIndex::Ari => "ari",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            PowerIndex::Ssi => "Shapley-Shubik",
            PowerIndex::Bzi => "Penrose-Banzhaf",
            PowerIndex::Pgi => "Public Good",
            PowerIndex::Dp => "Deegan-Packel",
            PowerIndex::Js => "Johnston",
            PowerIndex::Shift => "Shift",
            PowerIndex::ShiftDp => "Shift Deegan-Packel",
            PowerIndex::Nucleolus => "Nucleolus",
            PowerIndex::Msri => "Minimum sum representation",
            PowerIndex::Awi => "Average weight",
            PowerIndex::Ari => "Average representation",
        }
    }

    fn valid_names() -> String {
        let mut names: Vec<&str> = Self::EVERY.iter().map(|i| i.name()).collect();
        names.push("all");
        names.join(", ")
    }

    pub fn domain(self) -> Domain {
        match self {
            PowerIndex::Shift | PowerIndex::ShiftDp => Domain::Complete,
            PowerIndex::Msri | PowerIndex::Awi | PowerIndex::Ari => Domain::Weighted,
            _ => Domain::Simple,
        }
    }

    /// Largest power below one over n-player games; for AWI and ARI the largest power overall.
    pub fn closed_form_alpha(self, n: usize) -> Option<Rational> {
        let n = n as i64;
        let half = 1i64.checked_shl((n - 1) as u32)?;
        match self {
            PowerIndex::Ssi => Some(frac(n - 1, n)),
            PowerIndex::Bzi => Some(Rational::new(
                BigInt::from(half - 1),
                BigInt::from(half + n - 2),
            )),
            PowerIndex::Js => Some(frac(half - 1, half)),
            PowerIndex::Pgi | PowerIndex::Dp | PowerIndex::Nucleolus | PowerIndex::Msri => {
                Some(frac(1, 2))
            }
            PowerIndex::Awi => Some(frac(n + 1, 2 * n)),
            PowerIndex::Ari => Some(frac(n + 3, 2 * (n + 1))),
            PowerIndex::Shift | PowerIndex::ShiftDp => None,
        }
    }

    /// Whether the bound is compared against every value, dictators included.
    pub fn bounds_all_values(self) -> bool {
        matches!(self, PowerIndex::Awi | PowerIndex::Ari)
    }

    /// Indices for which no power value falls strictly between 1/2 and 1.
    pub fn has_gap(self) -> bool {
        matches!(
            self,
            PowerIndex::Pgi | PowerIndex::Dp | PowerIndex::Nucleolus | PowerIndex::Msri
        )
    }

    pub fn compute(self, v: &SimpleGame) -> Result<PowerProfile, IndexError> {
        Ok(match self {
            PowerIndex::Ssi => counting::ssi(v),
            PowerIndex::Bzi => counting::banzhaf(v).1,
            PowerIndex::Pgi => counting::pgi(v),
            PowerIndex::Dp => counting::dp(v),
            PowerIndex::Js => counting::johnston(v).1,
            PowerIndex::Shift => counting::shift_index(v)?,
            PowerIndex::ShiftDp => counting::shift_dp(v)?,
            PowerIndex::Nucleolus => nucleolus::nucleolus(v)?,
            PowerIndex::Msri => representation::msri(v)?,
            PowerIndex::Awi => representation::awi(v)?,
            PowerIndex::Ari => representation::ari(v)?,
        })
    }
}

impl fmt::Display for PowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PowerIndex {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let index = match key.as_str() {
            "ssi" | "shapley-shubik" | "shapley" => PowerIndex::Ssi,
            "bzi" | "banzhaf" | "penrose-banzhaf" => PowerIndex::Bzi,
            "pgi" | "public-good" => PowerIndex::Pgi,
            "dp" | "deegan-packel" => PowerIndex::Dp,
            "js" | "johnston" => PowerIndex::Js,
            "shift" => PowerIndex::Shift,
            "shift-dp" | "shiftdp" | "shift-deegan-packel" => PowerIndex::ShiftDp,
            "nucleolus" | "nuc" => PowerIndex::Nucleolus,
            "msri" | "minimum-sum" => PowerIndex::Msri,
            "awi" | "average-weight" => PowerIndex::Awi,
            "ari" | "average-representation" => PowerIndex::Ari,
            _ => return Err(IndexError::UnknownIndex(s.to_string())),
        };
        Ok(index)
    }
}

/// Parses a comma separated list of index names, where `all` expands to the standard nine.
pub fn parse_index_list(text: &str) -> Result<Vec<PowerIndex>, IndexError> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let batch: Vec<PowerIndex> = if part.eq_ignore_ascii_case("all") {
            PowerIndex::STANDARD.to_vec()
        } else {
            vec![part.parse()?]
        };
        for index in batch {
            if !out.contains(&index) {
                out.push(index);
            }
        }
    }
    if out.is_empty() {
        return Err(IndexError::UnknownIndex(text.to_string()));
    }
    Ok(out)
}
