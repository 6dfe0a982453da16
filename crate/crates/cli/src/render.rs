//! Table and JSON rendering. Fractions in JSON are `{"num": "..", "den": ".."}`
//! strings; decimals are rounded half-to-even at six places.

use std::fmt::Write as _;

use powerkit::counting::PowerProfile;
use powerkit::extremal::{BoundReport, GameClass, SpectrumEntry};
use powerkit::indices::PowerIndex;
use powerkit::inverse::{GapReport, TargetDistribution};
use powerkit::rational::{format_decimal, format_rational};
use powerkit::{Rational, SimpleGame};
use serde_json::{json, Value};

const PLACES: usize = 6;

fn fraction(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn fractions(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(fraction).collect())
}

fn decimals(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(format_decimal(v, PLACES)))
            .collect(),
    )
}

fn game_json(g: &SimpleGame) -> Value {
    let minimal: Vec<Vec<usize>> = g
        .minimal_winning()
        .iter()
        .map(|s| s.players().map(|p| p + 1).collect())
        .collect();
    json!({ "n": g.num_players(), "hex": g.to_hex(), "minimal_winning": minimal })
}

fn game_text(g: &SimpleGame) -> String {
    let minimal: Vec<String> = g
        .minimal_winning()
        .iter()
        .map(ToString::to_string)
        .collect();
    format!(
        "n={} minimal winning {} (hex {})",
        g.num_players(),
        minimal.join(" "),
        g.to_hex()
    )
}

fn joined(values: &[Rational], f: impl Fn(&Rational) -> String) -> String {
    values.iter().map(f).collect::<Vec<_>>().join(", ")
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn compute_table(
    g: &SimpleGame,
    results: &[(PowerIndex, Result<PowerProfile, String>)],
) -> String {
    let mut s = String::new();
    writeln!(s, "game  {}", game_text(g)).unwrap();
    for (index, result) in results {
        writeln!(s, "\n{} ({})", index.title(), index.name()).unwrap();
        match result {
            Ok(p) => {
                writeln!(s, "  exact    {}", joined(p.values(), format_rational)).unwrap();
                writeln!(
                    s,
                    "  decimal  {}",
                    joined(p.values(), |v| format_decimal(v, PLACES))
                )
                .unwrap();
            }
            Err(e) => writeln!(s, "  not available: {e}").unwrap(),
        }
    }
    s
}

pub fn compute_json(
    g: &SimpleGame,
    results: &[(PowerIndex, Result<PowerProfile, String>)],
) -> String {
    let indices: Vec<Value> = results
        .iter()
        .map(|(index, result)| match result {
            Ok(p) => json!({
                "index": index.name(),
                "title": index.title(),
                "efficient": p.is_efficient(),
                "values": fractions(p.values()),
                "decimal": decimals(p.values()),
            }),
            Err(e) => json!({ "index": index.name(), "title": index.title(), "error": e }),
        })
        .collect();
    pretty(json!({ "command": "compute", "game": game_json(g), "indices": indices }))
}

fn opt_fraction_text(r: &Option<Rational>) -> String {
    r.as_ref().map_or_else(|| "-".into(), format_rational)
}

pub fn bounds(
    as_json: bool,
    n: usize,
    reports: &[BoundReport],
    skipped: &[(PowerIndex, usize)],
) -> String {
    if as_json {
        let reports: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "index": r.index.name(),
                    "n": r.n,
                    "class": r.class.name(),
                    "games_checked": r.games_checked,
                    "alpha_observed": fraction(&r.alpha_observed),
                    "alpha_closed_form": r.alpha_closed_form.as_ref().map_or(Value::Null, fraction),
                    "within_bound": r.within_bound,
                    "attained": r.attained,
                    "gap_respected": r.gap_respected,
                    "witness": game_json(&r.witness),
                    "witness_player": r.witness_player + 1,
                })
            })
            .collect();
        let skipped: Vec<Value> = skipped
            .iter()
            .map(|(i, cap)| json!({ "index": i.name(), "cap": cap }))
            .collect();
        return pretty(
            json!({ "command": "bounds", "n": n, "reports": reports, "skipped": skipped }),
        );
    }
    let mut s = String::new();
    writeln!(s, "bounds for n = {n}").unwrap();
    writeln!(
        s,
        "{:<10} {:<9} {:>6}  {:<12} {:<12} {:<8} {:<4}  witness",
        "index", "class", "games", "alpha", "closed form", "attained", "gap"
    )
    .unwrap();
    for r in reports {
        let gap = r.gap_respected.map_or("-", yes_no);
        writeln!(
            s,
            "{:<10} {:<9} {:>6}  {:<12} {:<12} {:<8} {:<4}  player {} in {}",
            r.index.name(),
            r.class.name(),
            r.games_checked,
            format_rational(&r.alpha_observed),
            opt_fraction_text(&r.alpha_closed_form),
            yes_no(r.attained),
            gap,
            r.witness_player + 1,
            game_text(&r.witness)
        )
        .unwrap();
    }
    for (index, cap) in skipped {
        writeln!(s, "{:<10} skipped: cap is n = {cap}", index.name()).unwrap();
    }
    s
}

pub fn spectrum(
    as_json: bool,
    index: PowerIndex,
    n: usize,
    class: GameClass,
    entries: &[SpectrumEntry],
) -> String {
    if as_json {
        let values: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "value": fraction(&e.value),
                    "decimal": format_decimal(&e.value, PLACES),
                    "witness": game_json(&e.witness),
                    "player": e.player + 1,
                })
            })
            .collect();
        return pretty(json!({
            "command": "spectrum",
            "index": index.name(),
            "n": n,
            "class": class.name(),
            "values": values,
        }));
    }
    let mut s = String::new();
    writeln!(
        s,
        "largest {} values over {class} games, n = {n}",
        index.name()
    )
    .unwrap();
    for (rank, e) in entries.iter().enumerate() {
        writeln!(
            s,
            "{:>3}  {:<10} {:<10} player {} in {}",
            rank + 1,
            format_rational(&e.value),
            format_decimal(&e.value, PLACES),
            e.player + 1,
            game_text(&e.witness)
        )
        .unwrap();
    }
    s
}

pub fn inverse(
    as_json: bool,
    sigma: &TargetDistribution,
    alpha: &Rational,
    class: GameClass,
    r: &GapReport,
) -> String {
    if as_json {
        let best = r.best_found.as_ref().map_or(Value::Null, |(g, d)| {
            json!({ "game": game_json(g), "distance": fraction(d), "decimal": format_decimal(d, PLACES) })
        });
        return pretty(json!({
            "command": "inverse",
            "index": r.index.name(),
            "n": r.n,
            "class": class.name(),
            "sigma": fractions(sigma.values()),
            "alpha": fraction(alpha),
            "player": r.player.map(|p| p + 1),
            "bound": fraction(&r.bound),
            "best_found": best,
        }));
    }
    let mut s = String::new();
    writeln!(s, "target    {}", joined(sigma.values(), format_rational)).unwrap();
    writeln!(
        s,
        "index     {} (alpha {}), n = {}",
        r.index.name(),
        format_rational(alpha),
        r.n
    )
    .unwrap();
    match r.player {
        Some(p) => writeln!(
            s,
            "bound     {} from player {}",
            format_rational(&r.bound),
            p + 1
        )
        .unwrap(),
        None => writeln!(s, "bound     0 (no coordinate reaches alpha)").unwrap(),
    }
    if let Some((g, d)) = &r.best_found {
        writeln!(
            s,
            "best      distance {} ({}) over {class} games",
            format_rational(d),
            format_decimal(d, PLACES)
        )
        .unwrap();
        writeln!(s, "witness   {}", game_text(g)).unwrap();
    }
    s
}

pub fn enumerate_json(n: usize, class: GameClass, games: &[SimpleGame]) -> String {
    let hex: Vec<String> = games.iter().map(SimpleGame::to_hex).collect();
    pretty(
        json!({ "command": "enumerate", "n": n, "class": class.name(), "count": games.len(), "games": hex }),
    )
}
