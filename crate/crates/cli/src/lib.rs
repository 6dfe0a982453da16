//! The `powerkit` command line.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand, ValueEnum};
use powerkit::extremal::{self, ExtremalConfig, GameClass};
use powerkit::indices::{parse_index_list, PowerIndex};
use powerkit::inverse::{self, TargetDistribution};
use powerkit::{game, Rational, SimpleGame};

pub const MAX_N_ENV: &str = "POWERKIT_MAX_N";

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "powerkit",
    version,
    about = "Exact power indices for simple and weighted voting games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute power indices of one game.
    Compute(ComputeArgs),
    /// Check the largest non-unit power of every index over all n-player games.
    Bounds(BoundsArgs),
    /// List the largest distinct power values of an index over all n-player games.
    Spectrum(SpectrumArgs),
    /// Lower bound and exact best 1-norm approximation of a target distribution.
    Inverse(InverseArgs),
    /// Write all games of a class as `n hex` records.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct JobsArgs {
    /// Worker threads for exhaustive scans.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct GameSource {
    /// Game as `[q; w1,...,wn]` or simple-game JSON.
    #[arg(long, group = "source")]
    game: Option<String>,
    /// File holding the game text.
    #[arg(long, group = "source")]
    file: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    source: GameSource,
    /// Comma separated index names, or `all`.
    #[arg(long, default_value = "all")]
    index: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    jobs: JobsArgs,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    index: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "simple")]
    class: String,
    #[arg(long, default_value_t = 3)]
    top: usize,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    jobs: JobsArgs,
}

#[derive(Args, Debug)]
struct InverseArgs {
    /// Target distribution, e.g. `3/4,1/4,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    sigma: String,
    #[arg(long)]
    index: String,
    /// Player count; defaults to the length of the target.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "simple")]
    class: String,
    /// Use this value instead of the closed-form or enumerated largest non-unit power.
    #[arg(long)]
    alpha: Option<String>,
    /// Only report the lower bound.
    #[arg(long)]
    no_search: bool,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    jobs: JobsArgs,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "simple")]
    class: String,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    jobs: JobsArgs,
}

/// An error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Output produced before the failure, still written to stdout.
    pub partial: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
            partial: String::new(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.to_string(),
            partial: String::new(),
        }
    }

    fn after(self, partial: String) -> Self {
        Failure { partial, ..self }
    }
}

/// Runs the CLI with the cap override read from the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(MAX_N_ENV).ok(), out, err)
}

/// Runs the CLI with an explicit value for the cap override variable.
pub fn run_with_env<I, T>(
    args: I,
    max_n: Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli, max_n, err)));
    let result = match outcome {
        Ok(result) => result,
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Err(Failure::internal(format!("internal error: {message}")))
        }
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure {
            code,
            message,
            partial,
        }) => {
            let _ = out.write_all(partial.as_bytes());
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn config(
    max_n: Option<String>,
    jobs: Option<usize>,
    err: &mut dyn Write,
) -> Result<ExtremalConfig, Failure> {
    let max_n_override = match max_n {
        None => None,
        Some(text) => {
            let n: usize = text.trim().parse().map_err(|_| {
                Failure::input(format!("{MAX_N_ENV} must be a player count, got '{text}'"))
            })?;
            let _ = writeln!(
                err,
                "warning: {MAX_N_ENV}={n} replaces the default player-count caps"
            );
            Some(n)
        }
    };
    Ok(ExtremalConfig {
        max_n_override,
        jobs,
    })
}

fn parse_class(text: &str) -> Result<GameClass, Failure> {
    text.parse().map_err(Failure::input)
}

fn dispatch(cli: Cli, max_n: Option<String>, err: &mut dyn Write) -> Result<String, Failure> {
    match cli.command {
        Command::Compute(args) => compute(args),
        Command::Bounds(args) => {
            let config = config(max_n, args.jobs.jobs, err)?;
            bounds(args, &config)
        }
        Command::Spectrum(args) => {
            let config = config(max_n, args.jobs.jobs, err)?;
            spectrum(args, &config)
        }
        Command::Inverse(args) => {
            let config = config(max_n, args.jobs.jobs, err)?;
            inverse_gap(args, &config)
        }
        Command::Enumerate(args) => {
            let config = config(max_n, args.jobs.jobs, err)?;
            enumerate(args, &config)
        }
    }
}

fn load_game(source: &GameSource) -> Result<SimpleGame, Failure> {
    let text = match (&source.game, &source.file) {
        (Some(text), _) => text.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::input("no game given")),
    };
    game::parse_game(text.trim()).map_err(|e| Failure::input(format!("invalid game: {e}")))
}

fn compute(args: ComputeArgs) -> Result<String, Failure> {
    let g = load_game(&args.source)?;
    let indices = parse_index_list(&args.index).map_err(Failure::input)?;
    let mut results = Vec::with_capacity(indices.len());
    for index in indices {
        let result = index.compute(&g);
        if let Ok(profile) = &result {
            if profile.is_efficient() && profile.sum() != Rational::from_integer(1.into()) {
                return Err(Failure::internal(format!(
                    "{index} values do not sum to one"
                )));
            }
        }
        results.push((index, result.map_err(|e| e.to_string())));
    }
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(i, r)| r.as_ref().err().map(|e| format!("{i}: {e}")))
        .collect();
    let text = match args.output.format {
        Format::Table => render::compute_table(&g, &results),
        Format::Json => render::compute_json(&g, &results),
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        Err(Failure::input(failed.join("; ")).after(text))
    }
}

fn bounds(args: BoundsArgs, config: &ExtremalConfig) -> Result<String, Failure> {
    let reports = extremal::verify_bounds(args.n, config).map_err(Failure::input)?;
    let skipped: Vec<(PowerIndex, usize)> = PowerIndex::STANDARD
        .iter()
        .filter(|&&i| args.n > config.index_cap(i))
        .map(|&i| (i, config.index_cap(i)))
        .collect();
    let text = render::bounds(
        args.output.format == Format::Json,
        args.n,
        &reports,
        &skipped,
    );
    match reports.iter().find(|r| !r.verified()) {
        Some(bad) => {
            Err(Failure::internal(format!("bound check failed for {}", bad.index)).after(text))
        }
        None => Ok(text),
    }
}

fn spectrum(args: SpectrumArgs, config: &ExtremalConfig) -> Result<String, Failure> {
    let index: PowerIndex = args.index.parse().map_err(Failure::input)?;
    let class = parse_class(&args.class)?;
    let entries =
        extremal::power_spectrum(index, args.n, class, args.top, config).map_err(Failure::input)?;
    Ok(render::spectrum(
        args.output.format == Format::Json,
        index,
        args.n,
        class,
        &entries,
    ))
}

fn inverse_gap(args: InverseArgs, config: &ExtremalConfig) -> Result<String, Failure> {
    let sigma = TargetDistribution::parse(&args.sigma).map_err(Failure::input)?;
    let index: PowerIndex = args.index.parse().map_err(Failure::input)?;
    let class = parse_class(&args.class)?;
    let n = args.n.unwrap_or(sigma.len());
    let alpha = match (&args.alpha, index.closed_form_alpha(n)) {
        (Some(text), _) => powerkit::rational::parse_rational(text)
            .map_err(|e| Failure::input(format!("invalid alpha: {e}")))?,
        (None, Some(closed)) => closed,
        (None, None) => {
            extremal::alpha(index, n, class, config)
                .map_err(Failure::input)?
                .alpha_observed
        }
    };
    let mut report = inverse::gap_lower_bound(&sigma, index, n, &alpha).map_err(Failure::input)?;
    if !args.no_search {
        let found =
            inverse::best_approximation(&sigma, index, n, class, config).map_err(Failure::input)?;
        if report.player.is_some() && found.1 < report.bound {
            return Err(Failure::internal(
                "best approximation beats the proven lower bound",
            ));
        }
        report.best_found = Some(found);
    }
    Ok(render::inverse(
        args.output.format == Format::Json,
        &sigma,
        &alpha,
        class,
        &report,
    ))
}

fn enumerate(args: EnumerateArgs, config: &ExtremalConfig) -> Result<String, Failure> {
    let class = parse_class(&args.class)?;
    let games = extremal::enumerate_games(args.n, class, config).map_err(Failure::input)?;
    match args.output.format {
        Format::Table => {
            let mut buf = Vec::new();
            extremal::write_game_records(&mut buf, &games).map_err(Failure::internal)?;
            Ok(String::from_utf8(buf).expect("records are ASCII"))
        }
        Format::Json => Ok(render::enumerate_json(args.n, class, &games)),
    }
}
