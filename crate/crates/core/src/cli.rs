//! The `pmg` command line: classify, inspect, simulate, convert.
//!
//! Exit codes: 0 success, 1 bad input (unreadable or malformed files,
//! environment that does not fit the game), 2 bad flags, and for `classify`
//! the verdict codes 10 Trivial, 11 Easy, 12 Hard, 13 Hopeless.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{analyze, classify, Analysis, Classification};
use crate::feedexp::{default_encoding, feedexp_precondition, point_local_witness, Encoding};
use crate::game::{build_dueling_game, build_mab_game, build_pricing_game, ActionPair, Game, MAX_ARMS, MIN_ARMS};
use crate::gamefile::{load_game, save_game};
use crate::geometry::{cell_decomposition, neighbor_dot, neighbor_pairs};
use crate::observability::{signal_matrix, SignalMatrix};
use crate::rational::{self, Rational};
use crate::render;
use crate::sim::{batch, summary_csv, trace_csv, DuelingExp3, Environment, PolicySpec};

#[derive(Debug, Parser)]
#[command(name = "pmg", version, about = "Partial-monitoring games: classify, inspect, simulate, convert")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide Trivial / Easy / Hard / Hopeless; the exit code carries the verdict.
    Classify {
        #[command(flatten)]
        game: GameArgs,
        /// Write the full analysis (cells, neighbors, observability) as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print matrices, signal matrices, cells, neighbors, or the feedback checks.
    Inspect {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Restrict to one action: a label such as `12`, or for dueling games
        /// the arm pair `1,2`.
        #[arg(long)]
        action: Option<String>,
        /// Numeric symbol values for `--what feedexp`, e.g. `□=0,◇=1/2,■=1`.
        #[arg(long)]
        encoding: Option<String>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch of simulations and report mean regret ± standard error.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        /// `means=p1,p2,...` (dueling arms), `dist=FILE` (outcome
        /// probabilities) or `script=FILE` (outcome sequence, cycled).
        #[arg(long)]
        env: String,
        #[arg(long, value_enum, default_value = "uniform")]
        policy: PolicyKind,
        /// Exploration rate of dexp3 in (0, 1]; defaults to the horizon-tuned value.
        #[arg(long, value_parser = parse_gamma)]
        gamma: Option<f64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-round trace CSV; the per-run summary goes next to it as
        /// `<stem>.summary.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fractional digits for decimals in the CSVs.
        #[arg(long, default_value_t = 10)]
        precision: usize,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
    /// Rewrite a game file canonically, or export a built-in game.
    Convert {
        #[arg(long = "in", conflicts_with_all = ["game", "arms", "file", "prices", "valuations"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        game: OptGameArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GameKind {
    Dueling,
    Mab,
    Pricing,
    File,
}

#[derive(Debug, Args)]
struct GameArgs {
    #[arg(long, value_enum)]
    game: GameKind,
    #[command(flatten)]
    params: GameParams,
}

#[derive(Debug, Args)]
struct OptGameArgs {
    #[arg(long, value_enum)]
    game: Option<GameKind>,
    #[command(flatten)]
    params: GameParams,
}

#[derive(Debug, Args)]
struct GameParams {
    /// Number of arms for dueling and mab games.
    #[arg(long, value_parser = clap::value_parser!(u64).range(MIN_ARMS as u64..=MAX_ARMS as u64))]
    arms: Option<u64>,
    /// Game file (`.pmg`) for `--game file`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma-separated rational prices for `--game pricing`.
    #[arg(long)]
    prices: Option<String>,
    /// Comma-separated rational valuations for `--game pricing`.
    #[arg(long)]
    valuations: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Matrices,
    Signals,
    Cells,
    Neighbors,
    Feedexp,
    Pointlocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    /// Structured JSON.
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyKind {
    Uniform,
    Dexp3,
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let g: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if g > 0.0 && g <= 1.0 {
        Ok(g)
    } else {
        Err(format!("{s} is outside (0, 1]"))
    }
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 1,
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(input(path.display()))
}

fn write(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(input(path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rational_list(flag: &str, s: &str) -> Outcome<Vec<Rational>> {
    s.split(',')
        .map(|x| rational::parse(x.trim()).map_err(|e| Failure::Usage(format!("--{flag}: {e}"))))
        .collect()
}

fn load_game_args(kind: GameKind, p: &GameParams) -> Outcome<Game> {
    let arms = || {
        p.arms
            .map(|k| k as usize)
            .ok_or_else(|| Failure::Usage("--arms is required for this game".into()))
    };
    match kind {
        GameKind::Dueling => build_dueling_game(arms()?).map_err(|e| Failure::Usage(e.to_string())),
        GameKind::Mab => build_mab_game(arms()?).map_err(|e| Failure::Usage(e.to_string())),
        GameKind::Pricing => {
            let (Some(prices), Some(vals)) = (&p.prices, &p.valuations) else {
                return Err(Failure::Usage("--prices and --valuations are required for pricing".into()));
            };
            build_pricing_game(&rational_list("prices", prices)?, &rational_list("valuations", vals)?)
                .map_err(|e| Failure::Usage(e.to_string()))
        }
        GameKind::File => {
            let path = p
                .file
                .as_deref()
                .ok_or_else(|| Failure::Usage("--file is required for --game file".into()))?;
            load_game(&read(path)?).map_err(input(path.display()))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Action index from `--action`: a label, or an arm pair `i,j` for dueling games.
fn action_filter(g: &Game, spec: &str) -> Outcome<usize> {
    if let Some(i) = g.action_index(spec) {
        return Ok(i);
    }
    if let (Some(arms), Some((a, b))) = (g.dueling_arms(), spec.split_once(',')) {
        let parse = |x: &str| x.trim().parse::<usize>().ok().filter(|&k| (1..=arms).contains(&k));
        if let (Some(a), Some(b)) = (parse(a), parse(b)) {
            return Ok(ActionPair::new(a, b).index(arms));
        }
    }
    Err(Failure::Usage(format!("--action: no action {spec:?} in this game")))
}

fn parse_encoding(g: &Game, spec: &str) -> Outcome<Encoding> {
    let mut enc = default_encoding(g);
    for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let (sym, val) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--encoding: expected symbol=value, got {item:?}")))?;
        let val = rational::parse(val.trim()).map_err(|e| Failure::Usage(format!("--encoding: {e}")))?;
        enc.insert(sym.trim().to_string(), val);
    }
    Ok(enc)
}

#[derive(Serialize)]
struct ClassifyDoc<'a> {
    game: &'a str,
    actions: &'a [String],
    outcomes: &'a [String],
    #[serde(flatten)]
    analysis: &'a Analysis,
}

fn cmd_classify(game: &GameArgs, out: Option<&Path>) -> Outcome<i32> {
    let g = load_game_args(game.game, &game.params)?;
    let classification: Classification = match out {
        Some(path) => {
            let analysis = analyze(&g);
            let doc = ClassifyDoc {
                game: g.name(),
                actions: g.actions(),
                outcomes: g.outcomes(),
                analysis: &analysis,
            };
            write(path, &to_json(&doc))?;
            analysis.classification
        }
        None => classify(&g),
    };
    print!("{}", render::classification(&g, &classification));
    Ok(classification.verdict.exit_code())
}

#[allow(clippy::too_many_arguments)]
fn cmd_inspect(
    game: &GameArgs,
    what: What,
    format: Format,
    action: Option<&str>,
    encoding: Option<&str>,
    out: Option<&Path>,
) -> Outcome<i32> {
    let g = load_game_args(game.game, &game.params)?;
    if format == Format::Dot && what != What::Neighbors {
        return Err(Failure::Usage("--format dot is only available for --what neighbors".into()));
    }
    let text = match what {
        What::Matrices => match format {
            Format::File => save_game(&g),
            _ => render::matrices(&g),
        },
        What::Signals => {
            let actions: Vec<usize> = match action {
                Some(a) => vec![action_filter(&g, a)?],
                None => (0..g.num_actions()).collect(),
            };
            let mats: Vec<SignalMatrix> = actions.iter().map(|&i| signal_matrix(&g, i)).collect();
            match format {
                Format::File => to_json(&mats),
                _ => mats.iter().map(|s| render::signal(&g, s)).collect::<Vec<_>>().join("\n"),
            }
        }
        What::Cells => {
            let cells = cell_decomposition(&g);
            match format {
                Format::File => to_json(&cells),
                _ => render::cells(&g, &cells),
            }
        }
        What::Neighbors => {
            let cells = cell_decomposition(&g);
            let neighbors = neighbor_pairs(&g, &cells);
            match format {
                Format::Text => render::neighbors(&g, &neighbors),
                Format::Dot => neighbor_dot(&g, &cells, &neighbors),
                Format::File => to_json(&neighbors),
            }
        }
        What::Feedexp => {
            let enc = match encoding {
                Some(spec) => parse_encoding(&g, spec)?,
                None => default_encoding(&g),
            };
            let report = feedexp_precondition(&g, &enc).map_err(|e| Failure::Usage(e.to_string()))?;
            match format {
                Format::File => to_json(&report),
                _ => render::feedexp(&g, &enc, &report),
            }
        }
        What::Pointlocal => {
            let w = point_local_witness(&g).map_err(|e| Failure::Usage(e.to_string()))?;
            match format {
                Format::File => to_json(&w),
                _ => render::point_local(&g, &w),
            }
        }
    };
    emit(out, &text)?;
    Ok(0)
}

/// Outcome indices or labels separated by whitespace or commas.
fn parse_script(g: &Game, text: &str) -> Outcome<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            g.outcome_index(t)
                .or_else(|| t.parse().ok())
                .ok_or_else(|| Failure::Input(format!("script: unknown outcome {t:?}")))
        })
        .collect()
}

fn parse_env(g: &Game, spec: &str) -> Outcome<Environment> {
    let (kind, arg) = spec
        .split_once('=')
        .ok_or_else(|| Failure::Usage(format!("--env: expected means=…, dist=FILE or script=FILE, got {spec:?}")))?;
    match kind {
        "means" => {
            let means = arg
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("--env means: {e}")))?;
            Ok(Environment::DuelingBernoulli(means))
        }
        "dist" => {
            let text = read(Path::new(arg))?;
            let q = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(rational::parse)
                .collect::<Result<Vec<_>, _>>()
                .map_err(input(arg))?;
            Ok(Environment::Stochastic(q))
        }
        "script" => Ok(Environment::Scripted(parse_script(g, &read(Path::new(arg))?)?)),
        other => Err(Failure::Usage(format!("--env: unknown environment kind {other:?}"))),
    }
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or_else(|| "trace".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.summary.csv"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    game: &GameArgs,
    env: &str,
    policy: PolicyKind,
    gamma: Option<f64>,
    horizon: u64,
    runs: u64,
    seed: u64,
    out: Option<&Path>,
    precision: usize,
    workers: Option<u64>,
) -> Outcome<i32> {
    let g = load_game_args(game.game, &game.params)?;
    let env = parse_env(&g, env)?;
    let spec = match policy {
        PolicyKind::Uniform => PolicySpec::Uniform,
        PolicyKind::Dexp3 => {
            let arms = g
                .dueling_arms()
                .ok_or_else(|| Failure::Input("dexp3 needs a dueling game".into()))?;
            PolicySpec::DuelingExp3 {
                gamma: gamma.unwrap_or_else(|| DuelingExp3::tuned_gamma(arms, horizon)),
            }
        }
    };
    let result = batch(&g, &env, &spec, horizon, runs as usize, seed, workers.map(|w| w as usize))
        .map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(path) = out {
        write(path, &trace_csv(&g, &result.traces, precision))?;
        write(&summary_path(path), &summary_csv(&result.summary, precision))?;
    }
    let s = &result.summary;
    println!(
        "mean regret {} ± {:.4} (runs {}, horizon {horizon})",
        rational::to_decimal(&s.mean, 4),
        s.std_error,
        s.runs
    );
    Ok(0)
}

fn cmd_convert(input_path: Option<&Path>, game: &OptGameArgs, out: Option<&Path>) -> Outcome<i32> {
    let g = match (input_path, game.game) {
        (Some(path), _) => load_game(&read(path)?).map_err(input(path.display()))?,
        (None, Some(kind)) => load_game_args(kind, &game.params)?,
        (None, None) => return Err(Failure::Usage("convert needs --in FILE or --game".into())),
    };
    emit(out, &save_game(&g))?;
    Ok(0)
}

fn dispatch(cli: Cli) -> Outcome<i32> {
    match cli.command {
        Command::Classify { game, out } => cmd_classify(&game, out.as_deref()),
        Command::Inspect {
            game,
            what,
            format,
            action,
            encoding,
            out,
        } => cmd_inspect(&game, what, format, action.as_deref(), encoding.as_deref(), out.as_deref()),
        Command::Simulate {
            game,
            env,
            policy,
            gamma,
            horizon,
            runs,
            seed,
            out,
            precision,
            workers,
        } => cmd_simulate(&game, &env, policy, gamma, horizon, runs, seed, out.as_deref(), precision, workers),
        Command::Convert { input, game, out } => cmd_convert(input.as_deref(), &game, out.as_deref()),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Reports go to stdout, diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Input(msg)) = &f;
            eprintln!("error: {msg}");
            f.code()
        }
    }
}
