//! The `gnpgames` command line.
//!
//! Every subcommand resolves a [`Config`] from an optional `key=value` file
//! plus `--set` overrides, writes its artifacts into `--out`, and leaves a
//! `manifest.json` there describing the run.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gnpgames::boxes::{
    box_threshold, boxmaker_vs_optimal_breaker, enforcer_vs_optimal_avoider, rbox_min_boxes, solve_box_exact,
    solve_rbox_exact, BoxState, RBoxRole, RBoxState,
};
use gnpgames::game::{replay_transcript, transcript, Convention, Role};
use gnpgames::harness::{
    bias_scan, board_for, check_strategies, estimate_critical_bias, parse_b_range, read_jsonl, run_audit_batch,
    run_trial_full, run_trials, summarize, tally, write_csv, write_jsonl, write_timings, BiasEstimate, Config,
    ConfigError, Manifest, TrialRecord,
};
use gnpgames::oracle::{best_response_value, solve_exact, MAX_ORACLE_EDGES};
use gnpgames::props::AuditKnobs;
use gnpgames::strategies::build_strategy;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or arguments: exit code 2.
    Config(String),
    /// Anything else: exit code 3.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

fn internal<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Internal(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "gnpgames", version, about = "Biased positional games on random graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// `key=value` config file.
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    /// Override a config key (repeatable): `--set n=50`.
    #[arg(long = "set", short = 's', value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Seed file: whitespace or comma separated seeds; replaces the schedule.
    #[arg(long)]
    pub seed_file: Option<PathBuf>,
    /// Output directory.
    #[arg(long, short, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the board of the first scheduled seed.
    Sample(Common),
    /// Play one game (first scheduled seed) and write its transcript.
    Play {
        #[command(flatten)]
        common: Common,
        /// Replay a transcript on the configured board instead of playing.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Play every scheduled seed.
    Trials(Common),
    /// Play every seed at every b in `b_range` and estimate the critical bias.
    BiasScan {
        #[command(flatten)]
        common: Common,
        /// Recompute the estimate from a persisted trials.jsonl instead.
        #[arg(long)]
        from: Option<PathBuf>,
    },
    /// Audit the random-graph properties of every scheduled board.
    Audit {
        #[command(flatten)]
        common: Common,
        /// Samples per bucket for the sampled properties.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Compare the configured strategies with exact play on small boards.
    OracleCheck(Common),
    /// Box-game tables: exact winner against the strategy's result.
    Box {
        /// Number of boxes: `2..5` or a list.
        #[arg(long, default_value = "2..5")]
        m: String,
        /// Box size.
        #[arg(long, default_value = "1..5")]
        l: String,
        /// BoxMaker bias (forward) or Enforcer bias (reverse).
        #[arg(long, default_value = "1..6")]
        b: String,
        /// Reverse box game (Avoider-Enforcer).
        #[arg(long)]
        reverse: bool,
        /// Avoider bias in the reverse game.
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, short, default_value = "out")]
        out: PathBuf,
    },
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sample(c) => cmd_sample(&c),
        Command::Play { common, replay } => cmd_play(&common, replay.as_deref()),
        Command::Trials(c) => cmd_trials(&c),
        Command::BiasScan { common, from } => cmd_bias_scan(&common, from.as_deref()),
        Command::Audit { common, samples } => cmd_audit(&common, samples),
        Command::OracleCheck(c) => cmd_oracle_check(&c),
        Command::Box { m, l, b, reverse, p, out } => cmd_box(&m, &l, &b, reverse, p, &out),
    }
}

/// Config file, then the seed file, then `--set` overrides.
pub fn load_config(c: &Common) -> Result<Config, CliError> {
    let mut cfg = match &c.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(path) = &c.seed_file {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let seeds = text
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u64>().map_err(|e| CliError::Config(format!("seed file: `{s}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        cfg.seed_list = Some(seeds);
    }
    Ok(cfg.with_overrides(c.set.iter().map(String::as_str))?)
}

fn out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| internal(format!("{}: {e}", dir.display())))
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    let p = dir.join(name);
    fs::write(&p, bytes).map_err(|e| internal(format!("{}: {e}", p.display())))
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).map_err(internal)?;
    Ok(buf)
}

fn jsonl_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, rows).map_err(internal)?;
    Ok(buf)
}

fn manifest(dir: &Path, command: &str, cfg: &Config, outputs: &[&str]) -> Result<(), CliError> {
    let m = Manifest::new(command, cfg, outputs);
    write_file(dir, "manifest.json", m.to_json().as_bytes())
}

/// Manifest for commands driven by arguments rather than a config.
fn manifest_args(
    dir: &Path,
    command: &str,
    args: &[(&str, String)],
    seeds: Vec<u64>,
    outputs: &[&str],
) -> Result<(), CliError> {
    let mut m = Manifest::new(command, &Config::default(), outputs);
    m.config = args.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    m.seeds = seeds;
    write_file(dir, "manifest.json", m.to_json().as_bytes())
}

fn first_seed(cfg: &Config) -> Result<u64, CliError> {
    cfg.seed_schedule()
        .first()
        .copied()
        .ok_or_else(|| CliError::Config("seed schedule is empty".into()))
}

fn cmd_sample(c: &Common) -> Result<(), CliError> {
    let cfg = load_config(c)?;
    let seed = first_seed(&cfg)?;
    let g = board_for(&cfg, seed).map_err(CliError::Config)?;
    out_dir(&c.out)?;
    write_file(&c.out, "graph.txt", g.to_text().as_bytes())?;
    manifest(&c.out, "sample", &cfg, &["graph.txt"])?;
    println!("sampled n={} edges={} seed={seed}", g.n(), g.edge_count());
    Ok(())
}

fn cmd_play(c: &Common, replay: Option<&Path>) -> Result<(), CliError> {
    let cfg = load_config(c)?;
    check_strategies(&cfg)?;
    let seed = first_seed(&cfg)?;
    out_dir(&c.out)?;
    if let Some(path) = replay {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let board = board_for(&cfg, seed).map_err(CliError::Config)?;
        let state = replay_transcript(cfg.spec(), Arc::new(board), &text).map_err(|e| CliError::Config(e.to_string()))?;
        match state.outcome() {
            Some((w, r)) => println!("replayed {} moves: {} wins ({r})", state.move_count(), w.label(cfg.convention)),
            None => println!("replayed {} moves: undecided", state.move_count()),
        }
        return Ok(());
    }
    let (rec, game) = run_trial_full(&cfg, seed);
    let text = game.as_ref().map(|g| transcript(&g.final_state)).unwrap_or_default();
    write_file(&c.out, "transcript.txt", text.as_bytes())?;
    write_file(&c.out, "record.jsonl", &jsonl_bytes(std::slice::from_ref(&rec))?)?;
    manifest(&c.out, "play", &cfg, &["transcript.txt", "record.jsonl"])?;
    println!(
        "seed={seed} winner={} reason={} moves={}",
        rec.winner.as_deref().unwrap_or("none"),
        rec.reason,
        rec.move_count
    );
    Ok(())
}

fn write_trial_outputs(dir: &Path, records: &[TrialRecord]) -> Result<(), CliError> {
    write_file(dir, "trials.jsonl", &jsonl_bytes(records)?)?;
    write_file(dir, "summary.csv", &csv_bytes(&summarize(records))?)?;
    let mut t = Vec::new();
    write_timings(&mut t, records).map_err(internal)?;
    write_file(dir, "timings.csv", &t)
}

fn cmd_trials(c: &Common) -> Result<(), CliError> {
    let cfg = load_config(c)?;
    check_strategies(&cfg)?;
    out_dir(&c.out)?;
    let records = run_trials(&cfg);
    write_trial_outputs(&c.out, &records)?;
    manifest(&c.out, "trials", &cfg, &["trials.jsonl", "summary.csv", "timings.csv"])?;
    for row in summarize(&records) {
        println!(
            "b={} trials={} {}_wins={} forfeits={} failed={} rate={:.3} ci=[{:.3},{:.3}]",
            row.b,
            row.trials,
            Role::Maker.label(cfg.convention),
            row.maker_wins,
            row.forfeits,
            row.failed,
            row.maker_rate,
            row.ci_low,
            row.ci_high
        );
    }
    Ok(())
}

fn write_estimate(dir: &Path, est: &BiasEstimate) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(est).map_err(internal)?;
    write_file(dir, "bias.json", json.as_bytes())?;
    write_file(dir, "curve.csv", &csv_bytes(&est.curve)?)
}

fn print_estimate(est: &BiasEstimate) {
    println!("{}", est.label);
    for c in &est.curve {
        println!("  b={} rate={:.3} ci=[{:.3},{:.3}] trials={}", c.b, c.rate, c.ci_low, c.ci_high, c.trials);
    }
    match (est.b_star, est.ratio) {
        (Some(b), Some(r)) => println!("  b*={b} ratio b*ln(n)/(np)={r:.3}"),
        _ => println!("  right-censored: the scan never crossed 1/2"),
    }
}

fn cmd_bias_scan(c: &Common, from: Option<&Path>) -> Result<(), CliError> {
    if let Some(path) = from {
        let f = fs::File::open(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let records: Vec<TrialRecord> = read_jsonl(BufReader::new(f)).map_err(|e| CliError::Config(e.to_string()))?;
        let est = estimate_critical_bias(&records).ok_or_else(|| CliError::Config("no records".into()))?;
        out_dir(&c.out)?;
        write_estimate(&c.out, &est)?;
        let mut seeds: Vec<u64> = records.iter().map(|r| r.seed).collect();
        seeds.sort_unstable();
        seeds.dedup();
        manifest_args(
            &c.out,
            "bias-scan",
            &[("from", path.display().to_string())],
            seeds,
            &["bias.json", "curve.csv"],
        )?;
        print_estimate(&est);
        return Ok(());
    }
    let cfg = load_config(c)?;
    check_strategies(&cfg)?;
    out_dir(&c.out)?;
    let (records, est) = bias_scan(&cfg);
    write_trial_outputs(&c.out, &records)?;
    let est = est.ok_or_else(|| CliError::Config("empty seed schedule".into()))?;
    write_estimate(&c.out, &est)?;
    manifest(
        &c.out,
        "bias-scan",
        &cfg,
        &["trials.jsonl", "summary.csv", "timings.csv", "bias.json", "curve.csv"],
    )?;
    print_estimate(&est);
    Ok(())
}

fn cmd_audit(c: &Common, samples: usize) -> Result<(), CliError> {
    let cfg = load_config(c)?;
    let knobs = AuditKnobs { samples_per_bucket: samples, ..AuditKnobs::default() };
    let batch = run_audit_batch(&cfg, &knobs).map_err(CliError::Config)?;
    out_dir(&c.out)?;
    write_file(&c.out, "audit.jsonl", &jsonl_bytes(&batch)?)?;
    let text: String = batch.iter().map(|a| format!("# seed {}\n{}", a.seed, a.report.to_text())).collect();
    write_file(&c.out, "audit.txt", text.as_bytes())?;
    let t = tally(&batch);
    write_file(&c.out, "audit_summary.csv", &csv_bytes(&t)?)?;
    manifest(&c.out, "audit", &cfg, &["audit.jsonl", "audit.txt", "audit_summary.csv"])?;
    for row in &t {
        println!("{} passed {}/{}", row.name, row.passed, row.total);
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct OracleRow {
    seed: u64,
    edges: usize,
    skipped: Option<String>,
    /// Exact winner with the configured first player.
    winner: Option<String>,
    winner_maker_first: Option<String>,
    winner_breaker_first: Option<String>,
    /// Maker-Breaker only: moving first never hurts Maker.
    first_move_consistent: Option<bool>,
    /// Winner when the configured Maker strategy meets optimal play.
    maker_strategy_result: Option<String>,
    breaker_strategy_result: Option<String>,
}

fn cmd_oracle_check(c: &Common) -> Result<(), CliError> {
    let cfg = load_config(c)?;
    check_strategies(&cfg)?;
    let conv = cfg.convention;
    let label = |r: Role| r.label(conv).to_string();
    let mut rows = Vec::new();
    for seed in cfg.seed_schedule() {
        let board = Arc::new(board_for(&cfg, seed).map_err(CliError::Config)?);
        let mut row = OracleRow {
            seed,
            edges: board.edge_count(),
            skipped: None,
            winner: None,
            winner_maker_first: None,
            winner_breaker_first: None,
            first_move_consistent: None,
            maker_strategy_result: None,
            breaker_strategy_result: None,
        };
        if board.edge_count() > MAX_ORACLE_EDGES {
            row.skipped = Some(format!("more than {MAX_ORACLE_EDGES} edges"));
            rows.push(row);
            continue;
        }
        let spec = cfg.spec();
        let solve = |first: Role| solve_exact(&spec.clone().with_first(first), &board).map(|r| r.winner);
        let mf = solve(Role::Maker).map_err(internal)?;
        let bf = solve(Role::Breaker).map_err(internal)?;
        row.winner = Some(label(if cfg.first == Role::Maker { mf } else { bf }));
        row.winner_maker_first = Some(label(mf));
        row.winner_breaker_first = Some(label(bf));
        if conv == Convention::MakerBreaker {
            row.first_move_consistent = Some(!(bf == Role::Maker && mf == Role::Breaker));
        }
        let mk = || build_strategy(&cfg.maker, &cfg.maker_opts, &spec).expect("checked above");
        let bk = || build_strategy(&cfg.breaker, &cfg.breaker_opts, &spec).expect("checked above");
        let mv = best_response_value(&spec, &board, &mk, Role::Maker, seed).map_err(internal)?;
        let bv = best_response_value(&spec, &board, &bk, Role::Breaker, seed).map_err(internal)?;
        row.maker_strategy_result = Some(label(mv));
        row.breaker_strategy_result = Some(label(bv));
        rows.push(row);
    }
    out_dir(&c.out)?;
    write_file(&c.out, "oracle.jsonl", &jsonl_bytes(&rows)?)?;
    manifest(&c.out, "oracle-check", &cfg, &["oracle.jsonl"])?;
    let solved: Vec<&OracleRow> = rows.iter().filter(|r| r.skipped.is_none()).collect();
    let bad = solved.iter().filter(|r| r.first_move_consistent == Some(false)).count();
    let m_opt = solved
        .iter()
        .filter(|r| r.winner.as_deref() == Some(&label(Role::Maker)[..]))
        .filter(|r| r.maker_strategy_result == r.winner)
        .count();
    let b_opt = solved
        .iter()
        .filter(|r| r.winner.as_deref() == Some(&label(Role::Breaker)[..]))
        .filter(|r| r.breaker_strategy_result == r.winner)
        .count();
    println!(
        "solved={} skipped={} first-move-violations={bad} {}-strategy-realized={m_opt} {}-strategy-realized={b_opt}",
        solved.len(),
        rows.len() - solved.len(),
        label(Role::Maker),
        label(Role::Breaker)
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct BoxRow {
    m: usize,
    l: usize,
    b: usize,
    threshold: f64,
    above_threshold: bool,
    exact: String,
    strategy: String,
}

#[derive(Debug, Serialize)]
struct RBoxRow {
    m: usize,
    l: usize,
    p: usize,
    q: usize,
    first: String,
    min_boxes_bound: f64,
    exact: String,
    enforcer_strategy: String,
}

fn range(key: &str, v: &str) -> Result<Vec<usize>, CliError> {
    parse_b_range(v).map_err(|e| CliError::Config(format!("--{key}: {e}")))
}

fn cmd_box(m: &str, l: &str, b: &str, reverse: bool, p: usize, out: &Path) -> Result<(), CliError> {
    let (ms, ls, bs) = (range("m", m)?, range("l", l)?, range("b", b)?);
    out_dir(out)?;
    let mut args = vec![("m", m.to_string()), ("l", l.to_string()), ("b", b.to_string())];
    if reverse {
        args.extend([("reverse", "true".to_string()), ("p", p.to_string())]);
    }
    manifest_args(out, "box", &args, Vec::new(), &[if reverse { "rbox.csv" } else { "box.csv" }])?;
    if reverse {
        let mut rows = Vec::new();
        for &m in &ms {
            for &l in &ls {
                for &q in &bs {
                    for first in [RBoxRole::Avoider, RBoxRole::Enforcer] {
                        let s = RBoxState::new(vec![l; m], p, q, first).map_err(|e| CliError::Config(e.to_string()))?;
                        let exact = solve_rbox_exact(&s).map_err(|e| CliError::Config(e.to_string()))?;
                        let strat = enforcer_vs_optimal_avoider(&s).map_err(internal)?;
                        rows.push(RBoxRow {
                            m,
                            l,
                            p,
                            q,
                            first: format!("{first:?}").to_lowercase(),
                            min_boxes_bound: rbox_min_boxes(l, p),
                            exact: format!("{exact:?}").to_lowercase(),
                            enforcer_strategy: format!("{strat:?}").to_lowercase(),
                        });
                    }
                }
            }
        }
        write_file(out, "rbox.csv", &csv_bytes(&rows)?)?;
        let agree = rows.iter().filter(|r| r.exact == r.enforcer_strategy).count();
        println!("rbox instances={} strategy-matches-exact={agree}", rows.len());
        return Ok(());
    }
    let mut rows = Vec::new();
    for &m in &ms {
        for &l in &ls {
            for &b in &bs {
                let t = box_threshold(m, l).map_err(|e| CliError::Config(e.to_string()))?;
                let s = BoxState::new(m, l, b);
                let exact = solve_box_exact(&s).map_err(|e| CliError::Config(e.to_string()))?;
                let strat = boxmaker_vs_optimal_breaker(&s).map_err(internal)?;
                rows.push(BoxRow {
                    m,
                    l,
                    b,
                    threshold: t,
                    above_threshold: b as f64 > t,
                    exact: format!("{exact:?}").to_lowercase(),
                    strategy: format!("{strat:?}").to_lowercase(),
                });
            }
        }
    }
    write_file(out, "box.csv", &csv_bytes(&rows)?)?;
    let above: Vec<&BoxRow> = rows.iter().filter(|r| r.above_threshold).collect();
    let won = above.iter().filter(|r| r.strategy == "boxmaker").count();
    println!("box instances={} above-threshold={} boxmaker-wins-above={won}", rows.len(), above.len());
    Ok(())
}
