//! Running single trials and seeded batches.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::game::{play, Convention, GameResult, Params};
use crate::graph::{sample_gnp, GnpParams, Graph};
use crate::rng::{derive_seed, tags};
use crate::strategies::{build_strategy, RegistryError};

use super::config::{BoardKind, Config, ConfigError};
use super::records::{StrategyInfo, TrialRecord, TRIAL_SCHEMA};

/// The board of trial `seed`: G(n,p) drawn from a seed derived from it,
/// or K_n.
pub fn board_for(cfg: &Config, seed: u64) -> Result<Graph, String> {
    match cfg.board {
        BoardKind::Complete => Ok(Graph::complete(cfg.n)),
        BoardKind::Gnp => {
            let params = GnpParams::new(cfg.n, cfg.p, derive_seed(seed, tags::BOARD)).map_err(|e| e.to_string())?;
            sample_gnp(&params).map_err(|e| e.to_string())
        }
    }
}

fn registry_err(e: RegistryError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

/// Checks that both strategies can be built with the configured options.
pub fn check_strategies(cfg: &Config) -> Result<(), ConfigError> {
    let spec = cfg.spec();
    build_strategy(&cfg.maker, &cfg.maker_opts, &spec).map_err(registry_err)?;
    build_strategy(&cfg.breaker, &cfg.breaker_opts, &spec).map_err(registry_err)?;
    Ok(())
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

/// Plays one game. Never fails: errors become a forfeit record with no
/// winner.
pub fn run_trial(cfg: &Config, seed: u64) -> TrialRecord {
    run_trial_full(cfg, seed).0
}

/// [`run_trial`], also returning the finished game when there is one.
pub fn run_trial_full(cfg: &Config, seed: u64) -> (TrialRecord, Option<GameResult>) {
    let spec = cfg.spec();
    let start = Instant::now();
    let info = |name: &str, params: Params| StrategyInfo { name: name.into(), params };
    let mut rec = TrialRecord {
        schema: TRIAL_SCHEMA.into(),
        seed,
        n: cfg.n,
        p: cfg.p,
        board_edges: 0,
        bias_a: cfg.a,
        bias_b: cfg.b,
        convention: cfg.convention.to_string(),
        target: cfg.target.to_string(),
        maker: info(&cfg.maker, Params::new()),
        breaker: info(&cfg.breaker, Params::new()),
        first_player: cfg.first.label(cfg.convention).into(),
        winner: None,
        reason: "forfeit".into(),
        move_count: 0,
        detail: None,
        wall_time_ms: 0.0,
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<_, String> {
        let board = board_for(cfg, seed)?;
        let edges = board.edge_count();
        let mut maker = build_strategy(&cfg.maker, &cfg.maker_opts, &spec).map_err(|e| e.to_string())?;
        let mut breaker = build_strategy(&cfg.breaker, &cfg.breaker_opts, &spec).map_err(|e| e.to_string())?;
        let params = (maker.params(), breaker.params());
        let res = play(&spec, Arc::new(board), &mut maker, &mut breaker, seed).map_err(|e| e.to_string())?;
        Ok((edges, params, res))
    }));
    let mut game = None;
    match outcome {
        Ok(Ok((edges, (mp, bp), res))) => {
            rec.board_edges = edges;
            rec.maker.params = mp;
            rec.breaker.params = bp;
            rec.winner = Some(res.winner.label(cfg.convention).into());
            rec.reason = res.reason.to_string();
            rec.move_count = res.move_count;
            rec.detail = res.detail.clone();
            game = Some(res);
        }
        Ok(Err(msg)) => rec.detail = Some(format!("trial failed: {msg}")),
        Err(p) => rec.detail = Some(format!("trial panicked: {}", panic_text(p))),
    }
    rec.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    (rec, game)
}

/// Runs `f` on a pool of `threads` workers (0 = all cores).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Plays every seed of the schedule; records come back in seed-schedule
/// order whatever the thread count.
pub fn run_trials(cfg: &Config) -> Vec<TrialRecord> {
    let seeds = cfg.seed_schedule();
    with_threads(cfg.threads, || seeds.par_iter().map(|&s| run_trial(cfg, s)).collect())
}

/// Winner label helper for callers that only know the convention.
pub fn maker_label(c: Convention) -> &'static str {
    crate::game::Role::Maker.label(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Target;

    fn cfg() -> Config {
        Config {
            n: 10,
            p: 0.6,
            target: Target::Connectivity,
            seeds: 6,
            ..Config::default()
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let mut c = cfg();
        c.threads = 1;
        let a = run_trials(&c);
        c.threads = 3;
        let b = run_trials(&c);
        assert_eq!(super::super::records::trials_to_jsonl(&a), super::super::records::trials_to_jsonl(&b));
        assert_eq!(a.iter().map(|r| r.seed).collect::<Vec<_>>(), c.seed_schedule());
    }

    #[test]
    fn failures_become_forfeits() {
        let mut c = cfg();
        c.maker = "no-such-strategy".into();
        assert!(check_strategies(&c).is_err());
        let r = run_trial(&c, 3);
        assert_eq!(r.winner, None);
        assert_eq!(r.reason, "forfeit");
        assert!(r.detail.unwrap().contains("trial failed"));
    }

    #[test]
    fn labels_follow_convention() {
        let mut c = cfg();
        c.convention = Convention::AvoiderEnforcerMonotone;
        let r = run_trial(&c, 1);
        assert!(matches!(r.winner.as_deref(), Some("avoider" | "enforcer")));
        assert_eq!(maker_label(c.convention), "avoider");
    }
}
