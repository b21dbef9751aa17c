//! Persisted trial records, summaries and run manifests.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::game::Params;

use super::bias::wilson;
use super::config::Config;

pub const TRIAL_SCHEMA: &str = "gnpgames.trial/1";
pub const MANIFEST_SCHEMA: &str = "gnpgames.manifest/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyInfo {
    pub name: String,
    pub params: Params,
}

/// One played game. Serialized as one JSONL line; the byte stream depends
/// only on the configuration and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub schema: String,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub board_edges: usize,
    pub bias_a: usize,
    pub bias_b: usize,
    pub convention: String,
    pub target: String,
    pub maker: StrategyInfo,
    pub breaker: StrategyInfo,
    pub first_player: String,
    /// Role label of the winner; `None` only when the trial itself failed.
    pub winner: Option<String>,
    pub reason: String,
    pub move_count: usize,
    pub detail: Option<String>,
    /// Kept out of the JSONL stream so that reruns are byte-identical;
    /// written to a separate timings file instead.
    #[serde(skip)]
    pub wall_time_ms: f64,
}

impl TrialRecord {
    /// Whether Maker (or Avoider) won.
    pub fn maker_won(&self) -> bool {
        matches!(self.winner.as_deref(), Some("maker" | "avoider"))
    }

    pub fn is_forfeit(&self) -> bool {
        self.reason == "forfeit"
    }
}

pub fn write_jsonl<W: Write, T: Serialize>(mut w: W, items: &[T]) -> io::Result<()> {
    for it in items {
        serde_json::to_writer(&mut w, it)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn read_jsonl<R: BufRead, T: for<'de> Deserialize<'de>>(r: R) -> io::Result<Vec<T>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", i + 1)))?;
        out.push(v);
    }
    Ok(out)
}

pub fn trials_to_jsonl(records: &[TrialRecord]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, records).expect("writing to memory");
    buf
}

/// One CSV row per game setting (everything but the seed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub p: f64,
    pub convention: String,
    pub target: String,
    pub maker: String,
    pub breaker: String,
    pub a: usize,
    pub b: usize,
    pub trials: usize,
    pub maker_wins: usize,
    pub breaker_wins: usize,
    pub forfeits: usize,
    pub failed: usize,
    pub maker_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_moves: f64,
}

pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    for r in records {
        let idx = rows.iter().position(|s| {
            s.n == r.n
                && s.p == r.p
                && s.a == r.bias_a
                && s.b == r.bias_b
                && s.convention == r.convention
                && s.target == r.target
                && s.maker == r.maker.name
                && s.breaker == r.breaker.name
        });
        let idx = idx.unwrap_or_else(|| {
            rows.push(SummaryRow {
                n: r.n,
                p: r.p,
                convention: r.convention.clone(),
                target: r.target.clone(),
                maker: r.maker.name.clone(),
                breaker: r.breaker.name.clone(),
                a: r.bias_a,
                b: r.bias_b,
                trials: 0,
                maker_wins: 0,
                breaker_wins: 0,
                forfeits: 0,
                failed: 0,
                maker_rate: 0.0,
                ci_low: 0.0,
                ci_high: 0.0,
                mean_moves: 0.0,
            });
            rows.len() - 1
        });
        let s = &mut rows[idx];
        s.trials += 1;
        match (&r.winner, r.maker_won()) {
            (None, _) => s.failed += 1,
            (Some(_), true) => s.maker_wins += 1,
            (Some(_), false) => s.breaker_wins += 1,
        }
        s.forfeits += usize::from(r.is_forfeit());
        s.mean_moves += r.move_count as f64;
    }
    for s in &mut rows {
        s.maker_rate = s.maker_wins as f64 / s.trials as f64;
        (s.ci_low, s.ci_high) = wilson(s.maker_wins, s.trials);
        s.mean_moves /= s.trials as f64;
    }
    rows
}

pub fn write_csv<W: Write, T: Serialize>(w: W, rows: &[T]) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct TimingRow {
    seed: u64,
    b: usize,
    wall_time_ms: f64,
}

pub fn write_timings<W: Write>(w: W, records: &[TrialRecord]) -> Result<(), csv::Error> {
    let rows: Vec<TimingRow> = records
        .iter()
        .map(|r| TimingRow { seed: r.seed, b: r.bias_b, wall_time_ms: r.wall_time_ms })
        .collect();
    write_csv(w, &rows)
}

/// Everything needed to rerun a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub seeds: Vec<u64>,
    pub versions: BTreeMap<String, String>,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, cfg: &Config, outputs: &[&str]) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("gnpgames".into(), env!("CARGO_PKG_VERSION").into());
        versions.insert("trial_schema".into(), TRIAL_SCHEMA.into());
        versions.insert("manifest_schema".into(), MANIFEST_SCHEMA.into());
        Manifest {
            schema: MANIFEST_SCHEMA.into(),
            command: command.into(),
            config: cfg.to_pairs(),
            seeds: cfg.seed_schedule(),
            versions,
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}
