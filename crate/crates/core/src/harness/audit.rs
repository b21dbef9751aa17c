//! Seeded batches of random-graph property audits.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::props::{audit_gnp_properties, AuditKnobs, AuditReport};
use crate::rng::{derive_seed, tags};

use super::config::{BoardKind, Config};
use super::trials::{board_for, with_threads};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeededAudit {
    pub seed: u64,
    pub report: AuditReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditTally {
    pub name: String,
    pub passed: usize,
    pub total: usize,
}

/// Audits the G(n,p) board of every seed in the schedule.
pub fn run_audit_batch(cfg: &Config, base: &AuditKnobs) -> Result<Vec<SeededAudit>, String> {
    if cfg.board != BoardKind::Gnp {
        return Err("audit needs board=gnp".into());
    }
    let seeds = cfg.seed_schedule();
    with_threads(cfg.threads, || {
        seeds
            .par_iter()
            .map(|&seed| {
                let g = board_for(cfg, seed)?;
                let knobs = AuditKnobs { seed: derive_seed(seed, tags::AUDIT), ..base.clone() };
                Ok(SeededAudit { seed, report: audit_gnp_properties(&g, cfg.p, &knobs) })
            })
            .collect()
    })
}

/// Per-property pass counts, in report order.
pub fn tally(batch: &[SeededAudit]) -> Vec<AuditTally> {
    let mut out: Vec<AuditTally> = Vec::new();
    for a in batch {
        for r in &a.report.records {
            match out.iter_mut().find(|t| t.name == r.name) {
                Some(t) => {
                    t.total += 1;
                    t.passed += usize::from(r.passed);
                }
                None => out.push(AuditTally { name: r.name.clone(), passed: usize::from(r.passed), total: 1 }),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batch_is_deterministic() {
        let cfg = Config { n: 40, p: 0.4, seeds: 2, ..Config::default() };
        let knobs = AuditKnobs { samples_per_bucket: 50, ..AuditKnobs::default() };
        let a = run_audit_batch(&cfg, &knobs).unwrap();
        let b = run_audit_batch(&Config { threads: 1, ..cfg.clone() }, &knobs).unwrap();
        assert_eq!(a, b);
        let t = tally(&a);
        assert!(t.iter().all(|t| t.total == 2));
        assert!(run_audit_batch(&Config { board: BoardKind::Complete, ..cfg }, &knobs).is_err());
    }
}
