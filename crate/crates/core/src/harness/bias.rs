//! Bias scans and the empirical critical bias.

use serde::{Deserialize, Serialize};

use super::config::Config;
use super::records::TrialRecord;
use super::trials::run_trials;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `wins` successes out of `n` at 95%.
pub fn wilson(wins: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let phat = wins as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub b: usize,
    pub trials: usize,
    /// Wins of the first side (Maker or Avoider).
    pub wins: usize,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasEstimate {
    pub label: String,
    pub n: usize,
    pub p: f64,
    pub game: String,
    pub maker: String,
    pub breaker: String,
    pub trials_per_b: Vec<usize>,
    pub curve: Vec<CurvePoint>,
    /// Smallest scanned b whose first-side win rate is below 1/2 with a
    /// Wilson interval entirely below 1/2.
    pub b_star: Option<usize>,
    /// `b_star * ln n / (n p)`.
    pub ratio: Option<f64>,
    /// Wilson interval of the win rate at `b_star`.
    pub b_star_ci: Option<(f64, f64)>,
    /// The scan never crossed 1/2.
    pub censored: bool,
}

/// Recomputes the estimate from persisted records (any order).
pub fn estimate_critical_bias(records: &[TrialRecord]) -> Option<BiasEstimate> {
    let first = records.first()?;
    let mut bs: Vec<usize> = records.iter().map(|r| r.bias_b).collect();
    bs.sort_unstable();
    bs.dedup();
    let curve: Vec<CurvePoint> = bs
        .iter()
        .map(|&b| {
            let at: Vec<&TrialRecord> = records.iter().filter(|r| r.bias_b == b).collect();
            let wins = at.iter().filter(|r| r.maker_won()).count();
            let (lo, hi) = wilson(wins, at.len());
            CurvePoint {
                b,
                trials: at.len(),
                wins,
                rate: wins as f64 / at.len() as f64,
                ci_low: lo,
                ci_high: hi,
            }
        })
        .collect();
    let hit = curve.iter().find(|c| c.rate < 0.5 && c.ci_high < 0.5);
    let b_star = hit.map(|c| c.b);
    let (n, p) = (first.n, first.p);
    let ratio = b_star.map(|b| b as f64 * (n as f64).ln() / (n as f64 * p));
    Some(BiasEstimate {
        label: format!(
            "empirical critical bias against strategy pair ({},{})",
            first.maker.name, first.breaker.name
        ),
        n,
        p,
        game: format!("{} {} a={}", first.convention, first.target, first.bias_a),
        maker: first.maker.name.clone(),
        breaker: first.breaker.name.clone(),
        trials_per_b: curve.iter().map(|c| c.trials).collect(),
        b_star,
        ratio,
        b_star_ci: hit.map(|c| (c.ci_low, c.ci_high)),
        censored: b_star.is_none(),
        curve,
    })
}

/// Runs the seed schedule at every `b` in `cfg.b_values`. Records are
/// ordered by b, then by seed.
pub fn bias_scan(cfg: &Config) -> (Vec<TrialRecord>, Option<BiasEstimate>) {
    let mut all = Vec::new();
    for &b in &cfg.b_values {
        let mut c = cfg.clone();
        c.b = b;
        all.extend(run_trials(&c));
    }
    let est = estimate_critical_bias(&all);
    (all, est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::records::{read_jsonl, trials_to_jsonl};

    #[test]
    fn wilson_matches_closed_form() {
        // 0 of 10: upper = z^2/(n+z^2).
        let (lo, hi) = wilson(0, 10);
        assert_eq!(lo, 0.0);
        assert!((hi - Z95 * Z95 / (10.0 + Z95 * Z95)).abs() < 1e-12);
        let (lo, hi) = wilson(50, 100);
        assert!((lo + hi - 1.0).abs() < 1e-12);
        assert!((hi - 0.5967).abs() < 1e-3);
    }

    #[test]
    fn scan_is_recomputable_and_can_censor() {
        let mut cfg = Config {
            n: 12,
            p: 0.5,
            seeds: 8,
            b_values: vec![1, 3, 6],
            ..Config::default()
        };
        let (recs, est) = bias_scan(&cfg);
        let est = est.unwrap();
        assert_eq!(est.trials_per_b, vec![8, 8, 8]);
        let back: Vec<TrialRecord> = read_jsonl(&trials_to_jsonl(&recs)[..]).unwrap();
        assert_eq!(estimate_critical_bias(&back).unwrap(), est);
        assert!(est.label.starts_with("empirical critical bias against strategy pair (random,random)"));

        cfg.b_values = vec![1];
        cfg.p = 1.0;
        cfg.maker = "lowest".into();
        let (_, est) = bias_scan(&cfg);
        let est = est.unwrap();
        if est.b_star.is_none() {
            assert!(est.censored && est.ratio.is_none());
        }
    }
}
