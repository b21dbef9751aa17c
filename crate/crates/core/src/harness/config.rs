//! Flat `key=value` experiment configuration.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::game::{Convention, GameSpec, Role, Target};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key=value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}`: {msg}")]
    Value { key: String, msg: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoardKind {
    Gnp,
    Complete,
}

/// A resolved experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub n: usize,
    pub p: f64,
    pub board: BoardKind,
    pub convention: Convention,
    pub target: Target,
    pub a: usize,
    pub b: usize,
    pub first: Role,
    pub cutoff: bool,
    pub maker: String,
    pub breaker: String,
    pub maker_opts: BTreeMap<String, String>,
    pub breaker_opts: BTreeMap<String, String>,
    pub seed_start: u64,
    pub seeds: usize,
    /// Explicit seed list; overrides `seed_start`/`seeds`.
    pub seed_list: Option<Vec<u64>>,
    /// Worker threads; 0 means all cores.
    pub threads: usize,
    /// Breaker/Enforcer biases scanned by `bias-scan`.
    pub b_values: Vec<usize>,
    /// Pending `p = factor * ln n / n`; folded into `p` once `n` is known.
    pub p_factor: Option<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n: 20,
            p: 0.5,
            board: BoardKind::Gnp,
            convention: Convention::MakerBreaker,
            target: Target::Connectivity,
            a: 1,
            b: 1,
            first: Role::Maker,
            cutoff: true,
            maker: "random".into(),
            breaker: "random".into(),
            maker_opts: BTreeMap::new(),
            breaker_opts: BTreeMap::new(),
            seed_start: 0,
            seeds: 10,
            seed_list: None,
            threads: 0,
            b_values: vec![1],
            p_factor: None,
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    v.trim().parse::<T>().map_err(|e| ConfigError::Value {
        key: key.into(),
        msg: format!("cannot parse `{v}`: {e}"),
    })
}

fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| num(key, s)).collect()
}

/// `1,2,5` or `lo..hi` (inclusive) or `lo..hi:step`.
pub fn parse_b_range(v: &str) -> Result<Vec<usize>, ConfigError> {
    let key = "b_range";
    let out = if let Some((lo, rest)) = v.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((h, s)) => (h, num::<usize>(key, s)?),
            None => (rest, 1),
        };
        let (lo, hi) = (num::<usize>(key, lo)?, num::<usize>(key, hi)?);
        if step == 0 {
            return Err(ConfigError::Value { key: key.into(), msg: "step must be positive".into() });
        }
        (lo..=hi).step_by(step).collect()
    } else {
        list(key, v)?
    };
    if out.is_empty() || out.contains(&0) || out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ConfigError::Value {
            key: key.into(),
            msg: format!("`{v}` must be a nonempty ascending list of positive biases"),
        });
    }
    Ok(out)
}

impl Config {
    /// Parses a config file: one `key=value` per line, `#` comments.
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: raw.into(),
            })?;
            c.set(k.trim(), v.trim())?;
        }
        c.resolve()?;
        Ok(c)
    }

    /// Applies `key=value` overrides, then re-validates.
    pub fn with_overrides<'a, I>(mut self, overrides: I) -> Result<Config, ConfigError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        for o in overrides {
            let (k, v) = o.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: 0,
                text: o.into(),
            })?;
            self.set(k.trim(), v.trim())?;
        }
        self.resolve()?;
        Ok(self)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        let bad = |msg: String| ConfigError::Value { key: key.into(), msg };
        match key {
            "n" => self.n = num(key, v)?,
            "p" => {
                self.p = num(key, v)?;
                self.p_factor = None;
            }
            "p_factor" => self.p_factor = Some(num(key, v)?),
            "board" => {
                self.board = match v {
                    "gnp" => BoardKind::Gnp,
                    "complete" => BoardKind::Complete,
                    _ => return Err(bad(format!("expected gnp|complete, got `{v}`"))),
                }
            }
            "convention" => {
                self.convention = match v {
                    "mb" | "maker-breaker" => Convention::MakerBreaker,
                    "ae" | "avoider-enforcer" => Convention::AvoiderEnforcerMonotone,
                    _ => return Err(bad(format!("expected mb|ae, got `{v}`"))),
                }
            }
            "target" => self.target = v.parse().map_err(bad)?,
            "a" => self.a = num(key, v)?,
            "b" => self.b = num(key, v)?,
            "first" => self.first = Role::from_label(v).ok_or_else(|| bad(format!("unknown role `{v}`")))?,
            "cutoff" => self.cutoff = num(key, v)?,
            "maker" | "avoider" => self.maker = v.into(),
            "breaker" | "enforcer" => self.breaker = v.into(),
            "seed_start" => self.seed_start = num(key, v)?,
            "seeds" => self.seeds = num(key, v)?,
            "seed_list" => self.seed_list = Some(list(key, v)?),
            "threads" => self.threads = num(key, v)?,
            "b_range" => self.b_values = parse_b_range(v)?,
            _ => {
                let (side, opt) = key.split_once('.').ok_or_else(|| ConfigError::UnknownKey(key.into()))?;
                match side {
                    "maker" | "avoider" => self.maker_opts.insert(opt.into(), v.into()),
                    "breaker" | "enforcer" => self.breaker_opts.insert(opt.into(), v.into()),
                    _ => return Err(ConfigError::UnknownKey(key.into())),
                };
            }
        }
        Ok(())
    }

    fn resolve(&mut self) -> Result<(), ConfigError> {
        if let Some(f) = self.p_factor.take() {
            self.p = f * (self.n.max(2) as f64).ln() / self.n as f64;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::Invalid("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) || self.p.is_nan() {
            return Err(ConfigError::Invalid(format!("p must lie in [0,1], got {}", self.p)));
        }
        if self.a == 0 || self.b == 0 {
            return Err(ConfigError::Invalid("biases a and b must be at least 1".into()));
        }
        Ok(())
    }

    /// The seed schedule.
    pub fn seed_schedule(&self) -> Vec<u64> {
        match &self.seed_list {
            Some(s) => s.clone(),
            None => (0..self.seeds as u64).map(|i| self.seed_start + i).collect(),
        }
    }

    pub fn spec(&self) -> GameSpec {
        GameSpec::new(self.convention, self.target.clone(), self.a, self.b)
            .with_first(self.first)
            .with_cutoff(self.cutoff)
    }

    /// The resolved configuration as `key=value` pairs (re-parseable).
    pub fn to_pairs(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("n", self.n.to_string());
        put("p", format!("{:?}", self.p));
        put("board", match self.board {
            BoardKind::Gnp => "gnp".into(),
            BoardKind::Complete => "complete".into(),
        });
        put("convention", self.convention.to_string());
        put("target", self.target.to_string());
        put("a", self.a.to_string());
        put("b", self.b.to_string());
        put("first", self.first.label(Convention::MakerBreaker).into());
        put("cutoff", self.cutoff.to_string());
        put("maker", self.maker.clone());
        put("breaker", self.breaker.clone());
        for (k, v) in &self.maker_opts {
            put(&format!("maker.{k}"), v.clone());
        }
        for (k, v) in &self.breaker_opts {
            put(&format!("breaker.{k}"), v.clone());
        }
        put("seed_start", self.seed_start.to_string());
        put("seeds", self.seeds.to_string());
        if let Some(s) = &self.seed_list {
            put("seed_list", s.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        }
        put("threads", self.threads.to_string());
        put("b_range", self.b_values.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
        m
    }

    pub fn to_text(&self) -> String {
        self.to_pairs().into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}
