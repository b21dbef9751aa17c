//! Strategy lookup by name, for the command line and trial records.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{GameSpec, GreedyLowest, RandomStrategy, Strategy};
use crate::hypergraph::{AvoiderPotential, BreakerPotential};

use super::{
    avoider_isolator, breaker_isolator, enforcer_forcer, maker_hamiltonicity_pipeline, maker_min_degree,
    PipelineParams,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegistryError {
    #[error("unknown strategy `{0}` (known: {known})", known = strategy_names().join(", "))]
    Unknown(String),
    #[error("strategy `{name}`: option `{key}`: {msg}")]
    Option { name: String, key: String, msg: String },
    #[error("strategy `{name}`: unused options {keys:?}")]
    Unused { name: String, keys: Vec<String> },
}

pub fn strategy_names() -> Vec<&'static str> {
    vec![
        "random",
        "lowest",
        "breaker-potential",
        "avoider-potential",
        "breaker-isolator",
        "maker-min-degree",
        "maker-ham-pipeline",
        "maker-kconn-pipeline",
        "avoider-isolator",
        "enforcer-forcer",
    ]
}

struct Opts<'a> {
    name: &'a str,
    map: BTreeMap<String, String>,
}

impl Opts<'_> {
    fn get<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, RegistryError>
    where
        T::Err: std::fmt::Display,
    {
        match self.map.remove(key) {
            None => Ok(None),
            Some(v) => v.parse::<T>().map(Some).map_err(|e| RegistryError::Option {
                name: self.name.into(),
                key: key.into(),
                msg: format!("cannot parse `{v}`: {e}"),
            }),
        }
    }

    fn or<T: FromStr>(&mut self, key: &str, default: T) -> Result<T, RegistryError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn finish(self) -> Result<(), RegistryError> {
        if self.map.is_empty() {
            Ok(())
        } else {
            Err(RegistryError::Unused {
                name: self.name.into(),
                keys: self.map.into_keys().collect(),
            })
        }
    }
}

/// Builds a strategy from its name and string options. Biases default to
/// the game's (`b` = Breaker/Enforcer bias, `a` = Maker/Avoider bias);
/// graph-size dependent defaults resolve when the game starts.
pub fn build_strategy(
    name: &str,
    options: &BTreeMap<String, String>,
    spec: &GameSpec,
) -> Result<Box<dyn Strategy>, RegistryError> {
    let mut o = Opts {
        name,
        map: options.clone(),
    };
    let (a, b) = (spec.bias_a, spec.bias_b);
    let s: Box<dyn Strategy> = match name {
        "random" => Box::new(RandomStrategy),
        "lowest" => Box::new(GreedyLowest),
        "breaker-potential" => Box::new(BreakerPotential::new(o.or("a", a)?, o.or("b", b)?)),
        "avoider-potential" => Box::new(AvoiderPotential::new(o.or("a", a)?)),
        "breaker-isolator" => Box::new(breaker_isolator(o.or("b", b)?, o.or("eps", 0.5)?, o.get("c_target")?)),
        "maker-min-degree" => Box::new(maker_min_degree(o.or("c", 1)?, o.or("b", b)?, o.or("eps", 0.5)?)),
        "maker-ham-pipeline" | "maker-kconn-pipeline" => {
            let mut p = if name == "maker-kconn-pipeline" {
                PipelineParams::k_connectivity(o.or("b", b)?, o.or("k", 2)?)
            } else {
                PipelineParams::hamiltonicity(o.or("b", b)?)
            };
            p.c = o.get("c")?;
            p.r1 = o.get("r1")?;
            p.r2 = o.get("r2")?;
            p.exact_expander_limit = o.or("exact_expander_limit", p.exact_expander_limit)?;
            p.exact_booster_limit = o.or("exact_booster_limit", p.exact_booster_limit)?;
            p.greedy_starts = o.or("greedy_starts", p.greedy_starts)?;
            Box::new(maker_hamiltonicity_pipeline(p))
        }
        "avoider-isolator" => Box::new(avoider_isolator(o.or("b", b)?)),
        "enforcer-forcer" => Box::new(enforcer_forcer(o.or("d", 1)?, o.or("k1", 1)?, o.or("k2", 1)?, o.or("b", b)?)),
        _ => return Err(RegistryError::Unknown(name.into())),
    };
    o.finish()?;
    Ok(s)
}
