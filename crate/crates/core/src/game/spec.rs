//! Game parameters: convention, target property, biases, first player.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;

/// The two sides. `Maker` is also the Avoider and `Breaker` the Enforcer;
/// `Maker` always has bias `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Maker,
    Breaker,
}

impl Role {
    pub const AVOIDER: Role = Role::Maker;
    pub const ENFORCER: Role = Role::Breaker;

    pub fn other(self) -> Role {
        match self {
            Role::Maker => Role::Breaker,
            Role::Breaker => Role::Maker,
        }
    }

    /// Convention-specific name: maker/breaker or avoider/enforcer.
    pub fn label(self, convention: Convention) -> &'static str {
        match (convention, self) {
            (Convention::MakerBreaker, Role::Maker) => "maker",
            (Convention::MakerBreaker, Role::Breaker) => "breaker",
            (Convention::AvoiderEnforcerMonotone, Role::Maker) => "avoider",
            (Convention::AvoiderEnforcerMonotone, Role::Breaker) => "enforcer",
        }
    }

    pub fn from_label(s: &str) -> Option<Role> {
        match s {
            "maker" | "avoider" => Some(Role::Maker),
            "breaker" | "enforcer" => Some(Role::Breaker),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// Exact biases; Maker wins by claiming a target set.
    #[serde(rename = "mb")]
    MakerBreaker,
    /// At-least biases; Avoider loses by claiming a target set.
    #[serde(rename = "ae")]
    AvoiderEnforcerMonotone,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::MakerBreaker => "mb",
            Convention::AvoiderEnforcerMonotone => "ae",
        })
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mb" | "maker-breaker" => Ok(Convention::MakerBreaker),
            "ae" | "avoider-enforcer" => Ok(Convention::AvoiderEnforcerMonotone),
            _ => Err(format!("unknown convention `{s}` (expected mb or ae)")),
        }
    }
}

/// Monotone increasing graph properties. The property is always evaluated
/// on the Maker/Avoider graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Connectivity,
    PerfectMatching,
    Hamiltonicity,
    KConnectivity(usize),
    MinDegree(usize),
    /// Minimum degree at least 1. Breaker (MB) wins, and Avoider (AE) wins,
    /// exactly when some vertex is isolated in the Maker/Avoider graph.
    IsolateVertex,
    /// Explicit target sets over edge ids.
    ExplicitHypergraph(Arc<Hypergraph>),
}

impl Target {
    /// Degree every vertex needs in a graph with the property.
    pub fn degree_need(&self, n: usize) -> usize {
        match self {
            Target::Connectivity => usize::from(n >= 2),
            // For odd n a matching of size ⌊n/2⌋ may leave one vertex bare.
            Target::PerfectMatching => usize::from(n >= 2 && n % 2 == 0),
            Target::Hamiltonicity => 2,
            Target::KConnectivity(k) => *k,
            Target::MinDegree(c) => *c,
            Target::IsolateVertex => 1,
            Target::ExplicitHypergraph(_) => 0,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Connectivity => f.write_str("connectivity"),
            Target::PerfectMatching => f.write_str("perfect-matching"),
            Target::Hamiltonicity => f.write_str("hamiltonicity"),
            Target::KConnectivity(k) => write!(f, "k-connectivity:{k}"),
            Target::MinDegree(c) => write!(f, "min-degree:{c}"),
            Target::IsolateVertex => f.write_str("isolate-vertex"),
            Target::ExplicitHypergraph(h) => write!(f, "hypergraph:{}x{}", h.ground(), h.len()),
        }
    }
}

impl FromStr for Target {
    type Err = String;
    /// Parses every form except `hypergraph`, which needs the family itself.
    fn from_str(s: &str) -> Result<Self, String> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<usize, String> {
            a.ok_or_else(|| format!("target `{head}` needs a parameter, e.g. `{head}:2`"))?
                .parse::<usize>()
                .map_err(|e| format!("target `{s}`: {e}"))
        };
        match head {
            "connectivity" => Ok(Target::Connectivity),
            "perfect-matching" => Ok(Target::PerfectMatching),
            "hamiltonicity" => Ok(Target::Hamiltonicity),
            "k-connectivity" => Ok(Target::KConnectivity(num(arg)?)),
            "min-degree" => Ok(Target::MinDegree(num(arg)?)),
            "isolate-vertex" => Ok(Target::IsolateVertex),
            _ => Err(format!("unknown target `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    pub convention: Convention,
    pub target: Target,
    pub bias_a: usize,
    pub bias_b: usize,
    pub first_player: Role,
    /// Decide the game as soon as the Maker/Avoider graph together with the
    /// free edges can no longer have the property.
    pub early_cutoff: bool,
}

impl GameSpec {
    pub fn new(convention: Convention, target: Target, bias_a: usize, bias_b: usize) -> Self {
        GameSpec {
            convention,
            target,
            bias_a,
            bias_b,
            first_player: Role::Maker,
            early_cutoff: true,
        }
    }

    pub fn maker_breaker(target: Target, a: usize, b: usize) -> Self {
        Self::new(Convention::MakerBreaker, target, a, b)
    }

    pub fn avoider_enforcer(target: Target, a: usize, b: usize) -> Self {
        Self::new(Convention::AvoiderEnforcerMonotone, target, a, b)
    }

    pub fn with_first(mut self, first: Role) -> Self {
        self.first_player = first;
        self
    }

    pub fn with_cutoff(mut self, on: bool) -> Self {
        self.early_cutoff = on;
        self
    }

    pub fn bias(&self, role: Role) -> usize {
        match role {
            Role::Maker => self.bias_a,
            Role::Breaker => self.bias_b,
        }
    }

    pub fn label(&self, role: Role) -> &'static str {
        role.label(self.convention)
    }
}
