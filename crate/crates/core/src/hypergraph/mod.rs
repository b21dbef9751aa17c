//! Hypergraphs over an abstract ground set `0..m`, the two winning criteria
//! and the potential strategies they induce.

pub mod potential;

use std::fmt::Write as _;

use thiserror::Error;

pub use potential::{
    avoider_criterion, beck_criterion, AvoiderPotential, BreakerPotential, Criterion,
    PotentialTracker,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypergraphError {
    #[error("element {element} outside ground set of size {ground}")]
    ElementOutOfRange { element: usize, ground: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A family of target sets over elements `0..ground`. Each set is sorted and
/// duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    ground: usize,
    sets: Vec<Vec<usize>>,
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut clean = Vec::with_capacity(sets.len());
        for mut s in sets {
            if let Some(&x) = s.iter().find(|&&x| x >= ground) {
                return Err(HypergraphError::ElementOutOfRange { element: x, ground });
            }
            s.sort_unstable();
            s.dedup();
            clean.push(s);
        }
        Ok(Self::from_clean(ground, clean))
    }

    fn from_clean(ground: usize, sets: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); ground];
        for (i, s) in sets.iter().enumerate() {
            for &x in s {
                incidence[x].push(i as u32);
            }
        }
        Hypergraph {
            ground,
            sets,
            incidence,
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Indices of the sets containing `x`.
    pub fn sets_containing(&self, x: usize) -> &[u32] {
        &self.incidence[x]
    }

    /// Drops duplicate sets and every set that contains another one. The
    /// outcome of any game on the family is unchanged. Remaining sets keep
    /// their relative order.
    pub fn normalized(&self) -> Hypergraph {
        let mut order: Vec<usize> = (0..self.sets.len()).collect();
        order.sort_by_key(|&i| (self.sets[i].len(), i));
        let mut keep = vec![false; self.sets.len()];
        let mut kept: Vec<usize> = Vec::new();
        for &i in &order {
            let s = &self.sets[i];
            let covered = kept.iter().any(|&j| is_subset(&self.sets[j], s));
            if !covered {
                keep[i] = true;
                kept.push(i);
            }
        }
        let sets = (0..self.sets.len())
            .filter(|&i| keep[i])
            .map(|i| self.sets[i].clone())
            .collect();
        Self::from_clean(self.ground, sets)
    }

    /// `elements <m>` then one set per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("elements {}\n", self.ground);
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses [`Hypergraph::to_text`] output. Blank lines and `#` comments
    /// are ignored.
    pub fn from_text(text: &str) -> Result<Self, HypergraphError> {
        let mut ground = None;
        let mut sets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| HypergraphError::Parse { line: i + 1, msg };
            match ground {
                None => {
                    let mut it = line.split_whitespace();
                    if it.next() != Some("elements") {
                        return Err(parse_err("expected header `elements <m>`".into()));
                    }
                    let m = it
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| parse_err("bad element count".into()))?;
                    ground = Some(m);
                }
                Some(_) => {
                    let set = line
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|e| parse_err(format!("{t}: {e}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    sets.push(set);
                }
            }
        }
        let ground = ground.ok_or(HypergraphError::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        Hypergraph::new(ground, sets)
    }
}

/// `a ⊆ b` for sorted slices.
fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
