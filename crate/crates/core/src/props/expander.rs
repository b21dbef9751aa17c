//! Vertex expansion: exact (R,c)-expander check by pruned subset
//! enumeration, and a greedy violator search for graphs too large for it.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::props::PropError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpanderWitness {
    pub holds: bool,
    /// A set U with |U| ≤ R and |N(U)| < c|U| when `holds` is false.
    pub violating_set: Option<Vec<Vertex>>,
}

impl ExpanderWitness {
    fn ok() -> Self {
        ExpanderWitness {
            holds: true,
            violating_set: None,
        }
    }

    fn violated(set: Vec<Vertex>) -> Self {
        ExpanderWitness {
            holds: false,
            violating_set: Some(set),
        }
    }
}

/// Incrementally maintained external neighborhood of a growing set.
pub(crate) struct Frontier<'a> {
    g: &'a Graph,
    cnt: Vec<u32>,
    in_set: Vec<bool>,
    pub members: Vec<Vertex>,
    pub size: usize,
}

impl<'a> Frontier<'a> {
    pub fn new(g: &'a Graph) -> Self {
        Frontier {
            g,
            cnt: vec![0; g.n()],
            in_set: vec![false; g.n()],
            members: Vec::new(),
            size: 0,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.in_set[v]
    }

    pub fn in_boundary(&self, v: Vertex) -> bool {
        !self.in_set[v] && self.cnt[v] > 0
    }

    /// |N(U ∪ {v})| − |N(U)| without modifying the set.
    pub fn gain(&self, v: Vertex) -> isize {
        let mut d = if self.cnt[v] > 0 { -1 } else { 0 };
        for w in self.g.neighbors(v) {
            if self.cnt[w] == 0 && !self.in_set[w] {
                d += 1;
            }
        }
        d
    }

    pub fn push(&mut self, v: Vertex) {
        if self.cnt[v] > 0 {
            self.size -= 1;
        }
        self.in_set[v] = true;
        for w in self.g.neighbors(v) {
            if self.cnt[w] == 0 && !self.in_set[w] {
                self.size += 1;
            }
            self.cnt[w] += 1;
        }
        self.members.push(v);
    }

    pub fn pop(&mut self) {
        let v = self.members.pop().expect("nonempty");
        for w in self.g.neighbors(v) {
            self.cnt[w] -= 1;
            if self.cnt[w] == 0 && !self.in_set[w] {
                self.size -= 1;
            }
        }
        self.in_set[v] = false;
        if self.cnt[v] > 0 {
            self.size += 1;
        }
    }

    pub fn boundary(&self) -> Vec<Vertex> {
        (0..self.g.n()).filter(|&v| self.in_boundary(v)).collect()
    }
}

fn violates(size: usize, members: usize, c: f64) -> bool {
    (size as f64) < c * members as f64
}

/// Exhaustive (R,c)-expander check: every U with 1 ≤ |U| ≤ R has
/// |N(U)| ≥ c|U|. Sets are enumerated in lexicographic depth-first order
/// with the bound |N(U ∪ X)| ≥ |N(U)| − |X|.
pub fn is_expander(g: &Graph, r: usize, c: f64) -> Result<ExpanderWitness, PropError> {
    check_args(g, r, c)?;
    let mut f = Frontier::new(g);
    let found = enumerate(&mut f, 0, r, c);
    Ok(match found {
        Some(set) => ExpanderWitness::violated(set),
        None => ExpanderWitness::ok(),
    })
}

fn check_args(g: &Graph, r: usize, c: f64) -> Result<(), PropError> {
    if r == 0 || !(c > 0.0) {
        return Err(PropError::Parameter(format!(
            "expander parameters need R >= 1 and c > 0 (got R={r}, c={c})"
        )));
    }
    if r > g.n() {
        return Err(PropError::Parameter(format!(
            "expander radius R={r} exceeds n={}",
            g.n()
        )));
    }
    Ok(())
}

fn enumerate(f: &mut Frontier, from: usize, r: usize, c: f64) -> Option<Vec<Vertex>> {
    let n = f.g.n();
    for v in from..n {
        f.push(v);
        let s = f.members.len();
        if violates(f.size, s, c) {
            let mut set = f.members.clone();
            set.sort_unstable();
            f.pop();
            return Some(set);
        }
        let can_fail_later = ((f.size + s) as f64) < (c + 1.0) * r as f64;
        if s < r && can_fail_later {
            if let Some(set) = enumerate(f, v + 1, r, c) {
                f.pop();
                return Some(set);
            }
        }
        f.pop();
    }
    None
}

/// Greedy search for a set U with `lo ≤ |U| ≤ hi` and |N(U)| < c|U|.
///
/// From each of the `starts` lowest-degree vertices, repeatedly adds the
/// vertex of the current boundary whose addition grows N(U) least. Finding
/// nothing proves nothing.
pub fn find_violator_greedy(
    g: &Graph,
    lo: usize,
    hi: usize,
    c: f64,
    starts: usize,
) -> Option<Vec<Vertex>> {
    let n = g.n();
    let hi = hi.min(n);
    if lo > hi || n == 0 {
        return None;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut f = Frontier::new(g);
    for &s in order.iter().take(starts.max(1)) {
        f.push(s);
        loop {
            let m = f.members.len();
            if m >= lo.max(1) && violates(f.size, m, c) {
                let mut set = f.members.clone();
                set.sort_unstable();
                return Some(set);
            }
            if m >= hi {
                break;
            }
            // Candidates: boundary vertices, or any outside vertex if the
            // boundary is empty.
            let mut best: Option<(isize, Vertex)> = None;
            let boundary = f.boundary();
            let pool: Vec<Vertex> = if boundary.is_empty() {
                (0..n).filter(|&v| !f.contains(v)).collect()
            } else {
                boundary
            };
            for v in pool {
                let gain = f.gain(v);
                if best.map_or(true, |(bg, _)| gain < bg) {
                    best = Some((gain, v));
                }
            }
            match best {
                Some((_, v)) => f.push(v),
                None => break,
            }
        }
        while !f.members.is_empty() {
            f.pop();
        }
    }
    None
}

/// Re-checks a violating set directly.
pub fn is_violating(g: &Graph, set: &[Vertex], r: usize, c: f64) -> bool {
    !set.is_empty()
        && set.len() <= r
        && g
            .external_neighborhood(set)
            .map(|nb| violates(nb.len(), set.len(), c))
            .unwrap_or(false)
}
