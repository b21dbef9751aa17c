//! Danger values for Maker's minimum-degree play.

use serde::{Deserialize, Serialize};

use crate::game::BoardState;
use crate::graph::Vertex;

/// Per-vertex danger `d_B(v) - 2b·d_M(v)`; a vertex is dangerous while
/// `d_M(v) < c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DangerView {
    pub b: usize,
    pub c: usize,
    pub danger: Vec<i64>,
    pub dangerous: Vec<bool>,
}

impl DangerView {
    /// Mean danger over `xs`; `None` for an empty set.
    pub fn avdan(&self, xs: &[Vertex]) -> Option<f64> {
        if xs.is_empty() {
            return None;
        }
        let s: i64 = xs.iter().map(|&v| self.danger[v]).sum();
        Some(s as f64 / xs.len() as f64)
    }

    /// Dangerous vertex of maximum danger, lowest id on ties.
    pub fn most_dangerous(&self) -> Option<Vertex> {
        let mut best: Option<Vertex> = None;
        for v in 0..self.danger.len() {
            if self.dangerous[v] && best.map_or(true, |w| self.danger[v] > self.danger[w]) {
                best = Some(v);
            }
        }
        best
    }
}

pub fn danger(d_breaker: usize, d_maker: usize, b: usize) -> i64 {
    d_breaker as i64 - 2 * b as i64 * d_maker as i64
}

/// Danger of every vertex in the current position.
pub fn danger_trace(state: &BoardState, b: usize, c: usize) -> DangerView {
    let n = state.board().n();
    DangerView {
        b,
        c,
        danger: (0..n).map(|v| danger(state.d_breaker(v), state.d_maker(v), b)).collect(),
        dangerous: (0..n).map(|v| state.d_maker(v) < c).collect(),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::game::{GameSpec, Role, Target};
    use crate::graph::Graph;

    #[test]
    fn examples() {
        assert_eq!(danger(7, 2, 1), 3);
        assert_eq!(danger(3, 1, 2), -1);
        let g = Arc::new(Graph::complete(5));
        let s = BoardState::new(GameSpec::maker_breaker(Target::MinDegree(1), 1, 2), g.clone()).unwrap();
        let d = danger_trace(&s, 2, 1);
        assert!(d.danger.iter().all(|&x| x == 0));
        assert_eq!(d.most_dangerous(), Some(0));

        let e = |u, v| g.edge_id(u, v).unwrap();
        let mut s = s;
        s.apply_claim(Role::Maker, &[e(0, 1)]).unwrap();
        s.apply_claim(Role::Breaker, &[e(2, 3), e(2, 4)]).unwrap();
        let d = danger_trace(&s, 2, 1);
        assert_eq!(d.danger, vec![-4, -4, 2, 1, 1]);
        assert_eq!(d.avdan(&[2, 3]), Some(1.5));
        assert_eq!(d.avdan(&[]), None);
        assert_eq!(d.most_dangerous(), Some(2));
    }
}
