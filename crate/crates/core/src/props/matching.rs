//! Maximum matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

const NONE: usize = usize::MAX;

/// A maximum matching as `mate[v]` (`usize::MAX` when unmatched).
pub fn maximum_matching(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // Greedy start.
    for e in g.edges() {
        if mate[e.u()] == NONE && mate[e.v()] == NONE {
            mate[e.u()] = e.v();
            mate[e.v()] = e.u();
        }
    }
    let mut b = Blossom::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = b.find_path(g, &mate, root) {
                // Augment along parent/mate pointers.
                let mut v = end;
                while v != NONE {
                    let pv = b.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    mate
}

pub fn matching_size(mate: &[usize]) -> usize {
    mate.iter().filter(|&&m| m != NONE).count() / 2
}

/// A matching of size ⌊n/2⌋ exists.
pub fn has_perfect_matching(g: &Graph) -> bool {
    if g.n() % 2 == 0 && g.min_degree() == 0 && g.n() > 0 {
        return false;
    }
    matching_size(&maximum_matching(g)) == g.n() / 2
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS from `root` over alternating paths; returns the free endpoint of an
    /// augmenting path.
    fn find_path(&mut self, g: &Graph, mate: &[usize], root: Vertex) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}
