//! Connectivity: components, cut vertices and k-vertex-connectivity via
//! unit-capacity vertex-split max-flow.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

/// Component label per vertex, labels `0..count` in order of first vertex.
pub fn components(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (count, label)
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || components(g).0 == 1
}

/// Cut vertices of `g` (iterative Hopcroft–Tarjan).
pub fn articulation_points(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v).nth(idx).expect("index in range");
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected, at least 3 vertices and no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && is_connected(g) && articulation_points(g).is_empty()
}

/// Residual network for vertex-disjoint path counting. Vertex `v` splits
/// into `2v` (in) and `2v+1` (out) joined by a unit arc.
struct SplitNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
    initial: Vec<i32>,
}

const NIL: usize = usize::MAX;
const INF: i32 = i32::MAX / 4;

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let nodes = 2 * g.n();
        let mut net = SplitNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            initial: Vec::new(),
        };
        for v in 0..g.n() {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for e in g.edges() {
            net.add_arc(2 * e.u() + 1, 2 * e.v(), INF);
            net.add_arc(2 * e.v() + 1, 2 * e.u(), INF);
        }
        net.initial = net.cap.clone();
        net
    }

    fn add_arc(&mut self, a: usize, b: usize, c: i32) {
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// Number of internally vertex-disjoint `s`–`t` paths, stopping at `limit`.
    fn disjoint_paths(&mut self, s: Vertex, t: Vertex, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.initial);
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        let mut pred = vec![NIL; self.head.len()];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = NIL);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                let mut a = self.head[x];
                while a != NIL {
                    let y = self.to[a];
                    if self.cap[a] > 0 && pred[y] == NIL && y != source {
                        pred[y] = a;
                        if y == sink {
                            reached = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                    a = self.next[a];
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut y = sink;
            while y != source {
                let a = pred[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Local vertex connectivity of non-adjacent `s`, `t`, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    SplitNetwork::new(g).disjoint_paths(s, t, limit)
}

/// True iff `g` has more than `k` vertices and no vertex cut of size below `k`.
/// `k = 0` is always satisfied.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let n = g.n();
    if n <= k || g.min_degree() < k || !is_connected(g) {
        return false;
    }
    if k == 1 {
        return true;
    }
    // A cut of size < k misses one of the first k+1 vertices; that vertex is
    // then separated from some non-neighbor.
    let mut net = SplitNetwork::new(g);
    for s in 0..=k {
        for t in 0..n {
            if t == s || g.has_edge(s, t) {
                continue;
            }
            if net.disjoint_paths(s, t, k) < k {
                return false;
            }
        }
    }
    true
}

/// Vertex connectivity of `g` (`n - 1` for complete graphs).
pub fn vertex_connectivity(g: &Graph) -> usize {
    let mut k = 0;
    while is_k_connected(g, k + 1) {
        k += 1;
    }
    k
}
