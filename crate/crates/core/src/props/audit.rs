//! Audit of the typical-G(n,p) properties P1–P9, the half-neighborhood edge
//! bound, the harmonic degree sum and the small-set sparsity claim.
//!
//! Each record states how it was checked:
//!
//! * `exhaustive` – every set in the range was covered, either directly or by
//!   a certificate (degree sums, a max-density flow) that bounds all sets;
//! * `sampled` – uniformly random sets per size bucket, seeded;
//! * `vacuous` – the range or parameter constraint is empty at this n.
//!
//! Sampled records never claim more than they saw.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample as sample_index;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::props::flow::max_density_excess;
use crate::rng::{derive_seed, stream, tags, GameRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Sampled,
    Vacuous,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Sampled => "sampled",
            Method::Vacuous => "vacuous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum Witness {
    Vertex(Vertex),
    Set(Vec<Vertex>),
    Pair(Vec<Vertex>, Vec<Vertex>),
    Ordering(Vec<Vertex>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[Vertex]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Witness::Vertex(v) => write!(f, "vertex:{v}"),
            Witness::Set(s) => write!(f, "set:{}", join(s)),
            Witness::Pair(a, b) => write!(f, "pair:{}|{}", join(a), join(b)),
            Witness::Ordering(s) => write!(f, "ordering:{}", join(s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub name: String,
    pub method: Method,
    pub passed: bool,
    pub params: BTreeMap<String, f64>,
    /// Sets examined directly (0 for certificate-only checks).
    pub examined: u64,
    pub witness: Option<Witness>,
    /// Observed statistic where one is meaningful (e.g. HarmonicDeg ratio).
    pub statistic: Option<f64>,
    pub note: String,
}

impl PropertyRecord {
    fn new(name: &str) -> Self {
        PropertyRecord {
            name: name.to_string(),
            method: Method::Exhaustive,
            passed: true,
            params: BTreeMap::new(),
            examined: 0,
            witness: None,
            statistic: None,
            note: String::new(),
        }
    }

    fn param(mut self, k: &str, v: f64) -> Self {
        self.params.insert(k.to_string(), v);
        self
    }

    fn vacuous(mut self, why: &str) -> Self {
        self.method = Method::Vacuous;
        self.passed = true;
        self.note = why.to_string();
        self
    }

    fn fail(&mut self, w: Witness) {
        if self.passed {
            self.passed = false;
            self.witness = Some(w);
        }
    }

    /// `name method pass|fail witness|- key=value... [note]`
    pub fn to_line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!(
            "{} {} {} {} examined={}",
            self.name,
            self.method,
            if self.passed { "pass" } else { "fail" },
            self.witness.as_ref().map_or("-".to_string(), |w| w.to_string()),
            self.examined
        );
        if let Some(s) = self.statistic {
            line.push_str(&format!(" statistic={s}"));
        }
        if !params.is_empty() {
            line.push(' ');
            line.push_str(&params.join(" "));
        }
        if !self.note.is_empty() {
            line.push_str(&format!(" # {}", self.note));
        }
        line
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub p: f64,
    pub records: Vec<PropertyRecord>,
}

impl AuditReport {
    pub fn get(&self, name: &str) -> Option<&PropertyRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("audit n={} p={}\n", self.n, self.p);
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }
}

/// Audit parameters. Defaults are the values the harness records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditKnobs {
    pub seed: u64,
    pub samples_per_bucket: usize,
    pub p4_alpha: f64,
    pub p4_eps: f64,
    pub p6_eps: f64,
    pub p7_alpha: f64,
    pub p7_eps: f64,
    pub p8_alpha: f64,
    pub p9_eps: f64,
    /// Finite-n reading of "(1-o(1))n": the good vertices must make up at
    /// least this fraction of V.
    pub p9_min_fraction: f64,
    pub harmonic_threshold: f64,
    pub claim2_c: f64,
}

impl Default for AuditKnobs {
    fn default() -> Self {
        AuditKnobs {
            seed: 0,
            samples_per_bucket: 10_000,
            p4_alpha: 1.0,
            p4_eps: 0.1,
            p6_eps: 0.1,
            p7_alpha: 0.9,
            p7_eps: 1.0,
            p8_alpha: 0.5,
            p9_eps: 1.0,
            p9_min_fraction: 0.5,
            harmonic_threshold: 0.5,
            claim2_c: 4.0,
        }
    }
}

/// Scratch space for neighborhood and edge counts of sampled sets.
struct Counter<'a> {
    g: &'a Graph,
    stamp: Vec<u32>,
    mark: Vec<u32>,
    hits: Vec<u32>,
    clock: u32,
}

impl<'a> Counter<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Counter {
            g,
            stamp: vec![0; n],
            mark: vec![0; n],
            hits: vec![0; n],
            clock: 0,
        }
    }

    fn tick(&mut self) -> u32 {
        self.clock += 1;
        self.clock
    }

    /// Marks `set` and returns the clock value used.
    fn mark_set(&mut self, set: &[Vertex]) -> u32 {
        let t = self.tick();
        for &v in set {
            self.mark[v] = t;
        }
        t
    }

    fn neighborhood_size(&mut self, set: &[Vertex]) -> usize {
        let t = self.mark_set(set);
        let mut size = 0;
        for &u in set {
            for w in self.g.neighbors(u) {
                if self.mark[w] != t && self.stamp[w] != t {
                    self.stamp[w] = t;
                    size += 1;
                }
            }
        }
        size
    }

    fn edges_within(&mut self, set: &[Vertex]) -> usize {
        let t = self.mark_set(set);
        let twice: usize = set
            .iter()
            .map(|&u| self.g.neighbors(u).filter(|&w| self.mark[w] == t).count())
            .sum();
        twice / 2
    }

    fn edges_between(&mut self, a: &[Vertex], b: &[Vertex]) -> usize {
        let t = self.mark_set(b);
        a.iter()
            .map(|&u| self.g.neighbors(u).filter(|&w| self.mark[w] == t).count())
            .sum()
    }

    /// e(U, U^c).
    fn boundary_edges(&mut self, set: &[Vertex]) -> usize {
        let t = self.mark_set(set);
        set.iter()
            .map(|&u| self.g.neighbors(u).filter(|&w| self.mark[w] != t).count())
            .sum()
    }

    /// d(v, U) for every v outside U, as (vertex, count) over vertices with
    /// positive count; the rest have count 0.
    fn degrees_into(&mut self, set: &[Vertex]) -> Vec<(Vertex, u32)> {
        let t = self.mark_set(set);
        let mut touched = Vec::new();
        for &u in set {
            for w in self.g.neighbors(u) {
                if self.mark[w] == t {
                    continue;
                }
                if self.stamp[w] != t {
                    self.stamp[w] = t;
                    self.hits[w] = 0;
                    touched.push(w);
                }
                self.hits[w] += 1;
            }
        }
        touched.into_iter().map(|w| (w, self.hits[w])).collect()
    }
}

/// Size buckets: powers of two in `[lo, hi]` plus both endpoints.
fn buckets(lo: usize, hi: usize) -> Vec<usize> {
    if lo > hi {
        return vec![];
    }
    let mut out = vec![lo];
    let mut s = 1usize;
    while s <= hi {
        if s > lo {
            out.push(s);
        }
        s *= 2;
    }
    if *out.last().expect("nonempty") != hi {
        out.push(hi);
    }
    out
}

fn binom_at_most(n: usize, k: usize, cap: usize) -> bool {
    // C(n,k) <= cap, computed without overflow.
    let k = k.min(n - k.min(n));
    let mut acc: f64 = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
        if acc > cap as f64 {
            return false;
        }
    }
    true
}

/// All k-subsets of 0..n in lexicographic order (only used when few).
fn all_subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Sets of size `k` to examine: all of them if there are at most `samples`,
/// otherwise `samples` uniform draws. Returns (sets, exhaustive?).
fn sets_for_bucket(n: usize, k: usize, samples: usize, rng: &mut GameRng) -> (Vec<Vec<Vertex>>, bool) {
    if k == 0 || k > n {
        return (vec![], true);
    }
    if binom_at_most(n, k, samples) {
        return (all_subsets(n, k), true);
    }
    let sets = (0..samples)
        .map(|_| {
            let mut s = sample_index(rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    (sets, false)
}

fn ln(x: f64) -> f64 {
    x.ln()
}

/// Runs every audit on `g` with edge probability `p`.
pub fn audit_gnp_properties(g: &Graph, p: f64, knobs: &AuditKnobs) -> AuditReport {
    let n = g.n();
    let mut records = Vec::new();
    let ctx = Ctx::new(g, p, knobs);
    records.push(ctx.p1());
    records.push(ctx.p2());
    records.push(ctx.p3());
    records.push(ctx.p4());
    records.push(ctx.p5());
    records.push(ctx.p6());
    records.push(ctx.p7());
    records.push(ctx.p8());
    records.push(ctx.p9());
    records.push(ctx.at_least_80());
    records.push(ctx.harmonic_deg());
    records.push(ctx.claim2());
    AuditReport { n, p, records }
}

struct Ctx<'a> {
    g: &'a Graph,
    n: usize,
    p: f64,
    np: f64,
    lnn: f64,
    f: f64,
    knobs: &'a AuditKnobs,
    /// Degrees sorted descending, and prefix sums.
    top_prefix: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Graph, p: f64, knobs: &'a AuditKnobs) -> Self {
        let n = g.n();
        let lnn = if n >= 2 { ln(n as f64) } else { 0.0 };
        let np = n as f64 * p;
        let f = if lnn > 0.0 { np / lnn } else { f64::INFINITY };
        let mut degs = g.degrees();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        let mut top_prefix = vec![0usize; n + 1];
        for i in 0..n {
            top_prefix[i + 1] = top_prefix[i] + degs[i];
        }
        Ctx {
            g,
            n,
            p,
            np,
            lnn,
            f,
            knobs,
            top_prefix,
        }
    }

    fn rng(&self, property: u64) -> GameRng {
        stream(derive_seed(self.knobs.seed, tags::AUDIT), property)
    }

    fn degenerate(&self) -> Option<&'static str> {
        if self.n < 3 || self.lnn <= 0.0 || self.p <= 0.0 {
            Some("n < 3 or p = 0: ln n or np not positive")
        } else {
            None
        }
    }

    fn p1(&self) -> PropertyRecord {
        let bound = 4.0 * self.np;
        let mut r = PropertyRecord::new("P1").param("max_degree_bound", bound);
        r.examined = self.n as u64;
        if let Some(v) = (0..self.n).find(|&v| self.g.degree(v) as f64 > bound) {
            r.fail(Witness::Vertex(v));
        }
        r.statistic = Some(self.g.max_degree() as f64);
        r
    }

    fn p2(&self) -> PropertyRecord {
        let mut r = PropertyRecord::new("P2");
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let (n, p, lnn) = (self.n, self.p, self.lnn);
        let bound = |t: usize| (3.0 * t as f64 * lnn).max(3.0 * (t * t) as f64 * p);
        // Certificate 1: max_U e(U) - 3 ln n |U| <= 0 settles every U.
        let dens = max_density_excess(self.g, 3.0 * lnn);
        r = r.param("slope", dens.slope);
        r.statistic = Some(dens.excess);
        if dens.excess <= 0.0 {
            r.note = "max-density flow certificate".into();
            return r;
        }
        if !dens.set.is_empty() {
            let t = dens.set.len();
            let e = self.g.edges_within(&dens.set).expect("valid set") as f64;
            if e > bound(t) {
                r.fail(Witness::Set(dens.set.clone()));
                r.note = "max-density flow witness".into();
                return r;
            }
        }
        // Certificate 2 per size: e(U) <= min(C(t,2), top-t degree sum / 2,
        // slope*t + excess).
        let mut open = Vec::new();
        for t in 1..=n {
            let ub = ((t * (t - 1) / 2) as f64)
                .min(self.top_prefix[t] as f64 / 2.0)
                .min(dens.slope * t as f64 + dens.excess);
            if ub > bound(t) {
                open.push(t);
            }
        }
        if open.is_empty() {
            r.note = "per-size degree and flow certificates".into();
            return r;
        }
        r.method = Method::Sampled;
        r.note = format!("sizes {}..={} not certified; sampled", open[0], open[open.len() - 1]);
        let mut rng = self.rng(2);
        let mut c = Counter::new(self.g);
        for t in buckets(open[0], open[open.len() - 1]) {
            let (sets, _) = sets_for_bucket(n, t, self.knobs.samples_per_bucket, &mut rng);
            for s in sets {
                r.examined += 1;
                if c.edges_within(&s) as f64 > bound(t) {
                    r.fail(Witness::Set(s));
                }
            }
        }
        r
    }

    fn p3(&self) -> PropertyRecord {
        let mut r = PropertyRecord::new("P3");
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let lnln = ln(self.lnn);
        if lnln <= 0.0 {
            return r.vacuous("ln ln n <= 0");
        }
        let hi = (self.n as f64 * lnln / self.lnn).floor() as usize;
        let coef = 100.0 * self.f * lnln;
        r = r.param("max_size", hi as f64).param("coef", coef);
        if hi == 0 {
            return r.vacuous("empty size range");
        }
        let mut open = Vec::new();
        for t in 1..=hi.min(self.n) {
            let ub = ((t * (t - 1) / 2) as f64).min(self.top_prefix[t] as f64 / 2.0);
            if ub > coef * t as f64 {
                open.push(t);
            }
        }
        if open.is_empty() {
            r.note = "degree-sum certificate".into();
            return r;
        }
        r.method = Method::Sampled;
        let mut rng = self.rng(3);
        let mut c = Counter::new(self.g);
        for t in buckets(open[0], open[open.len() - 1]) {
            let (sets, _) = sets_for_bucket(self.n, t, self.knobs.samples_per_bucket, &mut rng);
            for s in sets {
                r.examined += 1;
                if c.edges_within(&s) as f64 > coef * t as f64 {
                    r.fail(Witness::Set(s));
                }
            }
        }
        r
    }

    fn p4(&self) -> PropertyRecord {
        let (alpha, eps) = (self.knobs.p4_alpha, self.knobs.p4_eps);
        let mut r = PropertyRecord::new("P4").param("alpha", alpha).param("eps", eps);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let beta = (1.0 - ((2.0 + eps) * (alpha + 1.0) / self.f).sqrt()) / (alpha + 1.0);
        let hi = ((alpha / self.p).floor() as usize).min(self.n);
        r = r.param("beta", beta).param("max_size", hi as f64);
        if beta <= 0.0 {
            return r.vacuous("beta <= 0 at this f(n)");
        }
        if hi == 0 {
            return r.vacuous("empty size range");
        }
        let mut all = true;
        let mut rng = self.rng(4);
        let mut c = Counter::new(self.g);
        for t in buckets(1, hi) {
            let (sets, exh) = sets_for_bucket(self.n, t, self.knobs.samples_per_bucket, &mut rng);
            all &= exh;
            for s in sets {
                r.examined += 1;
                if (c.neighborhood_size(&s) as f64) < beta * t as f64 * self.np {
                    r.fail(Witness::Set(s));
                }
            }
        }
        if !(all && buckets(1, hi).len() == hi) {
            r.method = Method::Sampled;
        }
        r
    }

    fn p5(&self) -> PropertyRecord {
        let mut r = PropertyRecord::new("P5");
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let lo = (1.0 / self.p).ceil() as usize;
        let hi = (self.n as f64 / self.lnn).floor() as usize;
        r = r.param("min_size", lo as f64).param("max_size", hi as f64);
        if lo > hi || lo == 0 {
            return r.vacuous("empty size range");
        }
        let need = self.n as f64 / 4.0;
        let mut rng = self.rng(5);
        let mut c = Counter::new(self.g);
        let mut all = true;
        for t in buckets(lo, hi) {
            let (sets, exh) = sets_for_bucket(self.n, t, self.knobs.samples_per_bucket, &mut rng);
            all &= exh;
            for s in sets {
                r.examined += 1;
                if (c.neighborhood_size(&s) as f64) < need {
                    r.fail(Witness::Set(s));
                }
            }
        }
        if !(all && buckets(lo, hi).len() == hi - lo + 1) {
            r.method = Method::Sampled;
        }
        r
    }

    fn p6(&self) -> PropertyRecord {
        let eps = self.knobs.p6_eps;
        let mut r = PropertyRecord::new("P6").param("eps", eps);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let alpha = (4.0 / self.f).sqrt() + eps;
        r = r.param("alpha", alpha);
        if alpha >= 1.0 {
            return r.vacuous("alpha = sqrt(4/f(n)) + eps >= 1: bound is non-positive");
        }
        let n = self.n;
        let need = |t: usize| (1.0 - alpha) * (t * (n - t)) as f64 * self.p;
        // Singletons exhaustively, larger sets (up to n/2, by symmetry) sampled.
        r.method = Method::Sampled;
        for v in 0..n {
            r.examined += 1;
            if (self.g.degree(v) as f64) < need(1) {
                r.fail(Witness::Set(vec![v]));
            }
        }
        let mut rng = self.rng(6);
        let mut c = Counter::new(self.g);
        if n / 2 >= 2 {
            for t in buckets(2, n / 2) {
                let (sets, _) = sets_for_bucket(n, t, self.knobs.samples_per_bucket, &mut rng);
                for s in sets {
                    r.examined += 1;
                    if (c.boundary_edges(&s) as f64) < need(t) {
                        r.fail(Witness::Set(s));
                    }
                }
            }
        } else {
            r.method = Method::Exhaustive;
        }
        r
    }

    fn p7(&self) -> PropertyRecord {
        let (alpha, eps) = (self.knobs.p7_alpha, self.knobs.p7_eps);
        let mut r = PropertyRecord::new("P7").param("alpha", alpha).param("eps", eps);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let lnln = ln(self.lnn);
        if lnln <= 0.0 {
            return r.vacuous("ln ln n <= 0");
        }
        if alpha * alpha * eps * self.f <= 4.0 {
            return r.vacuous("alpha^2 * eps * f(n) <= 4");
        }
        let m = (eps * self.n as f64 * lnln / self.lnn).floor() as usize;
        r = r.param("m", m as f64);
        if m == 0 || 2 * m > self.n {
            return r.vacuous("no two disjoint sets of size m");
        }
        let need = (1.0 - alpha) * (m * m) as f64 * self.p;
        r.method = Method::Sampled;
        let mut rng = self.rng(7);
        let mut c = Counter::new(self.g);
        for _ in 0..self.knobs.samples_per_bucket {
            r.examined += 1;
            let idx = sample_index(&mut rng, self.n, 2 * m).into_vec();
            let (mut a, mut b) = (idx[..m].to_vec(), idx[m..].to_vec());
            if (c.edges_between(&a, &b) as f64) < need {
                a.sort_unstable();
                b.sort_unstable();
                r.fail(Witness::Pair(a, b));
            }
        }
        r
    }

    fn p8(&self) -> PropertyRecord {
        let alpha = self.knobs.p8_alpha;
        let mut r = PropertyRecord::new("P8").param("alpha", alpha);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let lnln = ln(self.lnn);
        if lnln <= 0.0 {
            return r.vacuous("ln ln n <= 0");
        }
        let a = (10000.0 * self.n as f64 / lnln).floor() as usize;
        let b = self.n / 10;
        r = r.param("size_a", a as f64).param("size_b", b as f64);
        if a + b > self.n || b == 0 {
            return r.vacuous("|A| + |B| exceeds n");
        }
        let need = (1.0 - alpha) * (a * b) as f64 * self.p;
        r.method = Method::Sampled;
        let mut rng = self.rng(8);
        let mut c = Counter::new(self.g);
        for _ in 0..self.knobs.samples_per_bucket {
            r.examined += 1;
            let idx = sample_index(&mut rng, self.n, a + b).into_vec();
            let (mut sa, mut sb) = (idx[..a].to_vec(), idx[a..].to_vec());
            if (c.edges_between(&sa, &sb) as f64) < need {
                sa.sort_unstable();
                sb.sort_unstable();
                r.fail(Witness::Pair(sa, sb));
            }
        }
        r
    }

    fn p9(&self) -> PropertyRecord {
        let (eps, frac) = (self.knobs.p9_eps, self.knobs.p9_min_fraction);
        let mut r = PropertyRecord::new("P9").param("eps", eps).param("min_fraction", frac);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let hi = (self.n as f64 / (self.lnn * self.lnn)).floor() as usize;
        let thr = eps * self.np / self.lnn;
        r = r.param("max_size", hi as f64).param("threshold", thr);
        if hi == 0 {
            return r.vacuous("empty size range");
        }
        let need = frac * self.n as f64;
        // A vertex with d(v,U) > thr absorbs at least floor(thr)+1 edges from U.
        let per_bad = thr.floor() as usize + 1;
        let certified = (1..=hi).all(|t| {
            let bad = self.top_prefix[t] / per_bad;
            (self.n - t).saturating_sub(bad) as f64 >= need
        });
        if certified {
            r.note = "degree-sum certificate".into();
            return r;
        }
        r.method = Method::Sampled;
        let mut rng = self.rng(9);
        let mut c = Counter::new(self.g);
        for t in buckets(1, hi) {
            let (sets, _) = sets_for_bucket(self.n, t, self.knobs.samples_per_bucket, &mut rng);
            for s in sets {
                r.examined += 1;
                let bad = c.degrees_into(&s).iter().filter(|&&(_, d)| d as f64 > thr).count();
                if ((self.n - t - bad) as f64) < need {
                    r.fail(Witness::Set(s));
                }
            }
        }
        r
    }

    fn at_least_80(&self) -> PropertyRecord {
        let mut r = PropertyRecord::new("AtLeast80");
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        if self.p < 80.0 * self.lnn / self.n as f64 {
            return r.vacuous("p < 80 ln n / n");
        }
        let lo = (80.0 / self.p).ceil() as usize;
        let hi = (self.n as f64 / self.lnn).floor() as usize;
        r = r.param("min_size", lo as f64).param("max_size", hi as f64);
        if lo > hi {
            return r.vacuous("empty size range");
        }
        // For a fixed U the worst W is the half of N(U) least attached to U.
        r.method = Method::Sampled;
        let mut rng = self.rng(10);
        let mut c = Counter::new(self.g);
        for t in buckets(lo, hi) {
            let (sets, _) = sets_for_bucket(self.n, t, self.knobs.samples_per_bucket, &mut rng);
            for s in sets {
                r.examined += 1;
                let mut into = c.degrees_into(&s);
                into.sort_unstable_by_key(|&(v, d)| (d, v));
                let half = into.len() / 2;
                let e: u32 = into[..half].iter().map(|&(_, d)| d).sum();
                if (e as f64) < t as f64 * self.np / 50.0 {
                    let w: Vec<Vertex> = {
                        let mut w: Vec<Vertex> = into[..half].iter().map(|&(v, _)| v).collect();
                        w.sort_unstable();
                        w
                    };
                    r.fail(Witness::Pair(s, w));
                }
            }
        }
        r
    }

    fn harmonic_deg(&self) -> PropertyRecord {
        let thr = self.knobs.harmonic_threshold;
        let mut r = PropertyRecord::new("HarmonicDeg").param("threshold", thr);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let big_n = (self.n as f64 / self.lnn.powi(3)).floor() as usize;
        r = r.param("length", big_n as f64);
        if big_n <= 1 {
            r.statistic = Some(0.0);
            return r.vacuous("ordering length n / ln^3 n <= 1: sum is 0");
        }
        let dmax = self.g.max_degree();
        let bound: f64 = (1..=big_n).map(|j| (j - 1).min(dmax) as f64 / j as f64).sum();
        if bound / self.np <= thr {
            r.statistic = Some(bound / self.np);
            r.note = "bound sum_j min(j-1, max degree)/j certifies all orderings".into();
            return r;
        }
        r.method = Method::Sampled;
        let mut rng = self.rng(11);
        let mut worst = 0.0f64;
        let mut pos = vec![usize::MAX; self.n];
        let samples = self.knobs.samples_per_bucket;
        for i in 0..samples {
            r.examined += 1;
            // Half uniform orderings, half BFS-grown dense orderings.
            let order: Vec<Vertex> = if i % 2 == 0 {
                sample_index(&mut rng, self.n, big_n).into_vec()
            } else {
                let mut order = vec![*(0..self.n).collect::<Vec<_>>().choose(&mut rng).expect("n>0")];
                let mut k = 0;
                while order.len() < big_n && k < order.len() {
                    let mut nb: Vec<Vertex> = self.g.neighbors(order[k]).filter(|w| !order.contains(w)).collect();
                    nb.shuffle(&mut rng);
                    for w in nb {
                        if order.len() < big_n {
                            order.push(w);
                        }
                    }
                    k += 1;
                }
                while order.len() < big_n {
                    let v = rand::Rng::gen_range(&mut rng, 0..self.n);
                    if !order.contains(&v) {
                        order.push(v);
                    }
                }
                order
            };
            for (j, &v) in order.iter().enumerate() {
                pos[v] = j;
            }
            let mut sum = 0.0;
            for (j, &v) in order.iter().enumerate() {
                let back = self.g.neighbors(v).filter(|&w| pos[w] < j).count();
                sum += back as f64 / (j + 1) as f64;
            }
            for &v in &order {
                pos[v] = usize::MAX;
            }
            let ratio = sum / self.np;
            if ratio > worst {
                worst = ratio;
            }
            if ratio > thr {
                r.fail(Witness::Ordering(order));
            }
        }
        r.statistic = Some(worst);
        r
    }

    fn claim2(&self) -> PropertyRecord {
        let cc = self.knobs.claim2_c;
        let mut r = PropertyRecord::new("Claim2").param("c", cc);
        if let Some(why) = self.degenerate() {
            return r.vacuous(why);
        }
        let hi = (self.n as f64 / self.lnn.powi(3)).floor() as usize;
        r = r.param("max_size", hi as f64);
        if hi == 0 {
            return r.vacuous("empty size range");
        }
        if (hi as f64) <= 2.0 * cc + 1.0 {
            r.note = "C(t,2) <= c t for all sizes in range".into();
            return r;
        }
        let dens = max_density_excess(self.g, cc);
        if dens.excess <= 0.0 {
            r.note = "max-density flow certificate".into();
            return r;
        }
        if !dens.set.is_empty() && dens.set.len() <= hi {
            let e = self.g.edges_within(&dens.set).expect("valid set") as f64;
            if e > cc * dens.set.len() as f64 {
                r.fail(Witness::Set(dens.set));
                return r;
            }
        }
        r.method = Method::Sampled;
        let mut rng = self.rng(12);
        let mut c = Counter::new(self.g);
        for t in buckets(1, hi) {
            let (sets, _) = sets_for_bucket(self.n, t, self.knobs.samples_per_bucket, &mut rng);
            for s in sets {
                r.examined += 1;
                if c.edges_within(&s) as f64 > cc * t as f64 {
                    r.fail(Witness::Set(s));
                }
            }
        }
        r
    }
}

/// Re-checks a failed record's witness against the graph: true when the
/// witness really violates the property.
pub fn witness_violates(g: &Graph, p: f64, rec: &PropertyRecord) -> bool {
    let n = g.n() as f64;
    let np = n * p;
    let lnn = n.ln();
    let f = np / lnn;
    let param = |k: &str| rec.params.get(k).copied().unwrap_or(f64::NAN);
    let Some(w) = &rec.witness else { return false };
    match (rec.name.as_str(), w) {
        ("P1", Witness::Vertex(v)) => g.degree(*v) as f64 > 4.0 * np,
        ("P2", Witness::Set(s)) => {
            let t = s.len() as f64;
            g.edges_within(s).unwrap() as f64 > (3.0 * t * lnn).max(3.0 * t * t * p)
        }
        ("P3", Witness::Set(s)) => {
            g.edges_within(s).unwrap() as f64 > 100.0 * s.len() as f64 * f * lnn.ln()
        }
        ("P4", Witness::Set(s)) => {
            (g.external_neighborhood(s).unwrap().len() as f64) < param("beta") * s.len() as f64 * np
        }
        ("P5", Witness::Set(s)) => (g.external_neighborhood(s).unwrap().len() as f64) < n / 4.0,
        ("P6", Witness::Set(s)) => {
            let comp: Vec<Vertex> = (0..g.n()).filter(|v| !s.contains(v)).collect();
            let t = s.len() as f64;
            (g.edges_between(s, &comp).unwrap() as f64) < (1.0 - param("alpha")) * t * (n - t) * p
        }
        ("P7" | "P8", Witness::Pair(a, b)) => {
            let alpha = param("alpha");
            (g.edges_between(a, b).unwrap() as f64) < (1.0 - alpha) * (a.len() * b.len()) as f64 * p
        }
        ("P9", Witness::Set(s)) => {
            let thr = param("threshold");
            let good = (0..g.n())
                .filter(|v| !s.contains(v))
                .filter(|&v| g.edges_from(v, s).unwrap() as f64 <= thr)
                .count();
            (good as f64) < param("min_fraction") * n
        }
        ("AtLeast80", Witness::Pair(u, w)) => {
            (g.edges_between(u, w).unwrap() as f64) < u.len() as f64 * np / 50.0
        }
        ("HarmonicDeg", Witness::Ordering(o)) => {
            let sum: f64 = (0..o.len())
                .map(|j| g.edges_from(o[j], &o[..j]).unwrap() as f64 / (j + 1) as f64)
                .sum();
            sum / np > param("threshold")
        }
        ("Claim2", Witness::Set(s)) => g.edges_within(s).unwrap() as f64 > param("c") * s.len() as f64,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_gnp, GnpParams};

    fn quick() -> AuditKnobs {
        AuditKnobs {
            samples_per_bucket: 200,
            ..AuditKnobs::default()
        }
    }

    #[test]
    fn complete_graph_passes_p1() {
        let r = audit_gnp_properties(&Graph::complete(30), 1.0, &quick());
        assert!(r.get("P1").unwrap().passed);
        assert_eq!(r.get("P1").unwrap().method, Method::Exhaustive);
    }

    #[test]
    fn empty_graph_fails_p4_with_singleton() {
        let g = Graph::empty(100);
        let r = audit_gnp_properties(&g, 0.5, &quick());
        let p4 = r.get("P4").unwrap();
        assert!(!p4.passed);
        match &p4.witness {
            Some(Witness::Set(s)) => assert_eq!(s.len(), 1),
            other => panic!("{other:?}"),
        }
        assert!(witness_violates(&g, 0.5, p4));
    }

    #[test]
    fn tiny_n_flags_vacuous() {
        let g = sample_gnp(&GnpParams::new(10, 0.5, 1).unwrap()).unwrap();
        let r = audit_gnp_properties(&g, 0.5, &quick());
        for name in ["P8", "AtLeast80", "HarmonicDeg"] {
            assert_eq!(r.get(name).unwrap().method, Method::Vacuous, "{name}");
        }
        assert!(r.to_text().contains("P8 vacuous pass"));
    }

    #[test]
    fn dense_block_fails_p2_with_checkable_witness() {
        // A 40-clique planted in a sparse graph is far above 3|U| ln n.
        let n = 200;
        let base = sample_gnp(&GnpParams::new(n, 0.02, 7).unwrap()).unwrap();
        let mut pairs: Vec<(usize, usize)> = base.edges().iter().map(|e| (e.u(), e.v())).collect();
        for a in 0..40 {
            for b in a + 1..40 {
                pairs.push((a, b));
            }
        }
        pairs.sort();
        pairs.dedup();
        let g = Graph::from_edges(n, pairs).unwrap();
        let r = audit_gnp_properties(&g, 0.02, &quick());
        let p2 = r.get("P2").unwrap();
        assert!(!p2.passed);
        assert!(witness_violates(&g, 0.02, p2));
    }

    #[test]
    fn deterministic_reports() {
        let g = sample_gnp(&GnpParams::new(300, 0.1, 5).unwrap()).unwrap();
        let a = audit_gnp_properties(&g, 0.1, &quick());
        let b = audit_gnp_properties(&g, 0.1, &quick());
        assert_eq!(a, b);
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn bucket_sizes() {
        assert_eq!(buckets(1, 29), vec![1, 2, 4, 8, 16, 29]);
        assert_eq!(buckets(29, 144), vec![29, 32, 64, 128, 144]);
        assert_eq!(buckets(5, 5), vec![5]);
        assert!(buckets(6, 5).is_empty());
    }
}
