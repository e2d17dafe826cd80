//! Exact maximum d-independent sets by branch and bound.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    LowerBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub size: usize,
    pub witness: Vec<VertexId>,
    pub status: SolveStatus,
    pub nodes_explored: u64,
    pub wall_budget_hit: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub nodes: u64,
    pub time: Duration,
    pub threads: usize,
    /// A proven upper bound on the answer; the search stops once it is met.
    pub cap: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 100_000_000,
            time: Duration::from_secs(60),
            threads: 1,
            cap: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count_and(&self, o: &Bits) -> usize {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn minus(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= !b;
        }
    }

    fn and(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Candidates `{v : deg(v) >= d}` with their adjacency restricted to the
/// candidates (multi-edges collapsed).
fn candidates(g: &MultiGraph, d: usize) -> (Vec<VertexId>, Vec<Vec<usize>>) {
    let deg = g.degree_vec();
    let cand: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| deg[v] >= d).collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in cand.iter().enumerate() {
        local[v] = i;
    }
    let mut adj = vec![Vec::new(); cand.len()];
    for &(u, v) in g.edges() {
        let (a, b) = (local[u], local[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    (cand, adj)
}

struct Shared {
    adj: Vec<Bits>,
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    start: Instant,
    budget: Budget,
}

impl Shared {
    fn offer(&self, set: &[usize]) {
        if set.len() <= self.best.load(Ordering::SeqCst) {
            return;
        }
        let mut w = self.witness.lock().unwrap();
        if set.len() > w.len() {
            *w = set.to_vec();
            self.best.store(set.len(), Ordering::SeqCst);
            if self.budget.cap.is_some_and(|c| set.len() >= c) {
                self.stop.store(true, Ordering::SeqCst);
            }
        }
    }

    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if k > self.budget.nodes || (k % 1024 == 0 && self.start.elapsed() > self.budget.time) {
            self.stop.store(true, Ordering::SeqCst);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    /// Number of cliques in a greedy sequential clique cover of `p`.
    fn clique_cover(&self, p: &Bits) -> usize {
        let mut rest = p.clone();
        let mut k = 0;
        while let Some(v) = rest.first() {
            let mut common = self.adj[v].clone();
            common.and(&rest);
            rest.clear(v);
            while let Some(u) = common.first() {
                rest.clear(u);
                common.clear(u);
                common.and(&self.adj[u]);
            }
            k += 1;
        }
        k
    }

    /// Removes forced vertices (residual degree at most one) into `chosen`.
    fn reduce(&self, p: &mut Bits, chosen: &mut Vec<usize>) {
        loop {
            let forced = p.iter().find(|&v| self.adj[v].count_and(p) <= 1);
            let Some(v) = forced else { return };
            chosen.push(v);
            p.clear(v);
            p.minus(&self.adj[v]);
        }
    }

    /// Residual vertex of maximum degree, smallest id on ties.
    fn pivot(&self, p: &Bits) -> usize {
        let mut best = (0, usize::MAX);
        for v in p.iter() {
            let d = self.adj[v].count_and(p);
            if best.1 == usize::MAX || d > best.0 {
                best = (d, v);
            }
        }
        best.1
    }

    fn search(&self, mut p: Bits, chosen: &mut Vec<usize>) {
        if !self.tick() {
            return;
        }
        let mark = chosen.len();
        self.reduce(&mut p, chosen);
        if p.is_empty() {
            self.offer(chosen);
        } else if chosen.len() + self.clique_cover(&p) > self.best.load(Ordering::SeqCst) {
            let v = self.pivot(&p);
            let mut inc = p.clone();
            inc.clear(v);
            inc.minus(&self.adj[v]);
            chosen.push(v);
            self.search(inc, chosen);
            chosen.pop();
            p.clear(v);
            self.search(p, chosen);
        }
        chosen.truncate(mark);
    }

    /// Splits the root into independent subproblems by branching on pivots.
    fn split(&self, p: Bits, want: usize) -> Vec<(Bits, Vec<usize>)> {
        let mut tasks = vec![(p, Vec::new())];
        while tasks.len() < want {
            let Some(i) = tasks.iter().position(|(p, _)| !p.is_empty()) else { break };
            let (mut p, mut chosen) = tasks.swap_remove(i);
            self.reduce(&mut p, &mut chosen);
            if p.is_empty() {
                tasks.push((p, chosen));
                continue;
            }
            let v = self.pivot(&p);
            let mut inc = p.clone();
            inc.clear(v);
            inc.minus(&self.adj[v]);
            let mut with = chosen.clone();
            with.push(v);
            p.clear(v);
            tasks.push((inc, with));
            tasks.push((p, chosen));
        }
        tasks
    }
}

/// Greedy minimum-degree independent set, used as the first incumbent.
fn greedy(adj: &[Bits], n: usize) -> Vec<usize> {
    let mut p = Bits::new(n);
    (0..n).for_each(|v| p.set(v));
    let mut out = Vec::new();
    while !p.is_empty() {
        let v = p.iter().min_by_key(|&v| (adj[v].count_and(&p), v)).unwrap();
        out.push(v);
        p.clear(v);
        p.minus(&adj[v]);
    }
    out
}

/// Maximum independent set among the vertices of degree at least `d`.
/// Never fails: an exhausted budget yields `LowerBoundOnly`.
pub fn max_d_independent_set(g: &MultiGraph, d: usize, budget: Budget) -> SolveResult {
    let (cand, adj_list) = candidates(g, d);
    let n = cand.len();
    let adj: Vec<Bits> = adj_list
        .iter()
        .map(|l| {
            let mut b = Bits::new(n);
            l.iter().for_each(|&u| b.set(u));
            b
        })
        .collect();
    let init = greedy(&adj, n);
    let shared = Shared {
        best: AtomicUsize::new(init.len()),
        witness: Mutex::new(init),
        adj,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        start: Instant::now(),
        budget,
    };
    if budget.cap.is_some_and(|c| shared.best.load(Ordering::SeqCst) >= c) {
        shared.stop.store(true, Ordering::SeqCst);
    }
    let mut root = Bits::new(n);
    (0..n).for_each(|v| root.set(v));
    let threads = budget.threads.max(1);
    if !shared.stop.load(Ordering::SeqCst) {
        if threads == 1 {
            shared.search(root, &mut Vec::new());
        } else {
            let tasks = shared.split(root, 8 * threads);
            let next = AtomicUsize::new(0);
            std::thread::scope(|s| {
                for _ in 0..threads {
                    s.spawn(|| loop {
                        let i = next.fetch_add(1, Ordering::SeqCst);
                        let Some((p, chosen)) = tasks.get(i) else { break };
                        shared.search(p.clone(), &mut chosen.clone());
                    });
                }
            });
        }
    }
    let nodes = shared.nodes.load(Ordering::SeqCst);
    let capped = budget.cap.is_some_and(|c| shared.best.load(Ordering::SeqCst) >= c);
    let exhausted = !capped && shared.stop.load(Ordering::SeqCst);
    let mut witness: Vec<VertexId> = shared.witness.into_inner().unwrap().iter().map(|&i| cand[i]).collect();
    witness.sort_unstable();
    SolveResult {
        size: witness.len(),
        witness,
        status: if exhausted { SolveStatus::LowerBoundOnly } else { SolveStatus::Optimal },
        nodes_explored: nodes,
        wall_budget_hit: exhausted,
    }
}

/// Largest candidate count accepted by [`brute_force_oracle`].
pub const ORACLE_LIMIT: usize = 25;

/// Exhaustive search over all subsets of candidates.
pub fn brute_force_oracle(g: &MultiGraph, d: usize) -> Result<SolveResult> {
    let (cand, adj) = candidates(g, d);
    let n = cand.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let masks: Vec<u32> = adj.iter().map(|l| l.iter().fold(0, |m, &u| m | 1 << u)).collect();
    let mut indep = vec![false; 1 << n];
    indep[0] = true;
    let mut best = 0u32;
    for s in 1u32..1 << n {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        indep[s as usize] = indep[rest as usize] && masks[v] & rest == 0;
        if indep[s as usize] && s.count_ones() > best.count_ones() {
            best = s;
        }
    }
    let witness: Vec<VertexId> = (0..n).filter(|&i| best >> i & 1 == 1).map(|i| cand[i]).collect();
    Ok(SolveResult {
        size: witness.len(),
        witness,
        status: SolveStatus::Optimal,
        nodes_explored: 1 << n,
        wall_budget_hit: false,
    })
}

/// Parses one `u v` pair per line (0-indexed). Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<MultiGraph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("line {}: bad vertex {t:?}", i + 1))))
            .collect::<Result<_>>()?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse(format!("line {}: expected two vertices", i + 1)));
        };
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    MultiGraph::new(n, edges)
}
