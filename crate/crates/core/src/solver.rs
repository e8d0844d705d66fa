//! Exact tree-stretch by exhaustive search over spanning trees.
//!
//! The search grows one subtree from vertex 0 and branches on a single
//! frontier edge at a time: either the edge joins the tree or it is excluded
//! for the rest of that branch. Every spanning tree is reached by exactly one
//! leaf of this binary recursion, so running it without pruning enumerates
//! each tree once.
//!
//! Pruning for a stretch limit `k` uses two facts about a grown subtree `S`:
//!
//! * once both endpoints of a graph edge are in `S`, their tree distance is
//!   final, so any such edge with distance above `k` kills the branch;
//! * an outside vertex `w` will enter `S` through a single attachment vertex
//!   `a`, and then its distance to every `x` in `S` is at least
//!   `dist(w, a) + dist_S(a, x)`. If no attachment point keeps all of `w`'s
//!   neighbours in `S` within `k`, the branch is dead.
//!
//! The branching rule depends only on the search state, never on the current
//! limit, so the first optimal tree in search order is the same whether the
//! search runs on one thread or is split across several.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::tree::{max_stretch, SpanningTree, TreeDescriptor};

const NO_EDGE: u32 = u32::MAX;
const UNBOUNDED: u32 = u32::MAX;
const TIME_CHECK_INTERVAL: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {vertices} vertices, budget allows {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("stretch limit must be at least 1")]
    InvalidLimit,
    #[error("budget caps must be positive")]
    InvalidBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub max_vertices: usize,
    pub max_trees: u64,
    pub time_cap: Duration,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_vertices: 12,
            max_trees: 10_000_000,
            time_cap: Duration::from_secs(300),
        }
    }
}

impl SolveBudget {
    fn validate(&self) -> Result<(), SolveError> {
        if self.max_vertices == 0 || self.max_trees == 0 || self.time_cap.is_zero() {
            Err(SolveError::InvalidBudget)
        } else {
            Ok(())
        }
    }
}

/// Optimum of the search. When `exhausted` is false the search stopped on a
/// budget cap and `optimum` is only an upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: usize,
    pub optimal_tree: SpanningTree,
    /// Complete spanning trees reached by the search (a work statistic; with
    /// several jobs it depends on scheduling).
    pub trees_enumerated: u64,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub optimum: usize,
    pub optimal_tree: TreeDescriptor,
    pub trees_enumerated: u64,
    pub exhausted: bool,
}

impl SolveResult {
    pub fn report(&self) -> SolveReport {
        SolveReport {
            optimum: self.optimum,
            optimal_tree: self.optimal_tree.to_descriptor(),
            trees_enumerated: self.trees_enumerated,
            exhausted: self.exhausted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpannerDecision {
    /// A spanning tree with max-stretch at most `k`.
    Exists(SpanningTree),
    /// The search covered every spanning tree and none qualifies.
    Infeasible,
    /// The budget ran out first.
    Indeterminate,
}

impl SpannerDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, SpannerDecision::Exists(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub trees: u64,
    pub exhausted: bool,
}

/// Returned by enumeration visitors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

struct Problem {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_id: Vec<u32>,
}

impl Problem {
    fn new<G: Graph + ?Sized>(g: &G, budget: &SolveBudget) -> Result<Self, SolveError> {
        budget.validate()?;
        let n = g.vertex_count();
        if n == 0 {
            return Err(SolveError::Empty);
        }
        if n > budget.max_vertices {
            return Err(SolveError::TooLarge {
                vertices: n,
                cap: budget.max_vertices,
            });
        }
        let adj = g.adjacency();
        let mut edge_id = vec![NO_EDGE; n * n];
        let mut m = 0u32;
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    edge_id[u * n + v] = m;
                    edge_id[v * n + u] = m;
                    m += 1;
                }
            }
        }
        let p = Problem { n, adj, edge_id };
        if !p.connected() {
            return Err(SolveError::Disconnected);
        }
        Ok(p)
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    fn edge(&self, u: usize, v: usize) -> usize {
        self.edge_id[u * self.n + v] as usize
    }

    /// Breadth-first tree from vertex 0, used as the starting incumbent.
    fn bfs_parents(&self) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n];
        parent[0] = 0;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        parent
    }
}

fn pack(value: u32, index: u32) -> u64 {
    (u64::from(value) << 32) | u64::from(index)
}

fn unpack(packed: u64) -> (u32, u32) {
    ((packed >> 32) as u32, packed as u32)
}

#[derive(Debug, Clone, Copy)]
struct Decision {
    attach: usize,
    vertex: usize,
    include: bool,
}

struct Shared<'b> {
    budget: &'b SolveBudget,
    start: Instant,
    trees: AtomicU64,
    stop: AtomicBool,
    /// Best `(value, prefix index)` found by any worker, packed so that
    /// `fetch_min` orders lexicographically.
    best: AtomicU64,
}

impl Shared<'_> {
    fn new(budget: &SolveBudget, initial: u32) -> Shared<'_> {
        Shared {
            budget,
            start: Instant::now(),
            trees: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            best: AtomicU64::new(pack(initial, u32::MAX)),
        }
    }

    /// Limit for the worker on prefix `index`. A best found in an earlier
    /// prefix wins ties, so only strictly better trees are worth finding;
    /// against a later prefix a tie still matters.
    fn limit_for(&self, index: u32) -> u32 {
        let (value, owner) = unpack(self.best.load(Ordering::Relaxed));
        if owner < index {
            value.saturating_sub(1)
        } else {
            value
        }
    }

    fn offer(&self, value: u32, index: u32) {
        self.best.fetch_min(pack(value, index), Ordering::Relaxed);
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    /// Counts a complete tree; false once the tree cap is exceeded.
    fn admit_tree(&self) -> bool {
        let count = self.trees.fetch_add(1, Ordering::Relaxed) + 1;
        if count > self.budget.max_trees {
            self.trees.fetch_sub(1, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            false
        } else {
            true
        }
    }
}

trait Visitor {
    /// Largest closed-edge stretch a branch may carry.
    fn limit(&self) -> u32;
    fn prune_attachments(&self) -> bool;
    fn complete(&mut self, state: &State) -> Visit;
}

struct State {
    n: usize,
    in_tree: Vec<bool>,
    parent: Vec<usize>,
    members: Vec<usize>,
    dist: Vec<u32>,
    excluded: Vec<bool>,
    closed_max: u32,
}

impl State {
    fn new(p: &Problem) -> Self {
        let n = p.n;
        let mut s = State {
            n,
            in_tree: vec![false; n],
            parent: vec![usize::MAX; n],
            members: Vec::with_capacity(n),
            dist: vec![0; n * n],
            excluded: vec![false; p.edge_count()],
            closed_max: 0,
        };
        s.in_tree[0] = true;
        s.parent[0] = 0;
        s.members.push(0);
        s
    }

    #[inline]
    fn d(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Adds `w` below `a`; returns the previous closed maximum for undo.
    fn include(&mut self, p: &Problem, a: usize, w: usize) -> u32 {
        let saved = self.closed_max;
        let n = self.n;
        for &x in &self.members {
            let d = self.dist[a * n + x] + 1;
            self.dist[w * n + x] = d;
            self.dist[x * n + w] = d;
        }
        self.dist[w * n + w] = 0;
        self.in_tree[w] = true;
        self.parent[w] = a;
        self.members.push(w);
        for &y in &p.adj[w] {
            if self.in_tree[y] {
                self.closed_max = self.closed_max.max(self.d(w, y));
            }
        }
        saved
    }

    fn undo_include(&mut self, w: usize, saved: u32) {
        let popped = self.members.pop();
        debug_assert_eq!(popped, Some(w));
        self.in_tree[w] = false;
        self.parent[w] = usize::MAX;
        self.closed_max = saved;
    }

    fn is_complete(&self) -> bool {
        self.members.len() == self.n
    }
}

struct Search<'p, 's, 'b> {
    p: &'p Problem,
    shared: &'s Shared<'b>,
    st: State,
    nodes: u64,
    decisions: Vec<Decision>,
    /// When set, branches are cut at this depth and recorded instead.
    split_depth: Option<usize>,
    splits: Vec<Vec<Decision>>,
    // scratch
    reach: Vec<bool>,
    stack: Vec<usize>,
    capable: Vec<usize>,
}

impl<'p, 's, 'b> Search<'p, 's, 'b> {
    fn new(p: &'p Problem, shared: &'s Shared<'b>) -> Self {
        Search {
            p,
            shared,
            st: State::new(p),
            nodes: 0,
            decisions: Vec::new(),
            split_depth: None,
            splits: Vec::new(),
            reach: vec![false; p.n],
            stack: Vec::with_capacity(p.n),
            capable: Vec::with_capacity(p.n),
        }
    }

    fn replay(&mut self, prefix: &[Decision]) {
        for d in prefix {
            if d.include {
                self.st.include(self.p, d.attach, d.vertex);
            } else {
                let e = self.p.edge(d.attach, d.vertex);
                self.st.excluded[e] = true;
            }
            self.decisions.push(*d);
        }
    }

    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(TIME_CHECK_INTERVAL) && self.shared.start.elapsed() > self.shared.budget.time_cap {
            self.shared.stop.store(true, Ordering::Relaxed);
        }
        self.shared.stopped()
    }

    fn explore(&mut self, visitor: &mut dyn Visitor) -> Visit {
        if self.out_of_time() {
            return Visit::Stop;
        }
        if self.st.is_complete() {
            if self.split_depth.is_some() {
                self.splits.push(self.decisions.clone());
                return Visit::Continue;
            }
            if !self.shared.admit_tree() {
                return Visit::Stop;
            }
            return visitor.complete(&self.st);
        }
        let limit = visitor.limit();
        if self.st.closed_max > limit || !self.feasible(limit, visitor.prune_attachments()) {
            return Visit::Continue;
        }
        if self.split_depth == Some(self.decisions.len()) {
            self.splits.push(self.decisions.clone());
            return Visit::Continue;
        }
        let Some((a, w)) = self.choose() else {
            return Visit::Continue;
        };

        let saved = self.st.include(self.p, a, w);
        let mut flow = Visit::Continue;
        if self.st.closed_max <= visitor.limit() {
            self.decisions.push(Decision {
                attach: a,
                vertex: w,
                include: true,
            });
            flow = self.explore(visitor);
            self.decisions.pop();
        }
        self.st.undo_include(w, saved);
        if flow == Visit::Stop {
            return flow;
        }

        let e = self.p.edge(a, w);
        self.st.excluded[e] = true;
        self.decisions.push(Decision {
            attach: a,
            vertex: w,
            include: false,
        });
        let flow = self.explore(visitor);
        self.decisions.pop();
        self.st.excluded[e] = false;
        flow
    }

    /// Connectivity through non-excluded edges, then attachment feasibility.
    fn feasible(&mut self, limit: u32, attachments: bool) -> bool {
        let p = self.p;
        let st = &self.st;
        self.reach.clear();
        self.reach.extend_from_slice(&st.in_tree);
        self.stack.clear();
        self.stack.extend_from_slice(&st.members);
        let mut reached = st.members.len();
        while let Some(u) = self.stack.pop() {
            for &w in &p.adj[u] {
                if !self.reach[w] && !st.excluded[p.edge(u, w)] {
                    self.reach[w] = true;
                    reached += 1;
                    self.stack.push(w);
                }
            }
        }
        if reached < p.n {
            return false;
        }
        if !attachments || limit == UNBOUNDED {
            return true;
        }

        self.capable.clear();
        for &a in &st.members {
            if p.adj[a].iter().any(|&w| !st.in_tree[w] && !st.excluded[p.edge(a, w)]) {
                self.capable.push(a);
            }
        }
        for w in 0..p.n {
            if st.in_tree[w] {
                continue;
            }
            let inside = p.adj[w].iter().filter(|&&x| st.in_tree[x]);
            if inside.clone().next().is_none() {
                continue;
            }
            let ok = self.capable.iter().any(|&a| {
                let e = p.edge_id[w * p.n + a];
                let hop = if e != NO_EDGE && !st.excluded[e as usize] { 1 } else { 2 };
                inside.clone().all(|&x| hop + st.d(a, x) <= limit)
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Outside vertex with the most tree neighbours, attached where it keeps
    /// those neighbours closest.
    fn choose(&self) -> Option<(usize, usize)> {
        let p = self.p;
        let st = &self.st;
        let mut pick: Option<(usize, usize)> = None;
        for w in 0..p.n {
            if st.in_tree[w] {
                continue;
            }
            let mut inside = 0;
            let mut open = false;
            for &x in &p.adj[w] {
                if st.in_tree[x] {
                    inside += 1;
                    open |= !st.excluded[p.edge(w, x)];
                }
            }
            if open && pick.is_none_or(|(_, best)| inside > best) {
                pick = Some((w, inside));
            }
        }
        let (w, _) = pick?;
        p.adj[w]
            .iter()
            .filter(|&&a| st.in_tree[a] && !st.excluded[p.edge(w, a)])
            .map(|&a| {
                let reach = p.adj[w]
                    .iter()
                    .filter(|&&x| st.in_tree[x])
                    .map(|&x| st.d(a, x))
                    .max()
                    .unwrap_or(0);
                (reach, a)
            })
            .min()
            .map(|(_, a)| (a, w))
    }
}

struct Enumerate<F> {
    visit: F,
}

impl<F: FnMut(&SpanningTree) -> Visit> Visitor for Enumerate<F> {
    fn limit(&self) -> u32 {
        UNBOUNDED
    }
    fn prune_attachments(&self) -> bool {
        false
    }
    fn complete(&mut self, state: &State) -> Visit {
        let t = SpanningTree::from_parents_unchecked(0, state.parent.clone());
        (self.visit)(&t)
    }
}

struct Optimize<'s, 'b> {
    shared: &'s Shared<'b>,
    index: u32,
    local_best: u32,
    found: Option<Vec<usize>>,
}

impl Visitor for Optimize<'_, '_> {
    fn limit(&self) -> u32 {
        (self.local_best - 1).min(self.shared.limit_for(self.index))
    }
    fn prune_attachments(&self) -> bool {
        true
    }
    fn complete(&mut self, state: &State) -> Visit {
        if state.closed_max < self.local_best {
            self.local_best = state.closed_max;
            self.found = Some(state.parent.clone());
            self.shared.offer(state.closed_max, self.index);
        }
        Visit::Continue
    }
}

struct Decide {
    k: u32,
    found: Option<Vec<usize>>,
}

impl Visitor for Decide {
    fn limit(&self) -> u32 {
        self.k
    }
    fn prune_attachments(&self) -> bool {
        true
    }
    fn complete(&mut self, state: &State) -> Visit {
        self.found = Some(state.parent.clone());
        Visit::Stop
    }
}

/// Calls `visit` once for every spanning tree of `g` (rooted at vertex 0),
/// until the visitor stops or a budget cap is hit.
pub fn enumerate_spanning_trees<G, F>(g: &G, budget: &SolveBudget, visit: F) -> Result<EnumerationSummary, SolveError>
where
    G: Graph + ?Sized,
    F: FnMut(&SpanningTree) -> Visit,
{
    let p = Problem::new(g, budget)?;
    let shared = Shared::new(budget, UNBOUNDED);
    let mut search = Search::new(&p, &shared);
    let mut visitor = Enumerate { visit };
    let flow = search.explore(&mut visitor);
    Ok(EnumerationSummary {
        trees: shared.trees.load(Ordering::Relaxed),
        exhausted: flow == Visit::Continue && !shared.stopped(),
    })
}

/// Number of spanning trees, by enumeration.
pub fn count_spanning_trees<G: Graph + ?Sized>(g: &G, budget: &SolveBudget) -> Result<EnumerationSummary, SolveError> {
    enumerate_spanning_trees(g, budget, |_| Visit::Continue)
}

/// Minimum max-stretch over all spanning trees, single-threaded.
pub fn exact_tree_stretch<G: Graph + ?Sized>(g: &G, budget: &SolveBudget) -> Result<SolveResult, SolveError> {
    exact_tree_stretch_with_jobs(g, budget, 1)
}

/// Minimum max-stretch over all spanning trees. With `jobs > 1` the search
/// tree is split into prefixes that run on a thread pool; the returned tree
/// is the same as with one job.
pub fn exact_tree_stretch_with_jobs<G: Graph + ?Sized>(
    g: &G,
    budget: &SolveBudget,
    jobs: usize,
) -> Result<SolveResult, SolveError> {
    let p = Problem::new(g, budget)?;
    if p.edge_count() == 0 {
        return Err(SolveError::NoEdges);
    }
    let incumbent_parent = p.bfs_parents();
    let incumbent = SpanningTree::from_parents_unchecked(0, incumbent_parent);
    let incumbent_value = max_stretch(g, &incumbent).expect("bfs tree spans g").value as u32;
    let shared = Shared::new(budget, incumbent_value);

    let run = |index: usize, prefix: &[Decision]| -> Option<(u32, Vec<usize>)> {
        let mut search = Search::new(&p, &shared);
        search.replay(prefix);
        let mut visitor = Optimize {
            shared: &shared,
            index: index as u32,
            local_best: incumbent_value,
            found: None,
        };
        search.explore(&mut visitor);
        visitor.found.map(|parent| (visitor.local_best, parent))
    };

    let best = if jobs <= 1 {
        run(0, &[])
    } else {
        let prefixes = split_prefixes(&p, &shared, incumbent_value, jobs);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let results: Vec<Option<(u32, Vec<usize>)>> = pool.install(|| {
            prefixes
                .par_iter()
                .enumerate()
                .map(|(i, prefix)| run(i, prefix))
                .collect()
        });
        // earliest prefix wins ties, which reproduces sequential search order
        results
            .into_iter()
            .enumerate()
            .filter_map(|(i, r)| r.map(|(v, t)| (v, i, t)))
            .min_by_key(|&(v, i, _)| (v, i))
            .map(|(v, _, t)| (v, t))
    };

    let (optimum, optimal_tree) = match best {
        Some((value, parent)) => (value as usize, SpanningTree::from_parents_unchecked(0, parent)),
        None => (incumbent_value as usize, incumbent),
    };
    Ok(SolveResult {
        optimum,
        optimal_tree,
        trees_enumerated: shared.trees.load(Ordering::Relaxed),
        exhausted: !shared.stopped(),
    })
}

fn split_prefixes(p: &Problem, shared: &Shared<'_>, incumbent: u32, jobs: usize) -> Vec<Vec<Decision>> {
    let depth = (usize::BITS - (8 * jobs).leading_zeros()) as usize;
    let mut search = Search::new(p, shared);
    search.split_depth = Some(depth.max(3));
    let mut visitor = Decide {
        k: incumbent.saturating_sub(1),
        found: None,
    };
    search.explore(&mut visitor);
    search.splits
}

/// Whether some spanning tree of `g` has max-stretch at most `k`.
pub fn k_spanner_decision<G: Graph + ?Sized>(
    g: &G,
    k: usize,
    budget: &SolveBudget,
) -> Result<SpannerDecision, SolveError> {
    if k == 0 {
        return Err(SolveError::InvalidLimit);
    }
    let p = Problem::new(g, budget)?;
    let shared = Shared::new(budget, UNBOUNDED);
    let mut search = Search::new(&p, &shared);
    let mut visitor = Decide {
        k: k.min(UNBOUNDED as usize - 1) as u32,
        found: None,
    };
    let flow = search.explore(&mut visitor);
    Ok(match visitor.found {
        Some(parent) => SpannerDecision::Exists(SpanningTree::from_parents_unchecked(0, parent)),
        None if flow == Visit::Continue && !shared.stopped() => SpannerDecision::Infeasible,
        None => SpannerDecision::Indeterminate,
    })
}
