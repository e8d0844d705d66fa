//! Rooted spanning trees and the quantities defined on them: detours,
//! stretch, diameter, fundamental cycles, fundamental cuts and congestion.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, ProductGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a spanning tree of {vertices} vertices has {expected} edges, got {got}")]
    WrongEdgeCount {
        vertices: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge {0} is not an edge of the graph")]
    NotAGraphEdge(Edge),
    #[error("edge {0} is listed twice")]
    DuplicateEdge(Edge),
    #[error("edge set does not connect all vertices")]
    Disconnected,
    #[error("tree has {tree} vertices but the graph has {graph}")]
    SizeMismatch { tree: usize, graph: usize },
    #[error("edge {0} is a tree edge")]
    IsTreeEdge(Edge),
    #[error("edge {0} is not a tree edge")]
    NotTreeEdge(Edge),
    #[error("graph has no edges")]
    NoEdges,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Spanning tree stored as a parent array rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

/// JSON shape of a tree: `{"root":0,"edges":[[0,1],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDescriptor {
    pub root: usize,
    pub edges: Vec<Edge>,
}

impl SpanningTree {
    /// Builds a tree rooted at vertex 0 from an edge set of the host graph.
    pub fn from_edges<G: Graph + ?Sized>(g: &G, edges: &[Edge]) -> Result<Self, TreeError> {
        let n = g.vertex_count();
        let expected = n.saturating_sub(1);
        if edges.len() != expected {
            return Err(TreeError::WrongEdgeCount {
                vertices: n,
                expected,
                got: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &e in edges {
            let (u, v) = e.endpoints();
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                return Err(TreeError::NotAGraphEdge(e));
            }
            if !seen.insert(e) {
                return Err(TreeError::DuplicateEdge(e));
            }
            adj[u.0].push(v.0);
            adj[v.0].push(u.0);
        }
        if n == 0 {
            return Err(TreeError::Disconnected);
        }
        let (parent, depth) = bfs_parents(&adj, 0);
        if depth.contains(&usize::MAX) {
            return Err(TreeError::Disconnected);
        }
        Ok(SpanningTree { root: 0, parent, depth })
    }

    /// Builds a tree from a parent array; `parent[root] == root`.
    pub fn from_parents<G: Graph + ?Sized>(g: &G, root: VertexId, parent: Vec<usize>) -> Result<Self, TreeError> {
        let n = g.vertex_count();
        if parent.len() != n {
            return Err(TreeError::SizeMismatch {
                tree: parent.len(),
                graph: n,
            });
        }
        g.check_vertex(root)?;
        let edges: Vec<Edge> = parent
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != root.0)
            .map(|(v, &p)| {
                if p >= n || p == v {
                    Err(TreeError::Disconnected)
                } else {
                    Ok(Edge::from_indices(v, p))
                }
            })
            .collect::<Result<_, _>>()?;
        if parent[root.0] != root.0 {
            return Err(TreeError::Disconnected);
        }
        Ok(Self::from_edges(g, &edges)?.rerooted(root))
    }

    /// Trusted constructor for parent arrays produced inside the crate.
    pub(crate) fn from_parents_unchecked(root: usize, parent: Vec<usize>) -> Self {
        let n = parent.len();
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        for start in 0..n {
            let mut chain = Vec::new();
            let mut v = start;
            while depth[v] == usize::MAX {
                chain.push(v);
                v = parent[v];
            }
            let mut d = depth[v];
            for &w in chain.iter().rev() {
                d += 1;
                depth[w] = d;
            }
        }
        SpanningTree { root, parent, depth }
    }

    pub fn from_descriptor<G: Graph + ?Sized>(g: &G, desc: &TreeDescriptor) -> Result<Self, TreeError> {
        g.check_vertex(VertexId(desc.root))?;
        Ok(Self::from_edges(g, &desc.edges)?.rerooted(VertexId(desc.root)))
    }

    pub fn to_descriptor(&self) -> TreeDescriptor {
        TreeDescriptor {
            root: self.root,
            edges: self.edges(),
        }
    }

    /// Same edge set, rooted at `root`.
    pub fn rerooted(&self, root: VertexId) -> Self {
        let adj = self.adjacency();
        let (parent, depth) = bfs_parents(&adj, root.0);
        SpanningTree {
            root: root.0,
            parent,
            depth,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        VertexId(self.root)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        (v.0 != self.root).then(|| VertexId(self.parent[v.0]))
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    /// Tree edges, sorted canonically.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.parent.len())
            .filter(|&v| v != self.root)
            .map(|v| Edge::from_indices(v, self.parent[v]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let (u, v) = (e.lo().0, e.hi().0);
        u < self.parent.len()
            && v < self.parent.len()
            && ((u != self.root && self.parent[u] == v) || (v != self.root && self.parent[v] == u))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.parent.len()];
        for (v, &p) in self.parent.iter().enumerate() {
            if v != self.root {
                adj[v].push(p);
                adj[p].push(v);
            }
        }
        adj
    }

    fn check(&self, v: VertexId) -> Result<(), TreeError> {
        if v.0 < self.parent.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                index: v.0,
                count: self.parent.len(),
            }
            .into())
        }
    }

    pub(crate) fn lca_index(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v];
        }
        while u != v {
            u = self.parent[u];
            v = self.parent[v];
        }
        u
    }

    pub(crate) fn distance_index(&self, u: usize, v: usize) -> usize {
        let a = self.lca_index(u, v);
        self.depth[u] + self.depth[v] - 2 * self.depth[a]
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<usize, TreeError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.distance_index(u.0, v.0))
    }

    /// The unique `u`-`v` path in the tree, both endpoints included.
    pub fn path(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>, TreeError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.path_index(u.0, v.0).into_iter().map(VertexId).collect())
    }

    pub(crate) fn path_index(&self, u: usize, v: usize) -> Vec<usize> {
        let a = self.lca_index(u, v);
        let mut head = Vec::new();
        let mut x = u;
        while x != a {
            head.push(x);
            x = self.parent[x];
        }
        head.push(a);
        let mut tail = Vec::new();
        let mut y = v;
        while y != a {
            tail.push(y);
            y = self.parent[y];
        }
        head.extend(tail.into_iter().rev());
        head
    }

    /// Tree edges along the `u`-`v` path.
    pub fn path_edges(&self, u: VertexId, v: VertexId) -> Result<Vec<Edge>, TreeError> {
        let p = self.path(u, v)?;
        Ok(p.windows(2).map(|w| Edge::new(w[0], w[1])).collect())
    }

    /// Largest tree distance between any two vertices (double sweep).
    pub fn diameter(&self) -> usize {
        let adj = self.adjacency();
        let (far, _) = farthest(&adj, self.root);
        let (_, d) = farthest(&adj, far);
        d
    }

    /// Membership mask of the subtree hanging below `v`.
    pub(crate) fn subtree_mask(&self, v: usize) -> Vec<bool> {
        (0..self.parent.len())
            .map(|x| {
                let mut y = x;
                while self.depth[y] > self.depth[v] {
                    y = self.parent[y];
                }
                y == v
            })
            .collect()
    }

    fn ensure_spans<G: Graph + ?Sized>(&self, g: &G) -> Result<(), TreeError> {
        if self.vertex_count() != g.vertex_count() {
            return Err(TreeError::SizeMismatch {
                tree: self.vertex_count(),
                graph: g.vertex_count(),
            });
        }
        for e in self.edges() {
            if !g.has_edge(e.lo(), e.hi()) {
                return Err(TreeError::NotAGraphEdge(e));
            }
        }
        Ok(())
    }
}

fn bfs_parents(adj: &[Vec<usize>], root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    parent[root] = root;
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (parent, depth)
}

fn farthest(adj: &[Vec<usize>], src: usize) -> (usize, usize) {
    let (_, depth) = bfs_parents(adj, src);
    depth
        .iter()
        .enumerate()
        .map(|(v, &d)| (v, d))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .unwrap_or((src, 0))
}

/// Extremal detour of a tree: `value` is the max-stretch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchReport {
    pub value: usize,
    pub witness_edge: Edge,
    pub detour: Vec<VertexId>,
}

/// Extremal fundamental cut: `value` is the max congestion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongestionReport {
    pub value: usize,
    pub witness_tree_edge: Edge,
    pub cut: Vec<Edge>,
}

/// Largest tree distance between the endpoints of a graph edge. Ties go to
/// the smallest canonical edge.
pub fn max_stretch<G: Graph + ?Sized>(g: &G, t: &SpanningTree) -> Result<StretchReport, TreeError> {
    t.ensure_spans(g)?;
    let mut best: Option<(usize, Edge)> = None;
    for e in g.edges() {
        let d = t.distance_index(e.lo().0, e.hi().0);
        if best.is_none_or(|(b, _)| d > b) {
            best = Some((d, e));
        }
    }
    let (value, witness_edge) = best.ok_or(TreeError::NoEdges)?;
    Ok(StretchReport {
        value,
        witness_edge,
        detour: t.path(witness_edge.lo(), witness_edge.hi())?,
    })
}

/// The cycle closed by cotree edge `e` as a vertex sequence; the closing edge
/// joins the last vertex back to the first. Its length is `len()`.
pub fn fundamental_cycle<G: Graph + ?Sized>(g: &G, t: &SpanningTree, e: Edge) -> Result<Vec<VertexId>, TreeError> {
    g.check_vertex(e.hi())?;
    if !g.has_edge(e.lo(), e.hi()) {
        return Err(TreeError::NotAGraphEdge(e));
    }
    if t.contains_edge(e) {
        return Err(TreeError::IsTreeEdge(e));
    }
    t.path(e.lo(), e.hi())
}

fn tree_edge_child(t: &SpanningTree, e: Edge) -> Result<usize, TreeError> {
    let (u, v) = (e.lo().0, e.hi().0);
    if !t.contains_edge(e) {
        return Err(TreeError::NotTreeEdge(e));
    }
    Ok(if u != t.root && t.parent[u] == v { u } else { v })
}

/// Edges of `g` crossing the component of `t - e` that avoids the root.
/// The tree edge `e` itself is a member.
pub fn fundamental_cut<G: Graph + ?Sized>(g: &G, t: &SpanningTree, e: Edge) -> Result<Vec<Edge>, TreeError> {
    t.ensure_spans(g)?;
    let child = tree_edge_child(t, e)?;
    let side = t.subtree_mask(child);
    Ok(g.edges()
        .into_iter()
        .filter(|f| side[f.lo().0] != side[f.hi().0])
        .collect())
}

pub fn edge_congestion<G: Graph + ?Sized>(g: &G, t: &SpanningTree, e: Edge) -> Result<usize, TreeError> {
    fundamental_cut(g, t, e).map(|c| c.len())
}

pub fn max_congestion<G: Graph + ?Sized>(g: &G, t: &SpanningTree) -> Result<CongestionReport, TreeError> {
    t.ensure_spans(g)?;
    let mut best: Option<(usize, Edge, Vec<Edge>)> = None;
    for e in t.edges() {
        let cut = fundamental_cut(g, t, e)?;
        if best.as_ref().is_none_or(|(b, _, _)| cut.len() > *b) {
            best = Some((cut.len(), e, cut));
        }
    }
    let (value, witness_tree_edge, cut) = best.ok_or(TreeError::NoEdges)?;
    Ok(CongestionReport {
        value,
        witness_tree_edge,
        cut,
    })
}

/// Next vertex after `v` on the tree path towards its antipodal vertex.
pub fn successor(g: &ProductGraph, t: &SpanningTree, v: VertexId) -> Result<VertexId, TreeError> {
    t.ensure_spans(g)?;
    let f = g.antipodal(v)?;
    Ok(VertexId(successor_index(t, v.0, f.0)))
}

pub(crate) fn successor_index(t: &SpanningTree, v: usize, target: usize) -> usize {
    // first step of the path v -> target: up to the parent unless target is
    // inside v's subtree, in which case down towards it
    let a = t.lca_index(v, target);
    if a != v {
        return t.parent[v];
    }
    let mut y = target;
    while t.parent[y] != v {
        y = t.parent[y];
    }
    y
}

/// Uniform random spanning tree (Wilson's loop-erased random walks), rooted
/// at vertex 0. Panics if `g` is disconnected or empty.
pub fn random_spanning_tree<G: Graph + ?Sized, R: Rng + ?Sized>(g: &G, rng: &mut R) -> SpanningTree {
    let adj = g.adjacency();
    let n = adj.len();
    assert!(n > 0, "empty graph has no spanning tree");
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    in_tree[0] = true;
    next[0] = 0;
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            let nbrs = &adj[u];
            assert!(!nbrs.is_empty(), "graph is disconnected");
            next[u] = nbrs[rng.gen_range(0..nbrs.len())];
            u = next[u];
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    SpanningTree::from_parents_unchecked(0, next)
}
