//! Cartesian products of complete graphs and paths.
//!
//! Vertices are addressed two ways: by a dense [`VertexId`] in
//! `0..vertex_count`, and by a [`Coord`] holding one entry per factor.
//! Complete factors use coordinates `0..n`, path factors use `1..=n`.
//! The codec between the two is mixed-radix with factor 0 as the most
//! significant digit, so `(x_0, .., x_{d-1})` maps to
//! `sum_i (x_i - base_i) * stride_i` with `stride_{d-1} = 1`.
//!
//! Adjacency is never stored for product graphs; it is derived from the
//! coordinates on demand. [`EdgeListGraph`] covers arbitrary explicit graphs
//! for the solver and the file formats.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a product graph needs at least one factor")]
    NoFactors,
    #[error("factor {index} has size {size}, sizes must be at least 2")]
    FactorTooSmall { index: usize, size: usize },
    #[error("vertex count overflows usize")]
    TooManyVertices,
    #[error("vertex {index} is out of range for a graph on {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("coordinate has {got} entries, the graph has {expected} factors")]
    CoordArity { expected: usize, got: usize },
    #[error("coordinate entry {value} is outside factor {axis} ({spec})")]
    CoordOutOfRange {
        axis: usize,
        value: usize,
        spec: FactorSpec,
    },
    #[error("operation requires a Hamming graph (complete factors only), got {0}")]
    NotHamming(String),
    #[error("operation requires a grid (path factors only), got {0}")]
    NotGrid(String),
    #[error("axis {axis} is out of range for a {dims}-dimensional graph")]
    AxisOutOfRange { axis: usize, dims: usize },
    #[error("corner needs {expected} extreme values (one per other axis), got {got}")]
    CornerArity { expected: usize, got: usize },
    #[error("corner value {value} on axis {axis} is not an extreme (1 or {size})")]
    CornerNotExtreme { axis: usize, value: usize, size: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("malformed factor spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
}

/// Dense vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge in canonical form: `lo < hi`.
///
/// Ordering is lexicographic on `(lo, hi)`, which is the tie-break used by
/// every argmax report in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a self-loop.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert_ne!(u, v, "self-loop is not an edge");
        if u < v {
            Edge { lo: u, hi: v }
        } else {
            Edge { lo: v, hi: u }
        }
    }

    pub fn from_indices(u: usize, v: usize) -> Self {
        Edge::new(VertexId(u), VertexId(v))
    }

    pub fn lo(self) -> VertexId {
        self.lo
    }

    pub fn hi(self) -> VertexId {
        self.hi
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.0, self.hi.0].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [u, v] = <[usize; 2]>::deserialize(d)?;
        if u == v {
            return Err(serde::de::Error::custom(format!("self-loop on vertex {u}")));
        }
        Ok(Edge::from_indices(u, v))
    }
}

/// Read-only view of a simple undirected graph on vertices `0..vertex_count`.
pub trait Graph {
    fn vertex_count(&self) -> usize;

    /// Sorted, duplicate-free neighbors. Panics if `v` is out of range.
    fn neighbors_of(&self, v: VertexId) -> Vec<VertexId>;

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool;

    /// All edges, sorted canonically.
    fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            let u = VertexId(u);
            for v in self.neighbors_of(u) {
                if u < v {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.neighbors_of(VertexId(v)).len())
            .sum::<usize>()
            / 2
    }

    /// Adjacency lists as plain indices, for the hot loops.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|v| {
                self.neighbors_of(VertexId(v))
                    .into_iter()
                    .map(VertexId::index)
                    .collect()
            })
            .collect()
    }

    fn vertex_label(&self, v: VertexId) -> String {
        v.to_string()
    }

    /// Optional 2-D drawing position for exporters.
    fn layout_position(&self, _v: VertexId) -> Option<(f64, f64)> {
        None
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                index: v.0,
                count: self.vertex_count(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Complete,
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorSpec {
    pub kind: FactorKind,
    #[serde(rename = "n")]
    pub size: usize,
}

impl FactorSpec {
    pub fn complete(size: usize) -> Self {
        FactorSpec {
            kind: FactorKind::Complete,
            size,
        }
    }

    pub fn path(size: usize) -> Self {
        FactorSpec {
            kind: FactorKind::Path,
            size,
        }
    }

    /// Smallest coordinate value: 0 for complete factors, 1 for paths.
    pub fn base(self) -> usize {
        match self.kind {
            FactorKind::Complete => 0,
            FactorKind::Path => 1,
        }
    }

    /// Coordinate range of this factor.
    pub fn range(self) -> std::ops::Range<usize> {
        self.base()..self.base() + self.size
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Complete => write!(f, "K{}", self.size),
            FactorKind::Path => write!(f, "P{}", self.size),
        }
    }
}

/// Parses the `K4xK5` / `P3xP4xP4` notation into factors.
pub fn parse_factor_spec(spec: &str) -> Result<Vec<FactorSpec>, GraphError> {
    let bad = |reason: &str| GraphError::BadSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = spec.trim();
    if trimmed.is_empty() {
        return Err(bad("empty"));
    }
    trimmed
        .split(['x', 'X'])
        .map(|tok| {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let kind = match chars.next() {
                Some('K') | Some('k') => FactorKind::Complete,
                Some('P') | Some('p') => FactorKind::Path,
                _ => return Err(bad("each factor must start with K or P")),
            };
            let size: usize = chars
                .as_str()
                .parse()
                .map_err(|_| bad("factor size must be a positive integer"))?;
            Ok(FactorSpec { kind, size })
        })
        .collect()
}

/// Vertex coordinates: 0-based on complete factors, 1-based on path factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coord(pub Vec<usize>);

impl Coord {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Coord {
    fn from(v: Vec<usize>) -> Self {
        Coord(v)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ProductDescriptor {
    factors: Vec<FactorSpec>,
}

/// Cartesian product `F_0 x F_1 x .. x F_{d-1}` of complete and path factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProductDescriptor", into = "ProductDescriptor")]
pub struct ProductGraph {
    factors: Vec<FactorSpec>,
    strides: Vec<usize>,
    vertex_count: usize,
}

impl TryFrom<ProductDescriptor> for ProductGraph {
    type Error = GraphError;

    fn try_from(d: ProductDescriptor) -> Result<Self, Self::Error> {
        ProductGraph::new(d.factors)
    }
}

impl From<ProductGraph> for ProductDescriptor {
    fn from(g: ProductGraph) -> Self {
        ProductDescriptor { factors: g.factors }
    }
}

impl ProductGraph {
    pub fn new(factors: Vec<FactorSpec>) -> Result<Self, GraphError> {
        if factors.is_empty() {
            return Err(GraphError::NoFactors);
        }
        if let Some((index, f)) = factors.iter().enumerate().find(|(_, f)| f.size < 2) {
            return Err(GraphError::FactorTooSmall { index, size: f.size });
        }
        let d = factors.len();
        let mut strides = vec![1usize; d];
        for i in (0..d - 1).rev() {
            strides[i] = strides[i + 1]
                .checked_mul(factors[i + 1].size)
                .ok_or(GraphError::TooManyVertices)?;
        }
        let vertex_count = strides[0]
            .checked_mul(factors[0].size)
            .ok_or(GraphError::TooManyVertices)?;
        Ok(ProductGraph {
            factors,
            strides,
            vertex_count,
        })
    }

    /// `K_{n_0} x .. x K_{n_{d-1}}`.
    pub fn hamming(dims: &[usize]) -> Result<Self, GraphError> {
        Self::new(dims.iter().map(|&n| FactorSpec::complete(n)).collect())
    }

    /// `P_{n_0} x .. x P_{n_{d-1}}`.
    pub fn grid(dims: &[usize]) -> Result<Self, GraphError> {
        Self::new(dims.iter().map(|&n| FactorSpec::path(n)).collect())
    }

    /// The `d`-cube `Q_d`.
    pub fn hypercube(d: usize) -> Result<Self, GraphError> {
        Self::hamming(&vec![2; d])
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.size).collect()
    }

    pub fn is_hamming(&self) -> bool {
        self.factors.iter().all(|f| f.kind == FactorKind::Complete)
    }

    pub fn is_grid(&self) -> bool {
        self.factors.iter().all(|f| f.kind == FactorKind::Path)
    }

    pub fn coord_of(&self, v: VertexId) -> Result<Coord, GraphError> {
        self.check_vertex(v)?;
        Ok(Coord(self.coord_entries(v.0)))
    }

    pub fn vertex_of(&self, c: &Coord) -> Result<VertexId, GraphError> {
        if c.0.len() != self.dimension() {
            return Err(GraphError::CoordArity {
                expected: self.dimension(),
                got: c.0.len(),
            });
        }
        let mut index = 0;
        for (axis, (&x, f)) in c.0.iter().zip(&self.factors).enumerate() {
            if !f.range().contains(&x) {
                return Err(GraphError::CoordOutOfRange {
                    axis,
                    value: x,
                    spec: *f,
                });
            }
            index += (x - f.base()) * self.strides[axis];
        }
        Ok(VertexId(index))
    }

    /// Unchecked decode for in-range indices.
    pub(crate) fn coord_entries(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dimension()];
        for (axis, f) in self.factors.iter().enumerate() {
            let digit = index / self.strides[axis];
            index %= self.strides[axis];
            out[axis] = digit + f.base();
        }
        out
    }

    /// Unchecked encode for in-range coordinates.
    pub(crate) fn index_of_entries(&self, entries: &[usize]) -> usize {
        entries
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&x, f), &s)| (x - f.base()) * s)
            .sum()
    }

    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        self.check_vertex(v)?;
        Ok(self.neighbors_of(v))
    }

    /// Coordinate-wise `+1 mod n_i`. Defined on Hamming graphs only; not an
    /// involution unless every factor is `K_2`.
    pub fn antipodal(&self, v: VertexId) -> Result<VertexId, GraphError> {
        if !self.is_hamming() {
            return Err(GraphError::NotHamming(self.to_string()));
        }
        self.check_vertex(v)?;
        Ok(VertexId(self.antipodal_index(v.0)))
    }

    pub(crate) fn antipodal_index(&self, v: usize) -> usize {
        let mut c = self.coord_entries(v);
        for (x, f) in c.iter_mut().zip(&self.factors) {
            *x = (*x + 1) % f.size;
        }
        self.index_of_entries(&c)
    }

    /// Boundary path along `axis` (0-based) with every other coordinate fixed
    /// at an extreme. `corner` lists those extremes for the remaining axes in
    /// increasing axis order, each either 1 or `n_j`.
    pub fn boundary_path(&self, axis: usize, corner: &[usize]) -> Result<Vec<VertexId>, GraphError> {
        if !self.is_grid() {
            return Err(GraphError::NotGrid(self.to_string()));
        }
        let d = self.dimension();
        if axis >= d {
            return Err(GraphError::AxisOutOfRange { axis, dims: d });
        }
        if corner.len() != d - 1 {
            return Err(GraphError::CornerArity {
                expected: d - 1,
                got: corner.len(),
            });
        }
        let mut fixed = Vec::with_capacity(d);
        let mut rest = corner.iter();
        for (j, f) in self.factors.iter().enumerate() {
            if j == axis {
                fixed.push(1);
                continue;
            }
            let &value = rest.next().expect("arity checked");
            if value != 1 && value != f.size {
                return Err(GraphError::CornerNotExtreme {
                    axis: j,
                    value,
                    size: f.size,
                });
            }
            fixed.push(value);
        }
        Ok((1..=self.factors[axis].size)
            .map(|x| {
                fixed[axis] = x;
                VertexId(self.index_of_entries(&fixed))
            })
            .collect())
    }

    /// Corner of the antipodal boundary path: every extreme flipped.
    pub fn antipodal_corner(&self, axis: usize, corner: &[usize]) -> Vec<usize> {
        let sizes = self
            .factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != axis)
            .map(|(_, f)| f.size);
        corner
            .iter()
            .zip(sizes)
            .map(|(&a, n)| if a == 1 { n } else { 1 })
            .collect()
    }

    /// All `2^{d-1}` boundary paths along `axis`, corners in binary order.
    pub fn boundary_paths(&self, axis: usize) -> Result<Vec<Vec<VertexId>>, GraphError> {
        let d = self.dimension();
        if axis >= d {
            return Err(GraphError::AxisOutOfRange { axis, dims: d });
        }
        let others: Vec<usize> = (0..d).filter(|&j| j != axis).map(|j| self.factors[j].size).collect();
        (0..1usize << others.len())
            .map(|mask| {
                let corner: Vec<usize> = others
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| if mask >> (others.len() - 1 - k) & 1 == 1 { n } else { 1 })
                    .collect();
                self.boundary_path(axis, &corner)
            })
            .collect()
    }

    /// Breadth-first distances from `src` in the graph itself.
    pub fn bfs_distances(&self, src: VertexId) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(src)?;
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut queue = std::collections::VecDeque::from([src.0]);
        dist[src.0] = 0;
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors_of(VertexId(u)) {
                if dist[w.0] == usize::MAX {
                    dist[w.0] = dist[u] + 1;
                    queue.push_back(w.0);
                }
            }
        }
        Ok(dist)
    }

    /// Explicit copy of this graph.
    pub fn to_edge_list(&self) -> EdgeListGraph {
        EdgeListGraph {
            adjacency: self.adjacency(),
        }
    }
}

impl Graph for ProductGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn neighbors_of(&self, v: VertexId) -> Vec<VertexId> {
        assert!(v.0 < self.vertex_count, "vertex {v} out of range");
        let c = self.coord_entries(v.0);
        let mut out = Vec::new();
        for (axis, f) in self.factors.iter().enumerate() {
            let x = c[axis];
            let stride = self.strides[axis];
            let here = v.0 - (x - f.base()) * stride;
            match f.kind {
                FactorKind::Complete => {
                    for y in f.range().filter(|&y| y != x) {
                        out.push(VertexId(here + (y - f.base()) * stride));
                    }
                }
                FactorKind::Path => {
                    if x > f.base() {
                        out.push(VertexId(v.0 - stride));
                    }
                    if x + 1 < f.base() + f.size {
                        out.push(VertexId(v.0 + stride));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u.0 >= self.vertex_count || v.0 >= self.vertex_count || u == v {
            return false;
        }
        let a = self.coord_entries(u.0);
        let b = self.coord_entries(v.0);
        let mut differing = a.iter().zip(&b).enumerate().filter(|(_, (x, y))| x != y);
        let Some((axis, (&x, &y))) = differing.next() else {
            return false;
        };
        if differing.next().is_some() {
            return false;
        }
        match self.factors[axis].kind {
            FactorKind::Complete => true,
            FactorKind::Path => x.abs_diff(y) == 1,
        }
    }

    fn edge_count(&self) -> usize {
        // Each factor contributes |E(F_i)| * (vertex_count / n_i).
        self.factors
            .iter()
            .map(|f| {
                let factor_edges = match f.kind {
                    FactorKind::Complete => f.size * (f.size - 1) / 2,
                    FactorKind::Path => f.size - 1,
                };
                factor_edges * (self.vertex_count / f.size)
            })
            .sum()
    }

    fn vertex_label(&self, v: VertexId) -> String {
        Coord(self.coord_entries(v.0)).to_string()
    }

    fn layout_position(&self, v: VertexId) -> Option<(f64, f64)> {
        let c = self.coord_entries(v.0);
        let x = |i: usize| c[i] as f64;
        match c.len() {
            1 => Some((x(0), 0.0)),
            // rows top to bottom, columns left to right
            2 => Some((x(1), -x(0))),
            // copies of the 2-D layer laid side by side, first axis drawn diagonally
            3 => {
                let n1 = self.factors[1].size as f64;
                Some((x(2) * (n1 + 2.0) + 0.5 * x(0), x(1) + 0.5 * x(0)))
            }
            _ => None,
        }
    }
}

impl fmt::Display for ProductGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for ProductGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProductGraph::new(parse_factor_spec(s)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct EdgeListDescriptor {
    n: usize,
    edges: Vec<Edge>,
}

/// Explicit simple graph given by an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EdgeListDescriptor", into = "EdgeListDescriptor")]
pub struct EdgeListGraph {
    adjacency: Vec<Vec<usize>>,
}

impl TryFrom<EdgeListDescriptor> for EdgeListGraph {
    type Error = GraphError;

    fn try_from(d: EdgeListDescriptor) -> Result<Self, Self::Error> {
        let pairs: Vec<(usize, usize)> = d.edges.iter().map(|e| (e.lo.0, e.hi.0)).collect();
        EdgeListGraph::new(d.n, &pairs)
    }
}

impl From<EdgeListGraph> for EdgeListDescriptor {
    fn from(g: EdgeListGraph) -> Self {
        EdgeListDescriptor {
            n: g.adjacency.len(),
            edges: g.edges(),
        }
    }
}

impl EdgeListGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { index: x, count: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(EdgeListGraph { adjacency })
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(n, &edges)
    }
}

impl Graph for EdgeListGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors_of(&self, v: VertexId) -> Vec<VertexId> {
        self.adjacency[v.0].iter().copied().map(VertexId).collect()
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u.0 < self.adjacency.len() && self.adjacency[u.0].binary_search(&v.0).is_ok()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.adjacency.clone()
    }
}

/// Either accepted graph file shape:
/// `{"factors":[{"kind":"complete","n":4},..]}` or `{"n":5,"edges":[[0,1],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphDescriptor {
    Product(ProductGraph),
    EdgeList(EdgeListGraph),
}

impl GraphDescriptor {
    pub fn as_graph(&self) -> &dyn Graph {
        match self {
            GraphDescriptor::Product(g) => g,
            GraphDescriptor::EdgeList(g) => g,
        }
    }

    pub fn to_edge_list(&self) -> EdgeListGraph {
        match self {
            GraphDescriptor::Product(g) => g.to_edge_list(),
            GraphDescriptor::EdgeList(g) => g.clone(),
        }
    }
}

impl<G: Graph + ?Sized> Graph for &G {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }
    fn neighbors_of(&self, v: VertexId) -> Vec<VertexId> {
        (**self).neighbors_of(v)
    }
    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (**self).has_edge(u, v)
    }
    fn edges(&self) -> Vec<Edge> {
        (**self).edges()
    }
    fn edge_count(&self) -> usize {
        (**self).edge_count()
    }
    fn adjacency(&self) -> Vec<Vec<usize>> {
        (**self).adjacency()
    }
    fn vertex_label(&self, v: VertexId) -> String {
        (**self).vertex_label(v)
    }
    fn layout_position(&self, v: VertexId) -> Option<(f64, f64)> {
        (**self).layout_position(v)
    }
}
