//! Oracles shared by the integration tests. Nothing here calls into the
//! search code in `treestretch::solver`.
#![allow(dead_code)]

use std::collections::VecDeque;

use proptest::prelude::*;
use treestretch::{EdgeListGraph, Graph};

/// Number of spanning trees from the Matrix-Tree theorem: determinant of the
/// Laplacian with row and column 0 removed, by fraction-free elimination.
pub fn kirchhoff_count<G: Graph + ?Sized>(g: &G) -> i128 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for e in g.edges() {
        let (u, v) = (e.lo().0, e.hi().0);
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    let mut m: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss_det(&mut m)
}

fn bareiss_det(m: &mut [Vec<i128>]) -> i128 {
    let k = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if m[i][i] == 0 {
            match (i + 1..k).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[k - 1][k - 1]
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn tree_distances(n: usize, adj: &[Vec<usize>], src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; n];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Every (n-1)-edge subset that is acyclic, checked with union-find.
pub fn brute_force_trees<G: Graph + ?Sized>(g: &G) -> Vec<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo().0, e.hi().0)).collect();
    let m = edges.len();
    assert!(m <= 20, "brute force limited to 20 edges");
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let mut acyclic = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    acyclic = false;
                    break;
                }
                parent[a] = b;
            }
        }
        if acyclic {
            out.push(
                edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect(),
            );
        }
    }
    out
}

/// Minimum max-stretch over all spanning trees by exhaustive subsets.
pub fn brute_force_tree_stretch<G: Graph + ?Sized>(g: &G) -> usize {
    let n = g.vertex_count();
    brute_force_trees(g)
        .iter()
        .map(|tree| {
            let mut adj = vec![Vec::new(); n];
            for &(u, v) in tree {
                adj[u].push(v);
                adj[v].push(u);
            }
            g.edges()
                .iter()
                .map(|e| tree_distances(n, &adj, e.lo().0)[e.hi().0])
                .max()
                .unwrap_or(0)
        })
        .min()
        .expect("connected graph has a spanning tree")
}

/// Connected graphs on 2..=max_n vertices: a random tree plus extra edges.
pub fn connected_graph(max_n: usize, max_extra: usize) -> impl Strategy<Value = EdgeListGraph> {
    (2..=max_n)
        .prop_flat_map(move |n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let extra = proptest::collection::vec((0..n, 0..n), 0..=max_extra);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            for (u, v) in extra {
                let e = (u.min(v), u.max(v));
                if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
                    edges.push(e);
                }
            }
            EdgeListGraph::new(n, &edges).expect("valid edges")
        })
}
