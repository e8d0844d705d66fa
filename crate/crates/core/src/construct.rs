//! Optimal spanning trees for Hamming graphs and grids, and the closed-form
//! tree-stretch values they attain.
//!
//! Both are recursive constructions, written here as parent rules on
//! coordinates:
//!
//! * Hamming: the smallest factor is the outermost star. A vertex's parent
//!   zeroes its innermost nonzero coordinate, so the center is `(0,..,0)` and
//!   every vertex sits at depth equal to its number of nonzero coordinates.
//! * Grid: the smallest factor gives the innermost paths, the largest carries
//!   the outermost central path. A vertex's parent steps one unit towards the
//!   center `c_i = ceil(n_i / 2)` along the innermost axis where it differs
//!   from the center.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, ProductGraph, VertexId};
use crate::tree::SpanningTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hamming,
    Grid,
}

impl Family {
    pub fn graph(self, dims: &[usize]) -> Result<ProductGraph, GraphError> {
        match self {
            Family::Hamming => ProductGraph::hamming(dims),
            Family::Grid => ProductGraph::grid(dims),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Hamming => "hamming",
            Family::Grid => "grid",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hamming" => Ok(Family::Hamming),
            "grid" => Ok(Family::Grid),
            other => Err(format!("unknown family {other:?}, expected hamming or grid")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    /// The host graph, factors in the caller's order.
    pub graph: ProductGraph,
    pub tree: SpanningTree,
    pub center: VertexId,
    pub predicted: usize,
    /// Axes in ascending order of size (stable): `dimension_order[k]` is the
    /// caller's axis index of the `k`-th smallest factor.
    pub dimension_order: Vec<usize>,
}

fn validate(dims: &[usize]) -> Result<(), GraphError> {
    if dims.is_empty() {
        return Err(GraphError::NoFactors);
    }
    match dims.iter().position(|&n| n < 2) {
        Some(index) => Err(GraphError::FactorTooSmall {
            index,
            size: dims[index],
        }),
        None => Ok(()),
    }
}

fn ascending_order(dims: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dims.len()).collect();
    order.sort_by_key(|&i| dims[i]);
    order
}

/// Closed-form tree-stretch of `K_{n_1} x .. x K_{n_d}` or
/// `P_{n_1} x .. x P_{n_d}`; `dims` may be in any order.
pub fn predicted_stretch(family: Family, dims: &[usize]) -> Result<usize, GraphError> {
    validate(dims)?;
    let mut sorted = dims.to_vec();
    sorted.sort_unstable();
    let d = sorted.len();
    Ok(match family {
        Family::Hamming if sorted[0] == 2 => 2 * d - 1,
        Family::Hamming => 2 * d,
        Family::Grid => 2 * sorted[..d - 1].iter().map(|n| n / 2).sum::<usize>() + 1,
    })
}

/// Star-of-stars tree of the Hamming graph on `dims`.
pub fn hamming_optimal_tree(dims: &[usize]) -> Result<ConstructionResult, GraphError> {
    validate(dims)?;
    let graph = ProductGraph::hamming(dims)?;
    let order = ascending_order(dims);
    let n = graph.vertex_count();
    let mut parent = vec![0; n];
    for (v, p) in parent.iter_mut().enumerate() {
        let mut c = graph.coord_entries(v);
        if let Some(&axis) = order.iter().rev().find(|&&axis| c[axis] != 0) {
            c[axis] = 0;
            *p = graph.index_of_entries(&c);
        }
    }
    let tree = SpanningTree::from_parents_unchecked(0, parent);
    Ok(ConstructionResult {
        predicted: predicted_stretch(Family::Hamming, dims)?,
        graph,
        tree,
        center: VertexId(0),
        dimension_order: order,
    })
}

/// Nested central-path tree of the grid on `dims`.
pub fn grid_optimal_tree(dims: &[usize]) -> Result<ConstructionResult, GraphError> {
    validate(dims)?;
    let graph = ProductGraph::grid(dims)?;
    let order = ascending_order(dims);
    let center_coord: Vec<usize> = dims.iter().map(|&n| n.div_ceil(2)).collect();
    let root = graph.index_of_entries(&center_coord);
    let n = graph.vertex_count();
    let mut parent = vec![root; n];
    for (v, p) in parent.iter_mut().enumerate() {
        let mut c = graph.coord_entries(v);
        if let Some(&axis) = order.iter().find(|&&axis| c[axis] != center_coord[axis]) {
            if c[axis] < center_coord[axis] {
                c[axis] += 1;
            } else {
                c[axis] -= 1;
            }
            *p = graph.index_of_entries(&c);
        }
    }
    let tree = SpanningTree::from_parents_unchecked(root, parent);
    Ok(ConstructionResult {
        predicted: predicted_stretch(Family::Grid, dims)?,
        graph,
        tree,
        center: VertexId(root),
        dimension_order: order,
    })
}

pub fn optimal_tree(family: Family, dims: &[usize]) -> Result<ConstructionResult, GraphError> {
    match family {
        Family::Hamming => hamming_optimal_tree(dims),
        Family::Grid => grid_optimal_tree(dims),
    }
}

/// Bound on every vertex's tree distance to the construction center.
pub fn center_radius_bound(family: Family, dims: &[usize]) -> usize {
    match family {
        Family::Hamming => dims.len(),
        Family::Grid => dims.iter().map(|n| n / 2).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Coord;
    use crate::tree::max_stretch;

    #[test]
    fn predicted_values() {
        assert_eq!(predicted_stretch(Family::Hamming, &[2, 3]).unwrap(), 3);
        assert_eq!(predicted_stretch(Family::Hamming, &[3, 3]).unwrap(), 4);
        assert_eq!(predicted_stretch(Family::Hamming, &[2]).unwrap(), 1);
        assert_eq!(predicted_stretch(Family::Grid, &[3, 4, 4]).unwrap(), 7);
        assert_eq!(predicted_stretch(Family::Grid, &[2, 9]).unwrap(), 3);
        assert_eq!(predicted_stretch(Family::Grid, &[9, 2]).unwrap(), 3);
        assert_eq!(predicted_stretch(Family::Grid, &[7]).unwrap(), 1);
        assert!(predicted_stretch(Family::Grid, &[1, 4]).is_err());
        assert!(predicted_stretch(Family::Hamming, &[]).is_err());
    }

    #[test]
    fn k2_is_a_single_edge() {
        let r = hamming_optimal_tree(&[2]).unwrap();
        assert_eq!(r.tree.edges().len(), 1);
        assert_eq!(max_stretch(&r.graph, &r.tree).unwrap().value, 1);
    }

    #[test]
    fn k4_k5_is_row_stars_on_a_column_star() {
        let r = hamming_optimal_tree(&[4, 5]).unwrap();
        let g = &r.graph;
        let id = |a, b| g.vertex_of(&Coord(vec![a, b])).unwrap();
        // row stars hang off column 0, column 0 is a star on (0,0)
        for i in 0..4 {
            for j in 1..5 {
                assert_eq!(r.tree.parent(id(i, j)), Some(id(i, 0)));
            }
            if i > 0 {
                assert_eq!(r.tree.parent(id(i, 0)), Some(id(0, 0)));
            }
        }
        assert_eq!(r.tree.edges().len(), 19);
        assert_eq!(max_stretch(g, &r.tree).unwrap().value, 4);
        assert_eq!(r.tree.diameter(), 4);
        assert_eq!(r.tree.distance(id(1, 4), id(2, 4)).unwrap(), 4);
    }

    #[test]
    fn double_star_when_smallest_factor_is_two() {
        let r = hamming_optimal_tree(&[5, 2]).unwrap();
        assert_eq!(r.dimension_order, vec![1, 0]);
        assert_eq!(r.tree.diameter(), 3);
        assert_eq!(max_stretch(&r.graph, &r.tree).unwrap().value, 3);
    }

    #[test]
    fn q3_stretch() {
        let r = hamming_optimal_tree(&[2, 2, 2]).unwrap();
        assert_eq!(max_stretch(&r.graph, &r.tree).unwrap().value, 5);
    }

    #[test]
    fn p4_p5_has_central_row_and_full_columns() {
        let r = grid_optimal_tree(&[4, 5]).unwrap();
        let g = &r.graph;
        assert_eq!(g.coord_of(r.center).unwrap(), Coord(vec![2, 3]));
        let id = |a, b| g.vertex_of(&Coord(vec![a, b])).unwrap();
        // every column is in the tree; row 2 is the central path
        for j in 1..=5 {
            for i in 1..4 {
                assert!(r.tree.contains_edge(crate::graph::Edge::new(id(i, j), id(i + 1, j))));
            }
        }
        for j in 1..5 {
            assert!(r.tree.contains_edge(crate::graph::Edge::new(id(2, j), id(2, j + 1))));
        }
        assert_eq!(max_stretch(g, &r.tree).unwrap().value, 5);
    }

    #[test]
    fn p3_p4_p4_stretch() {
        let r = grid_optimal_tree(&[3, 4, 4]).unwrap();
        assert_eq!(r.graph.vertex_count(), 48);
        assert_eq!(max_stretch(&r.graph, &r.tree).unwrap().value, 7);
    }

    #[test]
    fn c4_grid_is_a_path() {
        let r = grid_optimal_tree(&[2, 2]).unwrap();
        assert_eq!(max_stretch(&r.graph, &r.tree).unwrap().value, 3);
        assert_eq!(r.tree.diameter(), 3);
    }

    #[test]
    fn odd_path_center_is_ceiling() {
        let r = grid_optimal_tree(&[5]).unwrap();
        assert_eq!(r.graph.coord_of(r.center).unwrap(), Coord(vec![3]));
        let far = (0..5).map(|v| r.tree.distance(VertexId(v), r.center).unwrap()).max();
        assert_eq!(far, Some(2));
    }

    #[test]
    fn rejects_small_factors() {
        assert!(hamming_optimal_tree(&[3, 1]).is_err());
        assert!(grid_optimal_tree(&[]).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("Grid".parse::<Family>().unwrap(), Family::Grid);
        assert!("torus".parse::<Family>().is_err());
    }
}
