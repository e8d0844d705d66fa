//! Tree-stretch of Hamming graphs and grids: product graph models, spanning
//! tree measurements, the optimal constructions, lower-bound certificates and
//! an exact branch-and-bound solver for small graphs.

pub mod construct;
pub mod dot;
pub mod graph;
pub mod solver;
pub mod tree;
pub mod verify;

pub use construct::{
    center_radius_bound, grid_optimal_tree, hamming_optimal_tree, optimal_tree, predicted_stretch, ConstructionResult,
    Family,
};
pub use graph::{
    parse_factor_spec, Coord, Edge, EdgeListGraph, FactorKind, FactorSpec, Graph, GraphDescriptor, GraphError,
    ProductGraph, VertexId,
};
pub use solver::{
    count_spanning_trees, enumerate_spanning_trees, exact_tree_stretch, exact_tree_stretch_with_jobs,
    k_spanner_decision, EnumerationSummary, SolveBudget, SolveError, SolveReport, SolveResult, SpannerDecision, Visit,
};
pub use tree::{
    edge_congestion, fundamental_cut, fundamental_cycle, max_congestion, max_stretch, random_spanning_tree, successor,
    CongestionReport, SpanningTree, StretchReport, TreeDescriptor, TreeError,
};
pub use verify::{
    check_certificate, duality_check, hamming_bound, hamming_witness, mutual_successor_edge, CertificateFault,
    DualityReport, VerifyError, WitnessCertificate,
};
