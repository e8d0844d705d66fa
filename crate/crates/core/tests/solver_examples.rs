use std::time::Duration;

use treestretch::*;

fn twenty() -> SolveBudget {
    SolveBudget {
        max_vertices: 20,
        ..SolveBudget::default()
    }
}

fn decide(family: Family, dims: &[usize], k: usize) -> SpannerDecision {
    let g = family.graph(dims).unwrap();
    let d = k_spanner_decision(&g, k, &twenty()).unwrap();
    if let SpannerDecision::Exists(t) = &d {
        assert!(max_stretch(&g, t).unwrap().value <= k);
    }
    d
}

#[test]
fn k4_k5_threshold() {
    assert!(decide(Family::Hamming, &[4, 5], 4).is_yes());
    assert_eq!(decide(Family::Hamming, &[4, 5], 3), SpannerDecision::Infeasible);
}

#[test]
fn p4_p5_threshold() {
    assert!(decide(Family::Grid, &[4, 5], 5).is_yes());
    assert_eq!(decide(Family::Grid, &[4, 5], 4), SpannerDecision::Infeasible);
}

#[test]
fn listed_optima() {
    let k3 = EdgeListGraph::complete(3).unwrap();
    assert_eq!(exact_tree_stretch(&k3, &SolveBudget::default()).unwrap().optimum, 2);
    for (family, dims, value) in [
        (Family::Hamming, vec![2, 3], 3),
        (Family::Grid, vec![2, 3], 3),
        (Family::Hamming, vec![2, 2, 2], 5),
    ] {
        let r = exact_tree_stretch(&family.graph(&dims).unwrap(), &SolveBudget::default()).unwrap();
        assert_eq!((r.optimum, r.exhausted), (value, true), "{family} {dims:?}");
    }
}

#[test]
fn exhausted_budget_is_reported_not_thrown() {
    let g = ProductGraph::hamming(&[3, 3]).unwrap();
    let tiny = SolveBudget {
        max_trees: 1,
        ..SolveBudget::default()
    };
    let count = count_spanning_trees(&g, &tiny).unwrap();
    assert!(!count.exhausted);
    assert_eq!(count.trees, 1);

    // the search space of K3^3 is far too large for a millisecond
    let g = ProductGraph::hamming(&[3, 3, 3]).unwrap();
    let brief = SolveBudget {
        max_vertices: 27,
        time_cap: Duration::from_millis(1),
        ..SolveBudget::default()
    };
    let r = exact_tree_stretch(&g, &brief).unwrap();
    assert!(!r.exhausted);
    assert!(r.optimum >= 6);
    assert_eq!(max_stretch(&g, &r.optimal_tree).unwrap().value, r.optimum);
    assert_eq!(
        k_spanner_decision(&g, 5, &brief).unwrap(),
        SpannerDecision::Indeterminate
    );
}

#[test]
fn general_edge_lists() {
    // a 5-wheel: the hub star has stretch 2
    let wheel = EdgeListGraph::new(
        6,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
        ],
    )
    .unwrap();
    let r = exact_tree_stretch(&wheel, &SolveBudget::default()).unwrap();
    assert_eq!(r.optimum, 2);
    // a tree is its own spanning tree
    let path = EdgeListGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(exact_tree_stretch(&path, &SolveBudget::default()).unwrap().optimum, 1);
}
