use gasp_core::generators::{
    reduce_clique_to_ns, reduce_hitting_set_to_core, reduce_mcc_to_ns, witness_clique, witness_hitting_set,
    witness_mcc, SimpleGraph,
};
use gasp_core::graph::classify_topology;
use gasp_core::{verify, Concept, Error};

fn cycle(n: usize) -> SimpleGraph {
    SimpleGraph::new(n, &(0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>())
}

/// Disjoint copies of `K_r`.
fn cliques(copies: usize, r: usize) -> SimpleGraph {
    let mut edges = Vec::new();
    for c in 0..copies {
        for (u, v) in SimpleGraph::complete(r).edges {
            edges.push((c * r + u, c * r + v));
        }
    }
    SimpleGraph::new(copies * r, &edges)
}

fn k33() -> SimpleGraph {
    let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
    SimpleGraph::new(6, &edges)
}

fn regular_cases() -> Vec<(SimpleGraph, usize)> {
    let mut cases = Vec::new();
    for n in 3..=6 {
        for k in 1..=3 {
            cases.push((cycle(n), k));
        }
    }
    for r in 2..=4 {
        cases.push((SimpleGraph::complete(r), r));
        cases.push((cliques(2, r), 2));
    }
    cases.push((k33(), 2));
    cases.push((k33(), 4));
    assert!(cases.len() >= 20);
    cases
}

#[test]
fn clique_reduction_sizes_follow_the_formulas() {
    for (g, k) in regular_cases() {
        let (inst, meta) = reduce_clique_to_ns(&g, k).unwrap();
        let delta = g.degree(0);
        let m = g.edges.len();
        assert_eq!(inst.p(), 1 + k * (k + 1) / 2);
        let alpha: Vec<usize> = (1..=g.n).map(|j| j * (k + 3) + 2 + delta).collect();
        let beta: Vec<usize> = (1..=m).map(|j| 1 + 2 * j).collect();
        assert_eq!(meta.alpha, alpha);
        assert_eq!(meta.beta, beta);
        let vertex_side: usize = alpha.iter().map(|a| 1 + (a + k - delta - 2)).sum();
        let edge_side: usize = beta.iter().map(|b| 2 + (b - 2)).sum();
        assert_eq!(inst.n(), vertex_side + edge_side + 5, "n={} k={k}", g.n);
        assert_eq!(meta.players.len(), inst.n());
        assert!(classify_topology(&inst).is_clique());
    }
}

#[test]
fn clique_reduction_rejects_bad_graphs() {
    let path = SimpleGraph::new(3, &[(0, 1), (1, 2)]);
    assert!(matches!(reduce_clique_to_ns(&path, 2), Err(Error::Precondition(_))));
    assert!(matches!(reduce_clique_to_ns(&cycle(4), 4), Err(Error::Precondition(_))));
}

#[test]
fn clique_witnesses_are_nash_stable() {
    let cases = [(SimpleGraph::complete(3), 2, vec![0, 1]), (SimpleGraph::complete(3), 3, vec![0, 1, 2]), (cycle(4), 2, vec![1, 2])];
    for (g, k, clique) in cases {
        let (inst, meta) = reduce_clique_to_ns(&g, k).unwrap();
        let pi = witness_clique(&g, &inst, &meta, &clique).unwrap();
        assert!(verify(&inst, &pi, Concept::Nash).is_stable(), "k={k}");
    }
    let (inst, meta) = reduce_clique_to_ns(&cycle(4), 2).unwrap();
    assert!(witness_clique(&cycle(4), &inst, &meta, &[0, 2]).is_err());
}

#[test]
fn hitting_set_reduction_is_a_star_with_the_right_targets() {
    let cases: Vec<(usize, Vec<Vec<usize>>, usize)> = vec![
        (2, vec![vec![0]], 1),
        (3, vec![vec![0, 1], vec![1, 2]], 1),
        (3, vec![vec![0], vec![2]], 2),
        (4, vec![vec![0, 1], vec![2, 3], vec![1, 2]], 2),
    ];
    for (universe, family, k) in cases {
        let (inst, meta) = reduce_hitting_set_to_core(universe, &family, k).unwrap();
        let w = 3 * universe;
        let sets = 3 * family.len();
        assert_eq!(meta.targets, (1..=sets).map(|i| i + w + 1).collect::<Vec<_>>());
        let dummies: usize = (0..sets).map(|i| meta.targets[i] - meta.sets[i].len() - 1).sum();
        assert_eq!(inst.n(), 3 + w + dummies);
        let topo = classify_topology(&inst);
        assert!(topo.is_star());
        assert_eq!(inst.neighbors(0).len(), inst.n() - 1);
    }
    assert!(matches!(reduce_hitting_set_to_core(2, &[vec![0]], 2), Err(Error::Precondition(_))));
}

#[test]
fn hitting_set_witnesses_are_core_stable() {
    let family = vec![vec![0, 1], vec![1, 2]];
    let (inst, meta) = reduce_hitting_set_to_core(3, &family, 1).unwrap();
    let pi = witness_hitting_set(&family, 1, &inst, &meta, &[1]).unwrap();
    assert!(verify(&inst, &pi, Concept::Core).is_stable());
    assert!(witness_hitting_set(&family, 1, &inst, &meta, &[0]).is_err());
}

#[test]
fn mcc_player_count() {
    for h in 1..=4 {
        let q = 2;
        let colors: Vec<usize> = (1..=h).flat_map(|c| std::iter::repeat_n(c, q)).collect();
        let mut edges = Vec::new();
        for u in 0..colors.len() {
            for v in u + 1..colors.len() {
                if colors[u] != colors[v] {
                    edges.push((u, v));
                }
            }
        }
        let g = SimpleGraph::new(colors.len(), &edges);
        let (inst, _) = reduce_mcc_to_ns(&g, &colors).unwrap();
        assert_eq!(inst.n(), 4 * h + 3 * h * (h - 1) / 2);
        assert!(classify_topology(&inst).is_clique());
        let clique: Vec<usize> = (0..h).map(|c| c * q).collect();
        let pi = witness_mcc(&g, &colors, &inst, &meta_of(&g, &colors), &clique).unwrap();
        assert!(verify(&inst, &pi, Concept::Nash).is_stable(), "h={h}");
    }
}

fn meta_of(g: &SimpleGraph, colors: &[usize]) -> gasp_core::generators::ReductionMetadata {
    reduce_mcc_to_ns(g, colors).unwrap().1
}

#[test]
fn mcc_rejects_monochromatic_edges() {
    let g = SimpleGraph::new(4, &[(0, 1)]);
    assert!(reduce_mcc_to_ns(&g, &[1, 1, 2, 2]).is_err());
}
