mod common;

use common::oracle::{closed_subgraphs, CoverOracle};
use common::{fa_part, load, random_splitting, FIXTURES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitkit::cylinders::structurally_isomorphic;
use splitkit::{Disjointness, GraphOfGroups};

fn bipartite(g: &GraphOfGroups) -> bool {
    g.edges().iter().all(|e| g.is_ztype(e.origin) != g.is_ztype(e.terminus))
}

fn inputs() -> Vec<GraphOfGroups> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    FIXTURES.iter().map(|n| fa_part(&load(n).graph)).chain((0..50).map(|_| random_splitting(&mut rng))).collect()
}

#[test]
fn tree_of_cylinders_is_bipartite_and_idempotent() {
    for g in inputs() {
        let t1 = g.tree_of_cylinders().unwrap();
        let t2 = t1.tree_of_cylinders().unwrap();
        assert!(bipartite(&t1), "{:?}", t1.edges());
        assert!(structurally_isomorphic(&t1, &t2), "{:?}\n{:?}", t1.vertices(), t2.vertices());
        assert_eq!(t1.whole_group().rank_index(t1.rank()), g.whole_group().rank_index(g.rank()));
    }
}

#[test]
fn star_is_its_own_tree_of_cylinders() {
    let g = fa_part(&load("star").graph);
    let t = g.tree_of_cylinders().unwrap();
    assert!(structurally_isomorphic(&g, &t));
    assert_eq!(g.cylinders().len(), 1);
}

#[test]
fn trivial_edges_have_no_cylinder() {
    let s = load("star");
    assert!(s.graph.tree_of_cylinders().is_err());
    assert!(s.graph.cylinder_of_edge(s.graph.edge_index("e_t").unwrap()).is_err());
}

#[test]
fn cover_matches_exhaustive_search() {
    for name in FIXTURES {
        let g = load(name).graph;
        for (mode, lenient) in [(Disjointness::Vertex, false), (Disjointness::Lenient, true)] {
            let oracle = CoverOracle::new(&g, lenient);
            let all = closed_subgraphs(&g, 12);
            assert!(all.len() > g.edges().len());
            for s in all {
                let cover = g.envelope_cover(&s, mode);
                assert_eq!(cover.is_some(), oracle.covers(&s), "{name} {mode:?} {:?}", s.labels(&g));
                if let Some(envs) = cover {
                    for env in &envs {
                        assert!(g.is_envelope(env.center, &env.edges));
                    }
                    let union = envs.iter().fold(splitkit::Subgraph::new(), |u, e| u.union(&e.closure(&g)));
                    assert!(s.is_subset(&union));
                }
            }
        }
    }
}
