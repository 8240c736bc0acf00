use mixcross::fixtures::random_hypergraph;
use mixcross::hypergraph::k_subsets;
use mixcross::Hypergraph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(r: usize, n: usize, p: f64, seed: u64) -> Hypergraph {
    random_hypergraph(r, n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degrees_sum_to_r_times_edges(r in 2usize..5, n in 0usize..9, p in 0.0f64..1.0, seed: u64) {
        let h = graph(r, n, p, seed);
        let total: usize = (0..n).map(|v| h.degree(v).unwrap()).sum();
        prop_assert_eq!(total, r * h.edge_count());
    }

    #[test]
    fn codegrees_count_neighbourhoods(n in 3usize..10, p in 0.0f64..1.0, seed: u64) {
        let h = graph(3, n, p, seed);
        let mut total = 0;
        for u in 0..n {
            for v in u + 1..n {
                let d = h.codegree(u, v).unwrap();
                prop_assert_eq!(d, h.neighborhood(u, v).unwrap().len());
                total += d;
            }
        }
        prop_assert_eq!(total, 3 * h.edge_count());
    }

    #[test]
    fn shadow_is_bounded_and_monotone(n in 3usize..9, p in 0.0f64..1.0, seed: u64, pick in 0usize..84) {
        let h = graph(3, n, p, seed);
        let s = h.shadow().unwrap();
        prop_assert!(s.edge_count() <= 3 * h.edge_count());
        let triples = k_subsets(n, 3);
        let bigger = h.with_edge(&triples[pick % triples.len()]).unwrap();
        let s2 = bigger.shadow().unwrap();
        prop_assert!(s.edges().iter().all(|e| s2.contains_edge(e)));
    }

    #[test]
    fn nested_induced_subgraphs_compose(n in 1usize..10, p in 0.0f64..1.0, seed: u64, a in any::<u16>(), b in any::<u16>()) {
        let h = graph(3, n, p, seed);
        let set_a: Vec<usize> = (0..n).filter(|v| a >> v & 1 == 1).collect();
        let set_b: Vec<usize> = (0..n).filter(|v| b >> v & 1 == 1).collect();
        let (ha, labels_a) = h.induced(&set_a).unwrap();
        let local_b: Vec<usize> = labels_a.iter().enumerate().filter(|(_, v)| set_b.contains(v)).map(|(i, _)| i).collect();
        let (hab, _) = ha.induced(&local_b).unwrap();
        let both: Vec<usize> = set_a.iter().copied().filter(|v| set_b.contains(v)).collect();
        let (direct, _) = h.induced(&both).unwrap();
        prop_assert_eq!(hab, direct);
    }

    #[test]
    fn symmetric_pair_is_symmetric(n in 2usize..9, p in 0.0f64..1.0, seed: u64, u in 0usize..9, v in 0usize..9) {
        let h = graph(3, n, p, seed);
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v);
        prop_assert_eq!(h.is_symmetric_pair(u, v).unwrap(), h.is_symmetric_pair(v, u).unwrap());
    }

    #[test]
    fn two_covered_means_positive_codegrees(n in 3usize..9, p in 0.3f64..1.0, seed: u64) {
        let h = graph(3, n, p, seed);
        let all_positive = (0..n).all(|u| (u + 1..n).all(|v| h.codegree(u, v).unwrap() >= 1));
        prop_assert_eq!(h.is_2_covered(), all_positive);
        let shadow_complete = h.shadow().unwrap().edge_count() == n * (n - 1) / 2;
        prop_assert_eq!(h.is_2_covered(), shadow_complete);
    }

    #[test]
    fn json_round_trip(r in 2usize..5, n in 0usize..9, p in 0.0f64..1.0, seed: u64) {
        let h = graph(r, n, p, seed);
        prop_assert_eq!(Hypergraph::from_json(&h.to_json()).unwrap(), h);
    }
}

#[test]
fn reader_canonicalizes_edges() {
    let h = Hypergraph::from_json(r#"{"r":3,"n":4,"edges":[[3,1,0],[2,1,0],[0,1,3]]}"#).unwrap();
    assert_eq!(h.edges(), &[vec![0, 1, 2], vec![0, 1, 3]]);
    assert_eq!(h.to_json(), r#"{"r":3,"n":4,"edges":[[0,1,2],[0,1,3]]}"#);
}
