use mixcross::blowup::{blowup, construct_gni, MaxBlowupOptions, PartSizes};
use mixcross::construct::construct_gi;
use mixcross::fixtures::{random_hypergraph, random_two_covered};
use mixcross::hom::{
    find_homomorphism, hom_free_equivalence_check, is_colorable, is_f_free, mt_member, VertexMap,
    DEFAULT_BUDGET,
};
use mixcross::hypergraph::k_subsets;
use mixcross::Hypergraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn naive(f: &Hypergraph, g: &Hypergraph, injective: bool) -> bool {
    let (nf, ng) = (f.vertex_count(), g.vertex_count());
    let total = ng.pow(nf as u32);
    (0..total).any(|mut code| {
        let image: Vec<usize> = (0..nf)
            .map(|_| {
                let v = code % ng;
                code /= ng;
                v
            })
            .collect();
        let map = VertexMap::new(image, ng).unwrap();
        (!injective || map.is_injective()) && map.is_homomorphism(f, g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn search_agrees_with_enumeration(
        nf in 1usize..7, ng in 3usize..9, pf in 0.0f64..0.8, pg in 0.0f64..1.0, injective: bool, seed: u64,
    ) {
        prop_assume!(ng.pow(nf as u32) <= 300_000);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_hypergraph(3, nf, pf, &mut rng);
        let g = random_hypergraph(3, ng, pg, &mut rng);
        let found = find_homomorphism(&f, &g, injective, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(found.is_some(), naive(&f, &g, injective));
        if let Some(map) = found {
            prop_assert!(map.is_homomorphism(&f, &g));
            prop_assert!(!injective || map.is_injective());
        }
    }

    #[test]
    fn search_agrees_with_enumeration_on_blowups(
        nf in 1usize..6, nb in 3usize..5, pf in 0.0f64..1.0, pg in 0.3f64..1.0, injective: bool, seed: u64,
        parts in prop::collection::vec(1usize..3, 4),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if nf >= 3 && pf > 0.5 {
            random_two_covered(nf, pf - 0.5, &mut rng)
        } else {
            random_hypergraph(3, nf, pf, &mut rng)
        };
        let base = random_hypergraph(3, nb, pg, &mut rng);
        let g = blowup(&base, &PartSizes(parts[..nb].to_vec())).unwrap().graph;
        prop_assume!(g.vertex_count().pow(nf as u32) <= 300_000);
        let found = find_homomorphism(&f, &g, injective, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(found.is_some(), naive(&f, &g, injective));
        if let Some(map) = found {
            prop_assert!(map.is_homomorphism(&f, &g));
        }
    }

    #[test]
    fn colourability_survives_adding_edges(nf in 3usize..7, ng in 3usize..8, seed: u64, extra in prop::collection::vec(0usize..56, 0..6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_hypergraph(3, nf, 0.4, &mut rng);
        let g = random_hypergraph(3, ng, 0.4, &mut rng);
        let triples = k_subsets(ng, 3);
        let mut bigger = g.clone();
        for k in extra {
            bigger = bigger.with_edge(&triples[k % triples.len()]).unwrap();
        }
        if is_colorable(&f, &g, DEFAULT_BUDGET).unwrap() {
            prop_assert!(is_colorable(&f, &bigger, DEFAULT_BUDGET).unwrap());
        }
    }
}

#[test]
fn freeness_and_hom_freeness_agree_for_covered_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let h = random_hypergraph(
            3,
            rng.random_range(3..=7),
            rng.random_range(0.2..0.9),
            &mut rng,
        );
        let family: Vec<Hypergraph> = (0..rng.random_range(1..=3))
            .map(|_| {
                random_two_covered(
                    rng.random_range(3..=5),
                    rng.random_range(0.0..0.5),
                    &mut rng,
                )
            })
            .collect();
        assert!(hom_free_equivalence_check(&h, &family, DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn members_of_the_family_are_absent_from_gni() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fixtures = vec![construct_gi(1, 1).unwrap().graph];
    let mut candidates = vec![Hypergraph::complete(3, 9), Hypergraph::complete(3, 10)];
    for _ in 0..40 {
        candidates.push(random_two_covered(
            rng.random_range(5..=9),
            rng.random_range(0.3..0.9),
            &mut rng,
        ));
    }
    let hosts: Vec<Hypergraph> = [12, 24, 40]
        .iter()
        .map(|&n| {
            construct_gni(1, 1, n, &MaxBlowupOptions::default())
                .unwrap()
                .graph
        })
        .collect();
    let mut members = 0;
    for f in &candidates {
        if mt_member(f, 1, &fixtures, DEFAULT_BUDGET).unwrap() {
            members += 1;
            for host in &hosts {
                assert!(is_f_free(host, f, DEFAULT_BUDGET).unwrap());
            }
        }
    }
    assert!(members >= 2);
}
