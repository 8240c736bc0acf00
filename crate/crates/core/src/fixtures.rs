//! Named small hypergraphs and seeded random generators used by the check
//! suite and the tests.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::Exp1;

use crate::hypergraph::{k_subsets, Edge, Hypergraph};

pub fn single_edge() -> Hypergraph {
    Hypergraph::new(3, 3, [[0, 1, 2]]).expect("valid edge")
}

/// The Fano plane on points `0..7`.
pub fn fano_plane() -> Hypergraph {
    Hypergraph::new(
        3,
        7,
        [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ],
    )
    .expect("valid plane")
}

/// Each `r`-subset of `0..n` independently with probability `p`.
pub fn random_hypergraph<R: Rng + ?Sized>(r: usize, n: usize, p: f64, rng: &mut R) -> Hypergraph {
    let edges: Vec<Edge> = k_subsets(n, r)
        .into_iter()
        .filter(|_| rng.random_bool(p))
        .collect();
    Hypergraph::new(r, n, edges).expect("subsets are valid edges")
}

/// A random 3-graph on `n >= 3` vertices in which every pair is covered:
/// random edges first, then each uncovered pair gets an edge through a random
/// third vertex.
pub fn random_two_covered<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Hypergraph {
    assert!(n >= 3, "a 2-covered 3-graph needs at least three vertices");
    let base = random_hypergraph(3, n, p, rng);
    let mut edges: Vec<Edge> = base.edges().to_vec();
    let mut cover = base.pair_cover_matrix();
    for u in 0..n {
        for v in u + 1..n {
            if cover[u][v] {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
            let w = *others.choose(rng).expect("n >= 3");
            for (a, b) in [(u, v), (u, w), (v, w)] {
                cover[a][b] = true;
                cover[b][a] = true;
            }
            edges.push(vec![u, v, w]);
        }
    }
    Hypergraph::new(3, n, edges).expect("valid edges")
}

/// A weighting drawn from the flat Dirichlet distribution.
pub fn random_simplex_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}
