//! The mix-crossed blowup, the extremal graphs `G_i`, codegree tables,
//! symmetrization quotients and edit-distance diagnostics.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blowup::{blowup, PartSizes};
use crate::error::{Error, Result};
use crate::hom::{find_homomorphism, find_homomorphism_restricted, VertexMap};
use crate::hypergraph::{Edge, Hypergraph, Pair, Vertex};

/// Parameters of a mix-crossed blowup on the pair `{v1, v2}`.
///
/// `ordering` lists the common neighbourhood `u_1, ..., u_k`; the first
/// `a_cross` entries get the first edge pattern, the next `b_cross` the
/// second and the rest the third.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixCrossSpec {
    pub v1: Vertex,
    pub v2: Vertex,
    #[serde(rename = "a")]
    pub a_cross: usize,
    #[serde(rename = "b")]
    pub b_cross: usize,
    pub ordering: Vec<Vertex>,
}

impl MixCrossSpec {
    /// Uses the common neighbourhood of `{v1, v2}` in increasing label order.
    pub fn with_sorted_neighborhood(
        g: &Hypergraph,
        v1: Vertex,
        v2: Vertex,
        a_cross: usize,
        b_cross: usize,
    ) -> Result<Self> {
        Ok(MixCrossSpec {
            v1,
            v2,
            a_cross,
            b_cross,
            ordering: g.neighborhood(v1, v2)?,
        })
    }
}

/// Mix-crossed blowup of a 3-graph. The clones `v1'` and `v2'` become
/// vertices `n` and `n + 1`.
///
/// Steps: drop every edge through `{v1, v2}`; copy each remaining edge at
/// `v1` (resp. `v2`) onto `v1'` (resp. `v2'`); then for each `u_j` add
/// - `j <= a`: `u v1 v2, u v1 v2', u v1' v2, u v1' v2'`
/// - `a < j <= a+b`: `u v1 v1', u v1 v2', u v2 v1', u v2 v2'`
/// - `j > a+b`: `u v1 v1', u v1 v2, u v1' v2', u v2 v2'`
///
/// Every added edge contains its own `u_j`, which keeps `{v2, v2'}` covered.
pub fn mix_crossed_blowup(g: &Hypergraph, spec: &MixCrossSpec) -> Result<Hypergraph> {
    if g.uniformity() != 3 {
        return Err(Error::UnsupportedUniformity {
            expected: 3,
            found: g.uniformity(),
        });
    }
    let n = g.vertex_count();
    let (v1, v2) = (spec.v1, spec.v2);
    for v in [v1, v2] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if spec.a_cross == 0 || spec.b_cross == 0 {
        return Err(Error::InvalidParameter(
            "crossing parameters a and b must be positive".into(),
        ));
    }
    let common = g.neighborhood(v1, v2)?;
    let k = common.len();
    if k == 0 {
        return Err(Error::PairNotPresent { v1, v2 });
    }
    let needed = spec.a_cross + spec.b_cross + 1;
    if k < needed {
        return Err(Error::CodegreeTooSmall {
            v1,
            v2,
            codegree: k,
            needed,
        });
    }
    let mut ordering = spec.ordering.clone();
    ordering.sort_unstable();
    if ordering != common {
        return Err(Error::InvalidParameter(
            "ordering must be a permutation of the common neighbourhood".into(),
        ));
    }

    let (c1, c2) = (n, n + 1);
    let kept: Vec<&Edge> = g
        .edges()
        .iter()
        .filter(|e| !(e.contains(&v1) && e.contains(&v2)))
        .collect();
    let mut edges: Vec<Edge> = kept.iter().map(|e| (*e).clone()).collect();
    for e in &kept {
        for (orig, clone) in [(v1, c1), (v2, c2)] {
            if e.contains(&orig) {
                edges.push(
                    e.iter()
                        .map(|&w| if w == orig { clone } else { w })
                        .collect(),
                );
            }
        }
    }
    for (j, &u) in spec.ordering.iter().enumerate() {
        let pattern = if j < spec.a_cross {
            [[v1, v2], [v1, c2], [c1, v2], [c1, c2]]
        } else if j < spec.a_cross + spec.b_cross {
            [[v1, c1], [v1, c2], [v2, c1], [v2, c2]]
        } else {
            [[v1, c1], [v1, v2], [c1, c2], [v2, c2]]
        };
        edges.extend(pattern.iter().map(|[x, y]| vec![u, *x, *y]));
    }
    Ok(Hypergraph::from_unsorted_unchecked(3, n + 2, edges))
}

/// `G_i` together with the conventional names of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GiConstruction {
    #[serde(skip)]
    pub graph: Hypergraph,
    pub labels: Vec<String>,
}

/// Human-readable vertex names of `G_i` in output order.
pub fn gi_labels(t: usize) -> Vec<String> {
    let mut labels: Vec<String> = ["1", "1'", "2", "2'"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    labels.extend((3..=3 * t + 3).map(|p| p.to_string()));
    labels
}

/// `G_i = K_{3t+3}^{3-} ⊠_{(1,i)} {1,2}`, with the common neighbourhood taken
/// in increasing order.
///
/// The output is relabelled to `1, 1', 2, 2', 3, ..., 3t+3` (indices
/// `0..3t+5`), matching [`PointLayout::Mixed`](crate::lagrangian::PointLayout).
/// The common neighbourhood has `3t+1` vertices, so `i <= 3t-1` is feasible
/// and larger `i` fails with `CodegreeTooSmall`.
pub fn construct_gi(t: usize, i: usize) -> Result<GiConstruction> {
    if i < 1 {
        return Err(Error::InvalidParameter("G_i needs i >= 1".into()));
    }
    let base = Hypergraph::complete_minus(t)?;
    let spec = MixCrossSpec::with_sorted_neighborhood(&base, 0, 1, 1, i)?;
    let raw = mix_crossed_blowup(&base, &spec)?;
    let n = raw.vertex_count();
    // raw order: 1, 2, 3..3t+3, 1', 2'
    let mut map = vec![0; n];
    map[0] = 0;
    map[1] = 2;
    for (old, slot) in map.iter_mut().enumerate().take(n - 2).skip(2) {
        *slot = old + 2;
    }
    map[n - 2] = 1;
    map[n - 1] = 3;
    Ok(GiConstruction {
        graph: raw.relabel(&map, n)?,
        labels: gi_labels(t),
    })
}

/// Codegree of every vertex pair (zeros included).
pub fn codegree_table(g: &Hypergraph) -> Result<BTreeMap<Pair, usize>> {
    if g.uniformity() != 3 {
        return Err(Error::UnsupportedUniformity {
            expected: 3,
            found: g.uniformity(),
        });
    }
    let n = g.vertex_count();
    let mut counts = vec![vec![0usize; n]; n];
    for e in g.edges() {
        counts[e[0]][e[1]] += 1;
        counts[e[0]][e[2]] += 1;
        counts[e[1]][e[2]] += 1;
    }
    let mut table = BTreeMap::new();
    for u in 0..n {
        for v in u + 1..n {
            table.insert(Pair { u, v }, counts[u][v]);
        }
    }
    Ok(table)
}

/// Predicted codegree of a pair of `G_1` (output labelling of
/// [`construct_gi`]).
pub fn gi_expected_codegree(t: usize, pair: Pair) -> usize {
    // 0 = 1, 1 = 1', 2 = 2, 3 = 2', 4.. = 3..3t+3
    let last = 3 * t + 2..=3 * t + 4;
    let Pair { u, v } = pair;
    match (u, v) {
        (0, 3) | (1, 2) => 2,
        (0, 1) | (0, 2) | (1, 3) | (2, 3) => 3 * t,
        (u, _) if u < 4 => 3 * t + 2,
        (u, v) if last.contains(&u) && last.contains(&v) => 3 * t + 2,
        _ => 3 * t + 3,
    }
}

/// Pairs of `G_1` whose codegree differs from [`gi_expected_codegree`], as
/// `(pair, expected, actual)`.
pub fn codegree_mismatches(t: usize) -> Result<Vec<(Pair, usize, usize)>> {
    let g = construct_gi(t, 1)?.graph;
    Ok(codegree_table(&g)?
        .into_iter()
        .filter_map(|(pair, actual)| {
            let expected = gi_expected_codegree(t, pair);
            (expected != actual).then_some((pair, expected, actual))
        })
        .collect())
}

pub fn verify_codegree_table(t: usize) -> Result<bool> {
    Ok(codegree_mismatches(t)?.is_empty())
}

/// Vertices grouped into equivalence classes: non-adjacent vertices with
/// identical links. Blocks are sorted and ordered by their smallest vertex,
/// which is also the representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalencePartition {
    pub blocks: Vec<Vec<Vertex>>,
    pub representatives: Vec<Vertex>,
}

impl EquivalencePartition {
    pub fn block_sizes(&self) -> PartSizes {
        PartSizes(self.blocks.iter().map(Vec::len).collect())
    }

    pub fn block_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                out[v] = b;
            }
        }
        out
    }
}

fn links(h: &Hypergraph) -> Vec<Vec<Edge>> {
    let mut out = vec![Vec::new(); h.vertex_count()];
    for e in h.edges() {
        for &v in e {
            out[v].push(e.iter().copied().filter(|&w| w != v).collect());
        }
    }
    out
}

/// Two vertices with equal links can never share an edge (the link of one
/// would then contain a set through itself), so grouping by link suffices.
pub fn equivalence_classes(h: &Hypergraph) -> EquivalencePartition {
    let mut index: HashMap<Vec<Edge>, usize> = HashMap::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for (v, link) in links(h).into_iter().enumerate() {
        let next = blocks.len();
        let b = *index.entry(link).or_insert(next);
        if b == next {
            blocks.push(Vec::new());
        }
        blocks[b].push(v);
    }
    let representatives = blocks.iter().map(|b| b[0]).collect();
    EquivalencePartition {
        blocks,
        representatives,
    }
}

/// Every pair of non-equivalent vertices lies in a common edge.
pub fn is_symmetrized(h: &Hypergraph) -> bool {
    let cover = h.pair_cover_matrix();
    let classes = equivalence_classes(h);
    let block = classes.block_of(h.vertex_count());
    let n = h.vertex_count();
    (0..n).all(|u| (u + 1..n).all(|v| block[u] == block[v] || cover[u][v]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// Subgraph induced on one representative per class.
    pub graph: Hypergraph,
    /// Sends each vertex to the index of its class in `graph`.
    pub map: VertexMap,
    pub partition: EquivalencePartition,
}

pub fn quotient(h: &Hypergraph) -> Quotient {
    let partition = equivalence_classes(h);
    let (graph, _) = h
        .induced(&partition.representatives)
        .expect("representatives are vertices");
    let image = partition.block_of(h.vertex_count());
    let map = VertexMap::new(image, graph.vertex_count()).expect("classes index the quotient");
    Quotient {
        graph,
        map,
        partition,
    }
}

/// Whether `h` is (up to the relabelling that sorts vertices by class) the
/// blowup of its quotient with the class sizes as parts.
pub fn is_blowup_reconstruction(h: &Hypergraph, q: &Quotient) -> bool {
    let n = h.vertex_count();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (q.map.image()[v], v));
    let mut position = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        position[v] = pos;
    }
    let rebuilt = match blowup(&q.graph, &q.partition.block_sizes()) {
        Ok(b) => b.graph,
        Err(_) => return false,
    };
    h.relabel(&position, n)
        .map(|r| r == rebuilt)
        .unwrap_or(false)
}

/// `|H1 Δ σ(H2)|` for a bijection `σ : V(H2) -> V(H1)`.
pub fn edit_distance_under(h1: &Hypergraph, h2: &Hypergraph, sigma: &VertexMap) -> Result<usize> {
    check_edit_inputs(h1, h2)?;
    if sigma.source_size() != h2.vertex_count()
        || sigma.target_size() != h1.vertex_count()
        || !sigma.is_injective()
    {
        return Err(Error::InvalidParameter(
            "edit distance needs a bijection V(H2) -> V(H1)".into(),
        ));
    }
    let targets: HashSet<&Edge> = h1.edges().iter().collect();
    let overlap = h2
        .edges()
        .iter()
        .filter(|e| {
            let mut m: Edge = e.iter().map(|&v| sigma.image()[v]).collect();
            m.sort_unstable();
            targets.contains(&m)
        })
        .count();
    Ok(h1.edge_count() + h2.edge_count() - 2 * overlap)
}

fn check_edit_inputs(h1: &Hypergraph, h2: &Hypergraph) -> Result<()> {
    if h1.vertex_count() != h2.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: h1.vertex_count(),
            found: h2.vertex_count(),
        });
    }
    if h1.uniformity() != h2.uniformity() {
        return Err(Error::UniformityMismatch {
            left: h1.uniformity(),
            right: h2.uniformity(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EditSearchOptions {
    pub restarts: usize,
    pub seed: u64,
}

impl Default for EditSearchOptions {
    fn default() -> Self {
        EditSearchOptions {
            restarts: 16,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditSearchResult {
    /// An upper bound on the minimum edit distance over all bijections.
    pub distance: usize,
    pub bijection: VertexMap,
}

struct OverlapState<'a> {
    targets: HashSet<Edge>,
    edges: &'a [Edge],
    incident: Vec<Vec<usize>>,
}

impl OverlapState<'_> {
    fn hit(&self, e: &Edge, perm: &[Vertex]) -> bool {
        let mut m: Edge = e.iter().map(|&v| perm[v]).collect();
        m.sort_unstable();
        self.targets.contains(&m)
    }

    fn overlap(&self, perm: &[Vertex]) -> usize {
        self.edges.iter().filter(|e| self.hit(e, perm)).count()
    }

    /// Change in overlap when the images of `x` and `y` are exchanged.
    fn swap_delta(&self, perm: &mut [Vertex], x: Vertex, y: Vertex) -> i64 {
        let mut affected: Vec<usize> = self.incident[x]
            .iter()
            .chain(&self.incident[y])
            .copied()
            .collect();
        affected.sort_unstable();
        affected.dedup();
        let before = affected
            .iter()
            .filter(|&&i| self.hit(&self.edges[i], perm))
            .count() as i64;
        perm.swap(x, y);
        let after = affected
            .iter()
            .filter(|&&i| self.hit(&self.edges[i], perm))
            .count() as i64;
        perm.swap(x, y);
        after - before
    }

    /// Best-improvement descent over transpositions.
    fn descend(&self, perm: &mut [Vertex]) -> usize {
        let n = perm.len();
        let mut current = self.overlap(perm);
        loop {
            let mut best: Option<(Vertex, Vertex, i64)> = None;
            for x in 0..n {
                for y in x + 1..n {
                    let d = self.swap_delta(perm, x, y);
                    if d > best.map_or(0, |b| b.2) {
                        best = Some((x, y, d));
                    }
                }
            }
            match best {
                Some((x, y, d)) => {
                    perm.swap(x, y);
                    current = (current as i64 + d) as usize;
                }
                None => return current,
            }
        }
    }
}

fn degree_sorted(h: &Hypergraph) -> Vec<Vertex> {
    let mut deg = vec![0usize; h.vertex_count()];
    for e in h.edges() {
        for &v in e {
            deg[v] += 1;
        }
    }
    let mut order: Vec<Vertex> = (0..h.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    order
}

/// Starting bijection `V(h2) -> V(h1)` that sends each equivalence class of
/// `h2` into the class of `h1` matched to it by an isomorphism of the
/// quotients (size-respecting when one exists). `None` when the quotients
/// are not isomorphic within a small search budget.
fn quotient_alignment(h1: &Hypergraph, h2: &Hypergraph) -> Option<Vec<Vertex>> {
    const BUDGET: u64 = 1_000_000;
    let (q1, q2) = (quotient(h1), quotient(h2));
    if q1.graph.vertex_count() != q2.graph.vertex_count()
        || q1.graph.edge_count() != q2.graph.edge_count()
    {
        return None;
    }
    let (s1, s2) = (q1.partition.block_sizes(), q2.partition.block_sizes());
    let same_size = |b2: Vertex, b1: Vertex| s2.as_slice()[b2] == s1.as_slice()[b1];
    let phi = find_homomorphism_restricted(&q2.graph, &q1.graph, true, BUDGET, &same_size)
        .ok()
        .flatten()
        .or_else(|| {
            find_homomorphism(&q2.graph, &q1.graph, true, BUDGET)
                .ok()
                .flatten()
        })?;
    let n = h1.vertex_count();
    let mut pools: Vec<Vec<Vertex>> = q1
        .partition
        .blocks
        .iter()
        .map(|b| b.iter().rev().copied().collect())
        .collect();
    let mut perm: Vec<Option<Vertex>> = vec![None; n];
    for (v, &b) in q2.map.image().iter().enumerate() {
        perm[v] = pools[phi.image()[b]].pop();
    }
    let mut rest = pools.into_iter().flatten();
    Some(
        perm.into_iter()
            .map(|p| p.or_else(|| rest.next()).expect("equal vertex counts"))
            .collect(),
    )
}

/// Local search for a bijection with small edit distance. Restart 0 starts
/// from the identity, restart 1 from the degree-sorted alignment, restart 2
/// from the quotient alignment (identity if there is none) and the rest from
/// seeded random permutations; each run descends over transpositions. The
/// result is an upper bound, not a certified minimum.
pub fn heuristic_min_edit(
    h1: &Hypergraph,
    h2: &Hypergraph,
    opts: &EditSearchOptions,
) -> Result<EditSearchResult> {
    check_edit_inputs(h1, h2)?;
    let n = h1.vertex_count();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in h2.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let state = OverlapState {
        targets: h1.edges().iter().cloned().collect(),
        edges: h2.edges(),
        incident,
    };
    let restarts = opts.restarts.max(1);
    let runs: Vec<(usize, Vec<Vertex>)> = (0..restarts)
        .into_par_iter()
        .map(|idx| {
            let mut perm: Vec<Vertex> = match idx {
                0 => (0..n).collect(),
                1 => {
                    let (o1, o2) = (degree_sorted(h1), degree_sorted(h2));
                    let mut p = vec![0; n];
                    for (a, b) in o2.iter().zip(&o1) {
                        p[*a] = *b;
                    }
                    p
                }
                2 => quotient_alignment(h1, h2).unwrap_or_else(|| (0..n).collect()),
                _ => {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    rng.set_stream(idx as u64);
                    let mut p: Vec<Vertex> = (0..n).collect();
                    p.shuffle(&mut rng);
                    p
                }
            };
            let overlap = state.descend(&mut perm);
            (overlap, perm)
        })
        .collect();
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best].0 {
            best = i;
        }
    }
    let (overlap, perm) = runs.into_iter().nth(best).expect("at least one restart");
    Ok(EditSearchResult {
        distance: h1.edge_count() + h2.edge_count() - 2 * overlap,
        bijection: VertexMap::new(perm, n)?,
    })
}
