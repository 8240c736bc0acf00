//! Homomorphism and containment search between hypergraphs.
//!
//! A homomorphism `φ: V(F) -> V(G)` sends every edge of `F` onto an edge of
//! `G`; vertices may be identified but an edge never collapses. The search is
//! backtracking that always branches on the unplaced vertex of `F` with the
//! fewest candidates (higher degree first on ties), with forward checking:
//! co-edged vertices must land on distinct co-edged images, and once all but
//! one vertex of an edge is placed the last one is restricted to the vertices
//! completing an edge of `G`. Injective searches also require degrees and
//! codegrees not to drop. When `F` is 2-covered its unplaced vertices need
//! pairwise co-edged images, so a branch dies once a greedy colouring of
//! `G`'s shadow on the remaining candidates uses fewer colours than there are
//! unplaced vertices. Target vertices with identical links are
//! interchangeable, so among those not yet used as images only one per class
//! is tried.

use std::collections::{HashMap, HashSet};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Edge, Hypergraph, Vertex};

/// Default cap on search nodes before giving up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A total map between vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    target: usize,
    image: Vec<Vertex>,
}

impl VertexMap {
    pub fn new(image: Vec<Vertex>, target: usize) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&v| v >= target) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: target,
            });
        }
        Ok(VertexMap { target, image })
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            target: n,
            image: (0..n).collect(),
        }
    }

    pub fn image(&self) -> &[Vertex] {
        &self.image
    }

    pub fn source_size(&self) -> usize {
        self.image.len()
    }

    pub fn target_size(&self) -> usize {
        self.target
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target];
        self.image
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<VertexMap> {
        if self.target != self.image.len() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.target];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Some(VertexMap {
            target: self.image.len(),
            image: inv,
        })
    }

    /// Re-checks that every edge of `f` maps onto an edge of `g`.
    pub fn is_homomorphism(&self, f: &Hypergraph, g: &Hypergraph) -> bool {
        if self.source_size() != f.vertex_count() || self.target != g.vertex_count() {
            return false;
        }
        f.edges().iter().all(|e| {
            let mut m: Edge = e.iter().map(|&v| self.image[v]).collect();
            m.sort_unstable();
            m.windows(2).all(|w| w[0] < w[1]) && g.contains_edge(&m)
        })
    }
}

impl Serialize for VertexMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(serializer)
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        Bits(words)
    }

    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn or_with(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }

    fn meets(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn and_with(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= b);
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

struct Search<'a> {
    f: &'a Hypergraph,
    injective: bool,
    rank: Vec<usize>,
    f_cover: Vec<Vec<Vertex>>,
    f_codeg: Vec<Vec<usize>>,
    g_codeg: Vec<Vec<usize>>,
    f_edges_at: Vec<Vec<usize>>,
    g_edges: HashSet<Edge>,
    g_cover: Vec<Bits>,
    g_n: usize,
    covered_source: bool,
    twin_class: Vec<usize>,
    assignment: Vec<Option<Vertex>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, domains: &[Bits]) -> Result<bool> {
        let Some(v) = (0..self.rank.len())
            .filter(|&u| self.assignment[u].is_none())
            .min_by_key(|&u| (domains[u].count(), self.rank[u]))
        else {
            return Ok(true);
        };
        if self.covered_source && !self.colourable_enough(domains) {
            return Ok(false);
        }
        let mut used = vec![false; self.g_n];
        self.assignment
            .iter()
            .flatten()
            .for_each(|&z| used[z] = true);
        let mut tried_class = vec![false; self.g_n];
        let candidates: Vec<Vertex> = domains[v].iter().collect();
        for c in candidates {
            if !used[c] && std::mem::replace(&mut tried_class[self.twin_class[c]], true) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            self.assignment[v] = Some(c);
            if let Some(next) = self.propagate(v, c, domains) {
                if self.run(&next)? {
                    return Ok(true);
                }
            }
            self.assignment[v] = None;
        }
        Ok(false)
    }

    /// Greedy colouring of the shadow of `G` on the union of the open
    /// domains; false when it needs fewer colours than there are unplaced
    /// vertices.
    fn colourable_enough(&self, domains: &[Bits]) -> bool {
        let mut union = Bits::empty(self.g_n);
        let mut open = 0;
        for (u, dom) in domains.iter().enumerate() {
            if self.assignment[u].is_none() {
                union.or_with(dom);
                open += 1;
            }
        }
        let mut classes: Vec<Bits> = Vec::new();
        for z in union.iter() {
            match classes.iter_mut().find(|c| !c.meets(&self.g_cover[z])) {
                Some(c) => c.set(z),
                None => {
                    let mut c = Bits::empty(self.g_n);
                    c.set(z);
                    classes.push(c);
                    if classes.len() >= open {
                        return true;
                    }
                }
            }
        }
        classes.len() >= open
    }

    fn propagate(&self, v: Vertex, c: Vertex, domains: &[Bits]) -> Option<Vec<Bits>> {
        let mut next = domains.to_vec();
        for &w in &self.f_cover[v] {
            if self.assignment[w].is_none() {
                next[w].and_with(&self.g_cover[c]);
                if self.injective {
                    let need = self.f_codeg[v][w];
                    let drop: Vec<Vertex> = next[w]
                        .iter()
                        .filter(|&z| self.g_codeg[c][z] < need)
                        .collect();
                    drop.into_iter().for_each(|z| next[w].clear(z));
                }
            }
        }
        if self.injective {
            for (w, dom) in next.iter_mut().enumerate() {
                if self.assignment[w].is_none() {
                    dom.clear(c);
                }
            }
        }
        for &ei in &self.f_edges_at[v] {
            let e = &self.f.edges()[ei];
            let free: Vec<Vertex> = e
                .iter()
                .copied()
                .filter(|&u| self.assignment[u].is_none())
                .collect();
            match free.len() {
                0 => {
                    let mut img: Edge = e.iter().map(|&u| self.assignment[u].unwrap()).collect();
                    img.sort_unstable();
                    if !self.g_edges.contains(&img) {
                        return None;
                    }
                }
                1 => {
                    let w = free[0];
                    let placed: Vec<Vertex> = e
                        .iter()
                        .filter(|&&u| u != w)
                        .map(|&u| self.assignment[u].unwrap())
                        .collect();
                    let mut allowed = Bits::empty(self.g_n);
                    for z in next[w].iter() {
                        let mut img = placed.clone();
                        img.push(z);
                        img.sort_unstable();
                        if self.g_edges.contains(&img) {
                            allowed.set(z);
                        }
                    }
                    next[w] = allowed;
                }
                _ => {}
            }
        }
        for (w, dom) in next.iter().enumerate() {
            if self.assignment[w].is_none() && dom.is_empty() {
                return None;
            }
        }
        Some(next)
    }
}

fn check_uniformity(f: &Hypergraph, g: &Hypergraph) -> Result<()> {
    if f.uniformity() != g.uniformity() {
        Err(Error::UniformityMismatch {
            left: f.uniformity(),
            right: g.uniformity(),
        })
    } else {
        Ok(())
    }
}

/// Finds a homomorphism `F -> G` (injective when `injective` is set), the
/// first one in search order. Gives up with `SearchBudgetExceeded` after
/// `budget` search nodes.
pub fn find_homomorphism(
    f: &Hypergraph,
    g: &Hypergraph,
    injective: bool,
    budget: u64,
) -> Result<Option<VertexMap>> {
    find_homomorphism_restricted(f, g, injective, budget, &|_, _| true)
}

/// [`find_homomorphism`] where vertex `v` of `F` may only go to vertices `z`
/// with `allowed(v, z)`.
pub fn find_homomorphism_restricted(
    f: &Hypergraph,
    g: &Hypergraph,
    injective: bool,
    budget: u64,
    allowed: &dyn Fn(Vertex, Vertex) -> bool,
) -> Result<Option<VertexMap>> {
    check_uniformity(f, g)?;
    // every homomorphism out of a 2-covered graph is injective
    let covered_source = f.is_2_covered();
    let injective = injective || covered_source;
    let (nf, ng) = (f.vertex_count(), g.vertex_count());
    if nf == 0 {
        return Ok(Some(VertexMap {
            target: ng,
            image: Vec::new(),
        }));
    }
    if ng == 0 || (injective && (nf > ng || f.edge_count() > g.edge_count())) {
        return Ok(None);
    }

    let mut degree = vec![0usize; nf];
    let mut f_edges_at = vec![Vec::new(); nf];
    for (i, e) in f.edges().iter().enumerate() {
        for &v in e {
            degree[v] += 1;
            f_edges_at[v].push(i);
        }
    }
    let mut order: Vec<Vertex> = (0..nf).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    let mut rank = vec![0; nf];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }

    let cover = f.pair_cover_matrix();
    let f_cover = (0..nf)
        .map(|u| (0..nf).filter(|&w| cover[u][w]).collect())
        .collect();
    let g_matrix = g.pair_cover_matrix();
    let g_cover = (0..ng)
        .map(|u| {
            let mut b = Bits::empty(ng);
            for w in 0..ng {
                if g_matrix[u][w] {
                    b.set(w);
                }
            }
            b
        })
        .collect();

    let (f_codeg, g_codeg, g_degree) = if injective {
        (
            codegree_matrix(f),
            codegree_matrix(g),
            (0..ng).map(|v| g.degree(v)).collect::<Result<Vec<_>>>()?,
        )
    } else {
        (Vec::new(), Vec::new(), Vec::new())
    };
    let mut domains = vec![Bits::full(ng); nf];
    for (v, dom) in domains.iter_mut().enumerate() {
        for z in 0..ng {
            if !allowed(v, z) {
                dom.clear(z);
            }
        }
    }
    // twins are only interchangeable when the restriction treats them alike
    let mut class_key: HashMap<(usize, Vec<bool>), usize> = HashMap::new();
    let twin_class: Vec<usize> = crate::construct::equivalence_classes(g)
        .block_of(ng)
        .into_iter()
        .enumerate()
        .map(|(z, b)| {
            let column = (0..nf).map(|v| allowed(v, z)).collect();
            let next = class_key.len();
            *class_key.entry((b, column)).or_insert(next)
        })
        .collect();
    if injective {
        for (v, dom) in domains.iter_mut().enumerate() {
            for z in 0..ng {
                if g_degree[z] < degree[v] {
                    dom.clear(z);
                }
            }
        }
    }

    let mut search = Search {
        f,
        injective,
        rank,
        f_cover,
        f_codeg,
        g_codeg,
        f_edges_at,
        g_edges: g.edges().iter().cloned().collect(),
        g_cover,
        g_n: ng,
        covered_source,
        twin_class,
        assignment: vec![None; nf],
        nodes: 0,
        budget,
    };
    if domains.iter().any(Bits::is_empty) {
        return Ok(None);
    }
    if search.run(&domains)? {
        let image = search.assignment.iter().map(|a| a.unwrap()).collect();
        Ok(Some(VertexMap { target: ng, image }))
    } else {
        Ok(None)
    }
}

fn codegree_matrix(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for e in h.edges() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                m[a][b] += 1;
                m[b][a] += 1;
            }
        }
    }
    m
}

/// `F` is `G`-colourable: some homomorphism `F -> G` exists.
pub fn is_colorable(f: &Hypergraph, g: &Hypergraph, budget: u64) -> Result<bool> {
    Ok(find_homomorphism(f, g, false, budget)?.is_some())
}

/// `H` contains no copy of `F`.
pub fn is_f_free(h: &Hypergraph, f: &Hypergraph, budget: u64) -> Result<bool> {
    Ok(find_homomorphism(f, h, true, budget)?.is_none())
}

/// For a family of 2-covered graphs, being family-free and being
/// family-hom-free must agree on `h`. Returns whether they do.
pub fn hom_free_equivalence_check(
    h: &Hypergraph,
    family: &[Hypergraph],
    budget: u64,
) -> Result<bool> {
    if let Some(index) = family.iter().position(|f| !f.is_2_covered()) {
        return Err(Error::NotTwoCovered { index });
    }
    let mut free = true;
    let mut hom_free = true;
    for f in family {
        free &= is_f_free(h, f, budget)?;
        hom_free &= !is_colorable(f, h, budget)?;
    }
    Ok(free == hom_free)
}

/// Membership in the family of 3-graphs with at most `C(ℓ,2)` edges that
/// have an `ℓ`-set whose pairs are all covered. Returns such a set.
pub fn in_k_ell_family(f: &Hypergraph, ell: usize) -> Option<Vec<Vertex>> {
    if ell == 0 || ell > f.vertex_count() {
        return None;
    }
    if f.edge_count() as u128 > binomial(ell as u64, 2) {
        return None;
    }
    let cover = f.pair_cover_matrix();

    fn extend(
        cover: &[Vec<bool>],
        clique: &mut Vec<Vertex>,
        candidates: &[Vertex],
        ell: usize,
    ) -> bool {
        if clique.len() == ell {
            return true;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if clique.len() + candidates.len() - i < ell {
                return false;
            }
            let rest: Vec<Vertex> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| cover[v][w])
                .collect();
            clique.push(v);
            if extend(cover, clique, &rest, ell) {
                return true;
            }
            clique.pop();
        }
        false
    }

    let all: Vec<Vertex> = (0..f.vertex_count()).collect();
    let mut clique = Vec::new();
    extend(&cover, &mut clique, &all, ell).then_some(clique)
}

/// Vertex bound `(3t+6)²` of the forbidden family.
pub fn mt_vertex_bound(t: usize) -> usize {
    (3 * t + 6) * (3 * t + 6)
}

/// Whether `F` belongs to the forbidden family for `t`: at most `(3t+6)²`
/// vertices and no homomorphism into any of `fixtures` (the graphs
/// `G_1, ..., G_t`). Blowups of `G_i` contain `F` exactly when `F` maps
/// homomorphically into `G_i`, so this decides freeness for every `G_n^i`.
pub fn mt_member(f: &Hypergraph, t: usize, fixtures: &[Hypergraph], budget: u64) -> Result<bool> {
    if f.vertex_count() > mt_vertex_bound(t) {
        return Ok(false);
    }
    for g in fixtures {
        if is_colorable(f, g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
