//! Immutable r-uniform hypergraphs.
//!
//! Vertices are the dense integers `0..n`. Edges are strictly increasing
//! vertex tuples and the edge list is kept in lexicographic order, so derived
//! `Eq`/`Hash` compare structure rather than construction history. Builders
//! that mirror 1-based vertex names subtract one from every label.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Edge>,
}

/// Wire form accepted by readers: any vertex order, duplicates allowed.
#[derive(Deserialize)]
struct RawHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<i64>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw.edges.len());
        for edge in raw.edges {
            let mut converted = Vec::with_capacity(edge.len());
            for v in edge {
                if v < 0 || v as u64 >= raw.n as u64 {
                    return Err(Error::EdgeOutOfRange {
                        vertex: v,
                        n: raw.n,
                    });
                }
                converted.push(v as usize);
            }
            edges.push(converted);
        }
        Hypergraph::new(raw.r, raw.n, edges)
    }
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub u: Vertex,
    pub v: Vertex,
}

impl Pair {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Pair { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Pair { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::InvalidParameter(format!(
                "pair needs two distinct vertices, got {a} twice"
            ))),
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

impl Hypergraph {
    /// Builds a canonical hypergraph. Vertex order inside a tuple and repeated
    /// edges are normalized away; tuples that repeat a vertex are rejected.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if r == 0 {
            return Err(Error::InvalidParameter(
                "uniformity must be positive".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for edge in edges {
            let mut e = edge.as_ref().to_vec();
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(Error::EdgeOutOfRange {
                    vertex: bad as i64,
                    n,
                });
            }
            e.sort_unstable();
            e.dedup();
            if e.len() != r || edge.as_ref().len() != r {
                return Err(Error::EdgeWrongArity {
                    expected: r,
                    found: e.len(),
                });
            }
            set.insert(e);
        }
        Ok(Hypergraph {
            r,
            n,
            edges: set.into_iter().collect(),
        })
    }

    /// Internal constructor for edge lists that are already canonical.
    pub(crate) fn from_sorted_unchecked(r: usize, n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges
            .iter()
            .all(|e| e.len() == r && e.windows(2).all(|p| p[0] < p[1]) && e[r - 1] < n));
        Hypergraph { r, n, edges }
    }

    pub(crate) fn from_unsorted_unchecked(r: usize, n: usize, mut edges: Vec<Edge>) -> Self {
        for e in edges.iter_mut() {
            e.sort_unstable();
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_unchecked(r, n, edges)
    }

    pub fn empty(r: usize, n: usize) -> Self {
        Hypergraph {
            r,
            n,
            edges: Vec::new(),
        }
    }

    /// The complete r-graph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Self {
        let edges = k_subsets(n, r);
        Hypergraph { r, n, edges }
    }

    /// `K_{3t+3}^3` minus one edge. The removed triple is the last three
    /// vertices `{3t, 3t+1, 3t+2}` (labels `3t+1..3t+3` counted from one).
    pub fn complete_minus(t: usize) -> Result<Self> {
        if t < 1 {
            return Err(Error::InvalidParameter(
                "complete_minus needs t >= 1".into(),
            ));
        }
        let n = 3 * t + 3;
        let missing = vec![3 * t, 3 * t + 1, 3 * t + 2];
        let edges = k_subsets(n, 3)
            .into_iter()
            .filter(|e| *e != missing)
            .collect();
        Ok(Hypergraph { r: 3, n, edges })
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// Returns a copy with `edge` added.
    pub fn with_edge(&self, edge: &[Vertex]) -> Result<Self> {
        Hypergraph::new(
            self.r,
            self.n,
            self.edges
                .iter()
                .map(|e| e.as_slice())
                .chain(std::iter::once(edge)),
        )
    }

    /// Returns a copy on `n` vertices with every vertex renamed by `map`.
    pub fn relabel(&self, map: &[Vertex], n: usize) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: map.len(),
            });
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| map[v]).collect())
            .collect();
        Hypergraph::new(self.r, n, edges)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn require_three(&self) -> Result<()> {
        if self.r != 3 {
            Err(Error::UnsupportedUniformity {
                expected: 3,
                found: self.r,
            })
        } else {
            Ok(())
        }
    }

    /// The (r-1)-graph `{A : A ∪ {v} ∈ H}` on the same vertex set.
    pub fn link(&self, v: Vertex) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        if self.r < 2 {
            return Err(Error::InvalidParameter("link needs uniformity >= 2".into()));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.contains(&v))
            .map(|e| e.iter().copied().filter(|&w| w != v).collect())
            .collect();
        // removing one entry from each sorted tuple keeps the list sorted
        Ok(Hypergraph::from_sorted_unchecked(self.r - 1, self.n, edges))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(&v)).count())
    }

    /// `{w : {u, v, w} ∈ H}` for a 3-graph.
    pub fn neighborhood(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.require_three()?;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let pair = Pair::new(u, v)?;
        let mut out: Vec<Vertex> = self
            .edges
            .iter()
            .filter(|e| e.contains(&pair.u) && e.contains(&pair.v))
            .map(|e| *e.iter().find(|&&w| w != pair.u && w != pair.v).unwrap())
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn codegree(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.neighborhood(u, v).map(|nb| nb.len())
    }

    /// All (r-1)-subsets of edges.
    pub fn shadow(&self) -> Result<Hypergraph> {
        if self.r < 2 {
            return Err(Error::InvalidParameter(
                "shadow needs uniformity >= 2".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for e in &self.edges {
            for skip in 0..self.r {
                let sub: Edge = e
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &w)| w)
                    .collect();
                set.insert(sub);
            }
        }
        Ok(Hypergraph::from_sorted_unchecked(
            self.r - 1,
            self.n,
            set.into_iter().collect(),
        ))
    }

    /// The subgraph induced on `subset`, relabelled to `0..|subset|` in
    /// increasing order of the original labels. The second component maps new
    /// labels back to old ones.
    pub fn induced(&self, subset: &[Vertex]) -> Result<(Hypergraph, Vec<Vertex>)> {
        let mut keep = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        // monotone relabelling preserves canonical order
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| new_index[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| new_index[v]).collect())
            .collect();
        Ok((
            Hypergraph::from_sorted_unchecked(self.r, keep.len(), edges),
            keep,
        ))
    }

    /// Whether `L(u) - v = L(v) - u`.
    pub fn is_symmetric_pair(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Pair::new(u, v)?;
        let trimmed = |x: Vertex, other: Vertex| -> Vec<Edge> {
            self.edges
                .iter()
                .filter(|e| e.contains(&x) && !e.contains(&other))
                .map(|e| e.iter().copied().filter(|&w| w != x).collect())
                .collect()
        };
        Ok(trimmed(u, v) == trimmed(v, u))
    }

    /// Symmetric `n x n` matrix: entry `[u][v]` is true iff some edge contains
    /// both `u` and `v` (`u != v`).
    pub fn pair_cover_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n]; self.n];
        for e in &self.edges {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    m[a][b] = true;
                    m[b][a] = true;
                }
            }
        }
        m
    }

    /// Every pair of vertices lies in a common edge.
    pub fn is_2_covered(&self) -> bool {
        let m = self.pair_cover_matrix();
        (0..self.n).all(|u| (u + 1..self.n).all(|v| m[u][v]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-graph on {} vertices with {} edges",
            self.r,
            self.n,
            self.edges.len()
        )
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
