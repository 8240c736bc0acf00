//! Blowups `G[V_1, ..., V_m]`: every vertex `i` becomes a block of
//! `sizes[i]` vertices and every edge a complete multipartite system on its
//! blocks. Blocks occupy contiguous index ranges ordered by `i`.

use serde::{Deserialize, Serialize};

use crate::construct::construct_gi;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::lagrangian::{lagrangian, LagrangianOptions};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartSizes(pub Vec<usize>);

impl PartSizes {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// First vertex index of every block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&s| {
                let start = acc;
                acc += s;
                start
            })
            .collect()
    }

    /// Block index of every blowup vertex.
    pub fn part_map(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }
}

impl From<Vec<usize>> for PartSizes {
    fn from(v: Vec<usize>) -> Self {
        PartSizes(v)
    }
}

fn check_len(g: &Hypergraph, parts: &PartSizes) -> Result<()> {
    if parts.0.len() != g.vertex_count() {
        Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: parts.0.len(),
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blowup {
    pub graph: Hypergraph,
    /// `part_of[v]` is the vertex of the base graph that `v` replaces.
    pub part_of: Vec<Vertex>,
}

pub fn blowup(g: &Hypergraph, parts: &PartSizes) -> Result<Blowup> {
    check_len(g, parts)?;
    let offsets = parts.offsets();
    let mut edges: Vec<Edge> = Vec::new();
    for e in g.edges() {
        // odometer over the blocks of e; sorted e with ordered blocks keeps
        // every produced tuple sorted
        if e.iter().any(|&v| parts.0[v] == 0) {
            continue;
        }
        let mut digits = vec![0usize; e.len()];
        'odometer: loop {
            edges.push(
                e.iter()
                    .zip(&digits)
                    .map(|(&v, &d)| offsets[v] + d)
                    .collect(),
            );
            let mut k = e.len();
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < parts.0[e[k]] {
                    continue 'odometer;
                }
                digits[k] = 0;
            }
        }
    }
    edges.sort_unstable();
    Ok(Blowup {
        graph: Hypergraph::from_sorted_unchecked(g.uniformity(), parts.total(), edges),
        part_of: parts.part_map(),
    })
}

fn count(g: &Hypergraph, sizes: &[usize]) -> u64 {
    g.edges()
        .iter()
        .map(|e| e.iter().map(|&v| sizes[v] as u64).product::<u64>())
        .sum()
}

/// `Σ_{E∈G} Π_{i∈E} sizes[i]` without materializing the blowup.
pub fn blowup_edge_count(g: &Hypergraph, parts: &PartSizes) -> Result<u64> {
    check_len(g, parts)?;
    Ok(count(g, &parts.0))
}

/// Rounds `n * weights` to non-negative integers summing to `n`: floors
/// first, then the leftover units go to the largest fractional parts, lower
/// index first on ties.
pub fn largest_remainder_round(weights: &[f64], n: usize) -> Vec<usize> {
    if weights.is_empty() {
        return Vec::new();
    }
    let total: f64 = weights.iter().sum();
    let scaled: Vec<f64> = weights.iter().map(|w| w / total * n as f64).collect();
    let mut out: Vec<usize> = scaled.iter().map(|x| x.floor() as usize).collect();
    let assigned: usize = out.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&i, &j| {
        let fi = scaled[i] - scaled[i].floor();
        let fj = scaled[j] - scaled[j].floor();
        fj.total_cmp(&fi).then(i.cmp(&j))
    });
    for &i in order.iter().cycle().take(n.saturating_sub(assigned)) {
        out[i] += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxBlowupOptions {
    /// Cap on accepted transfers.
    pub local_search_iters: usize,
    pub lagrangian: LagrangianOptions,
}

impl Default for MaxBlowupOptions {
    fn default() -> Self {
        MaxBlowupOptions {
            local_search_iters: 100_000,
            lagrangian: LagrangianOptions::default(),
        }
    }
}

/// Steepest-ascent hill climbing over single-unit transfers between blocks.
/// Stops at a configuration no single transfer improves (or after
/// `max_moves` accepted transfers).
pub fn transfer_local_search(
    g: &Hypergraph,
    parts: &PartSizes,
    max_moves: usize,
) -> Result<(PartSizes, u64)> {
    check_len(g, parts)?;
    let m = parts.0.len();
    let mut sizes = parts.0.clone();
    let mut current = count(g, &sizes);
    for _ in 0..max_moves {
        let mut best: Option<(usize, usize, u64)> = None;
        for from in 0..m {
            if sizes[from] == 0 {
                continue;
            }
            for to in 0..m {
                if to == from {
                    continue;
                }
                sizes[from] -= 1;
                sizes[to] += 1;
                let value = count(g, &sizes);
                sizes[to] -= 1;
                sizes[from] += 1;
                if value > best.map_or(current, |b| b.2) {
                    best = Some((from, to, value));
                }
            }
        }
        match best {
            Some((from, to, value)) => {
                sizes[from] -= 1;
                sizes[to] += 1;
                current = value;
            }
            None => break,
        }
    }
    Ok((PartSizes(sizes), current))
}

/// A locally maximal blowup of `g` on `n` vertices: largest-remainder rounding
/// of `n` times the optimizer's argmax, then [`transfer_local_search`]. Not
/// guaranteed to be a global maximum.
pub fn max_blowup(g: &Hypergraph, n: usize, opts: &MaxBlowupOptions) -> (PartSizes, u64) {
    let m = g.vertex_count();
    if m == 0 {
        return (PartSizes(Vec::new()), 0);
    }
    let report = lagrangian(g, &opts.lagrangian);
    let start = PartSizes(largest_remainder_round(report.argmax.as_slice(), n));
    transfer_local_search(g, &start, opts.local_search_iters).expect("lengths match")
}

/// Envelope constant `C` in `|G_n^i| >= λ n³ - C n²`.
pub const GNI_SLACK: f64 = 40.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GniConstruction {
    #[serde(skip)]
    pub graph: Hypergraph,
    pub parts: PartSizes,
    pub edge_count: u64,
}

/// `G_n^i`: a locally maximal blowup of `G_i` on `n` vertices.
pub fn construct_gni(
    t: usize,
    i: usize,
    n: usize,
    opts: &MaxBlowupOptions,
) -> Result<GniConstruction> {
    let gi = construct_gi(t, i)?;
    let (parts, edge_count) = max_blowup(&gi.graph, n, opts);
    let graph = blowup(&gi.graph, &parts)?.graph;
    Ok(GniConstruction {
        graph,
        parts,
        edge_count,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowReport {
    pub edge_count: usize,
    pub density: f64,
    pub complete_multipartite: bool,
    /// Parts of the shadow when it is complete multipartite.
    pub parts: Option<Vec<Vec<Vertex>>>,
}

/// Shadow size and density of a 3-graph, and whether the shadow is a
/// complete multipartite graph. Candidate parts are the connected components
/// of the shadow's complement; the answer is confirmed by checking every pair.
pub fn shadow_density_report(h: &Hypergraph) -> Result<ShadowReport> {
    if h.uniformity() != 3 {
        return Err(Error::UnsupportedUniformity {
            expected: 3,
            found: h.uniformity(),
        });
    }
    let n = h.vertex_count();
    let shadow = h.shadow()?;
    let adj = h.pair_cover_matrix();
    let pairs = n * n.saturating_sub(1) / 2;
    let density = if pairs == 0 {
        0.0
    } else {
        shadow.edge_count() as f64 / pairs as f64
    };

    let mut comp = vec![usize::MAX; n];
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            for w in 0..n {
                if w != u && !adj[u][w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    let complete = (0..n).all(|u| (u + 1..n).all(|v| adj[u][v] == (comp[u] != comp[v])));
    Ok(ShadowReport {
        edge_count: shadow.edge_count(),
        density,
        complete_multipartite: complete,
        parts: complete.then_some(parts),
    })
}
