//! The Lagrangian polynomial `p_H(x) = Σ_{E∈H} Π_{i∈E} x_i` and its maximum
//! over the standard simplex.
//!
//! [`lagrangian`] runs projected gradient ascent from many starting points;
//! [`lagrangian_grid_oracle`] is an exhaustive lattice search used as an
//! independent lower bound. [`closed_form_lambda`] and [`optimal_point`] give
//! the exact optimum of `K_{3t+3}^{3-}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph};

/// A point of the standard simplex indexed by vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexWeighting(Vec<f64>);

impl VertexWeighting {
    /// Normalizes `weights` onto the simplex. Entries must be finite and
    /// non-negative with a positive sum.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter(
                "weights must be finite and non-negative".into(),
            ));
        }
        if weights.is_empty() {
            return Ok(VertexWeighting(weights));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidParameter("weights sum to zero".into()));
        }
        Ok(VertexWeighting(
            weights.into_iter().map(|w| w / total).collect(),
        ))
    }

    pub fn uniform(n: usize) -> Self {
        VertexWeighting(vec![1.0 / n as f64; n])
    }

    pub fn indicator(n: usize, v: usize) -> Self {
        let mut w = vec![0.0; n];
        w[v] = 1.0;
        VertexWeighting(w)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangianReport {
    pub value: f64,
    pub argmax: VertexWeighting,
    pub restarts_used: usize,
    pub converged: bool,
    pub kkt_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianOptions {
    pub restarts: usize,
    pub max_iters: usize,
    /// Threshold on the Euclidean norm of `P(x + ∇p(x)) - x`.
    pub tol: f64,
    pub seed: u64,
    /// Include the known `K_{3t+3}^{3-}` / `G_i` optimum layouts among the
    /// starting points when the vertex count matches.
    pub seed_candidates: bool,
}

impl Default for LagrangianOptions {
    fn default() -> Self {
        LagrangianOptions {
            restarts: 64,
            max_iters: 100_000,
            tol: 1e-12,
            seed: 0,
            seed_candidates: true,
        }
    }
}

fn check_dim(h: &Hypergraph, w: &[f64]) -> Result<()> {
    if w.len() != h.vertex_count() {
        Err(Error::DimensionMismatch {
            expected: h.vertex_count(),
            found: w.len(),
        })
    } else {
        Ok(())
    }
}

fn eval_raw(h: &Hypergraph, w: &[f64]) -> f64 {
    h.edges()
        .iter()
        .map(|e| e.iter().map(|&v| w[v]).product::<f64>())
        .sum()
}

fn grad_raw(h: &Hypergraph, w: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|g| *g = 0.0);
    for e in h.edges() {
        if e.len() == 3 {
            let (a, b, c) = (e[0], e[1], e[2]);
            out[a] += w[b] * w[c];
            out[b] += w[a] * w[c];
            out[c] += w[a] * w[b];
        } else {
            for (i, &v) in e.iter().enumerate() {
                let prod: f64 = e
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &u)| w[u])
                    .product();
                out[v] += prod;
            }
        }
    }
}

/// Evaluates the Lagrangian polynomial at `w`.
pub fn poly_eval(h: &Hypergraph, w: &VertexWeighting) -> Result<f64> {
    check_dim(h, w.as_slice())?;
    Ok(eval_raw(h, w.as_slice()))
}

/// Partial derivatives of the Lagrangian polynomial.
pub fn poly_grad(h: &Hypergraph, w: &VertexWeighting) -> Result<Vec<f64>> {
    check_dim(h, w.as_slice())?;
    let mut g = vec![0.0; w.len()];
    grad_raw(h, w.as_slice(), &mut g);
    Ok(g)
}

/// Euclidean projection onto `{x : x >= 0, Σ x = 1}` (sort-based).
pub fn project_simplex(y: &[f64]) -> Vec<f64> {
    if y.is_empty() {
        return Vec::new();
    }
    let mut sorted = y.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (i + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        } else {
            break;
        }
    }
    y.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Subtracts the mean. Simplex projection ignores constant shifts, and
/// removing the common component keeps the projection threshold (and its
/// rounding) near zero.
fn centered(g: &[f64]) -> Vec<f64> {
    let mean = g.iter().sum::<f64>() / g.len() as f64;
    g.iter().map(|v| v - mean).collect()
}

fn projected_gradient_norm(x: &[f64], g: &[f64]) -> f64 {
    let shifted: Vec<f64> = x.iter().zip(centered(g)).map(|(a, b)| a + b).collect();
    project_simplex(&shifted)
        .iter()
        .zip(x)
        .map(|(p, a)| (p - a) * (p - a))
        .sum::<f64>()
        .sqrt()
}

struct Ascent {
    point: Vec<f64>,
    value: f64,
    converged: bool,
}

const ARMIJO: f64 = 1e-4;

fn ascend(h: &Hypergraph, start: Vec<f64>, opts: &LagrangianOptions) -> Ascent {
    let n = start.len();
    let mut x = project_simplex(&start);
    let mut f = eval_raw(h, &x);
    let mut g = vec![0.0; n];
    let mut gy = vec![0.0; n];
    let mut step = 1.0_f64;
    for _ in 0..opts.max_iters {
        grad_raw(h, &x, &mut g);
        if projected_gradient_norm(&x, &g) < opts.tol {
            return Ascent {
                point: x,
                value: f,
                converged: true,
            };
        }
        let gc = centered(&g);
        let mut s = (step * 2.0).min(1e6);
        let accepted = loop {
            let trial: Vec<f64> = x.iter().zip(&gc).map(|(a, b)| a + s * b).collect();
            let y = project_simplex(&trial);
            let fy = eval_raw(h, &y);
            let dist2: f64 = y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
            if dist2 == 0.0 {
                break None;
            }
            // small value differences drown in rounding; the trapezoid rule
            // on the gradient, centered over the moving coordinates, resolves
            // the gain instead
            let diff = fy - f;
            let gain = if diff.abs() < 1e-9 * f.abs().max(1.0) {
                grad_raw(h, &y, &mut gy);
                let moving: Vec<usize> = (0..n).filter(|&i| x[i] > 0.0 || y[i] > 0.0).collect();
                let avg: Vec<f64> = moving.iter().map(|&i| 0.5 * (g[i] + gy[i])).collect();
                centered(&avg)
                    .iter()
                    .zip(&moving)
                    .map(|(a, &i)| a * (y[i] - x[i]))
                    .sum::<f64>()
            } else {
                diff
            };
            if gain >= ARMIJO / s * dist2 {
                break Some((y, fy));
            }
            s *= 0.5;
            if s < 1e-30 {
                break None;
            }
        };
        match accepted {
            Some((y, fy)) => {
                x = y;
                f = fy;
                step = s;
            }
            None => break,
        }
    }
    grad_raw(h, &x, &mut g);
    let converged = projected_gradient_norm(&x, &g) < opts.tol;
    Ascent {
        point: x,
        value: f,
        converged,
    }
}

fn dirichlet_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

fn candidate_starts(h: &Hypergraph) -> Vec<Vec<f64>> {
    let n = h.vertex_count();
    let mut out = Vec::new();
    if h.uniformity() != 3 {
        return out;
    }
    if n >= 6 && n.is_multiple_of(3) {
        if let Ok(w) = optimal_point(n / 3 - 1, PointLayout::Base) {
            out.push(w.into_inner());
        }
    }
    if n >= 8 && (n - 2).is_multiple_of(3) {
        if let Ok(w) = optimal_point((n - 5) / 3, PointLayout::Mixed) {
            out.push(w.into_inner());
        }
    }
    out
}

/// Multi-restart projected gradient ascent on the simplex.
///
/// Restart 0 starts at the uniform point, then come the known optimum layouts
/// (when `seed_candidates` is set and the vertex count fits), then
/// Dirichlet(1) samples drawn from a per-restart stream of the master seed.
/// The best value wins; among ties a converged run is preferred, then the
/// lowest restart index.
pub fn lagrangian(h: &Hypergraph, opts: &LagrangianOptions) -> LagrangianReport {
    let n = h.vertex_count();
    if n == 0 || h.is_empty() || n < h.uniformity() {
        let argmax = if n == 0 {
            VertexWeighting(Vec::new())
        } else {
            VertexWeighting::uniform(n)
        };
        return LagrangianReport {
            value: 0.0,
            kkt_residual: kkt_check(h, &argmax, 0.0).unwrap_or(0.0),
            argmax,
            restarts_used: 0,
            converged: true,
        };
    }
    let restarts = opts.restarts.max(1);
    let candidates = if opts.seed_candidates {
        candidate_starts(h)
    } else {
        Vec::new()
    };
    let runs: Vec<Ascent> = (0..restarts)
        .into_par_iter()
        .map(|idx| {
            let start = if idx == 0 {
                vec![1.0 / n as f64; n]
            } else if idx <= candidates.len() {
                candidates[idx - 1].clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(idx as u64);
                dirichlet_point(n, &mut rng)
            };
            ascend(h, start, opts)
        })
        .collect();

    // values within a few ulps count as ties: a converged run beats an
    // unconverged one, otherwise the earlier restart stays
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        let incumbent = &runs[best];
        let slack = 16.0 * f64::EPSILON * incumbent.value.abs();
        let tie = run.value >= incumbent.value - slack && run.value <= incumbent.value + slack;
        if run.value > incumbent.value + slack || (tie && run.converged && !incumbent.converged) {
            best = i;
        }
    }
    let Ascent {
        point, converged, ..
    } = runs.into_iter().nth(best).expect("at least one restart");
    let argmax = VertexWeighting(point);
    let value = eval_raw(h, argmax.as_slice());
    LagrangianReport {
        value,
        kkt_residual: kkt_check(h, &argmax, 0.0).expect("dimensions match"),
        argmax,
        restarts_used: restarts,
        converged,
    }
}

/// Largest number of lattice points [`lagrangian_grid_oracle`] will visit.
pub const GRID_LIMIT: u128 = 100_000_000;

/// Exact maximum of `p_H` over simplex points with denominator `resolution`,
/// together with the maximizing numerators.
pub fn grid_argmax(h: &Hypergraph, resolution: u64) -> Result<(f64, Vec<u64>)> {
    let n = h.vertex_count();
    if n == 0 {
        return Ok((0.0, Vec::new()));
    }
    if resolution == 0 {
        return Err(Error::InvalidParameter(
            "grid resolution must be positive".into(),
        ));
    }
    let points = binomial(resolution + n as u64 - 1, n as u64 - 1);
    if points > GRID_LIMIT {
        return Err(Error::GridTooLarge {
            points,
            limit: GRID_LIMIT,
        });
    }

    fn walk(
        h: &Hypergraph,
        counts: &mut Vec<u64>,
        pos: usize,
        left: u64,
        best: &mut (u128, Vec<u64>),
    ) {
        if pos + 1 == counts.len() {
            counts[pos] = left;
            let value: u128 = h
                .edges()
                .iter()
                .map(|e| e.iter().map(|&v| counts[v] as u128).product::<u128>())
                .sum();
            if value > best.0 || best.1.is_empty() {
                *best = (value, counts.clone());
            }
            return;
        }
        for c in (0..=left).rev() {
            counts[pos] = c;
            walk(h, counts, pos + 1, left - c, best);
        }
    }

    let mut counts = vec![0; n];
    let mut best = (0u128, Vec::new());
    walk(h, &mut counts, 0, resolution, &mut best);
    let scale = (resolution as f64).powi(h.uniformity() as i32);
    Ok((best.0 as f64 / scale, best.1))
}

/// Lower bound on the Lagrangian from exhaustive lattice search.
pub fn lagrangian_grid_oracle(h: &Hypergraph, resolution: u64) -> Result<f64> {
    grid_argmax(h, resolution).map(|(v, _)| v)
}

/// The Lagrangian of `K_{3t+3}^{3-}` in closed form, with `s = 3t`:
/// `(27s - 9s² - 9s³ - s⁴ + s(s²+6s-3)^{3/2}) / 324`.
pub fn closed_form_lambda(t: usize) -> Result<f64> {
    if t < 1 {
        return Err(Error::InvalidParameter("closed form needs t >= 1".into()));
    }
    let s = 3.0 * t as f64;
    let q = s * s + 6.0 * s - 3.0;
    Ok((27.0 * s - 9.0 * s * s - 9.0 * s.powi(3) - s.powi(4) + s * q * q.sqrt()) / 324.0)
}

/// The weights `(a, b)` of the unique optimum of `K_{3t+3}^{3-}`.
pub fn optimum_weights(t: usize) -> (f64, f64) {
    let tf = t as f64;
    let a = 2.0 / (3.0 * tf + 3.0 + (9.0 * tf * tf + 18.0 * tf - 3.0).sqrt());
    (a, 1.0 / 3.0 - tf * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointLayout {
    /// `K_{3t+3}^{3-}`: `a` on the first `3t` vertices, `b` on the last three.
    Base,
    /// `G_i` in the order `1, 1', 2, 2', 3, ..., 3t+3`: `a/2` four times,
    /// `a` for the remaining `3t-2` middle vertices, `b` three times.
    Mixed,
}

pub fn optimal_point(t: usize, layout: PointLayout) -> Result<VertexWeighting> {
    if t < 1 {
        return Err(Error::InvalidParameter("optimal point needs t >= 1".into()));
    }
    let (a, b) = optimum_weights(t);
    let mut w = Vec::with_capacity(3 * t + 5);
    match layout {
        PointLayout::Base => w.extend(std::iter::repeat_n(a, 3 * t)),
        PointLayout::Mixed => {
            w.extend(std::iter::repeat_n(a / 2.0, 4));
            w.extend(std::iter::repeat_n(a, 3 * t - 2));
        }
    }
    w.extend(std::iter::repeat_n(b, 3));
    VertexWeighting::new(w)
}

/// First-order optimality residual on the simplex. Coordinates above
/// `support_tol` form the support; with `μ` the mean partial derivative there,
/// returns `max_supp |∂_i p - μ| + max_off max(0, ∂_i p - μ)`.
pub fn kkt_check(h: &Hypergraph, w: &VertexWeighting, support_tol: f64) -> Result<f64> {
    let g = poly_grad(h, w)?;
    let support: Vec<usize> = (0..w.len())
        .filter(|&i| w.as_slice()[i] > support_tol)
        .collect();
    if support.is_empty() {
        return Ok(0.0);
    }
    let mu = support.iter().map(|&i| g[i]).sum::<f64>() / support.len() as f64;
    let on = support
        .iter()
        .map(|&i| (g[i] - mu).abs())
        .fold(0.0, f64::max);
    let off = (0..w.len())
        .filter(|&i| w.as_slice()[i] <= support_tol)
        .map(|i| (g[i] - mu).max(0.0))
        .fold(0.0, f64::max);
    Ok(on + off)
}

/// `|blowup| <= λ v^r + 1e-6 v^r` for a known Lagrangian value `lambda`.
pub fn blowup_bound_holds(lambda: f64, blowup: &Hypergraph) -> bool {
    let scale = (blowup.vertex_count() as f64).powi(blowup.uniformity() as i32);
    blowup.edge_count() as f64 <= lambda * scale + 1e-6 * scale
}

/// Checks the edge bound for a blowup of `h` against `h`'s optimized Lagrangian.
pub fn blowup_bound_check(h: &Hypergraph, blowup: &Hypergraph) -> bool {
    let lambda = lagrangian(h, &LagrangianOptions::default()).value;
    blowup_bound_holds(lambda, blowup)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMBDA_T1: f64 = 0.088_662_107_903_635_6;

    fn single() -> Hypergraph {
        Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap()
    }

    fn fano() -> Hypergraph {
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
        .unwrap()
    }

    #[test]
    fn weighting_normalizes() {
        let w = VertexWeighting::new(vec![1.0, 1.0, 2.0]).unwrap();
        assert_eq!(w.as_slice(), &[0.25, 0.25, 0.5]);
        assert!(VertexWeighting::new(vec![-1.0, 2.0]).is_err());
        assert!(VertexWeighting::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn evaluation() {
        let v = poly_eval(&single(), &VertexWeighting::uniform(3)).unwrap();
        assert!((v - 1.0 / 27.0).abs() < 1e-16);
        let k1 = Hypergraph::complete_minus(1).unwrap();
        for v in 0..6 {
            assert_eq!(
                poly_eval(&k1, &VertexWeighting::indicator(6, v)).unwrap(),
                0.0
            );
        }
        let w = optimal_point(1, PointLayout::Base).unwrap();
        assert!((poly_eval(&k1, &w).unwrap() - LAMBDA_T1).abs() < 1e-15);
        assert!(matches!(
            poly_eval(&k1, &VertexWeighting::uniform(5)),
            Err(Error::DimensionMismatch {
                expected: 6,
                found: 5
            })
        ));
    }

    #[test]
    fn gradient() {
        let g = poly_grad(&single(), &VertexWeighting::uniform(3)).unwrap();
        for x in g {
            assert!((x - 1.0 / 9.0).abs() < 1e-16);
        }
        let k1 = Hypergraph::complete_minus(1).unwrap();
        let w = optimal_point(1, PointLayout::Base).unwrap();
        let g = poly_grad(&k1, &w).unwrap();
        for x in &g {
            assert!((x - g[0]).abs() < 1e-8);
        }
        // generic path for r = 4
        let h4 = Hypergraph::complete(4, 5);
        let w = VertexWeighting::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let g = poly_grad(&h4, &w).unwrap();
        let dot: f64 = g.iter().zip(w.as_slice()).map(|(a, b)| a * b).sum();
        assert!((dot - 4.0 * poly_eval(&h4, &w).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn projection() {
        let p = project_simplex(&[0.5, 0.5, 0.5]);
        for x in &p {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(project_simplex(&[2.0, 0.0]), vec![1.0, 0.0]);
        let p = project_simplex(&[0.3, -0.2, 0.9]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(p.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn optimizer_known_values() {
        let opts = LagrangianOptions::default();
        let f = lagrangian(&fano(), &opts);
        assert!((f.value - 1.0 / 27.0).abs() < 1e-9, "{}", f.value);
        let s = lagrangian(&single(), &opts);
        assert!((s.value - 1.0 / 27.0).abs() < 1e-12);
        assert!(s.converged);
        let k = lagrangian(&Hypergraph::complete_minus(1).unwrap(), &opts);
        assert!((k.value - LAMBDA_T1).abs() < 1e-8);
        assert!(k.converged);
        assert!(
            (k.value - poly_eval(&Hypergraph::complete_minus(1).unwrap(), &k.argmax).unwrap())
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn optimizer_without_candidate_starts() {
        let opts = LagrangianOptions {
            seed_candidates: false,
            ..Default::default()
        };
        for t in 1..=2 {
            let k = lagrangian(&Hypergraph::complete_minus(t).unwrap(), &opts);
            assert!((k.value - closed_form_lambda(t).unwrap()).abs() < 1e-8);
            assert!(k.converged);
        }
    }

    #[test]
    fn degenerate_inputs() {
        let e = lagrangian(&Hypergraph::empty(3, 4), &LagrangianOptions::default());
        assert_eq!(e.value, 0.0);
        assert_eq!(e.argmax, VertexWeighting::uniform(4));
        assert!(e.converged);
        let z = lagrangian(&Hypergraph::empty(3, 0), &LagrangianOptions::default());
        assert!(z.argmax.is_empty());
    }

    #[test]
    fn determinism() {
        let h = Hypergraph::new(
            3,
            6,
            [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 4, 5], [1, 3, 5]],
        )
        .unwrap();
        let opts = LagrangianOptions {
            seed: 11,
            ..Default::default()
        };
        let a = lagrangian(&h, &opts);
        let b = lagrangian(&h, &opts);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn grid_oracle_values() {
        assert_eq!(lagrangian_grid_oracle(&single(), 30).unwrap(), 1.0 / 27.0);
        let (v, point) = grid_argmax(&Hypergraph::complete(3, 4), 40).unwrap();
        assert_eq!(v, 1.0 / 16.0);
        assert_eq!(point, vec![10, 10, 10, 10]);
        let k1 = Hypergraph::complete_minus(1).unwrap();
        let v = lagrangian_grid_oracle(&k1, 60).unwrap();
        assert!(v <= LAMBDA_T1 && LAMBDA_T1 - v < 5e-3);
        assert!(matches!(
            lagrangian_grid_oracle(&Hypergraph::complete(3, 12), 100),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn closed_form_values() {
        let t1 = (4.0 * 6f64.sqrt() - 9.0) / 9.0;
        assert!((closed_form_lambda(1).unwrap() - t1).abs() < 1e-15);
        assert!((closed_form_lambda(1).unwrap() - LAMBDA_T1).abs() < 1e-12);
        let t2 = (-3402.0 + 414.0 * 69f64.sqrt()) / 324.0;
        assert!((closed_form_lambda(2).unwrap() - t2).abs() < 1e-13);
        assert!((closed_form_lambda(2).unwrap() - 0.114_019_4).abs() < 1e-7);
        for t in 1..=10 {
            let d = 6.0 * closed_form_lambda(t).unwrap();
            assert!(d > 0.0 && d < 1.0);
        }
        assert!(closed_form_lambda(0).is_err());
    }

    #[test]
    fn optimum_layouts() {
        let base = optimal_point(1, PointLayout::Base).unwrap();
        let expected = [
            0.183_503_419_1,
            0.183_503_419_1,
            0.183_503_419_1,
            0.149_829_914_3,
            0.149_829_914_3,
            0.149_829_914_3,
        ];
        for (x, e) in base.as_slice().iter().zip(expected) {
            assert!((x - e).abs() < 1e-10);
        }
        let mixed = optimal_point(1, PointLayout::Mixed).unwrap();
        assert_eq!(mixed.len(), 8);
        assert!((mixed.as_slice()[0] - 0.091_751_709_5).abs() < 1e-10);
        assert!((mixed.as_slice()[4] - 0.183_503_419_1).abs() < 1e-10);
        for t in 1..=6 {
            let (a, b) = optimum_weights(t);
            assert!((3.0 * t as f64 * a + 3.0 * b - 1.0).abs() < 1e-15);
            assert_eq!(
                optimal_point(t, PointLayout::Mixed).unwrap().len(),
                3 * t + 5
            );
        }
    }

    #[test]
    fn kkt_residuals() {
        assert!(kkt_check(&single(), &VertexWeighting::uniform(3), 0.0).unwrap() < 1e-14);
        let k1 = Hypergraph::complete_minus(1).unwrap();
        let w = optimal_point(1, PointLayout::Base).unwrap();
        assert!(kkt_check(&k1, &w, 0.0).unwrap() < 1e-9);
        assert!(kkt_check(&k1, &VertexWeighting::uniform(6), 0.0).unwrap() > 1e-3);
    }

    #[test]
    fn blowup_bound_examples() {
        let k1 = Hypergraph::complete_minus(1).unwrap();
        assert!(blowup_bound_check(&k1, &k1));
        assert!(k1.edge_count() as f64 <= LAMBDA_T1 * 216.0);
        // 8 edges on 6 vertices against λ = 1/27 is tight
        let b = Hypergraph::new(
            3,
            6,
            [
                [0, 2, 4],
                [0, 2, 5],
                [0, 3, 4],
                [0, 3, 5],
                [1, 2, 4],
                [1, 2, 5],
                [1, 3, 4],
                [1, 3, 5],
            ],
        )
        .unwrap();
        assert!(blowup_bound_holds(1.0 / 27.0, &b));
        assert!(!blowup_bound_holds(1.0 / 27.0 - 1e-4, &b));
    }
}
