//! End-to-end numerical checks of the construction, run for `t = 1..=t_max`.
//!
//! Every check is deterministic for a fixed seed and reports its measured
//! values rounded to 12 significant digits, so two runs with the same
//! configuration serialize to identical bytes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blowup::{
    blowup, construct_gni, largest_remainder_round, shadow_density_report, MaxBlowupOptions,
    PartSizes,
};
use crate::construct::{codegree_mismatches, construct_gi, quotient};
use crate::error::{Error, Result};
use crate::fixtures::{random_hypergraph, random_simplex_point, random_two_covered, single_edge};
use crate::hom::{find_homomorphism, is_colorable, is_f_free, mt_member};
use crate::hypergraph::Hypergraph;
use crate::lagrangian::{
    closed_form_lambda, kkt_check, lagrangian, lagrangian_grid_oracle, optimal_point, poly_eval,
    poly_grad, LagrangianOptions, PointLayout, VertexWeighting,
};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub t_max: usize,
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
    pub budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            t_max: 3,
            seed: 0,
            restarts: 64,
            tol: 1e-12,
            budget: crate::hom::DEFAULT_BUDGET,
        }
    }
}

impl VerifyConfig {
    fn lagrangian_options(&self) -> LagrangianOptions {
        LagrangianOptions {
            restarts: self.restarts,
            tol: self.tol,
            seed: self.seed,
            ..Default::default()
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub t_max: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {:>2} {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.details.join("; ")
            ));
        }
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        out
    }
}

/// Formats `x` with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// Rounds to 12 significant digits (for JSON output).
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

struct Check {
    passed: bool,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            passed: true,
            details: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, detail: String) {
        self.passed &= ok;
        self.details.push(if ok {
            detail
        } else {
            format!("FAILED {detail}")
        });
    }
}

/// Runs every check for `t = 1..=cfg.t_max`.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.t_max < 1 {
        return Err(Error::InvalidParameter("t_max must be at least 1".into()));
    }
    let ts: Vec<usize> = (1..=cfg.t_max).collect();
    let checks: Vec<(&str, Check)> = vec![
        (
            "irrational lagrangian of K_{3t+3}^{3-}",
            check_closed_form(cfg, &ts)?,
        ),
        (
            "optimum point of K_{3t+3}^{3-}",
            check_optimum_point(cfg, &ts)?,
        ),
        (
            "mix-crossed blowup preserves the lagrangian",
            check_preservation(cfg, &ts)?,
        ),
        ("structure of G_i", check_gi_structure(&ts)?),
        ("codegree table of G_1", check_codegrees(&ts)?),
        ("blowup edge bound", check_blowup_bound(cfg)?),
        ("density of G_n^1 at finite n", check_density(cfg)?),
        ("forbidden family oracle", check_mt(cfg)?),
        ("F-free versus F-hom-free", check_duality(cfg)?),
        ("optimizer versus lattice oracle", check_grid(cfg)?),
        ("gradient versus finite differences", check_gradient(cfg)),
        ("shadows of G_n^i", check_shadows(cfg, &ts)?),
        ("symmetrization round trip", check_round_trip(cfg, &ts)?),
    ];
    let checks: Vec<CheckOutcome> = checks
        .into_iter()
        .enumerate()
        .map(|(i, (name, c))| CheckOutcome {
            id: i + 1,
            name: name.to_string(),
            passed: c.passed,
            details: c.details,
        })
        .collect();
    Ok(VerifyReport {
        t_max: cfg.t_max,
        seed: cfg.seed,
        all_passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn check_closed_form(cfg: &VerifyConfig, ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    for &t in ts {
        let exact = closed_form_lambda(t)?;
        let found = lagrangian(&Hypergraph::complete_minus(t)?, &cfg.lagrangian_options()).value;
        c.expect(
            (found - exact).abs() < 1e-8,
            format!(
                "t={t} optimizer={} closed_form={}",
                sig12(found),
                sig12(exact)
            ),
        );
    }
    Ok(c)
}

fn check_optimum_point(cfg: &VerifyConfig, ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    for &t in ts {
        let k = Hypergraph::complete_minus(t)?;
        let point = optimal_point(t, PointLayout::Base)?;
        let residual = kkt_check(&k, &point, 0.0)?;
        let report = lagrangian(&k, &cfg.lagrangian_options());
        let mut found = report.argmax.into_inner();
        // symmetry classes: the first 3t vertices and the last three
        found[..3 * t].sort_by(f64::total_cmp);
        found[3 * t..].sort_by(f64::total_cmp);
        let deviation = found
            .iter()
            .zip(point.as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        c.expect(
            residual < 1e-9 && deviation < 1e-5,
            format!(
                "t={t} kkt={} max_deviation={}",
                sig12(residual),
                sig12(deviation)
            ),
        );
    }
    Ok(c)
}

fn check_preservation(cfg: &VerifyConfig, ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    for &t in ts {
        let exact = closed_form_lambda(t)?;
        let mixed = optimal_point(t, PointLayout::Mixed)?;
        for i in 1..=t.min(3 * t - 1) {
            let g = construct_gi(t, i)?.graph;
            let found = lagrangian(&g, &cfg.lagrangian_options()).value;
            let lifted = poly_eval(&g, &mixed)?;
            c.expect(
                (found - exact).abs() < 1e-7 && (lifted - exact).abs() < 1e-10,
                format!(
                    "t={t} i={i} optimizer={} lifted={}",
                    sig12(found),
                    sig12(lifted)
                ),
            );
        }
    }
    Ok(c)
}

fn check_gi_structure(ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    for &t in ts {
        for i in 1..=t {
            let g = construct_gi(t, i)?.graph;
            let size_ok = t != 1 || g.edge_count() == 43;
            c.expect(
                g.vertex_count() == 3 * t + 5 && g.is_2_covered() && size_ok,
                format!(
                    "t={t} i={i} vertices={} edges={} 2-covered={}",
                    g.vertex_count(),
                    g.edge_count(),
                    g.is_2_covered()
                ),
            );
        }
    }
    Ok(c)
}

fn check_codegrees(ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    for &t in ts {
        let bad = codegree_mismatches(t)?;
        let pairs = (3 * t + 5) * (3 * t + 4) / 2;
        c.expect(
            bad.is_empty(),
            format!("t={t} pairs={pairs} mismatches={}", bad.len()),
        );
    }
    Ok(c)
}

fn check_blowup_bound(cfg: &VerifyConfig) -> Result<Check> {
    let mut c = Check::new();
    let mut rng = cfg.rng(6);
    let fixtures = [
        ("single edge", single_edge()),
        ("K_4^3", Hypergraph::complete(3, 4)),
        ("K_6^{3-}", Hypergraph::complete_minus(1)?),
        ("G_1", construct_gi(1, 1)?.graph),
    ];
    for (name, g) in &fixtures {
        let lambda = lagrangian(g, &cfg.lagrangian_options()).value;
        let mut worst: f64 = f64::NEG_INFINITY;
        let mut ok = true;
        for _ in 0..125 {
            let parts = PartSizes(
                (0..g.vertex_count())
                    .map(|_| rng.random_range(0..=5))
                    .collect(),
            );
            let n = parts.total() as f64;
            let b = blowup(g, &parts)?.graph;
            let ratio = if n > 0.0 {
                b.edge_count() as f64 / n.powi(3)
            } else {
                0.0
            };
            worst = worst.max(ratio - lambda);
            ok &= crate::lagrangian::blowup_bound_holds(lambda, &b);
        }
        c.expect(
            ok,
            format!("{name} trials=125 max(|B|/n^3 - lambda)={}", sig12(worst)),
        );
    }
    let lambda = lagrangian(&single_edge(), &cfg.lagrangian_options()).value;
    let mut tight = true;
    for k in 1..=6 {
        let b = blowup(&single_edge(), &PartSizes(vec![k; 3]))?.graph;
        let n3 = (3 * k) as f64;
        let n3 = n3 * n3 * n3;
        tight &=
            b.edge_count() == k * k * k && (b.edge_count() as f64 - lambda * n3).abs() <= 1e-6 * n3;
    }
    c.expect(
        tight,
        "single edge (k,k,k) blowups meet the bound with equality for k=1..6".into(),
    );
    Ok(c)
}

fn check_density(cfg: &VerifyConfig) -> Result<Check> {
    let mut c = Check::new();
    let target = 6.0 * closed_form_lambda(1)?;
    let opts = MaxBlowupOptions {
        lagrangian: cfg.lagrangian_options(),
        ..Default::default()
    };
    let mut last_gap = f64::INFINITY;
    for n in [30usize, 60, 90] {
        let g = construct_gni(1, 1, n, &opts)?;
        let density = 6.0 * g.edge_count as f64 / (n as f64).powi(3);
        let gap = target - density;
        let in_window = density <= target && density >= target - 12.0 / n as f64;
        c.expect(
            in_window,
            format!(
                "n={n} edges={} density={} gap={}",
                g.edge_count,
                sig12(density),
                sig12(gap)
            ),
        );
        if last_gap.is_finite() {
            c.expect(
                gap < last_gap,
                format!("n={n} gap smaller than at the previous n"),
            );
        }
        last_gap = gap;
    }
    c.details.push(format!("limit 6*lambda={}", sig12(target)));
    Ok(c)
}

fn check_mt(cfg: &VerifyConfig) -> Result<Check> {
    let mut c = Check::new();
    let fixtures1 = vec![construct_gi(1, 1)?.graph];
    let cases = [
        ("K_9^3", Hypergraph::complete(3, 9), true),
        ("G_1", fixtures1[0].clone(), false),
        ("single edge", single_edge(), false),
    ];
    for (name, f, expected) in cases {
        let got = mt_member(&f, 1, &fixtures1, cfg.budget)?;
        c.expect(got == expected, format!("t=1 {name} member={got}"));
    }
    if cfg.t_max >= 2 {
        let fixtures2: Vec<Hypergraph> = (1..=2)
            .map(|i| construct_gi(2, i).map(|g| g.graph))
            .collect::<Result<_>>()?;
        let got = mt_member(&Hypergraph::complete(3, 12), 2, &fixtures2, cfg.budget)?;
        c.expect(got, format!("t=2 K_12^3 member={got}"));
    }
    Ok(c)
}

fn check_duality(cfg: &VerifyConfig) -> Result<Check> {
    let mut c = Check::new();
    let mut rng = cfg.rng(9);
    let mut agree = 0;
    let mut free = 0;
    for _ in 0..500 {
        let h = random_hypergraph(
            3,
            rng.random_range(3..=7),
            rng.random_range(0.2..0.9),
            &mut rng,
        );
        let f = random_two_covered(
            rng.random_range(3..=5),
            rng.random_range(0.0..0.5),
            &mut rng,
        );
        let by_containment = is_f_free(&h, &f, cfg.budget)?;
        let by_hom = !is_colorable(&f, &h, cfg.budget)?;
        agree += usize::from(by_containment == by_hom);
        free += usize::from(by_containment);
    }
    c.expect(
        agree == 500,
        format!("fixtures=500 agreeing={agree} F-free={free}"),
    );
    Ok(c)
}

fn check_grid(cfg: &VerifyConfig) -> Result<Check> {
    let mut c = Check::new();
    let mut rng = cfg.rng(10);
    let mut fixtures = vec![
        ("single edge".to_string(), single_edge()),
        ("K_4^3".to_string(), Hypergraph::complete(3, 4)),
        ("K_5^3".to_string(), Hypergraph::complete(3, 5)),
        ("K_6^{3-}".to_string(), Hypergraph::complete_minus(1)?),
    ];
    for k in 0..4 {
        let n = 5 + k % 2;
        fixtures.push((
            format!("random#{k}"),
            random_hypergraph(3, n, 0.5, &mut rng),
        ));
    }
    for (name, h) in fixtures {
        let opt = lagrangian(&h, &cfg.lagrangian_options()).value;
        let grid = lagrangian_grid_oracle(&h, 60)?;
        c.expect(
            (opt - grid).abs() <= 5e-3 && opt >= grid - 1e-12,
            format!("{name} optimizer={} grid60={}", sig12(opt), sig12(grid)),
        );
    }
    Ok(c)
}

fn check_gradient(cfg: &VerifyConfig) -> Check {
    let mut c = Check::new();
    let mut rng = cfg.rng(11);
    let step = 1e-6;
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(3..=8);
        let h = random_hypergraph(3, n, rng.random_range(0.2..0.9), &mut rng);
        let w = VertexWeighting::new(random_simplex_point(n, &mut rng)).expect("simplex point");
        let g = poly_grad(&h, &w).expect("dimensions match");
        for i in 0..n {
            let mut plus = w.as_slice().to_vec();
            let mut minus = plus.clone();
            plus[i] += step;
            minus[i] -= step;
            let fd = (raw_eval(&h, &plus) - raw_eval(&h, &minus)) / (2.0 * step);
            worst = worst.max((fd - g[i]).abs() / g[i].abs().max(1e-2));
        }
    }
    c.expect(
        worst <= 1e-6,
        format!("pairs=200 max_relative_error={}", sig12(worst)),
    );
    c
}

fn raw_eval(h: &Hypergraph, w: &[f64]) -> f64 {
    h.edges()
        .iter()
        .map(|e| e.iter().map(|&v| w[v]).product::<f64>())
        .sum()
}

fn check_shadows(cfg: &VerifyConfig, ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    let opts = MaxBlowupOptions {
        lagrangian: cfg.lagrangian_options(),
        ..Default::default()
    };
    for &t in ts.iter().filter(|&&t| t <= 2) {
        for n in [20usize, 40] {
            let g = construct_gni(t, 1, n, &opts)?;
            let report = shadow_density_report(&g.graph)?;
            let nonempty = g.parts.as_slice().iter().filter(|&&s| s > 0).count();
            let parts = report.parts.as_ref().map_or(0, Vec::len);
            c.expect(
                report.complete_multipartite && parts == 3 * t + 5 && nonempty == 3 * t + 5,
                format!(
                    "t={t} n={n} complete {parts}-partite, density={}",
                    sig12(report.density)
                ),
            );
            let sizes = PartSizes(largest_remainder_round(
                optimal_point(t, PointLayout::Mixed)?.as_slice(),
                n,
            ));
            let counts: Vec<usize> = (1..=t)
                .map(|i| -> Result<usize> {
                    let gi = construct_gi(t, i)?.graph;
                    Ok(blowup(&gi, &sizes)?.graph.shadow()?.edge_count())
                })
                .collect::<Result<_>>()?;
            c.expect(
                counts.windows(2).all(|w| w[0] == w[1]),
                format!("t={t} n={n} shadow edges across i: {counts:?}"),
            );
        }
    }
    Ok(c)
}

fn check_round_trip(cfg: &VerifyConfig, ts: &[usize]) -> Result<Check> {
    let mut c = Check::new();
    let mut rng = cfg.rng(13);
    for &t in ts {
        let g = construct_gi(t, 1)?.graph;
        let mut ok = 0;
        for _ in 0..20 {
            let parts = PartSizes(
                (0..g.vertex_count())
                    .map(|_| rng.random_range(1..=3))
                    .collect(),
            );
            let b = blowup(&g, &parts)?.graph;
            let q = quotient(&b).graph;
            let forward = find_homomorphism(&q, &g, true, cfg.budget)?.is_some();
            let backward = find_homomorphism(&g, &q, true, cfg.budget)?.is_some();
            ok += usize::from(forward && backward && q.vertex_count() == g.vertex_count());
        }
        c.expect(ok == 20, format!("t={t} round trips={ok}/20"));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.088_662_107_903_635_6), "0.0886621079036");
        assert_eq!(sig12(19_151.0), "19151.0000000");
        assert_eq!(sig12(1e-9), "1.00000000000e-9");
        assert_eq!(round12(0.088_662_107_903_635_6), 0.0886621079036);
    }

    #[test]
    fn rejects_zero_t_max() {
        let cfg = VerifyConfig {
            t_max: 0,
            ..Default::default()
        };
        assert!(run_verification(&cfg).is_err());
    }
}
