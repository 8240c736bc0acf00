use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use mixcross::blowup::{max_blowup, shadow_density_report, MaxBlowupOptions};
use mixcross::construct::{
    codegree_table, construct_gi, heuristic_min_edit, is_symmetrized, mix_crossed_blowup, quotient,
    EditSearchOptions, MixCrossSpec,
};
use mixcross::hom::{find_homomorphism, is_colorable, mt_member};
use mixcross::lagrangian::{closed_form_lambda, grid_argmax, lagrangian, optimum_weights};
use mixcross::verify::{round12, run_verification, sig12, VerifyConfig};
use mixcross::{Error, Hypergraph, LagrangianOptions};
use serde_json::{json, Value};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(
    name = "mixcross",
    version,
    about = "Hypergraph Lagrangians and mix-crossed blowups"
)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Optimizer restarts
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    restarts: u64,
    /// Optimizer stopping tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Node budget for homomorphism searches
    #[arg(long, global = true, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Emit JSON (default)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit plain text
    #[arg(long, global = true)]
    text: bool,
    /// Write the result here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

impl RunConfig {
    fn lagrangian_options(&self) -> LagrangianOptions {
        LagrangianOptions {
            restarts: self.restarts as usize,
            tol: self.tol,
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Maximize the Lagrangian of a hypergraph
    Lagrangian { input: PathBuf },
    /// Exhaustive lattice maximum of the Lagrangian
    GridOracle {
        input: PathBuf,
        #[arg(long, default_value_t = 60)]
        resolution: u64,
    },
    /// Closed-form Lagrangian of K_{3t+3}^{3-} and its optimum weights
    ClosedForm {
        #[arg(long)]
        t: usize,
    },
    /// Build K_{3t+3}^{3-}, G_i or G_n^i
    #[command(group(ArgGroup::new("kind").required(true).args(["kminus", "gi", "gni"])))]
    Construct {
        #[arg(long)]
        kminus: bool,
        #[arg(long)]
        gi: bool,
        #[arg(long)]
        gni: bool,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, required_if_eq("gni", "true"))]
        n: Option<usize>,
        /// Write vertex labels / part sizes here
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Mix-crossed blowup on the pair {v1, v2}
    MixBlowup {
        input: PathBuf,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Common neighbourhood order (defaults to increasing)
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
    /// Locally maximal blowup on n vertices
    MaxBlowup {
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Search for a homomorphism F -> G
    Hom {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        injective: bool,
    },
    /// Whether F is G-colourable
    Colorable { f: PathBuf, g: PathBuf },
    /// Membership of F in the forbidden family M_t
    MtMember {
        f: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Codegree of every vertex pair
    CodegreeTable { input: PathBuf },
    /// Equivalence classes and quotient
    Symmetrize { input: PathBuf },
    /// Shadow size, density and multipartite structure
    Shadow { input: PathBuf },
    /// Heuristic minimum edit distance over bijections
    EditDist {
        h1: PathBuf,
        h2: PathBuf,
        #[arg(long, default_value_t = 16)]
        edit_restarts: usize,
    },
    /// Run the numerical check suite
    VerifyPaper {
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
}

struct Outcome {
    value: Value,
    text: Option<String>,
    /// Preformatted output used in both modes (canonical hypergraph JSON).
    verbatim: Option<String>,
    code: u8,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome {
            value,
            text: None,
            verbatim: None,
            code: 0,
        }
    }

    fn graph(h: &Hypergraph) -> Self {
        Outcome {
            value: Value::Null,
            text: None,
            verbatim: Some(format!("{}\n", h.to_json())),
            code: 0,
        }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.run.tol.is_nan() || cli.run.tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(outcome) => {
            let rendered = if let Some(v) = outcome.verbatim.clone() {
                v
            } else if cli.run.text {
                outcome
                    .text
                    .clone()
                    .unwrap_or_else(|| render_text(&outcome.value, ""))
            } else {
                let mut s =
                    serde_json::to_string_pretty(&round_value(outcome.value)).expect("json value");
                s.push('\n');
                s
            };
            if let Err(e) = emit(cli.run.output.as_deref(), &rendered) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CodegreeTooSmall { .. } => EXIT_INFEASIBLE,
        Error::SearchBudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn read_graph(path: &Path) -> Result<Hypergraph, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidParameter(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("reading {}: {e}", path.display())))?
    };
    Hypergraph::from_json(&text)
}

fn graph_value(h: &Hypergraph) -> Value {
    serde_json::to_value(h).expect("hypergraph serializes")
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cfg = &cli.run;
    let outcome = match &cli.command {
        Command::Lagrangian { input } => {
            let h = read_graph(input)?;
            let report = lagrangian(&h, &cfg.lagrangian_options());
            let code = if report.converged {
                0
            } else {
                EXIT_NOT_CONVERGED
            };
            Outcome::ok(serde_json::to_value(&report)?).with_code(code)
        }
        Command::GridOracle { input, resolution } => {
            let h = read_graph(input)?;
            let (value, point) = grid_argmax(&h, *resolution)?;
            let weights: Vec<f64> = point
                .iter()
                .map(|&k| k as f64 / *resolution as f64)
                .collect();
            Outcome::ok(json!({ "value": value, "resolution": resolution, "argmax": weights }))
        }
        Command::ClosedForm { t } => {
            let lambda = closed_form_lambda(*t)?;
            let (a, b) = optimum_weights(*t);
            Outcome::ok(json!({ "t": t, "lambda": lambda, "a": a, "b": b }))
        }
        Command::Construct {
            kminus,
            gi,
            t,
            i,
            n,
            meta,
            ..
        } => {
            let (graph, sidecar) = if *kminus {
                (Hypergraph::complete_minus(*t)?, json!({ "t": t }))
            } else if *gi {
                let g = construct_gi(*t, *i)?;
                (
                    g.graph.clone(),
                    json!({ "t": t, "i": i, "labels": g.labels }),
                )
            } else {
                let n = n.expect("clap requires --n with --gni");
                let opts = MaxBlowupOptions {
                    lagrangian: cfg.lagrangian_options(),
                    ..Default::default()
                };
                let g = mixcross::blowup::construct_gni(*t, *i, n, &opts)?;
                let sidecar = json!({ "t": t, "i": i, "n": n, "parts": g.parts.0, "edge_count": g.edge_count });
                (g.graph, sidecar)
            };
            if let Some(path) = meta {
                let text = serde_json::to_string_pretty(&sidecar)? + "\n";
                fs::write(path, text).map_err(|e| {
                    Error::InvalidParameter(format!("writing {}: {e}", path.display()))
                })?;
            }
            Outcome::graph(&graph)
        }
        Command::MixBlowup {
            input,
            v1,
            v2,
            a,
            b,
            ordering,
        } => {
            let h = read_graph(input)?;
            let spec = match ordering {
                Some(o) => MixCrossSpec {
                    v1: *v1,
                    v2: *v2,
                    a_cross: *a,
                    b_cross: *b,
                    ordering: o.clone(),
                },
                None => MixCrossSpec::with_sorted_neighborhood(&h, *v1, *v2, *a, *b)?,
            };
            Outcome::graph(&mix_crossed_blowup(&h, &spec)?)
        }
        Command::MaxBlowup { input, n } => {
            let h = read_graph(input)?;
            let opts = MaxBlowupOptions {
                lagrangian: cfg.lagrangian_options(),
                ..Default::default()
            };
            let (parts, edges) = max_blowup(&h, *n, &opts);
            Outcome::ok(json!({ "n": n, "parts": parts.0, "edge_count": edges }))
        }
        Command::Hom { f, g, injective } => {
            let (f, g) = (read_graph(f)?, read_graph(g)?);
            match find_homomorphism(&f, &g, *injective, cfg.budget)? {
                Some(map) => Outcome::ok(json!({ "found": true, "map": map })),
                None => Outcome::ok(json!({ "found": false, "map": null })).with_code(EXIT_FAILURE),
            }
        }
        Command::Colorable { f, g } => {
            let (f, g) = (read_graph(f)?, read_graph(g)?);
            Outcome::ok(json!({ "colorable": is_colorable(&f, &g, cfg.budget)? }))
        }
        Command::MtMember { f, t } => {
            let f = read_graph(f)?;
            let fixtures = (1..=*t)
                .map(|i| construct_gi(*t, i).map(|g| g.graph))
                .collect::<Result<Vec<_>, _>>()?;
            Outcome::ok(json!({ "t": t, "member": mt_member(&f, *t, &fixtures, cfg.budget)? }))
        }
        Command::CodegreeTable { input } => {
            let h = read_graph(input)?;
            let rows: Vec<Value> = codegree_table(&h)?
                .into_iter()
                .map(|(p, d)| json!({ "u": p.u, "v": p.v, "codegree": d }))
                .collect();
            Outcome::ok(Value::Array(rows))
        }
        Command::Symmetrize { input } => {
            let h = read_graph(input)?;
            let q = quotient(&h);
            Outcome::ok(json!({
                "symmetrized": is_symmetrized(&h),
                "blocks": q.partition.blocks,
                "map": q.map,
                "quotient": graph_value(&q.graph),
            }))
        }
        Command::Shadow { input } => {
            let h = read_graph(input)?;
            Outcome::ok(serde_json::to_value(shadow_density_report(&h)?)?)
        }
        Command::EditDist {
            h1,
            h2,
            edit_restarts,
        } => {
            let (h1, h2) = (read_graph(h1)?, read_graph(h2)?);
            let opts = EditSearchOptions {
                restarts: *edit_restarts,
                seed: cfg.seed,
            };
            let r = heuristic_min_edit(&h1, &h2, &opts)?;
            Outcome::ok(json!({ "distance": r.distance, "bijection": r.bijection }))
        }
        Command::VerifyPaper { t } => {
            let vcfg = VerifyConfig {
                t_max: *t,
                seed: cfg.seed,
                restarts: cfg.restarts as usize,
                tol: cfg.tol,
                budget: cfg.budget,
            };
            let report = run_verification(&vcfg)?;
            let code = if report.all_passed { 0 } else { EXIT_FAILURE };
            Outcome {
                value: serde_json::to_value(&report)?,
                text: Some(report.to_text()),
                verbatim: None,
                code,
            }
        }
    };
    Ok(outcome)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            json!(round12(n.as_f64().expect("f64 number")))
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

fn render_text(v: &Value, prefix: &str) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(v, &key)
            })
            .collect(),
        Value::Array(items) if items.iter().any(|x| x.is_object()) => items
            .iter()
            .enumerate()
            .map(|(i, x)| render_text(x, &format!("{prefix}[{i}]")))
            .collect(),
        _ => format!("{prefix}: {}\n", scalar_text(v)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig12(n.as_f64().expect("f64 number")),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
        ),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
