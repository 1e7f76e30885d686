use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sepchoose::choosability::{
    decide_sep_choosable_with_budget, has_max_separation, is_l_colorable, search_bad_assignment,
    ListAssignment, Outcome, DEFAULT_DECIDE_BUDGET,
};
use sepchoose::coloring::{
    chromatic_number_exact, fractional_chromatic_exact, greedy_coloring, ProperColoring,
};
use sepchoose::experiments::{emit_report, run_experiment, ExperimentSpec};
use sepchoose::extract::{
    best_semi_bipartite, extract_from_coloring, extract_from_distribution, max_bip_induced_oracle,
    SemiMode, DEFAULT_LOCAL_MOVES, DEFAULT_SAMPLED_DRAWS,
};
use sepchoose::generators::{GenKind, GenSpec};
use sepchoose::numeric::{fmt_rational, to_f64};
use sepchoose::stable_sets::{
    enumerate_stable_sets, expected_degree_sum_in, expected_x, quarter_log_degree_sum,
    verify_appendix_inequality, DEFAULT_ENUM_BUDGET,
};
use sepchoose::{Graph, Rational};

#[derive(Parser)]
#[command(
    name = "sepchoose",
    version,
    about = "Separation choosability and dense bipartite induced subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in edge-list format.
    Gen(GenArgs),
    /// Greedy, exact, or fractional coloring.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ColorMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable-set enumeration and expectations.
    Stable {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(subcommand)]
        action: StableAction,
    },
    /// Extract a dense bipartite or semi-bipartite induced subgraph.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: ExtractMethod,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Moves for semi-local, draws for semi-sampled.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separation choosability: exact decision or randomized search.
    Sep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: SepMode,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DECIDE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Experiment campaigns.
    Exp {
        #[command(subcommand)]
        action: ExpAction,
    },
}

#[derive(clap::Args)]
struct GenArgs {
    /// gnp, triangle_free, kr_free, high_girth, complete_bipartite, cycle, named_fixture
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long = "D")]
    d: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    scale: Option<f64>,
    #[arg(long)]
    name: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    stats_json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorMode {
    Greedy,
    Exact,
    Fractional,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum StableAction {
    /// Every stable set, empty set included.
    Enumerate,
    /// Expected degree sum and per-vertex X_v under the uniform distribution.
    Expectation,
    /// Check the conditional-expectation inequality for all d <= dmax.
    VerifyAppendix {
        #[arg(long)]
        dmax: u64,
        #[arg(long, default_value_t = 60)]
        kcap: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtractMethod {
    Fractional,
    Coloring,
    SemiExact,
    SemiSampled,
    SemiLocal,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum SepMode {
    Exact,
    Search,
}

#[derive(Subcommand)]
enum ExpAction {
    Run {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, mut text: String) -> Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn r(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Color { input, mode, out } => color(&read_graph(&input)?, mode, out.as_deref()),
        Command::Stable {
            input,
            format,
            out,
            action,
        } => stable(input.as_deref(), format, out.as_deref(), action),
        Command::Extract {
            input,
            method,
            seed,
            budget,
            out,
        } => extract(&read_graph(&input)?, method, seed, budget, out.as_deref()),
        Command::Sep {
            input,
            k,
            mode,
            trials,
            seed,
            budget,
            out,
        } => sep(
            &read_graph(&input)?,
            k,
            mode,
            trials,
            seed,
            budget,
            out.as_deref(),
        ),
        Command::Exp {
            action: ExpAction::Run { spec, out_dir },
        } => exp_run(&spec, &out_dir),
    }
}

fn gen(a: GenArgs) -> Result<()> {
    let kind: GenKind = serde_json::from_value(Value::String(a.kind.replace('-', "_")))
        .map_err(|_| anyhow::anyhow!("unknown generator kind {:?}", a.kind))?;
    let spec = GenSpec {
        kind,
        n: a.n,
        p: a.p,
        d: a.d,
        r: a.r,
        g: a.g,
        b: a.b,
        scale: a.scale,
        name: a.name,
        seed: a.seed,
    };
    let (graph, stats) = spec.generate()?;
    if let Some(path) = &a.stats_json {
        let body = json!({ "spec": spec, "stats": stats });
        emit(Some(path), pretty(&body))?;
    }
    emit(a.out.as_deref(), graph.to_edge_list())
}

fn proper_json(mode: &str, g: &Graph, c: &ProperColoring) -> Result<Value> {
    ProperColoring::new(g, c.colors().to_vec())?;
    Ok(json!({
        "mode": mode,
        "k": c.k(),
        "colors": c.colors(),
        "classes": c.classes(),
        "verified": true,
    }))
}

fn color(g: &Graph, mode: ColorMode, out: Option<&Path>) -> Result<()> {
    let body = match mode {
        ColorMode::Greedy => proper_json("greedy", g, &greedy_coloring(g))?,
        ColorMode::Exact => {
            let (_, c) = chromatic_number_exact(g)?;
            proper_json("exact", g, &c)?
        }
        ColorMode::Fractional => {
            let f = fractional_chromatic_exact(g)?;
            f.verify(g)?;
            let mut v = serde_json::to_value(&f)?;
            v["mode"] = json!("fractional");
            v["verified"] = json!(true);
            v
        }
    };
    emit(out, pretty(&body))
}

fn stable(
    input: Option<&Path>,
    format: Format,
    out: Option<&Path>,
    action: StableAction,
) -> Result<()> {
    let need_graph = || -> Result<Graph> {
        match input {
            Some(p) => read_graph(p),
            None => bail!("--in is required for this action"),
        }
    };
    let text = match action {
        StableAction::Enumerate => {
            let g = need_graph()?;
            let family = enumerate_stable_sets(&g, DEFAULT_ENUM_BUDGET)?;
            match format {
                Format::Json => pretty(
                    &json!({ "count": family.count(), "sets": family.sets().collect::<Vec<_>>() }),
                ),
                Format::Csv => {
                    let mut s = String::from("index,size,members\n");
                    for (i, set) in family.sets().enumerate() {
                        let members: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                        s.push_str(&format!("{i},{},{}\n", set.len(), members.join(" ")));
                    }
                    s
                }
            }
        }
        StableAction::Expectation => {
            let g = need_graph()?;
            let family = enumerate_stable_sets(&g, DEFAULT_ENUM_BUDGET)?;
            let e = expected_degree_sum_in(&g, &family);
            let xs: Vec<Rational> = (0..g.n()).map(|v| expected_x(&g, &family, v)).collect();
            let x_total: Rational = xs.iter().cloned().sum();
            let identity = x_total == &e * Rational::from_integer(2.into());
            let bound = quarter_log_degree_sum(&g).ok();
            match format {
                Format::Json => pretty(&json!({
                    "stable_sets": family.count(),
                    "expected_degree_sum": r(&e),
                    "expected_degree_sum_float": to_f64(&e),
                    "expected_x": xs.iter().map(r).collect::<Vec<_>>(),
                    "x_sum_identity_holds": identity,
                    "quarter_log_degree_sum": bound.as_ref().map(|b| json!({"lower": r(&b.lower), "upper": r(&b.upper)})),
                    "lemma_bound_certified": bound.as_ref().map(|b| e >= b.upper),
                })),
                Format::Csv => {
                    let mut s = String::from("vertex,degree,expected_x\n");
                    for (v, x) in xs.iter().enumerate() {
                        s.push_str(&format!("{v},{},{}\n", g.degree(v), fmt_rational(x)));
                    }
                    s
                }
            }
        }
        StableAction::VerifyAppendix { dmax, kcap } => {
            let report = verify_appendix_inequality(dmax, kcap);
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report)?;
                    v["holds"] = json!(report.holds());
                    pretty(&v)
                }
                Format::Csv => format!(
                    "d_max,k_cap,checked,violations,undecided,min_slack,min_slack_d,min_slack_k\n{},{},{},{},{},{},{},{}\n",
                    report.d_max,
                    report.k_cap,
                    report.checked,
                    report.violations.len(),
                    report.undecided.len(),
                    fmt_rational(&report.min_slack),
                    report.min_slack_at.0,
                    report.min_slack_at.1
                ),
            }
        }
    };
    emit(out, text)
}

fn extract(
    g: &Graph,
    method: ExtractMethod,
    seed: u64,
    budget: Option<usize>,
    out: Option<&Path>,
) -> Result<()> {
    let body = match method {
        ExtractMethod::Fractional => {
            let f = fractional_chromatic_exact(g)?;
            f.verify(g)?;
            let dist = sepchoose::coloring::fractional_to_distribution(g, &f)?;
            let w = extract_from_distribution(g, &dist)?;
            w.verify(g)?;
            let guarantee = g.average_degree() / &f.value;
            json!({ "method": "fractional", "fractional_chromatic_number": r(&f.value), "guarantee_avg_degree": r(&guarantee),
                    "witness": w, "one_sided": true, "verified": true })
        }
        ExtractMethod::Coloring => {
            // Exact coloring when the solver accepts the graph, greedy otherwise.
            let (source, c) = match chromatic_number_exact(g) {
                Ok((_, c)) => ("exact", c),
                Err(_) => ("greedy", greedy_coloring(g)),
            };
            let w = extract_from_coloring(g, &c)?;
            w.verify(g)?;
            let guarantee = Rational::new(g.min_degree().into(), (2 * c.k().max(1)).into());
            json!({ "method": "coloring", "coloring": source, "colors_used": c.k(), "guarantee_min_degree": r(&guarantee),
                    "witness": w, "one_sided": true, "verified": true })
        }
        ExtractMethod::Oracle => {
            let w = max_bip_induced_oracle(g)?;
            w.verify(g)?;
            json!({ "method": "oracle", "witness": w, "one_sided": false, "verified": true })
        }
        ExtractMethod::SemiExact | ExtractMethod::SemiSampled | ExtractMethod::SemiLocal => {
            let (name, mode) = match method {
                ExtractMethod::SemiExact => ("semi-exact", SemiMode::Exact),
                ExtractMethod::SemiSampled => (
                    "semi-sampled",
                    SemiMode::Sampled(budget.unwrap_or(DEFAULT_SAMPLED_DRAWS)),
                ),
                _ => (
                    "semi-local",
                    SemiMode::LocalSearch(budget.unwrap_or(DEFAULT_LOCAL_MOVES)),
                ),
            };
            let w = best_semi_bipartite(g, mode, seed)?;
            w.verify(g)?;
            json!({ "method": name, "seed": seed, "witness": w, "one_sided": !matches!(mode, SemiMode::Exact), "verified": true })
        }
    };
    emit(out, pretty(&body))
}

fn witness_json(g: &Graph, l: &ListAssignment) -> Result<Value> {
    if !has_max_separation(g, l)? || is_l_colorable(g, l)?.is_some() {
        bail!("bad assignment failed re-verification");
    }
    Ok(serde_json::to_value(l.to_map())?)
}

fn sep(
    g: &Graph,
    k: usize,
    mode: SepMode,
    trials: usize,
    seed: u64,
    budget: u64,
    out: Option<&Path>,
) -> Result<()> {
    let body = match mode {
        SepMode::Exact => match decide_sep_choosable_with_budget(g, k, budget)? {
            Outcome::Choosable { assignments } => {
                json!({ "k": k, "status": "choosable", "canonical_assignments": assignments })
            }
            Outcome::NotChoosable { witness } => {
                json!({ "k": k, "status": "not_choosable", "witness": witness_json(g, &witness)?, "verified": true })
            }
            Outcome::Unknown { explored } => {
                json!({ "k": k, "status": "unknown", "explored": explored })
            }
        },
        SepMode::Search => match search_bad_assignment(g, k, trials, seed) {
            Some(w) => json!({ "k": k, "status": "found", "trials": trials, "seed": seed,
                               "witness": witness_json(g, &w)?, "verified": true }),
            None => json!({ "k": k, "status": "not_found", "trials": trials, "seed": seed }),
        },
    };
    emit(out, pretty(&body))
}

fn exp_run(spec_path: &Path, out_dir: &Path) -> Result<()> {
    let text = fs::read_to_string(spec_path)
        .with_context(|| format!("reading {}", spec_path.display()))?;
    let spec: ExperimentSpec = serde_json::from_str(&text).context("parsing experiment spec")?;
    let record = run_experiment(&spec)?;
    for path in emit_report(&record, out_dir)? {
        println!("{}", path.display());
    }
    Ok(())
}
