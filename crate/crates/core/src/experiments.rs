//! Seeded experiment campaigns with CSV and JSON reports.
//!
//! A campaign is a grid of points (`n` major, then `param`) with `trials`
//! seeds per point. Trial `t` of point `i` uses the graph seed
//! `derive_seed(master_seed, i, t)`, and method `j` on that graph uses
//! `derive_seed(graph_seed, 0, j)`. Rows therefore do not depend on thread
//! count or execution order.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::{fractional_chromatic_exact, fractional_to_distribution, greedy_coloring};
use crate::error::{Error, Result};
use crate::extract::{
    best_semi_bipartite, extract_from_coloring, extract_from_distribution, max_bip_induced_oracle,
    BipartiteWitness, SemiBipartiteWitness, SemiMode, DEFAULT_SAMPLED_DRAWS,
};
use crate::generators::{
    degree_window_report, gnp, triangle_free_construction, triangle_free_degree_window,
    triangle_free_from_sample, DeletionStats,
};
use crate::graph::{Graph, VertexSet};
use crate::numeric::{fmt_rational, int, median, parse_rational, to_f64, Rational};
use crate::rng::derive_seed;

pub const SCHEMA_VERSION: u32 = 1;
pub const WORKERS_ENV: &str = "SEPCHOOSE_WORKERS";
pub const CSV_COLUMNS: [&str; 12] = [
    "n",
    "param",
    "seed",
    "method",
    "witness_size1",
    "witness_size2",
    "cross_edges",
    "avg_degree_rational",
    "avg_degree_float",
    "min_degree",
    "runtime_ms",
    "verified",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `gnp(n, param * n^-p_exponent)`.
    ErdosrenyiScaling,
    /// Triangle-free construction with `D = param`.
    TrianglebipStats,
    /// Triangle-free graphs of minimum degree about `n^param`.
    TransitionProfile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SemiExact,
    SemiSampled,
    SemiLocal,
    ColoringGreedy,
    Fractional,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SemiExact => "semi_exact",
            Method::SemiSampled => "semi_sampled",
            Method::SemiLocal => "semi_local",
            Method::ColoringGreedy => "coloring_greedy",
            Method::Fractional => "fractional",
            Method::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown method {s:?}")))
    }

    /// Only the exact modes certify an optimum; the rest are lower bounds.
    pub fn is_one_sided(self) -> bool {
        !matches!(self, Method::SemiExact | Method::Oracle)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Json,
}

fn default_exponent() -> f64 {
    2.0 / 3.0
}
fn default_moves() -> usize {
    20_000
}
fn default_formats() -> Vec<ReportFormat> {
    vec![ReportFormat::Csv, ReportFormat::Json]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    pub kind: ExperimentKind,
    pub n_values: Vec<usize>,
    /// `c` in `p = c n^-p_exponent`, `D`, or `eta`, depending on `kind`.
    pub param_values: Vec<f64>,
    #[serde(default = "default_exponent")]
    pub p_exponent: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub methods: Vec<Method>,
    #[serde(default = "default_moves")]
    pub local_search_moves: usize,
    #[serde(default)]
    pub record_timings: bool,
    #[serde(default = "default_formats")]
    pub formats: Vec<ReportFormat>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return bad("name must be nonempty and use only [A-Za-z0-9_-]");
        }
        if self.n_values.is_empty() || self.param_values.is_empty() {
            return bad("sweep lists must be nonempty");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.methods.is_empty() {
            return bad("at least one method is required");
        }
        if self.param_values.iter().any(|p| !p.is_finite()) || !self.p_exponent.is_finite() {
            return bad("parameters must be finite");
        }
        Ok(())
    }

    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("spec serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn points(&self) -> Vec<(usize, f64)> {
        self.n_values
            .iter()
            .flat_map(|&n| self.param_values.iter().map(move |&p| (n, p)))
            .collect()
    }

    /// `ln(np)` for the binomial sweep, `ln n` otherwise; `None` when not positive.
    pub fn log_scale(&self, n: usize, param: f64) -> Option<f64> {
        let x = match self.kind {
            ExperimentKind::ErdosrenyiScaling => n as f64 * self.edge_probability(n, param),
            _ => n as f64,
        };
        let l = x.ln();
        (l > 0.0).then_some(l)
    }

    pub fn edge_probability(&self, n: usize, param: f64) -> f64 {
        (param * (n.max(1) as f64).powf(-self.p_exponent)).clamp(0.0, 1.0)
    }
}

/// Host graph facts recorded in JSON rows.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HostInfo {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_degrees_in_window: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_window_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_triangles_within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_min_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<DeletionStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub param: f64,
    pub seed: u64,
    pub method: Method,
    pub witness_size1: usize,
    pub witness_size2: usize,
    pub cross_edges: usize,
    #[serde(with = "crate::numeric::rational_str")]
    pub avg_degree: Rational,
    pub min_degree: usize,
    pub runtime_ms: u64,
    pub verified: bool,
    /// Lower bound only; never claimed optimal.
    #[serde(default)]
    pub one_sided: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host: Option<HostInfo>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub n: usize,
    pub param: f64,
    pub method: Method,
    pub rows: usize,
    pub verified: usize,
    pub mean_avg_degree: f64,
    pub median_avg_degree: f64,
    pub max_avg_degree: f64,
    pub mean_min_degree: f64,
    pub median_min_degree: f64,
    pub max_min_degree: f64,
    pub log_scale: Option<f64>,
    /// Median of `avg_degree / log_scale`.
    pub median_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

/// Spread of per-point median ratios across all points, per method.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioBand {
    pub method: Method,
    pub low: f64,
    pub high: f64,
    pub spread: Option<f64>,
    pub one_sided: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub spec_hash: String,
    pub spec: ExperimentSpec,
    pub rows: Vec<Row>,
    pub aggregates: Vec<Aggregate>,
    pub bands: Vec<RatioBand>,
}

/// Thread pool sized by `SEPCHOOSE_WORKERS` (rayon's default when unset).
pub fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let w: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{WORKERS_ENV}={v:?}")))?;
        b = b.num_threads(w.max(1));
    }
    b.build().map_err(|e| Error::Internal(e.to_string()))
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunRecord> {
    spec.validate()?;
    let points = spec.points();
    let tasks: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (0..spec.trials).map(move |t| (i, t)))
        .collect();
    let pool = worker_pool()?;
    let rows: Vec<Vec<Row>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, t)| {
                let (n, param) = points[i];
                run_trial(
                    spec,
                    n,
                    param,
                    derive_seed(spec.master_seed, i as u64, t as u64),
                )
            })
            .collect()
    });
    let rows: Vec<Row> = rows.into_iter().flatten().collect();
    let aggregates = aggregate(spec, &rows);
    Ok(RunRecord {
        schema_version: SCHEMA_VERSION,
        spec_hash: spec.hash(),
        bands: ratio_bands(spec, &aggregates),
        aggregates,
        spec: spec.clone(),
        rows,
    })
}

pub fn run_erdosrenyi_scaling(spec: &ExperimentSpec) -> Result<RunRecord> {
    expect_kind(spec, ExperimentKind::ErdosrenyiScaling)?;
    run_experiment(spec)
}

pub fn run_trianglebip_stats(spec: &ExperimentSpec) -> Result<RunRecord> {
    expect_kind(spec, ExperimentKind::TrianglebipStats)?;
    run_experiment(spec)
}

pub fn run_transition_profile(spec: &ExperimentSpec) -> Result<RunRecord> {
    expect_kind(spec, ExperimentKind::TransitionProfile)?;
    run_experiment(spec)
}

fn expect_kind(spec: &ExperimentSpec, kind: ExperimentKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::InvalidParameter(format!(
            "spec kind {:?} is not {kind:?}",
            spec.kind
        )));
    }
    Ok(())
}

struct Host {
    graph: Graph,
    info: HostInfo,
    flag: Option<String>,
}

fn host_info(g: &Graph) -> HostInfo {
    HostInfo {
        vertices: g.n(),
        edges: g.m(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        ..HostInfo::default()
    }
}

fn build_host(spec: &ExperimentSpec, n: usize, param: f64, seed: u64) -> Result<Host> {
    match spec.kind {
        ExperimentKind::ErdosrenyiScaling => {
            let graph = gnp(n, spec.edge_probability(n, param), seed)?;
            Ok(Host {
                info: host_info(&graph),
                graph,
                flag: None,
            })
        }
        ExperimentKind::TrianglebipStats => {
            let c = triangle_free_construction(n, param, seed)?;
            let (all_in, fraction) =
                degree_window_report(&c.graph, triangle_free_degree_window(n, param));
            let bound = param.powi(3) * n as f64 / 3.0;
            let mut info = host_info(&c.graph);
            info.triangle_free = Some(!c.graph.has_clique(3));
            info.all_degrees_in_window = Some(all_in);
            info.in_window_fraction = Some(fraction);
            info.initial_triangles_within_bound =
                c.stats.initial_forbidden.map(|t| t as f64 <= bound);
            info.generator = Some(c.stats);
            Ok(Host {
                graph: c.graph,
                info,
                flag: None,
            })
        }
        ExperimentKind::TransitionProfile => transition_host(n, param, seed),
    }
}

/// Minimum degree target `max(1, round(n^eta))`.
pub fn transition_target(n: usize, eta: f64) -> usize {
    ((n as f64).powf(eta).round() as usize).max(1)
}

/// Scans `p = 2^j / n` upward: sample, delete triangles, peel to the target
/// minimum degree, and keep the first nonempty core. When no density reaches
/// the target, the densest core found is used and the row is flagged.
fn transition_host(n: usize, eta: f64, seed: u64) -> Result<Host> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "eta = {eta} outside [0, 1)"
        )));
    }
    let target = transition_target(n, eta);
    let mut best: Option<(usize, Graph, DeletionStats)> = None;
    let mut chosen = None;
    let mut j = 0;
    loop {
        let p = ((1u64 << j) as f64 / n.max(1) as f64).min(1.0);
        let c = triangle_free_from_sample(&gnp(n, p, seed)?, p);
        let (_, degeneracy) = c.graph.degeneracy_order();
        let core = c.graph.peel_to_min_degree(&int(target as i64));
        if !core.is_empty() {
            chosen = Some((c.graph.induced_subgraph(&core)?.0, c.stats));
            break;
        }
        let falling = best.as_ref().is_some_and(|(d, _, _)| degeneracy * 2 < *d);
        if best.as_ref().is_none_or(|(d, _, _)| degeneracy > *d) {
            best = Some((degeneracy, c.graph, c.stats));
        }
        if falling || p >= 1.0 {
            break;
        }
        j += 1;
    }
    let (graph, stats, flag) = match chosen {
        Some((g, s)) => (g, s, None),
        None => {
            let (d, g, s) = best.ok_or_else(|| Error::Internal("no density tried".into()))?;
            let core = g.peel_to_min_degree(&int(d as i64));
            let flag =
                format!("min degree target {target} unreachable; best core has min degree {d}");
            (g.induced_subgraph(&core)?.0, s, Some(flag))
        }
    };
    let mut info = host_info(&graph);
    info.triangle_free = Some(!graph.has_clique(3));
    info.target_min_degree = Some(target);
    info.generator = Some(stats);
    Ok(Host { graph, info, flag })
}

fn run_trial(spec: &ExperimentSpec, n: usize, param: f64, seed: u64) -> Vec<Row> {
    let blank = |method: Method| Row {
        n,
        param,
        seed,
        method,
        witness_size1: 0,
        witness_size2: 0,
        cross_edges: 0,
        avg_degree: int(0),
        min_degree: 0,
        runtime_ms: 0,
        verified: false,
        one_sided: method.is_one_sided(),
        flag: None,
        error: None,
        host: None,
    };
    let host = match build_host(spec, n, param, seed) {
        Ok(h) => h,
        Err(e) => {
            return spec
                .methods
                .iter()
                .map(|&m| Row {
                    error: Some(format!("generator: {e}")),
                    ..blank(m)
                })
                .collect()
        }
    };
    spec.methods
        .iter()
        .enumerate()
        .map(|(j, &method)| {
            let start = Instant::now();
            let outcome = run_method(
                &host.graph,
                method,
                derive_seed(seed, 0, j as u64),
                spec.local_search_moves,
            );
            let runtime_ms = if spec.record_timings {
                start.elapsed().as_millis() as u64
            } else {
                0
            };
            let mut row = Row {
                runtime_ms,
                flag: host.flag.clone(),
                host: Some(host.info.clone()),
                ..blank(method)
            };
            match outcome {
                Ok(m) => {
                    row.witness_size1 = m.size1;
                    row.witness_size2 = m.size2;
                    row.cross_edges = m.cross_edges;
                    row.avg_degree = m.avg_degree;
                    row.min_degree = m.min_degree;
                    row.verified = true;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

struct Metrics {
    size1: usize,
    size2: usize,
    cross_edges: usize,
    avg_degree: Rational,
    min_degree: usize,
}

fn bipartite_metrics(g: &Graph, w: BipartiteWitness) -> Result<Metrics> {
    w.verify(g)?;
    Ok(Metrics {
        size1: w.part1.len(),
        size2: w.part2.len(),
        cross_edges: w.edge_count,
        avg_degree: w.avg_degree,
        min_degree: w.min_degree,
    })
}

fn semi_metrics(g: &Graph, w: SemiBipartiteWitness) -> Result<Metrics> {
    w.verify(g)?;
    let cross = |v: usize, other: &VertexSet| {
        g.neighbors(v)
            .iter()
            .filter(|&&u| other.contains(u))
            .count()
    };
    let min_degree = w
        .stable_part
        .iter()
        .map(|v| cross(v, &w.other_part))
        .chain(w.other_part.iter().map(|v| cross(v, &w.stable_part)))
        .min()
        .unwrap_or(0);
    Ok(Metrics {
        size1: w.stable_part.len(),
        size2: w.other_part.len(),
        cross_edges: w.cross_edge_count,
        avg_degree: w.avg_degree,
        min_degree,
    })
}

fn run_method(g: &Graph, method: Method, seed: u64, moves: usize) -> Result<Metrics> {
    match method {
        Method::SemiExact => semi_metrics(g, best_semi_bipartite(g, SemiMode::Exact, seed)?),
        Method::SemiSampled => semi_metrics(
            g,
            best_semi_bipartite(g, SemiMode::Sampled(DEFAULT_SAMPLED_DRAWS), seed)?,
        ),
        Method::SemiLocal => semi_metrics(
            g,
            best_semi_bipartite(g, SemiMode::LocalSearch(moves), seed)?,
        ),
        Method::ColoringGreedy => {
            bipartite_metrics(g, extract_from_coloring(g, &greedy_coloring(g))?)
        }
        Method::Fractional => {
            let f = fractional_chromatic_exact(g)?;
            let dist = fractional_to_distribution(g, &f)?;
            bipartite_metrics(g, extract_from_distribution(g, &dist)?)
        }
        Method::Oracle => bipartite_metrics(g, max_bip_induced_oracle(g)?),
    }
}

/// Per (point, method) statistics over verified rows, in grid order.
pub fn aggregate(spec: &ExperimentSpec, rows: &[Row]) -> Vec<Aggregate> {
    let point_index: BTreeMap<(usize, u64), usize> = spec
        .points()
        .iter()
        .enumerate()
        .map(|(i, &(n, p))| ((n, p.to_bits()), i))
        .collect();
    let mut groups: BTreeMap<(usize, Method), Vec<&Row>> = BTreeMap::new();
    for r in rows {
        let i = point_index
            .get(&(r.n, r.param.to_bits()))
            .copied()
            .unwrap_or(usize::MAX);
        groups.entry((i, r.method)).or_default().push(r);
    }
    groups
        .into_values()
        .map(|group| {
            let (n, param, method) = (group[0].n, group[0].param, group[0].method);
            let ok: Vec<&&Row> = group.iter().filter(|r| r.verified).collect();
            let mut avg: Vec<f64> = ok.iter().map(|r| to_f64(&r.avg_degree)).collect();
            let mut mins: Vec<f64> = ok.iter().map(|r| r.min_degree as f64).collect();
            let log_scale = spec.log_scale(n, param);
            let mut ratios: Vec<f64> = log_scale
                .map(|l| avg.iter().map(|a| a / l).collect())
                .unwrap_or_default();
            for v in [&mut avg, &mut mins, &mut ratios] {
                v.sort_by(f64::total_cmp);
            }
            let mean = |v: &[f64]| {
                if v.is_empty() {
                    0.0
                } else {
                    v.iter().sum::<f64>() / v.len() as f64
                }
            };
            let max = |v: &[f64]| v.last().copied().unwrap_or(0.0);
            Aggregate {
                n,
                param,
                method,
                rows: group.len(),
                verified: ok.len(),
                mean_avg_degree: mean(&avg),
                median_avg_degree: median(&avg).unwrap_or(0.0),
                max_avg_degree: max(&avg),
                mean_min_degree: mean(&mins),
                median_min_degree: median(&mins).unwrap_or(0.0),
                max_min_degree: max(&mins),
                log_scale,
                median_ratio: median(&ratios),
                max_ratio: ratios.last().copied(),
            }
        })
        .collect()
}

pub fn ratio_bands(spec: &ExperimentSpec, aggregates: &[Aggregate]) -> Vec<RatioBand> {
    spec.methods
        .iter()
        .filter_map(|&method| {
            let ratios: Vec<f64> = aggregates
                .iter()
                .filter(|a| a.method == method)
                .filter_map(|a| a.median_ratio)
                .collect();
            let low = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let high = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (!ratios.is_empty()).then(|| RatioBand {
                method,
                low,
                high,
                spread: (low > 0.0).then(|| high / low),
                one_sided: method.is_one_sided(),
            })
        })
        .collect()
}

pub fn rows_to_csv(rows: &[Row], spec_hash: &str) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.param.to_string(),
            r.seed.to_string(),
            r.method.name().to_string(),
            r.witness_size1.to_string(),
            r.witness_size2.to_string(),
            r.cross_edges.to_string(),
            fmt_rational(&r.avg_degree),
            to_f64(&r.avg_degree).to_string(),
            r.min_degree.to_string(),
            r.runtime_ms.to_string(),
            r.verified.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
        .map_err(|e| Error::Internal(e.to_string()))?;
    Ok(format!(
        "# schema_version={SCHEMA_VERSION}\n# spec_hash={spec_hash}\n{body}"
    ))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Parses a report written by [`rows_to_csv`]. Only the CSV columns are
/// restored; JSON-only row fields come back empty.
pub fn parse_csv(text: &str) -> Result<(u32, Vec<Row>)> {
    let version = text
        .lines()
        .find_map(|l| l.strip_prefix("# schema_version="))
        .ok_or_else(|| Error::Parse("missing schema_version".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("bad schema_version".into()))?;
    let mut rd = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = rd
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_string)
        .collect();
    if header != CSV_COLUMNS {
        return Err(Error::Parse(format!("unexpected columns {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        let num = |i: usize| {
            f(i).parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad {} {:?}", CSV_COLUMNS[i], f(i))))
        };
        let method = Method::parse(f(3))?;
        rows.push(Row {
            n: num(0)?,
            param: f(1)
                .parse()
                .map_err(|_| Error::Parse(format!("bad param {:?}", f(1))))?,
            seed: f(2)
                .parse()
                .map_err(|_| Error::Parse(format!("bad seed {:?}", f(2))))?,
            method,
            witness_size1: num(4)?,
            witness_size2: num(5)?,
            cross_edges: num(6)?,
            avg_degree: parse_rational(f(7))?,
            min_degree: num(9)?,
            runtime_ms: f(10)
                .parse()
                .map_err(|_| Error::Parse("bad runtime_ms".into()))?,
            verified: f(11)
                .parse()
                .map_err(|_| Error::Parse("bad verified".into()))?,
            one_sided: method.is_one_sided(),
            flag: None,
            error: None,
            host: None,
        });
    }
    Ok((version, rows))
}

/// Writes `<name>.csv` and/or `<name>.json` under `dir`.
pub fn emit_report(record: &RunRecord, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in &record.spec.formats {
        let (path, body) = match format {
            ReportFormat::Csv => (
                dir.join(format!("{}.csv", record.spec.name)),
                rows_to_csv(&record.rows, &record.spec_hash)?,
            ),
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(record)
                    .map_err(|e| Error::Internal(e.to_string()))?;
                s.push('\n');
                (dir.join(format!("{}.json", record.spec.name)), s)
            }
        };
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}
