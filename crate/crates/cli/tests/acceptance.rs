//! Acceptance suite. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rayon::prelude::*;

use sepchoose::catalog::{all_graphs, connected_graphs_up_to};
use sepchoose::choosability::{
    adapted_colorings, decide_sep_choosable, for_each_canonical_assignment, has_max_separation,
    is_l_colorable, labeling_from_lists, ListAssignment, Outcome,
};
use sepchoose::coloring::{
    chromatic_number_exact, fractional_chromatic_exact, fractional_to_distribution,
};
use sepchoose::extract::{
    best_semi_bipartite, extract_from_coloring, extract_from_distribution, max_bip_induced_oracle,
    trim_equal_parts, SemiMode,
};
use sepchoose::generators::{
    complete, cycle, degree_window_report, gnp, triangle_free_construction,
    triangle_free_degree_window,
};
use sepchoose::numeric::{fmt_rational, int, ln_bounds, Rational};
use sepchoose::rng::derive_seed;
use sepchoose::stable_sets::{
    enumerate_stable_sets, expected_degree_sum_in, expected_x, locate_auxiliary_minimum,
    quarter_log_degree_sum, verify_appendix_inequality,
};
use sepchoose::{Graph, VertexSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn failures<T: Send + Sync>(
    items: &[T],
    check: impl Fn(&T) -> Option<String> + Sync,
) -> Vec<String> {
    let mut out: Vec<(usize, String)> = items
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| check(x).map(|m| (i, m)))
        .collect();
    out.sort();
    out.into_iter().map(|(_, m)| m).collect()
}

fn summarize(label: &str, total: usize, failed: &[String]) -> Verdict {
    let mut detail = format!("{label}: {total} checked, {} failures", failed.len());
    if let Some(first) = failed.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    verdict(failed.is_empty(), detail)
}

fn name(g: &Graph) -> String {
    g.to_edge_list().replace('\n', ";")
}

fn criterion_1(corpus: &[Graph]) -> Verdict {
    let failed = failures(corpus, |g| {
        let f = fractional_chromatic_exact(g).ok()?;
        let dist = fractional_to_distribution(g, &f).ok()?;
        let w = match extract_from_distribution(g, &dist) {
            Ok(w) => w,
            Err(e) => return Some(format!("{} error {e}", name(g))),
        };
        if w.verify(g).is_err() || w.avg_degree < g.average_degree() / &f.value {
            return Some(format!(
                "{} avg {} < d/chi_f",
                name(g),
                fmt_rational(&w.avg_degree)
            ));
        }
        None
    });
    summarize(
        "fractional extraction avg_degree >= d/chi_f",
        corpus.len(),
        &failed,
    )
}

fn criterion_2(corpus: &[Graph]) -> Verdict {
    let failed = failures(corpus, |g| {
        let (chi, c) = match chromatic_number_exact(g) {
            Ok(x) => x,
            Err(e) => return Some(format!("{} error {e}", name(g))),
        };
        let w = extract_from_coloring(g, &c).ok()?;
        let bound = Rational::new(g.min_degree().into(), (2 * chi).into());
        if w.verify(g).is_err() || int(w.min_degree as i64) < bound {
            return Some(format!(
                "{} min_degree {} < {}",
                name(g),
                w.min_degree,
                fmt_rational(&bound)
            ));
        }
        None
    });
    summarize(
        "coloring extraction min_degree >= delta/(2 chi)",
        corpus.len(),
        &failed,
    )
}

fn criterion_3(corpus: &[Graph]) -> Verdict {
    let eligible: Vec<&Graph> = corpus.iter().filter(|g| g.min_degree() >= 1).collect();
    let failed = failures(&eligible, |g| {
        let family = enumerate_stable_sets(g, 1 << 16).ok()?;
        let e = expected_degree_sum_in(g, &family);
        let bound = quarter_log_degree_sum(g).ok()?;
        if e < bound.upper {
            return Some(format!(
                "{} E = {} not certified >= 1/4 sum ln d",
                name(g),
                fmt_rational(&e)
            ));
        }
        let x_sum: Rational = (0..g.n()).map(|v| expected_x(g, &family, v)).sum();
        if x_sum != &e * int(2) {
            return Some(format!("{} sum E(X_v) != 2 E", name(g)));
        }
        None
    });
    summarize(
        "E(sum_S d) >= 1/4 sum ln d and sum E(X_v) = 2 E(sum_S d)",
        eligible.len(),
        &failed,
    )
}

fn criterion_4(corpus: &[Graph]) -> Verdict {
    let eligible: Vec<&Graph> = corpus.iter().filter(|g| g.min_degree() >= 1).collect();
    let failed = failures(&eligible, |g| {
        let w = best_semi_bipartite(g, SemiMode::Exact, 0).ok()?;
        let half_ln = ln_bounds(g.min_degree() as u64).upper / int(2);
        if w.verify(g).is_err() || w.avg_degree < half_ln {
            return Some(format!(
                "{} semi avg {}",
                name(g),
                fmt_rational(&w.avg_degree)
            ));
        }
        None
    });
    summarize(
        "exact semi-bipartite avg_degree >= 1/2 ln delta",
        eligible.len(),
        &failed,
    )
}

fn criterion_5() -> Verdict {
    let report = verify_appendix_inequality(10_000, 60);
    let (x, fx) = locate_auxiliary_minimum(2.0, 50.0, 1e-9);
    let located = (9.0..=10.5).contains(&x) && (0.25..=0.35).contains(&fx);
    verdict(
        report.holds() && located,
        format!(
            "appendix inequality: {} pairs, {} violations, {} undecided, min slack {:.6} at {:?}; auxiliary minimum {fx:.4} at x = {x:.3}",
            report.checked,
            report.violations.len(),
            report.undecided.len(),
            sepchoose::numeric::to_f64(&report.min_slack),
            report.min_slack_at
        ),
    )
}

fn criterion_6() -> Verdict {
    let seeds: Vec<u64> = (0..1000).map(|t| derive_seed(6, 0, t)).collect();
    let failed = failures(&seeds, |&seed| {
        let a = 2 + (seed % 30) as usize;
        let b = 1 + ((seed >> 8) % a as u64) as usize;
        let p = ((seed >> 16) % 1000) as f64 / 1000.0;
        let full = gnp(a + b, p, seed).unwrap();
        let edges: Vec<(usize, usize)> = full
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| u < a && v >= a)
            .collect();
        let g = Graph::build(a + b, &edges).unwrap();
        let r = trim_equal_parts(
            &g,
            &VertexSet::from_iter_unchecked(0..a),
            &VertexSet::from_iter_unchecked(a..a + b),
        )
        .ok()?;
        let exact = r.avg_after.clone() * int(2) >= r.avg_before;
        (!(r.certified && exact && r.a_trimmed.len() == b)).then(|| format!("seed {seed}"))
    });
    summarize(
        "trim_equal_parts keeps >= half the average degree",
        seeds.len(),
        &failed,
    )
}

fn criterion_7() -> Verdict {
    let graphs: Vec<Graph> = (1..=5).flat_map(|n| all_graphs(n).unwrap()).collect();
    let counts: Vec<(u64, u64, Vec<String>)> = graphs
        .par_iter()
        .map(|g| {
            let (mut assignments, mut colorings, mut bad) = (0u64, 0u64, Vec::new());
            for_each_canonical_assignment(g, 2, u64::MAX, |lists| {
                assignments += 1;
                let l = ListAssignment::new(lists.to_vec(), 2).unwrap();
                let ell = labeling_from_lists(g, &l).unwrap();
                for c in adapted_colorings(g, &l, &ell, usize::MAX).unwrap() {
                    colorings += 1;
                    if g.edges().iter().any(|&(u, v)| c[u] == c[v]) {
                        bad.push(format!("{} lists {:?}", name(g), lists));
                    }
                }
                std::ops::ControlFlow::Continue(())
            });
            (assignments, colorings, bad)
        })
        .collect();
    let assignments: u64 = counts.iter().map(|c| c.0).sum();
    let colorings: u64 = counts.iter().map(|c| c.1).sum();
    let bad: Vec<String> = counts.into_iter().flat_map(|c| c.2).collect();
    let mut v = summarize(
        &format!("adapted colorings under the list labeling are proper ({} graphs, {assignments} assignments)", graphs.len()),
        colorings as usize,
        &bad,
    );
    v.pass &= assignments > 0 && colorings > 0;
    v
}

fn raw_enumeration_finds_bad(g: &Graph, k: usize) -> bool {
    let universe = 2 * g.n();
    let lists: Vec<Vec<usize>> = (0u64..1 << universe)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..universe).filter(|c| m >> c & 1 == 1).collect())
        .collect();
    let mut idx = vec![0usize; g.n()];
    loop {
        let l = ListAssignment::new(idx.iter().map(|&i| lists[i].clone()).collect(), k).unwrap();
        if has_max_separation(g, &l).unwrap() && is_l_colorable(g, &l).unwrap().is_none() {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < lists.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn criterion_8() -> Verdict {
    let cases = [
        ("C4", cycle(4).unwrap(), 1, false),
        ("C4", cycle(4).unwrap(), 2, true),
        ("K3", complete(3), 1, false),
        ("K3", complete(3), 2, true),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (label, g, k, expect) in &cases {
        let outcome = decide_sep_choosable(g, *k).unwrap();
        let ok = match &outcome {
            Outcome::Choosable { .. } => *expect,
            Outcome::NotChoosable { witness } => {
                !*expect
                    && has_max_separation(g, witness).unwrap()
                    && is_l_colorable(g, witness).unwrap().is_none()
            }
            Outcome::Unknown { .. } => false,
        };
        let raw_agrees = raw_enumeration_finds_bad(g, *k) != *expect;
        pass &= ok && raw_agrees;
        notes.push(format!(
            "({label},{k}) -> {}{}",
            expect,
            if ok && raw_agrees { "" } else { " MISMATCH" }
        ));
    }
    verdict(
        pass,
        format!(
            "separation choosability ground truths, raw oracle agrees: {}",
            notes.join(", ")
        ),
    )
}

fn criterion_9() -> Verdict {
    let (n, d) = (10_000usize, 0.5f64);
    let window = triangle_free_degree_window(n, d);
    let bound = d.powi(3) * n as f64 / 3.0;
    let rows: Vec<(bool, bool, bool, f64, usize, usize, usize)> = (1..=20u64)
        .into_par_iter()
        .map(|seed| {
            let c = triangle_free_construction(n, d, seed).unwrap();
            let (all_in, fraction) = degree_window_report(&c.graph, window);
            let triangles = c.stats.initial_forbidden.unwrap_or(usize::MAX);
            (
                !c.graph.has_clique(3),
                all_in,
                triangles as f64 <= bound,
                fraction,
                triangles,
                c.graph.min_degree(),
                c.graph.max_degree(),
            )
        })
        .collect();
    let seeds = rows.len() as f64;
    let free = rows.iter().filter(|r| r.0).count();
    let in_window = rows.iter().filter(|r| r.1).count();
    let triangle_ok = rows.iter().filter(|r| r.2).count();
    let mean_fraction = rows.iter().map(|r| r.3).sum::<f64>() / seeds;
    let min_deg = rows.iter().map(|r| r.5).min().unwrap();
    let max_deg = rows.iter().map(|r| r.6).max().unwrap();
    let pass =
        free == rows.len() && in_window as f64 >= 0.8 * seeds && triangle_ok as f64 >= 0.5 * seeds;
    verdict(
        pass,
        format!(
            "triangle-free construction n=10^4 D=0.5: triangle-free {free}/20, degree window [{:.3}, {:.3}] {in_window}/20 seeds (need 16; observed degrees {min_deg}..{max_deg}, mean per-vertex in-window fraction {mean_fraction:.4}), initial triangles <= {bound:.1} in {triangle_ok}/20",
            window.0, window.1
        ),
    )
}

fn criterion_10(corpus: &[Graph]) -> Verdict {
    let small: Vec<&Graph> = corpus.iter().filter(|g| g.n() <= 10).collect();
    let failed = failures(&small, |g| {
        let oracle = max_bip_induced_oracle(g).ok()?;
        let f = fractional_chromatic_exact(g).ok()?;
        let wf = extract_from_distribution(g, &fractional_to_distribution(g, &f).ok()?).ok()?;
        let (_, c) = chromatic_number_exact(g).ok()?;
        let wc = extract_from_coloring(g, &c).ok()?;
        let greedy = extract_from_coloring(g, &sepchoose::coloring::greedy_coloring(g)).ok()?;
        let beaten = [("fractional", &wf), ("coloring", &wc), ("greedy", &greedy)]
            .into_iter()
            .find(|(_, w)| w.avg_degree > oracle.avg_degree)
            .map(|(m, w)| {
                format!(
                    "{} {m} {} > oracle {}",
                    name(g),
                    fmt_rational(&w.avg_degree),
                    fmt_rational(&oracle.avg_degree)
                )
            });
        beaten
    });
    summarize(
        "oracle dominates bipartite extraction methods",
        small.len(),
        &failed,
    )
}

fn run_cli(args: &[&str], workers: &str) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_sepchoose"))
        .args(args)
        .env("SEPCHOOSE_WORKERS", workers)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&status.stderr)
        ));
    }
    Ok(())
}

fn criterion_11() -> Verdict {
    let base = tempfile::tempdir().unwrap();
    let spec = base.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"name":"det","kind":"erdosrenyi_scaling","n_values":[12,40],"param_values":[4.0],"trials":4,"master_seed":3,
            "methods":["semi_exact","semi_local","coloring_greedy","oracle"],"local_search_moves":2000}"#,
    )
    .unwrap();
    let runs: Vec<Vec<(String, Vec<u8>)>> = ["1", "4", "4"]
        .iter()
        .enumerate()
        .map(|(i, workers)| {
            let dir = base.path().join(format!("run{i}"));
            std::fs::create_dir_all(&dir).unwrap();
            let d = |f: &str| dir.join(f).to_string_lossy().into_owned();
            let g = d("g.txt");
            let tf = d("tf.txt");
            let c4 = d("c4.txt");
            let commands: Vec<Vec<String>> = vec![
                vec![
                    "gen", "--kind", "gnp", "--n", "11", "--p", "0.4", "--seed", "5", "--out", &g,
                ],
                vec![
                    "gen",
                    "--kind",
                    "triangle_free",
                    "--n",
                    "3000",
                    "--D",
                    "0.5",
                    "--seed",
                    "2",
                    "--out",
                    &tf,
                    "--stats-json",
                    &d("tf.json"),
                ],
                vec!["gen", "--kind", "cycle", "--n", "4", "--out", &c4],
                vec![
                    "color",
                    "--in",
                    &g,
                    "--mode",
                    "greedy",
                    "--out",
                    &d("greedy.json"),
                ],
                vec![
                    "color",
                    "--in",
                    &g,
                    "--mode",
                    "exact",
                    "--out",
                    &d("exact.json"),
                ],
                vec![
                    "color",
                    "--in",
                    &g,
                    "--mode",
                    "fractional",
                    "--out",
                    &d("frac.json"),
                ],
                vec!["stable", "--in", &g, "--out", &d("enum.json"), "enumerate"],
                vec![
                    "stable",
                    "--in",
                    &g,
                    "--format",
                    "csv",
                    "--out",
                    &d("expect.csv"),
                    "expectation",
                ],
                vec![
                    "stable",
                    "--out",
                    &d("appendix.json"),
                    "verify-appendix",
                    "--dmax",
                    "300",
                ],
                vec![
                    "extract",
                    "--in",
                    &g,
                    "--method",
                    "fractional",
                    "--out",
                    &d("x1.json"),
                ],
                vec![
                    "extract",
                    "--in",
                    &g,
                    "--method",
                    "coloring",
                    "--out",
                    &d("x2.json"),
                ],
                vec![
                    "extract",
                    "--in",
                    &g,
                    "--method",
                    "semi-exact",
                    "--out",
                    &d("x3.json"),
                ],
                vec![
                    "extract",
                    "--in",
                    &g,
                    "--method",
                    "semi-sampled",
                    "--seed",
                    "9",
                    "--out",
                    &d("x4.json"),
                ],
                vec![
                    "extract",
                    "--in",
                    &tf,
                    "--method",
                    "semi-local",
                    "--seed",
                    "9",
                    "--out",
                    &d("x5.json"),
                ],
                vec![
                    "extract",
                    "--in",
                    &g,
                    "--method",
                    "oracle",
                    "--out",
                    &d("x6.json"),
                ],
                vec!["sep", "--in", &c4, "--k", "1", "--out", &d("sep1.json")],
                vec!["sep", "--in", &c4, "--k", "2", "--out", &d("sep2.json")],
                vec![
                    "sep",
                    "--in",
                    &c4,
                    "--k",
                    "1",
                    "--mode",
                    "search",
                    "--seed",
                    "3",
                    "--out",
                    &d("sep3.json"),
                ],
                vec![
                    "exp",
                    "run",
                    "--spec",
                    &spec.to_string_lossy(),
                    "--out-dir",
                    &d("exp"),
                ],
            ]
            .into_iter()
            .map(|c| c.into_iter().map(str::to_string).collect())
            .collect();
            for c in &commands {
                let args: Vec<&str> = c.iter().map(String::as_str).collect();
                if let Err(e) = run_cli(&args, workers) {
                    panic!("{e}");
                }
            }
            collect_files(&dir)
        })
        .collect();
    let identical = runs.windows(2).all(|w| w[0] == w[1]);
    verdict(
        identical && runs[0].len() >= 20,
        format!(
            "CLI outputs byte-identical across reruns and worker counts 1/4/4: {} files",
            runs[0].len()
        ),
    )
}

fn collect_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((
                    p.strip_prefix(dir).unwrap().to_string_lossy().into_owned(),
                    std::fs::read(&p).unwrap(),
                ));
            }
        }
    }
    out.sort();
    out
}

fn main() {
    let corpus = connected_graphs_up_to(8).expect("catalog");
    let criteria: Vec<(usize, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, Box::new(|| criterion_1(&corpus))),
        (2, Box::new(|| criterion_2(&corpus))),
        (3, Box::new(|| criterion_3(&corpus))),
        (4, Box::new(|| criterion_4(&corpus))),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(|| criterion_10(&corpus))),
        (11, Box::new(criterion_11)),
    ];
    println!(
        "acceptance corpus: {} connected graphs on at most 8 vertices",
        corpus.len()
    );
    let mut failed = Vec::new();
    for (id, run) in &criteria {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            verdict(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        println!(
            "[{}] criterion {id}: {} ({:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
        if !v.pass {
            failed.push(*id);
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
