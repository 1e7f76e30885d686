//! Seeded random graphs and the deletion-based constructions that turn a
//! binomial random graph into a triangle-free, `K_r`-free, or high-girth one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{bernoulli, counter_word, pair_rank};

/// Default leading constant of the edge probability in the `K_r`-free and
/// high-girth constructions.
pub const DEFAULT_SCALE: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Gnp,
    TriangleFree,
    KrFree,
    HighGirth,
    CompleteBipartite,
    Cycle,
    NamedFixture,
}

/// Full description of one generated graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    #[serde(default)]
    pub n: usize,
    /// Edge probability for `gnp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Density constant `D` for the triangle-free construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    /// Forbidden clique order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Girth lower bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    /// Second side for `complete_bipartite`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    /// Leading constant for `kr_free` and `high_girth`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            n,
            p: None,
            d: None,
            r: None,
            g: None,
            b: None,
            scale: None,
            name: None,
            seed,
        }
    }

    fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T> {
        v.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {what}")))
    }

    pub fn generate(&self) -> Result<(Graph, Option<DeletionStats>)> {
        let scale = self.scale.unwrap_or(DEFAULT_SCALE);
        Ok(match self.kind {
            GenKind::Gnp => (gnp(self.n, Self::need(self.p, "p")?, self.seed)?, None),
            GenKind::TriangleFree => {
                let c = triangle_free_construction(self.n, Self::need(self.d, "D")?, self.seed)?;
                (c.graph, Some(c.stats))
            }
            GenKind::KrFree => {
                let c = kr_free_construction(self.n, Self::need(self.r, "r")?, scale, self.seed)?;
                (c.graph, Some(c.stats))
            }
            GenKind::HighGirth => {
                let c =
                    high_girth_construction(self.n, Self::need(self.g, "g")?, scale, self.seed)?;
                (c.graph, Some(c.stats))
            }
            GenKind::CompleteBipartite => {
                (complete_bipartite(self.n, self.b.unwrap_or(self.n)), None)
            }
            GenKind::Cycle => (cycle(self.n)?, None),
            GenKind::NamedFixture => {
                let name = self
                    .name
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParameter("missing fixture name".into()))?;
                (named_fixture(name)?, None)
            }
        })
    }
}

/// Binomial random graph; pair `(u, v)` is present iff its counter coin
/// succeeds, so the result does not depend on sampling order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let nn = n as u64;
    let mut edges = Vec::new();
    if p > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if bernoulli(counter_word(seed, pair_rank(nn, u as u64, v as u64)), p) {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok(Graph::from_pairs_lossy(n, edges))
}

/// Bookkeeping for a deletion-based construction.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeletionStats {
    pub n: usize,
    pub p: f64,
    pub initial_edges: usize,
    /// Forbidden substructures in the initial sample (triangles or `K_r`);
    /// short cycles are not counted.
    pub initial_forbidden: Option<usize>,
    pub deleted_vertices: usize,
    pub min_degree_before: usize,
    pub max_degree_before: usize,
    pub final_vertices: usize,
    pub final_edges: usize,
    pub min_degree_after: usize,
    pub max_degree_after: usize,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: Graph,
    /// `kept[new] = old` id in the initial sample.
    pub kept: Vec<usize>,
    pub stats: DeletionStats,
}

/// Adjacency with vertex deletion, ids stay fixed until `finish`.
struct Shrinking {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    deleted: usize,
}

impl Shrinking {
    fn new(g: &Graph) -> Self {
        Shrinking {
            adj: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
            alive: vec![true; g.n()],
            deleted: 0,
        }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn delete(&mut self, v: usize) {
        for u in std::mem::take(&mut self.adj[v]) {
            if let Ok(i) = self.adj[u].binary_search(&v) {
                self.adj[u].remove(i);
            }
        }
        self.alive[v] = false;
        self.deleted += 1;
    }

    /// Lexicographically first `K_r` whose smallest vertex is at least `from`.
    fn first_clique_from(&self, from: usize, r: usize) -> Option<Vec<usize>> {
        let mut stack = Vec::with_capacity(r);
        for v in from..self.adj.len() {
            if !self.alive[v] {
                continue;
            }
            let cands: Vec<usize> = self.adj[v].iter().copied().filter(|&u| u > v).collect();
            stack.push(v);
            if self.extend(&mut stack, &cands, r) {
                return Some(stack);
            }
            stack.pop();
        }
        None
    }

    fn extend(&self, stack: &mut Vec<usize>, cands: &[usize], r: usize) -> bool {
        if stack.len() == r {
            return true;
        }
        if stack.len() + cands.len() < r {
            return false;
        }
        for (i, &u) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(u, w))
                .collect();
            stack.push(u);
            if self.extend(stack, &next, r) {
                return true;
            }
            stack.pop();
        }
        false
    }

    /// Current graph with dead vertices left isolated.
    fn snapshot(&self) -> Graph {
        let edges = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(v, l)| l.iter().filter(move |&&u| u > v).map(move |&u| (v, u)));
        Graph::from_pairs_lossy(self.adj.len(), edges)
    }

    fn finish(self, initial: &Graph, p: f64, initial_forbidden: Option<usize>) -> Construction {
        let kept: Vec<usize> = (0..self.adj.len()).filter(|&v| self.alive[v]).collect();
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in kept.iter().enumerate() {
            index[v] = i;
        }
        let edges = kept
            .iter()
            .flat_map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(move |&&u| u > v)
                    .map(move |&u| (v, u))
            })
            .map(|(v, u)| (index[v], index[u]))
            .collect::<Vec<_>>();
        let graph = Graph::from_pairs_lossy(kept.len(), edges);
        let stats = DeletionStats {
            n: initial.n(),
            p,
            initial_edges: initial.m(),
            initial_forbidden,
            deleted_vertices: self.deleted,
            min_degree_before: initial.min_degree(),
            max_degree_before: initial.max_degree(),
            final_vertices: graph.n(),
            final_edges: graph.m(),
            min_degree_after: graph.min_degree(),
            max_degree_after: graph.max_degree(),
        };
        Construction { graph, kept, stats }
    }
}

/// Deletes the lowest vertex of the lexicographically first `K_r`, re-searching
/// after every deletion, until none is left.
pub fn delete_cliques(initial: &Graph, r: usize, p: f64) -> Construction {
    let initial_count = if r == 3 {
        Some(initial.list_triangles().len())
    } else {
        None
    };
    let mut work = Shrinking::new(initial);
    // Deleting the smallest vertex of the first clique removes every clique
    // whose smallest vertex is that one, so the scan can resume after it.
    let mut from = 0;
    while let Some(clique) = work.first_clique_from(from, r) {
        work.delete(clique[0]);
        from = clique[0] + 1;
    }
    work.finish(initial, p, initial_count)
}

pub fn triangle_free_from_sample(initial: &Graph, p: f64) -> Construction {
    delete_cliques(initial, 3, p)
}

/// `gnp(n, D n^{-2/3})` followed by triangle deletion.
pub fn triangle_free_construction(n: usize, d: f64, seed: u64) -> Result<Construction> {
    let cap = 2f64.powf(-0.25);
    if !(d > 0.0 && d < cap) {
        return Err(Error::InvalidParameter(format!(
            "D = {d} outside (0, 2^-1/4)"
        )));
    }
    let p = (d * (n.max(1) as f64).powf(-2.0 / 3.0)).min(1.0);
    let initial = gnp(n, p, seed)?;
    Ok(triangle_free_from_sample(&initial, p))
}

/// Degree window `[D(1 - 2D^4) n^{1/3} / 4, 3 D n^{1/3} / 2]` expected of the
/// triangle-free construction on `n` initial vertices.
pub fn triangle_free_degree_window(n: usize, d: f64) -> (f64, f64) {
    let cube = (n as f64).cbrt();
    (d * (1.0 - 2.0 * d.powi(4)) * cube / 4.0, 1.5 * d * cube)
}

/// Whether every degree lies in the window, and the fraction of vertices that do.
pub fn degree_window_report(g: &Graph, window: (f64, f64)) -> (bool, f64) {
    let inside = (0..g.n()).filter(|&v| {
        let d = g.degree(v) as f64;
        window.0 <= d && d <= window.1
    });
    let count = inside.count();
    (
        count == g.n(),
        if g.n() == 0 {
            1.0
        } else {
            count as f64 / g.n() as f64
        },
    )
}

/// `gnp(n, c n^{-2/r})` followed by `K_r` deletion.
pub fn kr_free_construction(n: usize, r: usize, scale: f64, seed: u64) -> Result<Construction> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!(
            "clique order r = {r} below 3"
        )));
    }
    check_scale(scale)?;
    let p = (scale * (n.max(1) as f64).powf(-2.0 / r as f64)).min(1.0);
    let initial = gnp(n, p, seed)?;
    let mut c = delete_cliques(&initial, r, p);
    if r != 3 {
        c.stats.initial_forbidden = Some(count_cliques(&initial, r));
    }
    Ok(c)
}

fn count_cliques(g: &Graph, r: usize) -> usize {
    fn go(g: &Graph, size: usize, cands: &[usize], r: usize) -> usize {
        if size == r {
            return 1;
        }
        cands
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                let next: Vec<usize> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(u, w))
                    .collect();
                go(g, size + 1, &next, r)
            })
            .sum()
    }
    (0..g.n())
        .map(|v| {
            let cands: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
            go(g, 1, &cands, r)
        })
        .sum()
}

/// `gnp(n, c n^{-1 + 1/(g-1)})` followed by deleting the lowest vertex of a
/// shortest cycle while the girth is below `g`.
pub fn high_girth_construction(
    n: usize,
    girth: usize,
    scale: f64,
    seed: u64,
) -> Result<Construction> {
    if girth < 4 {
        return Err(Error::InvalidParameter(format!(
            "girth bound g = {girth} below 4"
        )));
    }
    check_scale(scale)?;
    let p = (scale * (n.max(1) as f64).powf(-1.0 + 1.0 / (girth as f64 - 1.0))).min(1.0);
    let initial = gnp(n, p, seed)?;
    let mut work = Shrinking::new(&initial);
    loop {
        let current = work.snapshot();
        match current.short_cycle(girth) {
            Some(cycle) => {
                let lowest = *cycle.iter().min().expect("cycles are nonempty");
                work.delete(lowest);
            }
            None => break,
        }
    }
    Ok(work.finish(&initial, p, None))
}

fn check_scale(scale: f64) -> Result<()> {
    if scale > 0.0 && scale.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "scale {scale} must be positive"
        )))
    }
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_pairs_lossy(a + b, edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Ok(Graph::from_pairs_lossy(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_pairs_lossy(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Graph {
    Graph::from_pairs_lossy(n, (1..n).map(|i| (i - 1, i)))
}

pub const FIXTURES: &[&str] = &["petersen", "grotzsch", "c5", "k4", "k33", "clebsch"];

pub fn named_fixture(name: &str) -> Result<Graph> {
    match name {
        "petersen" => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            Ok(Graph::from_pairs_lossy(
                10,
                outer.chain(inner).chain(spokes),
            ))
        }
        // Mycielskian of C_5.
        "grotzsch" => {
            let base = (0..5).map(|i| (i, (i + 1) % 5));
            let shadows = (0..5).flat_map(|i| [(5 + i, (i + 1) % 5), (5 + i, (i + 4) % 5)]);
            let apex = (0..5).map(|i| (5 + i, 10));
            Ok(Graph::from_pairs_lossy(11, base.chain(shadows).chain(apex)))
        }
        "c5" => cycle(5),
        "k4" => Ok(complete(4)),
        "k33" => Ok(complete_bipartite(3, 3)),
        // Folded 5-cube: 16 vertices, 5-regular, triangle-free.
        "clebsch" => {
            let mut edges = Vec::new();
            for u in 0..16usize {
                for bit in 0..4 {
                    edges.push((u, u ^ 1 << bit));
                }
                edges.push((u, u ^ 0b1111));
            }
            Ok(Graph::from_pairs_lossy(16, edges))
        }
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}
