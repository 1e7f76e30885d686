//! Extraction of dense bipartite and semi-bipartite induced subgraphs.
//!
//! Every routine returns a witness that re-derives its own density figures
//! from the host graph on construction.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{ProperColoring, StableSetDistribution};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::numeric::{int, Rational};
use crate::rng::chacha;
use crate::stable_sets::{
    enumerate_stable_sets, full_mask, max_stable_set_within, DEFAULT_ENUM_BUDGET,
    DEFAULT_SEARCH_BUDGET,
};

pub const DEFAULT_PAIR_BUDGET: usize = 1 << 26;
pub const DEFAULT_ORACLE_MAX_N: usize = 16;
pub const DEFAULT_SAMPLED_DRAWS: usize = 1000;
pub const DEFAULT_LOCAL_MOVES: usize = 20_000;

fn ratio(num: usize, den: usize) -> Rational {
    if den == 0 {
        int(0)
    } else {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Two disjoint stable sets; the subgraph they induce is bipartite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteWitness {
    pub part1: VertexSet,
    pub part2: VertexSet,
    pub edge_count: usize,
    #[serde(with = "crate::numeric::rational_str")]
    pub avg_degree: Rational,
    pub min_degree: usize,
}

impl BipartiteWitness {
    pub fn new(g: &Graph, part1: VertexSet, part2: VertexSet) -> Result<Self> {
        g.check_set(&part1)?;
        g.check_set(&part2)?;
        if !part1.is_disjoint(&part2) {
            return Err(Error::Verification("witness parts intersect".into()));
        }
        if !g.is_stable(&part1) || !g.is_stable(&part2) {
            return Err(Error::Verification("witness part not stable".into()));
        }
        let edge_count = g.edges_between(&part1, &part2);
        let size = part1.len() + part2.len();
        let within = |v: usize, other: &VertexSet| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| other.contains(u))
                .count()
        };
        let min_degree = part1
            .iter()
            .map(|v| within(v, &part2))
            .chain(part2.iter().map(|v| within(v, &part1)))
            .min()
            .unwrap_or(0);
        Ok(BipartiteWitness {
            avg_degree: ratio(2 * edge_count, size),
            part1,
            part2,
            edge_count,
            min_degree,
        })
    }

    pub fn empty() -> Self {
        BipartiteWitness {
            part1: VertexSet::empty(),
            part2: VertexSet::empty(),
            edge_count: 0,
            avg_degree: int(0),
            min_degree: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.part1.len() + self.part2.len()
    }

    /// Recomputes everything from the host graph and compares.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fresh = BipartiteWitness::new(g, self.part1.clone(), self.part2.clone())?;
        if fresh != *self {
            return Err(Error::Verification(
                "bipartite witness figures do not match the host graph".into(),
            ));
        }
        Ok(())
    }

    fn key(&self) -> (&VertexSet, &VertexSet) {
        (&self.part1, &self.part2)
    }
}

/// A stable part and an arbitrary disjoint part; density counts cross edges only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiBipartiteWitness {
    pub stable_part: VertexSet,
    pub other_part: VertexSet,
    pub cross_edge_count: usize,
    #[serde(with = "crate::numeric::rational_str")]
    pub avg_degree: Rational,
}

impl SemiBipartiteWitness {
    pub fn new(g: &Graph, stable_part: VertexSet, other_part: VertexSet) -> Result<Self> {
        g.check_set(&stable_part)?;
        g.check_set(&other_part)?;
        if !stable_part.is_disjoint(&other_part) {
            return Err(Error::Verification("semi-bipartite parts intersect".into()));
        }
        if !g.is_stable(&stable_part) {
            return Err(Error::Verification(
                "semi-bipartite stable part has an edge".into(),
            ));
        }
        let cross = g.edges_between(&stable_part, &other_part);
        Ok(SemiBipartiteWitness {
            avg_degree: ratio(2 * cross, stable_part.len() + other_part.len()),
            stable_part,
            other_part,
            cross_edge_count: cross,
        })
    }

    /// Witness for stable set `s` against its complement, with vertices that
    /// have no cross edge trimmed from both sides.
    pub fn from_stable_set(g: &Graph, s: &VertexSet) -> Result<Self> {
        let stable: Vec<usize> = s.iter().filter(|&v| g.degree(v) > 0).collect();
        let other: Vec<usize> = (0..g.n())
            .filter(|&u| !s.contains(u) && g.neighbors(u).iter().any(|&w| s.contains(w)))
            .collect();
        SemiBipartiteWitness::new(
            g,
            VertexSet::from_iter_unchecked(stable),
            VertexSet::from_iter_unchecked(other),
        )
    }

    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fresh =
            SemiBipartiteWitness::new(g, self.stable_part.clone(), self.other_part.clone())?;
        if fresh != *self {
            return Err(Error::Verification(
                "semi-bipartite witness figures do not match the host graph".into(),
            ));
        }
        Ok(())
    }
}

/// Derandomized pair selection: scans all ordered support pairs for the one
/// maximizing `|E(G[S1 ∪ S2])| - (|S1| + |S2|) d / 2k`, then discards
/// `S1 ∩ S2`. The result has average degree at least `d / k`.
pub fn extract_from_distribution(
    g: &Graph,
    dist: &StableSetDistribution,
) -> Result<BipartiteWitness> {
    extract_from_distribution_with_budget(g, dist, DEFAULT_PAIR_BUDGET)
}

pub fn extract_from_distribution_with_budget(
    g: &Graph,
    dist: &StableSetDistribution,
    pair_budget: usize,
) -> Result<BipartiteWitness> {
    if g.m() == 0 {
        return Ok(BipartiteWitness::empty());
    }
    let marginal = dist
        .uniform_marginal()
        .ok_or_else(|| {
            Error::InvalidParameter(
                "distribution marginals must be flattened to a common value".into(),
            )
        })?
        .clone();
    let support = dist.support();
    if support.len().saturating_mul(support.len()) > pair_budget {
        return Err(Error::BudgetExceeded(format!(
            "{} support pairs exceed {pair_budget}",
            support.len().pow(2)
        )));
    }
    let adj = g.masks("extract_from_distribution")?;
    let masks: Vec<u64> = support.iter().map(VertexSet::mask).collect();
    // d/(2k) = d * marginal / 2 = num/den; scaled value = edges*den - size*num
    let per_vertex = g.average_degree() * &marginal / int(2);
    let num = i128::try_from(per_vertex.numer())
        .map_err(|_| Error::Internal("density numerator overflow".into()))?;
    let den = i128::try_from(per_vertex.denom())
        .map_err(|_| Error::Internal("density denominator overflow".into()))?;

    let mut best: Option<(i128, bool, usize, usize)> = None;
    for (i, &s1) in masks.iter().enumerate() {
        for (j, &s2) in masks.iter().enumerate() {
            let union = s1 | s2;
            let edges: u32 = mask_iter(union)
                .map(|v| (adj[v] & union).count_ones())
                .sum::<u32>()
                / 2;
            let size = (s1.count_ones() + s2.count_ones()) as i128;
            let value = edges as i128 * den - size * num;
            let key = (value, edges > 0);
            if best.is_none_or(|(bv, be, _, _)| key > (bv, be)) {
                best = Some((value, edges > 0, i, j));
            }
        }
    }
    let (value, _, i, j) = best.ok_or_else(|| Error::Internal("empty support".into()))?;
    if value < 0 {
        return Err(Error::Internal(
            "no support pair reaches the expected value".into(),
        ));
    }
    let (s1, s2) = (&support[i], &support[j]);
    let w = BipartiteWitness::new(g, s1.difference(s2), s2.difference(s1))?;
    let guarantee = g.average_degree() * &marginal;
    if w.avg_degree < guarantee {
        return Err(Error::Internal(format!(
            "witness average degree {} below {}",
            w.avg_degree, guarantee
        )));
    }
    Ok(w)
}

fn mask_iter(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Densest pair of color classes (edges per vertex), then peeled at
/// `δ(G) / 2k` inside the bipartite subgraph they induce.
pub fn extract_from_coloring(g: &Graph, c: &ProperColoring) -> Result<BipartiteWitness> {
    let fresh = ProperColoring::new(g, c.colors().to_vec())?;
    let classes = fresh.classes();
    let k = classes.len();
    if k < 2 {
        return Ok(BipartiteWitness::empty());
    }
    let mut best: Option<(usize, usize, usize, usize)> = None; // (edges, size, i, j)
    for i in 0..k {
        for j in i + 1..k {
            let e = g.edges_between(&classes[i], &classes[j]);
            let s = classes[i].len() + classes[j].len();
            let better = match best {
                None => true,
                Some((be, bs, _, _)) => (e * bs).cmp(&(be * s)) == Ordering::Greater,
            };
            if better {
                best = Some((e, s, i, j));
            }
        }
    }
    let (_, _, i, j) = best.expect("k >= 2");
    let union = classes[i].union(&classes[j]);
    let threshold = Rational::new(BigInt::from(g.min_degree()), BigInt::from(2 * k));
    let kept = g.peel_within(&union, &threshold);
    let w = BipartiteWitness::new(
        g,
        kept.intersection(&classes[i]),
        kept.intersection(&classes[j]),
    )?;
    if g.m() > 0 && int(w.min_degree as i64) < threshold {
        return Err(Error::Internal(
            "peeled witness below the minimum-degree guarantee".into(),
        ));
    }
    Ok(w)
}

/// Color classes obtained by repeatedly removing a maximum stable set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AksPeeling {
    pub classes: Vec<VertexSet>,
    pub leftover: VertexSet,
    pub covered: usize,
    pub min_class_size: usize,
    /// `covered / min_class_size`, an upper bound on the class count.
    #[serde(with = "crate::numeric::rational_str")]
    pub class_count_bound: Rational,
}

/// Removes maximum stable sets while more than `threshold` vertices remain.
pub fn aks_peeling_coloring(g: &Graph, threshold: usize) -> Result<AksPeeling> {
    g.masks("aks_peeling_coloring")?;
    let mut remaining = full_mask(g.n());
    let mut classes = Vec::new();
    while remaining.count_ones() as usize > threshold {
        let s = max_stable_set_within(g, remaining, DEFAULT_SEARCH_BUDGET)?;
        if s.is_empty() {
            break;
        }
        remaining &= !s.mask();
        classes.push(s);
    }
    let covered: usize = classes.iter().map(VertexSet::len).sum();
    let min_class_size = classes.iter().map(VertexSet::len).min().unwrap_or(0);
    Ok(AksPeeling {
        leftover: VertexSet::from_mask(remaining),
        class_count_bound: ratio(covered, min_class_size),
        covered,
        min_class_size,
        classes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiMode {
    /// Maximum over every stable set.
    Exact,
    /// Best of this many uniform stable sets.
    Sampled(usize),
    /// Seeded hill climbing with this many moves.
    LocalSearch(usize),
}

/// Best semi-bipartite induced subgraph with a stable set on one side.
/// Heuristic modes give lower bounds on the exact optimum.
pub fn best_semi_bipartite(g: &Graph, mode: SemiMode, seed: u64) -> Result<SemiBipartiteWitness> {
    match mode {
        SemiMode::Exact => semi_exact(g),
        SemiMode::Sampled(draws) => semi_sampled(g, draws, seed),
        SemiMode::LocalSearch(moves) => semi_local(g, moves, seed),
    }
}

/// `(cross, size)` for the trimmed witness of stable mask `s`.
fn semi_score(adj: &[u64], deg: &[usize], nonisolated: u64, s: u64) -> (u64, u64) {
    let mut cross = 0u64;
    let mut reach = 0u64;
    for v in mask_iter(s) {
        cross += deg[v] as u64;
        reach |= adj[v];
    }
    (
        cross,
        ((s & nonisolated).count_ones() + reach.count_ones()) as u64,
    )
}

fn better_ratio(a: (u64, u64), b: (u64, u64)) -> bool {
    // a > b for cross/size, with size 0 meaning 0
    let av = if a.1 == 0 { (0, 1) } else { a };
    let bv = if b.1 == 0 { (0, 1) } else { b };
    (av.0 as u128) * (bv.1 as u128) > (bv.0 as u128) * (av.1 as u128)
}

fn semi_exact(g: &Graph) -> Result<SemiBipartiteWitness> {
    let family = enumerate_stable_sets(g, DEFAULT_ENUM_BUDGET)?;
    best_in_masks(g, family.masks().iter().copied())
}

fn best_in_masks(g: &Graph, masks: impl Iterator<Item = u64>) -> Result<SemiBipartiteWitness> {
    let adj = g.masks("best_semi_bipartite")?;
    let deg = g.degrees();
    let nonisolated = (0..g.n())
        .filter(|&v| deg[v] > 0)
        .fold(0u64, |m, v| m | 1 << v);
    let mut best = (0u64, (0u64, 0u64));
    for s in masks {
        let score = semi_score(&adj, &deg, nonisolated, s);
        if better_ratio(score, best.1) {
            best = (s, score);
        }
    }
    SemiBipartiteWitness::from_stable_set(g, &VertexSet::from_mask(best.0))
}

fn semi_sampled(g: &Graph, draws: usize, seed: u64) -> Result<SemiBipartiteWitness> {
    let family = enumerate_stable_sets(g, DEFAULT_ENUM_BUDGET)?;
    let mut rng = chacha(seed);
    let picks: Vec<u64> = (0..draws.max(1))
        .map(|_| family.masks()[rng.gen_range(0..family.count())])
        .collect();
    best_in_masks(g, picks.into_iter())
}

/// Incremental state for local search over stable sets.
struct SemiState<'a> {
    g: &'a Graph,
    in_s: Vec<bool>,
    /// `|N(u) ∩ S|`.
    hits: Vec<u32>,
    cross: u64,
    stable_side: u64,
    other_side: u64,
}

impl<'a> SemiState<'a> {
    fn new(g: &'a Graph) -> Self {
        SemiState {
            g,
            in_s: vec![false; g.n()],
            hits: vec![0; g.n()],
            cross: 0,
            stable_side: 0,
            other_side: 0,
        }
    }

    fn add(&mut self, v: usize) {
        debug_assert!(!self.in_s[v] && self.hits[v] == 0);
        self.in_s[v] = true;
        let d = self.g.degree(v) as u64;
        self.cross += d;
        if d > 0 {
            self.stable_side += 1;
        }
        for &u in self.g.neighbors(v) {
            if self.hits[u] == 0 {
                self.other_side += 1;
            }
            self.hits[u] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.in_s[v]);
        self.in_s[v] = false;
        let d = self.g.degree(v) as u64;
        self.cross -= d;
        if d > 0 {
            self.stable_side -= 1;
        }
        for &u in self.g.neighbors(v) {
            self.hits[u] -= 1;
            if self.hits[u] == 0 {
                self.other_side -= 1;
            }
        }
    }

    fn score(&self) -> (u64, u64) {
        (self.cross, self.stable_side + self.other_side)
    }

    fn members(&self) -> Vec<usize> {
        (0..self.g.n()).filter(|&v| self.in_s[v]).collect()
    }
}

fn semi_local(g: &Graph, moves: usize, seed: u64) -> Result<SemiBipartiteWitness> {
    if g.n() == 0 {
        return SemiBipartiteWitness::new(g, VertexSet::empty(), VertexSet::empty());
    }
    let mut rng = chacha(seed);
    let mut state = SemiState::new(g);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut rng);
    for &v in &order {
        if state.hits[v] == 0 && !state.in_s[v] {
            state.add(v);
        }
    }
    let mut best_score = state.score();
    let mut best_members = state.members();
    for _ in 0..moves {
        let v = rng.gen_range(0..g.n());
        let before = state.score();
        if state.in_s[v] {
            state.remove(v);
            if better_ratio(before, state.score()) {
                state.add(v);
            }
        } else {
            let evicted: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| state.in_s[u])
                .collect();
            for &u in &evicted {
                state.remove(u);
            }
            state.add(v);
            if better_ratio(before, state.score()) {
                state.remove(v);
                for &u in &evicted {
                    state.add(u);
                }
            }
        }
        if better_ratio(state.score(), best_score) {
            best_score = state.score();
            best_members = state.members();
        }
    }
    SemiBipartiteWitness::from_stable_set(g, &VertexSet::from_iter_unchecked(best_members))
}

/// Outcome of [`trim_equal_parts`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrimResult {
    pub a_trimmed: VertexSet,
    #[serde(with = "crate::numeric::rational_str")]
    pub avg_before: Rational,
    #[serde(with = "crate::numeric::rational_str")]
    pub avg_after: Rational,
    /// `avg_after >= avg_before / 2`, checked exactly.
    pub certified: bool,
}

/// Keeps the `|b|` vertices of `a` with most neighbors in `b` (lowest id on
/// ties). The bipartite average degree drops by at most half.
pub fn trim_equal_parts(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<TrimResult> {
    g.check_set(a)?;
    g.check_set(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::InvalidParameter("parts must be disjoint".into()));
    }
    if a.len() < b.len() {
        return Err(Error::InvalidParameter(format!(
            "|a| = {} is smaller than |b| = {}",
            a.len(),
            b.len()
        )));
    }
    let into_b = |v: usize| g.neighbors(v).iter().filter(|&&u| b.contains(u)).count();
    let mut ranked: Vec<(usize, usize)> = a.iter().map(|v| (into_b(v), v)).collect();
    ranked.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let a_trimmed = VertexSet::from_iter_unchecked(ranked.iter().take(b.len()).map(|&(_, v)| v));
    let avg = |x: &VertexSet| ratio(2 * g.edges_between(x, b), x.len() + b.len());
    let avg_before = avg(a);
    let avg_after = avg(&a_trimmed);
    let certified = avg_after.clone() * int(2) >= avg_before;
    Ok(TrimResult {
        a_trimmed,
        avg_before,
        avg_after,
        certified,
    })
}

/// Exhaustive maximum average degree over induced bipartite subgraphs, as
/// pairs of disjoint stable sets. Lexicographically smallest optimum.
pub fn max_bip_induced_oracle(g: &Graph) -> Result<BipartiteWitness> {
    max_bip_induced_oracle_with_limit(g, DEFAULT_ORACLE_MAX_N)
}

pub fn max_bip_induced_oracle_with_limit(g: &Graph, max_n: usize) -> Result<BipartiteWitness> {
    if g.n() > max_n {
        return Err(Error::BudgetExceeded(format!(
            "oracle limited to {max_n} vertices, got {}",
            g.n()
        )));
    }
    let adj = g.masks("max_bip_induced_oracle")?;
    let mut search = OracleSearch {
        adj: &adj,
        n: g.n(),
        best: None,
    };
    search.go(0, 0, 0, 0);
    match search.best {
        None => Ok(BipartiteWitness::empty()),
        Some((a, b, _, _)) => {
            BipartiteWitness::new(g, VertexSet::from_mask(a), VertexSet::from_mask(b))
        }
    }
}

struct OracleSearch<'a> {
    adj: &'a [u64],
    n: usize,
    best: Option<(u64, u64, u32, u32)>, // (A, B, edges, size)
}

impl OracleSearch<'_> {
    fn go(&mut self, v: usize, a: u64, b: u64, edges: u32) {
        if v == self.n {
            // Part A holds the smallest witness vertex; swapped pairs are skipped.
            if a == 0 || (b != 0 && b.trailing_zeros() < a.trailing_zeros()) || edges == 0 {
                return;
            }
            let size = (a | b).count_ones();
            let take = match self.best {
                None => true,
                Some((ba, bb, be, bs)) => {
                    let lhs = edges as u64 * bs as u64;
                    let rhs = be as u64 * size as u64;
                    lhs > rhs || (lhs == rhs && witness_lt(a, b, ba, bb))
                }
            };
            if take {
                self.best = Some((a, b, edges, size));
            }
            return;
        }
        self.go(v + 1, a, b, edges);
        let bit = 1u64 << v;
        if self.adj[v] & a == 0 {
            self.go(v + 1, a | bit, b, edges + (self.adj[v] & b).count_ones());
        }
        if self.adj[v] & b == 0 {
            self.go(v + 1, a, b | bit, edges + (self.adj[v] & a).count_ones());
        }
    }
}

fn witness_lt(a: u64, b: u64, ba: u64, bb: u64) -> bool {
    let sa = VertexSet::from_mask(a);
    let sb = VertexSet::from_mask(b);
    let ta = VertexSet::from_mask(ba);
    let tb = VertexSet::from_mask(bb);
    (&sa, &sb) < (&ta, &tb)
}

/// Lexicographic order on witnesses, for deterministic tie-breaking by callers.
pub fn witness_order(x: &BipartiteWitness, y: &BipartiteWitness) -> Ordering {
    x.key().cmp(&y.key())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{
        chromatic_number_exact, coloring_to_distribution, fractional_chromatic_exact,
        fractional_to_distribution,
    };
    use crate::generators::{complete, complete_bipartite, cycle, named_fixture};
    use crate::numeric::{ln_bounds, rat};

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_iter_unchecked(v.iter().copied())
    }

    #[test]
    fn witness_rejects_bad_parts() {
        let c5 = cycle(5).unwrap();
        assert!(BipartiteWitness::new(&c5, set(&[0, 1]), set(&[3])).is_err());
        assert!(BipartiteWitness::new(&c5, set(&[0, 2]), set(&[2])).is_err());
        let w = BipartiteWitness::new(&c5, set(&[0, 2]), set(&[1, 3])).unwrap();
        assert_eq!((w.edge_count, w.min_degree), (3, 1));
        assert_eq!(w.avg_degree, rat(3, 2));
        w.verify(&c5).unwrap();
        let mut forged = w.clone();
        forged.edge_count = 4;
        assert!(forged.verify(&c5).is_err());
    }

    #[test]
    fn distribution_extraction_examples() {
        let k33 = complete_bipartite(3, 3);
        let c = ProperColoring::new(&k33, vec![0, 0, 0, 1, 1, 1]).unwrap();
        let w =
            extract_from_distribution(&k33, &coloring_to_distribution(&k33, &c).unwrap()).unwrap();
        assert_eq!(w.avg_degree, int(3));

        let c5 = cycle(5).unwrap();
        let dist =
            fractional_to_distribution(&c5, &fractional_chromatic_exact(&c5).unwrap()).unwrap();
        let w = extract_from_distribution(&c5, &dist).unwrap();
        assert!(w.avg_degree >= rat(4, 5));
        assert!(w.avg_degree >= int(1));

        let edge = complete(2);
        let c = ProperColoring::new(&edge, vec![0, 1]).unwrap();
        let w = extract_from_distribution(&edge, &coloring_to_distribution(&edge, &c).unwrap())
            .unwrap();
        assert_eq!(w.avg_degree, int(1));
    }

    #[test]
    fn coloring_extraction_examples() {
        let k33 = complete_bipartite(3, 3);
        let w = extract_from_coloring(
            &k33,
            &ProperColoring::new(&k33, vec![0, 0, 0, 1, 1, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!((w.size(), w.min_degree), (6, 3));

        let c5 = cycle(5).unwrap();
        let (k, col) = chromatic_number_exact(&c5).unwrap();
        assert_eq!(k, 3);
        let w = extract_from_coloring(&c5, &col).unwrap();
        assert!(w.min_degree >= 1);
        let (h, _) = c5.induced_subgraph(&w.part1.union(&w.part2)).unwrap();
        assert!(
            h.is_connected() && h.m() + 1 == h.n(),
            "expected an induced path"
        );

        let k4 = complete(4);
        let w = extract_from_coloring(&k4, &ProperColoring::new(&k4, vec![0, 1, 2, 3]).unwrap())
            .unwrap();
        assert_eq!((w.edge_count, w.min_degree), (1, 1));
    }

    #[test]
    fn aks_peeling_examples() {
        let c5 = cycle(5).unwrap();
        let r = aks_peeling_coloring(&c5, 5).unwrap();
        assert!(r.classes.is_empty());
        assert_eq!(r.leftover.len(), 5);
        let r = aks_peeling_coloring(&cycle(6).unwrap(), 0).unwrap();
        assert_eq!(
            r.classes.iter().map(VertexSet::len).collect::<Vec<_>>(),
            vec![3, 3]
        );
        let p = named_fixture("petersen").unwrap();
        // The maximum stable sets of the Petersen graph pairwise intersect,
        // so the second class can only have 3 vertices.
        let fours: Vec<u64> = crate::stable_sets::enumerate_stable_sets(&p, 1 << 12)
            .unwrap()
            .masks()
            .iter()
            .copied()
            .filter(|m| m.count_ones() == 4)
            .collect();
        assert_eq!(fours.len(), 5);
        assert!(fours.iter().all(|a| fours.iter().all(|b| a & b != 0)));
        let r = aks_peeling_coloring(&p, 2).unwrap();
        assert_eq!(
            r.classes.iter().map(VertexSet::len).collect::<Vec<_>>(),
            vec![4, 3, 3]
        );
        assert!(r.leftover.is_empty());
        assert_eq!(r.class_count_bound, rat(10, 3));
        let r = aks_peeling_coloring(&p, 6).unwrap();
        assert_eq!(
            r.classes.iter().map(VertexSet::len).collect::<Vec<_>>(),
            vec![4]
        );
        assert_eq!(r.leftover.len(), 6);
    }

    #[test]
    fn semi_bipartite_examples() {
        let k33 = complete_bipartite(3, 3);
        assert_eq!(
            best_semi_bipartite(&k33, SemiMode::Exact, 0)
                .unwrap()
                .avg_degree,
            int(3)
        );
        let c5 = cycle(5).unwrap();
        let w = best_semi_bipartite(&c5, SemiMode::Exact, 0).unwrap();
        assert_eq!(w.avg_degree, rat(8, 5));
        assert_eq!(
            (w.stable_part.len(), w.other_part.len(), w.cross_edge_count),
            (2, 3, 4)
        );
        assert!(w.avg_degree >= ln_bounds(2).upper / int(2));
        let s = best_semi_bipartite(&c5, SemiMode::Sampled(200), 1).unwrap();
        assert!(s.avg_degree <= w.avg_degree);
        let l = best_semi_bipartite(&c5, SemiMode::LocalSearch(500), 1).unwrap();
        assert!(l.avg_degree <= w.avg_degree);
        l.verify(&c5).unwrap();
    }

    #[test]
    fn local_search_on_large_graph() {
        let g = crate::generators::gnp(3000, 0.003, 5).unwrap();
        let w = best_semi_bipartite(&g, SemiMode::LocalSearch(5000), 3).unwrap();
        w.verify(&g).unwrap();
        assert!(w.avg_degree > int(1));
        assert!(best_semi_bipartite(&g, SemiMode::Exact, 0).is_err());
    }

    #[test]
    fn trim_examples() {
        let g = complete_bipartite(3, 3);
        let r = trim_equal_parts(&g, &set(&[0, 1, 2]), &set(&[3, 4, 5])).unwrap();
        assert_eq!(r.a_trimmed, set(&[0, 1, 2]));
        // a = {0,1,2,3} with degrees 3,2,1,0 into b = {4,5,6}
        let g = Graph::build(7, &[(0, 4), (0, 5), (0, 6), (1, 4), (1, 5), (2, 4)]).unwrap();
        let r = trim_equal_parts(&g, &set(&[0, 1, 2, 3]), &set(&[4, 5, 6])).unwrap();
        assert_eq!(r.a_trimmed, set(&[0, 1, 2]));
        let g2 = Graph::build(6, &[(0, 4), (0, 5), (1, 4), (2, 5)]).unwrap();
        let r = trim_equal_parts(&g2, &set(&[0, 1, 2, 3]), &set(&[4, 5])).unwrap();
        assert_eq!(r.a_trimmed, set(&[0, 1]));
        assert!(r.certified);
        assert!(trim_equal_parts(&g2, &set(&[4]), &set(&[0, 1])).is_err());
    }

    #[test]
    fn oracle_examples() {
        let c5 = cycle(5).unwrap();
        let w = max_bip_induced_oracle(&c5).unwrap();
        assert_eq!(w.avg_degree, rat(3, 2));
        assert_eq!(w.size(), 4);
        assert_eq!(
            max_bip_induced_oracle(&complete_bipartite(3, 3))
                .unwrap()
                .avg_degree,
            int(3)
        );
        assert_eq!(
            max_bip_induced_oracle(&complete(4)).unwrap().avg_degree,
            int(1)
        );
        assert_eq!(
            max_bip_induced_oracle(&Graph::empty(3)).unwrap(),
            BipartiteWitness::empty()
        );
    }
}
