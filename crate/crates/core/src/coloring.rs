//! Proper colorings, exact fractional colorings, and the stable-set
//! distributions derived from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lp::maximize_packing;
use crate::numeric::{int, Rational};
use crate::stable_sets::{
    full_mask, max_stable_set_within, maximal_stable_sets, DEFAULT_SEARCH_BUDGET,
};

pub const DEFAULT_CHROMATIC_MAX_N: usize = 24;
pub const DEFAULT_MAXIMAL_SETS_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperColoring {
    colors: Vec<usize>,
    k: usize,
}

impl ProperColoring {
    /// Validates properness and that colors are exactly `0..k`, all used.
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "{} colors for {} vertices",
                colors.len(),
                g.n()
            )));
        }
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| colors[u] == colors[v]) {
            return Err(Error::Verification(format!(
                "edge {u}-{v} is monochromatic"
            )));
        }
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut used = vec![false; k];
        for &c in &colors {
            used[c] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(Error::Verification("some color class is empty".into()));
        }
        Ok(ProperColoring { colors, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
            .into_iter()
            .map(VertexSet::from_iter_unchecked)
            .collect()
    }
}

/// First-fit coloring along the reverse of the degeneracy order, so every
/// vertex sees at most `degeneracy` colored neighbors.
pub fn greedy_coloring(g: &Graph) -> ProperColoring {
    let (order, _) = g.degeneracy_order();
    let mut colors = vec![usize::MAX; g.n()];
    for &v in order.iter().rev() {
        let mut taken: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&u| colors[u])
            .filter(|&c| c != usize::MAX)
            .collect();
        taken.sort_unstable();
        taken.dedup();
        let c = taken
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(taken.len(), |(i, _)| i);
        colors[v] = c;
    }
    ProperColoring::new(g, colors).expect("first-fit coloring is proper")
}

/// Minimum number of colors with a witness, by branch and bound: vertices in
/// highest-degree-first order, clique lower bound, greedy upper bound.
pub fn chromatic_number_exact(g: &Graph) -> Result<(usize, ProperColoring)> {
    chromatic_number_with_budget(g, DEFAULT_CHROMATIC_MAX_N, DEFAULT_SEARCH_BUDGET)
}

pub fn chromatic_number_with_budget(
    g: &Graph,
    max_n: usize,
    node_budget: u64,
) -> Result<(usize, ProperColoring)> {
    if g.n() > max_n {
        return Err(Error::BudgetExceeded(format!(
            "chromatic number limited to {max_n} vertices, got {}",
            g.n()
        )));
    }
    let greedy = greedy_coloring(g);
    if g.n() == 0 {
        return Ok((0, greedy));
    }
    let lower = max_clique_size(g)?;
    if lower == greedy.k() {
        return Ok((lower, greedy));
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut nodes = 0u64;
    for k in lower..greedy.k() {
        let mut colors = vec![usize::MAX; g.n()];
        if color_with(g, &order, 0, k, 0, &mut colors, &mut nodes, node_budget)? {
            let c = ProperColoring::new(g, colors)?;
            return Ok((k, c));
        }
    }
    Ok((greedy.k(), greedy))
}

#[allow(clippy::too_many_arguments)]
fn color_with(
    g: &Graph,
    order: &[usize],
    idx: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded(format!(
            "chromatic search exceeded {budget} nodes"
        )));
    }
    if idx == order.len() {
        return Ok(true);
    }
    let v = order[idx];
    // New colors only in increasing order: color `used` is the first fresh one.
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if color_with(g, order, idx + 1, k, used.max(c + 1), colors, nodes, budget)? {
                return Ok(true);
            }
            colors[v] = usize::MAX;
        }
    }
    Ok(false)
}

/// Clique number via a maximum stable set of the complement.
pub fn max_clique_size(g: &Graph) -> Result<usize> {
    let comp = complement(g)?;
    Ok(max_stable_set_within(&comp, full_mask(g.n()), DEFAULT_SEARCH_BUDGET)?.len())
}

fn complement(g: &Graph) -> Result<Graph> {
    let adj = g.masks("complement")?;
    let n = g.n();
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Ok(Graph::from_pairs_lossy(
        n,
        pairs
            .filter(|&(u, v)| adj[u] >> v & 1 == 0)
            .collect::<Vec<_>>(),
    ))
}

/// Optimal solution of the stable-set covering LP together with an optimal
/// fractional clique certifying it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub support: Vec<VertexSet>,
    #[serde(with = "crate::numeric::rational_vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "crate::numeric::rational_str")]
    pub value: Rational,
    /// Vertex weights `y` with `sum_{v in S} y_v <= 1` for every stable set
    /// and `sum y = value`.
    #[serde(with = "crate::numeric::rational_vec")]
    pub clique_weights: Vec<Rational>,
}

impl FractionalColoring {
    /// Checks the covering solution, the packing certificate, and equality of
    /// their values, all exactly.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |m: &str| Err(Error::Verification(m.to_string()));
        if self.support.len() != self.weights.len() {
            return fail("support and weights differ in length");
        }
        if self.support.iter().any(|s| !g.is_stable(s)) {
            return fail("support set not stable");
        }
        if self.weights.iter().any(|w| !w.is_positive()) {
            return fail("nonpositive weight");
        }
        let total: Rational = self.weights.iter().sum();
        if total != self.value {
            return fail("value differs from weight sum");
        }
        for v in 0..g.n() {
            let cover: Rational = self
                .support
                .iter()
                .zip(&self.weights)
                .filter(|(s, _)| s.contains(v))
                .map(|(_, w)| w)
                .sum();
            if cover < Rational::one() {
                return fail("vertex covered with weight below 1");
            }
        }
        if self.clique_weights.len() != g.n() || self.clique_weights.iter().any(Signed::is_negative)
        {
            return fail("bad clique weights");
        }
        let y_total: Rational = self.clique_weights.iter().sum();
        if y_total != self.value {
            return fail("dual value differs");
        }
        // Dual feasibility over maximal stable sets implies it over all.
        for s in maximal_stable_sets(g, DEFAULT_MAXIMAL_SETS_BUDGET)? {
            let load: Rational = s.iter().map(|v| &self.clique_weights[v]).sum();
            if load > Rational::one() {
                return fail("clique weights overload a stable set");
            }
        }
        Ok(())
    }
}

/// Exact fractional chromatic number over the maximal stable sets, solved as
/// the dual packing LP in rational arithmetic.
pub fn fractional_chromatic_exact(g: &Graph) -> Result<FractionalColoring> {
    fractional_chromatic_with_budget(g, DEFAULT_MAXIMAL_SETS_BUDGET)
}

pub fn fractional_chromatic_with_budget(g: &Graph, budget: usize) -> Result<FractionalColoring> {
    let sets = maximal_stable_sets(g, budget)?;
    if g.n() == 0 {
        return Ok(FractionalColoring {
            support: vec![],
            weights: vec![],
            value: int(0),
            clique_weights: vec![],
        });
    }
    let a: Vec<Vec<Rational>> = sets
        .iter()
        .map(|s| {
            (0..g.n())
                .map(|v| {
                    if s.contains(v) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let ones = vec![Rational::one(); sets.len()];
    let c = vec![Rational::one(); g.n()];
    let sol = maximize_packing(&a, &ones, &c)?;
    let (support, weights): (Vec<VertexSet>, Vec<Rational>) = sets
        .into_iter()
        .zip(sol.dual)
        .filter(|(_, w)| w.is_positive())
        .unzip();
    let f = FractionalColoring {
        support,
        weights,
        value: sol.value,
        clique_weights: sol.primal,
    };
    f.verify(g)
        .map_err(|e| Error::Internal(format!("LP certificate failed: {e}")))?;
    Ok(f)
}

/// Explicit finite distribution over stable sets with cached marginals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StableSetDistribution {
    support: Vec<VertexSet>,
    #[serde(with = "crate::numeric::rational_vec")]
    probabilities: Vec<Rational>,
    #[serde(with = "crate::numeric::rational_vec")]
    marginals: Vec<Rational>,
}

impl StableSetDistribution {
    /// Merges repeated sets, drops zero weights, and checks stability and
    /// that the probabilities sum to exactly one.
    pub fn new(
        g: &Graph,
        weighted: impl IntoIterator<Item = (VertexSet, Rational)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<VertexSet, Rational> = BTreeMap::new();
        for (s, p) in weighted {
            g.check_set(&s)?;
            if p.is_negative() {
                return Err(Error::Verification("negative probability".into()));
            }
            *merged.entry(s).or_insert_with(Rational::zero) += p;
        }
        merged.retain(|_, p| !p.is_zero());
        if merged.keys().any(|s| !g.is_stable(s)) {
            return Err(Error::NotStable);
        }
        let total: Rational = merged.values().sum();
        if total != Rational::one() {
            return Err(Error::Verification(format!("probabilities sum to {total}")));
        }
        let mut marginals = vec![Rational::zero(); g.n()];
        for (s, p) in &merged {
            for v in s.iter() {
                marginals[v] += p;
            }
        }
        let (support, probabilities) = merged.into_iter().unzip();
        Ok(StableSetDistribution {
            support,
            probabilities,
            marginals,
        })
    }

    pub fn support(&self) -> &[VertexSet] {
        &self.support
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    /// `Pr(v ∈ S)` for every vertex.
    pub fn marginals(&self) -> &[Rational] {
        &self.marginals
    }

    /// Property `Q*_r`: every marginal is at least `r`.
    pub fn satisfies_q_star(&self, r: &Rational) -> bool {
        self.marginals.iter().all(|m| m >= r)
    }

    pub fn uniform_marginal(&self) -> Option<&Rational> {
        let first = self.marginals.first()?;
        self.marginals.iter().all(|m| m == first).then_some(first)
    }
}

/// A uniformly random color class.
pub fn coloring_to_distribution(g: &Graph, c: &ProperColoring) -> Result<StableSetDistribution> {
    if c.k() == 0 {
        return StableSetDistribution::new(g, [(VertexSet::empty(), Rational::one())]);
    }
    let p = Rational::new(BigInt::one(), BigInt::from(c.k()));
    StableSetDistribution::new(g, c.classes().into_iter().map(|s| (s, p.clone())))
}

/// `p_S = x_S / k`, then every marginal above `1/k` is flattened by splitting
/// each support set `S ∋ v` into `S` and `S \ {v}` with exact weights, keeping
/// `v` with probability `(1/k) / m_v`.
pub fn fractional_to_distribution(
    g: &Graph,
    f: &FractionalColoring,
) -> Result<StableSetDistribution> {
    if f.value.is_zero() {
        return StableSetDistribution::new(g, [(VertexSet::empty(), Rational::one())]);
    }
    let target = Rational::one() / &f.value;
    let mut weighted: BTreeMap<VertexSet, Rational> = BTreeMap::new();
    for (s, w) in f.support.iter().zip(&f.weights) {
        *weighted.entry(s.clone()).or_insert_with(Rational::zero) += w / &f.value;
    }
    for v in 0..g.n() {
        let m: Rational = weighted
            .iter()
            .filter(|(s, _)| s.contains(v))
            .map(|(_, p)| p)
            .sum();
        if m <= target {
            continue;
        }
        let keep = &target / &m;
        let drop = Rational::one() - &keep;
        let mut next: BTreeMap<VertexSet, Rational> = BTreeMap::new();
        for (s, p) in weighted {
            if s.contains(v) {
                let without = s.difference(&VertexSet::from_iter_unchecked([v]));
                *next.entry(without).or_insert_with(Rational::zero) += &p * &drop;
                *next.entry(s).or_insert_with(Rational::zero) += p * &keep;
            } else {
                *next.entry(s).or_insert_with(Rational::zero) += p;
            }
        }
        weighted = next;
    }
    StableSetDistribution::new(g, weighted)
}
