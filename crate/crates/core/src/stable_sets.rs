//! Stable-set enumeration, uniform sampling, and exact expectations over the
//! uniform distribution on all stable sets (the empty set included).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::numeric::{int, ln_bounds, Interval, Rational};
use crate::rng::chacha;

pub const DEFAULT_ENUM_BUDGET: usize = 1 << 20;
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// Every stable set of a graph, in lexicographic order of sorted member lists.
#[derive(Clone, Debug)]
pub struct StableSetFamily {
    n: usize,
    masks: Vec<u64>,
}

impl StableSetFamily {
    pub fn count(&self) -> usize {
        self.masks.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.masks.iter().map(|&m| VertexSet::from_mask(m))
    }

    pub fn get(&self, i: usize) -> VertexSet {
        VertexSet::from_mask(self.masks[i])
    }
}

pub fn enumerate_stable_sets(g: &Graph, budget: usize) -> Result<StableSetFamily> {
    let adj = g.masks("enumerate_stable_sets")?;
    let mut masks = Vec::new();
    fn go(
        adj: &[u64],
        start: usize,
        current: u64,
        forbidden: u64,
        out: &mut Vec<u64>,
        budget: usize,
    ) -> Result<()> {
        if out.len() >= budget {
            return Err(Error::BudgetExceeded(format!(
                "more than {budget} stable sets"
            )));
        }
        out.push(current);
        for v in start..adj.len() {
            if forbidden >> v & 1 == 0 {
                go(
                    adj,
                    v + 1,
                    current | 1 << v,
                    forbidden | adj[v],
                    out,
                    budget,
                )?;
            }
        }
        Ok(())
    }
    go(&adj, 0, 0, 0, &mut masks, budget)?;
    Ok(StableSetFamily { n: g.n(), masks })
}

/// Exact uniform draw from the full family. Errors instead of degrading when
/// the family exceeds the budget.
pub fn uniform_stable_set(g: &Graph, seed: u64) -> Result<VertexSet> {
    let family = enumerate_stable_sets(g, DEFAULT_ENUM_BUDGET)?;
    let mut rng = chacha(seed);
    Ok(family.get(rng.gen_range(0..family.count())))
}

/// `E(sum_{v in S} d(v))` for `S` uniform over all stable sets.
pub fn expected_degree_sum(g: &Graph) -> Result<Rational> {
    let family = enumerate_stable_sets(g, DEFAULT_ENUM_BUDGET)?;
    Ok(expected_degree_sum_in(g, &family))
}

pub fn expected_degree_sum_in(g: &Graph, family: &StableSetFamily) -> Rational {
    let deg = g.degrees();
    let total: u64 = family
        .masks
        .iter()
        .map(|&m| {
            (0..g.n())
                .filter(|v| m >> v & 1 == 1)
                .map(|v| deg[v] as u64)
                .sum::<u64>()
        })
        .sum();
    Rational::new(BigInt::from(total), BigInt::from(family.count()))
}

/// Certified enclosure of `¼ Σ_v ln d(v)`; needs minimum degree at least 1.
pub fn quarter_log_degree_sum(g: &Graph) -> Result<Interval> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::InvalidParameter(format!("vertex {v} is isolated")));
    }
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let (lo, hi) = g
        .degrees()
        .iter()
        .fold((Rational::zero(), Rational::zero()), |(lo, hi), &d| {
            let iv = ln_bounds(d as u64);
            (lo + iv.lower, hi + iv.upper)
        });
    Ok(Interval {
        lower: &quarter * lo,
        upper: quarter * hi,
    })
}

/// `X_v = d(v) |{v} ∩ S| + |N(v) ∩ S|` for a stable set `S`.
pub fn x_statistic(g: &Graph, v: usize, s: &VertexSet) -> Result<Rational> {
    g.check_vertex(v)?;
    g.check_set(s)?;
    if !g.is_stable(s) {
        return Err(Error::NotStable);
    }
    let own = if s.contains(v) { g.degree(v) } else { 0 };
    let nb = g.neighbors(v).iter().filter(|&&u| s.contains(u)).count();
    Ok(int((own + nb) as i64))
}

/// `E(X_v)` under the uniform distribution on `family`.
pub fn expected_x(g: &Graph, family: &StableSetFamily, v: usize) -> Rational {
    let nb: u64 = g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u);
    let total: u64 = family
        .masks
        .iter()
        .map(|&m| {
            let own = if m >> v & 1 == 1 {
                g.degree(v) as u64
            } else {
                0
            };
            own + (m & nb).count_ones() as u64
        })
        .sum();
    Rational::new(BigInt::from(total), BigInt::from(family.count()))
}

/// `(d + k 2^{k-1}) / (2^k + 1)`, the conditional expectation of `X_v` given
/// the stable set outside the closed neighborhood of a degree-`d` vertex,
/// where `k` neighbors have no neighbor in that set.
pub fn conditional_expectation(d: u64, k: u64) -> Result<Rational> {
    if k > d {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds d = {d}")));
    }
    let pow = BigInt::one() << k as usize;
    // k 2^{k-1} = k 2^k / 2
    let num = Rational::from_integer(BigInt::from(d))
        + Rational::new(BigInt::from(k) * &pow, BigInt::from(2));
    Ok(num / Rational::from_integer(pow + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub d_max: u64,
    pub k_cap: u64,
    pub checked: u64,
    /// Pairs where the left side is certified below `½ ln d`.
    pub violations: Vec<(u64, u64)>,
    /// Pairs the interval bounds could not decide.
    pub undecided: Vec<(u64, u64)>,
    /// Certified lower bound on `lhs - ½ ln d` over all checked pairs.
    #[serde(with = "crate::numeric::rational_str")]
    pub min_slack: Rational,
    pub min_slack_at: (u64, u64),
}

impl AppendixReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }
}

/// Checks `(d + k 2^{k-1}) / (2^k + 1) >= ½ ln d` for `1 <= d <= d_max`,
/// `0 <= k <= min(d, k_cap)`, against certified bounds on `ln d`.
pub fn verify_appendix_inequality(d_max: u64, k_cap: u64) -> AppendixReport {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut report = AppendixReport {
        d_max,
        k_cap,
        checked: 0,
        violations: Vec::new(),
        undecided: Vec::new(),
        min_slack: Rational::zero(),
        min_slack_at: (0, 0),
    };
    let mut best: Option<Rational> = None;
    for d in 1..=d_max {
        let ln = ln_bounds(d);
        let rhs_hi = &half * &ln.upper;
        let rhs_lo = &half * &ln.lower;
        for k in 0..=d.min(k_cap) {
            let lhs = conditional_expectation(d, k).expect("k <= d");
            report.checked += 1;
            if lhs < rhs_lo {
                report.violations.push((d, k));
            } else if lhs < rhs_hi {
                report.undecided.push((d, k));
            }
            let slack = lhs - &rhs_hi;
            if best.as_ref().is_none_or(|b| slack < *b) {
                report.min_slack_at = (d, k);
                best = Some(slack);
            }
        }
    }
    report.min_slack = best.unwrap_or_else(Rational::zero);
    report
}

/// `(1 - ln x / 2x) log2(2x / ln x - 1) - ln x`, for `x > 1`.
pub fn appendix_auxiliary(x: f64) -> f64 {
    let l = x.ln();
    (1.0 - l / (2.0 * x)) * (2.0 * x / l - 1.0).log2() - l
}

/// Ternary search for the minimizer of [`appendix_auxiliary`] on `[lo, hi]`.
pub fn locate_auxiliary_minimum(mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    while hi - lo > tol {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if appendix_auxiliary(a) < appendix_auxiliary(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let x = (lo + hi) / 2.0;
    (x, appendix_auxiliary(x))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A maximum-cardinality stable set by branch and bound over bit masks.
pub fn max_stable_set(g: &Graph) -> Result<VertexSet> {
    max_stable_set_within(g, full_mask(g.n()), DEFAULT_SEARCH_BUDGET)
}

/// Maximum stable set of the subgraph induced by `allowed`.
pub fn max_stable_set_within(g: &Graph, allowed: u64, budget: u64) -> Result<VertexSet> {
    let adj = g.masks("max_stable_set")?;
    let mut search = MisSearch {
        adj: &adj,
        best: 0,
        best_size: 0,
        nodes: 0,
        budget,
    };
    search.go(allowed, 0)?;
    Ok(VertexSet::from_mask(search.best))
}

struct MisSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
    nodes: u64,
    budget: u64,
}

impl MisSearch<'_> {
    fn go(&mut self, cands: u64, current: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "max_stable_set exceeded {} nodes",
                self.budget
            )));
        }
        let size = current.count_ones();
        if cands == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = current;
            }
            return Ok(());
        }
        if size + cands.count_ones() <= self.best_size {
            return Ok(());
        }
        // Vertices of degree <= 1 in the candidate graph can always be taken.
        let mut v_pick = None;
        let mut v_max = 0;
        let mut d_max = 0;
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & cands).count_ones();
            if d <= 1 {
                v_pick = Some(v);
                break;
            }
            if d > d_max {
                d_max = d;
                v_max = v;
            }
        }
        if let Some(v) = v_pick {
            return self.go(cands & !(1 << v) & !self.adj[v], current | 1 << v);
        }
        let v = v_max;
        self.go(cands & !(1 << v) & !self.adj[v], current | 1 << v)?;
        self.go(cands & !(1 << v), current)
    }
}

/// All maximal stable sets, sorted by member list.
pub fn maximal_stable_sets(g: &Graph, budget: usize) -> Result<Vec<VertexSet>> {
    let adj = g.masks("maximal_stable_sets")?;
    let n = g.n();
    let full = full_mask(n);
    // Bron–Kerbosch with pivoting on the complement graph.
    let comp: Vec<u64> = (0..n).map(|v| full & !adj[v] & !(1 << v)).collect();
    let mut out = Vec::new();
    fn bk(
        comp: &[u64],
        r: u64,
        mut p: u64,
        mut x: u64,
        out: &mut Vec<u64>,
        budget: usize,
    ) -> Result<()> {
        if p == 0 && x == 0 {
            if out.len() >= budget {
                return Err(Error::BudgetExceeded(format!(
                    "more than {budget} maximal stable sets"
                )));
            }
            out.push(r);
            return Ok(());
        }
        let px = p | x;
        let mut pivot = px.trailing_zeros() as usize;
        let mut best = 0;
        let mut rest = px;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = (p & comp[u]).count_ones();
            if c >= best {
                best = c;
                pivot = u;
            }
        }
        let mut todo = p & !comp[pivot];
        while todo != 0 {
            let v = todo.trailing_zeros() as usize;
            todo &= todo - 1;
            bk(comp, r | 1 << v, p & comp[v], x & comp[v], out, budget)?;
            p &= !(1 << v);
            x |= 1 << v;
        }
        Ok(())
    }
    bk(&comp, 0, full, 0, &mut out, budget)?;
    let mut sets: Vec<VertexSet> = out.into_iter().map(VertexSet::from_mask).collect();
    sets.sort();
    Ok(sets)
}
