//! List colorings under maximum separation, the exact separation
//! choosability decider, and the labeling reduction to adapted colorings.
//!
//! Any k-list-assignment on n vertices renames to one over colors `0..k*n`,
//! since at most `k*n` distinct colors occur. The decider goes further and
//! introduces colors in first-use order: each list is a subset of the colors
//! already in use plus the smallest fresh ids. Every assignment is
//! color-isomorphic to one produced this way, and colorability is invariant
//! under renaming, so the enumeration is complete.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bipartiteness, Graph};
use crate::rng::chacha;

pub const DEFAULT_DECIDE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<usize>>,
    k: usize,
}

impl ListAssignment {
    /// Lists are sorted on construction; each must hold exactly `k` distinct colors.
    pub fn new(lists: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(lists.len());
        for (v, mut l) in lists.into_iter().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "list of vertex {v} has {} distinct colors, expected {k}",
                    l.len()
                )));
            }
            out.push(l);
        }
        Ok(ListAssignment { lists: out, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.lists.len() < g.n() {
            return Err(Error::MissingList(self.lists.len()));
        }
        Ok(())
    }

    /// `{vertex: [colors]}`, keyed in vertex order.
    pub fn to_map(&self) -> BTreeMap<usize, Vec<usize>> {
        self.lists.iter().cloned().enumerate().collect()
    }
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|c| b.binary_search(c).is_ok()).count()
}

pub fn has_max_separation(g: &Graph, l: &ListAssignment) -> Result<bool> {
    l.check_covers(g)?;
    Ok(g.edges()
        .iter()
        .all(|&(u, v)| shared(l.list(u), l.list(v)) <= 1))
}

/// One label per edge of the host graph, aligned with `Graph::edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabeling {
    labels: Vec<usize>,
}

impl EdgeLabeling {
    pub fn new(g: &Graph, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != g.m() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} edges",
                labels.len(),
                g.m()
            )));
        }
        Ok(EdgeLabeling { labels })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

/// Shared color of each edge, or a sentinel outside every list when the
/// endpoint lists are disjoint.
pub fn labeling_from_lists(g: &Graph, l: &ListAssignment) -> Result<EdgeLabeling> {
    l.check_covers(g)?;
    let sentinel = l.lists[..g.n()].iter().flatten().max().map_or(0, |c| c + 1);
    let mut labels = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let common: Vec<usize> = l
            .list(u)
            .iter()
            .copied()
            .filter(|c| l.list(v).binary_search(c).is_ok())
            .collect();
        match common.as_slice() {
            [] => labels.push(sentinel),
            [c] => labels.push(*c),
            _ => return Err(Error::SeparationViolated(u, v)),
        }
    }
    Ok(EdgeLabeling { labels })
}

/// Backtracking over list colorings in order of decreasing degree.
/// `clash(edge, cu, cv)` rejects a pair of endpoint colors.
fn for_each_list_coloring<F, C>(g: &Graph, l: &ListAssignment, clash: C, mut f: F)
where
    C: Fn(usize, usize, usize) -> bool,
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // Edges to earlier vertices in the order: (neighbor, edge index, v is the lower endpoint).
    let mut back: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if pos[u] < pos[v] {
            back[v].push((u, e, false));
        } else {
            back[u].push((v, e, true));
        }
    }
    let mut colors = vec![usize::MAX; n];
    fn rec<F: FnMut(&[usize]) -> ControlFlow<()>, C: Fn(usize, usize, usize) -> bool>(
        i: usize,
        order: &[usize],
        back: &[Vec<(usize, usize, bool)>],
        l: &ListAssignment,
        colors: &mut Vec<usize>,
        clash: &C,
        f: &mut F,
    ) -> ControlFlow<()> {
        if i == order.len() {
            return f(colors);
        }
        let v = order[i];
        for &c in l.list(v) {
            let ok = back[v].iter().all(|&(u, e, v_low)| {
                let (lo, hi) = if v_low {
                    (c, colors[u])
                } else {
                    (colors[u], c)
                };
                !clash(e, lo, hi)
            });
            if ok {
                colors[v] = c;
                rec(i + 1, order, back, l, colors, clash, f)?;
            }
        }
        colors[v] = usize::MAX;
        ControlFlow::Continue(())
    }
    let _ = rec(0, &order, &back, l, &mut colors, &clash, &mut f);
}

/// A proper coloring with `c(v) ∈ L(v)`, if one exists.
pub fn is_l_colorable(g: &Graph, l: &ListAssignment) -> Result<Option<Vec<usize>>> {
    l.check_covers(g)?;
    let mut found = None;
    for_each_list_coloring(
        g,
        l,
        |_, a, b| a == b,
        |c| {
            found = Some(c.to_vec());
            ControlFlow::Break(())
        },
    );
    Ok(found)
}

/// An L-coloring such that no edge has both endpoints colored with its label.
pub fn is_adapted_colorable(
    g: &Graph,
    l: &ListAssignment,
    ell: &EdgeLabeling,
) -> Result<Option<Vec<usize>>> {
    Ok(adapted_colorings(g, l, ell, 1)?.pop())
}

/// Up to `limit` adapted L-colorings, in search order.
pub fn adapted_colorings(
    g: &Graph,
    l: &ListAssignment,
    ell: &EdgeLabeling,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    l.check_covers(g)?;
    if ell.labels.len() != g.m() {
        return Err(Error::InvalidParameter(
            "labeling does not match the graph".into(),
        ));
    }
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_list_coloring(
        g,
        l,
        |e, a, b| a == b && a == ell.labels[e],
        |c| {
            out.push(c.to_vec());
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    Ok(out)
}

/// Result of [`for_each_canonical_assignment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Completed(u64),
    Stopped(u64),
    BudgetExhausted(u64),
}

/// Visits every canonical maximum-separation k-list-assignment of `g`.
/// `budget` bounds the number of complete assignments visited.
pub fn for_each_canonical_assignment<F>(g: &Graph, k: usize, budget: u64, mut f: F) -> Enumeration
where
    F: FnMut(&[Vec<usize>]) -> ControlFlow<()>,
{
    let n = g.n();
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().filter(|&u| u < v).collect())
        .collect();
    let mut st = Canon {
        k,
        earlier: &earlier,
        lists: Vec::with_capacity(n),
        visited: 0,
        budget,
        exhausted: false,
    };
    let flow = st.vertex(0, &mut f);
    if st.exhausted {
        Enumeration::BudgetExhausted(st.visited)
    } else if flow.is_break() {
        Enumeration::Stopped(st.visited)
    } else {
        Enumeration::Completed(st.visited)
    }
}

struct Canon<'a> {
    k: usize,
    earlier: &'a [Vec<usize>],
    lists: Vec<Vec<usize>>,
    visited: u64,
    budget: u64,
    exhausted: bool,
}

impl Canon<'_> {
    fn vertex<F: FnMut(&[Vec<usize>]) -> ControlFlow<()>>(
        &mut self,
        v: usize,
        f: &mut F,
    ) -> ControlFlow<()> {
        if v == self.earlier.len() {
            if self.visited >= self.budget {
                self.exhausted = true;
                return ControlFlow::Break(());
            }
            self.visited += 1;
            return f(&self.lists);
        }
        let used = self.lists.iter().flatten().max().map_or(0, |c| c + 1);
        for size in 0..=self.k.min(used) {
            let mut chosen = Vec::with_capacity(self.k);
            self.subsets(v, used, size, 0, &mut chosen, f)?;
        }
        ControlFlow::Continue(())
    }

    fn subsets<F: FnMut(&[Vec<usize>]) -> ControlFlow<()>>(
        &mut self,
        v: usize,
        used: usize,
        size: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        f: &mut F,
    ) -> ControlFlow<()> {
        if chosen.len() == size {
            let mut list = chosen.clone();
            list.extend(used..used + self.k - size);
            self.lists.push(list);
            let flow = self.vertex(v + 1, f);
            self.lists.pop();
            return flow;
        }
        for c in from..used {
            if used - c < size - chosen.len() {
                break;
            }
            chosen.push(c);
            let separated = self.earlier[v]
                .iter()
                .all(|&u| shared(chosen, &self.lists[u]) <= 1);
            if separated {
                self.subsets(v, used, size, c + 1, chosen, f)?;
            }
            chosen.pop();
        }
        ControlFlow::Continue(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Choosable { assignments: u64 },
    NotChoosable { witness: ListAssignment },
    Unknown { explored: u64 },
}

pub fn decide_sep_choosable(g: &Graph, k: usize) -> Result<Outcome> {
    decide_sep_choosable_with_budget(g, k, DEFAULT_DECIDE_BUDGET)
}

/// Exhausts canonical assignments; the first non-colorable one is returned.
pub fn decide_sep_choosable_with_budget(g: &Graph, k: usize, budget: u64) -> Result<Outcome> {
    let mut witness = None;
    let status = for_each_canonical_assignment(g, k, budget, |lists| {
        let l = ListAssignment {
            lists: lists.to_vec(),
            k,
        };
        match is_l_colorable(g, &l) {
            Ok(Some(_)) => ControlFlow::Continue(()),
            _ => {
                witness = Some(l);
                ControlFlow::Break(())
            }
        }
    });
    match (status, witness) {
        (Enumeration::Stopped(_), Some(w)) => {
            if !has_max_separation(g, &w)? || is_l_colorable(g, &w)?.is_some() {
                return Err(Error::Internal(
                    "bad assignment failed re-verification".into(),
                ));
            }
            Ok(Outcome::NotChoosable { witness: w })
        }
        (Enumeration::Completed(count), None) => Ok(Outcome::Choosable { assignments: count }),
        (Enumeration::BudgetExhausted(explored), _) => Ok(Outcome::Unknown { explored }),
        _ => Err(Error::Internal("inconsistent enumeration state".into())),
    }
}

/// Randomized search: random lists on one side of a bipartition (or of a
/// random maximal stable set), adversarial lists on the rest built from
/// neighbors' colors. Returns only re-verified bad assignments.
pub fn search_bad_assignment(
    g: &Graph,
    k: usize,
    trials: usize,
    seed: u64,
) -> Option<ListAssignment> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let mut rng = chacha(seed);
    let universe = (2 * k).max(1);
    let bipartite_side = match g.is_bipartite() {
        Bipartiteness::Bipartite(side) => Some(side),
        Bipartiteness::OddCycle(_) => None,
    };
    for _ in 0..trials {
        let random_side: Vec<bool> = match &bipartite_side {
            Some(side) => side.iter().map(|&s| s == 0).collect(),
            None => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                let mut inside = vec![false; n];
                for v in order {
                    if g.neighbors(v).iter().all(|&u| !inside[u]) {
                        inside[v] = true;
                    }
                }
                inside
            }
        };
        let mut lists: Vec<Option<Vec<usize>>> = vec![None; n];
        for v in (0..n).filter(|&v| random_side[v]) {
            let mut l = index::sample(&mut rng, universe, k.min(universe)).into_vec();
            l.sort_unstable();
            lists[v] = Some(l);
        }
        let mut fresh = universe;
        for v in (0..n).filter(|&v| !random_side[v]) {
            let mut nbrs: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| lists[u].is_some())
                .collect();
            nbrs.shuffle(&mut rng);
            let mut l: Vec<usize> = Vec::with_capacity(k);
            for &u in &nbrs {
                if l.len() == k {
                    break;
                }
                let from = lists[u].as_ref().expect("listed neighbor");
                let candidates: Vec<usize> =
                    from.iter().copied().filter(|c| !l.contains(c)).collect();
                if candidates.is_empty() {
                    continue;
                }
                let c = candidates[rng.gen_range(0..candidates.len())];
                l.push(c);
                l.sort_unstable();
                let separated = nbrs
                    .iter()
                    .all(|&w| shared(&l, lists[w].as_ref().expect("listed neighbor")) <= 1);
                if !separated {
                    l.retain(|&x| x != c);
                }
            }
            while l.len() < k {
                l.push(fresh);
                fresh += 1;
            }
            l.sort_unstable();
            lists[v] = Some(l);
        }
        let Ok(assignment) = ListAssignment::new(
            lists
                .into_iter()
                .map(|l| l.expect("every vertex listed"))
                .collect(),
            k,
        ) else {
            continue;
        };
        if has_max_separation(g, &assignment) == Ok(true)
            && is_l_colorable(g, &assignment) == Ok(None)
        {
            return Some(assignment);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    fn la(lists: &[&[usize]]) -> ListAssignment {
        let k = lists.first().map_or(0, |l| l.len());
        ListAssignment::new(lists.iter().map(|l| l.to_vec()).collect(), k).unwrap()
    }

    #[test]
    fn separation_examples() {
        let e = complete(2);
        assert!(has_max_separation(&e, &la(&[&[1, 2], &[3, 4]])).unwrap());
        assert!(!has_max_separation(&e, &la(&[&[1, 2], &[1, 2]])).unwrap());
        assert!(has_max_separation(&complete(4), &la(&[&[1], &[1], &[1], &[1]])).unwrap());
        assert_eq!(
            has_max_separation(&e, &la(&[&[1]])),
            Err(Error::MissingList(1))
        );
        assert!(ListAssignment::new(vec![vec![1, 1]], 2).is_err());
    }

    #[test]
    fn list_coloring_examples() {
        let k3 = complete(3);
        let c = is_l_colorable(&k3, &la(&[&[1, 2], &[1, 3], &[2, 3]]))
            .unwrap()
            .unwrap();
        assert!(c[0] != c[1] && c[1] != c[2] && c[0] != c[2]);
        assert!(is_l_colorable(&complete(2), &la(&[&[1], &[1]]))
            .unwrap()
            .is_none());
        let c5 = cycle(5).unwrap();
        let disjoint: Vec<Vec<usize>> = (0..5).map(|v| vec![2 * v, 2 * v + 1]).collect();
        assert!(
            is_l_colorable(&c5, &ListAssignment::new(disjoint, 2).unwrap())
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn labeling_examples() {
        let e = complete(2);
        assert_eq!(
            labeling_from_lists(&e, &la(&[&[1, 2], &[2, 3]]))
                .unwrap()
                .labels(),
            &[2]
        );
        assert_eq!(
            labeling_from_lists(&e, &la(&[&[1, 2], &[3, 4]]))
                .unwrap()
                .labels(),
            &[5]
        );
        assert_eq!(
            labeling_from_lists(&path(3), &la(&[&[1, 2], &[2, 3], &[3, 4]]))
                .unwrap()
                .labels(),
            &[2, 3]
        );
        assert_eq!(
            labeling_from_lists(&e, &la(&[&[1, 2], &[1, 2]])),
            Err(Error::SeparationViolated(0, 1))
        );
    }

    #[test]
    fn adapted_examples() {
        let e = complete(2);
        let l = la(&[&[1], &[1]]);
        assert!(
            is_adapted_colorable(&e, &l, &EdgeLabeling::new(&e, vec![1]).unwrap())
                .unwrap()
                .is_none()
        );
        assert_eq!(
            is_adapted_colorable(&e, &l, &EdgeLabeling::new(&e, vec![2]).unwrap()).unwrap(),
            Some(vec![1, 1])
        );
        let k3 = complete(3);
        let l = la(&[&[1, 2], &[1, 3], &[2, 3]]);
        let ell = EdgeLabeling::new(&k3, vec![0, 0, 0]).unwrap();
        assert!(is_adapted_colorable(&k3, &l, &ell).unwrap().is_some());
        assert_eq!(adapted_colorings(&k3, &l, &ell, 100).unwrap().len(), 8);
    }

    #[test]
    fn decider_ground_truths() {
        let c4 = cycle(4).unwrap();
        let k3 = complete(3);
        for g in [&c4, &k3] {
            match decide_sep_choosable(g, 1).unwrap() {
                Outcome::NotChoosable { witness } => {
                    assert!(has_max_separation(g, &witness).unwrap());
                    assert!(is_l_colorable(g, &witness).unwrap().is_none());
                }
                other => panic!("expected a witness, got {other:?}"),
            }
            assert!(matches!(
                decide_sep_choosable(g, 2).unwrap(),
                Outcome::Choosable { .. }
            ));
        }
        assert!(matches!(
            decide_sep_choosable_with_budget(&k3, 2, 1).unwrap(),
            Outcome::Unknown { .. }
        ));
    }

    #[test]
    fn canonical_lists_use_first_use_order() {
        let g = path(3);
        let mut seen = 0;
        for_each_canonical_assignment(&g, 2, u64::MAX, |lists| {
            seen += 1;
            let mut next = 0;
            for l in lists {
                for &c in l {
                    assert!(c <= next);
                    next = next.max(c + 1);
                }
            }
            ControlFlow::Continue(())
        });
        assert!(seen > 1);
    }

    #[test]
    fn search_examples() {
        let c4 = cycle(4).unwrap();
        let w = search_bad_assignment(&c4, 1, 10, 7).unwrap();
        assert!(has_max_separation(&c4, &w).unwrap());
        assert!(is_l_colorable(&c4, &w).unwrap().is_none());
        assert!(search_bad_assignment(&c4, 2, 2000, 7).is_none());
        assert!(search_bad_assignment(&complete(3), 1, 10, 1).is_some());
    }
}
