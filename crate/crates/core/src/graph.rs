//! Simple undirected graphs on dense integer vertex ids.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{int, Rational};

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: Vec<usize>, n: usize) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonCanonicalSet);
        }
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Ok(VertexSet(members))
    }

    /// Sorts and dedups; no range check.
    pub fn from_iter_unchecked<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut v: Vec<usize> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Bit mask; callers guarantee ids < 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | 1 << v)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| !other.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        )
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unchecked(self.iter().chain(other.iter()))
    }

    pub fn map(&self, relabel: &[usize]) -> VertexSet {
        VertexSet::from_iter_unchecked(self.iter().map(|v| relabel[v]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Result of a bipartiteness test, each variant carrying its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Side (0 or 1) of every vertex.
    Bipartite(Vec<u8>),
    /// Vertices of an odd cycle in cyclic order.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite(_))
    }
}

impl Graph {
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edge_list {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        Ok(Self::from_canonical(n, seen.into_iter().collect()))
    }

    /// Builds from pairs already known to be valid; duplicates are merged.
    pub(crate) fn from_pairs_lossy(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        let mut edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical(n, edges)
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `2m/n`, and 0 for the null graph.
    pub fn average_degree(&self) -> Rational {
        if self.n == 0 {
            return int(0);
        }
        Rational::new((2 * self.m()).into(), self.n.into())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|v| self.check_vertex(v))
    }

    /// Neighborhood bit masks, for the exact small-graph routines.
    pub fn masks(&self, op: &'static str) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::TooLarge {
                op,
                n: self.n,
                limit: 64,
            });
        }
        Ok(self
            .adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &u| m | 1 << u))
            .collect())
    }

    pub fn is_stable(&self, s: &VertexSet) -> bool {
        s.iter()
            .all(|v| self.adj[v].iter().all(|&u| !s.contains(u)))
    }

    /// Number of edges with both ends in `a`.
    pub fn edges_within(&self, a: &VertexSet) -> usize {
        a.iter()
            .map(|v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| u > v && a.contains(u))
                    .count()
            })
            .sum()
    }

    /// Number of edges with one end in `a` and the other in `b`; `a`, `b` disjoint.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter()
            .map(|v| self.adj[v].iter().filter(|&&u| b.contains(u)).count())
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Repeated removal of a minimum-degree vertex (lowest id on ties).
    /// Returns the removal order and the largest degree seen at removal.
    pub fn degeneracy_order(&self) -> (Vec<usize>, usize) {
        let mut deg = self.degrees();
        let mut queue: BTreeSet<(usize, usize)> = (0..self.n).map(|v| (deg[v], v)).collect();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut degeneracy = 0;
        while let Some((d, v)) = queue.pop_first() {
            degeneracy = degeneracy.max(d);
            removed[v] = true;
            order.push(v);
            for &u in &self.adj[v] {
                if !removed[u] {
                    queue.remove(&(deg[u], u));
                    deg[u] -= 1;
                    queue.insert((deg[u], u));
                }
            }
        }
        (order, degeneracy)
    }

    /// Shortest cycle of length strictly below `limit`, if any, as a vertex
    /// list in cyclic order. Among shortest cycles, the first one found from
    /// the lowest BFS root is returned.
    pub fn short_cycle(&self, limit: usize) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut touched = Vec::new();
        for root in 0..self.n {
            let bound = best.as_ref().map_or(limit, Vec::len);
            if bound <= 3 {
                break;
            }
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(v) = queue.pop_front() {
                let bound = best.as_ref().map_or(limit, Vec::len);
                // A cycle closed from depth dist[v] has length >= 2*dist[v]+1.
                if 2 * dist[v] + 1 >= bound {
                    break;
                }
                for &u in &self.adj[v] {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        touched.push(u);
                        queue.push_back(u);
                    } else if parent[v] != u && dist[u] + dist[v] + 1 < bound {
                        // The globally shortest closed walk of this form is a
                        // simple cycle; longer non-simple walks get replaced.
                        let mut cycle = tree_path(&parent, v);
                        cycle.reverse();
                        let mut back = tree_path(&parent, u);
                        back.pop();
                        cycle.extend(back);
                        best = Some(cycle);
                        continue 'bfs;
                    }
                }
            }
        }
        best
    }

    /// Length of the shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        self.short_cycle(usize::MAX).map(|c| c.len())
    }

    /// All triangles `(a, b, c)` with `a < b < c`, ascending.
    pub fn list_triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in self.adj[a].iter().filter(|&&b| b > a) {
                for &c in self.adj[b].iter().filter(|&&c| c > b) {
                    if self.has_edge(a, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Lexicographically first clique on `r` vertices, as ascending ids.
    pub fn first_clique(&self, r: usize) -> Option<Vec<usize>> {
        if r == 0 {
            return Some(Vec::new());
        }
        let mut stack = Vec::with_capacity(r);
        for v in 0..self.n {
            stack.push(v);
            let cands: Vec<usize> = self.adj[v].iter().copied().filter(|&u| u > v).collect();
            if self.extend_clique(&mut stack, &cands, r) {
                return Some(stack);
            }
            stack.pop();
        }
        None
    }

    fn extend_clique(&self, stack: &mut Vec<usize>, cands: &[usize], r: usize) -> bool {
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
            if self.extend_clique(stack, &next, r) {
                return true;
            }
            stack.pop();
        }
        false
    }

    pub fn has_clique(&self, r: usize) -> bool {
        self.first_clique(r).is_some()
    }

    /// Induced subgraph on `s`, with `map[new] = old`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let mut index = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect::<Vec<_>>();
        Ok((
            Graph::from_pairs_lossy(s.len(), edges),
            s.members().to_vec(),
        ))
    }

    pub fn is_bipartite(&self) -> Bipartiteness {
        let mut side = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        parent[u] = v;
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return Bipartiteness::OddCycle(odd_cycle(&parent, v, u));
                    }
                }
            }
        }
        Bipartiteness::Bipartite(side)
    }

    /// Repeatedly deletes the lowest-id vertex among those of minimum current
    /// degree while that degree is below `threshold`.
    pub fn peel_to_min_degree(&self, threshold: &Rational) -> VertexSet {
        self.peel_within(&VertexSet((0..self.n).collect()), threshold)
    }

    /// Peeling restricted to the subgraph induced by `within`.
    pub fn peel_within(&self, within: &VertexSet, threshold: &Rational) -> VertexSet {
        let mut alive = vec![false; self.n];
        for v in within.iter() {
            alive[v] = true;
        }
        let mut deg = vec![0usize; self.n];
        for v in within.iter() {
            deg[v] = self.adj[v].iter().filter(|&&u| alive[u]).count();
        }
        let mut queue: BTreeSet<(usize, usize)> = within.iter().map(|v| (deg[v], v)).collect();
        while let Some(&(d, v)) = queue.first() {
            if int(d as i64) >= *threshold {
                break;
            }
            queue.pop_first();
            alive[v] = false;
            for &u in &self.adj[v] {
                if alive[u] {
                    queue.remove(&(deg[u], u));
                    deg[u] -= 1;
                    queue.insert((deg[u], u));
                }
            }
        }
        VertexSet(within.iter().filter(|&v| alive[v]).collect())
    }

    /// Edge-list text: `n m` then one `u v` line per edge, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let nums = parse_pair(header, 1)?;
        let (n, m) = nums;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines {
            edges.push(parse_pair(line, i + 1)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::build(n, &edges)
    }
}

/// Path from `x` up to the BFS root.
fn tree_path(parent: &[usize], mut x: usize) -> Vec<usize> {
    let mut p = vec![x];
    while parent[x] != usize::MAX {
        x = parent[x];
        p.push(x);
    }
    p
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!(
            "line {lineno}: expected two integers, got {line:?}"
        ))),
    }
}

fn odd_cycle(parent: &[usize], v: usize, u: usize) -> Vec<usize> {
    let pv = tree_path(parent, v);
    let pu = tree_path(parent, u);
    // Strip the common ancestor tail, keep the lowest common ancestor once.
    let mut i = pv.len();
    let mut j = pu.len();
    while i > 1 && j > 1 && pv[i - 2] == pu[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pv[..i].to_vec();
    cycle.extend(pu[..j - 1].iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn cycle(n: usize) -> Graph {
        Graph::build(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::build(n, &e).unwrap()
    }

    fn k33() -> Graph {
        let mut e = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                e.push((u, v));
            }
        }
        Graph::build(6, &e).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_iter_unchecked(v.iter().copied())
    }

    #[test]
    fn build_basic_shapes() {
        let g = Graph::build(0, &[]).unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
        let c5 = cycle(5);
        assert!(c5.degrees().iter().all(|&d| d == 2));
        let k4 = complete(4);
        assert_eq!(k4.average_degree(), int(3));
        assert_eq!(k4.degrees().iter().sum::<usize>(), 2 * k4.m());
    }

    #[test]
    fn build_errors_are_distinct() {
        assert_eq!(
            Graph::build(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::build(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::build(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(cycle(5).degeneracy_order().1, 2);
        let tree = Graph::build(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(tree.degeneracy_order().1, 1);
        let (order, d) = complete(4).degeneracy_order();
        assert_eq!(d, 3);
        assert_eq!(order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(cycle(7).girth(), Some(7));
        let tree = Graph::build(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.girth(), None);
        let c = cycle(6).short_cycle(usize::MAX).unwrap();
        assert_eq!(c.len(), 6);
        for i in 0..6 {
            assert!(cycle(6).has_edge(c[i], c[(i + 1) % 6]));
        }
        assert_eq!(cycle(6).short_cycle(6), None);
    }

    #[test]
    fn triangle_examples() {
        assert!(cycle(5).list_triangles().is_empty());
        assert_eq!(
            complete(4).list_triangles(),
            vec![(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        );
        assert!(k33().list_triangles().is_empty());
    }

    #[test]
    fn induced_examples() {
        let c5 = cycle(5);
        let (h, map) = c5.induced_subgraph(&set(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(h, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
        let (p, _) = c5.induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2)]);
        let (e, _) = complete(4).induced_subgraph(&set(&[0, 1])).unwrap();
        assert_eq!(e.m(), 1);
        assert!(c5.induced_subgraph(&set(&[7])).is_err());
    }

    #[test]
    fn bipartite_examples() {
        assert!(cycle(4).is_bipartite().is_bipartite());
        assert!(k33().is_bipartite().is_bipartite());
        let c5 = cycle(5);
        match c5.is_bipartite() {
            Bipartiteness::OddCycle(c) => {
                assert_eq!(c.len() % 2, 1);
                for i in 0..c.len() {
                    assert!(c5.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("{other:?}"),
        }
        if let Bipartiteness::Bipartite(side) = k33().is_bipartite() {
            for &(u, v) in k33().edges() {
                assert_ne!(side[u], side[v]);
            }
        }
    }

    #[test]
    fn peeling_examples() {
        assert_eq!(cycle(5).peel_to_min_degree(&int(2)).len(), 5);
        let star = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(star.peel_to_min_degree(&int(2)).is_empty());
        let mut e: Vec<_> = complete(4).edges().to_vec();
        e.push((3, 4));
        let k4p = Graph::build(5, &e).unwrap();
        assert_eq!(k4p.peel_to_min_degree(&int(3)), set(&[0, 1, 2, 3]));
        // Rational threshold: 3/2 keeps vertices of degree >= 2.
        assert_eq!(k4p.peel_to_min_degree(&rat(3, 2)), set(&[0, 1, 2, 3]));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = k33();
        let text = g.to_edge_list();
        assert!(text.starts_with("6 9\n0 3\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
    }

    #[test]
    fn cliques() {
        assert_eq!(complete(5).first_clique(4), Some(vec![0, 1, 2, 3]));
        assert!(!cycle(5).has_clique(3));
        assert!(k33().has_clique(2));
    }
}
