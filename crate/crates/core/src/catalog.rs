//! Isomorphism-free catalog of small graphs.
//!
//! Graphs on `n` vertices are grown from the catalog on `n - 1` vertices by
//! adding one vertex with every possible neighborhood, then deduplicated by a
//! canonical code: the minimum upper-triangle adjacency word over all vertex
//! orders that respect the color-refinement partition.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order supported; the upper triangle must fit in a `u64`.
pub const MAX_ORDER: usize = 11;

/// Bit for the pair of positions `i < j`; earlier columns are more significant
/// so a partial order fixes a prefix of the code.
fn pair_bit(i: usize, j: usize) -> u64 {
    1 << (63 - (j * (j - 1) / 2 + i))
}

fn masks(g: &Graph) -> Vec<u16> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &u| m | 1 << u))
        .collect()
}

/// Stable coloring from iterated degree refinement; colors are ranks of
/// isomorphism-invariant signatures.
fn refine(adj: &[u16]) -> Vec<usize> {
    let n = adj.len();
    let mut color: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| color[u])
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> = sigs
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let classes_before = color.iter().collect::<BTreeSet<_>>().len();
        let classes_after = ranks.len();
        color = next;
        if classes_after == classes_before {
            return color;
        }
    }
}

/// Canonical code of a graph on at most [`MAX_ORDER`] vertices.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > MAX_ORDER {
        return Err(Error::TooLarge {
            op: "canonical_code",
            n: g.n(),
            limit: MAX_ORDER,
        });
    }
    let adj = masks(g);
    let color = refine(&adj);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in color.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut order = Vec::with_capacity(g.n());
    let mut best = u64::MAX;
    search(&adj, &cells, 0, 0, &mut order, 0, &mut best);
    Ok(if g.n() < 2 { 0 } else { best })
}

fn search(
    adj: &[u16],
    cells: &[Vec<usize>],
    cell: usize,
    used: u16,
    order: &mut Vec<usize>,
    code: u64,
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).min(code);
        return;
    }
    let members = &cells[cell];
    let placed_here = members.iter().filter(|&&v| used >> v & 1 == 1).count();
    if placed_here == members.len() {
        search(adj, cells, cell + 1, used, order, code, best);
        return;
    }
    let j = order.len();
    for &v in members.iter().filter(|&&v| used >> v & 1 == 0) {
        let mut c = code;
        for (i, &u) in order.iter().enumerate() {
            if adj[v] >> u & 1 == 1 {
                c |= pair_bit(i, j);
            }
        }
        let done_bits = j * (j + 1) / 2;
        let prefix = if done_bits == 0 {
            0
        } else {
            u64::MAX << (64 - done_bits)
        };
        if c & prefix > *best & prefix {
            continue;
        }
        order.push(v);
        search(adj, cells, cell, used | 1 << v, order, c, best);
        order.pop();
    }
}

fn decode(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if code & pair_bit(i, j) != 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_pairs_lossy(n, edges)
}

/// All graphs on exactly `n` vertices up to isomorphism, each in canonical
/// labeling, ordered by canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ORDER {
        return Err(Error::TooLarge {
            op: "catalog",
            n,
            limit: MAX_ORDER,
        });
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut codes = BTreeSet::new();
        for g in &level {
            for nb in 0u32..1 << (k - 1) {
                let mut edges = g.edges().to_vec();
                edges.extend((0..k - 1).filter(|u| nb >> u & 1 == 1).map(|u| (u, k - 1)));
                let h = Graph::from_pairs_lossy(k, edges);
                codes.insert(canonical_code(&h)?);
            }
        }
        level = codes.into_iter().map(|c| decode(k, c)).collect();
    }
    Ok(level)
}

/// Connected graphs on 1..=`max_n` vertices up to isomorphism, by order then code.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_graphs(n)?.into_iter().filter(Graph::is_connected));
    }
    Ok(out)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n() && a.m() == b.m() && canonical_code(a)? == canonical_code(b)?)
}
