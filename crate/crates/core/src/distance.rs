//! The distance-k graph `G_k` and the statistics computed on it.

use crate::graph::{Bits, Graph, VertexSet};
use crate::{Error, Result};

/// `G_k`: same vertex set as the source, `{x, y}` an edge iff `d(x, y) = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceKGraph {
    pub k: usize,
    pub graph: Graph,
}

impl DistanceKGraph {
    pub fn base_n(&self) -> usize {
        self.graph.n()
    }

    /// `e(G_k)`: the number of unordered pairs at distance `k`.
    pub fn pair_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Degree of `v` in `G_k`.
    pub fn k_degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }
}

/// Builds `G_k` for a connected graph.
pub fn distance_k_graph(g: &Graph, k: usize) -> Result<DistanceKGraph> {
    if k == 0 {
        return Err(Error::HypothesisFailed("distance parameter must be at least 1".into()));
    }
    let mut rows = vec![0u64; g.n()];
    for (v, row) in rows.iter_mut().enumerate() {
        let layers = g.bfs_layers(v);
        if layers.iter().map(|l| l.len()).sum::<usize>() != g.n() {
            return Err(Error::Disconnected);
        }
        *row = layers.get(k).map_or(0, |l| l.bits());
    }
    let graph = Graph::from_rows(&rows).expect("distance relation is symmetric");
    Ok(DistanceKGraph { k, graph })
}

/// Rows of the distance-two relation. Works on disconnected graphs too:
/// unreachable pairs are simply not at distance two.
#[inline]
pub(crate) fn distance2_rows(g: &Graph, out: &mut [u64]) {
    for v in 0..g.n() {
        let nb = g.row(v);
        let mut two = 0u64;
        for u in Bits(nb) {
            two |= g.row(u);
        }
        out[v] = two & !nb & !(1u64 << v);
    }
}

/// Number of pairs at distance exactly two.
pub fn distance2_pair_count(g: &Graph) -> usize {
    let mut rows = [0u64; 64];
    distance2_rows(g, &mut rows);
    rows[..g.n()].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
}

/// The distance-two graph without the connectivity requirement.
pub(crate) fn distance2_graph_unchecked(g: &Graph) -> Graph {
    let mut rows = [0u64; 64];
    distance2_rows(g, &mut rows);
    Graph::from_rows(&rows[..g.n()]).expect("distance relation is symmetric")
}

/// Lexicographically smallest triangle `(a, b, c)`, `a < b < c`.
pub fn find_triangle(g: &Graph) -> Option<(usize, usize, usize)> {
    for a in 0..g.n() {
        let up = g.row(a) & !crate::graph::low_bits(a + 1);
        for b in Bits(up) {
            let common = g.row(b) & up & !crate::graph::low_bits(b + 1);
            if common != 0 {
                return Some((a, b, common.trailing_zeros() as usize));
            }
        }
    }
    None
}

pub fn is_triangle_free(g: &Graph) -> bool {
    !(0..g.n()).any(|a| Bits(g.row(a)).any(|b| g.row(a) & g.row(b) != 0))
}

/// Exact clique number by branch and bound over bitset candidate sets.
pub fn clique_number(g: &Graph) -> usize {
    let mut best = 0;
    expand(g, 0, g.vertices().bits(), &mut best);
    best
}

/// Vertices of a maximum clique.
pub fn maximum_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    expand_set(g, VertexSet::EMPTY, g.vertices().bits(), &mut best);
    best
}

// Greedy colouring bound: the candidates can host at most as many clique
// vertices as colours used.
fn colour_bound(g: &Graph, mut cand: u64) -> usize {
    let mut colours = 0;
    while cand != 0 {
        colours += 1;
        let mut avail = cand;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1u64 << v) & !g.row(v);
            cand &= !(1u64 << v);
        }
    }
    colours
}

fn expand(g: &Graph, size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + colour_bound(g, cand) <= *best {
        return;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1u64 << v);
        expand(g, size + 1, cand & g.row(v), best);
    }
}

fn expand_set(g: &Graph, current: VertexSet, mut cand: u64, best: &mut VertexSet) {
    if cand == 0 {
        if current.len() > best.len() {
            *best = current;
        }
        return;
    }
    if current.len() + colour_bound(g, cand) <= best.len() {
        return;
    }
    while cand != 0 {
        if current.len() + cand.count_ones() as usize <= best.len() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1u64 << v);
        let mut next = current;
        next.insert(v);
        expand_set(g, next, cand & g.row(v), best);
    }
}
