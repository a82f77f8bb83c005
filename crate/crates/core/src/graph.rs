//! Simple undirected graphs stored as one `u64` adjacency row per vertex.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertex indices packed into one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The vertices `0..n`.
    pub const fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        Bits(self.0)
    }
}

/// Ascending iterator over the set bits of a word.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// A shortest-path length, or the marker for "no path".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Undirected simple graph on `1..=64` vertices.
///
/// Row `i` of the adjacency array has bit `j` set iff `{i, j}` is an edge.
/// Rows are symmetric, loop-free and zero beyond column `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::CapExceeded { n, limit: MAX_VERTICES });
        }
        Ok(Graph { n, adj: [0; MAX_VERTICES] })
    }

    /// Builds a graph from an edge list. Duplicate pairs are ignored.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::BadEdge(a, b));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating every invariant.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let mask = low_bits(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || row >> i & 1 == 1 {
                return Err(Error::BadEdge(i, i));
            }
            for j in Bits(row) {
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::BadEdge(i, j));
                }
            }
            g.adj[i] = row;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let full = low_bits(n);
        for i in 0..n {
            g.adj[i] = full & !(1u64 << i);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadEdge(0, n.saturating_sub(1)));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Self> {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| Bits(self.adj[i] & !low_bits(i + 1)).map(move |j| (i, j)))
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.adj[a] |= 1u64 << b;
        self.adj[b] |= 1u64 << a;
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1u64 << b);
        self.adj[b] &= !(1u64 << a);
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.adj[a] ^= 1u64 << b;
        self.adj[b] ^= 1u64 << a;
    }

    /// A copy of the graph with one extra vertex `n` joined to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        if self.n >= MAX_VERTICES {
            return Err(Error::CapExceeded { n: self.n + 1, limit: MAX_VERTICES });
        }
        if !nbrs.is_subset(self.vertices()) {
            return Err(Error::BadEdge(self.n, nbrs.iter().last().unwrap_or(0)));
        }
        let mut g = self.clone();
        g.push_vertex(nbrs.0);
        Ok(g)
    }

    #[inline]
    pub(crate) fn push_vertex(&mut self, nbrs: u64) {
        let v = self.n;
        self.n += 1;
        self.adj[v] = nbrs;
        for u in Bits(nbrs) {
            self.adj[u] |= 1u64 << v;
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        let full = low_bits(self.n);
        for i in 0..self.n {
            g.adj[i] = !self.adj[i] & full & !(1u64 << i);
        }
        g
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    ///
    /// `order` must be a permutation of `0..n`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph { n: self.n, adj: [0; MAX_VERTICES] };
        for (i, &v) in order.iter().enumerate() {
            g.adj[i] = Bits(self.adj[v]).fold(0, |acc, u| acc | 1u64 << pos[u]);
        }
        g
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s - VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (self.neighbors(v) & s).is_empty())
    }

    /// Subgraph induced by `s`, relabelled to `0..|s|` in ascending order of
    /// the original indices.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let order: Vec<usize> = (s & self.vertices()).to_vec();
        let mut g = Graph::empty(order.len())?;
        for (i, &v) in order.iter().enumerate() {
            for (j, &u) in order.iter().enumerate().skip(i + 1) {
                if self.has_edge(v, u) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Vertex sets of the BFS layers around `v`: entry `i` is `N^i(v)`.
    /// Vertices unreachable from `v` appear in no layer.
    pub fn bfs_layers(&self, v: usize) -> Vec<VertexSet> {
        self.bfs_layers_within(v, self.vertices())
    }

    pub(crate) fn bfs_layers_within(&self, v: usize, allowed: VertexSet) -> Vec<VertexSet> {
        let mut layers = vec![VertexSet::singleton(v)];
        let mut seen = 1u64 << v;
        let mut frontier = 1u64 << v;
        loop {
            let mut next = 0u64;
            for u in Bits(frontier) {
                next |= self.adj[u];
            }
            next &= allowed.0 & !seen;
            if next == 0 {
                return layers;
            }
            seen |= next;
            frontier = next;
            layers.push(VertexSet(next));
        }
    }

    /// Vertices reachable from `v` through `allowed` (which must contain `v`).
    #[inline]
    pub(crate) fn component_within(&self, v: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for u in Bits(frontier) {
                next |= self.adj[u];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        let full = low_bits(self.n);
        self.component_within(0, full) == full
    }

    /// Is `v` a cut vertex, i.e. does deleting it disconnect the rest?
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        if self.n <= 2 {
            return false;
        }
        let rest = low_bits(self.n) & !(1u64 << v);
        let start = rest.trailing_zeros() as usize;
        self.component_within(start, rest) != rest
    }

    /// Shortest-path distances from `v`.
    pub fn bfs_distances(&self, v: usize) -> Vec<Distance> {
        let mut row = vec![Distance::Unreachable; self.n];
        for (i, layer) in self.bfs_layers(v).into_iter().enumerate() {
            for u in layer {
                row[u] = Distance::Finite(i as u32);
            }
        }
        row
    }

    /// `N^i(v)`: the vertices at distance exactly `i` from `v`.
    pub fn neighborhood_i(&self, v: usize, i: usize) -> VertexSet {
        self.bfs_layers(v).get(i).copied().unwrap_or_default()
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.n;
        let mut d = vec![Distance::Unreachable; n * n];
        for v in 0..n {
            for (i, layer) in self.bfs_layers(v).into_iter().enumerate() {
                for u in layer {
                    d[v * n + u] = Distance::Finite(i as u32);
                }
            }
        }
        DistanceMatrix { n, d }
    }

    /// Largest distance between two vertices; `Unreachable` if disconnected.
    pub fn diameter(&self) -> Distance {
        let mut best = 0;
        for v in 0..self.n {
            let layers = self.bfs_layers(v);
            if layers.iter().map(|l| l.len()).sum::<usize>() != self.n {
                return Distance::Unreachable;
            }
            best = best.max(layers.len() as u32 - 1);
        }
        Distance::Finite(best)
    }

    /// Checks the representation invariants.
    pub fn is_well_formed(&self) -> bool {
        let mask = low_bits(self.n);
        (0..MAX_VERTICES).all(|i| {
            if i >= self.n {
                return self.adj[i] == 0;
            }
            let row = self.adj[i];
            row & !mask == 0 && row >> i & 1 == 0 && Bits(row).all(|j| self.adj[j] >> i & 1 == 1)
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        f.write_str(")")
    }
}

/// All-pairs shortest-path lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Distance {
        self.d[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[Distance] {
        &self.d[a * self.n..(a + 1) * self.n]
    }

    /// Largest entry; `Unreachable` if any entry is.
    pub fn max_entry(&self) -> Distance {
        self.d.iter().copied().max().unwrap_or(Distance::Finite(0))
    }
}
