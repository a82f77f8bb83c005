//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree starts from the degree partition, individualises vertices
//! of the first smallest non-singleton cell, and refines to an equitable
//! partition after every step. Each discrete leaf gives a relabelled
//! adjacency matrix; the canonical form is the lexicographically smallest of
//! them. Leaves that reproduce the first or best matrix yield automorphisms,
//! which prune sibling branches in the same orbit.

use std::cmp::Ordering;

use crate::graph::{low_bits, Bits, Graph, MAX_VERTICES};

/// Byte string that is equal for two graphs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Result of a canonical labelling search.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Automorphisms found during the search; they generate the full group.
    pub generators: Vec<Vec<usize>>,
    /// `orbits[v]` is the smallest vertex in the automorphism orbit of `v`.
    pub orbits: Vec<usize>,
    key: Vec<u64>,
    n: usize,
}

impl CanonicalLabeling {
    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        g.permuted(&self.order)
    }

    pub fn form(&self) -> CanonicalForm {
        let row_bytes = self.n.div_ceil(8);
        let mut bytes = Vec::with_capacity(1 + row_bytes * self.n);
        bytes.push(self.n as u8);
        for row in &self.key {
            bytes.extend_from_slice(&row.to_le_bytes()[..row_bytes]);
        }
        CanonicalForm(bytes)
    }

    /// Inverse of `order`: the canonical position of each vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.orbits[a] == self.orbits[b]
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form()
}

pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let n = g.n();
    let mut root = Partition::unit(n);
    refine(g, &mut root, low_bits(n));

    let mut search = Search { g, n, first: None, best: None, generators: Vec::new(), path: Vec::with_capacity(n), first_path: Vec::new() };
    search.descend(&root);

    let best = search.best.expect("search reaches at least one leaf");
    let mut uf = UnionFind::new(n);
    for gen in &search.generators {
        for (v, &w) in gen.iter().enumerate() {
            uf.union(v, w as usize);
        }
    }
    let orbits = (0..n).map(|v| uf.min_of(v)).collect();
    CanonicalLabeling {
        order: best.order[..n].iter().map(|&v| v as usize).collect(),
        generators: search.generators.into_iter().map(|p| p.into_iter().map(usize::from).collect()).collect(),
        orbits,
        key: best.key[..n].to_vec(),
        n,
    }
}

/// Ordered partition of the vertex set into cells.
#[derive(Clone)]
struct Partition {
    cells: [u64; MAX_VERTICES],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAX_VERTICES];
        cells[0] = low_bits(n);
        Partition { cells, len: 1 }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    /// Index of the first smallest non-singleton cell.
    fn target_cell(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_size = u32::MAX;
        for (i, &c) in self.cells[..self.len].iter().enumerate() {
            let s = c.count_ones();
            if s > 1 && s < best_size {
                best = i;
                best_size = s;
            }
        }
        best
    }

    fn replace(&mut self, at: usize, pieces: &[u64]) {
        let k = pieces.len();
        self.cells.copy_within(at + 1..self.len, at + k);
        self.cells[at..at + k].copy_from_slice(pieces);
        self.len += k - 1;
    }

    fn individualize(&mut self, at: usize, v: usize) {
        let bit = 1u64 << v;
        let rest = self.cells[at] & !bit;
        self.replace(at, &[bit, rest]);
    }
}

/// Splits cells by the number of neighbours each vertex has in a splitter,
/// until no splitter changes anything.
fn refine(g: &Graph, part: &mut Partition, initial: u64) {
    let mut stack: Vec<u64> = Vec::with_capacity(16);
    stack.push(initial);
    while let Some(w) = stack.pop() {
        let mut ci = 0;
        while ci < part.len {
            let cell = part.cells[ci];
            if cell & (cell - 1) == 0 {
                ci += 1;
                continue;
            }
            let mut groups: [(u32, u64); MAX_VERTICES] = [(0, 0); MAX_VERTICES];
            let mut ng = 0;
            for v in Bits(cell) {
                let c = (g.row(v) & w).count_ones();
                match groups[..ng].iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= 1u64 << v,
                    None => {
                        groups[ng] = (c, 1u64 << v);
                        ng += 1;
                    }
                }
            }
            if ng == 1 {
                ci += 1;
                continue;
            }
            let groups = &mut groups[..ng];
            groups.sort_unstable_by_key(|&(k, _)| k);
            let mut pieces = [0u64; MAX_VERTICES];
            for (i, &(_, m)) in groups.iter().enumerate() {
                pieces[i] = m;
                stack.push(m);
            }
            part.replace(ci, &pieces[..ng]);
            ci += ng;
        }
    }
}

struct Leaf {
    order: [u8; MAX_VERTICES],
    key: [u64; MAX_VERTICES],
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u8>>,
    path: Vec<u8>,
    first_path: Vec<u8>,
}

impl Search<'_> {
    /// Explores the subtree below `part`. Returns `Some(level)` when an
    /// automorphism onto the first leaf was found and the search should
    /// resume at the node with that many individualised vertices.
    fn descend(&mut self, part: &Partition) -> Option<usize> {
        if part.is_discrete(self.n) {
            return self.leaf(part);
        }
        let level = self.path.len();
        let ci = part.target_cell();
        let cell = part.cells[ci];
        let mut explored = 0u64;
        let mut orbit_cache: Option<(usize, UnionFind)> = None;
        for v in Bits(cell) {
            if explored != 0 && !self.generators.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    orbit_cache = Some((self.generators.len(), self.stabilizer_orbits()));
                }
                let uf = &mut orbit_cache.as_mut().unwrap().1;
                let root = uf.find(v);
                if Bits(explored).any(|e| uf.find(e) == root) {
                    continue;
                }
            }
            explored |= 1u64 << v;
            let mut child = part.clone();
            child.individualize(ci, v);
            refine(self.g, &mut child, 1u64 << v);
            self.path.push(v as u8);
            let jump = self.descend(&child);
            self.path.pop();
            if let Some(t) = jump {
                if t < level {
                    return Some(t);
                }
            }
        }
        None
    }

    /// Orbits of the known automorphisms that fix the current path pointwise.
    fn stabilizer_orbits(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for gen in &self.generators {
            if self.path.iter().all(|&p| gen[p as usize] == p) {
                for (v, &w) in gen.iter().enumerate() {
                    uf.union(v, w as usize);
                }
            }
        }
        uf
    }

    fn leaf(&mut self, part: &Partition) -> Option<usize> {
        let n = self.n;
        let mut leaf = Leaf { order: [0; MAX_VERTICES], key: [0; MAX_VERTICES] };
        let mut pos = [0u8; MAX_VERTICES];
        for i in 0..n {
            let v = part.cells[i].trailing_zeros() as u8;
            leaf.order[i] = v;
            pos[v as usize] = i as u8;
        }
        for i in 0..n {
            leaf.key[i] = Bits(self.g.row(leaf.order[i] as usize)).fold(0, |acc, u| acc | 1u64 << pos[u]);
        }

        let Some(first) = &self.first else {
            self.first_path = self.path.clone();
            self.best = Some(Leaf { order: leaf.order, key: leaf.key });
            self.first = Some(leaf);
            return None;
        };
        if first.key[..n] == leaf.key[..n] {
            let gen = automorphism(&leaf, first, n);
            self.generators.push(gen);
            let common = self.path.iter().zip(&self.first_path).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.key[..n].cmp(&best.key[..n]) {
            Ordering::Less => self.best = Some(leaf),
            Ordering::Equal => {
                let gen = automorphism(&leaf, best, n);
                self.generators.push(gen);
            }
            Ordering::Greater => {}
        }
        None
    }
}

/// The permutation sending `from.order[i]` to `to.order[i]`.
fn automorphism(from: &Leaf, to: &Leaf, n: usize) -> Vec<u8> {
    let mut gen = vec![0u8; n];
    for i in 0..n {
        gen[from.order[i] as usize] = to.order[i];
    }
    gen
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Keeps the smaller vertex as the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn min_of(&mut self, v: usize) -> usize {
        self.find(v)
    }
}
