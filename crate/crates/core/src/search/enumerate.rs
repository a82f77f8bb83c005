//! Isomorph-free generation of connected graphs by canonical augmentation.
//!
//! A child is a parent plus one new vertex joined to a nonempty subset of the
//! parent's vertices. Subsets are taken one per orbit of the parent's
//! automorphism group, and a child is kept only if its new vertex lies in the
//! orbit of the canonical deletion vertex: among the non-cut vertices with the
//! largest cheap invariant, the one placed last by the canonical labelling.
//! Every isomorphism class is produced exactly once, and each subtree of
//! the generation tree can be explored independently.

use rayon::prelude::*;

use crate::canon::canonical_labeling;
use crate::graph::{Bits, Graph, MAX_VERTICES};
#[cfg(test)]
use crate::graph::{low_bits, VertexSet};
use crate::{Error, Result};

/// Largest order accepted without `force`.
pub const SOFT_LIMIT: usize = 11;
/// Largest order for the labelled brute force (2^21 edge masks).
pub const LABELED_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub workers: usize,
    /// Allow orders above [`SOFT_LIMIT`].
    pub force: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { workers: 1, force: false }
    }
}

fn check_order(n: usize, force: bool) -> Result<()> {
    if n == 0 || n > MAX_VERTICES || (n > SOFT_LIMIT && !force) {
        let limit = if force { MAX_VERTICES } else { SOFT_LIMIT };
        return Err(Error::CapExceeded { n, limit });
    }
    Ok(())
}

/// Visits one representative of every isomorphism class of connected graphs
/// on `n` vertices and returns the number of classes.
pub fn enumerate_connected<F: FnMut(&Graph)>(n: usize, force: bool, mut visitor: F) -> Result<u64> {
    check_order(n, force)?;
    let mut count = 0u64;
    for seed in split_seeds(n, 8) {
        walk(&seed, n, &mut |g| {
            count += 1;
            visitor(g)
        });
    }
    Ok(count)
}

/// Visits every labelled graph on `n` vertices, connected or not.
pub fn enumerate_labeled<F: FnMut(&Graph)>(n: usize, mut visitor: F) -> Result<u64> {
    if n == 0 || n > LABELED_LIMIT {
        return Err(Error::CapExceeded { n, limit: LABELED_LIMIT });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total = 1u64 << pairs.len();
    for mask in 0..total {
        let g = Graph::from_edges(n, Bits(mask).map(|b| pairs[b])).expect("pairs are valid");
        visitor(&g);
    }
    Ok(total)
}

/// Runs `visit` over all classes with `workers` threads, one accumulator per
/// subtree, and returns the accumulators in generation order.
pub fn fold_connected<A, I, V>(n: usize, opts: EnumOptions, init: I, visit: V) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Graph) + Sync,
{
    let done: Vec<Option<A>> = fold_seeds(n, opts, |_| false, init, visit, |_, _| {})?;
    Ok(done.into_iter().flatten().collect())
}

pub(crate) fn seed_target(workers: usize) -> usize {
    8 * workers.max(1)
}

/// Like [`fold_connected`], but skips the subtrees for which `skip` holds
/// (reporting `None` for them) and calls `done` as each subtree finishes.
pub(crate) fn fold_seeds<A, S, I, V, D>(n: usize, opts: EnumOptions, skip: S, init: I, visit: V, done: D) -> Result<Vec<Option<A>>>
where
    A: Send,
    S: Fn(usize) -> bool + Sync,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Graph) + Sync,
    D: Fn(usize, &A) + Sync,
{
    check_order(n, opts.force)?;
    let seeds = split_seeds(n, seed_target(opts.workers));
    let run = |(i, seed): (usize, &Graph)| {
        if skip(i) {
            return None;
        }
        let mut acc = init();
        walk(seed, n, &mut |g| visit(&mut acc, g));
        done(i, &acc);
        Some(acc)
    };
    if opts.workers <= 1 {
        return Ok(seeds.iter().enumerate().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    Ok(pool.install(|| seeds.par_iter().enumerate().map(run).collect()))
}

pub(crate) fn seed_count(n: usize, workers: usize) -> usize {
    split_seeds(n, seed_target(workers)).len()
}

/// Generation-tree nodes at the shallowest level with at least `target`
/// nodes, or at level `n` if no level is that wide.
pub(crate) fn split_seeds(n: usize, target: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    while level[0].n() < n && level.len() < target {
        let mut next = Vec::new();
        for g in &level {
            for_each_child(g, |c| next.push(c));
        }
        level = next;
    }
    level
}

fn walk(g: &Graph, n: usize, visit: &mut dyn FnMut(&Graph)) {
    if g.n() == n {
        visit(g);
        return;
    }
    for_each_child(g, |c| walk(&c, n, visit));
}

/// Calls `f` on every accepted child of `parent`.
fn for_each_child<F: FnMut(Graph)>(parent: &Graph, mut f: F) {
    let k = parent.n();
    let lab = canonical_labeling(parent);
    let total = 1u64 << k;
    if lab.generators.is_empty() {
        for s in 1..total {
            try_child(parent, s, &mut f);
        }
        return;
    }
    // One subset per orbit of Aut(parent): the smallest mask in each orbit.
    let mut seen = vec![false; total as usize];
    let mut stack = Vec::new();
    for s in 1..total {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        stack.push(s);
        while let Some(t) = stack.pop() {
            for gen in &lab.generators {
                let img = Bits(t).fold(0u64, |acc, v| acc | 1u64 << gen[v]);
                if !seen[img as usize] {
                    seen[img as usize] = true;
                    stack.push(img);
                }
            }
        }
        try_child(parent, s, &mut f);
    }
}

#[inline]
fn try_child<F: FnMut(Graph)>(parent: &Graph, nbrs: u64, f: &mut F) {
    let mut child = parent.clone();
    child.push_vertex(nbrs);
    if is_canonical_extension(&child) {
        f(child);
    }
}

/// Isomorphism-invariant vertex summary; larger is preferred for deletion.
#[inline]
fn invariant(g: &Graph, degrees: &[u32; MAX_VERTICES], u: usize) -> u64 {
    let row = g.row(u);
    let mut nbr_degrees = 0u64;
    let mut triangles = 0u64;
    for w in Bits(row) {
        nbr_degrees += u64::from(degrees[w]);
        triangles += u64::from((g.row(w) & row).count_ones());
    }
    u64::from(degrees[u]) << 40 | nbr_degrees << 20 | triangles
}

/// Is the last vertex of `g` in the orbit of the canonical deletion vertex?
fn is_canonical_extension(g: &Graph) -> bool {
    let n = g.n();
    let last = n - 1;
    let mut degrees = [0u32; MAX_VERTICES];
    for (v, d) in degrees[..n].iter_mut().enumerate() {
        *d = g.row(v).count_ones();
    }
    let mut inv = [0u64; MAX_VERTICES];
    for (u, slot) in inv[..n].iter_mut().enumerate() {
        *slot = invariant(g, &degrees, u);
    }
    let target = inv[last];
    // Removing `last` leaves the parent, which is connected, so `last` is
    // never a cut vertex.
    let mut tied = 1u64 << last;
    for u in 0..last {
        if inv[u] > target && !g.is_cut_vertex(u) {
            return false;
        }
    }
    for u in 0..last {
        if inv[u] == target && !g.is_cut_vertex(u) {
            tied |= 1u64 << u;
        }
    }
    if tied == 1u64 << last {
        return true;
    }
    let lab = canonical_labeling(g);
    let pos = lab.positions();
    let chosen = Bits(tied).max_by_key(|&u| pos[u]).expect("tied set is nonempty");
    lab.same_orbit(chosen, last)
}

#[cfg(test)]
/// Vertices of `g` that are not cut vertices.
pub(crate) fn non_cut_vertices(g: &Graph) -> VertexSet {
    VertexSet(Bits(low_bits(g.n())).filter(|&v| !g.is_cut_vertex(v)).fold(0, |acc, v| acc | 1u64 << v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use std::collections::HashSet;

    // Independent oracle: bucket all labelled connected graphs by canonical form.
    fn labeled_classes(n: usize) -> usize {
        let mut forms = HashSet::new();
        enumerate_labeled(n, |g| {
            if g.is_connected() {
                forms.insert(canonical_form(g));
            }
        })
        .unwrap();
        forms.len()
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_labeled(3, |_| {}).unwrap(), 8);
        assert_eq!(enumerate_labeled(4, |_| {}).unwrap(), 64);
        let mut connected = 0;
        enumerate_labeled(5, |g| connected += u64::from(g.is_connected())).unwrap();
        assert_eq!(connected, 728);
        assert!(matches!(enumerate_labeled(8, |_| {}), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn generator_matches_oracle_small() {
        for n in 1..=6 {
            let expected = labeled_classes(n);
            let mut forms = HashSet::new();
            let count = enumerate_connected(n, false, |g| {
                assert!(g.is_connected() && g.is_well_formed());
                assert!(forms.insert(canonical_form(g)), "duplicate class at n={n}");
            })
            .unwrap();
            assert_eq!(count as usize, expected, "n={n}");
        }
    }

    #[test]
    fn known_class_counts() {
        let counts: Vec<u64> = (1..=8).map(|n| enumerate_connected(n, false, |_| {}).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853, 11117]);
    }

    #[test]
    fn order_limits() {
        assert!(matches!(enumerate_connected(12, false, |_| {}), Err(Error::CapExceeded { .. })));
        assert!(matches!(enumerate_connected(0, true, |_| {}), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn parallel_fold_matches_sequential() {
        let seq = enumerate_connected(7, false, |_| {}).unwrap();
        for workers in [1, 3] {
            let parts = fold_connected(7, EnumOptions { workers, force: false }, || 0u64, |acc, _| *acc += 1).unwrap();
            assert!(parts.len() >= seed_target(workers));
            assert_eq!(parts.iter().sum::<u64>(), seq);
        }
    }

    #[test]
    fn seed_split_covers_small_orders() {
        // fewer classes than the target: seeds are the graphs themselves
        let seeds = split_seeds(4, 64);
        assert_eq!(seeds.len(), 6);
        assert!(seeds.iter().all(|g| g.n() == 4));
    }

    #[test]
    fn non_cut_set() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(non_cut_vertices(&p4), VertexSet::from_iter([0, 3]));
    }
}
