//! Structural predicates: forbidden induced patterns, two-clique covers of
//! neighbourhoods and the per-vertex checks that rely on them.

use serde::{Deserialize, Serialize};

use crate::distance::{distance2_graph_unchecked, find_triangle};
use crate::graph::{Bits, Distance, Graph, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    #[serde(rename = "CLAW")]
    Claw,
    #[serde(rename = "C6")]
    C6,
    /// `C6` plus the chord `v1 v3`.
    #[serde(rename = "C6P")]
    C6Prime,
    /// `C6` plus the chords `v1 v3` and `v3 v5`.
    #[serde(rename = "C6PP")]
    C6DoublePrime,
    #[serde(rename = "C5_IN_NBHD")]
    C5InNeighborhood,
}

impl Pattern {
    pub const C6_VARIANTS: [Pattern; 3] = [Pattern::C6, Pattern::C6Prime, Pattern::C6DoublePrime];

    /// Edges of the pattern on positions `0..k`, in listing order.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::Claw => &[(0, 1), (0, 2), (0, 3)],
            Pattern::C6 => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)],
            Pattern::C6Prime => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)],
            Pattern::C6DoublePrime => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (2, 4)],
            Pattern::C5InNeighborhood => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        }
    }

    pub fn order(self) -> usize {
        match self {
            Pattern::Claw => 4,
            Pattern::C5InNeighborhood => 5,
            _ => 6,
        }
    }

    pub fn graph(self) -> Graph {
        Graph::from_edges(self.order(), self.edges().iter().copied()).expect("pattern edges are valid")
    }

    fn adjacency(self) -> [u64; 6] {
        let mut m = [0u64; 6];
        for &(a, b) in self.edges() {
            m[a] |= 1 << b;
            m[b] |= 1 << a;
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub pattern: Pattern,
    /// For the claw the centre comes first; cycles are listed in cycle order.
    pub vertices: Vec<usize>,
}

/// Partition of `N(v)` into two cliques, either possibly empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueCover2 {
    pub a: VertexSet,
    pub b: VertexSet,
}

pub fn find_induced_claw(g: &Graph) -> Option<PatternWitness> {
    for c in 0..g.n() {
        let nb = g.row(c);
        for x in Bits(nb) {
            let after_x = nb & !g.row(x) & !crate::graph::low_bits(x + 1);
            for y in Bits(after_x) {
                let rest = after_x & !g.row(y) & !crate::graph::low_bits(y + 1);
                if rest != 0 {
                    let z = rest.trailing_zeros() as usize;
                    return Some(PatternWitness { pattern: Pattern::Claw, vertices: vec![c, x, y, z] });
                }
            }
        }
    }
    None
}

/// Lexicographically smallest vertex sequence within `allowed` whose induced
/// subgraph matches `pattern` position by position.
fn find_ordered_pattern(g: &Graph, allowed: u64, pattern: Pattern) -> Option<Vec<usize>> {
    fn extend(g: &Graph, allowed: u64, m: &[u64; 6], k: usize, seq: &mut Vec<usize>) -> bool {
        let p = seq.len();
        if p == k {
            return true;
        }
        let mut cand = allowed;
        for (q, &u) in seq.iter().enumerate() {
            cand &= !(1u64 << u);
            if m[p] >> q & 1 == 1 {
                cand &= g.row(u);
            } else {
                cand &= !g.row(u);
            }
        }
        for x in Bits(cand) {
            seq.push(x);
            if extend(g, allowed, m, k, seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    let m = pattern.adjacency();
    let mut seq = Vec::with_capacity(pattern.order());
    extend(g, allowed, &m, pattern.order(), &mut seq).then_some(seq)
}

/// Six vertices inducing exactly the requested 6-cycle variant.
pub fn find_induced_c6_variant(g: &Graph, variant: Pattern) -> Option<PatternWitness> {
    assert!(Pattern::C6_VARIANTS.contains(&variant), "not a 6-cycle variant: {variant:?}");
    find_ordered_pattern(g, g.vertices().bits(), variant).map(|vertices| PatternWitness { pattern: variant, vertices })
}

/// Splits `N(v)` into two cliques by 2-colouring the complement of `G[N(v)]`.
pub fn two_clique_cover(g: &Graph, v: usize) -> Option<CliqueCover2> {
    let nb = g.row(v);
    let mut colour_a = 0u64;
    let mut colour_b = 0u64;
    for start in Bits(nb) {
        if (colour_a | colour_b) >> start & 1 == 1 {
            continue;
        }
        colour_a |= 1u64 << start;
        let mut frontier = 1u64 << start;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let non_nb = nb & !g.row(u) & !(1u64 << u);
            let u_in_a = colour_a >> u & 1 == 1;
            let (same, other) = if u_in_a { (colour_a, colour_b) } else { (colour_b, colour_a) };
            if non_nb & same != 0 {
                return None;
            }
            let fresh = non_nb & !other;
            if u_in_a {
                colour_b |= fresh;
            } else {
                colour_a |= fresh;
            }
            frontier |= fresh;
        }
    }
    Some(CliqueCover2 { a: VertexSet(colour_a), b: VertexSet(colour_b) })
}

pub fn find_c5_in_neighborhood(g: &Graph, v: usize) -> Option<PatternWitness> {
    find_ordered_pattern(g, g.row(v), Pattern::C5InNeighborhood)
        .map(|vertices| PatternWitness { pattern: Pattern::C5InNeighborhood, vertices })
}

/// `alpha(G)`: the size of a largest stable set.
pub fn stability_number(g: &Graph) -> usize {
    crate::distance::clique_number(&g.complement())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NeighborhoodTag {
    TwoCliques,
    C5Nbhd,
    Both,
    Neither,
}

/// Per-vertex classification of neighbourhoods in a claw-free graph with
/// stability number at least three.
pub fn check_lemma_2_2(g: &Graph) -> Result<Vec<NeighborhoodTag>> {
    if let Some(w) = find_induced_claw(g) {
        return Err(Error::HypothesisFailed(format!("induced claw at {:?}", w.vertices)));
    }
    let alpha = stability_number(g);
    if alpha < 3 {
        return Err(Error::HypothesisFailed(format!("stability number {alpha} is below 3")));
    }
    Ok(classify_neighborhoods(g))
}

pub(crate) fn classify_neighborhoods(g: &Graph) -> Vec<NeighborhoodTag> {
    (0..g.n())
        .map(|v| match (two_clique_cover(g, v).is_some(), find_c5_in_neighborhood(g, v).is_some()) {
            (true, false) => NeighborhoodTag::TwoCliques,
            (false, true) => NeighborhoodTag::C5Nbhd,
            (true, true) => NeighborhoodTag::Both,
            (false, false) => NeighborhoodTag::Neither,
        })
        .collect()
}

/// In a diameter-two graph with triangle-free `G_2`, every second
/// neighbourhood should induce a clique. Returns the first `(v, x, y)` with
/// `x, y` in `N^2(v)` non-adjacent.
pub fn check_observation_2_1(g: &Graph) -> Result<Option<(usize, usize, usize)>> {
    match g.diameter() {
        Distance::Finite(2) => {}
        d => return Err(Error::HypothesisFailed(format!("diameter is {d}, not 2"))),
    }
    let g2 = distance2_graph_unchecked(g);
    if let Some(t) = find_triangle(&g2) {
        return Err(Error::HypothesisFailed(format!("G_2 has the triangle {t:?}")));
    }
    Ok(second_neighborhood_violation(g))
}

pub(crate) fn second_neighborhood_violation(g: &Graph) -> Option<(usize, usize, usize)> {
    for v in 0..g.n() {
        let far = g.neighborhood_i(v, 2);
        for x in far {
            let missing = far.bits() & !g.row(x) & !crate::graph::low_bits(x + 1);
            if missing != 0 {
                return Some((v, x, missing.trailing_zeros() as usize));
            }
        }
    }
    None
}

/// Smallest vertex whose neighbourhood is covered by at most two cliques.
pub fn theorem_hypothesis_holds(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| two_clique_cover(g, v).is_some())
}
