//! Graph transformations that do not decrease the number of distance-two
//! pairs, and the two parametric diameter-two families.

use serde::{Deserialize, Serialize};

use crate::distance::{distance2_graph_unchecked, distance2_pair_count, is_triangle_free};
use crate::graph::{Distance, Graph, VertexSet, MAX_VERTICES};
use crate::structure::two_clique_cover;
use crate::{Error, Result};

/// A diametral geodesic `v_0 v_1 ... v_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spindle {
    pub path: Vec<usize>,
}

impl Spindle {
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }

    /// `V_d = N(v_{d-1}) \ {v_{d-2}}`; always contains `v_d`.
    pub fn moved_set(&self, g: &Graph) -> VertexSet {
        let d = self.length();
        g.neighbors(self.path[d - 1]) - VertexSet::singleton(self.path[d - 2])
    }
}

fn connected_diameter(g: &Graph) -> Result<u32> {
    match g.diameter() {
        Distance::Unreachable => Err(Error::Disconnected),
        Distance::Finite(d) => Ok(d),
    }
}

/// The lexicographically smallest diametral geodesic: smallest `v_0`, then
/// smallest `v_d`, then the smallest next hop at every layer.
pub fn find_spindle(g: &Graph) -> Result<Spindle> {
    let d = connected_diameter(g)?;
    if d < 2 {
        return Err(Error::DiameterTooSmall(d));
    }
    let d = d as usize;
    let (start, layers) = (0..g.n())
        .map(|v| (v, g.bfs_layers(v)))
        .find(|(_, l)| l.len() == d + 1)
        .expect("some vertex attains the diameter");
    let end = layers[d].first().expect("layer d is nonempty");
    let back = g.bfs_layers(end);
    let mut path = vec![start];
    for i in 1..=d {
        let prev = path[i - 1];
        let next = (g.neighbors(prev) & back[d - i]).first().expect("geodesic continues");
        path.push(next);
    }
    Ok(Spindle { path })
}

fn validate_spindle(g: &Graph, s: &Spindle) -> Result<()> {
    let diameter = connected_diameter(g)? as usize;
    let d = s.path.len().saturating_sub(1);
    if d != diameter {
        return Err(Error::InvalidSpindle(format!("length {d} differs from the diameter {diameter}")));
    }
    if d < 2 {
        return Err(Error::InvalidSpindle(format!("length {d} is below 2")));
    }
    if let Some(&v) = s.path.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidSpindle(format!("vertex {v} out of range")));
    }
    let row = g.bfs_distances(s.path[0]);
    for (i, &v) in s.path.iter().enumerate() {
        if row[v] != Distance::Finite(i as u32) {
            return Err(Error::InvalidSpindle(format!("vertex {v} is not at distance {i} from the start")));
        }
        if i > 0 && !g.has_edge(s.path[i - 1], v) {
            return Err(Error::InvalidSpindle(format!("{} and {v} are not adjacent", s.path[i - 1])));
        }
    }
    Ok(())
}

/// Detaches `V_d` from `v_{d-1}` and joins it to `v_{d-2}`.
pub fn move_vd(g: &Graph, s: &Spindle) -> Result<Graph> {
    validate_spindle(g, s)?;
    let d = s.length();
    let (pivot, target) = (s.path[d - 1], s.path[d - 2]);
    let mut out = g.clone();
    for u in s.moved_set(g) {
        out.remove_edge(pivot, u);
        if u != target {
            out.add_edge(target, u);
        }
    }
    Ok(out)
}

/// Pair counts along a diameter reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// `e(G_2)` before the first step and after each step; empty if no step ran.
    pub pairs: Vec<usize>,
    /// Whether `G_2` was triangle-free after each step.
    pub triangle_free: Vec<bool>,
    pub diameters: Vec<u32>,
}

impl Reduction {
    pub fn steps(&self) -> usize {
        self.triangle_free.len()
    }

    pub fn is_monotone(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Applies the spindle move until the diameter is at most two.
pub fn reduce_to_diameter_2(g: &Graph) -> Result<(Graph, Reduction)> {
    let mut d = connected_diameter(g)?;
    if d < 2 {
        return Err(Error::DiameterTooSmall(d));
    }
    let cap = g.n() * g.n();
    let mut current = g.clone();
    let mut trace = Reduction { pairs: Vec::new(), triangle_free: Vec::new(), diameters: Vec::new() };
    while d > 2 {
        if trace.steps() == cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        if trace.pairs.is_empty() {
            trace.pairs.push(distance2_pair_count(&current));
            trace.diameters.push(d);
        }
        let spindle = find_spindle(&current)?;
        current = move_vd(&current, &spindle)?;
        d = connected_diameter(&current)?;
        trace.pairs.push(distance2_pair_count(&current));
        trace.triangle_free.push(is_triangle_free(&distance2_graph_unchecked(&current)));
        trace.diameters.push(d);
    }
    Ok((current, trace))
}

/// Clique sizes of a family; the resulting order is `x + y + 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub x: usize,
    pub y: usize,
}

impl FamilyParams {
    pub fn new(x: usize, y: usize) -> Result<Self> {
        let p = FamilyParams { x, y };
        p.validate()?;
        Ok(p)
    }

    /// Balanced parameters `((n-3)/2, (n-3)/2)` for odd `n >= 5`.
    pub fn balanced(n: usize) -> Result<Self> {
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::HypothesisFailed(format!("balanced parameters need odd n >= 5, got {n}")));
        }
        FamilyParams::new((n - 3) / 2, (n - 3) / 2)
    }

    pub fn order(&self) -> usize {
        self.x + self.y + 3
    }

    fn validate(&self) -> Result<()> {
        if self.x == 0 || self.y == 0 {
            return Err(Error::HypothesisFailed(format!("x and y must be positive, got ({}, {})", self.x, self.y)));
        }
        if self.order() > MAX_VERTICES {
            return Err(Error::CapExceeded { n: self.order(), limit: MAX_VERTICES });
        }
        Ok(())
    }
}

fn clique_edges(range: std::ops::Range<usize>) -> impl Iterator<Item = (usize, usize)> {
    range.clone().flat_map(move |i| (i + 1..range.end).map(move |j| (i, j)))
}

/// Apex `0` joined to disjoint cliques `1..=x` and `x+1..=x+y`; `u = x+y+1`
/// sees the first clique, `w = x+y+2` sees the second, and `u w` is an edge.
pub fn build_family_gpp(p: FamilyParams) -> Result<Graph> {
    p.validate()?;
    let (x, y) = (p.x, p.y);
    let (v_side, u_side) = (1..x + 1, x + 1..x + y + 1);
    let (u, w) = (x + y + 1, x + y + 2);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    edges.extend(v_side.clone().chain(u_side.clone()).map(|i| (0, i)));
    edges.extend(clique_edges(v_side.clone()));
    edges.extend(clique_edges(u_side.clone()));
    edges.extend(v_side.map(|i| (i, u)));
    edges.extend(u_side.map(|i| (i, w)));
    edges.push((u, w));
    Graph::from_edges(p.order(), edges)
}

/// Apex `0` joined to the clique `{u1} + V12` where `u1 = 1` and
/// `V12 = 2..=x+1`. The second clique is `V21 + {u2}` with
/// `V21 = x+2..=x+y+1` and `u2 = x+y+2`. `u1` sees all of `V21`, `u2` sees
/// all of `V12`, and there are no other cross edges.
pub fn build_family_gp(p: FamilyParams) -> Result<Graph> {
    p.validate()?;
    let (x, y) = (p.x, p.y);
    let u1 = 1;
    let v12 = 2..x + 2;
    let v21 = x + 2..x + y + 2;
    let u2 = x + y + 2;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    edges.extend((1..x + 2).map(|i| (0, i)));
    edges.extend(clique_edges(1..x + 2));
    edges.extend(clique_edges(x + 2..x + y + 3));
    edges.extend(v21.map(|j| (u1, j)));
    edges.extend(v12.map(|i| (i, u2)));
    Graph::from_edges(p.order(), edges)
}

pub fn closed_form_gpp(p: FamilyParams) -> usize {
    p.x * p.y + p.x + p.y + 2
}

/// Pair count of [`build_family_gp`] with this crate's labelling. With the
/// roles of `x` and `y` exchanged it reads `xy + x + 2`.
pub fn closed_form_gp(p: FamilyParams) -> usize {
    p.x * p.y + p.y + 2
}

/// The pieces of a neighbourhood rewiring around `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewireSetup {
    pub v: usize,
    /// The clique cover `(V_1, U_1)` of `N(v)`.
    pub v1: VertexSet,
    pub u1: VertexSet,
    /// Second-neighbourhood vertices at distance two from some vertex of
    /// `V_1` and from some vertex of `U_1`.
    pub b: VertexSet,
}

/// Computes the rewiring setup, failing unless `N(v)` splits into two
/// nonempty cliques with at least one edge between them.
pub fn rewire_setup(g: &Graph, v: usize) -> Result<RewireSetup> {
    let cover = two_clique_cover(g, v)
        .ok_or_else(|| Error::HypothesisFailed(format!("N({v}) is not covered by two cliques")))?;
    let (v1, u1) = (cover.a, cover.b);
    if v1.is_empty() || u1.is_empty() {
        return Err(Error::HypothesisFailed(format!("N({v}) is a single clique")));
    }
    if !v1.iter().any(|p| !(g.neighbors(p) & u1).is_empty()) {
        return Err(Error::HypothesisFailed(format!("no edge between the two cliques of N({v})")));
    }
    let second = g.neighborhood_i(v, 2);
    let g2 = distance2_graph_unchecked(g);
    let b = second.iter().filter(|&x| !(g2.neighbors(x) & v1).is_empty() && !(g2.neighbors(x) & u1).is_empty()).collect();
    Ok(RewireSetup { v, v1, u1, b })
}

/// Deletes the edges between `V_1` and `U_1`, then moves `b1` into the clique
/// `V_1` and `b2` into `U_1`: a moved vertex becomes adjacent to `v` and to
/// the whole of its new clique (including the other moved vertices), and
/// loses its edges to the opposite side. Edges to the rest of the second
/// neighbourhood are kept.
pub fn rewire_subcase_2_2(g: &Graph, v: usize, b1: VertexSet, b2: VertexSet) -> Result<Graph> {
    let setup = rewire_setup(g, v)?;
    if !(b1 & b2).is_empty() || (b1 | b2) != setup.b {
        return Err(Error::HypothesisFailed(format!("split {b1:?} / {b2:?} does not partition B = {:?}", setup.b)));
    }
    Ok(apply_rewire(g, &setup, b1, b2))
}

fn apply_rewire(g: &Graph, s: &RewireSetup, b1: VertexSet, b2: VertexSet) -> Graph {
    let mut out = g.clone();
    for p in s.v1 {
        for q in s.u1 {
            out.remove_edge(p, q);
        }
    }
    let side_a = s.v1 | b1;
    let side_b = s.u1 | b2;
    for x in b1 | b2 {
        let (own, other) = if b1.contains(x) { (side_a, side_b) } else { (side_b, side_a) };
        out.add_edge(s.v, x);
        for y in own - VertexSet::singleton(x) {
            out.add_edge(x, y);
        }
        for y in other {
            out.remove_edge(x, y);
        }
    }
    out
}

/// Outcome of trying every split of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSearch {
    pub setup: RewireSetup,
    /// Best split found and the resulting pair-count change.
    pub best: (VertexSet, VertexSet, i64),
    pub splits_tried: usize,
}

impl SplitSearch {
    pub fn nondecreasing_split_exists(&self) -> bool {
        self.best.2 >= 0
    }
}

/// Exhaustive search over the `2^|B|` splits for the one that maximises
/// the change in `e(G_2)`. Ties go to the split with the smallest `b1` mask.
pub fn best_split(g: &Graph, v: usize) -> Result<SplitSearch> {
    let setup = rewire_setup(g, v)?;
    let before = distance2_pair_count(g) as i64;
    let members = setup.b.to_vec();
    let mut best: Option<(VertexSet, VertexSet, i64)> = None;
    for mask in 0u64..1 << members.len() {
        let b1: VertexSet = members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        let b2 = setup.b - b1;
        let delta = distance2_pair_count(&apply_rewire(g, &setup, b1, b2)) as i64 - before;
        let better = match &best {
            None => true,
            Some((bb1, _, bd)) => delta > *bd || (delta == *bd && b1 < *bb1),
        };
        if better {
            best = Some((b1, b2, delta));
        }
    }
    Ok(SplitSearch { setup, best: best.expect("at least the empty split"), splits_tried: 1 << members.len() })
}
