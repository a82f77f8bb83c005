//! Sweeps the structural lemmas over every connected graph of a given order
//! and records counterexamples.

use serde::{Deserialize, Serialize};

use super::enumerate::{fold_seeds, EnumOptions};
use crate::distance::{distance2_graph_unchecked, find_triangle};
use crate::families::{best_split, find_spindle, move_vd, rewire_setup};
use crate::graph::{Distance, Graph};
use crate::structure::{
    classify_neighborhoods, find_induced_c6_variant, find_induced_claw, second_neighborhood_violation, stability_number,
    NeighborhoodTag, Pattern,
};
use crate::{graph6, Error, Result};

/// Largest order for a full sweep.
pub const CLAIMS_LIMIT: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Claim {
    /// Triangle-free `G_2` forces no induced claw, `C_6`, `C_6'` or `C_6''`.
    #[serde(rename = "LEMMA_2_1")]
    Lemma21,
    /// In a claw-free graph with stability number at least three, each
    /// neighbourhood is covered by two cliques or contains an induced `C_5`,
    /// but not both.
    #[serde(rename = "LEMMA_2_2")]
    Lemma22,
    /// Diameter two and triangle-free `G_2`: every second neighbourhood is a clique.
    #[serde(rename = "OBS_2_1")]
    Obs21,
    /// The spindle move does not decrease `e(G_2)`.
    #[serde(rename = "LEMMA_2_3_MONOTONE")]
    Lemma23Monotone,
    /// The spindle move keeps `G_2` triangle-free. Measured only.
    MovePreservesTfree,
    /// For every vertex whose neighbourhood is two cliques joined by at least
    /// one edge and whose set `B` is nonempty, some split of `B` does not
    /// decrease `e(G_2)`.
    #[serde(rename = "SUBCASE_2_2_SPLIT_EXISTS")]
    Subcase22SplitExists,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Lemma21,
        Claim::Lemma22,
        Claim::Obs21,
        Claim::Lemma23Monotone,
        Claim::MovePreservesTfree,
        Claim::Subcase22SplitExists,
    ];

    /// False for statistics that are reported but not claimed to hold.
    pub fn asserted(self) -> bool {
        self != Claim::MovePreservesTfree
    }

    pub fn name(self) -> &'static str {
        match self {
            Claim::Lemma21 => "LEMMA_2_1",
            Claim::Lemma22 => "LEMMA_2_2",
            Claim::Obs21 => "OBS_2_1",
            Claim::Lemma23Monotone => "LEMMA_2_3_MONOTONE",
            Claim::MovePreservesTfree => "MOVE_PRESERVES_TFREE",
            Claim::Subcase22SplitExists => "SUBCASE_2_2_SPLIT_EXISTS",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The graph in the labelling the vertex data refers to.
    pub graph6: String,
    pub vertices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimEntry {
    pub claim: Claim,
    pub asserted: bool,
    /// Graphs satisfying the claim's hypothesis.
    pub graphs_tested: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    /// Vertices tagged as both covered by two cliques and containing a `C_5`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub both_cases: Option<u64>,
}

impl ClaimEntry {
    fn new(claim: Claim) -> Self {
        ClaimEntry {
            claim,
            asserted: claim.asserted(),
            graphs_tested: 0,
            violations: 0,
            witnesses: Vec::new(),
            both_cases: (claim == Claim::Lemma22).then_some(0),
        }
    }

    fn violate(&mut self, g: &Graph, vertices: Vec<usize>, detail: String) {
        self.violations += 1;
        let graph6 = graph6::encode(g).expect("claim orders fit in graph6");
        self.witnesses.push(Witness { graph6, vertices, detail });
    }

    fn merge(&mut self, other: ClaimEntry) {
        self.graphs_tested += other.graphs_tested;
        self.violations += other.violations;
        self.witnesses.extend(other.witnesses);
        if let (Some(a), Some(b)) = (&mut self.both_cases, other.both_cases) {
            *a += b;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub n: usize,
    pub claims: Vec<ClaimEntry>,
}

impl ClaimReport {
    pub fn entry(&self, claim: Claim) -> &ClaimEntry {
        self.claims.iter().find(|e| e.claim == claim).expect("every claim has an entry")
    }

    /// True when every asserted claim has no violations.
    pub fn asserted_hold(&self) -> bool {
        self.claims.iter().all(|e| !e.asserted || e.violations == 0)
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.claims {
            if e.violations != e.witnesses.len() as u64 {
                return Err(Error::InvalidReport(format!("{}: violations differ from witness count", e.claim.name())));
            }
            if e.violations > e.graphs_tested {
                return Err(Error::InvalidReport(format!("{}: more violations than graphs tested", e.claim.name())));
            }
            if e.asserted != e.claim.asserted() {
                return Err(Error::InvalidReport(format!("{}: wrong asserted flag", e.claim.name())));
            }
        }
        let claims: Vec<Claim> = self.claims.iter().map(|e| e.claim).collect();
        if claims != Claim::ALL {
            return Err(Error::InvalidReport("claim entries are missing or out of order".into()));
        }
        Ok(())
    }
}

#[derive(Clone)]
struct Sweep(Vec<ClaimEntry>);

impl Sweep {
    fn new() -> Self {
        Sweep(Claim::ALL.iter().map(|&c| ClaimEntry::new(c)).collect())
    }

    fn at(&mut self, c: Claim) -> &mut ClaimEntry {
        &mut self.0[c as usize]
    }

    fn merge(&mut self, other: Sweep) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            a.merge(b);
        }
    }

    fn visit(&mut self, g: &Graph) {
        let g2 = distance2_graph_unchecked(g);
        let tfree = find_triangle(&g2).is_none();
        let diameter = match g.diameter() {
            Distance::Finite(d) => d,
            Distance::Unreachable => return,
        };
        if tfree {
            self.lemma_2_1(g);
            if diameter == 2 {
                self.obs_2_1(g);
                self.subcase_2_2(g);
            }
            if diameter >= 3 {
                self.lemma_2_3(g);
            }
        }
        self.lemma_2_2(g);
    }

    fn lemma_2_1(&mut self, g: &Graph) {
        let e = self.at(Claim::Lemma21);
        e.graphs_tested += 1;
        let found = find_induced_claw(g).or_else(|| Pattern::C6_VARIANTS.iter().find_map(|&p| find_induced_c6_variant(g, p)));
        if let Some(w) = found {
            e.violate(g, w.vertices, format!("induced {:?}", w.pattern));
        }
    }

    fn lemma_2_2(&mut self, g: &Graph) {
        if find_induced_claw(g).is_some() || stability_number(g) < 3 {
            return;
        }
        let tags = classify_neighborhoods(g);
        let e = self.at(Claim::Lemma22);
        e.graphs_tested += 1;
        let both = tags.iter().filter(|&&t| t == NeighborhoodTag::Both).count() as u64;
        *e.both_cases.as_mut().expect("lemma 2.2 entry counts both cases") += both;
        let bad: Vec<usize> = (0..g.n()).filter(|&v| matches!(tags[v], NeighborhoodTag::Neither | NeighborhoodTag::Both)).collect();
        if !bad.is_empty() {
            let detail = bad.iter().map(|&v| format!("{v}:{:?}", tags[v])).collect::<Vec<_>>().join(" ");
            e.violate(g, bad, detail);
        }
    }

    fn obs_2_1(&mut self, g: &Graph) {
        let e = self.at(Claim::Obs21);
        e.graphs_tested += 1;
        if let Some((v, x, y)) = second_neighborhood_violation(g) {
            e.violate(g, vec![v, x, y], format!("{x} and {y} in N^2({v}) are not adjacent"));
        }
    }

    fn lemma_2_3(&mut self, g: &Graph) {
        let spindle = find_spindle(g).expect("diameter is at least three");
        let moved = move_vd(g, &spindle).expect("spindle from find_spindle is valid");
        let before = crate::distance::distance2_pair_count(g);
        let after_g2 = distance2_graph_unchecked(&moved);
        let after = after_g2.edge_count();
        let mono = self.at(Claim::Lemma23Monotone);
        mono.graphs_tested += 1;
        if after < before {
            mono.violate(g, spindle.path.clone(), format!("e(G_2) {before} -> {after}"));
        }
        let keep = self.at(Claim::MovePreservesTfree);
        keep.graphs_tested += 1;
        if let Some((a, b, c)) = find_triangle(&after_g2) {
            keep.violate(g, spindle.path.clone(), format!("G_2 triangle {a} {b} {c} after the move"));
        }
    }

    fn subcase_2_2(&mut self, g: &Graph) {
        let mut tested = false;
        let mut failures = Vec::new();
        for v in 0..g.n() {
            // with B empty there is no split to choose
            if rewire_setup(g, v).map_or(true, |s| s.b.is_empty()) {
                continue;
            }
            tested = true;
            let search = best_split(g, v).expect("setup succeeded");
            if !search.nondecreasing_split_exists() {
                failures.push((v, search.setup.b, search.best.2));
            }
        }
        let e = self.at(Claim::Subcase22SplitExists);
        e.graphs_tested += u64::from(tested);
        if !failures.is_empty() {
            let detail = failures.iter().map(|(v, b, d)| format!("v={v} B={:?} best change {d}", b.to_vec())).collect::<Vec<_>>().join("; ");
            e.violate(g, failures.iter().map(|f| f.0).collect(), detail);
        }
    }
}

/// Evaluates every claim over the connected graphs on `n` vertices.
/// Witnesses are listed in generation order for any worker count.
pub fn check_lemma_claims(n: usize, workers: usize) -> Result<ClaimReport> {
    if n > CLAIMS_LIMIT {
        return Err(Error::CapExceeded { n, limit: CLAIMS_LIMIT });
    }
    let opts = EnumOptions { workers, force: false };
    let parts = fold_seeds(n, opts, |_| false, Sweep::new, |s, g| s.visit(g), |_, _| {})?;
    let mut total = Sweep::new();
    for part in parts.into_iter().flatten() {
        total.merge(part);
    }
    Ok(ClaimReport { n, claims: total.0 })
}
