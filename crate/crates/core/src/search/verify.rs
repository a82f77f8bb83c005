//! Exhaustive check of `e(G_2) <= floor((n-1)^2/4) + 1` over connected graphs
//! whose distance-two graph is triangle-free.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::enumerate::{fold_seeds, seed_count, EnumOptions};
use crate::canon::canonical_labeling;
use crate::distance::distance2_rows;
use crate::graph::{low_bits, Bits, Graph};
use crate::structure::theorem_hypothesis_holds;
use crate::{graph6, Error, Result};

/// Largest order verified without the long-run flag.
pub const DEFAULT_CEILING: usize = 10;
/// Certificates kept per report (the lexicographically smallest ones).
pub const CERT_CAP: usize = 256;

pub fn bound_value(n: usize) -> usize {
    (n - 1) * (n - 1) / 4 + 1
}

/// `floor((n^2 - 1)/4) + 1`, the other form of the bound, kept for comparison.
pub fn alternate_bound_value(n: usize) -> usize {
    (n * n - 1) / 4 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchMode {
    Exhaustive,
    Stream,
    Anneal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin,
    Graph6File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Only consider graphs of diameter at most two.
    pub diam2_only: bool,
    pub workers: usize,
    pub source: Source,
    /// Permit orders above [`DEFAULT_CEILING`].
    pub long: bool,
    /// Subtree progress file; completed subtrees are skipped on rerun.
    pub checkpoint: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { diam2_only: false, workers: 1, source: Source::Builtin, long: false, checkpoint: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub mode: SearchMode,
    pub diam2_only: bool,
    pub graphs_seen: u64,
    /// Connected graphs (of diameter at most two, if restricted) with a
    /// triangle-free distance-two graph.
    pub graphs_admissible: u64,
    pub max_pairs: Option<usize>,
    pub bound_value: usize,
    pub bound_holds: bool,
    pub bound_formula: String,
    pub alternate_bound_formula: String,
    pub alternate_bound_value: usize,
    /// Number of admissible graphs attaining `max_pairs`.
    pub extremal_count: u64,
    /// Canonical graph6 strings of extremal graphs, sorted, at most [`CERT_CAP`].
    pub extremal_certs: Vec<String>,
    /// Maximum over admissible graphs having a vertex whose neighbourhood is
    /// covered by two cliques.
    pub hypothesis_max_pairs: Option<usize>,
    #[serde(skip)]
    pub wall_time_seconds: f64,
    #[serde(skip)]
    pub worker_count: usize,
}

impl SearchReport {
    pub(crate) fn from_tally(n: usize, mode: SearchMode, diam2_only: bool, t: Tally) -> Self {
        let bound = bound_value(n);
        SearchReport {
            n,
            mode,
            diam2_only,
            graphs_seen: t.seen,
            graphs_admissible: t.admissible,
            max_pairs: t.max_pairs,
            bound_value: bound,
            bound_holds: t.max_pairs.is_none_or(|m| m <= bound),
            bound_formula: "floor((n-1)^2/4) + 1".into(),
            alternate_bound_formula: "floor((n^2-1)/4) + 1".into(),
            alternate_bound_value: alternate_bound_value(n),
            extremal_count: t.extremal_count,
            extremal_certs: t.certs.into_iter().collect(),
            hypothesis_max_pairs: t.hypothesis_max,
            wall_time_seconds: 0.0,
            worker_count: 1,
        }
    }

    /// Checks the report's internal consistency.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidReport(m.into()));
        if let Some(m) = self.max_pairs {
            if m > self.n * (self.n - 1) / 2 {
                return fail("max_pairs exceeds n(n-1)/2");
            }
        }
        if self.bound_holds != self.max_pairs.is_none_or(|m| m <= self.bound_value) {
            return fail("bound_holds disagrees with max_pairs");
        }
        if (self.graphs_admissible > 0) != self.max_pairs.is_some() {
            return fail("max_pairs must be present exactly when graphs are admissible");
        }
        if self.graphs_admissible > 0 && self.extremal_certs.is_empty() {
            return fail("no certificates for a nonempty admissible class");
        }
        if self.hypothesis_max_pairs > self.max_pairs {
            return fail("hypothesis_max_pairs exceeds max_pairs");
        }
        if self.extremal_certs.windows(2).any(|w| w[0] >= w[1]) {
            return fail("certificates are not sorted and distinct");
        }
        Ok(())
    }
}

/// Mergeable partial result: counters, a maximum and the smallest
/// certificates attaining it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Tally {
    seen: u64,
    admissible: u64,
    max_pairs: Option<usize>,
    extremal_count: u64,
    certs: BTreeSet<String>,
    hypothesis_max: Option<usize>,
}

impl Tally {
    pub(crate) fn merge(&mut self, other: Tally) {
        self.seen += other.seen;
        self.admissible += other.admissible;
        match other.max_pairs.cmp(&self.max_pairs) {
            std::cmp::Ordering::Greater => {
                self.max_pairs = other.max_pairs;
                self.extremal_count = other.extremal_count;
                self.certs = other.certs;
            }
            std::cmp::Ordering::Equal => {
                self.extremal_count += other.extremal_count;
                self.certs.extend(other.certs);
                self.trim();
            }
            std::cmp::Ordering::Less => {}
        }
        self.hypothesis_max = self.hypothesis_max.max(other.hypothesis_max);
    }

    fn trim(&mut self) {
        while self.certs.len() > CERT_CAP {
            self.certs.pop_last();
        }
    }

    pub(crate) fn seen_one(&mut self) {
        self.seen += 1;
    }

    pub(crate) fn record(&mut self, g: &Graph, diam2_only: bool) {
        self.seen += 1;
        let Some(pairs) = admissible_pairs(g, diam2_only) else { return };
        self.admit(g, pairs);
    }

    pub(crate) fn admit(&mut self, g: &Graph, pairs: usize) {
        self.admissible += 1;
        if Some(pairs) >= self.max_pairs {
            if Some(pairs) > self.max_pairs {
                self.max_pairs = Some(pairs);
                self.extremal_count = 0;
                self.certs.clear();
            }
            self.extremal_count += 1;
            self.certs.insert(canonical_graph6(g));
            self.trim();
        }
        if Some(pairs) > self.hypothesis_max && theorem_hypothesis_holds(g).is_some() {
            self.hypothesis_max = Some(pairs);
        }
    }
}

pub(crate) fn canonical_graph6(g: &Graph) -> String {
    let h = canonical_labeling(g).canonical_graph(g);
    graph6::encode(&h).expect("search orders fit in graph6")
}

/// `e(G_2)` when `g` is connected, has a triangle-free distance-two graph
/// and, if requested, diameter at most two.
pub(crate) fn admissible_pairs(g: &Graph, diam2_only: bool) -> Option<usize> {
    let n = g.n();
    let mut rows = [0u64; 64];
    distance2_rows(g, &mut rows);
    let full = low_bits(n);
    let mut within_two = true;
    for v in 0..n {
        if rows[v] | g.row(v) | 1u64 << v != full {
            within_two = false;
            break;
        }
    }
    if diam2_only && !within_two {
        return None;
    }
    if !within_two && !g.is_connected() {
        return None;
    }
    let mut pairs = 0usize;
    for v in 0..n {
        let r = rows[v];
        pairs += r.count_ones() as usize;
        for u in Bits(r & !low_bits(v + 1)) {
            if rows[u] & r != 0 {
                return None;
            }
        }
    }
    Some(pairs / 2)
}

/// Runs the bound check over all connected classes on `n` vertices, or over
/// a graph6 file.
pub fn verify_bound(n: usize, opts: &VerifyOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let mut report = match &opts.source {
        Source::Builtin => {
            if n > DEFAULT_CEILING && !opts.long {
                return Err(Error::CapExceeded { n, limit: DEFAULT_CEILING });
            }
            let tally = run_builtin(n, opts)?;
            SearchReport::from_tally(n, SearchMode::Exhaustive, opts.diam2_only, tally)
        }
        Source::Graph6File(path) => {
            let reader = BufReader::new(File::open(path)?);
            verify_graphs(n, opts.diam2_only, graph6::read_stream(reader))?
        }
    };
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    report.worker_count = opts.workers.max(1);
    Ok(report)
}

/// Bound check over an explicit stream of graphs of order `n`. Disconnected
/// graphs are counted as seen but never admissible.
pub fn verify_graphs<I>(n: usize, diam2_only: bool, graphs: I) -> Result<SearchReport>
where
    I: IntoIterator<Item = Result<Graph>>,
{
    let mut tally = Tally::default();
    for (i, g) in graphs.into_iter().enumerate() {
        let g = g?;
        if g.n() != n {
            return Err(Error::Stream {
                line: i + 1,
                source: Box::new(Error::HypothesisFailed(format!("graph has {} vertices, expected {n}", g.n()))),
            });
        }
        tally.record(&g, diam2_only);
    }
    Ok(SearchReport::from_tally(n, SearchMode::Stream, diam2_only, tally))
}

#[derive(Serialize, Deserialize)]
struct CheckpointHeader {
    n: usize,
    diam2_only: bool,
    seeds: usize,
}

#[derive(Serialize, Deserialize)]
struct CheckpointEntry {
    seed: usize,
    tally: Tally,
}

fn run_builtin(n: usize, opts: &VerifyOptions) -> Result<Tally> {
    let eopts = EnumOptions { workers: opts.workers, force: opts.long };
    let diam2_only = opts.diam2_only;
    let record = |t: &mut Tally, g: &Graph| t.record(g, diam2_only);

    let Some(path) = &opts.checkpoint else {
        let parts = fold_seeds(n, eopts, |_| false, Tally::default, record, |_, _| {})?;
        return Ok(merge_all(parts.into_iter().flatten()));
    };

    let header = CheckpointHeader { n, diam2_only, seeds: seed_count(n, opts.workers) };
    let mut finished: BTreeMap<usize, Tally> = BTreeMap::new();
    if path.exists() {
        let mut lines = BufReader::new(File::open(path)?).lines();
        let first: CheckpointHeader = match lines.next() {
            Some(line) => serde_json::from_str(&line?)?,
            None => return Err(Error::InvalidReport("empty checkpoint file".into())),
        };
        if first.n != header.n || first.diam2_only != header.diam2_only || first.seeds != header.seeds {
            return Err(Error::InvalidReport("checkpoint was written for a different run".into()));
        }
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: CheckpointEntry = serde_json::from_str(&line)?;
            finished.insert(entry.seed, entry.tally);
        }
    } else {
        let mut f = File::create(path)?;
        writeln!(f, "{}", serde_json::to_string(&header)?)?;
    }
    let log = Mutex::new(OpenOptions::new().append(true).open(path)?);
    let write_failed = Mutex::new(None);
    let parts = fold_seeds(n, eopts, |i| finished.contains_key(&i), Tally::default, record, |seed, tally| {
        let line = serde_json::to_string(&CheckpointEntry { seed, tally: tally.clone() }).expect("tally serialises");
        let mut f = log.lock().expect("checkpoint lock");
        if let Err(e) = writeln!(f, "{line}").and_then(|_| f.flush()) {
            *write_failed.lock().expect("error slot") = Some(e);
        }
    })?;
    if let Some(e) = write_failed.into_inner().expect("error slot") {
        return Err(Error::Io(e));
    }
    Ok(merge_all(parts.into_iter().flatten().chain(finished.into_values())))
}

fn merge_all(parts: impl Iterator<Item = Tally>) -> Tally {
    parts.fold(Tally::default(), |mut acc, t| {
        acc.merge(t);
        acc
    })
}
