//! Corpus-wide checks: soundness of the proven bounds, the two conjectured
//! bounds, and equality-case search.
//!
//! Graphs are evaluated independently and folded into a [`CorpusSummary`]
//! with a commutative merge; [`CorpusSummary::finish`] sorts every list so
//! the result does not depend on scheduling or worker count.

use std::collections::BTreeMap;
use std::io::BufRead;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{report_from_parts, BoundName, BoundReport};
use crate::enumeration::{enumerate_all, enumerate_connected, EnumerationError};
use crate::graph::Graph;
use crate::graph6::{stream_corpus, write_graph6, CorpusError};
use crate::spectral::{eigenvalues, spectral_stats, Spectrum};

/// Default absolute tolerance for bound comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default window for equality search.
pub const DEFAULT_EQUALITY_EPS: f64 = 1e-7;

/// Bounds accepted by equality search.
pub const EQUALITY_BOUNDS: [BoundName; 5] = [
    BoundName::CorNice,
    BoundName::Main,
    BoundName::RankBound,
    BoundName::Caporossi,
    BoundName::McClellandLower,
];

const CHUNK: usize = 4096;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("bound `{0}` is not supported by equality search")]
    UnsupportedEqualityBound(BoundName),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    /// Every proven bound and the dominance relations between them.
    Verify { bounds: Option<Vec<BoundName>> },
    /// The two conjectured bounds on connected graphs.
    Conjectures,
    /// Graphs with `|E - bound| <= eps`.
    Equality { bound: BoundName, eps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub zero_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tol: DEFAULT_TOL, zero_tol: crate::spectral::DEFAULT_ZERO_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub bound: String,
    pub bound_value: f64,
    pub energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityHit {
    pub graph6: String,
    pub bound: BoundName,
    pub slack: f64,
    /// Set for the `cor_nice` search only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete_bipartite: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extreme {
    pub graph6: String,
    pub slack: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusSummary {
    /// Graphs decoded or generated.
    pub graphs_seen: usize,
    /// Graphs on which the checks ran.
    pub graphs_checked: usize,
    /// Gated-out graphs plus undecodable lines.
    pub graphs_skipped: usize,
    pub violations: Vec<Violation>,
    pub equality_hits: Vec<EqualityHit>,
    /// Smallest slack seen per bound.
    pub extremes: BTreeMap<BoundName, Extreme>,
    /// Decode or numerical failures that were skipped.
    pub errors: Vec<String>,
}

impl CorpusSummary {
    pub fn merge(mut self, other: CorpusSummary) -> CorpusSummary {
        self.graphs_seen += other.graphs_seen;
        self.graphs_checked += other.graphs_checked;
        self.graphs_skipped += other.graphs_skipped;
        self.violations.extend(other.violations);
        self.equality_hits.extend(other.equality_hits);
        self.errors.extend(other.errors);
        for (name, e) in other.extremes {
            self.note_extreme(name, e);
        }
        self
    }

    fn note_extreme(&mut self, name: BoundName, e: Extreme) {
        match self.extremes.get(&name) {
            Some(cur) if (cur.slack, &cur.graph6) <= (e.slack, &e.graph6) => {}
            _ => {
                self.extremes.insert(name, e);
            }
        }
    }

    /// Sorts every list by graph6 string, then bound name.
    pub fn finish(mut self) -> CorpusSummary {
        self.violations
            .sort_by(|a, b| (&a.graph6, &a.bound).cmp(&(&b.graph6, &b.bound)));
        self.equality_hits.sort_by(|a, b| (&a.graph6, a.bound).cmp(&(&b.graph6, b.bound)));
        self.errors.sort();
        self
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates one graph under `check`.
pub fn evaluate(g: &Graph, check: &Check, settings: &Settings) -> CorpusSummary {
    let mut s = CorpusSummary { graphs_seen: 1, ..Default::default() };
    let key = write_graph6(g).unwrap_or_else(|_| format!("{:?}", g));

    if matches!(check, Check::Conjectures) && (!g.is_connected() || g.edge_count() == 0) {
        s.graphs_skipped = 1;
        return s;
    }

    let spec: Spectrum<f64> = match eigenvalues(g) {
        Ok(spec) => spec,
        Err(e) => {
            s.graphs_skipped = 1;
            s.errors.push(format!("{key}: {e}"));
            return s;
        }
    };
    let stats = spectral_stats(&spec, settings.zero_tol);
    let report = report_from_parts(g, &spec, &stats);
    s.graphs_checked = 1;

    match check {
        Check::Verify { bounds } => verify_report(&mut s, &key, &report, bounds.as_deref(), settings.tol),
        Check::Conjectures => conjecture_report(&mut s, &key, &report, settings.tol),
        Check::Equality { bound, eps } => {
            if let Some(slack) = report.slack_of(*bound) {
                s.note_extreme(*bound, Extreme { graph6: key.clone(), slack });
                if slack.abs() <= *eps {
                    let complete_bipartite =
                        (*bound == BoundName::CorNice).then(|| g.is_complete_bipartite());
                    s.equality_hits.push(EqualityHit { graph6: key, bound: *bound, slack, complete_bipartite });
                }
            }
        }
    }
    s
}

fn violation(key: &str, bound: &str, value: f64, energy: f64, detail: Option<String>) -> Violation {
    Violation { graph6: key.to_string(), bound: bound.to_string(), bound_value: value, energy, detail, spectrum: None }
}

fn verify_report(
    s: &mut CorpusSummary,
    key: &str,
    r: &BoundReport<f64>,
    filter: Option<&[BoundName]>,
    tol: f64,
) {
    let wanted = |b: BoundName| filter.is_none_or(|f| f.contains(&b));
    let e = r.energy;

    for b in BoundName::PROVEN {
        if !wanted(b) {
            continue;
        }
        let (Some(value), Some(slack)) = (r.value(b), r.slack_of(b)) else {
            continue;
        };
        s.note_extreme(b, Extreme { graph6: key.to_string(), slack });
        if slack < -tol {
            s.violations.push(violation(key, b.as_str(), value, e, None));
        }
    }

    let mut ordered = |hi: BoundName, lo: BoundName, label: &str| {
        if !(wanted(hi) && wanted(lo)) {
            return;
        }
        if let (Some(h), Some(l)) = (r.value(hi), r.value(lo)) {
            if h < l - tol {
                s.violations.push(violation(key, label, h, e, Some(format!("{hi} = {h} < {lo} = {l}"))));
            }
        }
    };
    ordered(BoundName::RankBound, BoundName::Main, "chain:rank_bound>=main");
    ordered(BoundName::Main, BoundName::CorNice, "chain:main>=cor_nice");
    ordered(BoundName::Main, BoundName::Amgm, "chain:main>=amgm");
    if r.flags.is_triangle_free && r.m > 0 {
        ordered(BoundName::CorNice, BoundName::Caporossi, "triangle_free:cor_nice>=caporossi");
    }

    if r.flags.is_connected && r.flags.is_regular && r.m > 0 && wanted(BoundName::CorNice) {
        if let Some(c) = r.lower.cor_nice {
            if (c - r.n as f64).abs() > tol {
                s.violations.push(violation(key, "regular:cor_nice==n", c, e, Some(format!("n = {}", r.n))));
            }
        }
    }

    if filter.is_none() && r.flags.is_connected {
        if let Some(irr) = r.irregularity {
            if irr.beta < irr.epsilon - tol || irr.epsilon < 1.0 - tol {
                s.violations.push(violation(
                    key,
                    "irregularity:beta>=epsilon>=1",
                    irr.epsilon,
                    e,
                    Some(format!("beta = {}, epsilon = {}", irr.beta, irr.epsilon)),
                ));
            }
        }
    }
}

fn conjecture_report(s: &mut CorpusSummary, key: &str, r: &BoundReport<f64>, tol: f64) {
    for b in BoundName::CONJECTURAL {
        let (Some(value), Some(slack)) = (r.value(b), r.slack_of(b)) else {
            continue;
        };
        s.note_extreme(b, Extreme { graph6: key.to_string(), slack });
        if slack < -tol {
            let mut v = violation(key, b.as_str(), value, r.energy, None);
            v.spectrum = Some(r.spectrum.clone());
            s.violations.push(v);
        }
    }
}

/// Where graphs come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    /// Connected graphs on `n` vertices, one per isomorphism class.
    Enumerate(usize),
    /// Every graph on `n` vertices, one per isomorphism class.
    EnumerateAll(usize),
}

/// Runs `check` over generated graphs.
pub fn run_generated(
    source: &Source,
    check: &Check,
    settings: &Settings,
    jobs: Option<usize>,
) -> Result<CorpusSummary, HarnessError> {
    validate(check)?;
    let pool = Pool::new(jobs)?;
    let graphs = match *source {
        Source::Enumerate(n) => enumerate_connected(n)?,
        Source::EnumerateAll(n) => enumerate_all(n)?,
    };
    Ok(pool.evaluate(&graphs, check, settings).finish())
}

/// Runs `check` over a graph6 stream, decoding on the calling thread and
/// evaluating `CHUNK` graphs at a time on the pool. Undecodable lines abort
/// the run unless `skip_bad` is set, in which case they count as skipped.
pub fn run_stream<R: BufRead>(
    reader: R,
    check: &Check,
    settings: &Settings,
    jobs: Option<usize>,
    skip_bad: bool,
) -> Result<CorpusSummary, HarnessError> {
    validate(check)?;
    let pool = Pool::new(jobs)?;
    let mut summary = CorpusSummary::default();
    let mut batch = Vec::with_capacity(CHUNK);
    for item in stream_corpus(reader) {
        match item {
            Ok((_, g)) => batch.push(g),
            Err(e @ CorpusError::Decode { .. }) if skip_bad => {
                summary.graphs_skipped += 1;
                summary.errors.push(e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
        if batch.len() == CHUNK {
            summary = summary.merge(pool.evaluate(&batch, check, settings));
            batch.clear();
        }
    }
    summary = summary.merge(pool.evaluate(&batch, check, settings));
    Ok(summary.finish())
}

fn validate(check: &Check) -> Result<(), HarnessError> {
    match check {
        Check::Equality { bound, .. } if !EQUALITY_BOUNDS.contains(bound) => {
            Err(HarnessError::UnsupportedEqualityBound(*bound))
        }
        _ => Ok(()),
    }
}

/// A dedicated pool when a worker count is given, rayon's global pool otherwise.
struct Pool(Option<rayon::ThreadPool>);

impl Pool {
    fn new(jobs: Option<usize>) -> Result<Self, HarnessError> {
        jobs.map(|k| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| HarnessError::Pool(e.to_string()))
        })
        .transpose()
        .map(Pool)
    }

    fn evaluate(&self, graphs: &[Graph], check: &Check, settings: &Settings) -> CorpusSummary {
        let work = || {
            graphs
                .par_iter()
                .map(|g| evaluate(g, check, settings))
                .reduce(CorpusSummary::default, CorpusSummary::merge)
        };
        match &self.0 {
            Some(pool) => pool.install(work),
            None => work(),
        }
    }
}
