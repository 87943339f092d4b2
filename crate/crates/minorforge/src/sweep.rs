//! Corpus engine: enumerate or ingest graphs, run invariants + checkers +
//! recognizers over them in parallel, and aggregate a deterministic report.
//!
//! Work is partitioned into fixed-size blocks merged in index order, so the
//! report content is byte-identical no matter how many workers run it.

use crate::codec::{from_graph6, to_graph6};
use crate::error::{Error, Result};
use crate::generators::graph_from_edge_mask;
use crate::graph::Graph;
use crate::invariants::{compute_bundle, compute_values, InvariantValues};
use crate::theorems::{
    check, formula, recognize_lemma1, recognize_lemma2, ExtremalTag, TheoremId,
};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;
use std::time::Instant;

/// Largest n for exhaustive labeled enumeration (2^21 graphs at n = 7).
pub const MAX_EXHAUSTIVE_N: usize = 7;

const BLOCK_MASKS: u64 = 1 << 14;
const BLOCK_LINES: usize = 1024;
const CHUNK_LINES: usize = 64 * BLOCK_LINES;

/// Where the graphs come from.
#[derive(Clone, Debug)]
pub enum CorpusSource {
    /// All 2^(n(n-1)/2) labeled graphs on n vertices, in edge-mask order.
    ExhaustiveLabeled { n: usize },
    /// One graph6 string per line.
    Graph6File { path: PathBuf },
    /// In-memory graph6 lines (stdin, tests); `name` appears in the report.
    Graph6Text { name: String, text: String },
}

impl CorpusSource {
    fn describe(&self) -> String {
        match self {
            CorpusSource::ExhaustiveLabeled { n } => format!("exhaustive_labeled(n={n})"),
            CorpusSource::Graph6File { path } => format!("graph6_stream({})", path.display()),
            CorpusSource::Graph6Text { name, .. } => format!("graph6_stream({name})"),
        }
    }
}

/// Optional predicates; cheap ones run before invariants are computed.
#[derive(Clone, Debug, Default)]
pub struct SweepFilter {
    pub min_edges: Option<usize>,
    pub require_non_complete: bool,
    pub alpha_eq: Option<u32>,
    pub omega_eq: Option<u32>,
    pub connected_only: bool,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub source: CorpusSource,
    pub filter: SweepFilter,
    /// Empty means all seven.
    pub theorems: Vec<TheoremId>,
    /// 0 uses the global rayon default.
    pub workers: usize,
}

impl SweepConfig {
    pub fn new(source: CorpusSource) -> Self {
        SweepConfig {
            source,
            filter: SweepFilter::default(),
            theorems: Vec::new(),
            workers: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct TheoremCounts {
    pub applicable: u64,
    pub holds: u64,
    pub strict: u64,
    pub equality: u64,
}

/// checked = graphs in the check's scope; confirmed = scope where the check
/// passed; positive = graphs where the recognizer accepted / the equality or
/// antecedent held.
#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckCounts {
    pub checked: u64,
    pub confirmed: u64,
    pub positive: u64,
}

impl CheckCounts {
    fn record(&mut self, ok: bool, positive: bool) {
        self.checked += 1;
        self.confirmed += u64::from(ok);
        self.positive += u64::from(positive);
    }
}

/// Per-graph confirmations of the equality characterizations and the
/// structural facts that follow from small Hadwiger number.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct RecognizerAgreement {
    /// accepted ⟺ h = 2 ∧ α = n/2 ∧ at least one edge
    pub lemma1_forest_pm: CheckCounts,
    /// accepted ⟺ h = ω = n/2 ∧ α = 2
    pub lemma2_twin_cliques: CheckCounts,
    /// MAIN equality ⟺ some extremal class matches (scope: MAIN applicable)
    pub main_equality_iff_class: CheckCounts,
    /// 3h = n+ω ⟺ h = ω = n/2 (scope: α = 2)
    pub alpha2_equality_iff: CheckCounts,
    /// (2α−1)(h−1)+1 = n ⟺ h = 2 ∧ α = n/2 (scope: ω = 2)
    pub omega2_equality_iff: CheckCounts,
    /// h = 2 ⟹ forest with an edge
    pub h2_implies_forest: CheckCounts,
    /// h = 3 ⟹ α ≥ ⌈n/3⌉
    pub h3_implies_alpha_third: CheckCounts,
    /// χ ≥ 4 ⟹ h ≥ 4
    pub chi4_implies_h4: CheckCounts,
}

impl RecognizerAgreement {
    fn merge(&mut self, other: &RecognizerAgreement) {
        for (a, b) in [
            (&mut self.lemma1_forest_pm, &other.lemma1_forest_pm),
            (&mut self.lemma2_twin_cliques, &other.lemma2_twin_cliques),
            (
                &mut self.main_equality_iff_class,
                &other.main_equality_iff_class,
            ),
            (&mut self.alpha2_equality_iff, &other.alpha2_equality_iff),
            (&mut self.omega2_equality_iff, &other.omega2_equality_iff),
            (&mut self.h2_implies_forest, &other.h2_implies_forest),
            (
                &mut self.h3_implies_alpha_third,
                &other.h3_implies_alpha_third,
            ),
            (&mut self.chi4_implies_h4, &other.chi4_implies_h4),
        ] {
            a.checked += b.checked;
            a.confirmed += b.confirmed;
            a.positive += b.positive;
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EqualityWitness {
    pub g6: String,
    pub theorem: TheoremId,
    pub classes: Vec<ExtremalTag>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Anomaly {
    pub g6: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ParseErrorRecord {
    pub line: usize,
    pub message: String,
}

/// Aggregate result of a sweep. All fields except `runtime_ms` are a pure
/// function of the corpus and configuration.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub source: String,
    pub total: u64,
    pub filtered_out: u64,
    pub skipped: u64,
    pub theorems: BTreeMap<TheoremId, TheoremCounts>,
    pub equality_witnesses: Vec<EqualityWitness>,
    pub anomalies: Vec<Anomaly>,
    pub recognizer_agreement: RecognizerAgreement,
    /// Cross-edge counts seen among twin-clique graphs, as exploratory data.
    pub lemma2_cross_edges: BTreeMap<usize, u64>,
    pub parse_errors: Vec<ParseErrorRecord>,
    pub runtime_ms: u64,
}

impl SweepSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }

    /// Serialization with the wall-clock field zeroed; this is the form the
    /// determinism contract (identical bytes across worker counts) covers.
    pub fn to_canonical_json(&self) -> String {
        let mut c = self.clone();
        c.runtime_ms = 0;
        serde_json::to_string(&c).expect("summary serializes")
    }

    pub fn has_anomalies(&self) -> bool {
        !self.anomalies.is_empty()
    }
}

#[derive(Default)]
struct Partial {
    total: u64,
    filtered_out: u64,
    skipped: u64,
    theorems: [TheoremCounts; 7],
    witnesses: Vec<EqualityWitness>,
    anomalies: Vec<Anomaly>,
    parse_errors: Vec<ParseErrorRecord>,
    agreement: RecognizerAgreement,
    lemma2_cross_edges: BTreeMap<usize, u64>,
}

impl Partial {
    fn merge(&mut self, other: Partial) {
        self.total += other.total;
        self.filtered_out += other.filtered_out;
        self.skipped += other.skipped;
        for (a, b) in self.theorems.iter_mut().zip(other.theorems) {
            a.applicable += b.applicable;
            a.holds += b.holds;
            a.strict += b.strict;
            a.equality += b.equality;
        }
        self.witnesses.extend(other.witnesses);
        self.anomalies.extend(other.anomalies);
        self.parse_errors.extend(other.parse_errors);
        self.agreement.merge(&other.agreement);
        for (k, v) in other.lemma2_cross_edges {
            *self.lemma2_cross_edges.entry(k).or_insert(0) += v;
        }
    }
}

fn theorem_index(id: TheoremId) -> usize {
    TheoremId::ALL.iter().position(|&t| t == id).unwrap()
}

fn passes_cheap_filters(g: &Graph, f: &SweepFilter) -> bool {
    if let Some(min) = f.min_edges {
        if g.m() < min {
            return false;
        }
    }
    if f.require_non_complete && g.is_complete() {
        return false;
    }
    if f.connected_only && !g.is_connected() {
        return false;
    }
    true
}

/// Re-derives the witness from its own graph6 encoding before admitting it:
/// round-trip the string, recompute a full bundle, re-check equality.
fn reverify_witness(g: &Graph, id: TheoremId, out: &mut Partial) {
    let g6 = to_graph6(g);
    let anomaly = |detail: String| Anomaly {
        g6: g6.clone(),
        kind: "WITNESS_REVERIFICATION".to_string(),
        detail,
    };
    let reverified = from_graph6(&g6)
        .map_err(|e| e.to_string())
        .and_then(|g2| {
            compute_bundle(&g2, true)
                .map_err(|e| e.to_string())
                .map(|b| (g2, b))
        });
    match reverified {
        Ok((g2, bundle)) => {
            let report = check(id, &g2, &bundle);
            if report.applicable && report.equality {
                out.witnesses.push(EqualityWitness {
                    g6,
                    theorem: id,
                    classes: report.extremal_class.unwrap_or_default(),
                });
            } else {
                out.anomalies.push(anomaly(format!(
                    "{id} equality did not reproduce from the round-tripped graph"
                )));
            }
        }
        Err(e) => out.anomalies.push(anomaly(e)),
    }
}

fn process_graph(g: &Graph, filter: &SweepFilter, checks: &[TheoremId], out: &mut Partial) {
    if !passes_cheap_filters(g, filter) {
        out.filtered_out += 1;
        return;
    }
    let vals: InvariantValues = match compute_values(g, true) {
        Ok(v) => v,
        Err(e) => {
            out.skipped += 1;
            out.parse_errors.push(ParseErrorRecord {
                line: 0,
                message: format!("invariants unavailable: {e}"),
            });
            return;
        }
    };
    if filter.alpha_eq.is_some_and(|a| vals.alpha != a)
        || filter.omega_eq.is_some_and(|w| vals.omega != w)
    {
        out.filtered_out += 1;
        return;
    }
    out.total += 1;
    let anomaly = |kind: &str, detail: String| Anomaly {
        g6: to_graph6(g),
        kind: kind.to_string(),
        detail,
    };

    for &id in checks {
        let (applicable, lhs, rhs) = formula(id, &vals);
        let c = &mut out.theorems[theorem_index(id)];
        if !applicable {
            continue;
        }
        c.applicable += 1;
        if lhs > rhs {
            c.holds += 1;
            c.strict += 1;
        } else if lhs == rhs {
            c.holds += 1;
            c.equality += 1;
            reverify_witness(g, id, out);
        } else {
            out.anomalies.push(anomaly(
                "THEOREM_VIOLATION",
                format!("{id}: lhs {lhs} < rhs {rhs}"),
            ));
        }
    }

    // Equality characterizations and structural facts, independent of the
    // configured theorem subset.
    let n = vals.n;
    let alpha = vals.alpha as usize;
    let omega = vals.omega as usize;
    let h = vals.h as usize;
    let chi = vals.chi.expect("sweeps always compute chi") as usize;

    let lemma1_accepted = recognize_lemma1(g).is_some();
    let lemma1_expected = h == 2 && 2 * alpha == n && vals.m >= 1;
    out.agreement
        .lemma1_forest_pm
        .record(lemma1_accepted == lemma1_expected, lemma1_accepted);
    if lemma1_accepted != lemma1_expected {
        out.anomalies.push(anomaly(
            "LEMMA1_BICONDITIONAL",
            format!("recognizer accepted={lemma1_accepted} but h=2∧α=n/2∧m≥1 is {lemma1_expected}"),
        ));
    }

    let lemma2_accepted = recognize_lemma2(g, vals.h).is_some();
    let lemma2_expected = h == omega && 2 * h == n && alpha == 2;
    out.agreement
        .lemma2_twin_cliques
        .record(lemma2_accepted == lemma2_expected, lemma2_accepted);
    if lemma2_accepted != lemma2_expected {
        out.anomalies.push(anomaly(
            "LEMMA2_BICONDITIONAL",
            format!("recognizer accepted={lemma2_accepted} but h=ω=n/2∧α=2 is {lemma2_expected}"),
        ));
    }
    if lemma2_accepted {
        let half = n / 2;
        let cross = vals.m - 2 * (half * half.saturating_sub(1) / 2);
        *out.lemma2_cross_edges.entry(cross).or_insert(0) += 1;
    }

    let (main_applicable, main_lhs, main_rhs) = formula(TheoremId::Main, &vals);
    if main_applicable {
        let eq = main_lhs == main_rhs;
        let classified = lemma1_accepted || lemma2_accepted;
        out.agreement
            .main_equality_iff_class
            .record(eq == classified, eq);
        if eq != classified {
            out.anomalies.push(anomaly(
                "MAIN_EQUALITY_CLASSIFICATION",
                format!("equality={eq} but extremal class match is {classified}"),
            ));
        }
    }

    if alpha == 2 {
        let eq = 3 * h == n + omega;
        let expected = h == omega && 2 * h == n;
        out.agreement.alpha2_equality_iff.record(eq == expected, eq);
        if eq != expected {
            out.anomalies.push(anomaly(
                "ALPHA2_EQUALITY_CHARACTERIZATION",
                format!("equality={eq} but h=ω=n/2 is {expected}"),
            ));
        }
    }

    if omega == 2 {
        let eq = (2 * alpha - 1) * (h - 1) + 1 == n;
        let expected = h == 2 && 2 * alpha == n;
        out.agreement.omega2_equality_iff.record(eq == expected, eq);
        if eq != expected {
            out.anomalies.push(anomaly(
                "OMEGA2_EQUALITY_CHARACTERIZATION",
                format!("equality={eq} but h=2∧α=n/2 is {expected}"),
            ));
        }
    }

    if h == 2 {
        let ok = vals.forest && vals.m >= 1;
        out.agreement.h2_implies_forest.record(ok, true);
        if !ok {
            out.anomalies.push(anomaly(
                "H2_FOREST",
                "h = 2 graph is not a forest with an edge".to_string(),
            ));
        }
    }
    if h == 3 {
        let ok = alpha >= n.div_ceil(3);
        out.agreement.h3_implies_alpha_third.record(ok, true);
        if !ok {
            out.anomalies.push(anomaly(
                "H3_ALPHA_BOUND",
                format!("h = 3 graph has α = {alpha} < ⌈{n}/3⌉"),
            ));
        }
    }
    if chi >= 4 {
        let ok = h >= 4;
        out.agreement.chi4_implies_h4.record(ok, true);
        if !ok {
            out.anomalies.push(anomaly(
                "CHI4_H4",
                format!("χ = {chi} graph has h = {h} < 4"),
            ));
        }
    }
}

/// All labeled graphs on n vertices (1 ≤ n ≤ 7), in lexicographic edge-mask
/// order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let bits = n * (n - 1) / 2;
    Ok((0..1u64 << bits).map(move |mask| graph_from_edge_mask(n, mask)))
}

fn run_exhaustive(n: usize, filter: &SweepFilter, checks: &[TheoremId]) -> Result<Partial> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let total_masks = 1u64 << (n * (n - 1) / 2);
    let blocks = total_masks.div_ceil(BLOCK_MASKS);
    let partials: Vec<Partial> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut p = Partial::default();
            let lo = b * BLOCK_MASKS;
            let hi = (lo + BLOCK_MASKS).min(total_masks);
            for mask in lo..hi {
                let g = graph_from_edge_mask(n, mask);
                process_graph(&g, filter, checks, &mut p);
            }
            p
        })
        .collect();
    let mut merged = Partial::default();
    for p in partials {
        merged.merge(p);
    }
    Ok(merged)
}

fn process_lines(
    lines: &[(usize, String)],
    filter: &SweepFilter,
    checks: &[TheoremId],
) -> Partial {
    let partials: Vec<Partial> = lines
        .par_chunks(BLOCK_LINES)
        .map(|block| {
            let mut p = Partial::default();
            for (line_no, line) in block {
                let trimmed = line.trim();
                if trimmed.is_empty() {
                    continue;
                }
                match from_graph6(trimmed) {
                    Ok(g) if g.n() == 0 => {
                        p.skipped += 1;
                        p.parse_errors.push(ParseErrorRecord {
                            line: *line_no,
                            message: "0-vertex graph unsupported in sweeps".to_string(),
                        });
                    }
                    Ok(g) => process_graph(&g, filter, checks, &mut p),
                    Err(e) => {
                        p.skipped += 1;
                        p.parse_errors.push(ParseErrorRecord {
                            line: *line_no,
                            message: e.to_string(),
                        });
                    }
                }
            }
            p
        })
        .collect();
    let mut merged = Partial::default();
    for p in partials {
        merged.merge(p);
    }
    merged
}

fn run_stream<R: BufRead>(
    reader: R,
    filter: &SweepFilter,
    checks: &[TheoremId],
) -> Result<Partial> {
    let mut merged = Partial::default();
    let mut buffer: Vec<(usize, String)> = Vec::with_capacity(CHUNK_LINES);
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Io(e.to_string()))?;
        buffer.push((idx + 1, line));
        if buffer.len() == CHUNK_LINES {
            merged.merge(process_lines(&buffer, filter, checks));
            buffer.clear();
        }
    }
    if !buffer.is_empty() {
        merged.merge(process_lines(&buffer, filter, checks));
    }
    Ok(merged)
}

/// Runs the sweep. The returned summary's content is independent of
/// `workers`; see [`SweepSummary::to_canonical_json`].
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut checks = if config.theorems.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        config.theorems.clone()
    };
    checks.sort_unstable();
    checks.dedup();

    let body = || -> Result<Partial> {
        match &config.source {
            CorpusSource::ExhaustiveLabeled { n } => run_exhaustive(*n, &config.filter, &checks),
            CorpusSource::Graph6File { path } => {
                let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                run_stream(BufReader::new(file), &config.filter, &checks)
            }
            CorpusSource::Graph6Text { text, .. } => {
                run_stream(BufReader::new(text.as_bytes()), &config.filter, &checks)
            }
        }
    };
    let mut partial = if config.workers == 0 {
        body()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        pool.install(body)?
    };

    partial
        .witnesses
        .sort_by(|a, b| (&a.g6, a.theorem).cmp(&(&b.g6, b.theorem)));
    partial
        .anomalies
        .sort_by(|a, b| (&a.g6, &a.kind, &a.detail).cmp(&(&b.g6, &b.kind, &b.detail)));
    partial.parse_errors.sort_by_key(|e| e.line);

    let theorems = checks
        .iter()
        .map(|&id| (id, partial.theorems[theorem_index(id)]))
        .collect();

    Ok(SweepSummary {
        source: config.source.describe(),
        total: partial.total,
        filtered_out: partial.filtered_out,
        skipped: partial.skipped,
        theorems,
        equality_witnesses: partial.witnesses,
        anomalies: partial.anomalies,
        recognizer_agreement: partial.agreement,
        lemma2_cross_edges: partial.lemma2_cross_edges,
        parse_errors: partial.parse_errors,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
