//! Exact graph invariants (α, ω, h, χ) on graphs with at most 62 vertices,
//! certified clique-minor construction via connected dominating sets, and
//! exhaustive verification of the inequalities tying those invariants
//! together — including exact classification of every equality case.
//!
//! The crate is organized along the pipeline:
//!
//! - [`graph`]: bitset graphs, derivations, predicates; [`codec`]: bit-exact
//!   graph6 and edge-list I/O; [`generators`]: standard constructions.
//! - [`invariants`]: exact solvers with witnesses.
//! - [`minor`]: minor certificates, an independent checker, and the
//!   dominating-set construction achieving (2α−1)·k ≥ n.
//! - [`theorems`]: the seven inequality checkers and the extremal-family
//!   recognizers.
//! - [`sweep`]: deterministic parallel verification over graph corpora.
//!
//! Everything is exact and deterministic: witnesses are lexicographically
//! minimal, searches have fixed tie-breaking, and sweep reports are
//! byte-identical across worker counts.

pub mod codec;
pub mod error;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod minor;
pub mod sweep;
pub mod theorems;

pub use codec::{from_edge_list_text, from_graph6, to_edge_list_text, to_graph6};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use invariants::{
    chromatic_number, clique_number, compute_bundle, compute_values, hadwiger_number,
    hadwiger_value, independence_number, max_clique, max_independent_set, InvariantBundle,
    InvariantValues,
};
pub use minor::{
    dm_clique_minor, find_induced_p3, grow_dominating_set, validate_certificate,
    CertificateVerdict, CertificateViolation, DominatingSetTrace, MinorCertificate,
};
pub use sweep::{
    enumerate_labeled, run_sweep, CorpusSource, SweepConfig, SweepFilter, SweepSummary,
};
pub use theorems::{
    check, check_all, check_values, classify_equality, recognize_lemma1, recognize_lemma2,
    ExtremalClassification, ExtremalTag, TheoremId, TheoremReport,
};
