//! Exact computation of α, ω, h and χ with witnesses.
//!
//! Independence/clique numbers come from a branch-and-bound over u64
//! candidate masks with a greedy-clique-cover upper bound. The Hadwiger
//! number uses the contraction recurrence
//! `h(G) = max(ω(G), max over edges uv of h(G/uv))`, explored as a DFS over
//! the contraction space with a visited-set keyed on a cheap normal form.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::minor::MinorCertificate;
use rustc_hash::FxHashSet;
use serde::Serialize;

/// Exact values plus witnesses for one graph.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantBundle {
    pub n: usize,
    pub m: usize,
    pub alpha: u32,
    pub alpha_witness: VertexSet,
    pub omega: u32,
    pub omega_witness: VertexSet,
    pub h: u32,
    pub h_certificate: MinorCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<u32>,
    pub connected: bool,
    pub bipartite: bool,
    pub forest: bool,
}

/// Values-only variant of [`InvariantBundle`]: what the theorem checkers and
/// sweeps actually consume. Skips witness and certificate extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantValues {
    pub n: usize,
    pub m: usize,
    pub alpha: u32,
    pub omega: u32,
    pub h: u32,
    pub chi: Option<u32>,
    pub connected: bool,
    pub bipartite: bool,
    pub forest: bool,
}

impl InvariantBundle {
    pub fn values(&self) -> InvariantValues {
        InvariantValues {
            n: self.n,
            m: self.m,
            alpha: self.alpha,
            omega: self.omega,
            h: self.h,
            chi: self.chi,
            connected: self.connected,
            bipartite: self.bipartite,
            forest: self.forest,
        }
    }
}

// ---------------------------------------------------------------------------
// Independence number
// ---------------------------------------------------------------------------

/// Greedy clique cover of the candidate set; its size bounds the independence
/// number of the induced subgraph from above (each clique holds at most one
/// independent vertex).
fn clique_cover_bound(adj: &[u64], cand: u64) -> u32 {
    let mut cliques = [0u64; 62];
    let mut k = 0usize;
    let mut bits = cand;
    'next_vertex: while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let row = adj[v];
        for c in cliques[..k].iter_mut() {
            if *c & !row == 0 {
                *c |= 1u64 << v;
                continue 'next_vertex;
            }
        }
        cliques[k] = 1u64 << v;
        k += 1;
    }
    k as u32
}

/// Branch vertex: maximum degree within the candidate set, smallest index on
/// ties. Returns None when every candidate is isolated.
fn branch_vertex(adj: &[u64], cand: u64) -> Option<usize> {
    let mut best: Option<(u32, usize)> = None;
    let mut bits = cand;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let deg = (adj[v] & cand).count_ones();
        if best.is_none_or(|(d, _)| deg > d) {
            best = Some((deg, v));
        }
    }
    match best {
        Some((0, _)) | None => None,
        Some((_, v)) => Some(v),
    }
}

fn mis_search(adj: &[u64], cand: u64, size: u32, best: &mut u32) {
    let Some(v) = branch_vertex(adj, cand) else {
        // Everything left is isolated; take it all.
        let total = size + cand.count_ones();
        if total > *best {
            *best = total;
        }
        return;
    };
    if size + clique_cover_bound(adj, cand) <= *best {
        return;
    }
    // Include v (drop its closed neighbourhood), then exclude it.
    mis_search(adj, cand & !adj[v] & !(1u64 << v), size + 1, best);
    mis_search(adj, cand & !(1u64 << v), size, best);
}

/// Exact independence number of the subgraph induced by `cand`.
fn mis_value_masked(adj: &[u64], cand: u64) -> u32 {
    let mut best = 0;
    mis_search(adj, cand, 0, &mut best);
    best
}

/// Is there an independent set of at least `target` vertices within `cand`?
fn exists_independent(adj: &[u64], cand: u64, target: u32) -> bool {
    if target == 0 {
        return true;
    }
    if cand.count_ones() < target {
        return false;
    }
    let Some(v) = branch_vertex(adj, cand) else {
        return true; // popcount ≥ target and all isolated
    };
    if clique_cover_bound(adj, cand) < target {
        return false;
    }
    exists_independent(adj, cand & !adj[v] & !(1u64 << v), target - 1)
        || exists_independent(adj, cand & !(1u64 << v), target)
}

/// Exact independence number.
pub fn independence_number(g: &Graph) -> u32 {
    mis_value_masked(g.rows(), g.vertex_set().bits())
}

pub(crate) fn independence_number_masked(g: &Graph, cand: VertexSet) -> u32 {
    mis_value_masked(g.rows(), cand.bits())
}

/// Lexicographically smallest maximum independent set within `full`, by
/// greedily committing vertices in ascending order against a feasibility
/// search.
fn mis_with_lex_witness(adj: &[u64], full: u64) -> (u32, u64) {
    let alpha = mis_value_masked(adj, full);
    let mut chosen = 0u64;
    let mut blocked = 0u64; // closed neighbourhood of chosen
    let mut need = alpha;
    for v in 0..adj.len() {
        if need == 0 {
            break;
        }
        if blocked >> v & 1 == 1 {
            continue;
        }
        let above = full & !((2u64 << v) - 1);
        let cand = above & !blocked & !adj[v];
        if exists_independent(adj, cand, need - 1) {
            chosen |= 1u64 << v;
            blocked |= adj[v] | 1u64 << v;
            need -= 1;
        }
    }
    debug_assert_eq!(chosen.count_ones(), alpha);
    (alpha, chosen)
}

/// Exact maximum independent set. Among all maximum independent sets this
/// returns the lexicographically smallest vertex set.
pub fn max_independent_set(g: &Graph) -> (u32, VertexSet) {
    let (alpha, witness) = mis_with_lex_witness(g.rows(), g.vertex_set().bits());
    (alpha, VertexSet::from_bits(witness))
}

/// Exact clique number.
pub fn clique_number(g: &Graph) -> u32 {
    independence_number(&g.complement())
}

/// Exact maximum clique: the maximum independent set of the complement, on
/// the same vertex labels.
pub fn max_clique(g: &Graph) -> (u32, VertexSet) {
    max_independent_set(&g.complement())
}

// ---------------------------------------------------------------------------
// Hadwiger number
// ---------------------------------------------------------------------------

/// Deterministic normal form: relabel vertices by ascending
/// (degree, adjacency row, index). The result is isomorphic to `g`, so two
/// graphs from different isomorphism classes can never share a key, while
/// many relabelings of the same graph do.
fn normal_form(g: &Graph) -> Graph {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| (g.degree(v), g.rows()[v], v));
    let mut pos = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let mut adj = vec![0u64; n];
    for (new, &old) in order.iter().enumerate() {
        let mut row = 0u64;
        for w in g.neighbors(old).iter() {
            row |= 1u64 << pos[w];
        }
        adj[new] = row;
    }
    Graph::from_rows(n, adj)
}

/// Packs a normalized graph on ≤ 11 vertices into a u128 (11 rows × 11 bits
/// plus 4 bits of n). Reference form of [`narrow_key`], kept for the
/// equivalence test.
#[cfg(test)]
fn pack_narrow(g: &Graph) -> u128 {
    debug_assert!(g.n() <= 11);
    let mut key = g.n() as u128;
    for (i, &row) in g.rows().iter().enumerate() {
        key |= (row as u128) << (4 + 11 * i);
    }
    key
}

#[derive(Default)]
struct VisitedSet {
    narrow: FxHashSet<u128>,
    wide: FxHashSet<Vec<u64>>,
}

impl VisitedSet {
    /// Returns true when the state is new.
    fn insert(&mut self, g: &Graph) -> bool {
        if g.n() <= 11 {
            self.narrow.insert(narrow_key(g))
        } else {
            let nf = normal_form(g);
            let mut key = nf.rows().to_vec();
            key.push(nf.n() as u64);
            self.wide.insert(key)
        }
    }
}

/// Allocation-free normal-form key for graphs on ≤ 11 vertices; equal to
/// `pack_narrow(&normal_form(g))`.
fn narrow_key(g: &Graph) -> u128 {
    let n = g.n();
    debug_assert!(n <= 11);
    let rows = g.rows();
    let mut order = [0u8; 11];
    for (i, slot) in order[..n].iter_mut().enumerate() {
        *slot = i as u8;
    }
    order[..n].sort_unstable_by_key(|&v| {
        let v = v as usize;
        (rows[v].count_ones(), rows[v], v)
    });
    let mut pos = [0u8; 11];
    for (new, &old) in order[..n].iter().enumerate() {
        pos[old as usize] = new as u8;
    }
    let mut key = n as u128;
    for (new, &old) in order[..n].iter().enumerate() {
        let mut bits = rows[old as usize];
        let mut row = 0u64;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            row |= 1u64 << pos[w];
        }
        key |= (row as u128) << (4 + 11 * new);
    }
    key
}

struct HadwigerSearch {
    track: bool,
    use_memo: bool,
    best: u32,
    best_sets: Vec<VertexSet>,
    visited: VisitedSet,
}

impl HadwigerSearch {
    /// `sets[i]` is the mask of original vertices merged into current vertex
    /// i (only maintained when `track`).
    fn explore(&mut self, g: &Graph, sets: &[u64]) {
        let n = g.n();
        // Does this state hold a clique beating the best so far? Answered as
        // a cheap decision query; the exact clique number is only extracted
        // on improvement.
        let mut comp = [0u64; 62];
        let full = g.vertex_set().bits();
        for (v, row) in g.rows().iter().enumerate() {
            comp[v] = !row & full & !(1u64 << v);
        }
        if exists_independent(&comp[..n], full, self.best + 1) {
            if self.track {
                let (omega, witness) = mis_with_lex_witness(&comp[..n], full);
                self.best = omega;
                self.best_sets = VertexSet::from_bits(witness)
                    .iter()
                    .map(|v| VertexSet::from_bits(sets[v]))
                    .collect();
            } else {
                self.best = mis_value_masked(&comp[..n], full);
            }
        }
        // Every child has n-1 vertices, so none can beat a best of n-1.
        for u in 0..n {
            if n as u32 <= self.best + 1 {
                return;
            }
            let mut higher = g.rows()[u] >> (u + 1) << (u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                let child = g.contract_edge(u, v);
                if self.use_memo && !self.visited.insert(&child) {
                    continue;
                }
                if self.track {
                    let mut child_sets = Vec::with_capacity(n - 1);
                    for (i, &s) in sets.iter().enumerate() {
                        match i {
                            _ if i == v => {}
                            _ if i == u => child_sets.push(s | sets[v]),
                            _ => child_sets.push(s),
                        }
                    }
                    self.explore(&child, &child_sets);
                } else {
                    self.explore(&child, &[]);
                }
                if n as u32 <= self.best + 1 {
                    return;
                }
            }
        }
    }
}

fn hadwiger_connected(g: &Graph, track: bool, use_memo: bool) -> (u32, Vec<VertexSet>) {
    debug_assert!(g.n() >= 1 && g.is_connected());
    if g.m() == 0 {
        return (1, vec![VertexSet::singleton(0)]);
    }
    if g.is_forest() {
        let (u, v) = g.edges()[0];
        return (2, vec![VertexSet::singleton(u), VertexSet::singleton(v)]);
    }
    let mut search = HadwigerSearch {
        track,
        use_memo,
        best: 0,
        best_sets: Vec::new(),
        visited: VisitedSet::default(),
    };
    if use_memo {
        search.visited.insert(g);
    }
    let sets: Vec<u64> = if track {
        (0..g.n()).map(|v| 1u64 << v).collect()
    } else {
        Vec::new()
    };
    search.explore(g, &sets);
    (search.best, search.best_sets)
}

pub(crate) fn hadwiger_impl(
    g: &Graph,
    track: bool,
    use_memo: bool,
) -> Result<(u32, Vec<VertexSet>)> {
    if g.n() == 0 {
        return Err(Error::Undefined);
    }
    let comps = g.components();
    if comps.len() == 1 {
        return Ok(hadwiger_connected(g, track, use_memo));
    }
    // A complete minor of order ≥ 1 lives inside one component.
    let mut best = 0;
    let mut best_sets = Vec::new();
    for c in comps {
        let (sub, map) = g.induced_subgraph(c);
        let (h, sets) = hadwiger_connected(&sub, track, use_memo);
        if h > best {
            best = h;
            if track {
                best_sets = sets
                    .into_iter()
                    .map(|s| s.iter().map(|v| map[v]).collect())
                    .collect();
            }
        }
    }
    Ok((best, best_sets))
}

/// Exact Hadwiger number with a validating certificate of the same order.
pub fn hadwiger_number(g: &Graph) -> Result<(u32, MinorCertificate)> {
    let (h, branch_sets) = hadwiger_impl(g, true, true)?;
    Ok((
        h,
        MinorCertificate {
            host_n: g.n(),
            branch_sets,
        },
    ))
}

/// Exact Hadwiger number without certificate extraction (cheaper; used by
/// sweeps).
pub fn hadwiger_value(g: &Graph) -> Result<u32> {
    Ok(hadwiger_impl(g, false, true)?.0)
}

// ---------------------------------------------------------------------------
// Chromatic number
// ---------------------------------------------------------------------------

fn colorable_from(g: &Graph, order: &[usize], k: u32, idx: usize, masks: &mut [u64], used: u32) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let row = g.rows()[v];
    // Symmetry breaking: at most one brand-new color per vertex.
    let limit = (used + 1).min(k);
    for c in 0..limit as usize {
        if masks[c] & row == 0 {
            masks[c] |= 1u64 << v;
            let ok = colorable_from(g, order, k, idx + 1, masks, used.max(c as u32 + 1));
            masks[c] &= !(1u64 << v);
            if ok {
                return true;
            }
        }
    }
    false
}

/// Exact chromatic number: iterative deepening on k starting at ω, with an
/// exhaustive search in descending-degree vertex order.
pub fn chromatic_number(g: &Graph) -> Result<u32> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Undefined);
    }
    if g.m() == 0 {
        return Ok(1);
    }
    let lower = clique_number(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut masks = [0u64; 62];
    for k in lower..=n as u32 {
        if colorable_from(g, &order, k, 0, &mut masks[..k as usize], 0) {
            return Ok(k);
        }
    }
    unreachable!("every graph on n vertices is n-colorable")
}

// ---------------------------------------------------------------------------
// Bundles
// ---------------------------------------------------------------------------

/// Full bundle with witnesses and a Hadwiger certificate.
pub fn compute_bundle(g: &Graph, want_chi: bool) -> Result<InvariantBundle> {
    if g.n() == 0 {
        return Err(Error::Undefined);
    }
    let (alpha, alpha_witness) = max_independent_set(g);
    let (omega, omega_witness) = max_clique(g);
    let (h, h_certificate) = hadwiger_number(g)?;
    let chi = if want_chi {
        Some(chromatic_number(g)?)
    } else {
        None
    };
    Ok(InvariantBundle {
        n: g.n(),
        m: g.m(),
        alpha,
        alpha_witness,
        omega,
        omega_witness,
        h,
        h_certificate,
        chi,
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        forest: g.is_forest(),
    })
}

/// Values-only bundle; the fast path for corpus sweeps.
pub fn compute_values(g: &Graph, want_chi: bool) -> Result<InvariantValues> {
    if g.n() == 0 {
        return Err(Error::Undefined);
    }
    let chi = if want_chi {
        Some(chromatic_number(g)?)
    } else {
        None
    };
    Ok(InvariantValues {
        n: g.n(),
        m: g.m(),
        alpha: independence_number(g),
        omega: clique_number(g),
        h: hadwiger_value(g)?,
        chi,
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        forest: g.is_forest(),
    })
}
