//! Simple undirected graphs on at most 62 vertices, stored as one u64
//! adjacency bitset per vertex.
//!
//! Everything here is immutable after construction: derivations
//! (complement, induced subgraph, contraction) build new graphs.

use crate::error::{Error, Result};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

/// Hard cap on vertex count: one machine word per adjacency row, and the
/// single-byte graph6 short form.
pub const MAX_VERTICES: usize = 62;

/// A set of vertex indices of some host graph, as a 62-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// The full vertex set {0, …, n-1}.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest vertex in the set, if any.
    #[inline]
    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Iterates vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            assert!(v < 64, "vertex index {v} out of range");
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Simple undirected graph on `n ≤ 62` vertices.
///
/// Invariants (maintained by every constructor and derivation):
/// - symmetry: `u ∈ adj[v] ⟺ v ∈ adj[u]`
/// - no loops: `v ∉ adj[v]`
/// - no bits `≥ n` set in any row
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edge-empty graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges are idempotent.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Internal constructor from pre-built rows; the caller guarantees the
    /// invariants (checked in debug builds).
    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Graph {
        debug_assert_eq!(adj.len(), n);
        debug_assert!(adj.iter().all(|row| row & !VertexSet::full(n).bits() == 0));
        debug_assert!((0..n).all(|v| adj[v] >> v & 1 == 0));
        debug_assert!((0..n).all(|v| VertexSet(adj[v]).iter().all(|u| adj[u] >> v & 1 == 1)));
        Graph { n, adj }
    }

    /// Inserts the edge (u, v). Rejects loops and out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::LoopRejected { v });
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidEdge { u, v, n: self.n });
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Raw adjacency rows; row v is the neighbour bitset of v.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            let mut higher = self.adj[u] >> (u + 1) << (u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Union of open neighbourhoods of the vertices in `s`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut acc = 0u64;
        for v in s.iter() {
            acc |= self.adj[v];
        }
        VertexSet(acc)
    }

    /// u~v in the result iff u≁v here (u ≠ v). An involution.
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `s`, plus the index map (new index → old index).
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        debug_assert!(s.is_subset_of(self.vertex_set()));
        let map: Vec<usize> = s.iter().collect();
        let mut adj = vec![0u64; map.len()];
        for (new_u, &old_u) in map.iter().enumerate() {
            for (new_v, &old_v) in map.iter().enumerate() {
                if new_u != new_v && self.has_edge(old_u, old_v) {
                    adj[new_u] |= 1u64 << new_v;
                }
            }
        }
        (
            Graph {
                n: map.len(),
                adj,
            },
            map,
        )
    }

    /// Contracts the vertex set `s` to a single vertex.
    ///
    /// `s` must be non-empty and induce a connected subgraph (contracting a
    /// disconnected set is not a minor operation). The contracted vertex takes
    /// the slot of the smallest member of `s`; all other vertices keep their
    /// relative order.
    pub fn contract_set(&self, s: VertexSet) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        assert!(
            s.is_subset_of(self.vertex_set()),
            "vertex set {s:?} not within graph on {} vertices",
            self.n
        );
        if !self.set_connected(s) {
            return Err(Error::NotConnected);
        }
        let anchor = s.min_vertex().unwrap();
        // old → new index; members of s all map to the anchor's slot.
        let mut new_index = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, slot) in new_index.iter_mut().enumerate() {
            if s.contains(v) && v != anchor {
                continue;
            }
            *slot = next;
            next += 1;
        }
        for v in s.iter() {
            new_index[v] = new_index[anchor];
        }
        let mut adj = vec![0u64; next];
        for v in 0..self.n {
            let nv = new_index[v];
            for u in VertexSet(self.adj[v]).iter() {
                let nu = new_index[u];
                if nu != nv {
                    adj[nv] |= 1u64 << nu;
                    adj[nu] |= 1u64 << nv;
                }
            }
        }
        Ok(Graph { n: next, adj })
    }

    /// Edge contraction fast path used by the Hadwiger search; (u, v) must be
    /// an edge, which makes {u, v} trivially connected. The merged vertex
    /// keeps the smaller index; higher indices shift down by one.
    pub(crate) fn contract_edge(&self, u: usize, v: usize) -> Graph {
        debug_assert!(self.has_edge(u, v));
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let low = (1u64 << gone) - 1;
        let squeeze = |row: u64| (row & low) | (row >> (gone + 1) << gone);
        let mut adj = Vec::with_capacity(self.n - 1);
        for w in 0..self.n {
            if w == gone {
                continue;
            }
            let mut row = self.adj[w];
            if w == keep {
                row |= self.adj[gone];
                row &= !(1u64 << keep);
            } else if row >> gone & 1 == 1 {
                row |= 1u64 << keep;
            }
            row &= !(1u64 << gone);
            adj.push(squeeze(row));
        }
        Graph {
            n: self.n - 1,
            adj,
        }
    }

    /// True iff `s` induces a connected subgraph (the empty set counts as
    /// connected).
    pub fn set_connected(&self, s: VertexSet) -> bool {
        let Some(start) = s.min_vertex() else {
            return true;
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let grown = self.neighborhood(frontier).intersection(s).union(seen);
            frontier = grown.difference(seen);
            seen = grown;
        }
        seen == s
    }

    /// The 0-vertex graph is connected by convention.
    pub fn is_connected(&self) -> bool {
        self.set_connected(self.vertex_set())
    }

    /// Connected components ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut remaining = self.vertex_set();
        while let Some(start) = remaining.min_vertex() {
            let mut seen = VertexSet::singleton(start);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let grown = self.neighborhood(frontier).union(seen);
                frontier = grown.difference(seen);
                seen = grown;
            }
            out.push(seen);
            remaining = remaining.difference(seen);
        }
        out
    }

    /// A graph is a forest iff m = n − (number of components).
    pub fn is_forest(&self) -> bool {
        self.m() == self.n - self.components().len()
    }

    /// Returns a bipartition `(a, b)` when one exists. Vertex classes are
    /// assigned by BFS from the smallest vertex of each component, which goes
    /// to side `a`.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side_a = VertexSet::EMPTY;
        let mut side_b = VertexSet::EMPTY;
        let mut remaining = self.vertex_set();
        while let Some(start) = remaining.min_vertex() {
            let mut level_a = VertexSet::singleton(start);
            let mut level_b = VertexSet::EMPTY;
            let mut comp_a = level_a;
            let mut comp_b = VertexSet::EMPTY;
            loop {
                let next_b = self
                    .neighborhood(level_a)
                    .difference(comp_a)
                    .difference(comp_b);
                let next_a = self
                    .neighborhood(level_b)
                    .difference(comp_a)
                    .difference(comp_b);
                if next_a.is_empty() && next_b.is_empty() {
                    break;
                }
                comp_a = comp_a.union(next_a);
                comp_b = comp_b.union(next_b);
                level_a = next_a;
                level_b = next_b;
            }
            // Odd cycle check: no edge may stay within a class.
            for v in comp_a.iter() {
                if !VertexSet(self.adj[v]).is_disjoint(comp_a) {
                    return None;
                }
            }
            for v in comp_b.iter() {
                if !VertexSet(self.adj[v]).is_disjoint(comp_b) {
                    return None;
                }
            }
            side_a = side_a.union(comp_a);
            side_b = side_b.union(comp_b);
            remaining = remaining.difference(comp_a).difference(comp_b);
        }
        Some((side_a, side_b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn from_edge_list_builds_k3() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn from_edge_list_empty_and_cycle() {
        let e = Graph::from_edge_list(4, &[]).unwrap();
        assert_eq!((e.n(), e.m()), (4, 0));
        let c5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.m(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::InvalidEdge { u: 0, v: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(Error::LoopRejected { v: 1 })
        );
        assert_eq!(
            Graph::empty(63).unwrap_err(),
            Error::TooLarge { n: 63, max: 62 }
        );
        assert!(Graph::empty(62).is_ok());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complete_graph(4).complement(), empty_graph(4));
        let c5 = cycle_graph(5);
        let cc = c5.complement();
        // The complement of C5 is again a 5-cycle (on the pentagram).
        assert_eq!(cc.m(), 5);
        assert!((0..5).all(|v| cc.degree(v) == 2));
        assert!(cc.is_connected());
        assert_eq!(cc.complement(), c5);
        // P4 is self-complementary as well: the complement is a connected
        // forest with degree sequence 1,1,2,2, i.e. another 4-path.
        let p4 = path_graph(4);
        let pc = p4.complement();
        let mut degs: Vec<_> = (0..4).map(|v| pc.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, [1, 1, 2, 2]);
        assert!(pc.is_connected() && pc.is_forest());
    }

    #[test]
    fn edge_count_identity_with_complement() {
        for (n, mask) in [(5usize, 0x155u64), (6, 0x2AA), (4, 0x3F), (1, 0)] {
            let g = graph_from_edge_mask(n, mask);
            assert_eq!(g.m() + g.complement().m(), n * n.saturating_sub(1) / 2);
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k5 = complete_graph(5);
        let (sub, map) = k5.induced_subgraph([1, 3, 4].into_iter().collect());
        assert!(sub.is_complete());
        assert_eq!(sub.n(), 3);
        assert_eq!(map, vec![1, 3, 4]);

        let c5 = cycle_graph(5);
        let (p3, _) = c5.induced_subgraph([0, 1, 2].into_iter().collect());
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);

        let (nothing, map) = c5.induced_subgraph(VertexSet::EMPTY);
        assert_eq!(nothing.n(), 0);
        assert!(map.is_empty());

        let (all, _) = c5.induced_subgraph(c5.vertex_set());
        assert_eq!(all, c5);
    }

    #[test]
    fn contract_set_examples() {
        let c5 = cycle_graph(5);
        let c4 = c5.contract_set([0, 1].into_iter().collect()).unwrap();
        assert_eq!(c4, cycle_graph(4));

        let p3 = path_graph(3);
        let k1 = p3.contract_set([0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));

        let k4 = complete_graph(4);
        let k3 = k4.contract_set([0, 1].into_iter().collect()).unwrap();
        assert_eq!(k3, complete_graph(3));
    }

    #[test]
    fn contract_set_errors() {
        let c5 = cycle_graph(5);
        assert_eq!(c5.contract_set(VertexSet::EMPTY), Err(Error::EmptySet));
        assert_eq!(
            c5.contract_set([0, 2].into_iter().collect()),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn contract_edge_agrees_with_contract_set() {
        for g in [cycle_graph(5), complete_graph(4), petersen()] {
            for (u, v) in g.edges() {
                let via_set = g.contract_set([u, v].into_iter().collect()).unwrap();
                assert_eq!(g.contract_edge(u, v), via_set);
            }
        }
    }

    #[test]
    fn connectivity_predicates() {
        let c5 = cycle_graph(5);
        assert!(c5.is_connected() && !c5.is_forest() && !c5.is_bipartite());

        let p4 = path_graph(4);
        assert!(p4.is_connected() && p4.is_forest());
        let (a, b) = p4.bipartition().unwrap();
        assert_eq!(a, [0, 2].into_iter().collect());
        assert_eq!(b, [1, 3].into_iter().collect());

        let two_k3 = two_triangles();
        assert_eq!(two_k3.components().len(), 2);
        assert!(!two_k3.is_connected());
        assert_eq!(
            two_k3.components()[1],
            [3, 4, 5].into_iter().collect::<VertexSet>()
        );
    }

    #[test]
    fn zero_vertex_conventions() {
        let g = Graph::empty(0).unwrap();
        assert!(g.is_connected());
        assert!(g.is_forest());
        assert!(g.is_bipartite());
        assert_eq!(g.components(), vec![]);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [4, 1, 0].into_iter().collect();
        assert_eq!(s.to_vec(), vec![0, 1, 4]);
        assert_eq!(s.min_vertex(), Some(0));
        assert_eq!(s.len(), 3);
        assert!(s.contains(4) && !s.contains(2));
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,1,4]");
        assert_eq!(format!("{s:?}"), "{0,1,4}");
        assert!(VertexSet::EMPTY.is_empty());
    }
}
