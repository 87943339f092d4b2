//! Clique-minor certificates, an independent certificate checker, and the
//! constructive dominating-set machinery that realizes the bound
//! (2α−1)·k ≥ n.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{independence_number_masked, max_clique};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A family of branch sets witnessing a K_k minor of a host graph.
///
/// Valid when the sets are pairwise disjoint, non-empty, each induces a
/// connected subgraph, and every pair is joined by at least one host edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCertificate {
    pub host_n: usize,
    pub branch_sets: Vec<VertexSet>,
}

impl MinorCertificate {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }
}

impl Serialize for MinorCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MinorCertificate", 2)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("branch_sets", &self.branch_sets)?;
        s.end()
    }
}

/// Why a certificate was rejected; indices refer to positions in
/// `branch_sets`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateViolation {
    #[error("certificate is for a host on {expected} vertices, graph has {actual}")]
    HostMismatch { expected: usize, actual: usize },
    #[error("branch set {index} is empty")]
    EmptyBranchSet { index: usize },
    #[error("branch set {index} contains vertices outside the host graph")]
    OutOfRange { index: usize },
    #[error("branch sets {first} and {second} overlap")]
    Overlap { first: usize, second: usize },
    #[error("branch set {index} does not induce a connected subgraph")]
    Disconnected { index: usize },
    #[error("no host edge joins branch sets {first} and {second}")]
    MissingEdge { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Valid { order: usize },
    Invalid(CertificateViolation),
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid { .. })
    }
}

/// Checks every certificate invariant against the host graph, reporting the
/// first violated clause and the offending set or pair.
pub fn validate_certificate(g: &Graph, cert: &MinorCertificate) -> CertificateVerdict {
    use CertificateViolation::*;
    if cert.host_n != g.n() {
        return CertificateVerdict::Invalid(HostMismatch {
            expected: cert.host_n,
            actual: g.n(),
        });
    }
    let full = g.vertex_set();
    for (i, &s) in cert.branch_sets.iter().enumerate() {
        if s.is_empty() {
            return CertificateVerdict::Invalid(EmptyBranchSet { index: i });
        }
        if !s.is_subset_of(full) {
            return CertificateVerdict::Invalid(OutOfRange { index: i });
        }
        if !g.set_connected(s) {
            return CertificateVerdict::Invalid(Disconnected { index: i });
        }
    }
    for i in 0..cert.branch_sets.len() {
        for j in i + 1..cert.branch_sets.len() {
            let (a, b) = (cert.branch_sets[i], cert.branch_sets[j]);
            if !a.is_disjoint(b) {
                return CertificateVerdict::Invalid(Overlap { first: i, second: j });
            }
            if g.neighborhood(a).is_disjoint(b) {
                return CertificateVerdict::Invalid(MissingEdge { first: i, second: j });
            }
        }
    }
    CertificateVerdict::Valid {
        order: cert.order(),
    }
}

/// Record of one run of the dominating-set growth loop.
///
/// Starting from a connected seed, each step adds a vertex `x` at distance
/// two from the current set together with a connector `z`, so `|D|` grows by
/// two while the independence number of `G[D]` grows by at least one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingSetTrace {
    pub dominating_set: VertexSet,
    pub seed: VertexSet,
    /// The (x_i, z_i) pairs in the order they were added.
    pub steps: Vec<(usize, usize)>,
    /// α(G[seed]) + k: a proven lower bound on α(G[D]).
    pub alpha_lower: u32,
}

impl DominatingSetTrace {
    /// Number of growth steps k, so that |D| = |seed| + 2k.
    pub fn growth_steps(&self) -> usize {
        self.steps.len()
    }
}

/// Grows a connected dominating set of `g` from a connected seed (callers
/// pass an induced 3-path or a single vertex).
///
/// Tie-breaking is fixed: among distance-two vertices the smallest index is
/// taken, then the smallest connector.
pub fn grow_dominating_set(g: &Graph, seed: VertexSet) -> Result<DominatingSetTrace> {
    if seed.is_empty() {
        return Err(Error::BadSeed {
            reason: "seed is empty".to_string(),
        });
    }
    if !seed.is_subset_of(g.vertex_set()) {
        return Err(Error::BadSeed {
            reason: "seed contains vertices outside the graph".to_string(),
        });
    }
    if !g.set_connected(seed) {
        return Err(Error::BadSeed {
            reason: "seed does not induce a connected subgraph".to_string(),
        });
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let full = g.vertex_set();
    let mut d = seed;
    let mut steps = Vec::new();
    loop {
        let dominated = d.union(g.neighborhood(d));
        if dominated == full {
            break;
        }
        // Vertices at distance exactly two: undominated but adjacent to a
        // dominated non-member.
        let fringe = g.neighborhood(d).difference(d);
        let undominated = full.difference(dominated);
        let x = undominated
            .iter()
            .find(|&x| !g.neighbors(x).is_disjoint(fringe))
            .expect("a connected graph always has a vertex at distance two from a non-dominating set");
        let z = g
            .neighbors(x)
            .intersection(fringe)
            .min_vertex()
            .expect("x was chosen adjacent to the fringe");
        steps.push((x, z));
        d.insert(x);
        d.insert(z);
    }
    let seed_alpha = independence_number_masked(g, seed);
    Ok(DominatingSetTrace {
        dominating_set: d,
        seed,
        alpha_lower: seed_alpha + steps.len() as u32,
        steps,
    })
}

/// Finds an induced 3-path x-y-z (edges xy, yz present, xz absent), if one
/// exists. One exists iff some connected component is not a clique.
pub fn find_induced_p3(g: &Graph) -> Option<(usize, usize, usize)> {
    for y in 0..g.n() {
        let nb = g.neighbors(y);
        for x in nb.iter() {
            for z in nb.iter() {
                if z > x && !g.has_edge(x, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Constructively builds a clique-minor certificate of order k with
/// (2·α(g) − 1)·k ≥ n(g).
///
/// Connected non-clique graphs grow a connected dominating set from an
/// induced 3-path, emit it as one branch set (after contraction it dominates
/// everything left) and recurse on the rest. Disconnected graphs recurse on
/// the component maximizing ⌈n_C/(2α_C−1)⌉, which preserves the bound
/// because α is additive over components. At every level a plain
/// maximum-clique certificate is kept instead whenever it is strictly larger.
pub fn dm_clique_minor(g: &Graph) -> Result<MinorCertificate> {
    if g.n() == 0 {
        return Err(Error::Undefined);
    }
    let branch_sets = dm_branch_sets(g);
    Ok(MinorCertificate {
        host_n: g.n(),
        branch_sets,
    })
}

fn dm_branch_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let construction = if g.m() == 0 {
        vec![VertexSet::singleton(0)]
    } else if !g.is_connected() {
        let mut best_score = 0usize;
        let mut chosen = None;
        for c in g.components() {
            let nc = c.len();
            let alpha_c = independence_number_masked(g, c) as usize;
            let score = nc.div_ceil(2 * alpha_c - 1);
            if score > best_score {
                best_score = score;
                chosen = Some(c);
            }
        }
        let (sub, map) = g.induced_subgraph(chosen.expect("a non-empty graph has components"));
        dm_branch_sets(&sub)
            .into_iter()
            .map(|s| s.iter().map(|v| map[v]).collect())
            .collect()
    } else if g.is_complete() {
        (0..n).map(VertexSet::singleton).collect()
    } else {
        let (x, y, z) = find_induced_p3(g).expect("a connected non-clique has an induced 3-path");
        let seed: VertexSet = [x, y, z].into_iter().collect();
        let trace = grow_dominating_set(g, seed).expect("g is connected and the seed induces a path");
        let d = trace.dominating_set;
        let rest = g.vertex_set().difference(d);
        let mut sets = vec![d];
        if !rest.is_empty() {
            let (sub, map) = g.induced_subgraph(rest);
            sets.extend(
                dm_branch_sets(&sub)
                    .into_iter()
                    .map(|s| s.iter().map(|v| map[v]).collect::<VertexSet>()),
            );
        }
        sets
    };
    // Fallback: a maximum clique as singleton branch sets, kept when strictly
    // larger than the construction.
    let (omega, clique) = max_clique(g);
    if omega as usize > construction.len() {
        clique.iter().map(VertexSet::singleton).collect()
    } else {
        construction
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::Graph;
    use crate::invariants::hadwiger_value;

    fn vs(vals: &[usize]) -> VertexSet {
        vals.iter().copied().collect()
    }

    #[test]
    fn validates_c5_partition() {
        let c5 = cycle_graph(5);
        let cert = MinorCertificate {
            host_n: 5,
            branch_sets: vec![vs(&[0, 1]), vs(&[2, 3]), vs(&[4])],
        };
        assert_eq!(validate_certificate(&c5, &cert), CertificateVerdict::Valid { order: 3 });
    }

    #[test]
    fn rejects_disconnected_branch_set() {
        let c5 = cycle_graph(5);
        let cert = MinorCertificate {
            host_n: 5,
            branch_sets: vec![vs(&[0, 2]), vs(&[1]), vs(&[3])],
        };
        assert_eq!(
            validate_certificate(&c5, &cert),
            CertificateVerdict::Invalid(CertificateViolation::Disconnected { index: 0 })
        );
    }

    #[test]
    fn accepts_singleton_clique_certificate() {
        let k4 = complete_graph(4);
        let cert = MinorCertificate {
            host_n: 4,
            branch_sets: (0..4).map(VertexSet::singleton).collect(),
        };
        assert!(validate_certificate(&k4, &cert).is_valid());
    }

    #[test]
    fn rejects_other_violations() {
        let c5 = cycle_graph(5);
        let verdict = |sets: Vec<VertexSet>, host_n| {
            validate_certificate(&c5, &MinorCertificate { host_n, branch_sets: sets })
        };
        assert_eq!(
            verdict(vec![vs(&[0])], 4),
            CertificateVerdict::Invalid(CertificateViolation::HostMismatch { expected: 4, actual: 5 })
        );
        assert_eq!(
            verdict(vec![vs(&[0]), VertexSet::EMPTY], 5),
            CertificateVerdict::Invalid(CertificateViolation::EmptyBranchSet { index: 1 })
        );
        assert_eq!(
            verdict(vec![vs(&[0]), vs(&[5])], 5),
            CertificateVerdict::Invalid(CertificateViolation::OutOfRange { index: 1 })
        );
        assert_eq!(
            verdict(vec![vs(&[0, 1]), vs(&[1, 2])], 5),
            CertificateVerdict::Invalid(CertificateViolation::Overlap { first: 0, second: 1 })
        );
        assert_eq!(
            verdict(vec![vs(&[0]), vs(&[2])], 5),
            CertificateVerdict::Invalid(CertificateViolation::MissingEdge { first: 0, second: 1 })
        );
    }

    #[test]
    fn certificate_serializes_to_schema() {
        let cert = MinorCertificate {
            host_n: 5,
            branch_sets: vec![vs(&[0, 1]), vs(&[2])],
        };
        assert_eq!(
            serde_json::to_string(&cert).unwrap(),
            r#"{"order":2,"branch_sets":[[0,1],[2]]}"#
        );
    }

    #[test]
    fn grow_on_c5_from_induced_path() {
        let c5 = cycle_graph(5);
        let trace = grow_dominating_set(&c5, vs(&[0, 1, 2])).unwrap();
        assert_eq!(trace.dominating_set, vs(&[0, 1, 2]));
        assert_eq!(trace.growth_steps(), 0);
        assert_eq!(trace.alpha_lower, 2);
    }

    #[test]
    fn grow_on_p7_from_single_vertex() {
        let p7 = path_graph(7);
        let trace = grow_dominating_set(&p7, vs(&[0])).unwrap();
        assert_eq!(trace.steps, vec![(2, 1), (4, 3), (6, 5)]);
        assert_eq!(trace.dominating_set, p7.vertex_set());
        assert_eq!(trace.growth_steps(), 3);
        assert_eq!(trace.alpha_lower, 4);
        assert_eq!(trace.dominating_set.len(), trace.seed.len() + 2 * trace.growth_steps());
    }

    #[test]
    fn grow_rejects_bad_inputs() {
        let c5 = cycle_graph(5);
        assert!(matches!(
            grow_dominating_set(&c5, VertexSet::EMPTY),
            Err(Error::BadSeed { .. })
        ));
        assert!(matches!(
            grow_dominating_set(&c5, vs(&[0, 2])),
            Err(Error::BadSeed { .. })
        ));
        assert!(matches!(
            grow_dominating_set(&c5, vs(&[7])),
            Err(Error::BadSeed { .. })
        ));
        assert_eq!(
            grow_dominating_set(&two_triangles(), vs(&[0])),
            Err(Error::DisconnectedGraph)
        );
    }

    #[test]
    fn induced_p3_examples() {
        assert_eq!(find_induced_p3(&path_graph(4)), Some((0, 1, 2)));
        assert_eq!(find_induced_p3(&complete_graph(5)), None);
        assert_eq!(find_induced_p3(&cycle_graph(5)), Some((1, 0, 4)));
        assert_eq!(find_induced_p3(&two_triangles()), None);
        assert_eq!(find_induced_p3(&empty_graph(3)), None);
    }

    #[test]
    fn induced_p3_is_always_induced() {
        for mask in 0..1u64 << 10 {
            let g = graph_from_edge_mask(5, mask);
            if let Some((x, y, z)) = find_induced_p3(&g) {
                assert!(g.has_edge(x, y) && g.has_edge(y, z) && !g.has_edge(x, z));
            } else {
                // No induced path: every component must be a clique.
                for c in g.components() {
                    let (sub, _) = g.induced_subgraph(c);
                    assert!(sub.is_complete());
                }
            }
        }
    }

    #[test]
    fn dm_certificate_examples() {
        for n in 1..=6 {
            let kn = complete_graph(n);
            let cert = dm_clique_minor(&kn).unwrap();
            assert_eq!(cert.order(), n);
            assert!(validate_certificate(&kn, &cert).is_valid());
        }

        let e5 = empty_graph(5);
        let cert = dm_clique_minor(&e5).unwrap();
        assert_eq!(cert.branch_sets, vec![vs(&[0])]);
        assert!(validate_certificate(&e5, &cert).is_valid());

        let c5 = cycle_graph(5);
        let cert = dm_clique_minor(&c5).unwrap();
        assert!(validate_certificate(&c5, &cert).is_valid());
        assert_eq!(cert.branch_sets, vec![vs(&[0, 1, 4]), vs(&[2]), vs(&[3])]);
        assert!(cert.order() >= 2); // ⌈5/3⌉

        let p = petersen();
        let cert = dm_clique_minor(&p).unwrap();
        assert!(validate_certificate(&p, &cert).is_valid());
        assert!(cert.order() >= 2); // ⌈10/7⌉
        assert!(cert.order() as u32 <= hadwiger_value(&p).unwrap());

        let t = two_triangles();
        let cert = dm_clique_minor(&t).unwrap();
        assert_eq!(cert.order(), 3);
        assert!(validate_certificate(&t, &cert).is_valid());

        assert_eq!(dm_clique_minor(&empty_graph(0)), Err(Error::Undefined));
    }

    /// Contracting every branch set of a valid certificate must leave the
    /// images forming a complete subgraph.
    #[test]
    fn contracting_branch_sets_yields_clique() {
        let cases = vec![
            (cycle_graph(5), dm_clique_minor(&cycle_graph(5)).unwrap()),
            (petersen(), dm_clique_minor(&petersen()).unwrap()),
            (
                cycle_graph(5),
                MinorCertificate {
                    host_n: 5,
                    branch_sets: vec![vs(&[0, 1]), vs(&[2, 3]), vs(&[4])],
                },
            ),
        ];
        for (g, cert) in cases {
            assert!(validate_certificate(&g, &cert).is_valid());
            let mut cur: Graph = g.clone();
            let mut place: Vec<usize> = (0..g.n()).collect();
            for set in &cert.branch_sets {
                let mapped: VertexSet = set.iter().map(|v| place[v]).collect();
                let anchor = mapped.min_vertex().unwrap();
                cur = cur.contract_set(mapped).unwrap();
                let removed: Vec<usize> =
                    mapped.iter().filter(|&x| x != anchor).collect();
                for p in place.iter_mut() {
                    if mapped.contains(*p) {
                        *p = anchor;
                    } else {
                        *p -= removed.iter().filter(|&&r| r < *p).count();
                    }
                }
            }
            let images: Vec<usize> = cert
                .branch_sets
                .iter()
                .map(|s| place[s.min_vertex().unwrap()])
                .collect();
            for (i, &a) in images.iter().enumerate() {
                for &b in &images[i + 1..] {
                    assert!(cur.has_edge(a, b), "images {a},{b} not adjacent");
                }
            }
        }
    }
}
