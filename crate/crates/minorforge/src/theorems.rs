//! Checkers for the seven inequalities relating n, α, ω and h, with exact
//! equality-case classification, plus recognizers for the two extremal
//! families (forests with a perfect matching, and twin-clique graphs).

use crate::graph::{Graph, VertexSet};
use crate::invariants::{independence_number, InvariantBundle, InvariantValues};
use serde::{Serialize, Serializer};

/// The checked inequalities.
///
/// | id        | inequality                  | applicable when            |
/// |-----------|-----------------------------|----------------------------|
/// | DM        | (2α−1)·h ≥ n                | always (n ≥ 1)             |
/// | WOODALL   | 2α·(h−1) ≥ n                | m ≥ 1                      |
/// | MAIN      | (2α−1)·(h−1)+3 ≥ n+ω        | m ≥ 1 and not complete     |
/// | COROLLARY | (2α−1)·(h−1)+2 ≥ n+ω        | α ≥ 3 and ω ≥ 3            |
/// | ALPHA2    | 3h ≥ n+ω                    | α = 2                      |
/// | OMEGA2    | (2α−1)·(h−1)+1 ≥ n          | ω = 2                      |
/// | WOOD      | (2α−1)·(2h−5) ≥ 2n−5        | h ≥ 5                      |
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TheoremId {
    Dm,
    Woodall,
    Main,
    Corollary,
    Alpha2,
    Omega2,
    Wood,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::Dm,
        TheoremId::Woodall,
        TheoremId::Main,
        TheoremId::Corollary,
        TheoremId::Alpha2,
        TheoremId::Omega2,
        TheoremId::Wood,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Dm => "DM",
            TheoremId::Woodall => "WOODALL",
            TheoremId::Main => "MAIN",
            TheoremId::Corollary => "COROLLARY",
            TheoremId::Alpha2 => "ALPHA2",
            TheoremId::Omega2 => "OMEGA2",
            TheoremId::Wood => "WOOD",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Extremal family of the equality characterization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtremalTag {
    ForestPm,
    TwinCliques,
}

impl ExtremalTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremalTag::ForestPm => "FOREST_PM",
            ExtremalTag::TwinCliques => "TWIN_CLIQUES",
        }
    }
}

impl Serialize for ExtremalTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Verdict for one inequality on one graph.
///
/// `extremal_class` is `None` unless the report is a MAIN equality, in which
/// case it lists every matching family (the classes can overlap); an empty
/// list there contradicts the equality characterization and is flagged as an
/// anomaly by the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub equality: bool,
    pub extremal_class: Option<Vec<ExtremalTag>>,
}

/// Evidence for membership in the extremal families. Both can match at once
/// (K₂ ∪ K₂ is a forest with a perfect matching *and* two K₂ with h = 2).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtremalClassification {
    pub forest_pm: Option<Vec<(usize, usize)>>,
    pub twin_cliques: Option<(VertexSet, VertexSet)>,
}

impl ExtremalClassification {
    pub fn tags(&self) -> Vec<ExtremalTag> {
        let mut tags = Vec::new();
        if self.forest_pm.is_some() {
            tags.push(ExtremalTag::ForestPm);
        }
        if self.twin_cliques.is_some() {
            tags.push(ExtremalTag::TwinCliques);
        }
        tags
    }

    pub fn is_none(&self) -> bool {
        self.forest_pm.is_none() && self.twin_cliques.is_none()
    }
}

/// Returns the perfect matching iff `g` is a forest with at least one edge
/// admitting one.
///
/// Greedy leaf matching: a leaf must be matched to its unique neighbour, so
/// repeatedly matching the smallest leaf and deleting the pair either finds
/// the (unique) perfect matching or exposes an unmatchable isolated vertex.
pub fn recognize_lemma1(g: &Graph) -> Option<Vec<(usize, usize)>> {
    if g.m() == 0 || !g.is_forest() {
        return None;
    }
    let mut alive = g.vertex_set();
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut matching = Vec::new();
    while !alive.is_empty() {
        if alive.iter().any(|v| deg[v] == 0) {
            return None;
        }
        let leaf = alive
            .iter()
            .find(|&v| deg[v] == 1)
            .expect("a forest whose alive vertices all have degree ≥ 1 has a leaf");
        let partner = g
            .neighbors(leaf)
            .intersection(alive)
            .min_vertex()
            .expect("leaf has exactly one alive neighbour");
        matching.push((leaf.min(partner), leaf.max(partner)));
        alive.remove(leaf);
        alive.remove(partner);
        for removed in [leaf, partner] {
            for w in g.neighbors(removed).intersection(alive).iter() {
                deg[w] -= 1;
            }
        }
    }
    matching.sort_unstable();
    Some(matching)
}

/// Returns the two clique vertex sets iff the vertex set splits into two
/// disjoint cliques of size n/2 and the exact Hadwiger number `h` equals n/2.
///
/// Two cliques covering V is equivalent to the complement being bipartite;
/// the halves are balanced by flipping complement components (a subset-sum
/// over component class sizes). The first returned set contains vertex 0.
pub fn recognize_lemma2(g: &Graph, h: u32) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    if n == 0 || n % 2 == 1 || h as usize != n / 2 {
        return None;
    }
    if independence_number(g) > 2 {
        return None;
    }
    let comp = g.complement();
    let (a, b) = comp.bipartition()?;
    let comps = comp.components();
    let target = n / 2;
    // reach[i] = bitmask of sizes buildable from the first i components.
    let mut reach = Vec::with_capacity(comps.len() + 1);
    reach.push(1u64);
    for c in &comps {
        let ca = a.intersection(*c).len();
        let cb = b.intersection(*c).len();
        let cur = *reach.last().unwrap();
        reach.push(cur << ca | cur << cb);
    }
    if reach.last().unwrap() >> target & 1 == 0 {
        return None;
    }
    let mut side1 = VertexSet::EMPTY;
    let mut want = target;
    for (i, c) in comps.iter().enumerate().rev() {
        let ca = a.intersection(*c).len();
        let cb = b.intersection(*c).len();
        if want >= ca && reach[i] >> (want - ca) & 1 == 1 {
            side1 = side1.union(a.intersection(*c));
            want -= ca;
        } else {
            debug_assert!(want >= cb && reach[i] >> (want - cb) & 1 == 1);
            side1 = side1.union(b.intersection(*c));
            want -= cb;
        }
    }
    debug_assert_eq!(want, 0);
    let side2 = g.vertex_set().difference(side1);
    let (side1, side2) = if side1.contains(0) {
        (side1, side2)
    } else {
        (side2, side1)
    };
    debug_assert!(g.induced_subgraph(side1).0.is_complete());
    debug_assert!(g.induced_subgraph(side2).0.is_complete());
    Some((side1, side2))
}

/// Classifies a MAIN-equality graph into the extremal families, with
/// evidence. `h` must be the exact Hadwiger number of `g`.
pub fn classify_equality_with_h(g: &Graph, h: u32) -> ExtremalClassification {
    ExtremalClassification {
        forest_pm: recognize_lemma1(g),
        twin_cliques: recognize_lemma2(g, h),
    }
}

/// Bundle-based front-end for [`classify_equality_with_h`].
pub fn classify_equality(g: &Graph, bundle: &InvariantBundle) -> ExtremalClassification {
    classify_equality_with_h(g, bundle.h)
}

/// Applicability, left-hand side and right-hand side of one inequality.
pub(crate) fn formula(id: TheoremId, vals: &InvariantValues) -> (bool, i64, i64) {
    let n = vals.n as i64;
    let m = vals.m;
    let a = vals.alpha as i64;
    let w = vals.omega as i64;
    let h = vals.h as i64;
    let complete = m == vals.n * vals.n.saturating_sub(1) / 2;
    let applicable = match id {
        TheoremId::Dm => true,
        TheoremId::Woodall => m >= 1,
        TheoremId::Main => m >= 1 && !complete,
        TheoremId::Corollary => a >= 3 && w >= 3,
        TheoremId::Alpha2 => a == 2,
        TheoremId::Omega2 => w == 2,
        TheoremId::Wood => h >= 5,
    };
    let (lhs, rhs) = match id {
        TheoremId::Dm => ((2 * a - 1) * h, n),
        TheoremId::Woodall => (2 * a * (h - 1), n),
        TheoremId::Main => ((2 * a - 1) * (h - 1) + 3, n + w),
        TheoremId::Corollary => ((2 * a - 1) * (h - 1) + 2, n + w),
        TheoremId::Alpha2 => (3 * h, n + w),
        TheoremId::Omega2 => ((2 * a - 1) * (h - 1) + 1, n),
        TheoremId::Wood => ((2 * a - 1) * (2 * h - 5), 2 * n - 5),
    };
    (applicable, lhs, rhs)
}

fn inapplicability_reason(id: TheoremId, vals: &InvariantValues) -> String {
    match id {
        TheoremId::Dm => unreachable!("DM applies to every non-empty graph"),
        TheoremId::Woodall => "requires at least one edge".to_string(),
        TheoremId::Main => {
            if vals.m == 0 {
                "requires at least one edge".to_string()
            } else {
                "requires at least one missing edge".to_string()
            }
        }
        TheoremId::Corollary => "requires α ≥ 3 and ω ≥ 3".to_string(),
        TheoremId::Alpha2 => "requires α = 2".to_string(),
        TheoremId::Omega2 => "requires ω = 2".to_string(),
        TheoremId::Wood => "requires h ≥ 5".to_string(),
    }
}

/// Evaluates one inequality against exact invariant values.
pub fn check_values(id: TheoremId, g: &Graph, vals: &InvariantValues) -> TheoremReport {
    let (applicable, lhs, rhs) = formula(id, vals);
    let reason = if applicable {
        None
    } else {
        Some(inapplicability_reason(id, vals))
    };
    let equality = applicable && lhs == rhs;
    let extremal_class = if id == TheoremId::Main && equality {
        Some(classify_equality_with_h(g, vals.h).tags())
    } else {
        None
    };
    TheoremReport {
        theorem_id: id,
        applicable,
        reason,
        lhs,
        rhs,
        holds: !applicable || lhs >= rhs,
        equality,
        extremal_class,
    }
}

/// Evaluates one inequality against a full bundle.
pub fn check(id: TheoremId, g: &Graph, bundle: &InvariantBundle) -> TheoremReport {
    check_values(id, g, &bundle.values())
}

/// All seven reports, in canonical order.
pub fn check_all(g: &Graph, bundle: &InvariantBundle) -> Vec<TheoremReport> {
    TheoremId::ALL
        .into_iter()
        .map(|id| check(id, g, bundle))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::invariants::{compute_bundle, compute_values};

    fn bundle(g: &Graph) -> crate::invariants::InvariantBundle {
        compute_bundle(g, true).unwrap()
    }

    #[test]
    fn main_on_two_triangles_is_twin_clique_equality() {
        let g = two_triangles();
        let r = check(TheoremId::Main, &g, &bundle(&g));
        assert!(r.applicable && r.holds && r.equality);
        assert_eq!((r.lhs, r.rhs), (9, 9));
        assert_eq!(r.extremal_class, Some(vec![ExtremalTag::TwinCliques]));
    }

    #[test]
    fn main_on_p4_is_equality_in_both_classes() {
        // P4 is a forest with a perfect matching *and* two K2 joined by an
        // edge with h = 2, so both families match.
        let g = path_graph(4);
        let r = check(TheoremId::Main, &g, &bundle(&g));
        assert!(r.equality);
        assert_eq!((r.lhs, r.rhs), (6, 6));
        assert_eq!(
            r.extremal_class,
            Some(vec![ExtremalTag::ForestPm, ExtremalTag::TwinCliques])
        );
    }

    #[test]
    fn main_not_applicable_on_complete_or_empty() {
        let k4 = complete_graph(4);
        let r = check(TheoremId::Main, &k4, &bundle(&k4));
        assert!(!r.applicable && r.holds && !r.equality);
        assert_eq!(r.reason.as_deref(), Some("requires at least one missing edge"));

        let e3 = empty_graph(3);
        let r = check(TheoremId::Main, &e3, &bundle(&e3));
        assert!(!r.applicable);
        assert_eq!(r.reason.as_deref(), Some("requires at least one edge"));
    }

    #[test]
    fn alpha2_on_two_triangles() {
        let g = two_triangles();
        let r = check(TheoremId::Alpha2, &g, &bundle(&g));
        assert!(r.applicable && r.equality);
        assert_eq!((r.lhs, r.rhs), (9, 9));
        assert!(r.extremal_class.is_none());
    }

    #[test]
    fn omega2_on_c5_is_strict() {
        let g = cycle_graph(5);
        let r = check(TheoremId::Omega2, &g, &bundle(&g));
        assert!(r.applicable && r.holds && !r.equality);
        assert_eq!((r.lhs, r.rhs), (7, 5));
    }

    #[test]
    fn wood_applicability_needs_h5() {
        let g = cycle_graph(5); // h = 3
        let r = check(TheoremId::Wood, &g, &bundle(&g));
        assert!(!r.applicable);

        let k6 = complete_graph(6); // h = 6: (2·1−1)(2·6−5) = 7 = 2·6−5
        let r = check(TheoremId::Wood, &k6, &bundle(&k6));
        assert!(r.applicable && r.holds && r.equality);
        assert_eq!((r.lhs, r.rhs), (7, 7));
    }

    #[test]
    fn dm_and_woodall_basics() {
        let k1 = complete_graph(1);
        let r = check(TheoremId::Dm, &k1, &bundle(&k1));
        assert!(r.applicable && r.equality); // (2·1−1)·1 = 1

        let r = check(TheoremId::Woodall, &k1, &bundle(&k1));
        assert!(!r.applicable);

        let c5 = cycle_graph(5);
        let r = check(TheoremId::Woodall, &c5, &bundle(&c5));
        assert_eq!((r.lhs, r.rhs), (8, 5));

        let r = check(TheoremId::Corollary, &c5, &bundle(&c5));
        assert!(!r.applicable); // α = ω = 2
    }

    #[test]
    fn check_all_returns_canonical_order() {
        let g = cycle_graph(5);
        let reports = check_all(&g, &bundle(&g));
        let ids: Vec<_> = reports.iter().map(|r| r.theorem_id).collect();
        assert_eq!(ids, TheoremId::ALL.to_vec());
        assert!(reports.iter().all(|r| r.holds));
    }

    #[test]
    fn lemma1_recognizer_examples() {
        assert_eq!(
            recognize_lemma1(&path_graph(4)),
            Some(vec![(0, 1), (2, 3)])
        );
        assert_eq!(recognize_lemma1(&star_graph(3)), None); // K_{1,3}
        assert_eq!(recognize_lemma1(&cycle_graph(4)), None); // PM but not forest
        assert_eq!(recognize_lemma1(&complete_graph(2)), Some(vec![(0, 1)]));
        assert_eq!(recognize_lemma1(&empty_graph(2)), None);
        assert_eq!(recognize_lemma1(&path_graph(3)), None); // odd order
        let two_k2 = disjoint_union(&complete_graph(2), &complete_graph(2));
        assert_eq!(recognize_lemma1(&two_k2), Some(vec![(0, 1), (2, 3)]));
        assert_eq!(
            recognize_lemma1(&path_graph(6)),
            Some(vec![(0, 1), (2, 3), (4, 5)])
        );
    }

    #[test]
    fn lemma2_recognizer_examples() {
        let t = two_triangles();
        assert_eq!(
            recognize_lemma2(&t, 3),
            Some((
                [0, 1, 2].into_iter().collect(),
                [3, 4, 5].into_iter().collect()
            ))
        );
        assert_eq!(recognize_lemma2(&cycle_graph(5), 3), None); // n odd

        // K6 minus a perfect matching splits into two triangles, but its
        // exact Hadwiger number is 4, not 3, so it is not extremal.
        let k6_minus_pm = Graph::from_edge_list(
            6,
            &complete_graph(6)
                .edges()
                .into_iter()
                .filter(|&e| ![(0, 1), (2, 3), (4, 5)].contains(&e))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(crate::invariants::hadwiger_value(&k6_minus_pm).unwrap(), 4);
        assert_eq!(recognize_lemma2(&k6_minus_pm, 4), None);

        // Two isolated vertices: two disjoint K1 with h = 1 = n/2.
        assert_eq!(
            recognize_lemma2(&empty_graph(2), 1),
            Some((VertexSet::singleton(0), VertexSet::singleton(1)))
        );

        // P4 = two K2 plus one cross edge, h = 2 = n/2.
        assert_eq!(
            recognize_lemma2(&path_graph(4), 2),
            Some((
                [0, 1].into_iter().collect(),
                [2, 3].into_iter().collect()
            ))
        );

        // Unbalanced two-clique cover (K1 + K3 as complement of K_{1,3}+edges)
        // must be rejected: here V splits only into cliques of sizes 1 and 3.
        let k4_minus_star = Graph::from_edge_list(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(recognize_lemma2(&k4_minus_star, 2), None);
    }

    #[test]
    fn classify_reports_overlapping_classes() {
        let two_k2 = disjoint_union(&complete_graph(2), &complete_graph(2));
        let b = bundle(&two_k2);
        assert_eq!((b.alpha, b.omega, b.h), (2, 2, 2));
        let c = classify_equality(&two_k2, &b);
        assert_eq!(c.forest_pm, Some(vec![(0, 1), (2, 3)]));
        assert!(c.twin_cliques.is_some());
        assert_eq!(c.tags(), vec![ExtremalTag::ForestPm, ExtremalTag::TwinCliques]);

        let t = two_triangles();
        let c = classify_equality(&t, &bundle(&t));
        assert_eq!(c.tags(), vec![ExtremalTag::TwinCliques]);

        let p6 = path_graph(6);
        let c = classify_equality(&p6, &bundle(&p6));
        assert_eq!(c.tags(), vec![ExtremalTag::ForestPm]);
    }

    /// Equality in (2α−1)·h ≥ n holds iff the graph is complete (noted by
    /// Maffray and Meyniel); checked exhaustively on up to 4 vertices.
    #[test]
    fn dm_equality_iff_complete_small() {
        for n in 1..=4usize {
            for mask in 0..1u64 << (n * (n - 1) / 2) {
                let g = graph_from_edge_mask(n, mask);
                let vals = compute_values(&g, false).unwrap();
                let r = check_values(TheoremId::Dm, &g, &vals);
                assert_eq!(r.equality, g.is_complete(), "mask {mask} on {n}");
            }
        }
    }

    #[test]
    fn theorem_id_round_trips_from_str() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            assert_eq!(
                id.as_str().to_lowercase().parse::<TheoremId>().unwrap(),
                id
            );
        }
        assert!("NOPE".parse::<TheoremId>().is_err());
    }

    #[test]
    fn report_serialization_shape() {
        let g = two_triangles();
        let r = check(TheoremId::Main, &g, &bundle(&g));
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(json["theorem_id"], "MAIN");
        assert_eq!(json["extremal_class"], serde_json::json!(["TWIN_CLIQUES"]));
        assert!(json.get("reason").is_none());

        let k4 = complete_graph(4);
        let r = check(TheoremId::Main, &k4, &bundle(&k4));
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(json["applicable"], false);
        assert_eq!(json["extremal_class"], serde_json::Value::Null);
    }
}
