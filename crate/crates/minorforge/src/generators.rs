//! Standard small-graph constructions, mostly for tests and examples.

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edge_list(n, edges).expect("generator produced an invalid graph")
}

/// Edge-empty graph on `n` vertices.
pub fn empty_graph(n: usize) -> Graph {
    build(n, &[])
}

/// Path 0-1-…-(n-1).
pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    build(n, &edges)
}

/// Complete graph K_n.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, &edges)
}

/// Star with centre 0 and `leaves` leaves.
pub fn star_graph(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    build(leaves + 1, &edges)
}

/// Complete bipartite graph with parts {0..a} and {a..a+b}.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    build(a + b, &edges)
}

/// The Petersen graph: outer cycle 0..5, spokes to 5..10, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Disjoint union; vertices of `h` are shifted up by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.n();
    let mut edges = g.edges();
    edges.extend(h.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
    build(shift + h.n(), &edges)
}

/// Two disjoint triangles: the classic equality witness on six vertices.
pub fn two_triangles() -> Graph {
    disjoint_union(&complete_graph(3), &complete_graph(3))
}

/// All labeled graphs on `n` vertices correspond to edge masks
/// 0..2^(n(n-1)/2); bit t of the mask is the t-th pair in graph6 order
/// (0,1), (0,2), (1,2), (0,3), …
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    assert!(n <= 11, "edge masks only cover n ≤ 11");
    let mut g = Graph::empty(n).unwrap();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> t & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
            t += 1;
        }
    }
    g
}
