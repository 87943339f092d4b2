//! Brute-force oracles, deliberately dumb and independent of the library's
//! search paths, plus corpus generators for the acceptance suite.

#![allow(dead_code)]

use minorforge::graph::{Graph, VertexSet};

/// Exact independence number by scanning all 2^n vertex subsets.
pub fn mis_brute_force(g: &Graph) -> u32 {
    let n = g.n();
    assert!(n <= 20, "subset scan oracle is for small graphs");
    let mut best = 0u32;
    for mask in 0u64..1 << n {
        let independent = VertexSet::from_bits(mask)
            .iter()
            .all(|v| g.neighbors(v).bits() & mask == 0);
        if independent {
            best = best.max(mask.count_ones());
        }
    }
    best
}

/// Exact Hadwiger number by enumerating every partition of every vertex
/// subset into blocks (restricted-growth order, with a "leave out" option)
/// and keeping the largest family whose blocks are connected and pairwise
/// joined by an edge.
pub fn hadwiger_brute_force(g: &Graph) -> u32 {
    let n = g.n();
    assert!((1..=10).contains(&n), "partition oracle is for small graphs");
    fn valid(g: &Graph, blocks: &[u64]) -> bool {
        for (i, &b) in blocks.iter().enumerate() {
            if !g.set_connected(VertexSet::from_bits(b)) {
                return false;
            }
            for &c in &blocks[i + 1..] {
                let joined = VertexSet::from_bits(b)
                    .iter()
                    .any(|v| g.neighbors(v).bits() & c != 0);
                if !joined {
                    return false;
                }
            }
        }
        true
    }
    fn rec(g: &Graph, v: usize, blocks: &mut Vec<u64>, best: &mut u32) {
        if v == g.n() {
            if blocks.len() as u32 > *best && valid(g, blocks) {
                *best = blocks.len() as u32;
            }
            return;
        }
        rec(g, v + 1, blocks, best); // leave v out
        for i in 0..blocks.len() {
            blocks[i] |= 1 << v;
            rec(g, v + 1, blocks, best);
            blocks[i] &= !(1u64 << v);
        }
        blocks.push(1 << v);
        rec(g, v + 1, blocks, best);
        blocks.pop();
    }
    let mut best = 0;
    rec(g, 0, &mut Vec::new(), &mut best);
    best
}

/// Exact chromatic number by trying k = 1, 2, … with a plain backtracking
/// color assignment in vertex order (no ordering heuristics, no symmetry
/// breaking).
pub fn chromatic_brute_force(g: &Graph) -> u32 {
    let n = g.n();
    assert!((1..=10).contains(&n), "coloring oracle is for small graphs");
    fn rec(g: &Graph, k: u32, v: usize, colors: &mut [u32]) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            let clash = g.neighbors(v).iter().any(|u| u < v && colors[u] == c);
            if !clash {
                colors[v] = c;
                if rec(g, k, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    for k in 1..=n as u32 {
        if rec(g, k, 0, &mut vec![u32::MAX; n]) {
            return k;
        }
    }
    unreachable!("n colors always color n vertices");
}

/// All labeled triangle-free graphs on n vertices as graph6 lines, by DFS
/// over edge slots that never closes a triangle.
pub fn triangle_free_graph6_lines(n: usize, out: &mut String) {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    fn rec(
        n: usize,
        pairs: &[(usize, usize)],
        t: usize,
        adj: &mut [u64],
        edges: &mut Vec<(usize, usize)>,
        out: &mut String,
    ) {
        if t == pairs.len() {
            let g = Graph::from_edge_list(n, edges).unwrap();
            out.push_str(&minorforge::to_graph6(&g));
            out.push('\n');
            return;
        }
        rec(n, pairs, t + 1, adj, edges, out);
        let (u, v) = pairs[t];
        if adj[u] & adj[v] == 0 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            edges.push((u, v));
            rec(n, pairs, t + 1, adj, edges, out);
            edges.pop();
            adj[u] &= !(1u64 << v);
            adj[v] &= !(1u64 << u);
        }
    }
    rec(n, &pairs, 0, &mut vec![0; n], &mut Vec::new(), out);
}

pub fn petersen() -> Graph {
    minorforge::generators::petersen()
}
