//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own adjacency or distance code.

#![allow(dead_code)]

use std::collections::VecDeque;

use interval_dps::instances::{gen_random, Flavor};
use interval_dps::{Instance, Subgraph};

/// Adjacency from a direct pairwise endpoint comparison.
pub fn scan_adjacency(g: &Instance) -> Vec<Vec<usize>> {
    let ivs = g.intervals();
    let n = ivs.len();
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let lo = ivs[u].left().max(ivs[v].left());
            let hi = ivs[u].right().min(ivs[v].right());
            if lo <= hi {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    adj
}

pub fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Adjacency lists of a subgraph's own edges.
pub fn edge_adjacency(n: usize, h: &Subgraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in h.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Degree scan over a subgraph's edges.
pub fn degrees(n: usize, h: &Subgraph) -> Vec<usize> {
    let mut deg = vec![0; n];
    for (u, v) in h.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Largest `d_H - d_G` over terminal pairs, or `None` if some pair
/// connected in `g` is disconnected in `h` or `d_H < d_G` anywhere.
pub fn terminal_stretch(g: &Instance, h: &Subgraph) -> Option<u32> {
    let ga = scan_adjacency(g);
    let ha = edge_adjacency(g.len(), h);
    let ts: Vec<usize> = (0..g.len()).filter(|&v| g.terminal_flags()[v]).collect();
    let mut worst = 0;
    for (i, &s) in ts.iter().enumerate() {
        let dg = bfs(&ga, s);
        let dh = bfs(&ha, s);
        for &t in &ts[i + 1..] {
            match (dg[t], dh[t]) {
                (None, _) => {}
                (Some(a), Some(b)) if b >= a => worst = worst.max(b - a),
                _ => return None,
            }
        }
    }
    Some(worst)
}

/// Instance `i` of a seeded family with sizes drawn from the seed.
pub fn seeded(i: u64, max_n: usize, max_k: usize, flavor: Flavor) -> Instance {
    let n = 2 + (i as usize * 7919) % (max_n - 1);
    let k = (2 + (i as usize * 104_729) % (max_k - 1)).min(n);
    gen_random(n, k, 0x5eed_0000 + i, flavor).unwrap()
}

/// Dijkstra over explicit `(from, to, weight)` arcs on `n` vertices.
pub fn dijkstra(n: usize, arcs: &[(usize, usize, u32)], src: usize) -> Vec<Option<u32>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut out = vec![Vec::new(); n];
    for &(a, b, w) in arcs {
        out[a].push((b, w));
    }
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut heap = BinaryHeap::from([Reverse((0u32, src))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some() {
            continue;
        }
        dist[u] = Some(d);
        for &(v, w) in &out[u] {
            if dist[v].is_none() {
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    dist
}

/// Arcs of a Manhattan digraph with weights, as vertex indices.
pub fn digraph_arcs(d: &interval_dps::instances::WeightedDigraph) -> Vec<(usize, usize, u32)> {
    d.edges().map(|(a, b, kind)| (d.index(a), d.index(b), kind.weight())).collect()
}

/// Bit reversal through string formatting.
pub fn rev_by_string(gamma: u32, x: u64) -> u64 {
    let s = format!("{:0w$b}", x, w = gamma as usize);
    u64::from_str_radix(&s.chars().rev().collect::<String>(), 2).unwrap()
}
