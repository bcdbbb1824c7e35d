//! Minimal undirected-graph abstraction shared by interval instances and
//! plain adjacency-list graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Read-only view of an undirected graph with a terminal subset.
pub trait Graph: Sync {
    fn vertex_count(&self) -> usize;

    /// Sorted neighbor list of `v`.
    fn neighbors(&self, v: usize) -> &[usize];

    fn is_terminal(&self, v: usize) -> bool;

    /// Terminal vertices in increasing index order.
    fn terminals(&self) -> &[usize];

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.neighbors(u).binary_search(&v).is_ok()
    }

    fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.neighbors(v).len())
            .sum::<usize>()
            / 2
    }

    /// All edges `(u, v)` with `u < v`.
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Ok(())
    }
}

/// Single-source BFS distances over any neighbor function. `None` marks
/// unreachable vertices.
pub fn bfs_from<'a, F>(n: usize, src: usize, mut nbrs: F) -> Vec<Option<u32>>
where
    F: FnMut(usize) -> &'a [usize],
{
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    dist[src] = Some(0);
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in nbrs(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn bfs_distances<G: Graph + ?Sized>(g: &G, src: usize) -> Vec<Option<u32>> {
    bfs_from(g.vertex_count(), src, |v| g.neighbors(v))
}

/// Distance matrix restricted to terminals: `d[i][j]` for the i-th and j-th
/// terminal.
pub fn terminal_distances<G: Graph + ?Sized>(g: &G) -> Vec<Vec<Option<u32>>> {
    let ts = g.terminals();
    ts.iter()
        .map(|&s| {
            let d = bfs_distances(g, s);
            ts.iter().map(|&t| d[t]).collect()
        })
        .collect()
}

/// Generic undirected graph given by adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    adj: Vec<Vec<usize>>,
    terminal: Vec<bool>,
    terminals: Vec<usize>,
}

impl PlainGraph {
    pub fn new(n: usize, edges: &[(usize, usize)], terminal: Vec<bool>) -> Result<Self> {
        if terminal.len() != n {
            return Err(Error::LengthMismatch {
                what: "terminal flags",
                expected: n,
                got: terminal.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let terminals = (0..n).filter(|&v| terminal[v]).collect();
        Ok(PlainGraph {
            adj,
            terminal,
            terminals,
        })
    }

    /// Copy of any graph as adjacency lists.
    pub fn from_graph<G: Graph + ?Sized>(g: &G) -> Self {
        let n = g.vertex_count();
        let adj = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        let terminal: Vec<bool> = (0..n).map(|v| g.is_terminal(v)).collect();
        let terminals = g.terminals().to_vec();
        PlainGraph {
            adj,
            terminal,
            terminals,
        }
    }

    pub fn with_terminals(mut self, terminal: Vec<bool>) -> Result<Self> {
        if terminal.len() != self.adj.len() {
            return Err(Error::LengthMismatch {
                what: "terminal flags",
                expected: self.adj.len(),
                got: terminal.len(),
            });
        }
        self.terminals = (0..terminal.len()).filter(|&v| terminal[v]).collect();
        self.terminal = terminal;
        Ok(self)
    }
}

impl Graph for PlainGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    fn is_terminal(&self, v: usize) -> bool {
        self.terminal[v]
    }

    fn terminals(&self) -> &[usize] {
        &self.terminals
    }
}
