//! Subgraphs of a host graph, branching metrics and distance verification.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, bfs_from, Graph};
use crate::instance::Path;

/// Vertex and edge subset of a host graph. Edges are stored as `(u, v)` with
/// `u < v`; adding an edge adds both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    terminal: Vec<bool>,
    vertices: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

#[inline]
fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Subgraph {
    /// No vertices, no edges.
    pub fn empty<G: Graph + ?Sized>(host: &G) -> Self {
        Subgraph {
            terminal: (0..host.vertex_count()).map(|v| host.is_terminal(v)).collect(),
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }

    /// All terminals of the host, no edges.
    pub fn with_terminals<G: Graph + ?Sized>(host: &G) -> Self {
        let mut h = Self::empty(host);
        h.vertices.extend(host.terminals().iter().copied());
        h
    }

    /// The whole host graph.
    pub fn full<G: Graph + ?Sized>(host: &G) -> Self {
        let mut h = Self::empty(host);
        h.vertices.extend(0..host.vertex_count());
        h.edges.extend(host.edges());
        h
    }

    pub fn from_edges<G: Graph + ?Sized>(host: &G, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut h = Self::with_terminals(host);
        for (u, v) in edges {
            h.add_edge(u, v);
        }
        h
    }

    pub fn host_size(&self) -> usize {
        self.terminal.len()
    }

    pub fn is_host_terminal(&self, v: usize) -> bool {
        self.terminal[v]
    }

    pub fn add_vertex(&mut self, v: usize) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert_ne!(u, v);
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(norm(u, v))
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&norm(u, v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&norm(u, v))
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn add_path(&mut self, p: &Path) {
        for &v in &p.vertices {
            self.vertices.insert(v);
        }
        for (u, v) in p.edges() {
            self.add_edge(u, v);
        }
    }

    pub fn union_with(&mut self, other: &Subgraph) {
        self.vertices.extend(other.vertices.iter().copied());
        self.edges.extend(other.edges.iter().copied());
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adjacency lists indexed by host vertex; vertices outside the subgraph
    /// get empty lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.host_size()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.host_size()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Vertices of degree at least three in this subgraph, terminals included.
    pub fn branching_vertices(&self) -> (usize, Vec<usize>) {
        let deg = self.degrees();
        let list: Vec<usize> = (0..deg.len()).filter(|&v| deg[v] >= 3).collect();
        (list.len(), list)
    }

    /// Number of non-terminal vertices of degree at least three.
    pub fn non_terminal_branching(&self) -> usize {
        let deg = self.degrees();
        (0..deg.len()).filter(|&v| deg[v] >= 3 && !self.terminal[v]).count()
    }

    /// Edges with an endpoint that is a non-terminal branching vertex.
    pub fn branching_edges(&self) -> usize {
        let deg = self.degrees();
        let hot = |v: usize| deg[v] >= 3 && !self.terminal[v];
        self.edges.iter().filter(|&&(u, v)| hot(u) || hot(v)).count()
    }

    /// Every edge must be a host edge.
    pub fn check_host<G: Graph + ?Sized>(&self, host: &G) -> Result<()> {
        if host.vertex_count() != self.host_size() {
            return Err(Error::LengthMismatch {
                what: "subgraph host",
                expected: host.vertex_count(),
                got: self.host_size(),
            });
        }
        for &(u, v) in &self.edges {
            if !host.has_edge(u, v) {
                return Err(Error::NotHostEdge(u, v));
            }
        }
        Ok(())
    }

    /// BFS distances inside the subgraph from `src`.
    pub fn distances_from(&self, adj: &[Vec<usize>], src: usize) -> Vec<Option<u32>> {
        if !self.vertices.contains(&src) {
            return vec![None; self.host_size()];
        }
        bfs_from(adj.len(), src, |v| adj[v].as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub d_host: Option<u32>,
    pub d_sub: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Largest observed `d_sub - d_host` over pairs connected in both.
    pub max_stretch: u32,
}

pub fn verify_preserving<G: Graph + ?Sized>(g: &G, h: &Subgraph) -> Result<VerificationReport> {
    verify_approx(g, h, 0)
}

/// Checks `d_G <= d_H <= d_G + slack` for all terminal pairs. Pairs
/// disconnected in the host are trivially fine.
pub fn verify_approx<G: Graph + ?Sized>(g: &G, h: &Subgraph, slack: u32) -> Result<VerificationReport> {
    h.check_host(g)?;
    let ts = g.terminals();
    let adj = h.adjacency();
    let per_source: Vec<(Vec<Violation>, u32)> = ts
        .par_iter()
        .enumerate()
        .map(|(idx, &s)| {
            let dg = bfs_distances(g, s);
            let dh = h.distances_from(&adj, s);
            let mut bad = Vec::new();
            let mut stretch = 0;
            for &t in &ts[idx + 1..] {
                match (dg[t], dh[t]) {
                    (None, None) => {}
                    (Some(a), Some(b)) => {
                        assert!(b >= a, "subgraph distance {b} below host distance {a} for ({s}, {t})");
                        stretch = stretch.max(b - a);
                        if b > a + slack {
                            bad.push(Violation { u: s, v: t, d_host: dg[t], d_sub: dh[t] });
                        }
                    }
                    (Some(_), None) => bad.push(Violation { u: s, v: t, d_host: dg[t], d_sub: None }),
                    (None, Some(_)) => unreachable!("subgraph connects a pair the host does not"),
                }
            }
            (bad, stretch)
        })
        .collect();
    let mut violations = Vec::new();
    let mut max_stretch = 0;
    for (bad, s) in per_source {
        violations.extend(bad);
        max_stretch = max_stretch.max(s);
    }
    Ok(VerificationReport {
        ok: violations.is_empty(),
        violations,
        max_stretch,
    })
}
