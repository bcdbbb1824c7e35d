//! Additive +1 distance-approximating subgraph.
//!
//! The tree of greedy paths from the first terminal to every other terminal,
//! plus every host edge joining an interior terminal to a tree vertex.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Path};
use crate::subgraph::Subgraph;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DasResult {
    pub subgraph: Subgraph,
    /// Greedy path from the first to the last terminal.
    pub spine: Path,
    /// `(terminal, tree vertex)` edges added on top of the tree.
    pub attachment_edges: Vec<(usize, usize)>,
}

/// Union of greedy paths from the `i`-th terminal (0-based) to every later
/// terminal.
pub fn build_tree(g: &Instance, i: usize) -> Result<Subgraph> {
    let ts = g.terminals();
    if i >= ts.len() {
        return Err(Error::TooFewTerminals { needed: i + 1, found: ts.len() });
    }
    let mut tree = Subgraph::empty(g);
    tree.add_vertex(ts[i]);
    for &t in &ts[i + 1..] {
        tree.add_path(&g.greedy_path(ts[i], t)?);
    }
    Ok(tree)
}

pub fn build_das(g: &Instance) -> Result<DasResult> {
    let ts = g.terminals();
    let k = ts.len();
    if k < 2 {
        return Err(Error::TooFewTerminals { needed: 2, found: k });
    }
    let tree = build_tree(g, 0)?;
    let spine = g.greedy_path(ts[0], ts[k - 1])?;
    let tree_vertices: BTreeSet<usize> = tree.vertices().collect();

    let mut attachment_edges = Vec::new();
    for &t in &ts[1..k - 1] {
        for &v in g.neighbors(t) {
            if tree_vertices.contains(&v) {
                attachment_edges.push((t, v));
            }
        }
    }
    let mut subgraph = tree;
    for v in g.terminals() {
        subgraph.add_vertex(*v);
    }
    for &(t, v) in &attachment_edges {
        subgraph.add_edge(t, v);
    }

    // With every tree branch ending inside the spine, the spine plus the
    // attachments already spans the tree.
    let interior_on_spine = {
        let on_spine: BTreeSet<usize> = spine.vertices.iter().copied().collect();
        ts[1..].iter().all(|&t| {
            let p = g.greedy_path(ts[0], t).expect("tree paths exist");
            p.vertices[..p.vertices.len() - 1].iter().all(|v| on_spine.contains(v))
        })
    };
    let mut spine_form = Subgraph::with_terminals(g);
    spine_form.add_path(&spine);
    for &(t, v) in &attachment_edges {
        spine_form.add_edge(t, v);
    }
    if interior_on_spine {
        if spine_form != subgraph {
            return Err(Error::Invariant("tree form and spine form of the approximating subgraph differ".into()));
        }
    } else {
        log::debug!("greedy tree leaves the spine; spine form not compared");
    }

    Ok(DasResult { subgraph, spine, attachment_edges })
}

/// Greedy walk inside `h`: from `start`, repeatedly move to the subgraph
/// neighbor with the highest canonical index, stopping when no neighbor is
/// further right or after `max_steps` steps.
pub fn greedy_walk_in(g: &Instance, adj: &[Vec<usize>], start: usize, max_steps: usize) -> Vec<usize> {
    let mut walk = vec![start];
    let mut cur = start;
    for _ in 0..max_steps {
        match adj[cur].last() {
            Some(&next) if g.interval(next).right() > g.interval(cur).right() => {
                walk.push(next);
                cur = next;
            }
            _ => break,
        }
    }
    walk
}

/// Steps where the greedy frontier in the host and in `h` are neither equal
/// nor adjacent, for walks starting at every terminal toward the last one.
/// Returns `(terminal, step)` pairs; empty means the frontier claim holds.
pub fn frontier_violations(g: &Instance, h: &Subgraph) -> Vec<(usize, usize)> {
    let ts = g.terminals();
    let Some(&last) = ts.last() else { return Vec::new() };
    let adj = h.adjacency();
    let mut bad = Vec::new();
    for &t in &ts[..ts.len().saturating_sub(1)] {
        let Ok(pg) = g.greedy_path(t, last) else { continue };
        let ph = greedy_walk_in(g, &adj, t, pg.len());
        for p in 1..pg.vertices.len().min(ph.len()) {
            let (a, b) = (pg.vertices[p], ph[p]);
            // The host path ends by jumping to the target; only the greedy
            // frontier steps are compared.
            if p == pg.len() {
                break;
            }
            if a != b && !g.has_edge(a, b) {
                bad.push((t, p));
            }
        }
    }
    bad
}
