//! Interval graphs with terminals, kept in canonical order.
//!
//! Vertices are re-indexed by increasing right endpoint with ties broken by
//! input position, so the order is strict even when endpoints coincide.
//! Adjacency always uses the original coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph};
use crate::interval::{Coord, Interval};

/// A vertex sequence where consecutive entries are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<usize>,
}

impl Path {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    intervals: Vec<Interval>,
    terminal: Vec<bool>,
    terminals: Vec<usize>,
    adj: Vec<Vec<usize>>,
    /// Highest canonical index among `v` and its neighbors.
    farthest: Vec<usize>,
    /// Canonical index -> position in the input list.
    input_index: Vec<usize>,
}

/// Builds the instance and also returns the map from input position to
/// canonical index.
pub fn build_instance(intervals: &[Interval], terminal_flags: &[bool]) -> Result<(Instance, Vec<usize>)> {
    if intervals.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if terminal_flags.len() != intervals.len() {
        return Err(Error::LengthMismatch {
            what: "terminal flags",
            expected: intervals.len(),
            got: terminal_flags.len(),
        });
    }
    for (i, iv) in intervals.iter().enumerate() {
        if iv.left() > iv.right() {
            return Err(Error::InvalidInterval { index: i });
        }
    }
    Ok(Instance::assemble(intervals, terminal_flags))
}

impl Instance {
    pub fn new(intervals: &[Interval], terminal_flags: &[bool]) -> Result<Self> {
        build_instance(intervals, terminal_flags).map(|(g, _)| g)
    }

    /// The instance with no vertices.
    pub fn empty() -> Self {
        Instance {
            intervals: Vec::new(),
            terminal: Vec::new(),
            terminals: Vec::new(),
            adj: Vec::new(),
            farthest: Vec::new(),
            input_index: Vec::new(),
        }
    }

    fn assemble(intervals: &[Interval], flags: &[bool]) -> (Instance, Vec<usize>) {
        let n = intervals.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| intervals[a].right().cmp(&intervals[b].right()).then(a.cmp(&b)));
        let mut to_canon = vec![0; n];
        for (c, &i) in order.iter().enumerate() {
            to_canon[i] = c;
        }
        let ivs: Vec<Interval> = order.iter().map(|&i| intervals[i]).collect();
        let terminal: Vec<bool> = order.iter().map(|&i| flags[i]).collect();
        let terminals = (0..n).filter(|&v| terminal[v]).collect();

        // Sweep in order of left endpoint; every interval whose left endpoint
        // is at most right(v) and whose right endpoint is at least left(v)
        // meets v.
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by(|&a, &b| ivs[a].left().cmp(&ivs[b].left()).then(a.cmp(&b)));
        let mut adj = vec![Vec::new(); n];
        for (pos, &u) in by_left.iter().enumerate() {
            for &w in &by_left[pos + 1..] {
                if ivs[w].left() > ivs[u].right() {
                    break;
                }
                if ivs[w].right() >= ivs[u].left() {
                    adj[u].push(w);
                    adj[w].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let farthest = (0..n)
            .map(|v| adj[v].last().copied().map_or(v, |w| w.max(v)))
            .collect();
        (
            Instance {
                intervals: ivs,
                terminal,
                terminals,
                adj,
                farthest,
                input_index: order,
            },
            to_canon,
        )
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn interval(&self, v: usize) -> Interval {
        self.intervals[v]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn terminal_flags(&self) -> &[bool] {
        &self.terminal
    }

    /// Position of canonical vertex `v` in the list the instance was built from.
    pub fn input_index(&self, v: usize) -> usize {
        self.input_index[v]
    }

    /// Neighbor of `v` (or `v` itself) with the highest canonical index.
    pub fn farthest(&self, v: usize) -> usize {
        self.farthest[v]
    }

    /// Canonical order: `u` strictly before `v`.
    #[inline]
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        u < v
    }

    pub fn bfs_distance(&self, u: usize, v: usize) -> Result<Option<u32>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(bfs_distances(self, u)[v])
    }

    /// Greedy shortest path from `u` to `v`: repeatedly jump to the neighbor
    /// reaching farthest right until the current interval meets `v`.
    pub fn greedy_path(&self, u: usize, v: usize) -> Result<Path> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if v < u {
            return Err(Error::NotOriented { u, v });
        }
        let mut vertices = vec![u];
        if u == v {
            return Ok(Path { vertices });
        }
        let target = self.intervals[v];
        let mut cur = u;
        while !self.intervals[cur].intersects(&target) {
            let next = self.farthest[cur];
            if self.intervals[next].right() <= self.intervals[cur].right() {
                return Err(Error::Disconnected { u, v });
            }
            vertices.push(next);
            cur = next;
        }
        vertices.push(v);
        Ok(Path { vertices })
    }

    /// Greedy path between two vertices in either order, listed from the
    /// canonically earlier one.
    pub fn greedy_path_unordered(&self, u: usize, v: usize) -> Result<Path> {
        if u <= v {
            self.greedy_path(u, v)
        } else {
            self.greedy_path(v, u)
        }
    }

    /// Induced subinstance on intervals meeting `[a, b]` (or `[a, b)`), with
    /// the map from its vertices back to `self`.
    pub fn window(&self, a: Coord, b: Coord, right_open: bool) -> Result<(Instance, Vec<usize>)> {
        if a > b {
            return Err(Error::InvalidWindow);
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&v| self.intervals[v].meets_window(a, b, right_open))
            .collect();
        Ok((self.induced(&keep), keep))
    }

    /// Induced subinstance on `keep`, which must be sorted ascending. Its
    /// canonical order agrees with the restriction of ours.
    pub fn induced(&self, keep: &[usize]) -> Instance {
        if keep.is_empty() {
            return Instance::empty();
        }
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let ivs: Vec<Interval> = keep.iter().map(|&v| self.intervals[v]).collect();
        let flags: Vec<bool> = keep.iter().map(|&v| self.terminal[v]).collect();
        Instance::assemble(&ivs, &flags).0
    }

    /// Vertices whose interval contains `p`.
    pub fn containing(&self, p: Coord) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| self.intervals[v].contains_point(p))
    }
}

impl Graph for Instance {
    fn vertex_count(&self) -> usize {
        self.intervals.len()
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
