//! The directed 0/1-weighted Manhattan grid with bit-reversal terminals, the
//! unit interval graph laid out on the same grid, and the map that turns a
//! subgraph of the latter into a subgraph of the former.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::instances::bits::{hypercube_edges, lca_triple, rev_value, BitString};
use crate::interval::{coord, Interval};
use crate::subgraph::Subgraph;

/// Grid cell `(row, column)`, columns running from `-1` to `k`.
pub type Cell = (usize, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Hor,
    Up,
    Down,
}

impl EdgeKind {
    pub fn weight(self) -> u32 {
        match self {
            EdgeKind::Hor | EdgeKind::Up => 1,
            EdgeKind::Down => 0,
        }
    }
}

/// Returns `Some(gamma)` when `k = 2^gamma` with `k >= 2`.
pub fn log2_exact(k: usize) -> Option<u32> {
    (k >= 2 && k.is_power_of_two()).then(|| k.trailing_zeros())
}

/// A subgraph of the `k x (k+2)` Manhattan grid. Edges are directed and
/// their kind (hence weight) follows from the endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDigraph {
    k: usize,
    gamma: u32,
    edges: BTreeSet<(usize, usize)>,
}

impl WeightedDigraph {
    /// Grid with no edges.
    pub fn empty(k: usize) -> Result<Self> {
        let gamma = log2_exact(k).ok_or(Error::NotPowerOfTwo(k))?;
        Ok(WeightedDigraph { k, gamma, edges: BTreeSet::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn vertex_count(&self) -> usize {
        self.k * (self.k + 2)
    }

    pub fn index(&self, (i, j): Cell) -> usize {
        debug_assert!(i < self.k && (-1..=self.k as i64).contains(&j));
        i * (self.k + 2) + (j + 1) as usize
    }

    pub fn cell(&self, v: usize) -> Cell {
        (v / (self.k + 2), (v % (self.k + 2)) as i64 - 1)
    }

    fn valid_cell(&self, (i, j): Cell) -> bool {
        i < self.k && (-1..=self.k as i64).contains(&j)
    }

    /// Kind of the directed grid edge `a -> b`, if it is one.
    pub fn kind_of(&self, a: Cell, b: Cell) -> Option<EdgeKind> {
        if !self.valid_cell(a) || !self.valid_cell(b) {
            return None;
        }
        if a.0 == b.0 && b.1 == a.1 + 1 {
            Some(EdgeKind::Hor)
        } else if a.1 == b.1 && b.0 < a.0 {
            Some(EdgeKind::Up)
        } else if a.1 == b.1 && a.0 < b.0 {
            Some(EdgeKind::Down)
        } else {
            None
        }
    }

    pub fn add_edge(&mut self, a: Cell, b: Cell) -> Result<EdgeKind> {
        let kind = self.kind_of(a, b).ok_or_else(|| {
            Error::InvalidParameter(format!("({},{}) -> ({},{}) is not a grid edge", a.0, a.1, b.0, b.1))
        })?;
        let (u, v) = (self.index(a), self.index(b));
        self.edges.insert((u, v));
        Ok(kind)
    }

    pub fn remove_edge(&mut self, a: Cell, b: Cell) -> bool {
        let (u, v) = (self.index(a), self.index(b));
        self.edges.remove(&(u, v))
    }

    pub fn has_edge(&self, a: Cell, b: Cell) -> bool {
        self.valid_cell(a) && self.valid_cell(b) && self.edges.contains(&(self.index(a), self.index(b)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(from, to, kind)`.
    pub fn edges(&self) -> impl Iterator<Item = (Cell, Cell, EdgeKind)> + '_ {
        self.edges.iter().map(|&(u, v)| {
            let (a, b) = (self.cell(u), self.cell(v));
            (a, b, self.kind_of(a, b).expect("stored edges are grid edges"))
        })
    }

    pub fn t_left(&self) -> Vec<Cell> {
        (0..self.k).map(|i| (i, -1)).collect()
    }

    pub fn t_right(&self) -> Vec<Cell> {
        (0..self.k).map(|i| (i, self.k as i64)).collect()
    }

    /// `t_i = (rev(i), i)` in order of `i`.
    pub fn t_mid(&self) -> Vec<Cell> {
        (0..self.k).map(|i| (rev_value(self.gamma, i as u64) as usize, i as i64)).collect()
    }

    pub fn terminals(&self) -> Vec<Cell> {
        let mut t = self.t_left();
        t.extend(self.t_mid());
        t.extend(self.t_right());
        t
    }

    pub fn is_terminal(&self, c: Cell) -> bool {
        c.1 == -1 || c.1 == self.k as i64 || c.0 as u64 == rev_value(self.gamma, c.1 as u64)
    }

    fn out_lists(&self) -> Vec<Vec<(usize, u32)>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (a, b, kind) in self.edges() {
            out[self.index(a)].push((self.index(b), kind.weight()));
        }
        out
    }

    /// Vertices with at least three distinct neighbors, ignoring direction.
    pub fn branching_vertices(&self) -> Vec<Cell> {
        let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            nbrs[u].insert(v);
            nbrs[v].insert(u);
        }
        (0..self.vertex_count()).filter(|&v| nbrs[v].len() >= 3).map(|v| self.cell(v)).collect()
    }
}

/// Full Manhattan grid: every horizontal, upward and downward edge.
pub fn gen_manhattan(k: usize) -> Result<WeightedDigraph> {
    let mut d = WeightedDigraph::empty(k)?;
    let kk = k as i64;
    for i in 0..k {
        for j in -1..kk {
            d.add_edge((i, j), (i, j + 1))?;
        }
    }
    for j in -1..=kk {
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    d.add_edge((a, j), (b, j))?;
                }
            }
        }
    }
    Ok(d)
}

/// 0-1 breadth-first search from `src`; `None` marks unreachable cells.
/// Also returns the predecessor of each reached cell on one shortest path.
pub fn weighted_distances_from(d: &WeightedDigraph, src: Cell) -> (Vec<Option<u32>>, Vec<Option<usize>>) {
    let out = d.out_lists();
    let n = d.vertex_count();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut pred = vec![None; n];
    let s = d.index(src);
    dist[s] = Some(0);
    let mut dq = VecDeque::from([s]);
    while let Some(u) = dq.pop_front() {
        let du = dist[u].unwrap();
        for &(v, w) in &out[u] {
            let nd = du + w;
            if dist[v].map_or(true, |dv| nd < dv) {
                dist[v] = Some(nd);
                pred[v] = Some(u);
                if w == 0 {
                    dq.push_front(v);
                } else {
                    dq.push_back(v);
                }
            }
        }
    }
    (dist, pred)
}

pub fn weighted_distance(d: &WeightedDigraph, u: Cell, v: Cell) -> Option<u32> {
    weighted_distances_from(d, u).0[d.index(v)]
}

/// Distances between all ordered pairs of `cells`.
pub fn pairwise_distances(d: &WeightedDigraph, cells: &[Cell]) -> Vec<Vec<Option<u32>>> {
    cells
        .iter()
        .map(|&a| {
            let dist = weighted_distances_from(d, a).0;
            cells.iter().map(|&b| dist[d.index(b)]).collect()
        })
        .collect()
}

/// Removes edges one at a time, in order, whenever every pairwise distance
/// among `cells` survives. The result is inclusion-minimal.
pub fn prune_preserving(d: &WeightedDigraph, cells: &[Cell]) -> WeightedDigraph {
    let target = pairwise_distances(d, cells);
    let mut h = d.clone();
    let edges: Vec<(Cell, Cell, EdgeKind)> = d.edges().collect();
    for (a, b, _) in edges {
        h.remove_edge(a, b);
        if pairwise_distances(&h, cells) != target {
            h.add_edge(a, b).expect("edge came from the grid");
        }
    }
    h
}

/// Per friend pair `(i, j)`: the row `r` of the last horizontal step out of
/// column `floor(lca(i, j))` on a shortest path in the subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialEdge {
    pub pair: (usize, usize),
    pub row: usize,
    pub column: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialEdgeReport {
    pub special: Vec<SpecialEdge>,
    /// Friend pairs whose distance is not `j - i` in the subgraph.
    pub distance_violations: usize,
    /// Special edges whose row lies outside `[rev(i), rev(j)]`.
    pub row_violations: usize,
    /// Distinct pairs with special edges in one row and one column.
    pub collisions: usize,
    /// Consecutive special edges in a row with no branching vertex or
    /// terminal strictly after the first and at or before the second column.
    pub unseparated: usize,
    /// Sum over rows of `max(distinct special edges in row - 2, 0)`.
    pub branching_lower_bound: usize,
    pub branching: usize,
}

impl SpecialEdgeReport {
    pub fn ok(&self) -> bool {
        self.distance_violations == 0
            && self.row_violations == 0
            && self.collisions == 0
            && self.unseparated == 0
            && self.branching >= self.branching_lower_bound
    }
}

/// Locates special edges on shortest friend-pair paths in `h` and checks the
/// row-separation argument on them.
pub fn special_edge_report(h: &WeightedDigraph) -> Result<SpecialEdgeReport> {
    let gamma = h.gamma();
    let mid = h.t_mid();
    let mut rep = SpecialEdgeReport::default();
    for (i, j) in hypercube_edges(gamma) {
        let (i, j) = (i as usize, j as usize);
        let (dist, pred) = weighted_distances_from(h, mid[i]);
        if dist[h.index(mid[j])] != Some((j - i) as u32) {
            rep.distance_violations += 1;
            continue;
        }
        let mut path = vec![h.index(mid[j])];
        while let Some(p) = pred[*path.last().unwrap()] {
            path.push(p);
        }
        path.reverse();
        let alpha = lca_triple(BitString::new(gamma, i as u64)?, BitString::new(gamma, j as u64)?)?.floor.value() as i64;
        let step = path.windows(2).rev().find(|w| {
            let (a, b) = (h.cell(w[0]), h.cell(w[1]));
            a.0 == b.0 && a.1 == alpha && b.1 == alpha + 1
        });
        let Some(step) = step else {
            rep.row_violations += 1;
            continue;
        };
        let row = h.cell(step[0]).0;
        let (lo, hi) = (rev_value(gamma, i as u64) as usize, rev_value(gamma, j as u64) as usize);
        if row < lo || row > hi {
            rep.row_violations += 1;
        }
        rep.special.push(SpecialEdge { pair: (i, j), row, column: alpha });
    }

    let branching: BTreeSet<Cell> = h.branching_vertices().into_iter().collect();
    rep.branching = branching.len();
    let mut by_row: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for s in &rep.special {
        by_row.entry(s.row).or_default().push(s.column);
    }
    for (&row, cols) in &mut by_row {
        let total = cols.len();
        cols.sort_unstable();
        cols.dedup();
        rep.collisions += total - cols.len();
        rep.branching_lower_bound += cols.len().saturating_sub(2);
        for w in cols.windows(2) {
            let separated = (w[0] + 1..=w[1]).any(|l| branching.contains(&(row, l)) || h.is_terminal((row, l)));
            if !separated {
                rep.unseparated += 1;
            }
        }
    }
    Ok(rep)
}

/// Directed edge classes of the grid-arranged unit interval graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GintEdge {
    Hor,
    Up,
    Slant,
}

/// Canonical index of the interval in row `i`, column `j`.
pub fn gint_index(k: usize, (i, j): Cell) -> usize {
    (j + 1) as usize * k + (k - 1 - i)
}

pub fn gint_cell(k: usize, p: usize) -> Cell {
    (k - 1 - p % k, (p / k) as i64 - 1)
}

/// Interval `[j + (k-1-i)/k, j + 1 + (k-1-i)/k]`.
pub fn gint_interval(k: usize, (i, j): Cell) -> Interval {
    let left = coord(j, 1) + coord((k - 1 - i) as i64, k as i64);
    Interval::new(left, left + coord(1, 1)).expect("unit interval")
}

/// Class of the edge from the earlier interval `p` to the later `q`.
pub fn classify_gint_edge(k: usize, p: usize, q: usize) -> Option<GintEdge> {
    if q <= p || q - p > k {
        return None;
    }
    let (a, b) = (gint_cell(k, p), gint_cell(k, q));
    if q - p == k {
        Some(GintEdge::Hor)
    } else if a.1 == b.1 && b.0 < a.0 {
        Some(GintEdge::Up)
    } else if b.1 == a.1 + 1 && b.0 > a.0 {
        Some(GintEdge::Slant)
    } else {
        None
    }
}

/// Unit intervals at every multiple of `1/k` in `[-1, k + 1 - 1/k]`, laid
/// out so that canonical index `p` is cell `gint_cell(k, p)`, with
/// terminals at the Manhattan terminal cells.
pub fn gen_gint(k: usize) -> Result<Instance> {
    let grid = WeightedDigraph::empty(k)?;
    let n = k * (k + 2);
    let mut ivs = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for p in 0..n {
        let c = gint_cell(k, p);
        ivs.push(gint_interval(k, c));
        flags.push(grid.is_terminal(c));
    }
    let (g, order) = crate::instance::build_instance(&ivs, &flags)?;
    if order.iter().enumerate().any(|(p, &c)| p != c) {
        return Err(Error::Invariant("grid intervals are not in canonical order".into()));
    }
    Ok(g)
}

/// Replaces each slanting edge `(a[i][j], a[i'][j+1])` by the downward edge
/// `((i,j), (i',j))` and keeps horizontal and upward edges.
pub fn slant_transform(k: usize, h: &Subgraph) -> Result<WeightedDigraph> {
    let mut out = WeightedDigraph::empty(k)?;
    if h.host_size() != k * (k + 2) {
        return Err(Error::LengthMismatch { what: "grid subgraph vertices", expected: k * (k + 2), got: h.host_size() });
    }
    for i in 0..k {
        for j in -1..k as i64 {
            if !h.has_edge(gint_index(k, (i, j)), gint_index(k, (i, j + 1))) {
                return Err(Error::MissingHorizontalEdge((i, j), (i, j + 1)));
            }
        }
    }
    for (u, v) in h.edges() {
        let (p, q) = (u.min(v), u.max(v));
        let (a, b) = (gint_cell(k, p), gint_cell(k, q));
        match classify_gint_edge(k, p, q) {
            Some(GintEdge::Hor) | Some(GintEdge::Up) => {
                out.add_edge(a, b)?;
            }
            Some(GintEdge::Slant) => {
                out.add_edge(a, (b.0, a.1))?;
            }
            None => return Err(Error::NotHostEdge(p, q)),
        }
    }
    Ok(out)
}

/// Branching counts on both sides of the transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlantReport {
    pub int_branching: usize,
    pub mh_branching: usize,
    /// `max(mh - 2 * int, 0)`.
    pub additive: usize,
}

pub fn slant_report(k: usize, h: &Subgraph) -> Result<(WeightedDigraph, SlantReport)> {
    let mh = slant_transform(k, h)?;
    let int_branching = h.branching_vertices().0;
    let mh_branching = mh.branching_vertices().len();
    let additive = mh_branching.saturating_sub(2 * int_branching);
    Ok((mh, SlantReport { int_branching, mh_branching, additive }))
}

/// Undirected distances between `t_mid` intervals of a grid interval
/// subgraph, in `t_mid` order.
pub fn gint_mid_distances(k: usize, h: &Subgraph) -> Result<Vec<Vec<Option<u32>>>> {
    let grid = WeightedDigraph::empty(k)?;
    let mids: Vec<usize> = grid.t_mid().into_iter().map(|c| gint_index(k, c)).collect();
    let adj = h.adjacency();
    Ok(mids
        .iter()
        .map(|&a| {
            let d = h.distances_from(&adj, a);
            mids.iter().map(|&b| d[b]).collect()
        })
        .collect())
}

/// Host edges of the grid interval graph with their class.
pub fn gint_edges(g: &Instance) -> Vec<(usize, usize, GintEdge)> {
    let k = ((g.len() as f64 + 1.0).sqrt() - 1.0).round() as usize;
    g.edges().into_iter().filter_map(|(u, v)| classify_gint_edge(k, u, v).map(|c| (u, v, c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        for k in [2, 4, 8] {
            let d = gen_manhattan(k).unwrap();
            assert_eq!(d.vertex_count(), k * k + 2 * k);
            assert_eq!(d.terminals().len(), 3 * k);
            let mids: BTreeSet<usize> = d.t_mid().iter().map(|c| c.0).collect();
            assert_eq!(mids.len(), k);
        }
        assert_eq!(gen_manhattan(3).unwrap_err(), Error::NotPowerOfTwo(3));
        assert!(gen_manhattan(1).is_err());
    }

    #[test]
    fn weights_by_kind() {
        let d = gen_manhattan(2).unwrap();
        assert_eq!(d.kind_of((0, 0), (0, 1)), Some(EdgeKind::Hor));
        assert_eq!(d.kind_of((1, 0), (0, 0)), Some(EdgeKind::Up));
        assert_eq!(d.kind_of((0, 0), (1, 0)), Some(EdgeKind::Down));
        assert_eq!(d.kind_of((0, 0), (1, 1)), None);
        assert_eq!(weighted_distance(&d, (0, 0), (1, 0)), Some(0));
        assert_eq!(weighted_distance(&d, (1, 0), (0, 0)), Some(1));
        assert_eq!(weighted_distance(&d, (0, 1), (0, 0)), None);
        assert_eq!(weighted_distance(&d, (1, 1), (1, 1)), Some(0));
    }

    #[test]
    fn gint_layout() {
        let k = 4;
        let g = gen_gint(k).unwrap();
        assert_eq!(g.len(), k * (k + 2));
        assert_eq!(g.interval(gint_index(k, (0, 0))), Interval::new(coord(3, 4), coord(7, 4)).unwrap());
        for p in 0..g.len() {
            assert_eq!(gint_index(k, gint_cell(k, p)), p);
        }
        assert_eq!(g.terminals().len(), 3 * k);
    }

    #[test]
    fn single_slant_becomes_down_edge() {
        let k = 2;
        let g = gen_gint(k).unwrap();
        let mut h = Subgraph::with_terminals(&g);
        for i in 0..k {
            for j in -1..k as i64 {
                h.add_edge(gint_index(k, (i, j)), gint_index(k, (i, j + 1)));
            }
        }
        let rows = slant_transform(k, &h).unwrap();
        assert!(rows.edges().all(|(_, _, kind)| kind == EdgeKind::Hor));
        h.add_edge(gint_index(k, (0, 0)), gint_index(k, (1, 1)));
        let mh = slant_transform(k, &h).unwrap();
        assert!(mh.has_edge((0, 0), (1, 0)));
        assert_eq!(weighted_distance(&mh, (0, 0), (1, 1)), Some(1));

        h.remove_edge(gint_index(k, (1, 0)), gint_index(k, (1, 1)));
        assert_eq!(slant_transform(k, &h).unwrap_err(), Error::MissingHorizontalEdge((1, 0), (1, 1)));
    }

    #[test]
    fn pruned_grid_passes_counting_checks() {
        let d = gen_manhattan(4).unwrap();
        let h = prune_preserving(&d, &d.terminals());
        let rep = special_edge_report(&h).unwrap();
        assert_eq!(rep.special.len(), 4);
        assert!(rep.ok(), "{rep:?}");
    }
}
