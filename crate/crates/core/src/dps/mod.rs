//! Exact distance-preserving subgraphs with few branching vertices.
//!
//! Unit/point instances (point terminals, unit non-terminals) are handled by
//! greedy paths into the rightmost terminal, a patch for nearby pairs, and a
//! divide-and-conquer over windows of the line. General instances are first
//! normalized to that shape and the result is lifted back.

mod normalize;

use std::collections::BTreeSet;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use normalize::{lift, normalize, NormalizationMap};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph};
use crate::instance::{Instance, Path};
use crate::interval::Coord;
use crate::subgraph::Subgraph;

/// Pairs at most this far apart get their greedy path added outright.
pub const NEAR_PAIR_DISTANCE: u32 = 4;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowStats {
    pub depth: usize,
    pub a: Coord,
    pub b: Coord,
    pub cut: Coord,
    pub terminals: usize,
    pub left_terminals: usize,
    /// Non-terminals of the left paths meeting `[cut, cut + 1]`.
    pub near_cut: usize,
    /// Distinct non-terminals used to hook far-right terminals.
    pub hooks: usize,
    /// The cut had to move past coincident terminals at `a`.
    pub fallback: bool,
}

impl WindowStats {
    /// Half the terminal count, rounded up.
    pub fn half(&self) -> usize {
        self.terminals.div_ceil(2)
    }

    pub fn added(&self) -> usize {
        self.near_cut + self.hooks
    }

    /// Added non-terminals stay within six per half of the window's
    /// terminals.
    pub fn within_budget(&self) -> bool {
        self.added() <= 6 * self.half()
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct DpsStats {
    pub terminals: usize,
    pub h0_branching: usize,
    pub augmented_branching: usize,
    pub final_branching: usize,
    /// Distinct non-terminals contributed by all windows.
    pub window_nonterminals: usize,
    pub windows: Vec<WindowStats>,
    /// Cross-window pairs not preserved at their own level; only counted
    /// when level checking is on.
    pub level_violations: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DpsOptions {
    /// Verify cross-window pairs after each window is assembled.
    pub check_levels: bool,
}

#[derive(Debug, Clone)]
pub struct DpsResult {
    pub subgraph: Subgraph,
    pub stats: DpsStats,
}

/// Rejects anything other than point terminals and unit non-terminals.
pub fn check_unit_point(g: &Instance) -> Result<()> {
    for v in 0..g.len() {
        let iv = g.interval(v);
        if g.is_terminal(v) && !iv.is_point() {
            return Err(Error::NotUnitPoint { vertex: v, reason: "terminal is not a point" });
        }
        if !g.is_terminal(v) && !iv.is_unit() {
            return Err(Error::NotUnitPoint { vertex: v, reason: "non-terminal is not a unit interval" });
        }
    }
    Ok(())
}

/// Union of greedy paths from every terminal to the last one.
pub fn build_h0(g: &Instance) -> Result<Subgraph> {
    let mut h = Subgraph::with_terminals(g);
    if let Some(&last) = g.terminals().last() {
        for &t in g.terminals() {
            h.add_path(&g.greedy_path(t, last)?);
        }
    }
    Ok(h)
}

/// Adds the greedy path of every terminal pair within
/// [`NEAR_PAIR_DISTANCE`].
pub fn augment_near_pairs(g: &Instance, h: &Subgraph) -> Result<Subgraph> {
    let mut out = h.clone();
    let ts = g.terminals();
    for (i, &u) in ts.iter().enumerate() {
        let d = bfs_distances(g, u);
        for &v in &ts[i + 1..] {
            if matches!(d[v], Some(x) if x <= NEAR_PAIR_DISTANCE) {
                out.add_path(&g.greedy_path(u, v)?);
            }
        }
    }
    Ok(out)
}

/// Cut for a window holding terminals at the sorted coordinates `coords`:
/// the largest `x <= b - 1` leaving at least half (rounded up) of them in
/// `[x, b]`. When that would leave the left side empty because terminals
/// coincide at `a`, the cut moves to the next terminal coordinate.
/// `None` when the window needs no split.
fn cut_point(coords: &[Coord], a: Coord, b: Coord) -> Option<(Coord, bool)> {
    let t = coords.len();
    if t <= 1 || b - a <= Coord::one() {
        return None;
    }
    let right = t.div_ceil(2);
    let cap = b - Coord::one();
    let x = cap.min(coords[t - right]);
    if x > a {
        return Some((x, false));
    }
    let next = coords.iter().copied().find(|&c| c > a)?;
    Some((cap.min(next), true))
}

/// Terminal coordinates of `g` meeting the window, sorted.
fn window_coords(g: &Instance, a: Coord, b: Coord, right_open: bool) -> Vec<Coord> {
    let mut cs: Vec<Coord> = g
        .terminals()
        .iter()
        .map(|&t| g.interval(t).left())
        .filter(|&c| in_window(c, a, b, right_open))
        .collect();
    cs.sort();
    cs
}

#[inline]
fn in_window(c: Coord, a: Coord, b: Coord, right_open: bool) -> bool {
    a <= c && if right_open { c < b } else { c <= b }
}

/// Cut chosen for the terminals of `g` inside `[a, b]` (or `[a, b)`).
pub fn choose_cut(g: &Instance, a: Coord, b: Coord, right_open: bool) -> Result<Coord> {
    if a > b {
        return Err(Error::InvalidWindow);
    }
    cut_point(&window_coords(g, a, b, right_open), a, b)
        .map(|(x, _)| x)
        .ok_or(Error::NoValidCut)
}

struct Ctx<'a> {
    g: &'a Instance,
    /// Coordinate of each terminal, by terminal rank.
    coord: Vec<Coord>,
    /// Greedy path from each terminal to the last terminal.
    to_last: Vec<Path>,
    base: &'a Subgraph,
    check_levels: bool,
}

struct Part {
    h: Subgraph,
    windows: Vec<WindowStats>,
    level_violations: usize,
}

impl Ctx<'_> {
    /// `members` are terminal ranks inside the window, sorted by coordinate.
    fn solve(&self, a: Coord, b: Coord, right_open: bool, members: &[usize], depth: usize) -> Part {
        let g = self.g;
        let mut part = Part { h: Subgraph::empty(g), windows: Vec::new(), level_violations: 0 };
        let coords: Vec<Coord> = members.iter().map(|&r| self.coord[r]).collect();
        let Some((x, fallback)) = cut_point(&coords, a, b) else { return part };
        let x1 = x + Coord::one();

        let (left, right): (Vec<usize>, Vec<usize>) = members.iter().partition(|&&r| self.coord[r] < x);

        // Non-terminals of the left terminals' paths to the last terminal.
        let mut left_nt: BTreeSet<usize> = BTreeSet::new();
        for &r in &left {
            left_nt.extend(self.to_last[r].vertices.iter().copied().filter(|&v| !g.is_terminal(v)));
        }

        let near: Vec<usize> = left_nt
            .iter()
            .copied()
            .filter(|&v| g.interval(v).meets_window(x, x1, false))
            .collect();
        let mut induced: Vec<usize> = near.clone();
        induced.extend(
            members
                .iter()
                .filter(|&&r| self.coord[r] >= x && self.coord[r] <= x1)
                .map(|&r| g.terminals()[r]),
        );
        induced.sort_unstable();
        for (i, &u) in induced.iter().enumerate() {
            part.h.add_vertex(u);
            for &v in &induced[i + 1..] {
                if g.has_edge(u, v) {
                    part.h.add_edge(u, v);
                }
            }
        }

        let mut hooks = BTreeSet::new();
        for &r in members.iter().filter(|&&r| self.coord[r] >= x1) {
            let c = self.coord[r];
            if let Some(&v) = left_nt.iter().find(|&&v| g.interval(v).contains_point(c)) {
                part.h.add_edge(v, g.terminals()[r]);
                hooks.insert(v);
            }
        }

        let (lp, rp) = rayon::join(
            || self.solve(a, x, true, &left, depth + 1),
            || self.solve(x, b, right_open, &right, depth + 1),
        );
        for sub in [lp, rp] {
            part.h.union_with(&sub.h);
            part.windows.extend(sub.windows);
            part.level_violations += sub.level_violations;
        }
        if self.check_levels {
            part.level_violations += self.cross_violations(&part.h, &left, &right);
        }
        part.windows.push(WindowStats {
            depth,
            a,
            b,
            cut: x,
            terminals: members.len(),
            left_terminals: left.len(),
            near_cut: near.len(),
            hooks: hooks.len(),
            fallback,
        });
        part
    }

    fn cross_violations(&self, h: &Subgraph, left: &[usize], right: &[usize]) -> usize {
        let mut full = self.base.clone();
        full.union_with(h);
        let adj = full.adjacency();
        let ts = self.g.terminals();
        let mut bad = 0;
        for &l in left {
            let dg = bfs_distances(self.g, ts[l]);
            let dh = full.distances_from(&adj, ts[l]);
            bad += right.iter().filter(|&&r| dg[ts[r]] != dh[ts[r]]).count();
        }
        bad
    }
}

/// Window recursion over `[a, b]` given the base subgraph (greedy paths into
/// the last terminal plus near pairs). Returns only the added part.
pub fn build_dps_recursive(g: &Instance, base: &Subgraph, a: Coord, b: Coord, opts: DpsOptions) -> Result<(Subgraph, Vec<WindowStats>, usize)> {
    if a > b {
        return Err(Error::InvalidWindow);
    }
    check_unit_point(g)?;
    let ts = g.terminals();
    let Some(&last) = ts.last() else {
        return Ok((Subgraph::empty(g), Vec::new(), 0));
    };
    let to_last = ts.iter().map(|&t| g.greedy_path(t, last)).collect::<Result<Vec<_>>>()?;
    let ctx = Ctx {
        g,
        coord: ts.iter().map(|&t| g.interval(t).left()).collect(),
        to_last,
        base,
        check_levels: opts.check_levels,
    };
    let members: Vec<usize> = (0..ts.len()).filter(|&r| in_window(ctx.coord[r], a, b, false)).collect();
    let part = ctx.solve(a, b, false, &members, 0);
    Ok((part.h, part.windows, part.level_violations))
}

pub fn build_dps_unit_point(g: &Instance) -> Result<DpsResult> {
    build_dps_unit_point_with(g, DpsOptions::default())
}

pub fn build_dps_unit_point_with(g: &Instance, opts: DpsOptions) -> Result<DpsResult> {
    check_unit_point(g)?;
    let ts = g.terminals();
    let mut stats = DpsStats { terminals: ts.len(), ..Default::default() };
    if ts.len() <= 1 {
        return Ok(DpsResult { subgraph: Subgraph::with_terminals(g), stats });
    }
    let h0 = build_h0(g)?;
    stats.h0_branching = h0.branching_vertices().0;
    let base = augment_near_pairs(g, &h0)?;
    stats.augmented_branching = base.branching_vertices().0;

    let a = g.interval(ts[0]).left();
    let b = g.interval(*ts.last().unwrap()).left();
    let (extra, windows, level_violations) = build_dps_recursive(g, &base, a, b, opts)?;
    stats.window_nonterminals = extra.vertices().filter(|&v| !g.is_terminal(v)).count();
    stats.windows = windows;
    stats.level_violations = level_violations;

    let mut h = base;
    h.union_with(&extra);
    stats.final_branching = h.branching_vertices().0;
    Ok(DpsResult { subgraph: h, stats })
}

/// Distance-preserving subgraph of an arbitrary interval instance.
pub fn build_dps(g: &Instance) -> Result<DpsResult> {
    build_dps_with(g, DpsOptions::default())
}

pub fn build_dps_with(g: &Instance, opts: DpsOptions) -> Result<DpsResult> {
    let ts = g.terminals();
    for w in ts.windows(2) {
        g.greedy_path(w[0], w[1])?;
    }
    if ts.len() <= 1 {
        let stats = DpsStats { terminals: ts.len(), ..Default::default() };
        return Ok(DpsResult { subgraph: Subgraph::with_terminals(g), stats });
    }
    let (gp, map) = normalize(g)?;
    let inner = build_dps_unit_point_with(&gp, opts)?;
    let h = lift(&inner.subgraph, &map, g)?;
    let mut stats = inner.stats;
    stats.terminals = ts.len();
    stats.final_branching = h.branching_vertices().0;
    Ok(DpsResult { subgraph: h, stats })
}
