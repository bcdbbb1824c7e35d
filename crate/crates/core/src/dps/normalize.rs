//! Reduction of an arbitrary interval instance to the unit/point shape and
//! the way back.
//!
//! Each terminal gets two point terminals at its endpoints and itself turns
//! into a non-terminal. Non-terminals nested strictly inside another vertex
//! are dropped, which leaves a proper family. That family is redrawn with
//! unit lengths by solving a system of difference constraints, with the
//! point terminals placed inside exactly the intervals that held them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{build_instance, Instance};
use crate::interval::{Coord, Interval};
use crate::subgraph::Subgraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationMap {
    /// For the i-th terminal of the original: its left and right point
    /// terminals in the normalized instance.
    pub split: Vec<(usize, usize)>,
    /// Normalized vertex -> original vertex (a split point maps to its
    /// terminal).
    pub origin: Vec<usize>,
    /// Original vertex -> normalized vertex, when it survived.
    pub image: Vec<Option<usize>>,
    /// Original non-terminals dropped for being strictly nested, after ties
    /// are broken.
    pub deleted: Vec<usize>,
    /// Separation used in the unit redrawing.
    pub delta: Coord,
}

#[derive(Debug, Clone, Copy)]
enum Item {
    Orig(usize),
    Split { rank: usize, right: bool },
}

/// Lexicographic weight `int + coeff * delta` for an infinitesimal delta.
type Weight = (i64, i64);

fn add(a: Weight, b: Weight) -> Weight {
    (a.0 + b.0, a.1 + b.1)
}

struct Constraints {
    /// `x[to] <= x[from] + w`
    edges: Vec<(usize, usize, Weight)>,
    vars: usize,
}

impl Constraints {
    fn at_most(&mut self, to: usize, from: usize, w: Weight) {
        self.edges.push((from, to, w));
    }

    /// Queue-based Bellman-Ford from a virtual source joined to every
    /// variable with weight zero.
    fn solve(&self) -> Result<Vec<Weight>> {
        let n = self.vars;
        let mut out: Vec<Vec<(usize, Weight)>> = vec![Vec::new(); n];
        for &(from, to, w) in &self.edges {
            out[from].push((to, w));
        }
        let mut dist = vec![(0i64, 0i64); n];
        let mut in_queue = vec![true; n];
        // Edges on the current shortest path to each variable; reaching
        // `n + 1` means a negative cycle.
        let mut hops = vec![0usize; n];
        let mut queue: std::collections::VecDeque<usize> = (0..n).collect();
        while let Some(u) = queue.pop_front() {
            in_queue[u] = false;
            for &(v, w) in &out[u] {
                let cand = add(dist[u], w);
                if cand < dist[v] {
                    dist[v] = cand;
                    hops[v] = hops[u] + 1;
                    if hops[v] > n {
                        return Err(Error::Representation("difference constraints are infeasible".into()));
                    }
                    if !in_queue[v] {
                        in_queue[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        Ok(dist)
    }

    /// Largest delta coefficient slack that must be absorbed by an integer
    /// gap; any delta below its reciprocal satisfies every constraint.
    fn delta_for(&self, sol: &[Weight]) -> Coord {
        let mut worst = 1i64;
        for &(from, to, w) in &self.edges {
            let int = sol[to].0 - sol[from].0 - w.0;
            let coeff = sol[to].1 - sol[from].1 - w.1;
            debug_assert!(int < 0 || (int == 0 && coeff <= 0));
            if int < 0 && coeff > 0 {
                worst = worst.max(coeff.div_euclid(-int) + 1);
            }
        }
        Coord::new(1, worst + 1)
    }
}

/// Returns the unit/point instance and the correspondence with `g`.
pub fn normalize(g: &Instance) -> Result<(Instance, NormalizationMap)> {
    let ts = g.terminals();
    let mut items: Vec<Item> = (0..g.len()).map(Item::Orig).collect();
    for rank in 0..ts.len() {
        items.push(Item::Split { rank, right: false });
        items.push(Item::Split { rank, right: true });
    }
    let original = |it: &Item| -> Interval {
        match *it {
            Item::Orig(v) => g.interval(v),
            Item::Split { rank, right } => {
                let iv = g.interval(ts[rank]);
                Interval::point(if right { iv.right() } else { iv.left() })
            }
        }
    };
    let ivs: Vec<Interval> = items.iter().map(original).collect();
    let n = items.len();

    // Distinct ranks: by value, lefts before rights, then by item.
    let mut ends: Vec<(Coord, u8, usize)> = Vec::with_capacity(2 * n);
    for (i, iv) in ivs.iter().enumerate() {
        ends.push((iv.left(), 0, i));
        ends.push((iv.right(), 1, i));
    }
    ends.sort();
    let mut lrank = vec![0usize; n];
    let mut rrank = vec![0usize; n];
    for (pos, &(_, kind, i)) in ends.iter().enumerate() {
        if kind == 0 {
            lrank[i] = pos;
        } else {
            rrank[i] = pos;
        }
    }

    // Strictly nested non-terminals, judged on ranks.
    let mut by_left: Vec<usize> = (0..n).collect();
    by_left.sort_by_key(|&i| lrank[i]);
    let mut nested = vec![false; n];
    let mut max_right: Option<usize> = None;
    for &i in &by_left {
        if matches!(items[i], Item::Orig(_)) && max_right.is_some_and(|r| r > rrank[i]) {
            nested[i] = true;
        }
        max_right = Some(max_right.map_or(rrank[i], |r| r.max(rrank[i])));
    }

    let units: Vec<usize> = by_left.iter().copied().filter(|&i| matches!(items[i], Item::Orig(_)) && !nested[i]).collect();
    let m = units.len();
    if units.windows(2).any(|w| rrank[w[0]] > rrank[w[1]]) {
        return Err(Error::Invariant("surviving non-terminals are not proper".into()));
    }

    // Point groups by original coordinate.
    let mut groups: BTreeMap<Coord, Vec<usize>> = BTreeMap::new();
    for (i, it) in items.iter().enumerate() {
        if matches!(it, Item::Split { .. }) {
            groups.entry(ivs[i].left()).or_default().push(i);
        }
    }

    let mut cons = Constraints { edges: Vec::new(), vars: m + groups.len() };
    for i in 0..m.saturating_sub(1) {
        cons.at_most(i, i + 1, (0, -1));
    }
    let mut reach = 0;
    for i in 0..m {
        reach = reach.max(i);
        while reach + 1 < m && lrank[units[reach + 1]] < rrank[units[i]] {
            reach += 1;
        }
        if reach > i {
            cons.at_most(reach, i, (1, -1));
        }
        if reach + 1 < m {
            cons.at_most(i, reach + 1, (-1, -1));
        }
    }
    for (gi, members) in groups.values().enumerate() {
        let y = m + gi;
        let p = members[0];
        // Units [lo, hi] are exactly those meeting the point.
        let hi = units.partition_point(|&u| lrank[u] < rrank[p]);
        let lo = units.partition_point(|&u| rrank[u] < lrank[p]);
        for &q in &members[1..] {
            debug_assert_eq!(units.partition_point(|&u| lrank[u] < rrank[q]), hi);
            debug_assert_eq!(units.partition_point(|&u| rrank[u] < lrank[q]), lo);
        }
        if hi > 0 {
            cons.at_most(hi - 1, y, (0, -1));
        }
        if hi < m {
            cons.at_most(y, hi, (0, -1));
        }
        if lo < m {
            cons.at_most(y, lo, (1, -1));
        }
        if lo > 0 {
            cons.at_most(lo - 1, y, (-1, -1));
        }
        if gi > 0 {
            cons.at_most(y - 1, y, (0, -1));
        }
    }
    let sol = cons.solve()?;
    let delta = cons.delta_for(&sol);
    let value = |w: Weight| Coord::from_integer(w.0) + delta * w.1;

    let mut new_iv: Vec<Option<Interval>> = vec![None; n];
    for (j, &u) in units.iter().enumerate() {
        new_iv[u] = Some(Interval::unit(value(sol[j])));
    }
    for (gi, members) in groups.values().enumerate() {
        let y = value(sol[m + gi]);
        for &q in members {
            new_iv[q] = Some(Interval::point(y));
        }
    }

    // Survivors in item order: kept originals, then split points.
    let kept: Vec<usize> = (0..n).filter(|&i| new_iv[i].is_some()).collect();
    let list: Vec<Interval> = kept.iter().map(|&i| new_iv[i].unwrap()).collect();
    let flags: Vec<bool> = kept.iter().map(|&i| matches!(items[i], Item::Split { .. })).collect();
    let (gp, canon) = build_instance(&list, &flags)?;

    let mut origin = vec![0usize; gp.len()];
    let mut image = vec![None; g.len()];
    let mut split = vec![(0usize, 0usize); ts.len()];
    for (pos, &i) in kept.iter().enumerate() {
        let c = canon[pos];
        match items[i] {
            Item::Orig(v) => {
                origin[c] = v;
                image[v] = Some(c);
            }
            Item::Split { rank, right } => {
                origin[c] = ts[rank];
                if right {
                    split[rank].1 = c;
                } else {
                    split[rank].0 = c;
                }
            }
        }
    }

    // Redrawn adjacency must match intersection in original coordinates.
    let src: Vec<usize> = {
        let mut s = vec![0; gp.len()];
        for (pos, &i) in kept.iter().enumerate() {
            s[canon[pos]] = i;
        }
        s
    };
    for u in 0..gp.len() {
        for v in u + 1..gp.len() {
            if gp.has_edge(u, v) != ivs[src[u]].intersects(&ivs[src[v]]) {
                return Err(Error::Representation(format!("adjacency differs between normalized vertices {u} and {v}")));
            }
        }
    }

    let deleted = (0..n)
        .filter(|&i| nested[i])
        .filter_map(|i| match items[i] {
            Item::Orig(v) => Some(v),
            Item::Split { .. } => None,
        })
        .collect();
    debug_assert!(delta > Coord::zero());
    Ok((gp, NormalizationMap { split, origin, image, deleted, delta }))
}

/// Carries a subgraph of the normalized instance back to `g`: split points
/// merge into their terminal, and adjacent terminals get their direct edge.
pub fn lift(hp: &Subgraph, map: &NormalizationMap, g: &Instance) -> Result<Subgraph> {
    let ts = g.terminals();
    for (rank, &(l, r)) in map.split.iter().enumerate() {
        if !hp.contains_vertex(l) || !hp.contains_vertex(r) {
            return Err(Error::MissingTerminal(ts[rank]));
        }
    }
    let mut h = Subgraph::with_terminals(g);
    for v in hp.vertices() {
        h.add_vertex(map.origin[v]);
    }
    for (a, b) in hp.edges() {
        let (u, v) = (map.origin[a], map.origin[b]);
        if u == v {
            continue;
        }
        if !g.has_edge(u, v) {
            return Err(Error::NotHostEdge(u, v));
        }
        h.add_edge(u, v);
    }
    let tset: BTreeSet<usize> = ts.iter().copied().collect();
    for &t in ts {
        for &w in g.neighbors(t) {
            if t < w && tset.contains(&w) {
                h.add_edge(t, w);
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dps::check_unit_point;
    use crate::graph::bfs_distances;
    use crate::interval::coord;

    fn sample() -> Instance {
        let ivs = [
            Interval::ints(0, 4).unwrap(),
            Interval::new(coord(1, 2), coord(3, 2)).unwrap(),
            Interval::ints(3, 7).unwrap(),
            Interval::ints(6, 9).unwrap(),
            Interval::ints(1, 2).unwrap(),
            Interval::ints(8, 8).unwrap(),
        ];
        Instance::new(&ivs, &[false, false, false, false, true, true]).unwrap()
    }

    #[test]
    fn shape_and_terminal_count() {
        let g = sample();
        let (gp, map) = normalize(&g).unwrap();
        check_unit_point(&gp).unwrap();
        assert_eq!(gp.terminals().len(), 2 * g.terminals().len());
        // [1/2, 3/2] sits strictly inside [0, 4].
        let inner = (0..g.len()).find(|&v| g.interval(v) == Interval::new(coord(1, 2), coord(3, 2)).unwrap()).unwrap();
        assert!(map.deleted.contains(&inner));
    }

    #[test]
    fn unit_point_input_keeps_non_terminals() {
        let ivs = [Interval::unit(coord(0, 1)), Interval::unit(coord(7, 10)), Interval::point(coord(1, 2)), Interval::point(coord(3, 2))];
        let g = Instance::new(&ivs, &[false, false, true, true]).unwrap();
        let (gp, map) = normalize(&g).unwrap();
        assert_eq!(gp.terminals().len(), 4);
        for &(l, r) in &map.split {
            assert_eq!(gp.interval(l), gp.interval(r));
        }
        for v in 0..g.len() {
            if !g.is_terminal(v) {
                assert!(map.image[v].is_some());
            }
        }
    }

    #[test]
    fn split_distances_match() {
        let g = sample();
        let (gp, map) = normalize(&g).unwrap();
        let ts = g.terminals();
        let d = bfs_distances(&g, ts[0])[ts[1]].unwrap();
        let dp = bfs_distances(&gp, map.split[0].1)[map.split[1].0].unwrap();
        assert!(d > 1);
        assert_eq!(d, dp);
    }

    #[test]
    fn lift_rejects_missing_split() {
        let g = sample();
        let (gp, map) = normalize(&g).unwrap();
        let empty = Subgraph::empty(&gp);
        assert!(matches!(lift(&empty, &map, &g), Err(Error::MissingTerminal(_))));
    }

    #[test]
    fn lift_adds_adjacent_terminal_edge() {
        let ivs = [Interval::ints(0, 2).unwrap(), Interval::ints(1, 3).unwrap()];
        let g = Instance::new(&ivs, &[true, true]).unwrap();
        let (gp, map) = normalize(&g).unwrap();
        let hp = Subgraph::with_terminals(&gp);
        let h = lift(&hp, &map, &g).unwrap();
        assert!(h.has_edge(0, 1));
    }
}
