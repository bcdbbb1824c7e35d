//! Fixed lower-bound and reduction families: the staircase that defeats +1
//! approximations, the long-interval family with point terminals, and the
//! set-cover reduction graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PlainGraph;
use crate::instance::{build_instance, Instance};
use crate::interval::{coord, Interval};

/// Overlap half-width in the staircase family.
pub const HARD_EPS: (i64, i64) = (1, 100);

/// `2k - 2` non-terminals `[i - eps, i + 1 + eps]` for `i = 1..=2k-2` and
/// `k` terminals `[2j - 1.5, 2j - 0.5]` for `j = 1..=k`.
pub fn gen_hard(k: usize) -> Result<Instance> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("staircase needs k >= 2, got {k}")));
    }
    let eps = coord(HARD_EPS.0, HARD_EPS.1);
    let mut ivs = Vec::new();
    let mut flags = Vec::new();
    for i in 1..=(2 * k as i64 - 2) {
        ivs.push(Interval::new(coord(i, 1) - eps, coord(i + 1, 1) + eps)?);
        flags.push(false);
    }
    for j in 1..=k as i64 {
        ivs.push(Interval::new(coord(4 * j - 3, 2), coord(4 * j - 1, 2))?);
        flags.push(true);
    }
    Instance::new(&ivs, &flags)
}

/// Canonical indices of the long intervals and point terminals, keyed by
/// their left coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GzeroLayout {
    pub k: usize,
    /// `long[x + k]` is `[x, x + k]` for `x = -k..=0`.
    pub long: Vec<usize>,
    /// `point[x + k]` is `t_x = [x, x]` for `x = -k..=k`.
    pub point: Vec<usize>,
}

impl GzeroLayout {
    pub fn terminal(&self, x: i64) -> usize {
        self.point[(x + self.k as i64) as usize]
    }

    pub fn interval(&self, x: i64) -> usize {
        self.long[(x + self.k as i64) as usize]
    }
}

/// Long intervals `[x, x + k]` for `x = -k..=0` and point terminals at every
/// integer in `[-k, k]`.
pub fn gen_gzero(k: usize) -> Result<(Instance, GzeroLayout)> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let kk = k as i64;
    let mut ivs = Vec::new();
    let mut flags = Vec::new();
    for x in -kk..=0 {
        ivs.push(Interval::ints(x, x + kk)?);
        flags.push(false);
    }
    for x in -kk..=kk {
        ivs.push(Interval::point(coord(x, 1)));
        flags.push(true);
    }
    let (g, order) = build_instance(&ivs, &flags)?;
    let long = order[..=k].to_vec();
    let point = order[k + 1..].to_vec();
    Ok((g, GzeroLayout { k, long, point }))
}

/// Universe `{1..=n}` and subsets of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        for (j, s) in sets.iter().enumerate() {
            if let Some(&u) = s.iter().find(|&&u| u == 0 || u > n) {
                return Err(Error::InvalidParameter(format!("set {} has element {u} outside 1..={n}", j + 1)));
            }
        }
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        Ok(SetCoverInstance { n, sets })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Bit mask of each set over the universe.
    pub fn masks(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.iter().fold(0u64, |acc, &u| acc | 1 << (u - 1))).collect()
    }

    /// Every instance with universe `{1..=n}` and `m` nonempty subsets,
    /// listed as non-decreasing mask sequences.
    pub fn enumerate(n: usize, m: usize) -> Vec<SetCoverInstance> {
        let full = (1u64 << n) - 1;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, m: usize, lo: u64, full: u64, cur: &mut Vec<u64>, out: &mut Vec<SetCoverInstance>) {
            if cur.len() == m {
                let sets = cur.iter().map(|&mask| (1..=n).filter(|u| mask >> (u - 1) & 1 == 1).collect()).collect();
                out.push(SetCoverInstance { n, sets });
                return;
            }
            for mask in lo..=full {
                cur.push(mask);
                rec(n, m, mask, full, cur, out);
                cur.pop();
            }
        }
        rec(n, m, 1, full, &mut cur, &mut out);
        out
    }
}

/// Vertex numbering of the reduction graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsetLayout {
    pub n: usize,
    pub m: usize,
}

impl GsetLayout {
    /// Copy `i` (1-based, up to `m + 1`) of element `u` (1-based).
    pub fn element(&self, u: usize, i: usize) -> usize {
        (i - 1) * self.n + (u - 1)
    }

    /// Set `S_j`, 1-based.
    pub fn set(&self, j: usize) -> usize {
        self.n * (self.m + 1) + (j - 1)
    }

    pub fn t0(&self) -> usize {
        self.n * (self.m + 1) + self.m
    }

    pub fn t1(&self) -> usize {
        self.t0() + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n * (self.m + 1) + self.m + 2
    }

    pub fn is_set(&self, v: usize) -> bool {
        (self.set(1)..self.t0()).contains(&v)
    }
}

/// The reduction graph: `m + 1` copies of the universe, one vertex per set,
/// and two hubs. Terminals are the element copies and both hubs.
pub fn gen_gset(sc: &SetCoverInstance) -> Result<(PlainGraph, GsetLayout)> {
    let (n, m) = (sc.n, sc.m());
    let lay = GsetLayout { n, m };
    let mut edges = Vec::new();
    let mut terminal = vec![false; lay.vertex_count()];
    for i in 1..=m + 1 {
        for u in 1..=n {
            let e = lay.element(u, i);
            terminal[e] = true;
            edges.push((lay.t0(), e));
        }
    }
    for (j, s) in sc.sets.iter().enumerate() {
        for &u in s {
            for i in 1..=m + 1 {
                edges.push((lay.element(u, i), lay.set(j + 1)));
            }
        }
        edges.push((lay.set(j + 1), lay.t1()));
    }
    terminal[lay.t0()] = true;
    terminal[lay.t1()] = true;
    Ok((PlainGraph::new(lay.vertex_count(), &edges, terminal)?, lay))
}

/// Left coordinates of the long intervals covering each point terminal.
pub fn gzero_cover(k: usize) -> BTreeMap<i64, Vec<i64>> {
    let kk = k as i64;
    (-kk..=kk).map(|t| (t, (-kk..=0).filter(|&x| x <= t && t <= x + kk).collect())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn staircase_counts() {
        for k in 2..=6 {
            let g = gen_hard(k).unwrap();
            assert_eq!(g.len(), 3 * k - 2);
            assert_eq!(g.terminals().len(), k);
        }
    }

    #[test]
    fn staircase_neighbors_overlap() {
        let g = gen_hard(3).unwrap();
        let nts: Vec<usize> = (0..g.len()).filter(|&v| !g.is_terminal(v)).collect();
        for w in nts.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
    }

    #[test]
    fn long_interval_family() {
        let (g, lay) = gen_gzero(5).unwrap();
        assert_eq!(g.terminals().len(), 11);
        assert_eq!(g.len() - 11, 6);
        for x in -5..=0 {
            let covered = (-5..=5).filter(|&t| g.has_edge(lay.interval(x), lay.terminal(t))).count();
            assert_eq!(covered, 6);
        }
        assert_eq!(gzero_cover(5)[&0].len(), 6);
    }

    #[test]
    fn reduction_graph_shape() {
        let sc = SetCoverInstance::new(2, vec![vec![1, 2]]).unwrap();
        let (g, lay) = gen_gset(&sc).unwrap();
        assert_eq!(g.vertex_count(), 2 * 2 + 1 + 2);
        assert_eq!(g.terminals().len(), 2 * 2 + 2);
        assert_eq!(g.neighbors(lay.t1()), &[lay.set(1)]);
        assert!(SetCoverInstance::new(2, vec![vec![3]]).is_err());
        assert_eq!(SetCoverInstance::enumerate(2, 2).len(), 6);
    }
}
