//! Runtime checks of the structural facts about shortest paths in interval
//! graphs: monotone order along a path, point and neighborhood multiplicity,
//! and the absence of dominated intervals inside greedy paths.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{bfs_distances, Graph};
use crate::instance::{Instance, Path};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactReport {
    pub paths: usize,
    /// Consecutive interior steps that go backwards in canonical order.
    pub order: usize,
    /// Points covered by more than two greedy-path vertices.
    pub point_cover: usize,
    /// Vertices adjacent to more than three vertices of one shortest path.
    pub neighborhood: usize,
    /// Strictly dominated intervals found strictly inside a greedy path.
    pub dominated: usize,
}

impl FactReport {
    pub fn violations(&self) -> usize {
        self.order + self.point_cover + self.neighborhood + self.dominated
    }

    pub fn merge(&mut self, o: &FactReport) {
        self.paths += o.paths;
        self.order += o.order;
        self.point_cover += o.point_cover;
        self.neighborhood += o.neighborhood;
        self.dominated += o.dominated;
    }
}

/// Shortest path from `u` to `v` picking uniformly among the BFS
/// predecessors at each step.
pub fn random_shortest_path<R: Rng>(g: &Instance, u: usize, v: usize, rng: &mut R) -> Option<Path> {
    let dv = bfs_distances(g, v);
    dv[u]?;
    let mut vertices = vec![u];
    let mut cur = u;
    while cur != v {
        let want = dv[cur].unwrap() - 1;
        let options: Vec<usize> = g.neighbors(cur).iter().copied().filter(|&w| dv[w] == Some(want)).collect();
        cur = *options.choose(rng).unwrap();
        vertices.push(cur);
    }
    Some(Path { vertices })
}

/// Shortest path from `u` to `v` following the lowest-index BFS
/// predecessor.
pub fn bfs_path(g: &Instance, u: usize, v: usize) -> Option<Path> {
    let dv = bfs_distances(g, v);
    dv[u]?;
    let mut vertices = vec![u];
    let mut cur = u;
    while cur != v {
        let want = dv[cur].unwrap() - 1;
        cur = *g.neighbors(cur).iter().find(|&&w| dv[w] == Some(want)).unwrap();
        vertices.push(cur);
    }
    Some(Path { vertices })
}

pub fn order_violations(p: &Path) -> usize {
    let vs = &p.vertices;
    let r = vs.len();
    if r < 2 || vs[0] >= vs[r - 1] {
        return 0;
    }
    (0..r.saturating_sub(2)).filter(|&i| vs[i] >= vs[i + 1]).count()
}

/// Probes every endpoint of every path vertex; coverage of a point is
/// maximised at some endpoint.
pub fn point_cover_violations(g: &Instance, p: &Path) -> usize {
    let mut bad = 0;
    for &v in &p.vertices {
        for a in [g.interval(v).left(), g.interval(v).right()] {
            let c = p.vertices.iter().filter(|&&w| g.interval(w).contains_point(a)).count();
            if c > 2 {
                bad += 1;
            }
        }
    }
    bad
}

pub fn neighborhood_violations(g: &Instance, p: &Path) -> usize {
    (0..g.len())
        .filter(|&x| p.vertices.iter().filter(|&&v| g.has_edge(x, v)).count() > 3)
        .count()
}

/// `dominated[y]` is true when some interval strictly contains `y`.
pub fn dominated_flags(g: &Instance) -> Vec<bool> {
    (0..g.len())
        .map(|y| (0..g.len()).any(|x| g.interval(x).strictly_contains(&g.interval(y))))
        .collect()
}

pub fn dominated_violations(dominated: &[bool], p: &Path) -> usize {
    let r = p.vertices.len();
    if r <= 2 {
        return 0;
    }
    p.vertices[1..r - 1].iter().filter(|&&y| dominated[y]).count()
}

/// Runs every check on greedy, BFS and random shortest paths between all
/// ordered terminal pairs and `extra_pairs` random vertex pairs.
pub fn check_facts<R: Rng>(g: &Instance, extra_pairs: usize, rng: &mut R) -> FactReport {
    let mut pairs = Vec::new();
    let ts = g.terminals();
    for (i, &u) in ts.iter().enumerate() {
        for &v in &ts[i + 1..] {
            pairs.push((u, v));
        }
    }
    if g.len() >= 2 {
        for _ in 0..extra_pairs {
            let u = rng.gen_range(0..g.len());
            let v = rng.gen_range(0..g.len());
            if u != v {
                pairs.push((u.min(v), u.max(v)));
            }
        }
    }
    let dominated = dominated_flags(g);
    let mut rep = FactReport::default();
    for (u, v) in pairs {
        let Ok(greedy) = g.greedy_path(u, v) else { continue };
        let others = [bfs_path(g, u, v), random_shortest_path(g, u, v, rng)];
        rep.paths += 1;
        rep.order += order_violations(&greedy);
        rep.point_cover += point_cover_violations(g, &greedy);
        rep.neighborhood += neighborhood_violations(g, &greedy);
        rep.dominated += dominated_violations(&dominated, &greedy);
        for p in others.iter().flatten() {
            rep.paths += 1;
            rep.order += order_violations(p);
            rep.neighborhood += neighborhood_violations(g, p);
        }
    }
    rep
}
