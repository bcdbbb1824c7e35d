//! Exact minimum-branching search over subgraphs that keep every terminal
//! pair within a fixed additive slack of its host distance.
//!
//! For a target count `t` the search fixes a set `B` of `t` vertices allowed
//! to branch and caps every other counted vertex at degree two. It then
//! repeatedly takes the unsatisfied pair with the fewest admissible paths and
//! branches over those paths. Any feasible subgraph whose branching vertices
//! lie in `B` contains an admissible path for every pair, so the search
//! is complete.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph};
use crate::subgraph::Subgraph;

/// Hard ceiling from the bitmask representation.
pub const MAX_MASK_EDGES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_candidate_edges: usize,
    pub max_states: u64,
    pub timeout: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_candidate_edges: 64, max_states: 1 << 22, timeout: Duration::from_secs(120) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub min: usize,
    pub witness: Subgraph,
    pub candidate_edges: usize,
    pub states: u64,
}

/// Which vertices count toward the branching total.
fn countable<G: Graph + ?Sized>(g: &G, count_terminals: bool) -> Vec<bool> {
    (0..g.vertex_count()).map(|v| count_terminals || !g.is_terminal(v)).collect()
}

fn branching_count(h: &Subgraph, counted: &[bool]) -> usize {
    let deg = h.degrees();
    (0..deg.len()).filter(|&v| deg[v] >= 3 && counted[v]).count()
}

/// Host edges lying on some walk of length at most `d + slack` between a
/// connected terminal pair.
pub fn candidate_edges<G: Graph + ?Sized>(g: &G, slack: u32) -> Vec<(usize, usize)> {
    let ts = g.terminals();
    let dist: Vec<Vec<Option<u32>>> = ts.par_iter().map(|&t| bfs_distances(g, t)).collect();
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        let useful = (0..ts.len()).any(|i| {
            (i + 1..ts.len()).any(|j| {
                let Some(d) = dist[i][ts[j]] else { return false };
                let via = |x: usize, y: usize| match (dist[i][x], dist[j][y]) {
                    (Some(p), Some(q)) => p + 1 + q <= d + slack,
                    _ => false,
                };
                via(a, b) || via(b, a)
            })
        });
        if useful {
            out.push((a, b));
        }
    }
    out
}

struct Problem {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Per vertex, mask of candidate edges touching it.
    incident: Vec<u128>,
    /// Per connected terminal pair, admissible paths as edge masks.
    options: Vec<Vec<u128>>,
}

impl Problem {
    fn build<G: Graph + ?Sized>(g: &G, slack: u32, budget: &SearchBudget) -> Result<Self> {
        let cap = budget.max_candidate_edges.min(MAX_MASK_EDGES);
        let edges = candidate_edges(g, slack);
        if edges.len() > cap {
            return Err(Error::BudgetExceeded(format!("{} candidate edges exceed the limit of {cap}", edges.len())));
        }
        let n = g.vertex_count();
        let mut incident = vec![0u128; n];
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, &(a, b)) in edges.iter().enumerate() {
            incident[a] |= 1 << id;
            incident[b] |= 1 << id;
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        let ts = g.terminals();
        let mut options = Vec::new();
        let mut total = 0u64;
        for (i, &s) in ts.iter().enumerate() {
            for &t in &ts[i + 1..] {
                let dt = bfs_distances(g, t);
                let Some(d) = dt[s] else { continue };
                let limit = d + slack;
                let mut found = Vec::new();
                let mut on_path = vec![false; n];
                on_path[s] = true;
                enumerate_paths(s, t, 0, 0, limit, &adj, &dt, &mut on_path, &mut found);
                found.sort_unstable();
                found.dedup();
                total += found.len() as u64;
                if total > budget.max_states {
                    return Err(Error::BudgetExceeded(format!("more than {} admissible paths", budget.max_states)));
                }
                options.push(found);
            }
        }
        Ok(Problem { n, edges, incident, options })
    }

    fn to_subgraph<G: Graph + ?Sized>(&self, g: &G, mask: u128) -> Subgraph {
        Subgraph::from_edges(g, (0..self.edges.len()).filter(|&e| mask >> e & 1 == 1).map(|e| self.edges[e]))
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate_paths(
    cur: usize,
    target: usize,
    len: u32,
    mask: u128,
    limit: u32,
    adj: &[Vec<(usize, usize)>],
    dt: &[Option<u32>],
    on_path: &mut [bool],
    out: &mut Vec<u128>,
) {
    if cur == target {
        out.push(mask);
        return;
    }
    for &(next, id) in &adj[cur] {
        if on_path[next] {
            continue;
        }
        match dt[next] {
            Some(r) if len + 1 + r <= limit => {}
            _ => continue,
        }
        on_path[next] = true;
        enumerate_paths(next, target, len + 1, mask | 1 << id, limit, adj, dt, on_path, out);
        on_path[next] = false;
    }
}

struct Shared<'a> {
    budget: &'a SearchBudget,
    start: Instant,
    states: AtomicU64,
    aborted: AtomicBool,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let s = self.states.fetch_add(1, Ordering::Relaxed) + 1;
        if s > self.budget.max_states || (s % 1024 == 0 && self.start.elapsed() > self.budget.timeout) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct Dfs<'a> {
    p: &'a Problem,
    capped: Vec<usize>,
    shared: &'a Shared<'a>,
    dead: HashSet<u128>,
}

impl Dfs<'_> {
    fn respects_caps(&self, mask: u128) -> bool {
        self.capped.iter().all(|&v| (mask & self.p.incident[v]).count_ones() <= 2)
    }

    fn run(&mut self, mask: u128) -> Option<u128> {
        if !self.shared.tick() || self.dead.contains(&mask) {
            return None;
        }
        let mut best: Option<Vec<u128>> = None;
        for opts in &self.p.options {
            if opts.iter().any(|&o| o & mask == o) {
                continue;
            }
            let viable: Vec<u128> = opts.iter().map(|&o| mask | o).filter(|&m| self.respects_caps(m)).collect();
            if viable.is_empty() {
                self.dead.insert(mask);
                return None;
            }
            if best.as_ref().map_or(true, |b| viable.len() < b.len()) {
                let single = viable.len() == 1;
                best = Some(viable);
                if single {
                    break;
                }
            }
        }
        let Some(mut branches) = best else { return Some(mask) };
        branches.sort_unstable();
        branches.dedup();
        for m in branches {
            if let Some(found) = self.run(m) {
                return Some(found);
            }
        }
        self.dead.insert(mask);
        None
    }
}

fn combinations(items: &[usize], t: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < t - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, t, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, t, 0, &mut Vec::new(), &mut out);
    out
}

fn min_branching<G: Graph + ?Sized>(g: &G, slack: u32, count_terminals: bool, budget: &SearchBudget) -> Result<OracleResult> {
    let p = Problem::build(g, slack, budget)?;
    let counted = countable(g, count_terminals);
    let eligible: Vec<usize> =
        (0..p.n).filter(|&v| counted[v] && p.incident[v].count_ones() >= 3).collect();
    let shared = Shared { budget, start: Instant::now(), states: AtomicU64::new(0), aborted: AtomicBool::new(false) };

    for t in 0..=eligible.len() {
        let sets = combinations(&eligible, t);
        let found = sets.par_iter().find_map_first(|b| {
            let capped = eligible.iter().copied().filter(|v| !b.contains(v)).collect();
            let mut dfs = Dfs { p: &p, capped, shared: &shared, dead: HashSet::new() };
            dfs.run(0)
        });
        if shared.aborted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded(format!(
                "stopped after {} states at target {t}",
                shared.states.load(Ordering::Relaxed)
            )));
        }
        if let Some(mask) = found {
            let witness = p.to_subgraph(g, mask);
            let got = branching_count(&witness, &counted);
            if got != t {
                return Err(Error::Invariant(format!("witness has {got} branching vertices, target was {t}")));
            }
            return Ok(OracleResult {
                min: t,
                witness,
                candidate_edges: p.edges.len(),
                states: shared.states.load(Ordering::Relaxed),
            });
        }
    }
    Err(Error::Invariant("no feasible subgraph even without degree caps".into()))
}

/// Minimum branching count over distance-preserving subgraphs. With
/// `count_terminal_branching` false only non-terminals are counted.
pub fn min_branching_dps<G: Graph + ?Sized>(
    g: &G,
    count_terminal_branching: bool,
    budget: &SearchBudget,
) -> Result<OracleResult> {
    min_branching(g, 0, count_terminal_branching, budget)
}

/// Minimum branching count, terminals included, over subgraphs with every
/// terminal distance within `slack` of the host distance.
pub fn min_branching_das<G: Graph + ?Sized>(g: &G, slack: u32, budget: &SearchBudget) -> Result<OracleResult> {
    min_branching(g, slack, true, budget)
}

/// Independent route: tries every subset of `edges` and keeps the one with
/// the fewest branching vertices (ties broken by smallest mask).
pub fn min_branching_exhaustive<G: Graph + ?Sized>(
    g: &G,
    edges: &[(usize, usize)],
    slack: u32,
    count_terminal_branching: bool,
    budget: &SearchBudget,
) -> Result<OracleResult> {
    let m = edges.len();
    if m >= 63 || (1u64 << m) > budget.max_states {
        return Err(Error::BudgetExceeded(format!("2^{m} edge subsets")));
    }
    let counted = countable(g, count_terminal_branching);
    let ts = g.terminals();
    let host: Vec<Vec<Option<u32>>> = ts.iter().map(|&t| bfs_distances(g, t)).collect();
    let best = (0..1u64 << m)
        .into_par_iter()
        .filter_map(|mask| {
            let h = Subgraph::from_edges(g, (0..m).filter(|&e| mask >> e & 1 == 1).map(|e| edges[e]));
            let adj = h.adjacency();
            let ok = ts.iter().enumerate().all(|(i, &s)| {
                let dh = h.distances_from(&adj, s);
                ts[i + 1..].iter().all(|&t| match host[i][t] {
                    None => true,
                    Some(d) => dh[t].is_some_and(|x| x <= d + slack),
                })
            });
            ok.then(|| (branching_count(&h, &counted), mask))
        })
        .min();
    let (min, mask) = best.ok_or_else(|| Error::Invariant("no feasible edge subset".into()))?;
    let witness = Subgraph::from_edges(g, (0..m).filter(|&e| mask >> e & 1 == 1).map(|e| edges[e]));
    Ok(OracleResult { min, witness, candidate_edges: m, states: 1 << m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PlainGraph;
    use crate::subgraph::{verify_approx, verify_preserving};

    #[test]
    fn path_needs_nothing() {
        let g = PlainGraph::new(4, &[(0, 1), (1, 2), (2, 3)], vec![true, false, false, true]).unwrap();
        let r = min_branching_dps(&g, true, &SearchBudget::default()).unwrap();
        assert_eq!(r.min, 0);
        assert_eq!(r.witness, Subgraph::full(&g));
    }

    #[test]
    fn star_needs_its_center() {
        let g = PlainGraph::new(4, &[(0, 1), (0, 2), (0, 3)], vec![false, true, true, true]).unwrap();
        let r = min_branching_dps(&g, true, &SearchBudget::default()).unwrap();
        assert_eq!(r.min, 1);
        assert!(verify_preserving(&g, &r.witness).unwrap().ok);
    }

    #[test]
    fn slack_removes_a_shortcut() {
        // Square 0-1-2-3-0 with terminals 0, 1, 2, 3 and a pendant.
        let g = PlainGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], vec![true, true, true, true, true])
            .unwrap();
        let exact = min_branching_dps(&g, true, &SearchBudget::default()).unwrap();
        assert_eq!(exact.min, 1);
        let loose = min_branching_das(&g, 2, &SearchBudget::default()).unwrap();
        assert_eq!(loose.min, 0);
        assert!(verify_approx(&g, &loose.witness, 2).unwrap().ok);
    }

    #[test]
    fn routes_agree_on_small_graphs() {
        let g = PlainGraph::new(
            6,
            &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (2, 5), (3, 5)],
            vec![true, false, false, true, false, true],
        )
        .unwrap();
        let b = SearchBudget::default();
        for flag in [false, true] {
            let a = min_branching_dps(&g, flag, &b).unwrap();
            let e = min_branching_exhaustive(&g, &g.edges(), 0, flag, &b).unwrap();
            assert_eq!(a.min, e.min);
        }
    }

    #[test]
    fn budget_is_explicit() {
        let g = PlainGraph::new(4, &[(0, 1), (1, 2), (2, 3)], vec![true, false, false, true]).unwrap();
        let tiny = SearchBudget { max_candidate_edges: 2, ..SearchBudget::default() };
        assert!(matches!(min_branching_dps(&g, true, &tiny), Err(Error::BudgetExceeded(_))));
    }
}
