//! Minimum set cover by exhaustion, bipartite covering families, and the
//! covering-sum verifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::families::{GzeroLayout, SetCoverInstance};
use crate::subgraph::Subgraph;

/// Smallest number of sets covering the universe, or `None` when the union
/// of all sets falls short.
pub fn min_set_cover(sc: &SetCoverInstance) -> Option<usize> {
    let full = if sc.n == 0 { 0 } else { (1u64 << sc.n) - 1 };
    let masks = sc.masks();
    let m = masks.len();
    (0..1u64 << m)
        .filter(|&pick| (0..m).filter(|&j| pick >> j & 1 == 1).fold(0, |acc, j| acc | masks[j]) == full)
        .map(|pick| pick.count_ones() as usize)
        .min()
}

/// Graphs on vertex set `{1..=n}` given by edge lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCoverFamily {
    pub n: usize,
    pub graphs: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HanselReport {
    pub covers_kn: bool,
    pub sum_non_isolated: usize,
    /// `n * log2(n)`.
    pub bound: f64,
}

fn two_colorable(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color = vec![None; n + 1];
    for s in 1..=n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Checks each graph is bipartite, whether the union is `K_n`, and the sum
/// of non-isolated vertex counts against `n log2 n`. A covering family
/// below the bound is an error.
pub fn hansel_verify(fam: &BipartiteCoverFamily) -> Result<HanselReport> {
    let n = fam.n;
    let mut covered = vec![vec![false; n + 1]; n + 1];
    let mut sum = 0;
    for (i, g) in fam.graphs.iter().enumerate() {
        if let Some(&(a, b)) = g.iter().find(|&&(a, b)| a == 0 || b == 0 || a > n || b > n || a == b) {
            return Err(Error::InvalidParameter(format!("graph {i} has bad edge ({a}, {b})")));
        }
        if !two_colorable(n, g) {
            return Err(Error::NotBipartite(i));
        }
        let mut touched = vec![false; n + 1];
        for &(a, b) in g {
            touched[a] = true;
            touched[b] = true;
            covered[a][b] = true;
            covered[b][a] = true;
        }
        sum += touched.iter().filter(|&&t| t).count();
    }
    let covers_kn = (1..=n).all(|a| (a + 1..=n).all(|b| covered[a][b]));
    let bound = if n == 0 { 0.0 } else { n as f64 * (n as f64).log2() };
    if covers_kn && (sum as f64) < bound - 1e-9 {
        return Err(Error::Invariant(format!("covering family sums to {sum}, below {bound}")));
    }
    Ok(HanselReport { covers_kn, sum_non_isolated: sum, bound })
}

/// One graph per long interval `I`: edge `(i, j)`, `1 <= i < j <= k`, when
/// `I` is joined in `h` to both `t_(j-k-1)` and `t_i`. Also returns, per
/// graph, its non-isolated vertex count and the degree of `I` in `h`.
pub fn gzero_family(lay: &GzeroLayout, h: &Subgraph) -> (BipartiteCoverFamily, Vec<(usize, usize)>) {
    let k = lay.k as i64;
    let deg = h.degrees();
    let mut graphs = Vec::new();
    let mut sizes = Vec::new();
    for x in -k..=0 {
        let iv = lay.interval(x);
        let mut edges = Vec::new();
        let mut touched = vec![false; lay.k + 1];
        for j in 1..=k {
            for i in 1..j {
                if h.has_edge(iv, lay.terminal(j - k - 1)) && h.has_edge(iv, lay.terminal(i)) {
                    edges.push((i as usize, j as usize));
                    touched[i as usize] = true;
                    touched[j as usize] = true;
                }
            }
        }
        sizes.push((touched.iter().filter(|&&t| t).count(), deg[iv]));
        graphs.push(edges);
    }
    (BipartiteCoverFamily { n: lay.k, graphs }, sizes)
}
