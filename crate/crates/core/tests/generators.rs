mod common;

use std::collections::BTreeSet;

use common::{digraph_arcs, dijkstra, rev_by_string, scan_adjacency};
use interval_dps::graph::Graph;
use interval_dps::instances::bits::reversal_disjointness_counterexamples;
use interval_dps::instances::manhattan::{gint_cell, gint_index, gint_interval, gint_edges, GintEdge};
use interval_dps::instances::{
    gen_gint, gen_gset, gen_gzero, gen_hard, gen_manhattan, gen_random, hypercube_edges, lca_triple, rev, slant_transform,
    BitString, EdgeKind, Flavor, SetCoverInstance, WeightedDigraph,
};
use interval_dps::{coord, Instance, Subgraph};

fn bits(s: &str) -> BitString {
    s.parse().unwrap()
}

#[test]
fn reversal_examples() {
    assert_eq!(rev(5, bits("00010")).unwrap(), bits("01000"));
    for gamma in 1..=6 {
        let zero = BitString::new(gamma, 0).unwrap();
        assert_eq!(rev(gamma, zero).unwrap(), zero);
        for x in 0..1u64 << gamma {
            let b = BitString::new(gamma, x).unwrap();
            let r = rev(gamma, b).unwrap();
            assert_eq!(r.value(), rev_by_string(gamma, x));
            assert_eq!(rev(gamma, r).unwrap(), b);
        }
    }
    assert!(rev(4, bits("00010")).is_err());
}

#[test]
fn lca_examples() {
    let l = lca_triple(bits("0100111"), bits("0101010")).unwrap();
    assert_eq!(l.prefix.to_string(), "010");

    let l = lca_triple(bits("01001"), bits("01101")).unwrap();
    assert_eq!(l.prefix.width(), 2);
    assert_eq!(l.floor, bits("01011"));
    assert_eq!(l.ceil, bits("01100"));

    let l = lca_triple(bits("0110"), bits("1010")).unwrap();
    assert_eq!(l.prefix.width(), 0);
    assert_eq!(l.floor, bits("0111"));
    assert_eq!(l.ceil, bits("1000"));

    assert!(lca_triple(bits("0110"), bits("0110")).is_err());
}

#[test]
fn lca_floor_and_ceil_bracket_the_pair() {
    for gamma in 1..=6u32 {
        for x in 0..1u64 << gamma {
            for y in x + 1..1u64 << gamma {
                let l = lca_triple(BitString::new(gamma, x).unwrap(), BitString::new(gamma, y).unwrap()).unwrap();
                assert_eq!(l.floor.value() + 1, l.ceil.value());
                assert!(x <= l.floor.value() && l.floor.value() < y);
                assert!(x < l.ceil.value() && l.ceil.value() <= y);
                let shared = (gamma - 1 - (x ^ y).ilog2()) as usize;
                assert_eq!(l.prefix.width() as usize, shared);
            }
        }
    }
}

#[test]
fn hypercube_edges_match_hamming_scan() {
    assert_eq!(hypercube_edges(1), vec![(0, 1)]);
    for gamma in 1..=6u32 {
        let k = 1u64 << gamma;
        let mut want = Vec::new();
        for x in 0..k {
            for y in x + 1..k {
                if (x ^ y).count_ones() == 1 {
                    want.push((x, y));
                }
            }
        }
        let mut got = hypercube_edges(gamma);
        got.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(got.len() as u64, k * gamma as u64 / 2);
    }
    assert_eq!(hypercube_edges(3).len(), 12);
}

/// Both disjointness conditions, recomputed on strings.
fn disjointness_by_strings(gamma: u32) -> (usize, usize) {
    let w = gamma as usize;
    let s = |x: u64| format!("{:0w$b}", x);
    let prefix = |x: u64, y: u64| -> String {
        s(x).chars().zip(s(y).chars()).take_while(|(a, b)| a == b).map(|(a, _)| a).collect()
    };
    let floor = |p: &str| u64::from_str_radix(&format!("{p}0{}", "1".repeat(w - p.len() - 1)), 2).unwrap();
    let edges: Vec<(u64, u64)> = (0..1u64 << gamma)
        .flat_map(|x| (0..gamma).map(move |b| (x, x ^ (1 << b))))
        .filter(|&(x, y)| x < y)
        .collect();
    let meet = |(a, b): (u64, u64), (c, d): (u64, u64)| {
        let (lo1, hi1) = (rev_by_string(gamma, a).min(rev_by_string(gamma, b)), rev_by_string(gamma, a).max(rev_by_string(gamma, b)));
        let (lo2, hi2) = (rev_by_string(gamma, c).min(rev_by_string(gamma, d)), rev_by_string(gamma, c).max(rev_by_string(gamma, d)));
        lo1.max(lo2) <= hi1.min(hi2)
    };
    let (mut a, mut b) = (0, 0);
    for &e in &edges {
        for &f in &edges {
            if e == f {
                continue;
            }
            let (pe, pf) = (prefix(e.0, e.1), prefix(f.0, f.1));
            if pe == pf && meet(e, f) {
                a += 1;
            }
            let (fe, ff) = (floor(&pe), floor(&pf));
            let inside = |x: u64| e.0 <= x && x < e.1 && f.0 <= x && x < f.1;
            if inside(fe) && inside(ff) && meet(e, f) {
                b += 1;
            }
        }
    }
    (a, b)
}

#[test]
fn reversal_ranges_are_disjoint() {
    for gamma in 1..=4 {
        assert_eq!(reversal_disjointness_counterexamples(gamma), (0, 0), "gamma {gamma}");
        assert_eq!(disjointness_by_strings(gamma), (0, 0), "gamma {gamma}");
    }
}

#[test]
fn hard_family_shape() {
    let eps = coord(1, 100);
    for k in 2..=6usize {
        let g = gen_hard(k).unwrap();
        assert_eq!(g.len(), (2 * k - 2) + k);
        let mut nts: Vec<_> = (0..g.len()).filter(|&v| !g.is_terminal(v)).map(|v| g.interval(v)).collect();
        nts.sort_by_key(|iv| iv.left());
        for (i, iv) in nts.iter().enumerate() {
            let i = coord(i as i64 + 1, 1);
            assert_eq!((iv.left(), iv.right()), (i - eps, i + eps + coord(1, 1)));
        }
        for w in nts.windows(2) {
            assert_eq!(w[0].right() - w[1].left(), eps * coord(2, 1));
        }
        let mut ts: Vec<_> = g.terminals().iter().map(|&t| g.interval(t)).collect();
        ts.sort_by_key(|iv| iv.left());
        for (j, iv) in ts.iter().enumerate() {
            let j = j as i64 + 1;
            assert_eq!((iv.left(), iv.right()), (coord(4 * j - 3, 2), coord(4 * j - 1, 2)));
        }
    }
}

fn displayed_manhattan_edges(k: usize) -> BTreeSet<((usize, i64), (usize, i64), EdgeKind)> {
    let kk = k as i64;
    let mut set = BTreeSet::new();
    for i in 0..k {
        for j in -1..kk {
            set.insert(((i, j), (i, j + 1), EdgeKind::Hor));
        }
    }
    for j in -1..=kk {
        for i1 in 0..k {
            for i2 in 0..k {
                if i2 < i1 {
                    set.insert(((i1, j), (i2, j), EdgeKind::Up));
                } else if i1 < i2 {
                    set.insert(((i1, j), (i2, j), EdgeKind::Down));
                }
            }
        }
    }
    set
}

#[test]
fn manhattan_matches_displayed_edge_sets() {
    for k in [2, 4, 8] {
        let d = gen_manhattan(k).unwrap();
        assert_eq!(d.vertex_count(), k * k + 2 * k);
        let got: BTreeSet<_> = d.edges().collect();
        assert_eq!(got, displayed_manhattan_edges(k));
        for (_, _, kind) in d.edges() {
            assert_eq!(kind.weight(), if kind == EdgeKind::Down { 0 } else { 1 });
        }
        assert_eq!(d.terminals().len(), 3 * k);
        let mid = d.t_mid();
        let rows: BTreeSet<usize> = mid.iter().map(|c| c.0).collect();
        assert_eq!(rows.len(), k);
    }
    assert!(gen_manhattan(3).is_err());
    assert!(gen_gint(6).is_err());
}

#[test]
fn manhattan_distances() {
    for k in [2, 4, 8] {
        let d = gen_manhattan(k).unwrap();
        let arcs = digraph_arcs(&d);
        let n = d.vertex_count();
        for i in 0..k {
            let dist = dijkstra(n, &arcs, d.index((i, -1)));
            assert_eq!(dist[d.index((i, k as i64))], Some(k as u32 + 1));
        }
        let mid = d.t_mid();
        for (i, j) in hypercube_edges(k.trailing_zeros()) {
            let dist = dijkstra(n, &arcs, d.index(mid[i as usize]));
            assert_eq!(dist[d.index(mid[j as usize])], Some((j - i) as u32));
        }
    }
}

#[test]
fn every_horizontal_edge_is_needed() {
    for k in [2, 4] {
        let d = gen_manhattan(k).unwrap();
        let ts = d.terminals();
        let n = d.vertex_count();
        let all = digraph_arcs(&d);
        let base: Vec<Vec<Option<u32>>> = ts.iter().map(|&t| dijkstra(n, &all, d.index(t))).collect();
        for (a, b, kind) in d.edges() {
            if kind != EdgeKind::Hor {
                continue;
            }
            let cut: Vec<_> = all.iter().copied().filter(|&(x, y, _)| (x, y) != (d.index(a), d.index(b))).collect();
            let changed = ts.iter().enumerate().any(|(s, &t)| {
                let dist = dijkstra(n, &cut, d.index(t));
                ts.iter().any(|&u| dist[d.index(u)] != base[s][d.index(u)])
            });
            assert!(changed, "k = {k}: removing {a:?} -> {b:?} changed nothing");
        }
    }
}

#[test]
fn grid_intervals_layout() {
    for k in [2, 4, 8] {
        let g = gen_gint(k).unwrap();
        assert_eq!(g.len(), k * (k + 2));
        assert!(g.intervals().iter().all(|iv| iv.is_unit()));
        let lefts: BTreeSet<_> = g.intervals().iter().map(|iv| iv.left()).collect();
        let want: BTreeSet<_> = (0..(k * (k + 2)) as i64).map(|t| coord(-1, 1) + coord(t, k as i64)).collect();
        assert_eq!(lefts, want);
        let grid = WeightedDigraph::empty(k).unwrap();
        assert_eq!(g.terminals().len(), 3 * k);
        for &t in g.terminals() {
            assert!(grid.is_terminal(gint_cell(k, t)));
        }
    }
    let k = 4;
    let iv = gint_interval(k, (0, 0));
    assert_eq!((iv.left(), iv.right()), (coord(3, 4), coord(7, 4)));
}

#[test]
fn grid_edge_classes_match_displayed_sets() {
    for k in [2usize, 4] {
        let kk = k as i64;
        let g = gen_gint(k).unwrap();
        // Locate each cell by its interval, not by the library's numbering.
        let at = |c: (usize, i64)| -> usize {
            let iv = gint_interval(k, c);
            let left = coord(c.1, 1) + coord((k - 1 - c.0) as i64, kk);
            assert_eq!(iv.left(), left);
            (0..g.len()).find(|&v| g.interval(v) == iv).unwrap()
        };
        let mut want = BTreeSet::new();
        for i in 0..k {
            for j in -1..kk {
                want.insert((at((i, j)), at((i, j + 1)), GintEdge::Hor));
            }
        }
        for i in 1..k {
            for ip in 0..i {
                for j in -1..=kk {
                    want.insert((at((i, j)), at((ip, j)), GintEdge::Up));
                }
            }
        }
        for i in 0..k.saturating_sub(1) {
            for ip in i + 1..k {
                for j in -1..kk {
                    want.insert((at((i, j)), at((ip, j + 1)), GintEdge::Slant));
                }
            }
        }
        // Every adjacent pair, oriented from the earlier left endpoint.
        let adj = scan_adjacency(&g);
        let mut oriented = BTreeSet::new();
        for u in 0..g.len() {
            for &v in &adj[u] {
                if g.interval(u).left() < g.interval(v).left() {
                    oriented.insert((u, v));
                }
            }
        }
        let want_pairs: BTreeSet<_> = want.iter().map(|&(u, v, _)| (u, v)).collect();
        assert_eq!(oriented, want_pairs, "k = {k}");
        let got: BTreeSet<_> = gint_edges(&g).into_iter().collect();
        assert_eq!(got, want, "k = {k}");
    }
}

fn horizontal_only(k: usize, g: &Instance) -> Subgraph {
    let mut h = Subgraph::empty(g);
    for i in 0..k {
        for j in -1..k as i64 {
            h.add_edge(gint_index(k, (i, j)), gint_index(k, (i, j + 1)));
        }
    }
    h
}

#[test]
fn slant_transform_of_rows_is_rows() {
    let k = 4;
    let g = gen_gint(k).unwrap();
    let mh = slant_transform(k, &horizontal_only(k, &g)).unwrap();
    assert_eq!(mh.edge_count(), k * (k + 1));
    assert!(mh.edges().all(|(_, _, kind)| kind == EdgeKind::Hor));
}

#[test]
fn single_slant_becomes_down_edge() {
    let k = 2;
    let g = gen_gint(k).unwrap();
    let mut h = horizontal_only(k, &g);
    h.add_edge(gint_index(k, (0, 0)), gint_index(k, (1, 1)));
    let mh = slant_transform(k, &h).unwrap();
    assert!(mh.has_edge((0, 0), (1, 0)));
    assert_eq!(mh.kind_of((0, 0), (1, 0)), Some(EdgeKind::Down));
    assert!(mh.has_edge((1, 0), (1, 1)));
    assert_eq!(mh.edge_count(), k * (k + 1) + 1);
}

#[test]
fn slant_transform_needs_all_rows() {
    let k = 2;
    let g = gen_gint(k).unwrap();
    let mut h = horizontal_only(k, &g);
    h.remove_edge(gint_index(k, (1, 0)), gint_index(k, (1, 1)));
    assert!(slant_transform(k, &h).is_err());
}

/// Distances in a grid interval subgraph with every edge directed from the
/// earlier left endpoint to the later one.
fn directed_mid_distances(g: &Instance, h: &Subgraph, mids: &[usize]) -> Vec<Vec<Option<u32>>> {
    let arcs: Vec<(usize, usize, u32)> = h
        .edges()
        .map(|(u, v)| if g.interval(u).left() < g.interval(v).left() { (u, v, 1) } else { (v, u, 1) })
        .collect();
    mids.iter().map(|&s| { let d = dijkstra(g.len(), &arcs, s); mids.iter().map(|&t| d[t]).collect() }).collect()
}

#[test]
fn slant_transform_keeps_mid_distances_at_k2() {
    let k = 2;
    let g = gen_gint(k).unwrap();
    let extras: Vec<(usize, usize)> = gint_edges(&g).into_iter().filter(|e| e.2 != GintEdge::Hor).map(|e| (e.0, e.1)).collect();
    let grid = WeightedDigraph::empty(k).unwrap();
    let mids = grid.t_mid();
    let mid_idx: Vec<usize> = mids.iter().map(|&c| gint_index(k, c)).collect();
    let host = directed_mid_distances(&g, &Subgraph::full(&g), &mid_idx);
    let undirected = interval_dps::instances::manhattan::gint_mid_distances(k, &Subgraph::full(&g)).unwrap();
    for a in 0..k {
        for b in a + 1..k {
            assert_eq!(host[a][b], undirected[a][b]);
        }
    }
    let mut preserving = 0;
    for mask in 0..1u32 << extras.len() {
        let mut h = horizontal_only(k, &g);
        for (e, &(u, v)) in extras.iter().enumerate() {
            if mask >> e & 1 == 1 {
                h.add_edge(u, v);
            }
        }
        let mh = slant_transform(k, &h).unwrap();
        let arcs = digraph_arcs(&mh);
        let dint = directed_mid_distances(&g, &h, &mid_idx);
        for (a, &s) in mids.iter().enumerate() {
            let dw = dijkstra(mh.vertex_count(), &arcs, mh.index(s));
            for (b, &t) in mids.iter().enumerate().skip(a + 1) {
                // Every directed edge maps to a path of the same weight.
                if let Some(x) = dint[a][b] {
                    assert!(dw[mh.index(t)].is_some_and(|y| y <= x), "mask {mask:b}");
                }
            }
        }
        if dint == host {
            preserving += 1;
            for (a, &s) in mids.iter().enumerate() {
                let dw = dijkstra(mh.vertex_count(), &arcs, mh.index(s));
                for (b, &t) in mids.iter().enumerate() {
                    if b > a {
                        assert_eq!(dw[mh.index(t)], host[a][b], "mask {mask:b}");
                    }
                }
            }
        }
    }
    assert!(preserving > 0);
}

#[test]
fn gzero_shape() {
    for k in 1..=6usize {
        let (g, lay) = gen_gzero(k).unwrap();
        let kk = k as i64;
        assert_eq!(g.terminals().len(), 2 * k + 1);
        assert_eq!(g.len() - g.terminals().len(), k + 1);
        for x in -kk..=0 {
            let v = lay.interval(x);
            assert_eq!((g.interval(v).left(), g.interval(v).right()), (coord(x, 1), coord(x + kk, 1)));
        }
        for x in -kk..=kk {
            let t = lay.terminal(x);
            assert!(g.is_terminal(t) && g.interval(t).is_point() && g.interval(t).left() == coord(x, 1));
        }
        let adj = scan_adjacency(&g);
        for i in 0..kk {
            for j in i + 1..=kk {
                let d = common::bfs(&adj, lay.terminal(j - kk));
                // (i, j) = (0, k) names the same terminal twice.
                let want = if j - kk == i { 0 } else { 2 };
                assert_eq!(d[lay.terminal(i)], Some(want), "k {k} pair ({}, {i})", j - kk);
            }
        }
        for i in 1..kk {
            for j in i + 1..=kk {
                let d = common::bfs(&adj, lay.terminal(j - kk - 1));
                assert_eq!(d[lay.terminal(i)], Some(2));
            }
        }
    }
    let (g, lay) = gen_gzero(5).unwrap();
    for x in -5..=0 {
        let covered = g.terminals().iter().filter(|&&t| g.has_edge(t, lay.interval(x))).count();
        assert_eq!(covered, 6);
    }
}

#[test]
fn set_cover_graph_shape() {
    let sc = SetCoverInstance::new(3, vec![vec![1, 2], vec![2, 3], vec![3]]).unwrap();
    let (g, lay) = gen_gset(&sc).unwrap();
    let (n, m) = (3, 3);
    assert_eq!(g.vertex_count(), n * (m + 1) + m + 2);
    assert_eq!(g.terminals().len(), n * (m + 1) + 2);
    for u in 1..=n {
        for i in 1..=m + 1 {
            let e = lay.element(u, i);
            assert!(g.has_edge(lay.t0(), e));
            for j in 1..=m {
                assert_eq!(g.has_edge(e, lay.set(j)), sc.sets[j - 1].contains(&u));
            }
        }
    }
    for j in 1..=m {
        assert!(g.has_edge(lay.t1(), lay.set(j)));
        assert!(!g.is_terminal(lay.set(j)));
    }
    assert!(SetCoverInstance::new(2, vec![vec![3]]).is_err());
}

#[test]
fn random_generator_contract() {
    for flavor in [Flavor::General, Flavor::UnitPoint] {
        let a = gen_random(60, 9, 11, flavor).unwrap();
        let b = gen_random(60, 9, 11, flavor).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random(60, 9, 12, flavor).unwrap());
        let all = gen_random(7, 7, 3, flavor).unwrap();
        assert_eq!(all.terminals().len(), 7);
    }
    let g = gen_random(80, 12, 5, Flavor::UnitPoint).unwrap();
    interval_dps::dps::check_unit_point(&g).unwrap();
    let adj = scan_adjacency(&g);
    let d = common::bfs(&adj, g.terminals()[0]);
    assert!(g.terminals().iter().all(|&t| d[t].is_some()));
}
