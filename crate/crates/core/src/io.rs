//! JSON file schemas and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PlainGraph};
use crate::instance::Instance;
use crate::instances::manhattan::{Cell, EdgeKind, WeightedDigraph};
use crate::interval::{coord, Coord, Interval};
use crate::subgraph::Subgraph;

pub const FORMAT_VERSION: u32 = 1;

/// Exact rational as `[numerator, denominator]`.
pub type Rational = [i64; 2];

fn to_pair(c: Coord) -> Rational {
    [*c.numer(), *c.denom()]
}

fn from_pair([n, d]: Rational) -> Result<Coord> {
    if d == 0 {
        return Err(Error::Representation(format!("zero denominator in {n}/{d}")));
    }
    Ok(coord(n, d))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub intervals: Vec<[Rational; 2]>,
    pub terminals: Vec<bool>,
    #[serde(default)]
    pub meta: Meta,
}

impl InstanceFile {
    /// Intervals are written in canonical order, so reading the file back
    /// reproduces the same vertex numbering.
    pub fn from_instance(g: &Instance, meta: Meta) -> Self {
        InstanceFile {
            version: FORMAT_VERSION,
            intervals: g.intervals().iter().map(|iv| [to_pair(iv.left()), to_pair(iv.right())]).collect(),
            terminals: g.terminal_flags().to_vec(),
            meta,
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Representation(format!("unsupported instance version {}", self.version)));
        }
        let ivs = self
            .intervals
            .iter()
            .enumerate()
            .map(|(i, &[l, r])| {
                Interval::new(from_pair(l)?, from_pair(r)?).map_err(|_| Error::InvalidInterval { index: i })
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(&ivs, &self.terminals)
    }
}

/// Generic undirected graph with terminal flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub version: u32,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub terminals: Vec<bool>,
    #[serde(default)]
    pub meta: Meta,
}

impl GraphFile {
    pub fn from_graph<G: Graph + ?Sized>(g: &G, meta: Meta) -> Self {
        GraphFile {
            version: FORMAT_VERSION,
            vertices: g.vertex_count(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            terminals: (0..g.vertex_count()).map(|v| g.is_terminal(v)).collect(),
            meta,
        }
    }

    pub fn to_graph(&self) -> Result<PlainGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        PlainGraph::new(self.vertices, &edges, self.terminals.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphEdge {
    pub from: Cell,
    pub to: Cell,
    pub kind: EdgeKind,
    pub weight: u32,
}

/// Manhattan grid subgraph with explicit direction and weight per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphFile {
    pub version: u32,
    pub k: usize,
    pub edges: Vec<DigraphEdge>,
    pub terminals: Vec<Cell>,
}

impl DigraphFile {
    pub fn from_digraph(d: &WeightedDigraph) -> Self {
        DigraphFile {
            version: FORMAT_VERSION,
            k: d.k(),
            edges: d.edges().map(|(from, to, kind)| DigraphEdge { from, to, kind, weight: kind.weight() }).collect(),
            terminals: d.terminals(),
        }
    }

    pub fn to_digraph(&self) -> Result<WeightedDigraph> {
        let mut d = WeightedDigraph::empty(self.k)?;
        for e in &self.edges {
            let kind = d.add_edge(e.from, e.to)?;
            if kind != e.kind || kind.weight() != e.weight {
                return Err(Error::Representation(format!("edge {:?} -> {:?} is {kind:?}", e.from, e.to)));
            }
        }
        Ok(d)
    }
}

/// A built subgraph plus its summary numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphFile {
    pub version: u32,
    pub host_vertices: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub branching_vertices: usize,
    pub branching_edges: usize,
}

impl SubgraphFile {
    pub fn from_subgraph(h: &Subgraph) -> Self {
        SubgraphFile {
            version: FORMAT_VERSION,
            host_vertices: h.host_size(),
            vertices: h.vertices().collect(),
            edges: h.edges().map(|(u, v)| [u, v]).collect(),
            branching_vertices: h.branching_vertices().0,
            branching_edges: h.branching_edges(),
        }
    }

    pub fn to_subgraph<G: Graph + ?Sized>(&self, host: &G) -> Result<Subgraph> {
        if self.host_vertices != host.vertex_count() {
            return Err(Error::LengthMismatch {
                what: "subgraph host",
                expected: host.vertex_count(),
                got: self.host_vertices,
            });
        }
        let mut h = Subgraph::empty(host);
        for &v in &self.vertices {
            host.check_vertex(v)?;
            h.add_vertex(v);
        }
        for &[u, v] in &self.edges {
            host.check_vertex(u)?;
            host.check_vertex(v)?;
            h.add_edge(u, v);
        }
        h.check_host(host)?;
        Ok(h)
    }
}

/// Any of the file kinds, told apart by their fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyFile {
    Instance(InstanceFile),
    Subgraph(SubgraphFile),
    Digraph(DigraphFile),
    Graph(GraphFile),
}

pub fn parse_any(text: &str) -> Result<AnyFile> {
    serde_json::from_str(text).map_err(|e| Error::Representation(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("file types serialize")
}

/// DOT for the vertices and edges of `h`. Terminals are boxes; branching
/// vertices are filled and their label says so.
pub fn subgraph_dot(h: &Subgraph, label: impl Fn(usize) -> String) -> String {
    let deg = h.degrees();
    let mut out = String::from("graph H {\n");
    for v in h.vertices() {
        let shape = if h.is_host_terminal(v) { "box" } else { "ellipse" };
        let mut text = label(v);
        let mut extra = "";
        if deg[v] >= 3 {
            text.push_str("\\nbranching");
            extra = ", style=filled, fillcolor=lightgray";
        }
        let _ = writeln!(out, "  {v} [label=\"{text}\", shape={shape}{extra}];");
    }
    for (u, v) in h.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// DOT for a whole interval instance, labelled with coordinates.
pub fn instance_dot(g: &Instance) -> String {
    subgraph_dot(&Subgraph::full(g), |v| g.interval(v).to_string())
}

pub fn graph_dot<G: Graph + ?Sized>(g: &G) -> String {
    subgraph_dot(&Subgraph::full(g), |v| v.to_string())
}

pub fn digraph_dot(d: &WeightedDigraph) -> String {
    let branching: std::collections::BTreeSet<Cell> = d.branching_vertices().into_iter().collect();
    let mut out = String::from("digraph G {\n");
    for v in 0..d.vertex_count() {
        let c = d.cell(v);
        let shape = if d.is_terminal(c) { "box" } else { "ellipse" };
        let extra = if branching.contains(&c) { ", style=filled, fillcolor=lightgray" } else { "" };
        let _ = writeln!(out, "  {v} [label=\"({},{})\", shape={shape}{extra}];", c.0, c.1);
    }
    for (a, b, kind) in d.edges() {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", d.index(a), d.index(b), kind.weight());
    }
    out.push_str("}\n");
    out
}
