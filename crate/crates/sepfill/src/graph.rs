//! Undirected simple graphs over labeled vertices, plus `.gr` file I/O.
//!
//! Vertices carry external labels (conventionally `1..=n`); induced
//! subgraphs and vertex removals preserve labels, so a graph's vertex
//! set need not be contiguous.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A set of vertex labels. Ordered so that iteration and comparison
/// are deterministic.
pub type VertexSet = BTreeSet<Vertex>;

/// Undirected simple graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Graph with vertices `1..=n` and no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Graph::new();
        for v in 1..=n {
            g.add_vertex(v);
        }
        g
    }

    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Inserts both endpoints if absent. Duplicate edges are a no-op.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|ns| ns.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |ns| ns.len())
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_clique(&self) -> bool {
        let n = self.vertex_count();
        n <= 1 || self.edge_count() == n * (n - 1) / 2
    }

    fn check_members(&self, x: &VertexSet) -> Result<()> {
        for &v in x {
            if !self.has_vertex(v) {
                return Err(Error::Membership(v));
            }
        }
        Ok(())
    }

    /// Subgraph induced by `x`: vertex set `x`, edges of `self` with both
    /// endpoints in `x`. Labels preserved.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph> {
        self.check_members(x)?;
        let mut g = Graph::new();
        for &v in x {
            g.add_vertex(v);
            for u in self.neighbors(v) {
                if u > v && x.contains(&u) {
                    g.add_edge(v, u)?;
                }
            }
        }
        Ok(g)
    }

    /// Deletes the vertices of `s` and their incident edges.
    pub fn remove_vertices(&self, s: &VertexSet) -> Result<Graph> {
        self.check_members(s)?;
        let keep: VertexSet = self.vertices().filter(|v| !s.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Maximal connected vertex sets, sorted by smallest member label.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut components = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

/// Parses the PACE-style `.gr` format: optional `c` comment lines, a
/// `p tw <n> <m>` header, then 1-indexed `<u> <v>` edge lines.
/// Duplicate edges collapse; self-loops are an error.
pub fn parse_graph<R: BufRead>(reader: R) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut n = 0u32;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
        if line.starts_with('p') {
            if graph.is_some() {
                return Err(Error::format(lineno, "duplicate header"));
            }
            if tokens.len() != 4 || tokens[1] != "tw" {
                return Err(Error::format(lineno, "expected header `p tw <n> <m>`"));
            }
            n = tokens[2]
                .parse()
                .map_err(|_| Error::format(lineno, "bad vertex count"))?;
            let _m: usize = tokens[3]
                .parse()
                .map_err(|_| Error::format(lineno, "bad edge count"))?;
            graph = Some(Graph::with_vertices(n));
            continue;
        }
        let g = graph
            .as_mut()
            .ok_or_else(|| Error::format(lineno, "edge line before header"))?;
        if tokens.len() != 2 {
            return Err(Error::format(lineno, "expected `<u> <v>`"));
        }
        let endpoint = |t: &str| -> Result<Vertex> {
            let v: u32 = t
                .parse()
                .map_err(|_| Error::format(lineno, "bad vertex index"))?;
            if v < 1 || v > n {
                return Err(Error::format(
                    lineno,
                    format!("vertex index {v} out of range 1..{n}"),
                ));
            }
            Ok(v)
        };
        let (u, v) = (endpoint(tokens[0])?, endpoint(tokens[1])?);
        g.add_edge(u, v)?;
    }
    graph.ok_or_else(|| Error::format(0, "missing `p tw` header"))
}

/// Writes the `.gr` format. The header's `n` is the largest vertex label,
/// so only graphs with vertex set `1..=n` round-trip exactly.
pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    let n = g.vertices().max().unwrap_or(0);
    writeln!(out, "p tw {} {}", n, g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
