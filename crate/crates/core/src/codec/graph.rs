use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite directed graph with integer vertex names.
///
/// Self-loops are allowed, multi-edges are not. Vertex names need not be
/// dense: a decoded word names its vertices by block exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    vertices: BTreeSet<u32>,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    /// Edgeless graph on vertices `1..=n`.
    pub fn new(n: usize) -> Self {
        Graph {
            vertices: (1..=n as u32).collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn empty() -> Self {
        Graph::default()
    }

    /// Graph on `1..=n` with the given edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u == 0 || v == 0 || u as usize > n || v as usize > n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) outside 1..={n}")));
            }
            g.edges.insert((u, v));
        }
        Ok(g)
    }

    /// Graph with an explicit vertex-name set.
    pub fn with_vertices(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let mut g = Graph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        };
        for (u, v) in edges {
            if !g.vertices.contains(&u) || !g.vertices.contains(&v) {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an unknown endpoint")));
            }
            g.edges.insert((u, v));
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
    }

    /// Adds an edge together with both endpoints.
    pub fn add_edge(&mut self, u: u32, v: u32) {
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert((u, v));
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edge_set(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Vertices not incident to any edge (a self-loop counts as incident).
    pub fn isolated_vertices(&self) -> BTreeSet<u32> {
        let mut iso = self.vertices.clone();
        for &(u, v) in &self.edges {
            iso.remove(&u);
            iso.remove(&v);
        }
        iso
    }

    /// Order-preserving relabeling onto `1..=n`.
    pub fn relabel_dense(&self) -> Graph {
        let index: std::collections::BTreeMap<u32, u32> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32 + 1))
            .collect();
        Graph {
            vertices: (1..=self.order() as u32).collect(),
            edges: self.edges.iter().map(|(u, v)| (index[u], index[v])).collect(),
        }
    }

    /// Whether the vertex names are exactly `1..=n`.
    pub fn is_dense(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// `(V, (E ∪ E⁻¹) ∖ id)`, storing both orientations of every edge.
    pub fn undirected_simplification(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u != v {
                edges.insert((u, v));
                edges.insert((v, u));
            }
        }
        Graph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Disjoint union; `other` is shifted above the largest name of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertices.iter().next_back().copied().unwrap_or(0);
        let mut g = self.clone();
        let other = other.relabel_dense();
        for v in other.vertices() {
            g.vertices.insert(v + shift);
        }
        for (u, v) in other.edges() {
            g.edges.insert((u + shift, v + shift));
        }
        g
    }

    /// Induced subgraph on the given vertex names.
    pub fn induced(&self, keep: &BTreeSet<u32>) -> Graph {
        Graph {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(u, v)| keep.contains(u) && keep.contains(v))
                .copied()
                .collect(),
        }
    }

    /// Symmetric adjacency bitmasks over dense indices `0..n`, loops dropped.
    ///
    /// Only valid for graphs with at most 64 vertices.
    pub(crate) fn undirected_masks(&self) -> Vec<u64> {
        let names: Vec<u32> = self.vertices.iter().copied().collect();
        let pos = |x: u32| names.binary_search(&x).unwrap();
        let mut adj = vec![0u64; names.len()];
        for &(u, v) in &self.edges {
            if u != v {
                let (i, j) = (pos(u), pos(v));
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        adj
    }

    /// Serializes in the line format `n=<count>` followed by `e <u> <v>` lines.
    ///
    /// Non-dense names are compacted first, preserving their order.
    pub fn to_text(&self) -> String {
        let g = if self.is_dense() { self.clone() } else { self.relabel_dense() };
        let mut out = format!("n={}\n", g.order());
        for (u, v) in g.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    /// Parses the line format written by [`Graph::to_text`].
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let pos = offset;
            offset += line.len() + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if n.is_some() {
                    return Err(Error::parse(pos, "duplicate vertex count line"));
                }
                n = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| Error::parse(pos, format!("bad vertex count {rest:?}")))?,
                );
                continue;
            }
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some("e"), Some(u), Some(v), None) => {
                    let u: u32 = u.parse().map_err(|_| Error::parse(pos, format!("bad vertex {u:?}")))?;
                    let v: u32 = v.parse().map_err(|_| Error::parse(pos, format!("bad vertex {v:?}")))?;
                    edges.push((u, v));
                }
                _ => return Err(Error::parse(pos, format!("unrecognized line {line:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing `n=<count>` line"))?;
        Graph::from_edges(n, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.edges.iter().map(|(u, v)| format!("({u},{v})")).collect();
        write!(f, "({{{}}}, {{{}}})", vs.join(","), es.join(","))
    }
}
