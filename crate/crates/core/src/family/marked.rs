use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::FamilyPiece;
use crate::alphabetc::Letter;
use crate::codec::Graph;

/// The graph of a piece's letters at reduced exponents, with marks on the
/// parts that can be repeated without bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedGraph {
    graph: Graph,
    base: Graph,
    marked_vertices: BTreeSet<u32>,
    marked_edges: BTreeSet<(u32, u32)>,
}

pub(super) fn marked_graph(piece: &FamilyPiece) -> MarkedGraph {
    let mut base = Graph::empty();
    let mut mv = BTreeSet::new();
    let mut me = BTreeSet::new();
    for (&z, &a) in piece.letters().iter().zip(piece.alpha()) {
        match z {
            Letter::Vertex(c) => base.add_vertex(c),
            Letter::Edge(c, d) => base.add_edge(c, d),
        }
        if !a.is_infinite() {
            continue;
        }
        for c in z.blocks() {
            if piece.is_big(c) {
                mv.insert(c);
            }
        }
        if let Letter::Edge(c, d) = z {
            me.insert((c, d));
        }
    }
    // Keep only the smallest isolated marked vertex.
    let isolated = base.isolated_vertices();
    let mut dropped: BTreeSet<u32> = isolated.intersection(&mv).copied().collect();
    let keep = dropped.iter().next().copied();
    if let Some(k) = keep {
        dropped.remove(&k);
    }
    let kept: BTreeSet<u32> = base.vertices().filter(|v| !dropped.contains(v)).collect();
    let graph = base.induced(&kept);
    let marked_vertices = mv.difference(&dropped).copied().collect();
    MarkedGraph {
        graph,
        base,
        marked_vertices,
        marked_edges: me,
    }
}

impl MarkedGraph {
    /// The marked graph after collapsing isolated marked vertices.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The graph of all letters before collapsing.
    pub fn base_graph(&self) -> &Graph {
        &self.base
    }

    pub fn marked_vertices(&self) -> &BTreeSet<u32> {
        &self.marked_vertices
    }

    pub fn marked_edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.marked_edges
    }

    pub fn has_marks(&self) -> bool {
        !self.marked_vertices.is_empty() || !self.marked_edges.is_empty()
    }

    pub fn has_marked_loop(&self) -> bool {
        self.marked_edges.iter().any(|(u, v)| u == v)
    }

    /// Whether some marked edge joins two distinct marked vertices.
    pub fn has_doubly_marked_edge(&self) -> bool {
        self.marked_edges.iter().any(|&(u, v)| {
            u != v && self.marked_vertices.contains(&u) && self.marked_vertices.contains(&v)
        })
    }

    /// Marks as display strings: `v<name>` for vertices, `e<u>-<v>` for edges.
    pub fn marks(&self) -> Vec<String> {
        self.marked_vertices
            .iter()
            .map(|v| format!("v{v}"))
            .chain(self.marked_edges.iter().map(|(u, v)| format!("e{u}-{v}")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Torsion;
    use crate::family::Mult;

    #[test]
    fn looped_clique_piece() {
        let p = FamilyPiece::from_alpha(&[(Letter::Edge(1, 1), Mult::Infinite)], Torsion::new(1, 1));
        let f = p.marked_graph();
        assert_eq!(f.graph(), &Graph::from_edges(1, [(1, 1)]).unwrap());
        assert!(f.has_marked_loop());
        assert_eq!(f.marks(), ["v1", "e1-1"]);
    }

    #[test]
    fn single_vertex_unmarked() {
        let p = FamilyPiece::from_alpha(&[(Letter::Vertex(1), Mult::Finite(1))], Torsion::new(2, 1));
        let f = p.marked_graph();
        assert_eq!(f.graph(), &Graph::new(1));
        assert!(!f.has_marks());
    }

    #[test]
    fn star_piece_marks_the_leaf_side() {
        let p = FamilyPiece::from_alpha(
            &[(Letter::Edge(1, 2), Mult::Infinite), (Letter::Vertex(1), Mult::Finite(1))],
            Torsion::new(2, 1),
        );
        let f = p.marked_graph();
        assert_eq!(f.graph(), &Graph::from_edges(2, [(1, 2)]).unwrap());
        assert_eq!(f.marked_vertices(), &[2].into_iter().collect());
        assert_eq!(f.marked_edges(), &[(1, 2)].into_iter().collect());
        assert!(!f.has_doubly_marked_edge());
    }

    #[test]
    fn isolated_marked_vertices_collapse() {
        let p = FamilyPiece::from_alpha(
            &[(Letter::Vertex(2), Mult::Infinite), (Letter::Vertex(3), Mult::Infinite)],
            Torsion::new(2, 2),
        );
        let f = p.marked_graph();
        assert_eq!(f.base_graph().order(), 2);
        assert_eq!(f.graph().order(), 1);
        assert_eq!(f.marked_vertices().len(), 1);
    }
}
