//! Small graph families used by tests, examples and benches.

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, Vertex, VertexSet};

/// The worked 10-vertex example graph: union of the five triangles
/// {1,2,3}, {3,4,5}, {3,4,8}, {5,6,7}, {8,9,10}. Chordal, treewidth 2.
pub fn fig1() -> Graph {
    Graph::from_edges(
        10,
        &[
            (1, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (3, 5),
            (4, 5),
            (3, 8),
            (4, 8),
            (5, 6),
            (5, 7),
            (6, 7),
            (8, 9),
            (8, 10),
            (9, 10),
        ],
    )
    .unwrap()
}

/// A width-2 clique decomposition of [`fig1`]: bags C1..C5 joined as
/// the tree C4-C2-C1, C2-C3, C3-C5.
pub fn fig1_decomposition() -> TreeDecomposition {
    let bags: Vec<VertexSet> = [
        vec![1, 2, 3],
        vec![3, 4, 5],
        vec![3, 4, 8],
        vec![5, 6, 7],
        vec![8, 9, 10],
    ]
    .into_iter()
    .map(|b| b.into_iter().collect())
    .collect();
    let mut t = TreeDecomposition::new(bags);
    t.add_tree_edge(3, 1);
    t.add_tree_edge(1, 0);
    t.add_tree_edge(1, 2);
    t.add_tree_edge(2, 4);
    t
}

pub fn path(n: u32) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: u32) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (i, i + 1)).collect();
    edges.push((n, 1));
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn edgeless(n: u32) -> Graph {
    Graph::with_vertices(n)
}

/// `rows x cols` grid, vertices numbered row-major starting at 1.
pub fn grid(rows: u32, cols: u32) -> Graph {
    let mut edges = Vec::new();
    let id = |r: u32, c: u32| r * cols + c + 1;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).unwrap()
}

/// Star with one center (vertex 1) and `leaves` leaves.
pub fn star(leaves: u32) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (2..=leaves + 1).map(|v| (1, v)).collect();
    Graph::from_edges(leaves + 1, &edges).unwrap()
}
