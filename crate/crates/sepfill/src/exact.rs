//! Exact treewidth for small graphs via dynamic programming over
//! elimination orderings, memoized on the set of already-eliminated
//! vertices. Ground truth for the soundness tests and the base case of
//! the recursive estimator.

use std::collections::BTreeMap;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub const DEFAULT_EXACT_LIMIT: usize = 15;

/// A permutation of the graph's vertices; eliminating a vertex connects
/// its not-yet-eliminated neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering(pub Vec<Vertex>);

/// Back-degree of eliminating `A`-then-`v`: neighbors of `v` outside
/// `A ∪ {v}` reachable through vertices of `A` only.
fn back_degree(adj: &[u64], eliminated: u64, v: usize) -> u32 {
    let mut outside = 0u64;
    let mut visited = 1u64 << v;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        let fresh = adj[u] & !visited;
        visited |= fresh;
        outside |= fresh & !eliminated;
        let mut inner = fresh & eliminated;
        while inner != 0 {
            let w = inner.trailing_zeros() as usize;
            inner &= inner - 1;
            stack.push(w);
        }
    }
    outside.count_ones()
}

/// Exact treewidth and a minimum tree decomposition. Errors with
/// `SizeLimit` when the graph has more than `limit` vertices.
pub fn exact_treewidth(g: &Graph, limit: usize) -> Result<(i32, TreeDecomposition)> {
    let n = g.vertex_count();
    // 2^n DP states; 24 keeps the tables under ~100 MB.
    let limit = limit.min(24);
    if n > limit {
        return Err(Error::SizeLimit { size: n, limit });
    }
    if n == 0 {
        return Ok((-1, TreeDecomposition::empty()));
    }
    let labels: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<u64> = labels
        .iter()
        .map(|&v| g.neighbors(v).fold(0u64, |m, u| m | (1u64 << index[&u])))
        .collect();

    let full = (1u64 << n) - 1;
    // cost[mask] = best max back-degree over orderings eliminating exactly
    // `mask` first; choice[mask] = last vertex of the best such prefix.
    let mut cost = vec![0i32; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    cost[0] = -1;
    for mask in 1..=full {
        let mut best = i32::MAX;
        let mut best_v = 0u8;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = mask & !(1u64 << v);
            let prev_cost = cost[prev as usize];
            if prev_cost >= best {
                continue;
            }
            let w = prev_cost.max(back_degree(&adj, prev, v) as i32);
            if w < best {
                best = w;
                best_v = v as u8;
            }
        }
        cost[mask as usize] = best;
        choice[mask as usize] = best_v;
    }

    // Walk the choices back to an optimal elimination ordering.
    let mut order_idx = vec![0usize; n];
    let mut mask = full;
    for pos in (0..n).rev() {
        let v = choice[mask as usize] as usize;
        order_idx[pos] = v;
        mask &= !(1u64 << v);
    }
    let ordering = EliminationOrdering(order_idx.iter().map(|&i| labels[i]).collect());
    let td = decomposition_from_ordering(g, &ordering)?;
    debug_assert_eq!(td.width(), cost[full as usize]);
    Ok((cost[full as usize], td))
}

fn elimination_positions(g: &Graph, o: &EliminationOrdering) -> Result<BTreeMap<Vertex, usize>> {
    let mut pos = BTreeMap::new();
    for (i, &v) in o.0.iter().enumerate() {
        if !g.has_vertex(v) || pos.insert(v, i).is_some() {
            return Err(Error::Permutation);
        }
    }
    if pos.len() != g.vertex_count() {
        return Err(Error::Permutation);
    }
    Ok(pos)
}

/// Simulates elimination along `o`, connecting the later neighbors of
/// each eliminated vertex, and returns the maximum back-degree. The
/// minimum over all orderings equals the treewidth; kept independent of
/// [`exact_treewidth`] as a brute-force cross-check.
pub fn width_of_ordering(g: &Graph, o: &EliminationOrdering) -> Result<i32> {
    let pos = elimination_positions(g, o)?;
    let mut later: BTreeMap<Vertex, VertexSet> = g
        .vertices()
        .map(|v| (v, g.neighbors(v).filter(|u| pos[u] > pos[&v]).collect()))
        .collect();
    let mut width = if g.is_empty() { -1 } else { 0 };
    for &v in &o.0 {
        let nbrs = later[&v].clone();
        width = width.max(nbrs.len() as i32);
        for &a in &nbrs {
            for &b in &nbrs {
                if a < b {
                    if pos[&a] < pos[&b] {
                        later.get_mut(&a).unwrap().insert(b);
                    } else {
                        later.get_mut(&b).unwrap().insert(a);
                    }
                }
            }
        }
    }
    Ok(width)
}

/// Builds the clique-of-eliminated-neighborhood decomposition for an
/// ordering: bag i = vertex i plus its later fill-neighbors; each bag
/// hangs off the bag of its earliest-eliminated later neighbor.
pub fn decomposition_from_ordering(
    g: &Graph,
    o: &EliminationOrdering,
) -> Result<TreeDecomposition> {
    let pos = elimination_positions(g, o)?;
    let n = o.0.len();
    if n == 0 {
        return Ok(TreeDecomposition::empty());
    }
    let mut later: BTreeMap<Vertex, VertexSet> = g
        .vertices()
        .map(|v| (v, g.neighbors(v).filter(|u| pos[u] > pos[&v]).collect()))
        .collect();
    let mut td = TreeDecomposition::default();
    let mut parents = Vec::new();
    for (i, &v) in o.0.iter().enumerate() {
        let nbrs = later[&v].clone();
        let mut bag = nbrs.clone();
        bag.insert(v);
        td.add_bag(bag);
        match nbrs.iter().min_by_key(|u| pos[u]) {
            Some(&u) => parents.push(Some(pos[&u])),
            None => parents.push(if i + 1 < n { Some(i + 1) } else { None }),
        }
        for &a in &nbrs {
            for &b in &nbrs {
                if a < b {
                    if pos[&a] < pos[&b] {
                        later.get_mut(&a).unwrap().insert(b);
                    } else {
                        later.get_mut(&b).unwrap().insert(a);
                    }
                }
            }
        }
    }
    for (i, parent) in parents.iter().enumerate() {
        if let Some(p) = parent {
            td.add_tree_edge(i, *p);
        }
    }
    Ok(td)
}

/// Width of the min-degree greedy elimination ordering: a fast upper
/// bound on treewidth. Ties break toward the smaller label.
pub fn greedy_elimination_width(g: &Graph) -> i32 {
    let mut adj: BTreeMap<Vertex, VertexSet> = g
        .vertices()
        .map(|v| (v, g.neighbors(v).collect()))
        .collect();
    let mut width = if g.is_empty() { -1 } else { 0 };
    while !adj.is_empty() {
        let (&v, _) = adj
            .iter()
            .min_by_key(|(&v, ns)| (ns.len(), v))
            .expect("nonempty");
        let nbrs = adj.remove(&v).unwrap();
        width = width.max(nbrs.len() as i32);
        for &a in &nbrs {
            let set = adj.get_mut(&a).unwrap();
            set.remove(&v);
        }
        for &a in &nbrs {
            for &b in &nbrs {
                if a < b {
                    adj.get_mut(&a).unwrap().insert(b);
                    adj.get_mut(&b).unwrap().insert(a);
                }
            }
        }
    }
    width
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate;
    use crate::fixtures::{complete, cycle, edgeless, fig1, path};

    fn tw(g: &Graph) -> i32 {
        let (w, td) = exact_treewidth(g, DEFAULT_EXACT_LIMIT).unwrap();
        assert!(validate(&td, g).is_valid(), "oracle decomposition invalid");
        assert_eq!(td.width(), w);
        w
    }

    #[test]
    fn known_families() {
        assert_eq!(tw(&path(10)), 1);
        assert_eq!(tw(&cycle(12)), 2);
        assert_eq!(tw(&complete(7)), 6);
        assert_eq!(tw(&edgeless(5)), 0);
    }

    #[test]
    fn fig1_treewidth_is_two() {
        assert_eq!(tw(&fig1()), 2);
    }

    #[test]
    fn empty_graph_convention() {
        let (w, td) = exact_treewidth(&Graph::new(), DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(w, -1);
        assert_eq!(td, TreeDecomposition::empty());
    }

    #[test]
    fn size_limit_enforced() {
        assert_eq!(
            exact_treewidth(&path(16), 15),
            Err(Error::SizeLimit { size: 16, limit: 15 })
        );
    }

    #[test]
    fn clique_width_is_ordering_invariant() {
        let g = complete(4);
        let o = EliminationOrdering(vec![2, 4, 1, 3]);
        assert_eq!(width_of_ordering(&g, &o).unwrap(), 3);
    }

    #[test]
    fn any_ordering_upper_bounds_exact() {
        let g = fig1();
        let o = EliminationOrdering(vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert!(width_of_ordering(&g, &o).unwrap() >= 2);
    }

    #[test]
    fn perfect_elimination_order_achieves_two() {
        // fig1 is chordal; eliminating simplicial vertices first stays at 2.
        let g = fig1();
        let o = EliminationOrdering(vec![1, 2, 6, 7, 9, 10, 5, 8, 4, 3]);
        assert_eq!(width_of_ordering(&g, &o).unwrap(), 2);
    }

    #[test]
    fn rejects_non_permutations() {
        let g = path(3);
        assert_eq!(
            width_of_ordering(&g, &EliminationOrdering(vec![1, 1, 2])),
            Err(Error::Permutation)
        );
        assert_eq!(
            width_of_ordering(&g, &EliminationOrdering(vec![1, 2])),
            Err(Error::Permutation)
        );
    }

    #[test]
    fn greedy_is_an_upper_bound() {
        assert_eq!(greedy_elimination_width(&path(10)), 1);
        assert_eq!(greedy_elimination_width(&complete(5)), 4);
        assert_eq!(greedy_elimination_width(&fig1()), 2);
        assert_eq!(greedy_elimination_width(&Graph::new()), -1);
    }
}
