//! Treewidth upper bounds from a separator: the classic
//! separator-as-clique bound, the tighter separator-as-components bound
//! obtained by filling in only attachment sets, the corollary bound, and
//! the constructive combiner that realizes the bound as an actual
//! decomposition.

use std::collections::BTreeSet;

use crate::decomposition::{find_cluster_containing, TreeDecomposition};
use crate::error::{Error, Result};
use crate::exact::{exact_treewidth, greedy_elimination_width};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::separator::enumerate_candidates;

/// Partial fill-in of a separator `S`: the components of `G - S`, their
/// attachment sets `S_i` (vertices of `S` with a neighbor in component
/// i), the fill edges `F` (non-edges inside a common `S_i`), and the
/// augmented separator graph `H_S = G_S + F`, in which every `S_i` is a
/// clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillInResult {
    pub separator: VertexSet,
    pub components: Vec<VertexSet>,
    pub attachment_sets: Vec<VertexSet>,
    pub fill_edges: BTreeSet<(Vertex, Vertex)>,
    pub augmented_separator_graph: Graph,
}

impl FillInResult {
    /// `H = G + F`, the supergraph the combined decomposition also covers.
    pub fn augmented_graph(&self, g: &Graph) -> Graph {
        let mut h = g.clone();
        for &(u, v) in &self.fill_edges {
            h.add_edge(u, v).expect("fill edges have distinct endpoints");
        }
        h
    }
}

/// Components of `g - s` paired with their attachment sets, in
/// component order.
pub fn attachment_sets(g: &Graph, s: &VertexSet) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    for &v in s {
        if !g.has_vertex(v) {
            return Err(Error::Membership(v));
        }
    }
    let components = g.remove_vertices(s)?.connected_components();
    let attachments = components
        .iter()
        .map(|comp| {
            s.iter()
                .copied()
                .filter(|&x| g.neighbors(x).any(|u| comp.contains(&u)))
                .collect()
        })
        .collect();
    Ok((components, attachments))
}

/// Computes the partial fill-in for `(g, s)`.
pub fn fill_in(g: &Graph, s: &VertexSet) -> Result<FillInResult> {
    let (components, attachment_sets) = attachment_sets(g, s)?;
    let mut fill_edges = BTreeSet::new();
    for si in &attachment_sets {
        for &u in si {
            for &v in si {
                if u < v && !g.has_edge(u, v) {
                    fill_edges.insert((u, v));
                }
            }
        }
    }
    let mut augmented = g.induced_subgraph(s)?;
    for &(u, v) in &fill_edges {
        augmented.add_edge(u, v)?;
    }
    Ok(FillInResult {
        separator: s.clone(),
        components,
        attachment_sets,
        fill_edges,
        augmented_separator_graph: augmented,
    })
}

/// Tag recording how sub-treewidths in a [`BoundReport`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubMethod {
    Exact,
    Bounded,
}

impl std::fmt::Display for SubMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubMethod::Exact => write!(f, "exact"),
            SubMethod::Bounded => write!(f, "bounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBound {
    pub index: usize,
    pub attachment_size: usize,
    pub tw: i32,
}

/// All three bounds for one `(g, s)` pair, with the per-component
/// breakdown showing which term dominates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub clique_bound: i32,
    pub components_bound: i32,
    pub corollary_bound: i32,
    pub tw_hs: i32,
    pub per_component: Vec<ComponentBound>,
    pub sub_method: SubMethod,
}

/// A treewidth evaluator: exact value or upper bound for a subgraph.
/// Substituting upper bounds keeps every reported bound a valid upper
/// bound on `tw(g)`.
pub type TwEval<'a> = dyn Fn(&Graph) -> Result<i32> + 'a;

/// Evaluator that solves exactly up to `threshold` vertices and falls
/// back to the min-degree greedy elimination width beyond it.
pub fn exact_or_greedy(threshold: usize) -> impl Fn(&Graph) -> Result<i32> {
    move |g: &Graph| {
        if g.vertex_count() <= threshold {
            exact_treewidth(g, threshold).map(|(w, _)| w)
        } else {
            Ok(greedy_elimination_width(g))
        }
    }
}

fn max_or_minus_one(values: impl Iterator<Item = i32>) -> i32 {
    values.max().unwrap_or(-1)
}

/// The separator-as-clique bound `|S| + max_i tw(G_i)`, with the max
/// over an empty component list taken as -1.
pub fn separator_as_clique_bound(g: &Graph, s: &VertexSet, tw_fn: &TwEval) -> Result<i32> {
    let (components, _) = attachment_sets(g, s)?;
    let mut max_tw = -1;
    for comp in &components {
        max_tw = max_tw.max(tw_fn(&g.induced_subgraph(comp)?)?);
    }
    Ok(s.len() as i32 + max_tw)
}

/// The separator-as-components bound
/// `max(tw(H_S), max_i(|S_i| + tw(G_i)))`, together with the clique and
/// corollary bounds computed from the same fill-in pass.
pub fn separator_as_components_bound(
    g: &Graph,
    s: &VertexSet,
    tw_fn: &TwEval,
    sub_method: SubMethod,
) -> Result<BoundReport> {
    let fill = fill_in(g, s)?;
    report_from_fill(g, &fill, tw_fn, sub_method)
}

/// Same as [`separator_as_components_bound`] when the fill-in is
/// already at hand.
pub fn report_from_fill(
    g: &Graph,
    fill: &FillInResult,
    tw_fn: &TwEval,
    sub_method: SubMethod,
) -> Result<BoundReport> {
    let tw_hs = tw_fn(&fill.augmented_separator_graph)?;
    let mut per_component = Vec::new();
    for (i, comp) in fill.components.iter().enumerate() {
        per_component.push(ComponentBound {
            index: i,
            attachment_size: fill.attachment_sets[i].len(),
            tw: tw_fn(&g.induced_subgraph(comp)?)?,
        });
    }
    let max_comp_tw = max_or_minus_one(per_component.iter().map(|c| c.tw));
    let components_bound = tw_hs.max(max_or_minus_one(
        per_component
            .iter()
            .map(|c| c.attachment_size as i32 + c.tw),
    ));
    Ok(BoundReport {
        clique_bound: fill.separator.len() as i32 + max_comp_tw,
        components_bound,
        corollary_bound: tw_hs + max_comp_tw + 1,
        tw_hs,
        per_component,
        sub_method,
    })
}

/// The corollary bound `tw(H_S) + tw(G - S) + 1`.
pub fn corollary_bound(g: &Graph, s: &VertexSet, tw_fn: &TwEval) -> Result<i32> {
    let fill = fill_in(g, s)?;
    let tw_hs = tw_fn(&fill.augmented_separator_graph)?;
    let mut max_tw = -1;
    for comp in &fill.components {
        max_tw = max_tw.max(tw_fn(&g.induced_subgraph(comp)?)?);
    }
    Ok(tw_hs + max_tw + 1)
}

/// The constructive step of the components bound: given a decomposition
/// `t_s` of `H_S` and one decomposition per component, builds a
/// decomposition of `H` (and hence of `G`) by adding `S_i` to every bag
/// of component i's decomposition and hanging it off a bag of `t_s`
/// containing `S_i`.
///
/// The result's width is exactly
/// `max(width(t_s), max_i(|S_i| + width(T_i)))`.
pub fn combine_decompositions(
    t_s: &TreeDecomposition,
    component_decomps: &[TreeDecomposition],
    fill: &FillInResult,
) -> Result<TreeDecomposition> {
    if component_decomps.len() != fill.components.len() {
        return Err(Error::Alignment {
            expected: fill.components.len(),
            actual: component_decomps.len(),
        });
    }
    let mut out = t_s.clone();
    // Component decompositions joined to t_s, or chained together when
    // t_s is empty (components share no vertices, so any tree works).
    let mut previous_root: Option<usize> = None;
    for (i, t_i) in component_decomps.iter().enumerate() {
        let s_i = &fill.attachment_sets[i];
        let anchor = if out.bags.is_empty() {
            None
        } else {
            Some(find_cluster_containing(&out, s_i)?)
        };
        let offset = out.bags.len();
        for bag in &t_i.bags {
            let mut enlarged = bag.clone();
            enlarged.extend(s_i.iter().copied());
            out.add_bag(enlarged);
        }
        for &(a, b) in &t_i.tree_edges {
            out.add_tree_edge(offset + a, offset + b);
        }
        if t_i.bags.is_empty() {
            continue;
        }
        match anchor {
            Some(x) => out.add_tree_edge(x, offset),
            None => {
                if let Some(prev) = previous_root {
                    out.add_tree_edge(prev, offset);
                }
                previous_root = Some(offset);
            }
        }
    }
    Ok(out)
}

/// Knobs for [`recursive_bound`].
#[derive(Debug, Clone)]
pub struct RecursionConfig {
    /// Graphs at or below this size are solved exactly.
    pub exact_threshold: usize,
    /// Cap on the number of separator candidates scored per level.
    pub budget: usize,
    /// Seed for the randomized parts of separator search.
    pub seed: u64,
}

impl Default for RecursionConfig {
    fn default() -> Self {
        RecursionConfig {
            exact_threshold: 12,
            budget: 50,
            seed: 0,
        }
    }
}

/// Upper-bounds the treewidth by recursive separator decomposition:
/// exact at or below the threshold, otherwise the best-scoring separator
/// is filled in, `H_S` and each component are solved recursively, and
/// the pieces are combined. Always returns a decomposition that is valid
/// for `g`; when no separator is found the trivial single-bag
/// decomposition is the fallback, so the call never fails on a valid
/// graph.
pub fn recursive_bound(g: &Graph, config: &RecursionConfig) -> Result<(i32, TreeDecomposition)> {
    if g.is_empty() {
        return Ok((-1, TreeDecomposition::empty()));
    }
    if g.vertex_count() <= config.exact_threshold.min(24) {
        return exact_treewidth(g, config.exact_threshold);
    }
    let candidates = match enumerate_candidates(g, config.budget, config.seed) {
        Ok(c) => c,
        Err(Error::NoSeparator) => {
            let td = TreeDecomposition::single_bag(g.vertex_set());
            return Ok((td.width(), td));
        }
        Err(e) => return Err(e),
    };
    let best = &candidates[0];
    let fill = fill_in(g, &best.separator)?;
    let (_, t_s) = recursive_bound(&fill.augmented_separator_graph, config)?;
    let mut component_decomps = Vec::new();
    for comp in &fill.components {
        let (_, t_i) = recursive_bound(&g.induced_subgraph(comp)?, config)?;
        component_decomps.push(t_i);
    }
    let td = combine_decompositions(&t_s, &component_decomps, &fill)?;
    Ok((td.width(), td))
}
