//! Separator candidate generation and scoring. Candidates are scored by
//! the separator-as-components bound, so the search prefers separators
//! with few connections to each component over merely small ones.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{separator_as_components_bound, SubMethod};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Where a candidate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    VertexCut,
    BfsLevel,
    Neighborhood,
    User,
}

impl std::fmt::Display for CandidateSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CandidateSource::VertexCut => write!(f, "vertex-cut"),
            CandidateSource::BfsLevel => write!(f, "bfs-level"),
            CandidateSource::Neighborhood => write!(f, "neighborhood"),
            CandidateSource::User => write!(f, "user"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorCandidate {
    pub separator: VertexSet,
    pub score: i32,
    pub source: CandidateSource,
}

/// Vertex count above which exact treewidth is replaced by the greedy
/// elimination width when scoring candidate pieces.
pub const CHEAP_EXACT_THRESHOLD: usize = 8;

/// The components bound for `(g, s)` under a cheap evaluator; this IS
/// the candidate score.
pub fn score(g: &Graph, s: &VertexSet, cheap_tw: &crate::bounds::TwEval) -> Result<i32> {
    Ok(separator_as_components_bound(g, s, cheap_tw, SubMethod::Bounded)?.components_bound)
}

fn default_score(g: &Graph, s: &VertexSet) -> Result<i32> {
    let eval = crate::bounds::exact_or_greedy(CHEAP_EXACT_THRESHOLD);
    score(g, s, &eval)
}

/// Minimum a-b vertex cut by max-flow on the node-split graph: each
/// vertex becomes an in/out pair with unit capacity, original edges get
/// effectively infinite capacity. Augmenting paths are found by BFS with
/// neighbors visited in ascending label order, so the result is
/// deterministic.
pub fn min_vertex_cut(g: &Graph, a: Vertex, b: Vertex) -> Result<VertexSet> {
    if !g.has_vertex(a) {
        return Err(Error::Membership(a));
    }
    if !g.has_vertex(b) {
        return Err(Error::Membership(b));
    }
    if g.has_edge(a, b) || a == b {
        return Err(Error::AdjacentPair(a, b));
    }

    let labels: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = labels.len();
    let inf = (n + 1) as i64;
    // Node 2i = v_in, 2i+1 = v_out.
    let node_in = |i: usize| 2 * i;
    let node_out = |i: usize| 2 * i + 1;

    // cap[(u,v)] - flow as residual capacity, adjusted in place.
    let mut cap: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); 2 * n];
    let arc = |from: usize, to: usize, c: i64, cap: &mut BTreeMap<(usize, usize), i64>,
                   adj: &mut Vec<BTreeSet<usize>>| {
        *cap.entry((from, to)).or_insert(0) += c;
        cap.entry((to, from)).or_insert(0);
        adj[from].insert(to);
        adj[to].insert(from);
    };
    for (i, &v) in labels.iter().enumerate() {
        let c = if v == a || v == b { inf } else { 1 };
        arc(node_in(i), node_out(i), c, &mut cap, &mut adj);
    }
    for (u, v) in g.edges() {
        let (i, j) = (index[&u], index[&v]);
        arc(node_out(i), node_in(j), inf, &mut cap, &mut adj);
        arc(node_out(j), node_in(i), inf, &mut cap, &mut adj);
    }

    let source = node_out(index[&a]);
    let sink = node_in(index[&b]);
    loop {
        // BFS for an augmenting path.
        let mut parent: Vec<Option<usize>> = vec![None; 2 * n];
        parent[source] = Some(source);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if parent[w].is_none() && cap[&(u, w)] > 0 {
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if parent[sink].is_none() {
            break;
        }
        let mut bottleneck = i64::MAX;
        let mut w = sink;
        while w != source {
            let u = parent[w].unwrap();
            bottleneck = bottleneck.min(cap[&(u, w)]);
            w = u;
        }
        let mut w = sink;
        while w != source {
            let u = parent[w].unwrap();
            *cap.get_mut(&(u, w)).unwrap() -= bottleneck;
            *cap.get_mut(&(w, u)).unwrap() += bottleneck;
            w = u;
        }
    }

    // Cut vertices: v_in reachable from the source in the residual
    // graph, v_out not.
    let mut reach = vec![false; 2 * n];
    reach[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !reach[w] && cap[&(u, w)] > 0 {
                reach[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(labels
        .iter()
        .enumerate()
        .filter(|(i, _)| reach[node_in(*i)] && !reach[node_out(*i)])
        .map(|(_, &v)| v)
        .collect())
}

fn separates(g: &Graph, s: &VertexSet) -> bool {
    g.remove_vertices(s)
        .map(|rest| rest.connected_components().len() >= 2)
        .unwrap_or(false)
}

/// Deduplicated separator candidates from min vertex cuts, BFS level
/// sets and vertex neighborhoods, each verified to disconnect `g`,
/// scored by the components bound and returned ordered by
/// (score, separator), capped at `budget`.
pub fn enumerate_candidates(
    g: &Graph,
    budget: usize,
    seed: u64,
) -> Result<Vec<SeparatorCandidate>> {
    let budget = budget.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: BTreeMap<VertexSet, CandidateSource> = BTreeMap::new();
    let vertices: Vec<Vertex> = g.vertices().collect();
    let n = vertices.len();

    // Min vertex cuts over non-adjacent pairs: all pairs on small
    // graphs, a fixed-seed sample of 100 otherwise.
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if !g.has_edge(u, v) {
                pairs.push((u, v));
            }
        }
    }
    if n > 30 {
        pairs = pairs.into_iter().choose_multiple(&mut rng, 100);
    }
    for (u, v) in pairs {
        let cut = min_vertex_cut(g, u, v)?;
        if separates(g, &cut) {
            pool.entry(cut).or_insert(CandidateSource::VertexCut);
        }
    }

    // BFS level sets.
    let roots: Vec<Vertex> = if n > 30 {
        vertices.iter().copied().choose_multiple(&mut rng, 10)
    } else {
        vertices.clone()
    };
    for root in roots {
        let mut level: BTreeMap<Vertex, usize> = BTreeMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if !level.contains_key(&u) {
                    level.insert(u, level[&v] + 1);
                    queue.push_back(u);
                }
            }
        }
        let max_level = level.values().copied().max().unwrap_or(0);
        for l in 1..max_level {
            let set: VertexSet = level
                .iter()
                .filter(|(_, &d)| d == l)
                .map(|(&v, _)| v)
                .collect();
            if separates(g, &set) {
                pool.entry(set).or_insert(CandidateSource::BfsLevel);
            }
        }
    }

    // Open and closed neighborhoods.
    for &v in &vertices {
        let open: VertexSet = g.neighbors(v).collect();
        let mut closed = open.clone();
        closed.insert(v);
        for set in [open, closed] {
            if set.len() < n && separates(g, &set) {
                pool.entry(set).or_insert(CandidateSource::Neighborhood);
            }
        }
    }

    if pool.is_empty() {
        return Err(Error::NoSeparator);
    }

    let mut candidates: Vec<SeparatorCandidate> = pool
        .into_iter()
        .map(|(separator, source)| {
            let score = default_score(g, &separator)?;
            Ok(SeparatorCandidate {
                separator,
                score,
                source,
            })
        })
        .collect::<Result<_>>()?;
    candidates.sort_by(|a, b| (a.score, &a.separator).cmp(&(b.score, &b.separator)));
    candidates.truncate(budget);
    Ok(candidates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete, fig1, path, star};

    fn vs(items: &[Vertex]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn min_cut_on_worked_example() {
        let g = fig1();
        assert_eq!(min_vertex_cut(&g, 1, 6).unwrap(), vs(&[3]));
    }

    #[test]
    fn min_cut_on_path() {
        let g = path(3);
        assert_eq!(min_vertex_cut(&g, 1, 3).unwrap(), vs(&[2]));
    }

    #[test]
    fn min_cut_three_disjoint_paths() {
        // 1 and 5 joined by three internally disjoint length-2 paths.
        let g =
            Graph::from_edges(5, &[(1, 2), (2, 5), (1, 3), (3, 5), (1, 4), (4, 5)]).unwrap();
        assert_eq!(min_vertex_cut(&g, 1, 5).unwrap(), vs(&[2, 3, 4]));
    }

    #[test]
    fn min_cut_rejects_adjacent_pair() {
        let g = path(3);
        assert_eq!(min_vertex_cut(&g, 1, 2), Err(Error::AdjacentPair(1, 2)));
    }

    #[test]
    fn min_cut_disconnected_pair_is_empty() {
        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(min_vertex_cut(&g, 1, 3).unwrap(), VertexSet::new());
    }

    #[test]
    fn candidates_include_both_worked_separators() {
        let cands = enumerate_candidates(&fig1(), 50, 0).unwrap();
        let seps: Vec<&VertexSet> = cands.iter().map(|c| &c.separator).collect();
        assert!(seps.contains(&&vs(&[3, 5, 8])));
        assert!(seps.contains(&&vs(&[3, 4, 5, 8])));
        for c in &cands {
            assert!(separates(&fig1(), &c.separator));
        }
    }

    #[test]
    fn clique_has_no_separator() {
        assert_eq!(enumerate_candidates(&complete(5), 50, 0), Err(Error::NoSeparator));
    }

    #[test]
    fn star_center_is_a_candidate() {
        let cands = enumerate_candidates(&star(4), 50, 0).unwrap();
        assert!(cands.iter().any(|c| c.separator == vs(&[1])));
    }

    #[test]
    fn scores_match_worked_example() {
        let g = fig1();
        let eval = crate::bounds::exact_or_greedy(15);
        assert_eq!(score(&g, &vs(&[3, 4, 5, 8]), &eval).unwrap(), 2);
        assert_eq!(score(&g, &vs(&[3, 5, 8]), &eval).unwrap(), 3);
    }

    #[test]
    fn larger_separator_wins_on_worked_example() {
        let cands = enumerate_candidates(&fig1(), 50, 0).unwrap();
        assert_eq!(cands[0].score, 2);
        let small = cands
            .iter()
            .find(|c| c.separator == vs(&[3, 5, 8]))
            .expect("small separator in pool");
        assert_eq!(small.score, 3);
    }
}
