//! Tree decompositions: width, the three validity axioms, cluster lookup
//! for cliques, and `.td` file I/O.

use std::collections::{BTreeSet, VecDeque};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A tree of vertex-set bags. Bag indices are 0-based internally;
/// the `.td` format uses 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: BTreeSet<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>) -> Self {
        TreeDecomposition {
            bags,
            tree_edges: BTreeSet::new(),
        }
    }

    /// The empty decomposition; valid only for the empty graph.
    pub fn empty() -> Self {
        TreeDecomposition::default()
    }

    pub fn single_bag(bag: VertexSet) -> Self {
        TreeDecomposition::new(vec![bag])
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn add_bag(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.bags.len() - 1
    }

    pub fn add_tree_edge(&mut self, a: usize, b: usize) {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.tree_edges.insert((a, b));
    }

    /// Largest bag size minus one; -1 for the empty decomposition.
    pub fn width(&self) -> i32 {
        self.bags
            .iter()
            .map(|b| b.len() as i32 - 1)
            .max()
            .unwrap_or(-1)
    }

    fn neighbors_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.tree_edges.iter().filter_map(move |&(a, b)| {
            if a == i {
                Some(b)
            } else if b == i {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Connected and acyclic over the bag indices; vacuously true when empty.
    pub fn is_tree(&self) -> bool {
        let n = self.bags.len();
        if n == 0 {
            return self.tree_edges.is_empty();
        }
        if self.tree_edges.len() != n - 1 {
            return false;
        }
        if self.tree_edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for j in self.neighbors_of(i) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Tree shape broken: wrong edge count, out-of-range index, or disconnected.
    NotATree(String),
    /// Condition (1): vertex appears in no bag.
    UncoveredVertex(u32),
    /// Condition (2): edge covered by no bag.
    UncoveredEdge(u32, u32),
    /// Condition (3): the bags containing this vertex are disconnected in the tree.
    DisconnectedOccurrences(u32),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotATree(msg) => write!(f, "not a tree: {msg}"),
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} appears in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge ({u},{v}) covered by no bag"),
            Violation::DisconnectedOccurrences(v) => {
                write!(f, "bags containing vertex {v} are disconnected in the tree")
            }
        }
    }
}

/// Outcome of checking the three tree-decomposition axioms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationVerdict {
    pub violations: Vec<Violation>,
}

impl ValidationVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks tree shape plus conditions (1)-(3) of `t` against `g`.
/// Violations are reported as data with witnesses, never as errors.
pub fn validate(t: &TreeDecomposition, g: &Graph) -> ValidationVerdict {
    let mut verdict = ValidationVerdict::default();
    let n = t.bags.len();

    if n == 0 {
        for v in g.vertices() {
            verdict.violations.push(Violation::UncoveredVertex(v));
        }
        return verdict;
    }

    if let Some(&(a, b)) = t
        .tree_edges
        .iter()
        .find(|&&(a, b)| a >= n || b >= n || a == b)
    {
        verdict
            .violations
            .push(Violation::NotATree(format!("bad tree edge ({a},{b})")));
        return verdict;
    }
    if !t.is_tree() {
        verdict.violations.push(Violation::NotATree(format!(
            "{} bags need {} edges forming a connected acyclic graph, got {}",
            n,
            n - 1,
            t.tree_edges.len()
        )));
    }

    for v in g.vertices() {
        if !t.bags.iter().any(|b| b.contains(&v)) {
            verdict.violations.push(Violation::UncoveredVertex(v));
        }
    }

    for (u, v) in g.edges() {
        if !t.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            verdict.violations.push(Violation::UncoveredEdge(u, v));
        }
    }

    // Condition (3), checked per vertex by BFS restricted to its bags.
    for v in g.vertices() {
        let occ: Vec<usize> = (0..n).filter(|&i| t.bags[i].contains(&v)).collect();
        if occ.len() <= 1 {
            continue;
        }
        let mut seen: BTreeSet<usize> = BTreeSet::from([occ[0]]);
        let mut queue = VecDeque::from([occ[0]]);
        while let Some(i) = queue.pop_front() {
            for j in t.neighbors_of(i) {
                if t.bags[j].contains(&v) && seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        if occ.iter().any(|i| !seen.contains(i)) {
            verdict.violations.push(Violation::DisconnectedOccurrences(v));
        }
    }

    verdict
}

/// Smallest bag index whose bag contains `c`. For a valid decomposition
/// of a graph in which `c` is a clique, such a bag always exists.
pub fn find_cluster_containing(t: &TreeDecomposition, c: &VertexSet) -> Result<usize> {
    t.bags
        .iter()
        .position(|b| c.is_subset(b))
        .ok_or(Error::NotFound)
}

/// Parses the PACE-style `.td` format: `c` comments, header
/// `s td <num_bags> <max_bag_size> <n>`, bag lines `b <id> <v...>`,
/// then 1-based `<id> <id>` tree-edge lines.
pub fn parse_td<R: BufRead>(reader: R) -> Result<TreeDecomposition> {
    let mut td: Option<TreeDecomposition> = None;
    let mut declared_bags = 0usize;
    let mut seen_bags = vec![];
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
        if line.starts_with('s') {
            if td.is_some() {
                return Err(Error::format(lineno, "duplicate header"));
            }
            if tokens.len() != 5 || tokens[1] != "td" {
                return Err(Error::format(
                    lineno,
                    "expected header `s td <num_bags> <max_bag_size> <n>`",
                ));
            }
            declared_bags = tokens[2]
                .parse()
                .map_err(|_| Error::format(lineno, "bad bag count"))?;
            td = Some(TreeDecomposition::new(vec![VertexSet::new(); declared_bags]));
            seen_bags = vec![false; declared_bags];
            continue;
        }
        let t = td
            .as_mut()
            .ok_or_else(|| Error::format(lineno, "content before header"))?;
        let parse_id = |tok: &str| -> Result<usize> {
            let id: usize = tok
                .parse()
                .map_err(|_| Error::format(lineno, "bad bag id"))?;
            if id < 1 || id > declared_bags {
                return Err(Error::format(lineno, format!("bag id {id} out of range")));
            }
            Ok(id - 1)
        };
        if line.starts_with('b') {
            if tokens.len() < 2 {
                return Err(Error::format(lineno, "expected `b <id> <v...>`"));
            }
            let id = parse_id(tokens[1])?;
            if seen_bags[id] {
                return Err(Error::format(lineno, format!("duplicate bag {}", id + 1)));
            }
            seen_bags[id] = true;
            for tok in &tokens[2..] {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::format(lineno, "bad vertex"))?;
                t.bags[id].insert(v);
            }
        } else {
            if tokens.len() != 2 {
                return Err(Error::format(lineno, "expected tree edge `<id> <id>`"));
            }
            let (a, b) = (parse_id(tokens[0])?, parse_id(tokens[1])?);
            t.add_tree_edge(a, b);
        }
    }
    let t = td.ok_or_else(|| Error::format(0, "missing `s td` header"))?;
    if let Some(missing) = seen_bags.iter().position(|&s| !s) {
        return Err(Error::format(
            0,
            format!(
                "header declares {} bags but bag {} has no `b` line",
                declared_bags,
                missing + 1
            ),
        ));
    }
    Ok(t)
}

pub fn write_td<W: Write>(t: &TreeDecomposition, mut out: W) -> std::io::Result<()> {
    let max_bag = t.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let n = t
        .bags
        .iter()
        .flat_map(|b| b.iter().copied())
        .max()
        .unwrap_or(0);
    writeln!(out, "s td {} {} {}", t.bags.len(), max_bag, n)?;
    for (i, bag) in t.bags.iter().enumerate() {
        write!(out, "b {}", i + 1)?;
        for v in bag {
            write!(out, " {v}")?;
        }
        writeln!(out)?;
    }
    for &(a, b) in &t.tree_edges {
        writeln!(out, "{} {}", a + 1, b + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, fig1_decomposition};
    use crate::graph::Vertex;

    fn vs(items: &[Vertex]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn width_of_clique_decomposition() {
        assert_eq!(fig1_decomposition().width(), 2);
    }

    #[test]
    fn width_trivial_cases() {
        assert_eq!(TreeDecomposition::single_bag(vs(&[1])).width(), 0);
        assert_eq!(
            TreeDecomposition::single_bag(fig1().vertex_set()).width(),
            9
        );
        assert_eq!(TreeDecomposition::empty().width(), -1);
    }

    #[test]
    fn validate_clique_decomposition() {
        assert!(validate(&fig1_decomposition(), &fig1()).is_valid());
    }

    #[test]
    fn validate_single_bag_is_always_valid() {
        let g = fig1();
        let t = TreeDecomposition::single_bag(g.vertex_set());
        assert!(validate(&t, &g).is_valid());
    }

    #[test]
    fn validate_reports_uncovered_vertex() {
        let g = fig1();
        let mut t = fig1_decomposition();
        for bag in &mut t.bags {
            bag.remove(&7);
        }
        let verdict = validate(&t, &g);
        assert!(verdict.violations.contains(&Violation::UncoveredVertex(7)));
        assert!(verdict.violations.contains(&Violation::UncoveredEdge(5, 7)));
    }

    #[test]
    fn validate_reports_disconnected_occurrences() {
        // Path of three bags where vertex 1 sits in the two end bags only.
        let mut t = TreeDecomposition::new(vec![vs(&[1, 2]), vs(&[2, 3]), vs(&[1, 3])]);
        t.add_tree_edge(0, 1);
        t.add_tree_edge(1, 2);
        let g = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let verdict = validate(&t, &g);
        assert!(verdict
            .violations
            .contains(&Violation::DisconnectedOccurrences(1)));
    }

    #[test]
    fn validate_reports_broken_tree() {
        let t = TreeDecomposition::new(vec![vs(&[1]), vs(&[1])]);
        let g = Graph::with_vertices(1);
        let verdict = validate(&t, &g);
        assert!(matches!(verdict.violations[0], Violation::NotATree(_)));
    }

    #[test]
    fn enlarging_bags_keeps_conditions_one_and_two() {
        // Conditions (1) and (2) are monotone under bag enlargement.
        let g = fig1();
        let mut t = fig1_decomposition();
        for bag in &mut t.bags {
            bag.insert(1);
            bag.insert(9);
        }
        let verdict = validate(&t, &g);
        assert!(!verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::UncoveredVertex(_) | Violation::UncoveredEdge(..))));
    }

    #[test]
    fn find_cluster_smallest_index_wins() {
        let t = fig1_decomposition();
        // Both C2 and C3 contain {3,4}; the smaller index is returned.
        assert_eq!(find_cluster_containing(&t, &vs(&[3, 4])).unwrap(), 1);
        assert_eq!(find_cluster_containing(&t, &VertexSet::new()).unwrap(), 0);
        assert_eq!(
            find_cluster_containing(&t, &vs(&[1, 9])),
            Err(Error::NotFound)
        );
    }

    #[test]
    fn parse_single_bag() {
        let t = parse_td("s td 1 3 3\nb 1 1 2 3\n".as_bytes()).unwrap();
        assert_eq!(t.bags, vec![vs(&[1, 2, 3])]);
        assert!(t.tree_edges.is_empty());
    }

    #[test]
    fn parse_rejects_missing_bag_line() {
        assert!(matches!(
            parse_td("s td 2 3 3\nb 1 1 2 3\n".as_bytes()),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn td_roundtrip() {
        let t = fig1_decomposition();
        let mut buf = Vec::new();
        write_td(&t, &mut buf).unwrap();
        assert_eq!(parse_td(buf.as_slice()).unwrap(), t);
    }
}
