//! Binary CSP solving over a constraint graph: plain chronological
//! backtracking versus separator caching, where each component's
//! consistent extensions are recorded per tuple over its attachment set
//! and the search continues on the reduced problem over the separator.
//! Operation counters make the time/space tradeoff measurable.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use crate::bounds::fill_in;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::separator::enumerate_candidates;

/// Explicit d x d allowed-pair table for one edge `(u, v)` with `u < v`;
/// rows are values of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintTable {
    d: usize,
    allowed: Vec<bool>,
}

impl ConstraintTable {
    pub fn new(d: usize, allowed: Vec<bool>) -> Result<Self> {
        if d == 0 || allowed.len() != d * d {
            return Err(Error::InvalidInstance(format!(
                "table must have {0}x{0} entries",
                d
            )));
        }
        Ok(ConstraintTable { d, allowed })
    }

    /// The inequality constraint: allows every pair of distinct values.
    pub fn not_equal(d: usize) -> Self {
        let allowed = (0..d * d).map(|i| i / d != i % d).collect();
        ConstraintTable { d, allowed }
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.allowed[a * self.d + b]
    }
}

/// Variables are the graph's vertices, constraint scopes its edges; all
/// variables share one domain `0..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    graph: Graph,
    domain_size: usize,
    constraints: BTreeMap<(Vertex, Vertex), ConstraintTable>,
}

impl CspInstance {
    pub fn new(
        graph: Graph,
        domain_size: usize,
        constraints: BTreeMap<(Vertex, Vertex), ConstraintTable>,
    ) -> Result<Self> {
        if domain_size == 0 {
            return Err(Error::InvalidInstance("domain size must be positive".into()));
        }
        for (&(u, v), table) in &constraints {
            if u >= v {
                return Err(Error::InvalidInstance(format!(
                    "constraint key ({u},{v}) must satisfy u < v"
                )));
            }
            if !graph.has_edge(u, v) {
                return Err(Error::InvalidInstance(format!(
                    "constraint on non-edge ({u},{v})"
                )));
            }
            if table.d != domain_size {
                return Err(Error::InvalidInstance(format!(
                    "table for ({u},{v}) has domain {} instead of {domain_size}",
                    table.d
                )));
            }
        }
        for (u, v) in graph.edges() {
            if !constraints.contains_key(&(u, v)) {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) has no constraint table"
                )));
            }
        }
        Ok(CspInstance {
            graph,
            domain_size,
            constraints,
        })
    }

    /// Inequality on every edge.
    pub fn all_diff(graph: Graph, domain_size: usize) -> Result<Self> {
        let constraints = graph
            .edges()
            .map(|e| (e, ConstraintTable::not_equal(domain_size)))
            .collect();
        CspInstance::new(graph, domain_size, constraints)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Checks a full assignment against every constraint table.
    pub fn verify_witness(&self, assignment: &BTreeMap<Vertex, usize>) -> bool {
        self.graph.vertices().all(|v| {
            assignment
                .get(&v)
                .is_some_and(|&val| val < self.domain_size)
        }) && self
            .constraints
            .iter()
            .all(|(&(u, v), t)| t.allows(assignment[&u], assignment[&v]))
    }
}

/// Counters and outcome of one solve.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolveStats {
    /// Value-assignment events, including ones rejected by a constraint.
    pub node_expansions: u64,
    /// Peak number of simultaneously stored separator tuples.
    pub cache_entries: u64,
    /// Checks answered from a component cache.
    pub cache_lookups: u64,
    pub satisfiable: bool,
    pub witness: Option<BTreeMap<Vertex, usize>>,
}

impl SolveStats {
    pub fn operations(&self) -> u64 {
        self.node_expansions + self.cache_lookups
    }
}

/// Below or at this separator size the reduced problem is solved by
/// plain backtracking even when recursion is requested.
pub const SEPARATOR_BASE_THRESHOLD: usize = 2;

#[derive(Default)]
struct Counters {
    node_expansions: u64,
    cache_lookups: u64,
    cache_current: u64,
    cache_peak: u64,
}

impl Counters {
    fn store(&mut self, entries: u64) {
        self.cache_current += entries;
        self.cache_peak = self.cache_peak.max(self.cache_current);
    }

    fn release(&mut self, entries: u64) {
        self.cache_current -= entries;
    }
}

/// A constraint over an arbitrary sorted scope, as an allowed-tuple set.
/// Original binary tables and derived component caches share this shape;
/// checks against the latter count as cache lookups.
#[derive(Debug, Clone)]
struct NaryConstraint {
    scope: Vec<Vertex>,
    allowed: BTreeSet<Vec<usize>>,
    from_cache: bool,
}

impl NaryConstraint {
    fn from_table(u: Vertex, v: Vertex, table: &ConstraintTable) -> Self {
        let mut allowed = BTreeSet::new();
        for a in 0..table.d {
            for b in 0..table.d {
                if table.allows(a, b) {
                    allowed.insert(vec![a, b]);
                }
            }
        }
        NaryConstraint {
            scope: vec![u, v],
            allowed,
            from_cache: false,
        }
    }

    fn check(&self, values: &BTreeMap<Vertex, usize>, counters: &mut Counters) -> bool {
        if self.from_cache {
            counters.cache_lookups += 1;
        }
        let tuple: Vec<usize> = self.scope.iter().map(|v| values[v]).collect();
        self.allowed.contains(&tuple)
    }
}

/// A CSP over an explicit variable set with n-ary table constraints;
/// `graph` is the primal graph (scopes are cliques in it).
#[derive(Debug, Clone)]
struct SubCsp {
    vars: Vec<Vertex>,
    d: usize,
    graph: Graph,
    constraints: Vec<NaryConstraint>,
}

impl SubCsp {
    fn from_instance(inst: &CspInstance) -> Self {
        SubCsp {
            vars: inst.graph.vertices().collect(),
            d: inst.domain_size,
            graph: inst.graph.clone(),
            constraints: inst
                .constraints
                .iter()
                .map(|(&(u, v), t)| NaryConstraint::from_table(u, v, t))
                .collect(),
        }
    }
}

/// Chronological backtracking over `order` with some variables fixed.
/// Each constraint is checked as soon as the last variable of its scope
/// is assigned; every value tried counts as one node expansion.
fn backtrack(
    order: &[Vertex],
    d: usize,
    fixed: &BTreeMap<Vertex, usize>,
    constraints: &[NaryConstraint],
    counters: &mut Counters,
) -> Option<BTreeMap<Vertex, usize>> {
    // Attach each constraint to the position where its scope completes.
    let position: BTreeMap<Vertex, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut at_position: Vec<Vec<&NaryConstraint>> = vec![Vec::new(); order.len()];
    let mut assignment = fixed.clone();
    for c in constraints {
        debug_assert!(c
            .scope
            .iter()
            .all(|v| position.contains_key(v) || fixed.contains_key(v)));
        match c.scope.iter().filter_map(|v| position.get(v)).max() {
            Some(&last) => at_position[last].push(c),
            // Scope entirely fixed: check once up front.
            None => {
                if !c.check(&assignment, counters) {
                    return None;
                }
            }
        }
    }

    fn descend(
        order: &[Vertex],
        d: usize,
        at_position: &[Vec<&NaryConstraint>],
        assignment: &mut BTreeMap<Vertex, usize>,
        pos: usize,
        counters: &mut Counters,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let var = order[pos];
        for value in 0..d {
            counters.node_expansions += 1;
            assignment.insert(var, value);
            if at_position[pos].iter().all(|c| c.check(assignment, counters))
                && descend(order, d, at_position, assignment, pos + 1, counters)
            {
                return true;
            }
        }
        assignment.remove(&var);
        false
    }

    if descend(order, d, &at_position, &mut assignment, 0, counters) {
        for v in fixed.keys() {
            assignment.remove(v);
        }
        Some(assignment)
    } else {
        None
    }
}

/// Plain chronological backtracking over `var_order`, counting every
/// value tried. Complete: `satisfiable` is exact.
pub fn solve_backtrack(inst: &CspInstance, var_order: &[Vertex]) -> Result<SolveStats> {
    let order_set: VertexSet = var_order.iter().copied().collect();
    if order_set.len() != var_order.len() || order_set != inst.graph.vertex_set() {
        return Err(Error::Permutation);
    }
    let sub = SubCsp::from_instance(inst);
    let mut counters = Counters::default();
    let witness = backtrack(var_order, sub.d, &BTreeMap::new(), &sub.constraints, &mut counters);
    Ok(SolveStats {
        node_expansions: counters.node_expansions,
        cache_entries: 0,
        cache_lookups: 0,
        satisfiable: witness.is_some(),
        witness,
    })
}

fn sorted_vec(s: &VertexSet) -> Vec<Vertex> {
    s.iter().copied().collect()
}

fn tuples(d: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = d.checked_pow(len as u32).expect("tuple space overflow");
    (0..total).map(move |mut i| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = i % d;
            i /= d;
        }
        t
    })
}

/// Separator for the reduced problem during recursive solving: best
/// components-bound score over enumerated candidates plus all single
/// vertices (which may leave one component), proper subsets only.
fn choose_inner_separator(h: &Graph) -> Result<VertexSet> {
    let n = h.vertex_count();
    let cheap = crate::bounds::exact_or_greedy(crate::separator::CHEAP_EXACT_THRESHOLD);
    let mut pool: BTreeSet<VertexSet> = h.vertices().map(|v| VertexSet::from([v])).collect();
    if let Ok(cands) = enumerate_candidates(h, 20, 0) {
        for c in cands {
            if c.separator.len() < n {
                pool.insert(c.separator);
            }
        }
    }
    let mut best: Option<(i32, VertexSet)> = None;
    for s in pool {
        let sc = crate::separator::score(h, &s, &cheap)?;
        if best.as_ref().is_none_or(|(b, bs)| (sc, &s) < (*b, bs)) {
            best = Some((sc, s));
        }
    }
    best.map(|(_, s)| s).ok_or(Error::NoSeparator)
}

fn solve_sub(
    sub: &SubCsp,
    sep: &VertexSet,
    recurse: bool,
    counters: &mut Counters,
) -> Result<Option<BTreeMap<Vertex, usize>>> {
    let fill = fill_in(&sub.graph, sep)?;

    let mut reduced_constraints: Vec<NaryConstraint> = sub
        .constraints
        .iter()
        .filter(|c| c.scope.iter().all(|v| sep.contains(v)))
        .cloned()
        .collect();

    // One cache per component: which tuples over its attachment set
    // admit a consistent extension into the component.
    let mut level_entries = 0u64;
    let mut component_relevant: Vec<Vec<NaryConstraint>> = Vec::new();
    for (i, comp) in fill.components.iter().enumerate() {
        let attachment = sorted_vec(&fill.attachment_sets[i]);
        let comp_order = sorted_vec(comp);
        let relevant: Vec<NaryConstraint> = sub
            .constraints
            .iter()
            .filter(|c| c.scope.iter().any(|v| comp.contains(v)))
            .cloned()
            .collect();
        let mut allowed = BTreeSet::new();
        for tuple in tuples(sub.d, attachment.len()) {
            counters.store(1);
            level_entries += 1;
            let fixed: BTreeMap<Vertex, usize> =
                attachment.iter().copied().zip(tuple.iter().copied()).collect();
            if backtrack(&comp_order, sub.d, &fixed, &relevant, counters).is_some() {
                allowed.insert(tuple);
            }
        }
        reduced_constraints.push(NaryConstraint {
            scope: attachment,
            allowed,
            from_cache: true,
        });
        component_relevant.push(relevant);
    }

    let reduced = SubCsp {
        vars: sorted_vec(sep),
        d: sub.d,
        graph: fill.augmented_separator_graph.clone(),
        constraints: reduced_constraints,
    };

    let sep_assignment = if !recurse || reduced.vars.len() <= SEPARATOR_BASE_THRESHOLD {
        backtrack(
            &reduced.vars,
            reduced.d,
            &BTreeMap::new(),
            &reduced.constraints,
            counters,
        )
    } else {
        let inner = choose_inner_separator(&reduced.graph)?;
        solve_sub(&reduced, &inner, true, counters)?
    };

    let result = match sep_assignment {
        None => None,
        Some(mut witness) => {
            // Components are re-solved under the chosen separator tuple
            // rather than caching full extensions.
            for (i, comp) in fill.components.iter().enumerate() {
                let attachment = sorted_vec(&fill.attachment_sets[i]);
                let fixed: BTreeMap<Vertex, usize> =
                    attachment.iter().map(|v| (*v, witness[v])).collect();
                let comp_order = sorted_vec(comp);
                let extension = backtrack(
                    &comp_order,
                    sub.d,
                    &fixed,
                    &component_relevant[i],
                    counters,
                )
                .expect("cached tuple admits an extension");
                witness.extend(extension);
            }
            Some(witness)
        }
    };
    counters.release(level_entries);
    Ok(result)
}

/// Solves by separator caching: per-component feasibility caches keyed
/// by attachment-set tuples, then the reduced problem over the separator
/// (plain backtracking, or the same scheme recursively while the
/// separator is larger than [`SEPARATOR_BASE_THRESHOLD`]). Agrees with
/// [`solve_backtrack`] on satisfiability.
pub fn solve_with_separator(
    inst: &CspInstance,
    s: &VertexSet,
    recurse: bool,
) -> Result<SolveStats> {
    for &v in s {
        if !inst.graph.has_vertex(v) {
            return Err(Error::Membership(v));
        }
    }
    let sub = SubCsp::from_instance(inst);
    let mut counters = Counters::default();
    let witness = solve_sub(&sub, s, recurse, &mut counters)?;
    debug_assert!(witness.as_ref().is_none_or(|w| inst.verify_witness(w)));
    Ok(SolveStats {
        node_expansions: counters.node_expansions,
        cache_entries: counters.cache_peak,
        cache_lookups: counters.cache_lookups,
        satisfiable: witness.is_some(),
        witness,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::DegenerateData("need at least 3 points".into()));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::DegenerateData("counts must be positive".into()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateData("x values must be distinct".into()));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    Ok(sxy / sxx)
}

/// Growth exponent of a solver's operation count in the domain size:
/// runs `solver` at each `d` and fits the log-log slope of
/// `node_expansions + cache_lookups` against `d`.
pub fn fit_growth_exponent<F>(mut solver: F, d_values: &[usize]) -> Result<f64>
where
    F: FnMut(usize) -> Result<SolveStats>,
{
    let distinct: BTreeSet<usize> = d_values.iter().copied().collect();
    if distinct.len() < 3 {
        return Err(Error::DegenerateData("need at least 3 distinct d values".into()));
    }
    let mut points = Vec::new();
    for &d in d_values {
        let stats = solver(d)?;
        if stats.operations() == 0 {
            return Err(Error::DegenerateData(format!("zero operation count at d={d}")));
        }
        points.push((d as f64, stats.operations() as f64));
    }
    fit_loglog_slope(&points)
}

/// Parses the CSP constraints format against an already-parsed graph:
/// `c` comments, one `d <domain_size>` line, then either a single
/// `alldiff` line or one `t <u> <v> <d*d bits row-major>` line per edge
/// (bits may be split across whitespace).
pub fn parse_constraints<R: BufRead>(reader: R, graph: &Graph) -> Result<CspInstance> {
    let mut domain: Option<usize> = None;
    let mut alldiff = false;
    let mut tables: BTreeMap<(Vertex, Vertex), ConstraintTable> = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::format(lineno, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
        match tokens[0] {
            "d" => {
                if domain.is_some() || tokens.len() != 2 {
                    return Err(Error::format(lineno, "expected one `d <domain_size>` line"));
                }
                let d: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::format(lineno, "bad domain size"))?;
                if d == 0 {
                    return Err(Error::format(lineno, "domain size must be positive"));
                }
                domain = Some(d);
            }
            "alldiff" => {
                alldiff = true;
            }
            "t" => {
                let d =
                    domain.ok_or_else(|| Error::format(lineno, "`t` line before `d` line"))?;
                if tokens.len() < 3 {
                    return Err(Error::format(lineno, "expected `t <u> <v> <bits>`"));
                }
                let u: Vertex = tokens[1]
                    .parse()
                    .map_err(|_| Error::format(lineno, "bad vertex"))?;
                let v: Vertex = tokens[2]
                    .parse()
                    .map_err(|_| Error::format(lineno, "bad vertex"))?;
                let bits: String = tokens[3..].concat();
                if bits.len() != d * d || !bits.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::format(
                        lineno,
                        format!("expected {} bits of 0/1", d * d),
                    ));
                }
                let (u, v, flip) = if u < v { (u, v, false) } else { (v, u, true) };
                let mut allowed = vec![false; d * d];
                for (i, ch) in bits.chars().enumerate() {
                    let (a, b) = (i / d, i % d);
                    let slot = if flip { b * d + a } else { a * d + b };
                    allowed[slot] = ch == '1';
                }
                tables.insert((u, v), ConstraintTable::new(d, allowed)?);
            }
            other => {
                return Err(Error::format(lineno, format!("unknown directive `{other}`")));
            }
        }
    }
    let d = domain.ok_or_else(|| Error::format(0, "missing `d <domain_size>` line"))?;
    if alldiff {
        if !tables.is_empty() {
            return Err(Error::format(0, "`alldiff` cannot be mixed with `t` lines"));
        }
        return CspInstance::all_diff(graph.clone(), d);
    }
    CspInstance::new(graph.clone(), d, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig1;

    fn vs(items: &[Vertex]) -> VertexSet {
        items.iter().copied().collect()
    }

    fn ascending(inst: &CspInstance) -> Vec<Vertex> {
        inst.graph().vertices().collect()
    }

    /// Independent satisfiability oracle: full enumeration.
    fn brute_force_satisfiable(inst: &CspInstance) -> bool {
        let vars: Vec<Vertex> = inst.graph().vertices().collect();
        let d = inst.domain_size();
        tuples(d, vars.len()).any(|t| {
            let asg: BTreeMap<Vertex, usize> = vars.iter().copied().zip(t).collect();
            inst.verify_witness(&asg)
        })
    }

    #[test]
    fn fig1_alldiff_d2_unsatisfiable() {
        let inst = CspInstance::all_diff(fig1(), 2).unwrap();
        assert!(!brute_force_satisfiable(&inst));
        let stats = solve_backtrack(&inst, &ascending(&inst)).unwrap();
        assert!(!stats.satisfiable);
        assert!(stats.witness.is_none());
        assert_eq!(stats.cache_entries, 0);
    }

    #[test]
    fn fig1_alldiff_d3_satisfiable() {
        let inst = CspInstance::all_diff(fig1(), 3).unwrap();
        assert!(brute_force_satisfiable(&inst));
        let stats = solve_backtrack(&inst, &ascending(&inst)).unwrap();
        assert!(stats.satisfiable);
        assert!(inst.verify_witness(stats.witness.as_ref().unwrap()));
    }

    #[test]
    fn single_variable_trivial_instance() {
        let inst = CspInstance::new(Graph::with_vertices(1), 1, BTreeMap::new()).unwrap();
        let stats = solve_backtrack(&inst, &[1]).unwrap();
        assert!(stats.satisfiable);
        assert_eq!(stats.node_expansions, 1);
    }

    #[test]
    fn solve_backtrack_rejects_bad_order() {
        let inst = CspInstance::all_diff(fig1(), 3).unwrap();
        assert_eq!(
            solve_backtrack(&inst, &[1, 2, 3]),
            Err(Error::Permutation)
        );
    }

    #[test]
    fn separator_solver_small_separator() {
        let inst = CspInstance::all_diff(fig1(), 3).unwrap();
        let stats = solve_with_separator(&inst, &vs(&[3, 5, 8]), false).unwrap();
        assert!(stats.satisfiable);
        assert!(inst.verify_witness(stats.witness.as_ref().unwrap()));
        // Caches: three 1-variable keys plus the {v4} component keyed by
        // all of {3,5,8}.
        assert_eq!(stats.cache_entries, 3 * 3 + 27);
    }

    #[test]
    fn separator_solver_recursive_linear_cache() {
        let inst = CspInstance::all_diff(fig1(), 3).unwrap();
        let stats = solve_with_separator(&inst, &vs(&[3, 4, 5, 8]), true).unwrap();
        assert!(stats.satisfiable);
        assert!(inst.verify_witness(stats.witness.as_ref().unwrap()));
        // Every cache is keyed by exactly one variable.
        assert!(stats.cache_entries <= 3 * 3 + 3);
    }

    #[test]
    fn separator_solver_detects_unsat() {
        let inst = CspInstance::all_diff(fig1(), 2).unwrap();
        for recurse in [false, true] {
            let stats = solve_with_separator(&inst, &vs(&[3, 4, 5, 8]), recurse).unwrap();
            assert!(!stats.satisfiable);
        }
    }

    #[test]
    fn separator_solver_membership_error() {
        let inst = CspInstance::all_diff(fig1(), 2).unwrap();
        assert_eq!(
            solve_with_separator(&inst, &vs(&[11]), false),
            Err(Error::Membership(11))
        );
    }

    #[test]
    fn empty_and_full_separators_agree() {
        let inst = CspInstance::all_diff(fig1(), 3).unwrap();
        for s in [VertexSet::new(), fig1().vertex_set()] {
            for recurse in [false, true] {
                let stats = solve_with_separator(&inst, &s, recurse).unwrap();
                assert!(stats.satisfiable);
                assert!(inst.verify_witness(stats.witness.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn slope_fits_synthetic_data() {
        let cubic: Vec<(f64, f64)> = (2..=8).map(|d| (d as f64, (d as f64).powi(3))).collect();
        assert!((fit_loglog_slope(&cubic).unwrap() - 3.0).abs() < 1e-9);
        assert!(matches!(
            fit_loglog_slope(&[(2.0, 4.0), (3.0, 9.0)]),
            Err(Error::DegenerateData(_))
        ));
        assert!(matches!(
            fit_loglog_slope(&[(2.0, 0.0), (3.0, 9.0), (4.0, 16.0)]),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn growth_exponent_of_recursive_scheme_is_modest() {
        let slope = fit_growth_exponent(
            |d| {
                let inst = CspInstance::all_diff(fig1(), d).unwrap();
                solve_with_separator(&inst, &vs(&[3, 4, 5, 8]), true)
            },
            &[2, 3, 4, 5],
        )
        .unwrap();
        assert!(slope <= 3.5, "slope {slope}");
    }

    #[test]
    fn parse_alldiff_constraints() {
        let g = fig1();
        let inst = parse_constraints("c inequality\nd 3\nalldiff\n".as_bytes(), &g).unwrap();
        assert_eq!(inst, CspInstance::all_diff(g, 3).unwrap());
    }

    #[test]
    fn parse_explicit_tables() {
        let g = Graph::from_edges(2, &[(1, 2)]).unwrap();
        let inst = parse_constraints("d 2\nt 1 2 0110\n".as_bytes(), &g).unwrap();
        let stats = solve_backtrack(&inst, &[1, 2]).unwrap();
        assert!(stats.satisfiable);
        // Reversed endpoints transpose the table.
        let flipped = parse_constraints("d 2\nt 2 1 0110\n".as_bytes(), &g).unwrap();
        assert_eq!(inst, flipped);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let g = Graph::from_edges(2, &[(1, 2)]).unwrap();
        assert!(matches!(
            parse_constraints("d 2\nt 1 2 011\n".as_bytes(), &g),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            parse_constraints("alldiff\n".as_bytes(), &g),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            parse_constraints("d 2\n".as_bytes(), &g),
            Err(Error::InvalidInstance(_))
        ));
    }
}
