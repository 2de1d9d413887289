use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sepfill::bounds::{
    fill_in, report_from_fill, RecursionConfig, SubMethod,
};
use sepfill::csp::{parse_constraints, solve_backtrack, solve_with_separator, SolveStats};
use sepfill::decomposition::{parse_td, validate, write_td};
use sepfill::exact::{exact_treewidth, greedy_elimination_width, DEFAULT_EXACT_LIMIT};
use sepfill::graph::{parse_graph, Graph, Vertex, VertexSet};
use sepfill::separator::enumerate_candidates;
use sepfill::{Error, TreeDecomposition};

/// Treewidth bounds from separators with partial fill-in.
#[derive(Parser)]
#[command(name = "sepfill", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the clique, components and corollary bounds for a separator.
    Bound(BoundArgs),
    /// Build a tree decomposition by recursive separator decomposition.
    Decompose(DecomposeArgs),
    /// Check a tree decomposition against a graph.
    Validate(ValidateArgs),
    /// Exact treewidth for small graphs.
    Exact(ExactArgs),
    /// Binary CSP solving.
    Csp(CspArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TwMode {
    /// Exact treewidth of every piece (errors beyond the size limit).
    Exact,
    /// Exact for small pieces, min-degree greedy width beyond.
    Greedy,
}

#[derive(Args)]
struct BoundArgs {
    /// Input graph in .gr format.
    #[arg(long)]
    input: PathBuf,
    /// Separator as comma-separated vertex labels, e.g. 3,4,5,8.
    #[arg(long, conflicts_with = "search")]
    separator: Option<String>,
    /// Search for the best-scoring separator instead.
    #[arg(long)]
    search: bool,
    #[arg(long, value_enum, default_value = "exact")]
    tw: TwMode,
    /// Emit the report as JSON (stable under a fixed seed).
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    budget: usize,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Output .td file.
    #[arg(long)]
    output: PathBuf,
    /// Exact-solve threshold for the recursion base case.
    #[arg(long, default_value_t = 12)]
    threshold: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    budget: usize,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    td: PathBuf,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    limit: usize,
    /// Optional .td output for the minimum decomposition.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CspArgs {
    #[command(subcommand)]
    command: CspCommand,
}

#[derive(Subcommand)]
enum CspCommand {
    /// Solve a binary CSP, optionally with separator caching.
    Solve(CspSolveArgs),
}

#[derive(Args)]
struct CspSolveArgs {
    /// Constraint graph in .gr format.
    #[arg(long)]
    graph: PathBuf,
    /// Constraints file (`d <n>` plus `t`/`alldiff` lines).
    #[arg(long)]
    constraints: PathBuf,
    /// Separator as comma-separated vertex labels.
    #[arg(long, conflicts_with = "search")]
    separator: Option<String>,
    /// Pick a separator by search; without this and --separator, plain
    /// backtracking is used.
    #[arg(long)]
    search: bool,
    /// Apply the separator scheme recursively to the reduced problem.
    #[arg(long)]
    recurse: bool,
    /// Print operation counters.
    #[arg(long)]
    stats: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    budget: usize,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Format { .. } | Error::SelfLoop(_) => 2,
        _ => 3,
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, Error> {
    let file = File::open(path).map_err(|e| Error::format(0, format!("{}: {e}", path.display())))?;
    parse_graph(BufReader::new(file))
}

fn parse_separator_list(text: &str, g: &Graph) -> Result<VertexSet, Error> {
    let mut set = VertexSet::new();
    for tok in text.split(',').filter(|t| !t.is_empty()) {
        let v: Vertex = tok
            .trim()
            .parse()
            .map_err(|_| Error::format(0, format!("bad separator vertex `{tok}`")))?;
        if !g.has_vertex(v) {
            return Err(Error::Membership(v));
        }
        set.insert(v);
    }
    Ok(set)
}

fn pick_separator(g: &Graph, budget: usize, seed: u64) -> Result<VertexSet, Error> {
    Ok(enumerate_candidates(g, budget, seed)?
        .into_iter()
        .next()
        .expect("candidate list is nonempty")
        .separator)
}

#[derive(Serialize)]
struct ComponentDoc {
    index: usize,
    vertices: usize,
    attachment_size: usize,
    tw: i32,
}

#[derive(Serialize)]
struct BoundDocument {
    input: String,
    separator: Vec<Vertex>,
    clique_bound: i32,
    components_bound: i32,
    corollary_bound: i32,
    tw_hs: i32,
    sub_method: String,
    fill_edges: Vec<(Vertex, Vertex)>,
    per_component: Vec<ComponentDoc>,
}

fn cmd_bound(args: &BoundArgs) -> Result<(), Error> {
    let start = Instant::now();
    let g = load_graph(&args.input)?;
    let separator = match &args.separator {
        Some(text) => parse_separator_list(text, &g)?,
        None if args.search => pick_separator(&g, args.budget, args.seed)?,
        None => return Err(Error::format(0, "one of --separator or --search is required")),
    };
    let fill = fill_in(&g, &separator)?;
    let (report, sub_method) = match args.tw {
        TwMode::Exact => {
            let eval = |h: &Graph| exact_treewidth(h, DEFAULT_EXACT_LIMIT).map(|(w, _)| w);
            (report_from_fill(&g, &fill, &eval, SubMethod::Exact)?, SubMethod::Exact)
        }
        TwMode::Greedy => {
            let eval = |h: &Graph| {
                if h.vertex_count() <= 8 {
                    exact_treewidth(h, 8).map(|(w, _)| w)
                } else {
                    Ok(greedy_elimination_width(h))
                }
            };
            (report_from_fill(&g, &fill, &eval, SubMethod::Bounded)?, SubMethod::Bounded)
        }
    };
    let doc = BoundDocument {
        input: args.input.display().to_string(),
        separator: separator.iter().copied().collect(),
        clique_bound: report.clique_bound,
        components_bound: report.components_bound,
        corollary_bound: report.corollary_bound,
        tw_hs: report.tw_hs,
        sub_method: sub_method.to_string(),
        fill_edges: fill.fill_edges.iter().copied().collect(),
        per_component: report
            .per_component
            .iter()
            .map(|c| ComponentDoc {
                index: c.index,
                vertices: fill.components[c.index].len(),
                attachment_size: c.attachment_size,
                tw: c.tw,
            })
            .collect(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("input: {}", doc.input);
        let sep_text: Vec<String> = doc.separator.iter().map(|v| v.to_string()).collect();
        println!("separator: {}", sep_text.join(","));
        println!("clique_bound: {}", doc.clique_bound);
        println!("components_bound: {}", doc.components_bound);
        println!("corollary_bound: {}", doc.corollary_bound);
        println!("tw_hs: {}", doc.tw_hs);
        println!("sub_method: {}", doc.sub_method);
        println!("fill_edges: {}", doc.fill_edges.len());
        for c in &doc.per_component {
            println!(
                "component {}: vertices={} attachment={} tw={}",
                c.index + 1,
                c.vertices,
                c.attachment_size,
                c.tw
            );
        }
        println!("wall_time_ms: {}", start.elapsed().as_millis());
    }
    Ok(())
}

fn write_td_file(td: &TreeDecomposition, path: &PathBuf) -> Result<(), Error> {
    let file =
        File::create(path).map_err(|e| Error::format(0, format!("{}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    write_td(td, &mut out).map_err(|e| Error::format(0, e.to_string()))?;
    out.flush().map_err(|e| Error::format(0, e.to_string()))?;
    Ok(())
}

fn cmd_decompose(args: &DecomposeArgs) -> Result<(), Error> {
    let g = load_graph(&args.input)?;
    let config = RecursionConfig {
        exact_threshold: args.threshold,
        budget: args.budget,
        seed: args.seed,
    };
    let (width, td) = sepfill::recursive_bound(&g, &config)?;
    write_td_file(&td, &args.output)?;
    println!("width: {width}");
    println!("bags: {}", td.bag_count());
    println!("output: {}", args.output.display());
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<bool, Error> {
    let g = load_graph(&args.graph)?;
    let file = File::open(&args.td)
        .map_err(|e| Error::format(0, format!("{}: {e}", args.td.display())))?;
    let td = parse_td(BufReader::new(file))?;
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|v| !g.has_vertex(**v)) {
            return Err(Error::format(
                0,
                format!("bag {} names vertex {v} absent from the graph", i + 1),
            ));
        }
    }
    let verdict = validate(&td, &g);
    if verdict.is_valid() {
        println!("valid: width {}", td.width());
        Ok(true)
    } else {
        for violation in &verdict.violations {
            println!("violation: {violation}");
        }
        Ok(false)
    }
}

fn cmd_exact(args: &ExactArgs) -> Result<(), Error> {
    let g = load_graph(&args.input)?;
    let (width, td) = exact_treewidth(&g, args.limit)?;
    println!("treewidth: {width}");
    if let Some(path) = &args.output {
        write_td_file(&td, path)?;
        println!("output: {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct CspDocument {
    satisfiable: bool,
    witness: Option<BTreeMap<Vertex, usize>>,
    node_expansions: u64,
    cache_entries: u64,
    cache_lookups: u64,
}

fn print_csp_result(stats: &SolveStats, show_stats: bool, json: bool) {
    if json {
        let doc = CspDocument {
            satisfiable: stats.satisfiable,
            witness: stats.witness.clone(),
            node_expansions: stats.node_expansions,
            cache_entries: stats.cache_entries,
            cache_lookups: stats.cache_lookups,
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        return;
    }
    println!("satisfiable: {}", stats.satisfiable);
    if let Some(witness) = &stats.witness {
        let text: Vec<String> = witness.iter().map(|(v, val)| format!("{v}={val}")).collect();
        println!("witness: {}", text.join(" "));
    }
    if show_stats {
        println!("node_expansions: {}", stats.node_expansions);
        println!("cache_entries: {}", stats.cache_entries);
        println!("cache_lookups: {}", stats.cache_lookups);
    }
}

fn cmd_csp_solve(args: &CspSolveArgs) -> Result<(), Error> {
    let g = load_graph(&args.graph)?;
    let file = File::open(&args.constraints)
        .map_err(|e| Error::format(0, format!("{}: {e}", args.constraints.display())))?;
    let inst = parse_constraints(BufReader::new(file), &g)?;
    let stats = if let Some(text) = &args.separator {
        let s = parse_separator_list(text, &g)?;
        solve_with_separator(&inst, &s, args.recurse)?
    } else if args.search {
        let s = pick_separator(&g, args.budget, args.seed)?;
        solve_with_separator(&inst, &s, args.recurse)?
    } else {
        let order: Vec<Vertex> = g.vertices().collect();
        solve_backtrack(&inst, &order)?
    };
    print_csp_result(&stats, args.stats, args.json);
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Bound(args) => cmd_bound(args).map(|_| true),
        Command::Decompose(args) => cmd_decompose(args).map(|_| true),
        Command::Validate(args) => cmd_validate(args),
        Command::Exact(args) => cmd_exact(args).map(|_| true),
        Command::Csp(args) => match &args.command {
            CspCommand::Solve(solve) => cmd_csp_solve(solve).map(|_| true),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
