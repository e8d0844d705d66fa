use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use treestretch::{
    check_certificate, exact_tree_stretch_with_jobs, hamming_bound, hamming_witness, k_spanner_decision,
    max_congestion, max_stretch, optimal_tree, random_spanning_tree, CongestionReport, Family, Graph, GraphDescriptor,
    ProductGraph, SolveBudget, SpannerDecision, SpanningTree, StretchReport, TreeDescriptor, WitnessCertificate,
};

/// Minimum-stretch spanning trees of Hamming graphs and grids.
#[derive(Parser)]
#[command(name = "treestretch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph descriptor.
    Gen {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Build the optimal tree of a Hamming graph or grid.
    Construct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Measure stretch, congestion and diameter of a tree.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Exact tree-stretch, or a k-spanner decision with --k.
    Exact {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Emit or check antipodal witness certificates on a Hamming graph.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Tree to certify; defaults to the optimal construction.
        #[arg(long, conflicts_with = "random")]
        tree: Option<PathBuf>,
        /// Certify this many uniformly random spanning trees.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check this certificate against --tree instead of emitting one.
        #[arg(long, requires = "tree")]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Sweep a family over dimensions and write a CSV.
    Table {
        #[arg(long)]
        family: Family,
        /// Largest factor allowed on each axis; rows use 1..=len axes.
        #[arg(long, value_delimiter = ',', required = true)]
        dims_max: Vec<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Render Graphviz DOT, optionally with a tree overlay.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "construct")]
        tree: Option<PathBuf>,
        /// Overlay the optimal construction.
        #[arg(long)]
        construct: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct Source {
    /// Graph JSON file (product factors or explicit edge list).
    #[arg(long, conflicts_with_all = ["spec", "family", "dims"])]
    graph: Option<PathBuf>,
    /// Factor spec such as K4xK5 or P3xP4xP4.
    #[arg(long, value_parser = parse_spec, conflicts_with_all = ["family", "dims"])]
    spec: Option<ProductGraph>,
    #[arg(long, requires = "dims")]
    family: Option<Family>,
    #[arg(long, value_delimiter = ',', requires = "family")]
    dims: Option<Vec<usize>>,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 10_000_000)]
    budget_trees: u64,
    #[arg(long, default_value_t = 300.0)]
    budget_seconds: f64,
    #[arg(long, default_value_t = 12)]
    budget_vertices: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SolveBudget> {
        if !self.budget_seconds.is_finite() || self.budget_seconds <= 0.0 {
            bail!("--budget-seconds must be positive");
        }
        if self.jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        Ok(SolveBudget {
            max_vertices: self.budget_vertices,
            max_trees: self.budget_trees,
            time_cap: Duration::from_secs_f64(self.budget_seconds),
        })
    }
}

fn parse_spec(s: &str) -> Result<ProductGraph, String> {
    s.parse().map_err(|e: treestretch::GraphError| e.to_string())
}

impl Source {
    fn load(&self) -> Result<GraphDescriptor> {
        if let Some(path) = &self.graph {
            return read_json(path);
        }
        if let Some(g) = &self.spec {
            return Ok(GraphDescriptor::Product(g.clone()));
        }
        match (&self.family, &self.dims) {
            (Some(f), Some(d)) => Ok(GraphDescriptor::Product(f.graph(d)?)),
            _ => bail!("give --graph, --spec, or --family with --dims"),
        }
    }

    fn product(&self) -> Result<ProductGraph> {
        match self.load()? {
            GraphDescriptor::Product(g) => Ok(g),
            GraphDescriptor::EdgeList(_) => bail!("this command needs a product graph, not an edge list"),
        }
    }
}

fn family_of(g: &ProductGraph) -> Result<Family> {
    if g.is_hamming() {
        Ok(Family::Hamming)
    } else if g.is_grid() {
        Ok(Family::Grid)
    } else {
        bail!("{g} mixes complete and path factors; only Hamming graphs and grids have a construction")
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &Output, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, &text)
}

#[derive(Serialize)]
struct ConstructOutput {
    #[serde(flatten)]
    tree: TreeDescriptor,
    predicted: usize,
    center: usize,
    dimension_order: Vec<usize>,
    graph: ProductGraph,
}

#[derive(Serialize)]
struct EvalOutput {
    stretch: StretchReport,
    congestion: CongestionReport,
    diameter: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum DecisionKind {
    Exists,
    Infeasible,
    Indeterminate,
}

#[derive(Serialize)]
struct DecisionOutput {
    k: usize,
    decision: DecisionKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree: Option<TreeDescriptor>,
}

#[derive(Serialize)]
struct CheckOutput {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
}

#[derive(Serialize)]
struct SampleOutput {
    graph: String,
    bound: usize,
    seed: u64,
    trees: usize,
    all_valid: bool,
    min_detour: Option<usize>,
    certificates: Vec<WitnessCertificate>,
}

#[derive(Serialize)]
struct TableRow {
    dims: String,
    family: Family,
    predicted: usize,
    constructed_measured: usize,
    exact: Option<usize>,
    exhausted: Option<bool>,
}

/// Nondecreasing tuples of length `1..=caps.len()`, axis `i` capped by `caps[i]`.
fn sweep(caps: &[usize]) -> Vec<Vec<usize>> {
    fn extend(caps: &[usize], prefix: &mut Vec<usize>, rows: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            rows.push(prefix.clone());
        }
        let Some(&cap) = caps.get(prefix.len()) else {
            return;
        };
        for n in prefix.last().copied().unwrap_or(2)..=cap {
            prefix.push(n);
            extend(caps, prefix, rows);
            prefix.pop();
        }
    }
    let mut rows = Vec::new();
    extend(caps, &mut Vec::new(), &mut rows);
    rows.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    rows
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { source, out } => emit_json(&out, &source.load()?)?,
        Command::Construct { source, out } => {
            let g = source.product()?;
            let r = optimal_tree(family_of(&g)?, &g.dims())?;
            emit_json(
                &out,
                &ConstructOutput {
                    tree: r.tree.to_descriptor(),
                    predicted: r.predicted,
                    center: r.center.index(),
                    dimension_order: r.dimension_order,
                    graph: r.graph,
                },
            )?;
        }
        Command::Eval { graph, tree, out } => {
            let desc: GraphDescriptor = read_json(&graph)?;
            let g = desc.as_graph();
            let t = SpanningTree::from_descriptor(g, &read_json(&tree)?)?;
            emit_json(
                &out,
                &EvalOutput {
                    stretch: max_stretch(g, &t)?,
                    congestion: max_congestion(g, &t)?,
                    diameter: t.diameter(),
                },
            )?;
        }
        Command::Exact { source, budget, k, out } => {
            let desc = source.load()?;
            let g = desc.as_graph();
            let caps = budget.budget()?;
            match k {
                None => emit_json(&out, &exact_tree_stretch_with_jobs(g, &caps, budget.jobs)?.report())?,
                Some(k) => {
                    let (decision, tree) = match k_spanner_decision(g, k, &caps)? {
                        SpannerDecision::Exists(t) => (DecisionKind::Exists, Some(t.to_descriptor())),
                        SpannerDecision::Infeasible => (DecisionKind::Infeasible, None),
                        SpannerDecision::Indeterminate => (DecisionKind::Indeterminate, None),
                    };
                    emit_json(&out, &DecisionOutput { k, decision, tree })?;
                }
            }
        }
        Command::Verify {
            source,
            tree,
            random,
            seed,
            certificate,
            out,
        } => {
            let g = source.product()?;
            if !g.is_hamming() {
                bail!("{g} is not a Hamming graph");
            }
            if let Some(n) = random {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut certificates = Vec::with_capacity(n);
                let mut all_valid = true;
                for _ in 0..n {
                    let t = random_spanning_tree(&g, &mut rng);
                    let c = hamming_witness(&g, &t)?;
                    all_valid &= check_certificate(&g, &t, &c).is_ok();
                    certificates.push(c);
                }
                emit_json(
                    &out,
                    &SampleOutput {
                        graph: g.to_string(),
                        bound: hamming_bound(&g)?,
                        seed,
                        trees: n,
                        all_valid,
                        min_detour: certificates.iter().map(|c| c.detour_length).min(),
                        certificates,
                    },
                )?;
                return Ok(if all_valid {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            let t = match &tree {
                Some(path) => SpanningTree::from_descriptor(&g, &read_json(path)?)?,
                None => optimal_tree(Family::Hamming, &g.dims())?.tree,
            };
            match certificate {
                Some(path) => {
                    let c: WitnessCertificate = read_json(&path)?;
                    let reason = check_certificate(&g, &t, &c).err().map(|f| f.code());
                    emit_json(
                        &out,
                        &CheckOutput {
                            valid: reason.is_none(),
                            reason,
                        },
                    )?;
                    if reason.is_some() {
                        return Ok(ExitCode::from(1));
                    }
                }
                None => emit_json(&out, &hamming_witness(&g, &t)?)?,
            }
        }
        Command::Table {
            family,
            dims_max,
            budget,
            out,
        } => {
            if let Some(i) = dims_max.iter().position(|&n| n < 2) {
                bail!(
                    "--dims-max entry {} is {}, factors need at least 2 vertices",
                    i + 1,
                    dims_max[i]
                );
            }
            let caps = budget.budget()?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            for dims in sweep(&dims_max) {
                let r = optimal_tree(family, &dims)?;
                let measured = max_stretch(&r.graph, &r.tree)?.value;
                let (exact, exhausted) = if r.graph.vertex_count() <= caps.max_vertices {
                    let s = exact_tree_stretch_with_jobs(&r.graph, &caps, budget.jobs)?;
                    (Some(s.optimum), Some(s.exhausted))
                } else {
                    (None, None)
                };
                writer.serialize(TableRow {
                    dims: dims.iter().map(usize::to_string).collect::<Vec<_>>().join("x"),
                    family,
                    predicted: r.predicted,
                    constructed_measured: measured,
                    exact,
                    exhausted,
                })?;
            }
            let bytes = writer.into_inner().context("flushing CSV")?;
            emit(&out, &String::from_utf8(bytes)?)?;
        }
        Command::Export {
            source,
            tree,
            construct,
            out,
        } => {
            let desc = source.load()?;
            let dot = if let Some(path) = tree {
                let t = SpanningTree::from_descriptor(desc.as_graph(), &read_json(&path)?)?;
                treestretch::dot::tree_to_dot(desc.as_graph(), &t)
            } else if construct {
                let GraphDescriptor::Product(g) = &desc else {
                    bail!("--construct needs a product graph");
                };
                let r = optimal_tree(family_of(g)?, &g.dims())?;
                treestretch::dot::tree_to_dot(&r.graph, &r.tree)
            } else {
                treestretch::dot::graph_to_dot(desc.as_graph())
            };
            emit(&out, &dot)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_rows() {
        let rows = sweep(&[3, 3, 3]);
        assert_eq!(rows.len(), 2 + 3 + 4);
        assert_eq!(rows[0], vec![2]);
        assert_eq!(rows.last().unwrap(), &vec![3, 3, 3]);
        assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1])));
        assert_eq!(sweep(&[2, 4]), vec![vec![2], vec![2, 2], vec![2, 3], vec![2, 4]]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
