use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use virtgraph::construction::{self, Variant};
use virtgraph::graphs::{self, build_graph, GraphKind};
use virtgraph::group::{ElementId, FiniteGroup};
use virtgraph::seqprod::{self, CoordinateFamily};
use virtgraph::verify;
use virtgraph::{build_group, Caps};

const SCHEMA_VERSION: u32 = 1;

/// Generating and independence graphs of finite groups.
///
/// Size limits come from `VIRTGRAPH_*_CAP` environment variables.
#[derive(Parser)]
#[command(name = "virtgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and summarize its structure.
    Build {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        out: Output,
    },
    /// Build one graph on a group and report its shape.
    Graph {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "generating")]
        kind: GraphKind,
        /// Also write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also write the edge list as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Irredundant generating sets: sizes d(G)..m(G) with witnesses.
    Mingen(MingenArgs),
    /// Component census of the two-block construction.
    Construction(ConstructionArgs),
    /// Separation of tau-elements in a product of coordinate graphs.
    Seqprod(SeqprodArgs),
    /// Run the acceptance criteria.
    Verify {
        /// `all`, a criterion number, or a criterion name.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MingenArgs {
    /// Repeat to tabulate several groups.
    #[arg(long, required = true)]
    group: Vec<String>,
    /// Emit `group,d,m,size,witness` rows instead of JSON.
    #[arg(long)]
    csv: bool,
    /// Find an irredundant generating set through two named elements.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], conflicts_with = "csv")]
    pair: Option<Vec<String>>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ConstructionArgs {
    #[arg(long)]
    t: usize,
    /// Samples per block.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "corrected")]
    variant: Variant,
    /// Check the generator pairs block by block instead of sampling.
    #[arg(long)]
    generator_pairs: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SeqprodArgs {
    /// Coordinate graphs, one per line: `path:<len>` or `group:<spec>:<kind>`.
    #[arg(
        long,
        required_unless_present = "doubling",
        conflicts_with = "doubling"
    )]
    family: Option<PathBuf>,
    /// Use the paths of length 2^n for n below this exponent.
    #[arg(long)]
    doubling: Option<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    taus: Vec<f64>,
    #[arg(long)]
    threshold: usize,
    #[command(flatten)]
    out: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether the run passed; only `verify` can report `false`.
fn run(cli: Cli) -> Result<bool> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Build { group, out } => {
            let g = load(&group, &caps)?;
            emit(&out, envelope("build", summary(&g)?))?;
        }
        Command::Graph {
            group,
            kind,
            dot,
            csv,
            out,
        } => {
            let g = load(&group, &caps)?;
            let graph = build_graph(&g, kind)?;
            if let Some(path) = dot {
                write_atomic(&path, graphs::to_dot(&graph).as_bytes())?;
            }
            if let Some(path) = csv {
                write_atomic(&path, graphs::to_csv(&graph).as_bytes())?;
            }
            emit(&out, graphs::report_json(&graphs::analyze(&graph), &graph))?;
        }
        Command::Mingen(args) => mingen(args, &caps)?,
        Command::Construction(args) => {
            let report = if args.generator_pairs {
                serde_json::to_value(construction::ro1ro2_verify(args.t, args.variant)?)?
            } else {
                serde_json::to_value(construction::component_census(
                    args.t,
                    args.samples,
                    args.seed,
                    args.variant,
                )?)?
            };
            emit(&args.out, envelope("construction", report))?;
        }
        Command::Seqprod(args) => {
            let family = match (&args.family, args.doubling) {
                (Some(path), _) => CoordinateFamily::from_file(path, &caps)?,
                (None, Some(n)) => CoordinateFamily::doubling_paths(n),
                (None, None) => unreachable!("clap requires one source"),
            };
            let report = seqprod::separation_demo(&family, &args.taus, args.threshold)?;
            emit(
                &args.out,
                envelope("seqprod", serde_json::to_value(report)?),
            )?;
        }
        Command::Verify { suite, out } => {
            let results = select(&suite)?
                .into_iter()
                .map(verify::run)
                .collect::<Vec<_>>();
            for r in &results {
                eprintln!("{}", r.summary());
            }
            let pass = results.iter().all(|r| r.pass);
            emit(
                &out,
                envelope("verify", json!({ "pass": pass, "criteria": results })),
            )?;
            return Ok(pass);
        }
    }
    Ok(true)
}

fn load(spec: &str, caps: &Caps) -> Result<FiniteGroup> {
    let parsed = spec.parse().with_context(|| format!("group '{spec}'"))?;
    build_group(&parsed, caps).with_context(|| format!("group '{spec}'"))
}

fn element(g: &FiniteGroup, name: &str) -> Result<ElementId> {
    g.element(name)
        .ok_or_else(|| anyhow!("{} has no element '{name}'", g.label()))
}

fn names(g: &FiniteGroup, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| g.describe(x)).collect()
}

fn summary(g: &FiniteGroup) -> Result<Value> {
    let class = g.classify_unique_minimal();
    let frattini = if g.order() <= g.caps().lattice {
        Some(names(g, &g.frattini()?.to_vec()))
    } else {
        None
    };
    Ok(json!({
        "group": g.label(),
        "order": g.order(),
        "tabulated": g.is_tabulated(),
        "generators": names(g, g.generators()),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
        "soluble": g.is_soluble(),
        "unique_minimal": class.class,
        "frattini": frattini,
    }))
}

fn mingen(args: MingenArgs, caps: &Caps) -> Result<()> {
    let groups = args
        .group
        .iter()
        .map(|s| load(s, caps))
        .collect::<Result<Vec<_>>>()?;
    if let Some(pair) = &args.pair {
        let [g] = groups.as_slice() else {
            bail!("--pair takes exactly one --group")
        };
        let (x, y) = (element(g, &pair[0])?, element(g, &pair[1])?);
        let set = virtgraph::mingen::contains_in_irredundant(g, x, y)?;
        let report = json!({ "group": g.label(), "pair": pair, "set": set.map(|s| s.describe(g)) });
        return emit(&args.out, envelope("mingen", report));
    }
    let tables = groups
        .iter()
        .map(virtgraph::mingen::tarski_table)
        .collect::<Result<Vec<_>, _>>()?;
    if args.csv {
        let rows: Vec<_> = groups.iter().zip(&tables).collect();
        return write_out(&args.out, virtgraph::mingen::tarski_csv(&rows).as_bytes());
    }
    let reports: Vec<Value> = groups
        .iter()
        .zip(&tables)
        .map(|(g, t)| {
            let witnesses: serde_json::Map<String, Value> =
                t.witnesses.iter().map(|(k, w)| (k.to_string(), json!(w.describe(g)))).collect();
            json!({ "group": g.label(), "d": t.d, "m": t.m, "certified_through": t.certified_through, "witnesses": witnesses })
        })
        .collect();
    emit(&args.out, envelope("mingen", json!(reports)))
}

fn select(suite: &str) -> Result<Vec<u8>> {
    if suite == "all" {
        return Ok(verify::CRITERIA.iter().map(|c| c.0).collect());
    }
    verify::CRITERIA
        .iter()
        .find(|(id, name)| suite == *name || suite.parse() == Ok(*id))
        .map(|c| vec![c.0])
        .ok_or_else(|| anyhow!("unknown suite '{suite}'"))
}

fn envelope(command: &str, report: impl Serialize) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "command": command, "report": report })
}

fn emit(out: &Output, report: Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    write_out(out, text.as_bytes())
}

fn write_out(out: &Output, bytes: &[u8]) -> Result<()> {
    match &out.out {
        Some(path) => write_atomic(path, bytes),
        None => {
            std::io::stdout().lock().write_all(bytes)?;
            Ok(())
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
