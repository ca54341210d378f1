//! `polyfind`: check, enumerate, and export incidence structures of
//! polyhedra.
//!
//! Exit codes: 0 success, 1 negative answer, 2 unreadable or malformed
//! input, 3 failed precondition, 4 budget hit (partial results reported).

mod commands;
mod io;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use polyfind_core::{Budget, SortTriple, TheoryId};

use report::{millis, CliError, RunReport, Timings};

#[derive(Parser, Debug)]
#[command(name = "polyfind", version, about = "Finite models of the polyhedron incidence axioms")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theory {
    Sr,
    SrExt,
}

impl From<Theory> for TheoryId {
    fn from(t: Theory) -> Self {
        match t {
            Theory::Sr => TheoryId::Sr,
            Theory::SrExt => TheoryId::SrExt,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct TripleArgs {
    #[arg(long, requires_all = ["edges", "faces"])]
    vertices: Option<usize>,
    #[arg(long, requires_all = ["vertices", "faces"])]
    edges: Option<usize>,
    #[arg(long, requires_all = ["vertices", "edges"])]
    faces: Option<usize>,
}

impl TripleArgs {
    fn triple(&self) -> Option<SortTriple> {
        match (self.vertices, self.edges, self.faces) {
            (Some(v), Some(e), Some(f)) => Some(SortTriple::new(v, e, f)),
            _ => None,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Per-triple wall-clock limit in seconds (default: POLYFIND_BUDGET_SECS, else 600).
    #[arg(long, value_name = "SECS")]
    time_budget: Option<f64>,
    /// Per-triple limit on search nodes.
    #[arg(long, value_name = "N")]
    node_budget: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, CliError> {
        let mut b = Budget::from_env();
        if let Some(secs) = self.time_budget {
            if !(secs.is_finite() && secs > 0.0) {
                return Err(CliError::Precondition(format!("time budget must be positive, got {secs}")));
            }
            b.wall = Duration::from_secs_f64(secs);
        }
        if let Some(n) = self.node_budget {
            b.nodes = n;
        }
        Ok(b)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a model file against a theory (exit 1 if it is not a model).
    Check {
        /// Model file, or - for stdin.
        #[arg(default_value = "-")]
        path: String,
        #[arg(long, value_enum, default_value = "sr")]
        theory: Theory,
    },
    /// Enumerate the models of a sort triple or of every triple of a cardinality.
    #[command(group(ArgGroup::new("target").required(true).args(["cardinality", "vertices"])))]
    Enumerate {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, conflicts_with_all = ["vertices", "edges", "faces"])]
        cardinality: Option<usize>,
        #[arg(long, value_enum, default_value = "sr")]
        theory: Theory,
        /// One representative per isomorphism class (the default).
        #[arg(long, conflicts_with = "labeled")]
        up_to_iso: bool,
        /// Every labeled model instead of class representatives.
        #[arg(long)]
        labeled: bool,
        /// Write at most this many model files.
        #[arg(long)]
        limit: Option<usize>,
        /// Directory for model files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print a catalog entry as a model file.
    Catalog {
        /// m6, m8, m8d, tetrahedron, cube, octahedron, dodecahedron, icosahedron, or pyramid-N.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// List the catalog instead.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Exchange vertices and faces.
    Dual {
        #[arg(default_value = "-")]
        path: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Decide isomorphism of two model files (exit 1 if not isomorphic).
    Iso { first: String, second: String },
    /// Find the least cardinality with a model.
    Smallest {
        #[arg(long, value_enum, default_value = "sr")]
        theory: Theory,
        #[arg(long)]
        max_n: usize,
        /// Directory for the representatives found.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decide whether a cardinality has exactly one model up to isomorphism.
    ReportCategoricity {
        #[arg(long)]
        cardinality: usize,
        #[arg(long, value_enum, default_value = "sr")]
        theory: Theory,
        /// Use known models (catalog names or model files) instead of a search.
        #[arg(long = "witness", value_name = "NAME|PATH")]
        witnesses: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Render a first-order (TPTP) or propositional (DIMACS) problem.
    Export {
        #[arg(value_enum)]
        format: ExportFormat,
        #[arg(long, value_enum, default_value = "sr")]
        theory: Theory,
        #[command(flatten)]
        triple: TripleArgs,
        /// Add the negated diagram of this model (TPTP only).
        #[arg(long, value_name = "PATH")]
        negate: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Turn solver output for an exported DIMACS problem back into a model file.
    Decode {
        /// The DIMACS file the solver was given.
        #[arg(long)]
        cnf: String,
        /// Solver output, or - for stdin.
        #[arg(default_value = "-")]
        solution: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Tptp,
    Dimacs,
}

fn dispatch(command: Command, json: bool) -> Result<report::Outcome, CliError> {
    match command {
        Command::Check { path, theory } => commands::check(&path, theory.into()),
        Command::Enumerate { triple, cardinality, theory, up_to_iso: _, labeled, limit, out, budget } => {
            let target = match (cardinality, triple.triple()) {
                (Some(n), _) => polyfind_core::Target::Cardinality(n),
                (None, Some(t)) => polyfind_core::Target::Triple(t),
                (None, None) => unreachable!("clap requires a target"),
            };
            commands::enumerate(target, theory.into(), labeled, limit, out.as_deref(), budget.budget()?)
        }
        Command::Catalog { name, list, out } => match name {
            Some(name) if !list => commands::catalog(&name, &out, json),
            _ => Ok(commands::catalog_list()),
        },
        Command::Dual { path, out } => commands::dual(&path, &out, json),
        Command::Iso { first, second } => commands::iso(&first, &second),
        Command::Smallest { theory, max_n, out, budget } => {
            commands::smallest(theory.into(), max_n, out.as_deref(), budget.budget()?)
        }
        Command::ReportCategoricity { cardinality, theory, witnesses, budget } => {
            commands::categoricity(cardinality, theory.into(), &witnesses, budget.budget()?)
        }
        Command::Export { format, theory, triple, negate, out } => match format {
            ExportFormat::Tptp => commands::export_tptp(theory.into(), triple.triple(), negate.as_deref(), &out, json),
            ExportFormat::Dimacs => {
                if negate.is_some() {
                    return Err(CliError::Precondition("--negate applies to tptp export only".into()));
                }
                let t = triple.triple().ok_or_else(|| {
                    CliError::Precondition("dimacs export needs --vertices, --edges and --faces".into())
                })?;
                commands::export_dimacs(theory.into(), t, &out, json)
            }
        },
        Command::Decode { cnf, solution, out } => commands::decode(&cnf, &solution, &out, json),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    let json = cli.json;
    let command: Vec<String> = std::env::args().skip(1).collect();
    let result = dispatch(cli.command, json);
    let total_ms = millis(start.elapsed());

    let (status, code) = match &result {
        Ok(o) => (o.status, o.status.exit_code()),
        Err(e) => (e.status(), e.status().exit_code()),
    };
    if json {
        let report = match result {
            Ok(o) => RunReport {
                command,
                status,
                exit_code: code,
                exhausted: o.exhausted,
                results: o.results,
                files_written: o.files_written,
                error: None,
                timings: Timings { total_ms, items_ms: o.item_timings },
            },
            Err(e) => RunReport {
                command,
                status,
                exit_code: code,
                exhausted: None,
                results: serde_json::Value::Null,
                files_written: Vec::new(),
                error: Some(e.to_string()),
                timings: Timings { total_ms, items_ms: Default::default() },
            },
        };
        let text = serde_json::to_string_pretty(&report).expect("reports serialize");
        println!("{text}");
    } else {
        match result {
            Ok(o) => {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(o.text.as_bytes());
                let _ = stdout.flush();
            }
            Err(e) => eprintln!("polyfind: {e}"),
        }
    }
    ExitCode::from(code as u8)
}
