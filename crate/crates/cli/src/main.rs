//! `fsg`: command-line front end for the truncated Fock-space toolkit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Report;

#[derive(Debug, Parser)]
#[command(name = "fsg", version, about = "Free semigroupoid algebras of finite directed graphs")]
struct Cli {
    /// Emit JSON reports.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graph summary: transition matrix, components, radical, cycle structure.
    Analyze {
        /// Graph JSON file, or a built-in graph name.
        graph: String,
    },
    /// Evaluate an operator expression and write its matrix.
    Fock {
        graph: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
        /// Expression such as `2L[e].adj(L[e]) - P[x]`.
        #[arg(long)]
        op: String,
        /// Write the matrix here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the basis manifest.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Eigenvector of the adjoint algebra at a point supported on loops.
    Eig {
        graph: String,
        #[arg(long)]
        vertex: String,
        /// `EDGE=RE` or `EDGE=RE,IMi`; repeat for several loops.
        #[arg(long, required = true)]
        lambda: Vec<String>,
        #[arg(long, default_value_t = 6)]
        level: usize,
    },
    /// Radical generators, transitive blocks and the nilpotency certificate.
    Radical {
        graph: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
        /// Path length scanned by the certificate.
        #[arg(long, default_value_t = 20)]
        scan: usize,
    },
    /// Partial isometries with orthogonal ranges from double cycles.
    Free {
        graph: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
    },
    /// Decide unitary equivalence of the two left algebras.
    Classify {
        first: String,
        second: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
    },
    /// Gauge unitary from block data and the automorphism it induces.
    Gauge {
        graph: String,
        /// GaugeData JSON with blocks keyed `src->dst`.
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long, default_value_t = 6)]
        level: usize,
    },
    /// Run the invariant suite on a graph.
    Verify {
        graph: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
    },
    /// Check a displayed matrix form: fork, loop_tail, loop_bridge_loop, cycle, cycle_blocked.
    Example {
        id: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
        /// Cycle length for the cycle fixtures.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Analyze { graph } => commands::analyze(graph),
        Command::Fock {
            graph,
            level,
            op,
            out,
            basis,
        } => commands::fock(graph, *level, op, out.as_deref(), basis.as_deref()),
        Command::Eig {
            graph,
            vertex,
            lambda,
            level,
        } => commands::eig(graph, vertex, lambda, *level),
        Command::Radical { graph, level, scan } => commands::radical(graph, *level, *scan),
        Command::Free { graph, level } => commands::free(graph, *level),
        Command::Classify { first, second, level } => commands::classify(first, second, *level),
        Command::Gauge { graph, blocks, level } => commands::gauge(graph, blocks, *level),
        Command::Verify { graph, level } => commands::verify(graph, *level),
        Command::Example { id, level, n } => commands::example(id, *level, *n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json()).expect("report serializes"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.passed { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
