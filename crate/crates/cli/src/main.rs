//! `triex`: validate context files, run oracle explorations, draw lattices,
//! explore interactively in the terminal, or serve sessions over HTTP.
//!
//! Exit status: 0 success, 1 invalid input, 2 I/O failure, 3 the expert's
//! answers were inconsistent.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use triex_core::{TieOrder, Variant};

#[derive(Parser)]
#[command(name = "triex", version, about = "Triadic attribute exploration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a context file (.cxt, triadic or family JSON), session config or snapshot.
    Validate { path: PathBuf },
    /// Explore a completely known domain, answering every question from it.
    Oracle {
        domain: PathBuf,
        #[command(flatten)]
        run: RunFlags,
        #[command(flatten)]
        out: Outputs,
    },
    /// Explore interactively, answering on the terminal.
    Explore {
        /// Session config, or a triadic context whose objects seed the examples.
        config: Option<PathBuf>,
        /// Continue from a snapshot.
        #[arg(long, conflicts_with = "config")]
        resume: Option<PathBuf>,
        /// Where to write the snapshot after every answer (default: the
        /// resumed file, or `<config>.session.json`).
        #[arg(long)]
        snapshot: Option<PathBuf>,
        #[command(flatten)]
        out: Outputs,
    },
    /// Lattice of conditional implications of a domain (or of a snapshot's
    /// knowledge so far).
    Lattice {
        path: PathBuf,
        /// Write lattice JSON here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Allow more than 12 conditions.
        #[arg(long)]
        force: bool,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, env = "TRIEX_DATA_DIR", default_value = "triex-sessions")]
        data_dir: PathBuf,
        /// Also serve static files (the web client) from here.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunFlags {
    #[arg(long, default_value = "record-partial-holds")]
    variant: Variant,
    /// Only explore subsets of these comma-separated conditions.
    #[arg(long)]
    conditions: Option<String>,
    #[arg(long, default_value = "lexicographic")]
    order: TieOrder,
    /// Allow more than 12 conditions (the schedule has 2^|B| - 1 entries).
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct Outputs {
    /// Write the transcript CSV here (`-` for stdout).
    #[arg(long)]
    transcript: Option<PathBuf>,
    /// Write the lattice of conditional implications as JSON.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Write the lattice as Graphviz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::Oracle { domain, run, out } => commands::oracle(&domain, &run, &out),
        Command::Explore {
            config,
            resume,
            snapshot,
            out,
        } => commands::explore(config.as_deref(), resume.as_deref(), snapshot, &out),
        Command::Lattice {
            path,
            json,
            dot,
            force,
        } => commands::lattice(&path, json.as_deref(), dot.as_deref(), force),
        Command::Serve {
            port,
            host,
            data_dir,
            static_dir,
        } => commands::serve(&host, port, data_dir, static_dir),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.chain().any(|c| c.is::<std::io::Error>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
