mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "edgemap", version, about = "Edge-mapping avoidance on small graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "EDGEMAP_WORKERS")]
    pub workers: Option<usize>,

    /// Wall-clock limit for the searches, in seconds.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,

    /// Node limit per search.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,

    /// Print the JSON report instead of the table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct HostArgs {
    /// graph6 string, `@file` for one graph6 per line, or `-` for stdin.
    #[arg(long, conflicts_with = "named")]
    pub host: Option<String>,

    /// Catalog name such as `4K2`, `W4minus` or `P3|K3`.
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    /// Pattern family, members separated by `;`.
    #[arg(long)]
    pub pattern: String,

    /// Distance class: 1 for f(e) != e, 0 for f(e) disjoint from e.
    #[arg(long, default_value_t = 1)]
    pub d: u8,

    #[arg(long, default_value = "free")]
    pub mode: String,
}

#[derive(Args, Debug, Clone)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub n: usize,

    #[arg(long)]
    pub pattern: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether some legal mapping leaves no surviving copy.
    Avoid {
        #[command(flatten)]
        host: HostArgs,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// The line-graph decision for 2K2 (free mode, d = 1).
    Fast2k2 {
        #[command(flatten)]
        host: HostArgs,
    },
    /// Minimal unavoidable graphs within order and size bounds.
    Census {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_edges: Option<usize>,
        /// Resume from and save to this checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Turán number.
    Ex(ExtremalArgs),
    /// Most edges of an n-vertex host with a free avoider (d = 1).
    H(ExtremalArgs),
    /// Most edges of an n-vertex host with an exclusive avoider (d = 0).
    S(ExtremalArgs),
    /// Most class-1 edges of a partial mapping on K_n, free mode.
    Q(ExtremalArgs),
    /// Most class-0 edges of a partial mapping on K_n, exclusive mode.
    P(ExtremalArgs),
    /// Build a construction such as `split:t=3,n=12`.
    Construct {
        spec: String,
        /// Check the construction's claim and exit 1 if it fails.
        #[arg(long)]
        verify: bool,
    },
    /// Re-check a certificate file (or `-` for stdin).
    Verify { certificate: String },
    /// Run the acceptance criteria.
    Acceptance {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { run::USAGE } else { run::OK });
        }
    };
    ExitCode::from(run::run(cli))
}
