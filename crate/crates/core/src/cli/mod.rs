//! The `grassmann` command line. Every subcommand produces a [`Report`];
//! exit code 0 means every check passed, 2 that some check failed, and 1 a
//! usage or internal error.

mod commands;
mod report;
mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{cmd_construct, cmd_params, cmd_recognize, cmd_triples, cmd_verify, load_graph, Family, Level, Target};
pub use report::{Check, Format, Report};
pub use suites::{
    array_check, local_checks, mu_check, spectrum_check_named, triple_checks, triple_list, GrassmannTarget, TripleMode,
};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLE: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "grassmann", version, about = "Exact verification for Grassmann graphs J_q(n,D) and their local graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads; 0 uses every core. Reports do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub parallelism: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    Sample,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical parameters, intersection array, spectrum and scope of J_q(n,D).
    Params {
        n: u32,
        #[arg(value_name = "D")]
        d: u32,
        q: u64,
    },
    /// Build J_q(n,D), a grid or the Shrikhande graph and check it.
    Construct {
        n: Option<u32>,
        #[arg(value_name = "D")]
        d: Option<u32>,
        q: Option<u64>,
        /// Build the (S x T)-grid instead.
        #[arg(long, num_args = 2, value_names = ["S", "T"], conflicts_with_all = ["n", "shrikhande"])]
        grid: Option<Vec<usize>>,
        /// Build the Shrikhande graph instead.
        #[arg(long, conflicts_with = "n")]
        shrikhande: bool,
        /// Replace every vertex by a clique of this size.
        #[arg(long, default_value_t = 1)]
        ext: usize,
        /// Write the edge list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an edge-list file against J_q(n,D) (--n --D --q) or against the
    /// q-clique extension of the (r x r)-grid (--q --r).
    Verify {
        graph: PathBuf,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long = "D")]
        d: Option<u32>,
        #[arg(long)]
        q: u64,
        #[arg(long, conflicts_with_all = ["n", "d"])]
        r: Option<usize>,
        #[arg(long, value_enum, default_value = "all")]
        level: Level,
        /// Budget for sampled μ-graph pairs, cocliques and triples.
        #[arg(long, default_value_t = DEFAULT_SAMPLE)]
        sample: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decide whether a graph is the q-clique extension of the (r x r)-grid.
    Recognize {
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        /// Skip the spectral pre-check.
        #[arg(long)]
        no_precheck: bool,
    },
    /// Triple intersection identities on a J_q(n,D) edge list.
    Triples {
        graph: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long = "D")]
        d: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "sample")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SAMPLE)]
        sample: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Runs one parsed command.
pub fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Params { n, d, q } => cmd_params(n, d, q),
        Command::Construct { n, d, q, grid, shrikhande, ext, out } => {
            let family = match (n, d, q, grid, shrikhande) {
                (Some(n), Some(d), Some(q), None, false) => Family::Grassmann(GrassmannTarget { n, d, q }),
                (None, None, None, Some(st), false) => Family::Grid { s: st[0], t: st[1] },
                (None, None, None, None, true) => Family::Shrikhande,
                _ => {
                    return Err(Error::InvalidArgument(
                        "construct needs N D Q, or --grid S T, or --shrikhande".into(),
                    ))
                }
            };
            cmd_construct(family, ext, out.as_deref())
        }
        Command::Verify { graph, n, d, q, r, level, sample, seed } => {
            let target = match (n, d, r) {
                (Some(n), Some(d), None) => Target::Grassmann(GrassmannTarget { n, d, q }),
                (None, None, Some(r)) => Target::CliqueExtGrid { q: q as usize, r },
                _ => return Err(Error::InvalidArgument("verify needs --n --D --q, or --q --r".into())),
            };
            cmd_verify(&graph, target, level, sample, seed)
        }
        Command::Recognize { graph, q, r, no_precheck } => cmd_recognize(&graph, q, r, !no_precheck),
        Command::Triples { graph, n, d, q, mode, sample, seed } => {
            let mode = match mode {
                Mode::Full => TripleMode::Full,
                Mode::Sample => TripleMode::Sample { count: sample, seed },
            };
            cmd_triples(&graph, GrassmannTarget { n, d, q }, mode)
        }
    }
}

/// Parses `args`, runs the command on a pool of `--parallelism` threads,
/// writes the report to `out` and errors to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.parallelism).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return 1;
        }
    };
    let format = cli.format;
    match pool.install(|| execute(cli.command)) {
        Ok(rep) => {
            if out.write_all(rep.render(format).as_bytes()).and_then(|_| out.flush()).is_err() {
                return 1;
            }
            rep.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
