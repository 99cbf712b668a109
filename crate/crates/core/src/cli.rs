//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::GraphConfig;
use crate::error::Error;
use crate::hgraph::GMatrix;
use crate::montecarlo::{csv_rows, db_grid, locate_threshold, scan_rates, summary_line};
use crate::noise::noise_table;
use crate::reduce::{a_from_g, classify_graph, prune, ClusterGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_NO_CROSSING: i32 = 4;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  usage or configuration error
  3  numerical failure in the graph reduction
  4  no threshold crossing inside the scanned grid (CSV is still written)";

#[derive(Debug, Parser)]
#[command(name = "cvft", version, about = "Cluster-state graph synthesis and RHG-GKP threshold simulation", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interaction and cluster graphs
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Noise model tables
    #[command(subcommand)]
    Noise(NoiseCmd),
    /// Monte Carlo simulations
    #[command(subcommand)]
    Sim(SimCmd),
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    /// Build G from a mode/pump config and write it as an edge file
    Build {
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Reduce a G edge file to A, prune it and optionally classify it
    Reduce {
        input: PathBuf,
        #[arg(long)]
        threshold: f64,
        /// Pruned graph edge file
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Unpruned A edge file
        #[arg(long)]
        a_out: Option<PathBuf>,
        /// Print the topology report
        #[arg(long)]
        classify: bool,
    },
    /// Classify the graph stored in an edge file
    Classify { input: PathBuf },
}

#[derive(Debug, Subcommand)]
enum NoiseCmd {
    /// CSV of displacement variances over a squeezing grid
    Table {
        #[arg(long)]
        eta: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    db_from: f64,
    #[arg(long, allow_hyphen_values = true)]
    db_to: f64,
    #[arg(long)]
    db_step: f64,
}

#[derive(Debug, Subcommand)]
enum SimCmd {
    /// Scan squeezing for several distances and locate the threshold
    Threshold {
        #[arg(long)]
        eta: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        distances: Vec<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; results do not depend on it
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_numerical() => EXIT_NUMERICAL,
            Error::NoCrossing(_) => EXIT_NO_CROSSING,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Failure {
                code: EXIT_USAGE,
                message: format!("{what} not found: {}", path.display()),
            }
        } else {
            io_failure(path, e)
        }
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message.lines().next().unwrap_or(""));
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("stdout: {e}"),
        })
    };
    match cmd {
        Command::Graph(GraphCmd::Build { config, out: path }) => {
            let text = read(&config, "config")?;
            let cfg = GraphConfig::parse(&text)?;
            let g: GMatrix<f64> = cfg.build()?;
            write(&path, &g.to_edge_file())
        }
        Command::Graph(GraphCmd::Reduce {
            input,
            threshold,
            out: path,
            a_out,
            classify,
        }) => {
            let g = GMatrix::<f64>::from_edge_file(&read(&input, "edge file")?)?;
            let a = a_from_g(&g)?;
            if let Some(p) = a_out {
                write(&p, &a.to_edge_file())?;
            }
            let c = prune(&a, threshold)?;
            if let Some(p) = path {
                write(&p, &c.to_edge_file())?;
            }
            if classify {
                emit(out, &format!("{}\n", classify_graph(&c)))?;
            }
            Ok(())
        }
        Command::Graph(GraphCmd::Classify { input }) => {
            let g = GMatrix::<f64>::from_edge_file(&read(&input, "edge file")?)?;
            let c = ClusterGraph {
                n: g.n(),
                edges: g.edges().into_iter().map(|(i, j, w)| (i, j, w.abs())).collect(),
                mode_map: None,
            };
            emit(out, &format!("{}\n", classify_graph(&c)))
        }
        Command::Noise(NoiseCmd::Table { eta, grid }) => {
            let g = db_grid(grid.db_from, grid.db_to, grid.db_step)?;
            let mut s = String::from("squeezing_db,sigma2_fin,sigma2_loss,sigma2_total\n");
            for [a, b, c, d] in noise_table(eta, &g)? {
                s.push_str(&format!("{a},{b},{c},{d}\n"));
            }
            emit(out, &s)
        }
        Command::Sim(SimCmd::Threshold {
            eta,
            distances,
            grid,
            trials,
            seed,
            out: path,
            workers,
        }) => {
            let g = db_grid(grid.db_from, grid.db_to, grid.db_step)?;
            let points = scan_rates(eta, &distances, &g, trials, seed, workers.map(|w| w as usize))?;
            let mut csv = csv_rows(&points);
            let result = locate_threshold(eta, &points);
            let summary = match &result {
                Ok(r) => summary_line(r),
                Err(e) => format!("# eta={eta} {e}"),
            };
            csv.push_str(&summary);
            csv.push('\n');
            match &path {
                Some(p) => {
                    write(p, &csv)?;
                    emit(out, &format!("{summary}\n"))?;
                }
                None => emit(out, &csv)?,
            }
            result.map(|_| ()).map_err(Failure::from)
        }
    }
}
