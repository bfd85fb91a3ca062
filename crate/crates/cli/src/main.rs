use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxroots::solver::SolveOptions;
use coxroots_cli::commands::{self, CommandError};
use coxroots_cli::formats::{PolytopeFile, ResultsFile, SystemFile};
use coxroots_cli::generate::{generate, GeneratorSpec, Mode};

/// Solver for square Laurent polynomial systems in homogeneous coordinates
/// on the toric compactification carved out by the Newton polytopes.
#[derive(Parser)]
#[command(name = "coxroots", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct SolverFlags {
    /// Switch between exact-lattice and Newton recovery (0 < tol < 1).
    #[arg(long)]
    tol: Option<f64>,
    /// Relative singular value threshold for rank decisions.
    #[arg(long)]
    rank_tol: Option<f64>,
    /// Seed for all randomized choices.
    #[arg(long)]
    seed: Option<u64>,
    /// Polytope file overriding the generated auxiliary degree.
    #[arg(long)]
    alpha0: Option<PathBuf>,
    #[arg(long)]
    newton_max_iter: Option<usize>,
    #[arg(long)]
    newton_tol: Option<f64>,
}

impl SolverFlags {
    fn apply(&self, base: &mut SolveOptions, dim: usize) -> Result<(), CommandError> {
        if let Some(v) = self.tol {
            base.tol = v;
        }
        if let Some(v) = self.rank_tol {
            base.rank_tol = v;
        }
        if let Some(v) = self.seed {
            base.seed = v;
        }
        if let Some(v) = self.newton_max_iter {
            base.newton_max_iter = v;
        }
        if let Some(v) = self.newton_tol {
            base.newton_tol = v;
        }
        if let Some(path) = &self.alpha0 {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CommandError::Invalid(format!("alpha0 file: {e}")))?;
            let poly = PolytopeFile::from_json(&text)?;
            base.alpha0_override = Some(poly.to_polytope(dim)?);
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a system file and write the solutions with diagnostics.
    Solve {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Print the mixed volume (generic torus root count) of a system file.
    MixedVolume { input: PathBuf },
    /// Generate a random system file.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nz: usize,
        #[arg(long)]
        d_max: i64,
        /// Share one support across all equations.
        #[arg(long)]
        unmixed: bool,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep the blended-facet family f2(e) and report residual ranges.
    DegenerateFamily {
        input: PathBuf,
        /// Facet index into the ambient ray list.
        #[arg(long)]
        facet: usize,
        /// Comma separated exponents e (mixing weight 10^-e).
        #[arg(long, value_delimiter = ',')]
        e_values: Vec<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Emit moment-map CSV data for solved results.
    PlotData {
        results: PathBuf,
        system: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_system(path: &PathBuf) -> Result<SystemFile, CommandError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(SystemFile::from_json(&text)?)
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CommandError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CommandError::Invalid(format!("{}: {e}", p.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn run() -> Result<i32, CommandError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            input,
            output,
            format,
            flags,
        } => {
            let file = read_system(&input)?;
            let mut opts = file.solve_options();
            flags.apply(&mut opts, file.dimension)?;
            let (report, results, code) = commands::run_solve(&file, &opts)?;
            let rendered = match format {
                OutputFormat::Json => results.to_json(),
                OutputFormat::Csv => results.to_csv(),
            };
            write_output(&output, &rendered)?;
            eprintln!(
                "delta={} k={} n_alpha0={} max_residual={:.2e} mean_digits={:.1} total_ms={:.1}",
                results.delta,
                results.k,
                results.n_alpha0,
                results.diagnostics.max_residual,
                results.diagnostics.mean_digits,
                report.timings.total_ms,
            );
            Ok(code)
        }
        Command::MixedVolume { input } => {
            let file = read_system(&input)?;
            let mv = commands::run_mixed_volume(&file)?;
            println!("{mv}");
            Ok(0)
        }
        Command::Generate {
            n,
            nz,
            d_max,
            unmixed,
            seed,
            output,
        } => {
            let spec = GeneratorSpec {
                n,
                nz,
                d_max,
                mode: if unmixed { Mode::Unmixed } else { Mode::Mixed },
                seed,
            };
            let file = generate(&spec).map_err(CommandError::Invalid)?;
            write_output(&output, &file.to_json())?;
            Ok(0)
        }
        Command::DegenerateFamily {
            input,
            facet,
            e_values,
            output,
            flags,
        } => {
            let file = read_system(&input)?;
            let mut opts = file.solve_options();
            flags.apply(&mut opts, file.dimension)?;
            let family = commands::run_degenerate_family(&file, facet, &e_values, &opts)?;
            let rendered = serde_json::to_string_pretty(&family).expect("family results serialize");
            write_output(&output, &rendered)?;
            for p in &family.points {
                eprintln!(
                    "e={:>5.1} r_min={:.3e} r_max={:.3e} near_boundary={} unrecovered={}",
                    p.e, p.r_min, p.r_max, p.near_boundary, p.unrecovered
                );
            }
            Ok(0)
        }
        Command::PlotData {
            results,
            system,
            output,
        } => {
            let rtext = std::fs::read_to_string(&results)
                .map_err(|e| CommandError::Invalid(format!("{}: {e}", results.display())))?;
            let results = ResultsFile::from_json(&rtext)?;
            let file = read_system(&system)?;
            let csv = commands::run_plot_data(&results, &file)?;
            write_output(&output, &csv)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // Cap on concurrent recovery tasks and batch solves.
    if let Ok(threads) = std::env::var("SOLVER_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
