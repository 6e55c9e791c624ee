use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;

use input::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "wronski",
    version,
    about = "Foldable triangulations, Wronski systems and their real solutions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for the random homotopy constant.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tracker settings as JSON; individual flags below override it.
    #[arg(long, global = true)]
    pub settings: Option<PathBuf>,
    #[arg(long, global = true)]
    pub newton_tol: Option<f64>,
    #[arg(long, global = true)]
    pub refine_tol: Option<f64>,
    #[arg(long, global = true)]
    pub dedupe_tol: Option<f64>,
    #[arg(long, global = true)]
    pub real_tol: Option<f64>,
    #[arg(long, global = true)]
    pub torus_tol: Option<f64>,
    #[arg(long, global = true)]
    pub singular_cond: Option<f64>,
    /// Track paths on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Plot width in pixels.
    #[arg(long, global = true, default_value_t = 800)]
    pub width: u32,
    /// Plot height in pixels.
    #[arg(long, global = true, default_value_t = 800)]
    pub height: u32,
    /// Marching-squares cells per axis for implicit curves.
    #[arg(long, global = true, num_args = 2, value_names = ["NX", "NY"], default_values_t = [400, 400])]
    pub grid: Vec<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct PointsArgs {
    /// Lattice points of K times the standard D-simplex.
    #[arg(long, num_args = 2, value_names = ["D", "K"], conflicts_with = "points")]
    pub simplex: Option<Vec<u32>>,
    /// Point configuration JSON file, `-` for standard input.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct LiftedArgs {
    #[command(flatten)]
    pub points: PointsArgs,
    /// Comma-separated integer heights, one per point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lifting_file")]
    pub lifting: Option<String>,
    /// Lifting JSON file.
    #[arg(long)]
    pub lifting_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    #[command(flatten)]
    pub lifted: LiftedArgs,
    /// Coefficient rows separated by `;`, entries by `,`; one entry per
    /// color class, classes ordered by their smallest point index.
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// Value substituted for s.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub s: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the lattice points of a dilated simplex.
    Latpoints(PointsArgs),
    /// Regular subdivision induced by a lifting.
    Subdivide(LiftedArgs),
    /// Foldability, signature and vertex coloring of the induced triangulation.
    Analyze {
        #[command(flatten)]
        lifted: LiftedArgs,
        /// Fail with a domain error when the triangulation is not foldable.
        #[arg(long)]
        require_foldable: bool,
    },
    /// Generators of the Wronski center ideal.
    CenterIdeal {
        #[command(flatten)]
        lifted: LiftedArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: commands::Format,
    },
    /// Wronski system for given coefficients and value of s.
    WronskiSystem {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: commands::Format,
    },
    /// Solve a square polynomial system by homotopy continuation.
    Solve {
        /// System JSON file, `-` for standard input.
        #[arg(long, visible_alias = "in")]
        system: PathBuf,
        /// Keep only solutions with all coordinates nonzero.
        #[arg(long)]
        only_torus: bool,
    },
    /// Check that no real solution has its s-coordinate in (0, 1).
    CheckInterval {
        /// Solutions JSON file, `-` for standard input.
        #[arg(long, visible_alias = "in")]
        solutions: PathBuf,
        /// Coordinate holding s; defaults to the last one.
        #[arg(long)]
        s_index: Option<usize>,
    },
    /// Mixed volume of the Newton polytopes of a system.
    MixedVolume {
        /// System JSON file, `-` for standard input.
        #[arg(long, visible_alias = "in")]
        system: PathBuf,
    },
    /// Render SVG figures.
    #[command(subcommand)]
    Plot(PlotCommand),
    /// Run the whole analysis: triangulation, foldability, center ideal,
    /// Wronski system and their solutions.
    Pipeline {
        #[command(flatten)]
        system: SystemArgs,
        /// Also write JSON and SVG artifacts into this directory.
        #[arg(long)]
        artifacts: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum PlotCommand {
    /// The triangulation with facets filled by side and vertices by color.
    Triangulation(LiftedArgs),
    /// Real zero sets of a system in two variables.
    Curves {
        #[arg(long)]
        system: PathBuf,
        /// Solutions JSON whose real solutions are marked.
        #[arg(long)]
        solutions: Option<PathBuf>,
        /// Plot window as XMIN XMAX YMIN YMAX.
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["XMIN", "XMAX", "YMIN", "YMAX"])]
        window: Option<Vec<f64>>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Latpoints(p) => commands::latpoints(&p),
        Command::Subdivide(l) => commands::subdivide(&l),
        Command::Analyze {
            lifted,
            require_foldable,
        } => commands::analyze(&lifted, require_foldable),
        Command::CenterIdeal { lifted, format } => commands::center_ideal(&lifted, format),
        Command::WronskiSystem { system, format } => commands::wronski_system(&system, format),
        Command::Solve { system, only_torus } => commands::solve(g, &system, only_torus),
        Command::CheckInterval { solutions, s_index } => {
            commands::check_interval(&solutions, s_index)
        }
        Command::MixedVolume { system } => commands::mixed_volume(&system),
        Command::Plot(PlotCommand::Triangulation(l)) => commands::plot_triangulation(g, &l),
        Command::Plot(PlotCommand::Curves {
            system,
            solutions,
            window,
        }) => commands::plot_curves(g, &system, solutions.as_deref(), window.as_deref()),
        Command::Pipeline { system, artifacts } => {
            commands::pipeline(g, &system, artifacts.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.global.out.clone();
    let result = run(cli).and_then(|text| input::emit(out.as_deref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
