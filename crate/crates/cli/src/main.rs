//! Multi-command toolkit for total-curvature experiments: shape generation,
//! surface sampling, curvature estimation on meshes and point clouds,
//! curvature-weighted decimation, metric evaluation, and canned
//! reproduction protocols.
//!
//! Exit codes: 0 on success, 2 on usage/validation errors, 3 on runtime
//! pipeline failures. Every run echoes its resolved configuration to
//! standard error; metric values go to standard output as `key=value`
//! lines.

mod commands;
mod surface_spec;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

/// Errors split by exit code.
pub enum CliError {
    /// Flag validation failed (exit 2).
    Usage(String),
    /// The pipeline itself failed (exit 3).
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Runtime(e.into())
    }
}

pub type CmdResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "totalcurv",
    about = "Total curvature estimation on meshes and point clouds",
    version
)]
struct Cli {
    /// Cap the rayon thread pool (outputs are identical for any value).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an evaluation shape as OBJ (+ UV sidecar).
    Gen {
        #[command(subcommand)]
        shape: GenShape,
    },
    /// Sample a point cloud from a mesh surface.
    Sample(SampleArgs),
    /// Estimate total curvature.
    Curvature {
        #[command(subcommand)]
        target: CurvatureTarget,
    },
    /// Decimate a mesh with optional curvature weighting.
    Decimate(DecimateArgs),
    /// Evaluate metrics.
    Eval {
        #[command(subcommand)]
        what: EvalKind,
    },
    /// Run a canned end-to-end reproduction protocol.
    Repro {
        #[command(subcommand)]
        scenario: ReproScenario,
    },
}

#[derive(Subcommand)]
enum GenShape {
    /// Icosahedron-subdivided sphere.
    Sphere {
        /// Subdivision level (faces: 20·4^s).
        #[arg(long)]
        subdiv: u32,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Grid-triangulated torus.
    Torus {
        /// Major radius.
        #[arg(long = "R")]
        major: f64,
        /// Minor radius.
        #[arg(long = "r")]
        minor: f64,
        /// Grid resolution N (N×N vertices, 2N² faces).
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tube swept along a knot curve.
    Knot {
        #[arg(long, value_enum)]
        kind: KnotKind,
        #[arg(long, default_value_t = 0.25)]
        tube_radius: f64,
        /// Samples along the curve.
        #[arg(long, default_value_t = 256)]
        nu: usize,
        /// Samples around the tube.
        #[arg(long, default_value_t = 24)]
        nv: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KnotKind {
    /// (2,3) torus knot.
    Torus23,
    /// Figure-eight knot.
    Fig8,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SampleMode {
    Uniform,
    Nonuniform,
    Sparse,
}

#[derive(Args)]
struct SampleArgs {
    /// Input mesh (OBJ).
    mesh: PathBuf,
    #[arg(long, value_enum, default_value_t = SampleMode::Uniform)]
    mode: SampleMode,
    /// Target point count (±10%; nonuniform is exact).
    #[arg(long)]
    count: usize,
    /// Oversampling factor for the nonuniform mode.
    #[arg(long, default_value_t = 2.0)]
    oversample: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output cloud (.ply binary or .xyz by extension).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum CurvatureTarget {
    /// Per-triangle total curvature on a mesh.
    Mesh(MeshCurvatureArgs),
    /// Per-point curvature density on a point cloud.
    Pcd(PcdCurvatureArgs),
}

#[derive(Args)]
struct MeshCurvatureArgs {
    /// Input mesh (OBJ).
    mesh: PathBuf,
    /// Normal source: `auto` (area-weighted), `analytic` (needs --surface),
    /// or a PLY file with per-vertex normals.
    #[arg(long, default_value = "auto")]
    normals: String,
    /// Output granularity.
    #[arg(long, value_enum, default_value_t = Per::Triangle)]
    per: Per,
    /// Analytic surface, e.g. `sphere:1`, `torus:2:1`, `knot:torus23:0.25`.
    #[arg(long)]
    surface: Option<String>,
    /// UV sidecar path (defaults to `<mesh stem>.uv.csv`).
    #[arg(long)]
    uv: Option<PathBuf>,
    /// CSV output path.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Colorized PLY output path.
    #[arg(long)]
    ply: Option<PathBuf>,
    /// Percentile clip for the color map.
    #[arg(long, default_value_t = 0.0)]
    clip_lo: f64,
    #[arg(long, default_value_t = 100.0)]
    clip_hi: f64,
}

#[derive(Args)]
struct PcdCurvatureArgs {
    /// Input cloud (.ply or .xyz).
    cloud: PathBuf,
    /// Neighborhood size (default: 20 for ≥5000 points, else 10).
    #[arg(long)]
    k: Option<usize>,
    /// Normal source: `est` (PCA + MST orientation) or `file` (from input).
    #[arg(long, default_value = "est")]
    normals: String,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    ply: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    clip_lo: f64,
    #[arg(long, default_value_t = 100.0)]
    clip_hi: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Per {
    Triangle,
    Vertex,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Qslim,
    EdgeMidpoint,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

#[derive(Args)]
struct DecimateArgs {
    /// Input mesh (OBJ).
    mesh: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Qslim)]
    method: Method,
    #[arg(long)]
    target_faces: usize,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    curvature_weight: OnOff,
    /// Weight floor ε added to every vertex weight.
    #[arg(long, default_value_t = 1e-3)]
    weight_floor: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum EvalKind {
    /// RMSE between the first value columns of two CSV files.
    Rmse { estimate: PathBuf, truth: PathBuf },
    /// Sampled symmetric Hausdorff distance between two meshes.
    Hausdorff {
        mesh_a: PathBuf,
        mesh_b: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ReproScenario {
    /// Spheres s∈{4,5,6} and tori N∈{9,18,36}: estimate vs analytic ground
    /// truth, Markdown table plus CSV dumps.
    Table3 {
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Torus point-cloud matrix {uniform, nonuniform, sparse} × {gt, est}
    /// normals.
    PcdTorus {
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Dense-regime point count (sparse uses a tenth).
        #[arg(long, default_value_t = 20_000)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --threads ignored");
        }
    }
    let result = match cli.command {
        Command::Gen { shape } => commands::gen(shape),
        Command::Sample(args) => commands::sample(args),
        Command::Curvature { target } => match target {
            CurvatureTarget::Mesh(args) => commands::curvature_mesh(args),
            CurvatureTarget::Pcd(args) => commands::curvature_pcd(args),
        },
        Command::Decimate(args) => commands::decimate(args),
        Command::Eval { what } => commands::eval(what),
        Command::Repro { scenario } => commands::repro(scenario),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(error)) => {
            eprintln!("error: {error:#}");
            ExitCode::from(3)
        }
    }
}
