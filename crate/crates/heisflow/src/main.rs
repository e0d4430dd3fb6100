//! Command-line front end: verification suites, mesh/CSV export, geodesic
//! and graph-flow sampling. All numeric work lives in the library; this
//! binary parses arguments, routes to it, and writes files.
//!
//! Exit codes: 0 success / all checks passed, 1 verification failure,
//! 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use heisflow::geodesic::{
    geodesic_closed_form, geodesic_horizontal, geodesic_integrate, geodesic_residual,
    GeodesicParams,
};
use heisflow::graph_flow::{
    compare_to_oracle, evolve, grim_reaper_profile, grim_reaper_solution, StepSize,
};
use heisflow::io::{
    mesh_filename, write_curve_csv, write_geodesic_csv, write_obj, write_profile_csv,
    write_residual_csv, MeshGrid, ResidualSummary,
};
use heisflow::soliton::{soliton_residual, SolitonSpec, SolitonSpecFile};
use heisflow::surface::linspace;
use heisflow::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "heisflow",
    about = "Heisenberg-group geometry and mean curvature flow soliton verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print one line per check.
    Verify(VerifyArgs),
    /// Export OBJ meshes of a soliton family at the given times.
    Mesh(MeshArgs),
    /// Export a CSV grid of soliton residuals r = ⟨∂ₜΦ,N⟩ − H.
    Residual(ResidualArgs),
    /// Sample geodesics to CSV (columns u,x,y,z).
    Geodesic(GeodesicArgs),
    /// Evolve the graph flow fₜ = f″/(2(1+f′²)) and export the final
    /// profile to CSV (columns u,f).
    Flow(FlowArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: core, isometry, geodesic, thm1, thm2, flow, all.
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// RNG seed for the sampled checks.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeshArgs {
    /// Soliton spec JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Comma-separated list of t values, e.g. --t 0,0.5,1
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<f64>,
    /// Grid resolution in u (≥ 2).
    #[arg(long, default_value_t = 40)]
    nu: usize,
    /// Grid resolution in v (≥ 2).
    #[arg(long, default_value_t = 40)]
    nv: usize,
    /// Output directory for <family>_t<value>.obj files.
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ResidualArgs {
    /// Soliton spec JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Time at which to evaluate the residual grid.
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long, default_value_t = 50)]
    nu: usize,
    #[arg(long, default_value_t = 50)]
    nv: usize,
    /// Output CSV path; a JSON summary sidecar is written next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GeodesicArgs {
    /// Amplitude parameter of the closed-form family (horizontal slope for
    /// C = 0).
    #[arg(long = "A")]
    a: f64,
    /// Phase parameter (second slope for C = 0).
    #[arg(long = "B", default_value_t = 0.0)]
    b: f64,
    /// Vertical velocity component; C = 0 selects the horizontal line
    /// family.
    #[arg(long = "C", default_value_t = 0.0)]
    c: f64,
    /// Parameter length to cover.
    #[arg(long)]
    len: f64,
    /// Number of CSV samples.
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Also integrate numerically with this many RK4 steps and report the
    /// deviation from the closed form on stderr.
    #[arg(long)]
    steps: Option<usize>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlowArgs {
    /// Start from the Grim Reaper profile (the only built-in initial datum).
    #[arg(long)]
    grim: bool,
    /// Flow speed of the reference translating solution.
    #[arg(long = "A", default_value_t = 0.5)]
    a: f64,
    /// Final time.
    #[arg(long = "T")]
    t_end: f64,
    /// Spatial step.
    #[arg(long, default_value_t = 2e-3)]
    dx: f64,
    /// Half-width of the u-interval.
    #[arg(long = "u-max", default_value_t = 1.3)]
    u_max: f64,
    /// Output CSV path for the final profile (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HEISFLOW_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Mesh(args) => cmd_mesh(args).map(|()| ExitCode::SUCCESS),
        Command::Residual(args) => cmd_residual(args).map(|()| ExitCode::SUCCESS),
        Command::Geodesic(args) => cmd_geodesic(args).map(|()| ExitCode::SUCCESS),
        Command::Flow(args) => cmd_flow(args).map(|()| ExitCode::SUCCESS),
    }
}

fn load_spec(path: &PathBuf) -> Result<SolitonSpec> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading spec file {}", path.display()))?;
    let file: SolitonSpecFile = serde_json::from_str(&text).context("parsing soliton spec JSON")?;
    file.build().context("building soliton spec")
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let report = run_suite(args.suite, args.seed);
    let mut stdout = std::io::stdout().lock();
    for line in report.lines() {
        writeln!(stdout, "{line}")?;
    }
    writeln!(
        stdout,
        "suite '{}' (seed {}): {}",
        report.suite,
        report.seed,
        if report.passed {
            "all checks passed"
        } else {
            "FAILURES present"
        }
    )?;
    if let Some(path) = args.out {
        fs::write(&path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing report to {}", path.display()))?;
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_mesh(args: MeshArgs) -> Result<()> {
    if args.nu < 2 || args.nv < 2 {
        bail!(
            "mesh grid must be at least 2×2 (got {}×{})",
            args.nu,
            args.nv
        );
    }
    let spec = load_spec(&args.spec)?;
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for &t in &args.t {
        let mesh = MeshGrid::sample(&spec, args.nu, args.nv, t)?;
        let path = args.out_dir.join(mesh_filename(spec.family.name(), t));
        let mut file =
            fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        write_obj(&mesh, &mut file)?;
        eprintln!(
            "wrote {} ({} vertices, {} triangles)",
            path.display(),
            mesh.nu() * mesh.nv(),
            2 * (mesh.nu() - 1) * (mesh.nv() - 1)
        );
    }
    Ok(())
}

fn cmd_residual(args: ResidualArgs) -> Result<()> {
    if args.nu < 2 || args.nv < 2 {
        bail!(
            "residual grid must be at least 2×2 (got {}×{})",
            args.nu,
            args.nv
        );
    }
    let spec = load_spec(&args.spec)?;
    let us = spec.aligned_u_grid(args.nu);
    let vs = spec.v_grid(args.nv);
    let report = soliton_residual(&spec, &us, &vs, args.t);
    let mut file =
        fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_residual_csv(&report, &mut file)?;
    let summary = ResidualSummary::of(&report);
    let sidecar = args.out.with_extension("csv.json");
    fs::write(&sidecar, serde_json::to_string_pretty(&summary)?)
        .with_context(|| format!("writing {}", sidecar.display()))?;
    eprintln!(
        "residual at t={}: max |r| = {:.3e}, mean |r| = {:.3e}, degenerate points = {}",
        report.t, report.max_abs, report.mean_abs, report.degenerate_count
    );
    Ok(())
}

fn out_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)
        }
        None => Box::new(std::io::stdout().lock()),
    })
}

fn cmd_geodesic(args: GeodesicArgs) -> Result<()> {
    if args.samples < 2 {
        bail!("need at least 2 samples");
    }
    let grid = linspace(0.0, args.len, args.samples);
    let mut out = out_writer(&args.out)?;
    if args.c == 0.0 {
        let rows = grid
            .iter()
            .map(|&u| (u, geodesic_horizontal(args.a, args.b, u)));
        write_curve_csv(rows, &mut out)?;
        let res = geodesic_residual(|u| geodesic_horizontal(args.a, args.b, u), &grid)?;
        eprintln!("horizontal line family; geodesic residual = {res:.3e}");
        return Ok(());
    }
    let params = GeodesicParams::new(args.a, args.b, args.c)?;
    let rows = grid.iter().map(|&u| (u, geodesic_closed_form(&params, u)));
    write_curve_csv(rows, &mut out)?;
    let res = geodesic_residual(|u| geodesic_closed_form(&params, u), &grid)?;
    eprintln!("closed-form geodesic residual = {res:.3e}");
    if let Some(steps) = args.steps {
        let path = geodesic_integrate(
            &heisflow::Point::ORIGIN,
            &params.initial_velocity(),
            args.len,
            steps,
        )?;
        let worst = path
            .samples
            .iter()
            .map(|s| s.point.chart_dist(&geodesic_closed_form(&params, s.u)))
            .fold(0.0, f64::max);
        eprintln!("rk4 ({steps} steps) vs closed form: max deviation = {worst:.3e}");
        if let Some(out_path) = &args.out {
            let rk_path = out_path.with_extension("rk4.csv");
            let mut f = fs::File::create(&rk_path)
                .with_context(|| format!("creating {}", rk_path.display()))?;
            write_geodesic_csv(&path, &mut f)?;
            eprintln!("wrote {}", rk_path.display());
        }
    }
    Ok(())
}

fn cmd_flow(args: FlowArgs) -> Result<()> {
    if !args.grim {
        bail!("only the --grim initial profile is built in");
    }
    if args.a == 0.0 {
        bail!("A must be nonzero");
    }
    let profile = grim_reaper_profile(args.a, args.u_max, args.dx)?;
    let snapshots = evolve(&profile, StepSize::Auto, args.t_end, 0)?;
    let last = snapshots
        .last()
        .expect("evolution returns at least one profile");
    let err = compare_to_oracle(last, grim_reaper_solution(args.a));
    let mut out = out_writer(&args.out)?;
    write_profile_csv(last, &mut out)?;
    eprintln!(
        "evolved to t={} (dx={:.1e}): interior L∞ error vs translating solution = {err:.3e}",
        last.t, args.dx
    );
    Ok(())
}
