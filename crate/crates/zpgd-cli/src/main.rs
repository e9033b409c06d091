//! Command-line front end: scenario ingestion, solver dispatch, case
//! reporting, profile and convergence exports, and plot-script emission.
//!
//! ```text
//! zpgd <mode> --config <path> [--out <prefix>]
//! zpgd batch --dir <path>
//! ```
//!
//! Exit codes: 0 success, 2 scenario validation error, 3 solver error.
//! Thread count follows `RAYON_NUM_THREADS`.

mod report;
mod scenario;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use scenario::{ConfigError, Mode, Scenario};
use std::path::{Path, PathBuf};
use zpgd::front_tracking::{classify_case, evolve_logged, ProblemData};
use zpgd::residual::{
    compare_fields, convergence_table, interior_residual_exact, mass_balance, Bump,
};
use zpgd::riemann::{solve_boundary_riemann, solve_interior_riemann, BoundaryRiemannData, InteriorRiemannData};
use zpgd::solution::{PiecewiseSolution, State};
use zpgd::textio::write_solution;
use zpgd::viscous::{solve_explicit, solve_pq_fd, Grid, PrimitiveData};

#[derive(Parser)]
#[command(name = "zpgd", about = "Zero-pressure gas dynamics in the quarter plane", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interior Riemann problem
    Riemann(RunArgs),
    /// Boundary Riemann problem (interior state from u_L, rho_L)
    #[command(name = "boundary-riemann")]
    BoundaryRiemann(RunArgs),
    /// Two-wave interaction by front tracking
    Interact(RunArgs),
    /// Viscous approximation on a grid
    Viscous(RunArgs),
    /// Weak-solution checks for the exact interaction solution
    Check(RunArgs),
    /// Viscosity ladder: residuals, distances, fitted orders
    Converge(RunArgs),
    /// Run every scenario file in a directory (in parallel)
    Batch {
        /// Directory of *.scenario files
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Scenario file (flat key-value text)
    #[arg(long)]
    config: PathBuf,
    /// Output prefix (defaults to the config path without extension)
    #[arg(long)]
    out: Option<String>,
}

enum RunError {
    Config(String),
    Solver(String),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e.0)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Riemann(a) => run_one(Mode::Riemann, &a),
        Command::BoundaryRiemann(a) => run_one(Mode::BoundaryRiemann, &a),
        Command::Interact(a) => run_one(Mode::Interact, &a),
        Command::Viscous(a) => run_one(Mode::Viscous, &a),
        Command::Check(a) => run_one(Mode::Check, &a),
        Command::Converge(a) => run_one(Mode::Converge, &a),
        Command::Batch { dir } => run_batch(&dir),
    };
    std::process::exit(code);
}

fn run_one(mode: Mode, args: &RunArgs) -> i32 {
    let prefix = args.out.clone().unwrap_or_else(|| {
        args.config
            .with_extension("")
            .to_string_lossy()
            .into_owned()
    });
    match run_scenario(mode, &args.config, &prefix) {
        Ok(()) => 0,
        Err(RunError::Config(msg)) => {
            eprintln!("scenario error: {msg}");
            2
        }
        Err(RunError::Solver(msg)) => {
            eprintln!("solver error: {msg}");
            3
        }
    }
}

fn run_batch(dir: &Path) -> i32 {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().map_or(false, |x| x == "scenario"))
            .collect(),
        Err(e) => {
            eprintln!("scenario error: cannot read directory {}: {e}", dir.display());
            return 2;
        }
    };
    files.sort();
    if files.is_empty() {
        eprintln!("scenario error: no .scenario files in {}", dir.display());
        return 2;
    }
    let codes: Vec<i32> = files
        .par_iter()
        .map(|path| {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("scenario error: {}: {e}", path.display());
                    return 2;
                }
            };
            let mode = match Scenario::parse(&text).map(|s| s.mode) {
                Ok(Some(m)) => m,
                Ok(None) => {
                    eprintln!("scenario error: {}: missing required field mode", path.display());
                    return 2;
                }
                Err(e) => {
                    eprintln!("scenario error: {}: {e}", path.display());
                    return 2;
                }
            };
            let prefix = path.with_extension("").to_string_lossy().into_owned();
            match run_scenario(mode, path, &prefix) {
                Ok(()) => 0,
                Err(RunError::Config(msg)) => {
                    eprintln!("scenario error: {}: {msg}", path.display());
                    2
                }
                Err(RunError::Solver(msg)) => {
                    eprintln!("solver error: {}: {msg}", path.display());
                    3
                }
            }
        })
        .collect();
    codes.into_iter().max().unwrap_or(0)
}

fn write_file(path: &str, contents: &str) -> Result<(), RunError> {
    std::fs::write(path, contents).map_err(|e| RunError::Solver(format!("writing {path}: {e}")))
}

fn emit_solution_outputs(
    sol: &PiecewiseSolution,
    events: &[zpgd::front_tracking::EventRecord],
    sc: &Scenario,
    prefix: &str,
    x_span: f64,
) -> Result<(), RunError> {
    write_file(&format!("{prefix}.solution.txt"), &write_solution(sol))?;
    write_file(
        &format!("{prefix}.events.txt"),
        &report::event_log(events, &sol.exits),
    )?;
    if !sc.profile_times.is_empty() {
        let nx = sc.grid_nx.unwrap_or(400);
        let table = report::profiles_table(sol, &sc.profile_times, x_span, nx)
            .map_err(RunError::Solver)?;
        write_file(&format!("{prefix}.profiles.dat"), &table)?;
        write_file(
            &format!("{prefix}.plot.gp"),
            &report::plot_script(prefix, sc.profile_times.len(), false),
        )?;
    }
    Ok(())
}

fn load(path: &Path, mode: Mode) -> Result<Scenario, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?;
    let sc = Scenario::parse(&text)?;
    if let Some(declared) = sc.mode {
        // the analysis modes all consume interaction scenarios
        let compatible = declared == mode
            || (declared == Mode::Interact
                && matches!(mode, Mode::Viscous | Mode::Check | Mode::Converge));
        if !compatible {
            return Err(RunError::Config(format!(
                "config declares mode {} but {} was requested",
                declared.name(),
                mode.name()
            )));
        }
    }
    Ok(sc)
}

fn problem_data(sc: &Scenario) -> Result<ProblemData, RunError> {
    let (u_l, rho_l, u_r, rho_r, x0) = sc.interior()?;
    let (u_b, rho_b) = sc.boundary()?;
    Ok(ProblemData {
        boundary: State::new(u_b, rho_b),
        left: State::new(u_l, rho_l),
        right: State::new(u_r, rho_r),
        x0,
        horizon: sc.horizon()?,
    })
}

fn span_of(data: &ProblemData) -> f64 {
    let umax = data
        .boundary
        .u
        .abs()
        .max(data.left.u.abs())
        .max(data.right.u.abs());
    data.x0 + umax * data.horizon + 1.0
}

fn run_scenario(mode: Mode, path: &Path, prefix: &str) -> Result<(), RunError> {
    let sc = load(path, mode)?;
    match mode {
        Mode::Riemann => {
            let (u_l, rho_l, u_r, rho_r, x0) = sc.interior()?;
            let horizon = sc.horizon()?;
            let sol = solve_interior_riemann(
                &InteriorRiemannData {
                    left: State::new(u_l, rho_l),
                    right: State::new(u_r, rho_r),
                    x0,
                },
                horizon,
            );
            let span = x0 + (u_l.abs().max(u_r.abs())) * horizon + 1.0;
            emit_solution_outputs(&sol, &[], &sc, prefix, span)
        }
        Mode::BoundaryRiemann => {
            let (u_b, rho_b) = sc.boundary()?;
            let u0 = sc
                .u_l
                .ok_or_else(|| RunError::Config("missing required field u_L".into()))?;
            let rho0 = sc
                .rho_l
                .ok_or_else(|| RunError::Config("missing required field rho_L".into()))?;
            if rho0 < 0.0 {
                return Err(RunError::Config("field rho_L: density must be >= 0".into()));
            }
            let horizon = sc.horizon()?;
            let sol = solve_boundary_riemann(
                &BoundaryRiemannData {
                    boundary: State::new(u_b, rho_b),
                    interior: State::new(u0, rho0),
                },
                horizon,
            );
            let span = (u_b.abs().max(u0.abs())) * horizon + 1.0;
            emit_solution_outputs(&sol, &[], &sc, prefix, span)
        }
        Mode::Interact => {
            let data = problem_data(&sc)?;
            let (sol, events) =
                evolve_logged(&data).map_err(|e| RunError::Solver(e.to_string()))?;
            emit_solution_outputs(&sol, &events, &sc, prefix, span_of(&data))
        }
        Mode::Viscous => {
            let data = problem_data(&sc)?;
            let eps = sc.epsilon()?;
            let prim = PrimitiveData::interaction(
                data.boundary.u,
                data.boundary.rho,
                data.left.u,
                data.left.rho,
                data.right.u,
                data.right.rho,
                data.x0,
            );
            let horizon = data.horizon;
            let x_max = sc
                .x_max
                .unwrap_or_else(|| span_of(&data) + 10.0 * (eps * horizon).sqrt());
            let nx = sc.grid_nx.unwrap_or(400);
            let nt = sc.grid_nt.unwrap_or(8).max(1);
            let ts: Vec<f64> = (1..=nt).map(|k| horizon * k as f64 / nt as f64).collect();
            let field = match sc.solver.as_deref() {
                None | Some("explicit") => {
                    let grid = Grid::uniform(0.0, x_max, nx, ts);
                    solve_explicit(&prim, eps, &grid)
                        .map_err(|e| RunError::Solver(e.to_string()))?
                }
                Some("fd") => {
                    let dt = horizon / (nt.max(2) as f64 * 100.0);
                    solve_pq_fd(&prim, eps, x_max, nx, dt, &ts)
                        .map_err(|e| RunError::Solver(e.to_string()))?
                }
                Some(other) => {
                    return Err(RunError::Config(format!(
                        "field solver: unknown solver {other:?} (explicit or fd)"
                    )))
                }
            };
            write_file(&format!("{prefix}.field.dat"), &report::field_table(&field))?;
            // interior comparison against the tracked solution
            let (sol, _) = evolve_logged(&data).map_err(|e| RunError::Solver(e.to_string()))?;
            let cmp = compare_fields(&sol, &field, 0.2)
                .map_err(|e| RunError::Solver(e.to_string()))?;
            write_file(&format!("{prefix}.compare.dat"), &report::compare_table(&cmp))?;
            write_file(
                &format!("{prefix}.plot.gp"),
                &report::plot_script(prefix, 0, true),
            )?;
            Ok(())
        }
        Mode::Check => {
            let data = problem_data(&sc)?;
            let (sol, _) = evolve_logged(&data).map_err(|e| RunError::Solver(e.to_string()))?;
            let violations = sol.validate();
            let horizon = data.horizon;
            let span = span_of(&data);
            let label = classify_case(&data);
            let mut rows = vec![
                ("violations".to_string(), violations.len() as f64),
                (format!("case_{}_{}", label.case, label.subcase), 1.0),
            ];
            for (i, bump) in [
                Bump::new(0.3 * span, 0.2 * span),
                Bump::new(0.5 * span, 0.3 * span),
                Bump::new(0.6 * span, 0.2 * span),
            ]
            .iter()
            .enumerate()
            {
                let (ru, rr) =
                    interior_residual_exact(&sol, bump, (horizon * 0.01, horizon * 0.99), 64);
                rows.push((format!("residual_u_bump{i}"), ru));
                rows.push((format!("residual_rho_bump{i}"), rr));
            }
            for (i, frac) in [(0, 0.25f64), (1, 0.75f64)] {
                let defect = mass_balance(&sol, span + 1.0, horizon * 0.05, horizon * frac);
                rows.push((format!("mass_defect_window{i}"), defect));
            }
            write_file(&format!("{prefix}.residuals.dat"), &report::check_table(&rows))?;
            if !violations.is_empty() {
                return Err(RunError::Solver(format!(
                    "solution failed validation: {violations:?}"
                )));
            }
            Ok(())
        }
        Mode::Converge => {
            let data = problem_data(&sc)?;
            let eps_list = sc.epsilon_list()?;
            let (sol, _) = evolve_logged(&data).map_err(|e| RunError::Solver(e.to_string()))?;
            let prim = PrimitiveData::interaction(
                data.boundary.u,
                data.boundary.rho,
                data.left.u,
                data.left.rho,
                data.right.u,
                data.right.rho,
                data.x0,
            );
            let span = span_of(&data);
            let nx = sc.grid_nx.unwrap_or(600);
            let nt = sc.grid_nt.unwrap_or(7).max(5);
            let t_mid = 0.5 * data.horizon;
            let dt = 0.01 * data.horizon;
            let ts: Vec<f64> = (0..nt)
                .map(|k| t_mid + dt * (k as f64 - (nt - 1) as f64 / 2.0))
                .collect();
            let grid = Grid::uniform(0.0, span, nx, ts);
            let bumps = [
                Bump::new(0.4 * span, 0.25 * span),
                Bump::new(0.6 * span, 0.25 * span),
            ];
            let rep = convergence_table(&prim, &sol, &eps_list, &bumps, &grid, 0.2)
                .map_err(|e| RunError::Solver(e.to_string()))?;
            write_file(
                &format!("{prefix}.converge.dat"),
                &report::convergence_report_table(&rep),
            )?;
            Ok(())
        }
    }
}
