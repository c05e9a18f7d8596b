//! The experiment commands and their outputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::config::{parse_config, ExperimentConfig, InitialKind, OutputFormat};
use super::persist::{
    decode_f64, encode_checkpoints, read_bytes, read_text, read_trajectory, unix_seconds, write_atomic, RunDirectory,
    RunManifest, TrajectoryMeta, CONFIG_FILE, DIAGNOSTICS_FILE, MANIFEST_FILE, TRAJECTORY_FILE, TRAJECTORY_META_FILE,
};
use crate::diagnostics::{compute_rows, remainder_suite, rows_to_csv};
use crate::error::{Error, Result};
use crate::evolution::{deep_water_gap, evolve_partial, shallow_water_gap, EvolutionConfig, Flow};
use crate::inequality::{remainder_scaling, run_suite, RatioReport, TestBattery};
use crate::soliton::{evenness_defect, petviashvili_solve, propagation_error, SolitonSpec};
use crate::spectral::operators::q_operator;
use crate::spectral::{Grid, RealField};

pub const DIAGNOSE_FILE: &str = "diagnose.csv";
pub const INEQUALITY_FILE: &str = "inequalities.csv";
pub const INEQUALITY_SUMMARY_FILE: &str = "inequalities_summary.json";
pub const SCALING_FILE: &str = "remainder_scaling.csv";
pub const LIMITS_FILE: &str = "limits.csv";
pub const SOLITON_PROFILE_FILE: &str = "soliton_profile.csv";
pub const SOLITON_REPORT_FILE: &str = "soliton.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Soliton,
    Limits,
    CheckInequalities,
    Diagnose,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Soliton => "soliton",
            Command::Limits => "limits",
            Command::CheckInequalities => "check-inequalities",
            Command::Diagnose => "diagnose",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Command::Simulate, Command::Soliton, Command::Limits, Command::CheckInequalities, Command::Diagnose]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Worker count recorded in the manifest; the pool itself is set up by the caller.
    pub threads: Option<usize>,
}

/// `<output.directory>/<command>-<first 16 hex digits of the config hash>`.
pub fn run_directory(config: &ExperimentConfig, command: Command) -> PathBuf {
    Path::new(&config.output.directory).join(format!("{}-{}", command.name(), &config.content_hash()[..16]))
}

pub fn build_grid(config: &ExperimentConfig) -> Result<Grid> {
    Grid::new(config.grid.n_points, config.grid.length)
}

pub fn evolution_config(config: &ExperimentConfig, grid: &Grid) -> Result<EvolutionConfig> {
    Ok(EvolutionConfig::new(config.model, grid.clone(), config.time.dt, config.time.t_end)?
        .with_integrator(config.time.integrator)
        .with_stride(config.time.checkpoint_stride)
        .with_dealias(config.time.dealias))
}

/// Initial field described by `[initial]`.
pub fn initial_datum(config: &ExperimentConfig, grid: &Grid) -> Result<RealField> {
    let init = &config.initial;
    match init.kind {
        InitialKind::Gaussian => Ok(RealField::from_fn(grid, |x| {
            let y = (x - init.center) / init.width;
            init.amplitude * (-y * y).exp()
        })),
        InitialKind::Soliton => {
            let spec = SolitonSpec::new(config.model, init.soliton_speed, grid.clone())?;
            let result = petviashvili_solve(&spec)?;
            if !result.converged {
                return Err(Error::Divergence { iterations: result.iterations, residual: result.residual_norm });
            }
            let shift = (init.center / grid.spacing()).round() as isize;
            Ok(result.profile.rotated(shift).with_time(0.0))
        }
        InitialKind::File => {
            let path = PathBuf::from(init.path.as_deref().unwrap_or_default());
            let values = decode_f64(&read_bytes(&path)?, &path)?;
            if values.len() != grid.n_points() {
                return Err(Error::Format {
                    path,
                    reason: format!("{} samples for a grid of {} points", values.len(), grid.n_points()),
                });
            }
            RealField::new(grid, values)
        }
    }
}

struct Session {
    dir: RunDirectory,
    warnings: Vec<String>,
}

/// Execute `command` and persist its outputs and manifest.
///
/// The manifest is written last; on failure it records `complete = false` and
/// the error is returned after partial outputs are saved.
pub fn run(command: Command, config: &ExperimentConfig, options: &RunOptions) -> Result<RunManifest> {
    if command == Command::Diagnose {
        return Err(Error::InvalidParameter("diagnose works on an existing run directory".into()));
    }
    let started = unix_seconds();
    let path = run_directory(config, command);
    let mut session = Session { dir: RunDirectory::create(path)?, warnings: Vec::new() };
    session.dir.write(CONFIG_FILE, config.emit().as_bytes())?;
    let grid = build_grid(config)?;
    let clamped = q_operator(&config.model, &grid).clamped_samples();
    if clamped > 0 {
        session.warnings.push(format!("{clamped} wavenumber(s) with negative Omega' clamped to zero in q"));
    }

    let result = match command {
        Command::Simulate => simulate(config, &grid, &mut session),
        Command::Soliton => soliton(config, &grid, &mut session),
        Command::Limits => limits(config, &grid, &mut session),
        Command::CheckInequalities => inequalities(config, &grid, &mut session),
        Command::Diagnose => unreachable!(),
    };

    let manifest = RunManifest {
        command: command.name().into(),
        config: config.emit(),
        config_hash: config.content_hash(),
        code_version: env!("CARGO_PKG_VERSION").into(),
        seed: config.seed,
        threads: options.threads,
        started_unix: started,
        finished_unix: unix_seconds(),
        complete: result.is_ok(),
        abort: result.as_ref().err().map(|e| e.to_string()),
        warnings: session.warnings,
        clamped_omega_prime: clamped,
        files: session.dir.files.clone(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Format { path: MANIFEST_FILE.into(), reason: e.to_string() })?;
    text.push('\n');
    write_atomic(&session.dir.path.join(MANIFEST_FILE), text.as_bytes())?;
    result.map(|_| manifest)
}

fn simulate(config: &ExperimentConfig, grid: &Grid, session: &mut Session) -> Result<()> {
    let u0 = initial_datum(config, grid)?;
    let evo = evolution_config(config, grid)?;
    let (trajectory, abort) = evolve_partial(&evo, Flow::Ilw, &u0);
    session.warnings.extend(trajectory.warnings().iter().cloned());
    let checkpoints = trajectory.checkpoints();
    if config.output.wants(OutputFormat::Binary) {
        session.dir.write(TRAJECTORY_FILE, &encode_checkpoints(checkpoints))?;
        let meta = TrajectoryMeta {
            n_points: grid.n_points(),
            length: grid.length(),
            delta: config.model.delta,
            flow: "ilw".into(),
            dtype: "f64-le".into(),
            times: trajectory.times(),
        };
        session.dir.write_json(TRAJECTORY_META_FILE, &meta)?;
    }
    if config.output.wants(OutputFormat::Csv) {
        let d = &config.diagnostics;
        let rows = compute_rows(&config.model, &d.virial, &d.flags, checkpoints)?;
        session.dir.write(DIAGNOSTICS_FILE, rows_to_csv(&rows).as_bytes())?;
    }
    if let Some(e) = abort {
        return Err(e);
    }
    if config.inequalities.enabled {
        inequalities(config, grid, session)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SolitonSummary {
    delta: f64,
    speed: f64,
    residual_norm: f64,
    iterations: usize,
    converged: bool,
    stabilizer: f64,
    evenness_defect: f64,
    propagation_time: f64,
    shape_error: Option<f64>,
    shift: Option<f64>,
    fitted_speed: Option<f64>,
}

fn soliton(config: &ExperimentConfig, grid: &Grid, session: &mut Session) -> Result<()> {
    let spec = SolitonSpec::new(config.model, config.initial.soliton_speed, grid.clone())?;
    let result = petviashvili_solve(&spec)?;
    let mut profile = String::from("x,Q\n");
    for (x, q) in grid.nodes().iter().zip(result.profile.samples()) {
        let _ = writeln!(profile, "{x:.16e},{q:.16e}");
    }
    session.dir.write(SOLITON_PROFILE_FILE, profile.as_bytes())?;
    let mut summary = SolitonSummary {
        delta: config.model.delta,
        speed: config.initial.soliton_speed,
        residual_norm: result.residual_norm,
        iterations: result.iterations,
        converged: result.converged,
        stabilizer: result.stabilizer,
        evenness_defect: evenness_defect(&result.profile),
        propagation_time: config.time.t_end,
        shape_error: None,
        shift: None,
        fitted_speed: None,
    };
    if !result.converged {
        session.dir.write_json(SOLITON_REPORT_FILE, &summary)?;
        return Err(Error::Divergence { iterations: result.iterations, residual: result.residual_norm });
    }
    if config.time.t_end > 0.0 {
        let report = propagation_error(&result, config.time.t_end, config.time.dt)?;
        summary.shape_error = Some(report.shape_error);
        summary.shift = Some(report.shift);
        summary.fitted_speed = Some(report.fitted_speed);
        session.warnings.extend(report.warnings);
    }
    session.dir.write_json(SOLITON_REPORT_FILE, &summary)
}

fn limits(config: &ExperimentConfig, grid: &Grid, session: &mut Session) -> Result<()> {
    let u0 = initial_datum(config, grid)?;
    let lim = &config.limits;
    let template = evolution_config(config, grid)?.with_t_end(lim.horizon);
    let mut csv = String::from("regime,delta,t,gap\n");
    for &delta in &lim.deep_deltas {
        let gap = deep_water_gap(&template, delta, &u0, lim.horizon)?;
        let _ = writeln!(csv, "deep,{delta:.16e},{:.16e},{gap:.16e}", lim.horizon);
    }
    for &delta in &lim.shallow_deltas {
        let gap = shallow_water_gap(&template, delta, &u0, lim.horizon, config.time.dt, lim.dt_kdv)?;
        let _ = writeln!(csv, "shallow,{delta:.16e},{:.16e},{gap:.16e}", lim.horizon);
    }
    session.dir.write(LIMITS_FILE, csv.as_bytes())
}

#[derive(Serialize)]
struct ReportSummary<'a> {
    lemma: &'a str,
    cases: usize,
    excluded: usize,
    max_ratio: f64,
    refinement_factor: Option<f64>,
    stable: bool,
}

#[derive(Serialize)]
struct InequalitySummary<'a> {
    seed: u64,
    battery_size: usize,
    /// Only the `p = 2` / `p = ∞` exponent corner is exercised.
    untested: &'a str,
    reports: Vec<ReportSummary<'a>>,
    remainder_scaling_cases: usize,
    remainder_scaling_decreasing: usize,
}

fn inequalities(config: &ExperimentConfig, grid: &Grid, session: &mut Session) -> Result<()> {
    let battery = TestBattery::generate(config.seed, config.inequalities.battery_size);
    let mut reports = run_suite(&config.model, &battery, grid)?;
    reports.extend(remainder_suite(&config.model, &config.diagnostics.virial, &battery, grid)?);
    let scaling = remainder_scaling(&config.model, &battery, grid)?;

    let mut csv = String::from(RatioReport::CSV_HEADER);
    csv.push('\n');
    for r in &reports {
        csv.push_str(&r.csv_rows());
    }
    session.dir.write(INEQUALITY_FILE, csv.as_bytes())?;

    let mut sc = String::from("case,first_order,second_order\n");
    for s in &scaling {
        let _ = writeln!(sc, "\"{}\",{:.16e},{:.16e}", s.label, s.first_order, s.second_order);
    }
    session.dir.write(SCALING_FILE, sc.as_bytes())?;

    for r in reports.iter().filter(|r| !r.is_stable()) {
        session.warnings.push(format!("{}: max ratio {} not refinement-stable ({:?})", r.lemma, r.max_ratio, r.refinement_factor));
    }
    let summary = InequalitySummary {
        seed: config.seed,
        battery_size: battery.functions.len(),
        untested: "exponent splittings other than p = p2 = p3 = 2, p1 = p4 = infinity",
        reports: reports
            .iter()
            .map(|r| ReportSummary {
                lemma: &r.lemma,
                cases: r.cases.len(),
                excluded: r.excluded.len(),
                max_ratio: r.max_ratio,
                refinement_factor: r.refinement_factor,
                stable: r.is_stable(),
            })
            .collect(),
        remainder_scaling_cases: scaling.len(),
        remainder_scaling_decreasing: scaling.iter().filter(|s| s.second_order < s.first_order).count(),
    };
    session.dir.write_json(INEQUALITY_SUMMARY_FILE, &summary)
}

/// Result of recomputing diagnostics over a persisted trajectory.
#[derive(Clone, Debug)]
pub struct DiagnoseOutcome {
    pub csv: String,
    pub path: PathBuf,
    /// Whether the recomputed CSV equals the stored `diagnostics.csv`, if present.
    pub matches_original: Option<bool>,
}

/// Recompute the diagnostics CSV of the run stored in `dir` and write it to `diagnose.csv`.
pub fn diagnose(dir: &Path) -> Result<DiagnoseOutcome> {
    let config = parse_config(&read_text(&dir.join(CONFIG_FILE))?)?;
    let (_, checkpoints) = read_trajectory(dir)?;
    let d = &config.diagnostics;
    let csv = rows_to_csv(&compute_rows(&config.model, &d.virial, &d.flags, &checkpoints)?);
    let path = dir.join(DIAGNOSE_FILE);
    write_atomic(&path, csv.as_bytes())?;
    let original = dir.join(DIAGNOSTICS_FILE);
    let matches_original = if original.exists() { Some(read_text(&original)? == csv) } else { None };
    Ok(DiagnoseOutcome { csv, path, matches_original })
}
