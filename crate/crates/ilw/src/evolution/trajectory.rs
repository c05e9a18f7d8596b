use super::config::{EvolutionConfig, Flow};
use super::stepper::{check_finite, Stepper};
use crate::error::{Error, Result};
use crate::spectral::{boundary_mass_fraction, RealField, BOUNDARY_WARN_LEVEL};

/// Ordered checkpoints of one integration together with its configuration.
#[derive(Clone, Debug)]
pub struct Trajectory {
    checkpoints: Vec<RealField>,
    config: EvolutionConfig,
    flow: Flow,
    warnings: Vec<String>,
}

impl Trajectory {
    pub(crate) fn from_parts(
        checkpoints: Vec<RealField>,
        config: EvolutionConfig,
        flow: Flow,
        warnings: Vec<String>,
    ) -> Self {
        Self { checkpoints, config, flow, warnings }
    }

    pub fn checkpoints(&self) -> &[RealField] {
        &self.checkpoints
    }

    pub fn times(&self) -> Vec<f64> {
        self.checkpoints.iter().map(RealField::time).collect()
    }

    pub fn initial(&self) -> &RealField {
        &self.checkpoints[0]
    }

    pub fn last(&self) -> &RealField {
        self.checkpoints.last().expect("a trajectory holds at least the initial datum")
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    pub fn config(&self) -> &EvolutionConfig {
        &self.config
    }

    pub fn flow(&self) -> Flow {
        self.flow
    }

    /// Boundary-guard and step-size advisories recorded during the run.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Checkpoint whose time is within `tol` of `t`.
    pub fn at_time(&self, t: f64, tol: f64) -> Option<&RealField> {
        self.checkpoints.iter().find(|u| (u.time() - t).abs() <= tol)
    }
}

struct Guard {
    hits: usize,
    first: Option<f64>,
    worst: f64,
    cfl_hits: usize,
}

impl Guard {
    fn observe(&mut self, u: &RealField, config: &EvolutionConfig, dt: f64) {
        let fraction = boundary_mass_fraction(u);
        if fraction > BOUNDARY_WARN_LEVEL {
            self.hits += 1;
            self.first.get_or_insert(u.time());
            self.worst = self.worst.max(fraction);
        }
        if dt > config.nonlinear_dt_bound(u) && config.nonlinear {
            self.cfl_hits += 1;
        }
    }

    fn into_warnings(self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(t) = self.first {
            let msg = format!(
                "boundary mass fraction above {BOUNDARY_WARN_LEVEL:e} at {} checkpoint(s), first at t = {t}, max {:.3e}",
                self.hits, self.worst
            );
            log::warn!("{msg}");
            out.push(msg);
        }
        if self.cfl_hits > 0 {
            let msg = format!(
                "time step above the advisory nonlinear bound h/(π max|u|) at {} checkpoint(s)",
                self.cfl_hits
            );
            log::warn!("{msg}");
            out.push(msg);
        }
        out
    }
}

/// Integrates `flow` from `u0`, returning the checkpoints produced so far and
/// the abort error if one occurred.
pub fn evolve_partial(config: &EvolutionConfig, flow: Flow, u0: &RealField) -> (Trajectory, Option<Error>) {
    let empty = |err| (Trajectory::from_parts(vec![u0.clone()], config.clone(), flow, Vec::new()), Some(err));
    if let Err(e) = config.validate() {
        return empty(e);
    }
    if !config.grid.same_as(u0.grid()) {
        return empty(Error::GridMismatch);
    }
    let (n_steps, dt) = config.step_plan();
    let stepper = Stepper::new(config, flow, dt);
    let t0 = u0.time();
    let mut guard = Guard { hits: 0, first: None, worst: 0.0, cfl_hits: 0 };
    guard.observe(u0, config, dt);
    let mut checkpoints = vec![u0.clone()];
    let mut v = config.grid.forward(u0.samples());
    let mut failure = None;
    for i in 1..=n_steps {
        stepper.advance_coefficients(&mut v);
        let t = t0 + i as f64 * dt;
        if let Err(e) = check_finite(&v, t) {
            failure = Some(e);
            break;
        }
        if i % config.checkpoint_stride == 0 || i == n_steps {
            let u = RealField::from_parts(&config.grid, config.grid.inverse_real(&v), t);
            guard.observe(&u, config, dt);
            checkpoints.push(u);
        }
    }
    let trajectory = Trajectory::from_parts(checkpoints, config.clone(), flow, guard.into_warnings());
    (trajectory, failure)
}

/// Integrates `flow` from `u0` to `config.t_end`.
pub fn evolve_flow(config: &EvolutionConfig, flow: Flow, u0: &RealField) -> Result<Trajectory> {
    match evolve_partial(config, flow, u0) {
        (trajectory, None) => Ok(trajectory),
        (_, Some(e)) => Err(e),
    }
}

/// ILW evolution.
pub fn evolve(config: &EvolutionConfig, u0: &RealField) -> Result<Trajectory> {
    evolve_flow(config, Flow::Ilw, u0)
}

/// Benjamin–Ono evolution `u_t - H u_xx + u u_x = 0`.
pub fn evolve_bo(config: &EvolutionConfig, u0: &RealField) -> Result<Trajectory> {
    evolve_flow(config, Flow::BenjaminOno, u0)
}

/// KdV evolution `v_t + v_xxx + v v_x = 0`.
pub fn evolve_kdv(config: &EvolutionConfig, u0: &RealField) -> Result<Trajectory> {
    evolve_flow(config, Flow::Kdv, u0)
}
