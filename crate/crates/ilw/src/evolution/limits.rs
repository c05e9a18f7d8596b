use super::config::{EvolutionConfig, Flow};
use super::trajectory::{evolve_flow, Trajectory};
use crate::error::{Error, Result};
use crate::spectral::{ModelParams, RealField};

/// Shallow-water rescaling `v(x, t) = (3/δ) u(x, 3t/δ)` of an ILW trajectory.
pub fn kdv_rescale(trajectory: &Trajectory, delta: f64) -> Result<Trajectory> {
    check_source(trajectory, delta)?;
    let checkpoints = trajectory
        .checkpoints()
        .iter()
        .map(|u| u.scaled(3.0 / delta).with_time(delta * u.time() / 3.0))
        .collect();
    let mut warnings = trajectory.warnings().to_vec();
    warnings.push(format!("rescaled to KdV variables with delta = {delta}"));
    Ok(Trajectory::from_parts(checkpoints, trajectory.config().clone(), Flow::Kdv, warnings))
}

/// Rescaled field at KdV time `t`, read from the ILW checkpoint at `3t/δ`.
pub fn kdv_rescale_at(trajectory: &Trajectory, delta: f64, t: f64) -> Result<RealField> {
    check_source(trajectory, delta)?;
    let tau = 3.0 * t / delta;
    let tol = 1e-9 * tau.abs().max(1.0);
    trajectory
        .at_time(tau, tol)
        .map(|u| u.scaled(3.0 / delta).with_time(t))
        .ok_or_else(|| Error::OutOfRange(format!("no ILW checkpoint at t = {tau} for rescaled time {t}")))
}

fn check_source(trajectory: &Trajectory, delta: f64) -> Result<()> {
    if trajectory.flow() != Flow::Ilw {
        return Err(Error::InvalidParameter("shallow-water rescaling needs an ILW trajectory".into()));
    }
    let own = trajectory.config().params.delta;
    if (own - delta).abs() > 1e-12 * own {
        return Err(Error::InvalidParameter(format!("trajectory has delta = {own}, not {delta}")));
    }
    Ok(())
}

/// ILW datum `(δ/3) v0` whose rescaling starts from `v0`.
pub fn shallow_water_datum(v0: &RealField, delta: f64) -> RealField {
    v0.scaled(delta / 3.0)
}

/// Relative `L²` gap at KdV time `t` between the rescaled ILW solution and KdV, both from `v0`.
///
/// `template` supplies grid, integrator and dealiasing; `dt_ilw` is the ILW step
/// and `dt_kdv` the KdV step.
pub fn shallow_water_gap(
    template: &EvolutionConfig,
    delta: f64,
    v0: &RealField,
    t: f64,
    dt_ilw: f64,
    dt_kdv: f64,
) -> Result<f64> {
    let params = ModelParams::new(delta)?;
    let tau = 3.0 * t / delta;
    let ilw_cfg = EvolutionConfig { params, dt: dt_ilw, t_end: tau, checkpoint_stride: usize::MAX, ..template.clone() };
    let ilw = evolve_flow(&ilw_cfg, Flow::Ilw, &shallow_water_datum(v0, delta))?;
    let rescaled = kdv_rescale_at(&ilw, delta, t)?;
    let kdv_cfg = EvolutionConfig { dt: dt_kdv, t_end: t, checkpoint_stride: usize::MAX, ..template.clone() };
    let kdv = evolve_flow(&kdv_cfg, Flow::Kdv, v0)?;
    rescaled.relative_distance(kdv.last())
}

/// `‖ILW_δ(t) - BO(t)‖₂ / ‖u0‖₂` from a common datum.
pub fn deep_water_gap(template: &EvolutionConfig, delta: f64, u0: &RealField, t: f64) -> Result<f64> {
    let params = ModelParams::new(delta)?;
    let cfg = EvolutionConfig { params, t_end: t, checkpoint_stride: usize::MAX, ..template.clone() };
    let ilw = evolve_flow(&cfg, Flow::Ilw, u0)?;
    let bo = evolve_flow(&cfg, Flow::BenjaminOno, u0)?;
    Ok(ilw.last().zip_with(bo.last(), |a, b| a - b)?.l2_norm() / u0.l2_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    fn ilw(delta: f64, t_end: f64) -> Trajectory {
        let cfg = EvolutionConfig::new(ModelParams::new(delta).unwrap(), Grid::new(64, 40.0).unwrap(), 0.1, t_end)
            .unwrap();
        let u0 = RealField::zeros(&cfg.grid);
        evolve_flow(&cfg, Flow::Ilw, &u0).unwrap()
    }

    #[test]
    fn time_remap() {
        let tr = ilw(0.1, 30.0);
        let v = kdv_rescale_at(&tr, 0.1, 1.0).unwrap();
        assert_eq!(v.time(), 1.0);
        assert_eq!(v.max_abs(), 0.0);
        let all = kdv_rescale(&tr, 0.1).unwrap();
        assert!((all.last().time() - 1.0).abs() < 1e-12);
        assert!(kdv_rescale_at(&tr, 0.1, 2.0).is_err());
    }

    #[test]
    fn delta_mismatch_rejected() {
        let tr = ilw(0.1, 0.3);
        assert!(kdv_rescale(&tr, 0.2).is_err());
    }
}
