use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{symbol_omega, Grid, ModelParams, RealField};

/// Time integrator for the semilinear system `û_t = i ω(k) û + N(û)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// Lawson RK4 on the integrating-factor variable.
    #[default]
    IntegratingFactorRk4,
    /// Exponential time differencing RK4 with contour-integral coefficients.
    EtdRk4,
}

/// Which dispersive flow to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flow {
    /// `ω(k) = Ω_δ(k)`.
    Ilw,
    /// `ω(k) = k|k|`, the `δ → ∞` limit.
    BenjaminOno,
    /// `ω(k) = k³`, the rescaled `δ → 0` limit `v_t + v_xxx + v v_x = 0`.
    Kdv,
}

impl Flow {
    /// Linear phase speed symbol `ω(k)`; `û(t) = e^{iω t} û(0)` for the linear flow.
    pub fn symbol(self, params: &ModelParams, k: f64) -> f64 {
        match self {
            Flow::Ilw => symbol_omega(params, k),
            Flow::BenjaminOno => k * k.abs(),
            Flow::Kdv => k * k * k,
        }
    }
}

/// Parameters of one time integration.
#[derive(Clone, Debug)]
pub struct EvolutionConfig {
    pub params: ModelParams,
    pub grid: Grid,
    pub dt: f64,
    pub t_end: f64,
    /// 2/3-rule truncation of the quadratic term.
    pub dealias: bool,
    pub integrator: Integrator,
    /// Steps between stored checkpoints.
    pub checkpoint_stride: usize,
    /// When false only the linear propagator is applied.
    pub nonlinear: bool,
}

impl EvolutionConfig {
    pub fn new(params: ModelParams, grid: Grid, dt: f64, t_end: f64) -> Result<Self> {
        let config = Self {
            params,
            grid,
            dt,
            t_end,
            dealias: true,
            integrator: Integrator::default(),
            checkpoint_stride: 1,
            nonlinear: true,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.checkpoint_stride = stride.max(1);
        self
    }

    pub fn with_dealias(mut self, dealias: bool) -> Self {
        self.dealias = dealias;
        self
    }

    pub fn linear_only(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn with_t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::InvalidParameter(format!("t_end = {} must be non-negative", self.t_end)));
        }
        if self.checkpoint_stride == 0 {
            return Err(Error::InvalidParameter("checkpoint_stride must be positive".into()));
        }
        Ok(())
    }

    /// Number of steps and the step actually used, `t_end / n_steps ≤ dt`.
    pub fn step_plan(&self) -> (usize, f64) {
        if self.t_end == 0.0 {
            return (0, self.dt);
        }
        let ratio = self.t_end / self.dt;
        let nearest = ratio.round();
        let n = if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) { nearest } else { ratio.ceil() };
        let n = (n as usize).max(1);
        (n, self.t_end / n as f64)
    }

    /// Advisory explicit bound `h / (π max|u| + ε)` for the nonlinear term.
    pub fn nonlinear_dt_bound(&self, u: &RealField) -> f64 {
        self.grid.spacing() / (PI * u.max_abs() + 1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dt: f64, t_end: f64) -> Result<EvolutionConfig> {
        EvolutionConfig::new(ModelParams::new(1.0).unwrap(), Grid::new(16, 1.0).unwrap(), dt, t_end)
    }

    #[test]
    fn step_plan() {
        assert_eq!(cfg(1e-3, 5.0).unwrap().step_plan().0, 5000);
        assert_eq!(cfg(0.3, 1.0).unwrap().step_plan().0, 4);
        assert_eq!(cfg(0.1, 0.0).unwrap().step_plan().0, 0);
        let (n, dt) = cfg(0.3, 1.0).unwrap().step_plan();
        assert!((n as f64 * dt - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(cfg(0.0, 1.0).is_err());
        assert!(cfg(0.1, -1.0).is_err());
        assert!(cfg(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn flow_symbols() {
        let p = ModelParams::new(2.0).unwrap();
        assert_eq!(Flow::BenjaminOno.symbol(&p, -3.0), -9.0);
        assert_eq!(Flow::Kdv.symbol(&p, 2.0), 8.0);
        assert_eq!(Flow::Ilw.symbol(&p, 0.0), 0.0);
    }
}
