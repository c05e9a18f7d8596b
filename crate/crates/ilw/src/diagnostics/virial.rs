//! Term-by-term decomposition of `d/dt ∫ u² φ` for a rightward ray weight.

use super::functionals::VirialParams;
use super::weights::WeightFamily;
use crate::error::{Error, Result};
use crate::evolution::{nonlinear_term, Trajectory};
use crate::spectral::operators::{dispersion, omega_prime, q_operator};
use crate::spectral::{ModelParams, RealField};

/// Weight `φ(x, t) = χ((x - c1)/(c0 t))` with its `x` and `t` derivatives.
#[derive(Clone, Debug)]
pub struct RayWeight {
    pub phi: Vec<f64>,
    pub phi_x: Vec<f64>,
    pub phi_t: Vec<f64>,
}

impl RayWeight {
    pub fn new(nodes: &[f64], t: f64, params: &VirialParams) -> Self {
        let wf = WeightFamily::new();
        let scale = params.c0 * t;
        let mut phi = Vec::with_capacity(nodes.len());
        let mut phi_x = Vec::with_capacity(nodes.len());
        let mut phi_t = Vec::with_capacity(nodes.len());
        for &x in nodes {
            let s = (x - params.c1) / scale;
            let d = wf.chi_derivatives(s);
            phi.push(d[0]);
            phi_x.push(d[1] / scale);
            phi_t.push(-d[1] * s / t);
        }
        Self { phi, phi_x, phi_t }
    }
}

/// Terms of the virial identity at one time.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VirialTerms {
    pub time: f64,
    /// `-∫ φ_x (q u)²`, non-positive for a non-decreasing weight.
    pub e1: f64,
    /// `-∫ u q[q; φ_x] u`.
    pub e2: f64,
    /// `-∫ u R₁ u`, `R₁ = [A; φ] - φ_x Ω'(∂x)` with `A` the dispersion operator.
    pub e3: f64,
    /// `2 ∫ φ u N(u)` with `N(u) = -½∂x(u²)` formed exactly as in the time stepper.
    ///
    /// Integrating by parts gives `(2/3) ∫ u³ φ_x`. That form only matches the
    /// discrete flow once the transition of `φ`, of width `c0 t`, spans many
    /// grid cells, so the stepper form is used at early times too.
    pub e4: f64,
    /// `(2/3) ∫ u³ φ_x` by grid quadrature, reported only.
    pub e4_quadrature: f64,
    /// `∫ u² φ_t`.
    pub e5: f64,
    /// Finite-difference `d/dt ∫ u² φ`.
    pub lhs_fd: f64,
    /// L² projection coefficient of `[A; φ] u` onto `φ_x Ω'(∂x) u`, reported only.
    pub c_projected: f64,
}

impl VirialTerms {
    pub fn sum(&self) -> f64 {
        self.e1 + self.e2 + self.e3 + self.e4 + self.e5
    }

    /// `|Σ E - lhs| / (Σ|E| + |lhs|)`, or 0 when every term vanishes.
    pub fn relative_gap(&self) -> f64 {
        let scale = self.e1.abs() + self.e2.abs() + self.e3.abs() + self.e4.abs() + self.e5.abs() + self.lhs_fd.abs();
        if scale == 0.0 {
            0.0
        } else {
            (self.sum() - self.lhs_fd).abs() / scale
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn weighted_mass(u: &RealField, params: &VirialParams) -> f64 {
    let w = RayWeight::new(u.grid().nodes(), u.time(), params);
    u.grid().spacing() * u.samples().iter().zip(&w.phi).map(|(v, p)| v * v * p).sum::<f64>()
}

/// Decompose the virial identity at the centre of `window`.
///
/// `window` holds 3 or 5 equally spaced checkpoints; the centre one is the
/// evaluation time and the others feed a centered difference of `∫ u² φ`.
/// `dealias` must match the run that produced the checkpoints.
pub fn virial_decomposition(
    model: &ModelParams,
    params: &VirialParams,
    window: &[RealField],
    dealias: bool,
) -> Result<VirialTerms> {
    if window.len() != 3 && window.len() != 5 {
        return Err(Error::MissingCheckpoints(format!(
            "virial decomposition needs 3 or 5 neighbouring checkpoints, got {}",
            window.len()
        )));
    }
    let mid = window.len() / 2;
    let u = &window[mid];
    let grid = u.grid();
    for w in window {
        if !w.grid().same_as(grid) {
            return Err(Error::GridMismatch);
        }
    }
    let t = u.time();
    if !(t > 0.0) {
        return Err(Error::OutOfRange(format!("ray weight needs t > 0, got t = {t}")));
    }
    let dt = window[mid + 1].time() - t;
    for pair in window.windows(2) {
        let gap = pair[1].time() - pair[0].time();
        if !(dt > 0.0) || (gap - dt).abs() > 1e-9 * dt.max(1.0) {
            return Err(Error::MissingCheckpoints("virial window is not equally spaced".into()));
        }
    }

    let h = grid.spacing();
    let w = RayWeight::new(grid.nodes(), t, params);
    let a = dispersion(model, grid);
    let q = q_operator(model, grid);
    let omp = omega_prime(model, grid);
    let phi = RealField::from_parts(grid, w.phi.clone(), t);
    let phi_x = RealField::from_parts(grid, w.phi_x.clone(), t);

    let times = |f: &RealField, g: &RealField| f.zip_with(g, |a, b| a * b);
    let comm = a.apply(&times(&phi, u)?)?.zip_with(&times(&phi, &a.apply(u)?)?, |x, y| x - y)?;
    let base = times(&phi_x, &omp.apply(u)?)?;
    let r1 = comm.zip_with(&base, |x, y| x - y)?;
    let bb = dot(base.samples(), base.samples());
    let c_projected = if bb > 0.0 { dot(comm.samples(), base.samples()) / bb } else { 0.0 };

    let qu = q.apply(u)?;
    let inner = q.apply(&times(&phi_x, u)?)?.zip_with(&times(&phi_x, &qu)?, |x, y| x - y)?;
    let e1 = -h * qu.samples().iter().zip(&w.phi_x).map(|(v, p)| p * v * v).sum::<f64>();
    let e2 = -h * dot(u.samples(), q.apply(&inner)?.samples());
    let e3 = -h * dot(u.samples(), r1.samples());
    let nl = nonlinear_term(u, dealias);
    let e4 = 2.0 * h * u.samples().iter().zip(&w.phi).zip(nl.samples()).map(|((v, p), n)| v * p * n).sum::<f64>();
    let e4_quadrature = (2.0 / 3.0) * h * u.samples().iter().zip(&w.phi_x).map(|(v, p)| v * v * v * p).sum::<f64>();
    let e5 = h * u.samples().iter().zip(&w.phi_t).map(|(v, p)| v * v * p).sum::<f64>();

    let f: Vec<f64> = window.iter().map(|v| weighted_mass(v, params)).collect();
    let lhs_fd = if f.len() == 3 {
        (f[2] - f[0]) / (2.0 * dt)
    } else {
        (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * dt)
    };
    Ok(VirialTerms { time: t, e1, e2, e3, e4, e4_quadrature, e5, lhs_fd, c_projected })
}

/// Decompose at each requested time using the five checkpoints nearest it.
///
/// The dealiasing flag is taken from the trajectory's configuration.
pub fn virial_series(
    model: &ModelParams,
    params: &VirialParams,
    trajectory: &Trajectory,
    times: &[f64],
) -> Result<Vec<VirialTerms>> {
    let checkpoints = trajectory.checkpoints();
    let dealias = trajectory.config().dealias;
    times
        .iter()
        .map(|&t| {
            let idx = checkpoints
                .iter()
                .position(|c| (c.time() - t).abs() < 1e-9 * t.abs().max(1.0))
                .ok_or_else(|| Error::MissingCheckpoints(format!("no checkpoint at t = {t}")))?;
            if idx < 2 || idx + 2 >= checkpoints.len() {
                return Err(Error::MissingCheckpoints(format!("t = {t} lacks two neighbours on each side")));
            }
            virial_decomposition(model, params, &checkpoints[idx - 2..=idx + 2], dealias)
        })
        .collect()
}
