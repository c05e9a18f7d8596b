use num_complex::Complex64;

use super::config::{EvolutionConfig, Flow};
use crate::error::{Error, Result};
use crate::spectral::{Grid, RealField};

const CONTOUR_POINTS: usize = 32;

enum Scheme {
    Lawson {
        half: Vec<Complex64>,
        full: Vec<Complex64>,
    },
    Etd {
        half: Vec<Complex64>,
        full: Vec<Complex64>,
        q: Vec<Complex64>,
        f1: Vec<Complex64>,
        f2: Vec<Complex64>,
        f3: Vec<Complex64>,
    },
}

/// Precomputed single-step propagator for a fixed flow, grid and step size.
pub struct Stepper {
    grid: Grid,
    dt: f64,
    /// Profile `k` of `∂x` with the Nyquist slot zeroed.
    wavenumber: Vec<f64>,
    mask: Vec<f64>,
    nonlinear: bool,
    scheme: Scheme,
}

fn dealias_mask(grid: &Grid, dealias: bool) -> Vec<f64> {
    let cutoff = 2.0 / 3.0 * grid.k_max();
    grid.wavenumbers()
        .iter()
        .map(|&k| if !dealias || k.abs() < cutoff { 1.0 } else { 0.0 })
        .collect()
}

fn odd_wavenumbers(grid: &Grid) -> Vec<f64> {
    let mut k = grid.wavenumbers().to_vec();
    k[grid.nyquist_index()] = 0.0;
    k
}

fn contour_mean(z: Complex64, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..CONTOUR_POINTS {
        let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64;
        acc += f(z + Complex64::from_polar(1.0, theta));
    }
    acc / CONTOUR_POINTS as f64
}

impl Stepper {
    /// Propagator for `flow` with the grid, integrator and nonlinearity settings of `config`
    /// and step size `dt`.
    pub fn new(config: &EvolutionConfig, flow: Flow, dt: f64) -> Self {
        let grid = config.grid.clone();
        let wavenumber = odd_wavenumbers(&grid);
        let omega: Vec<f64> = wavenumber.iter().map(|&k| flow.symbol(&config.params, k)).collect();
        let half: Vec<Complex64> = omega.iter().map(|&w| Complex64::from_polar(1.0, 0.5 * w * dt)).collect();
        let full: Vec<Complex64> = omega.iter().map(|&w| Complex64::from_polar(1.0, w * dt)).collect();
        let scheme = match config.integrator {
            super::Integrator::IntegratingFactorRk4 => Scheme::Lawson { half, full },
            super::Integrator::EtdRk4 => {
                let z: Vec<Complex64> = omega.iter().map(|&w| Complex64::new(0.0, w * dt)).collect();
                let q = z.iter().map(|&z| dt * contour_mean(z, |l| ((0.5 * l).exp() - 1.0) / l)).collect();
                let f1 = z
                    .iter()
                    .map(|&z| dt * contour_mean(z, |l| (-4.0 - l + l.exp() * (4.0 - 3.0 * l + l * l)) / (l * l * l)))
                    .collect();
                let f2 = z
                    .iter()
                    .map(|&z| dt * contour_mean(z, |l| (2.0 + l + l.exp() * (l - 2.0)) / (l * l * l)))
                    .collect();
                let f3 = z
                    .iter()
                    .map(|&z| dt * contour_mean(z, |l| (-4.0 - 3.0 * l - l * l + l.exp() * (4.0 - l)) / (l * l * l)))
                    .collect();
                Scheme::Etd { half, full, q, f1, f2, f3 }
            }
        };
        let mask = dealias_mask(&grid, config.dealias);
        Self { grid, dt, wavenumber, mask, nonlinear: config.nonlinear, scheme }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `-½ i k · F((F^{-1} v)²)`, with 2/3-rule truncation on input and output when enabled.
    fn nonlinear_rhs(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = v.iter().zip(&self.mask).map(|(c, m)| c * m).collect();
        self.grid.inverse_in_place(&mut buf);
        for c in buf.iter_mut() {
            *c = Complex64::new(c.re * c.re, 0.0);
        }
        self.grid.forward_in_place(&mut buf);
        for ((c, &k), &m) in buf.iter_mut().zip(&self.wavenumber).zip(&self.mask) {
            let s = -0.5 * k * m;
            *c = Complex64::new(-s * c.im, s * c.re);
        }
        buf
    }

    /// Advances Fourier coefficients by one step.
    pub fn advance_coefficients(&self, v: &mut [Complex64]) {
        let dt = self.dt;
        match &self.scheme {
            Scheme::Lawson { half, full } => {
                if !self.nonlinear {
                    v.iter_mut().zip(full).for_each(|(c, e)| *c *= e);
                    return;
                }
                let k1 = self.nonlinear_rhs(v);
                let a: Vec<Complex64> =
                    (0..v.len()).map(|i| half[i] * (v[i] + 0.5 * dt * k1[i])).collect();
                let k2 = self.nonlinear_rhs(&a);
                let b: Vec<Complex64> = (0..v.len()).map(|i| half[i] * v[i] + 0.5 * dt * k2[i]).collect();
                let k3 = self.nonlinear_rhs(&b);
                let c: Vec<Complex64> = (0..v.len()).map(|i| full[i] * v[i] + dt * half[i] * k3[i]).collect();
                let k4 = self.nonlinear_rhs(&c);
                for i in 0..v.len() {
                    v[i] = full[i] * v[i]
                        + dt / 6.0 * (full[i] * k1[i] + 2.0 * half[i] * (k2[i] + k3[i]) + k4[i]);
                }
            }
            Scheme::Etd { half, full, q, f1, f2, f3 } => {
                if !self.nonlinear {
                    v.iter_mut().zip(full).for_each(|(c, e)| *c *= e);
                    return;
                }
                let nv = self.nonlinear_rhs(v);
                let a: Vec<Complex64> = (0..v.len()).map(|i| half[i] * v[i] + q[i] * nv[i]).collect();
                let na = self.nonlinear_rhs(&a);
                let b: Vec<Complex64> = (0..v.len()).map(|i| half[i] * v[i] + q[i] * na[i]).collect();
                let nb = self.nonlinear_rhs(&b);
                let c: Vec<Complex64> =
                    (0..v.len()).map(|i| half[i] * a[i] + q[i] * (2.0 * nb[i] - nv[i])).collect();
                let nc = self.nonlinear_rhs(&c);
                for i in 0..v.len() {
                    v[i] = full[i] * v[i] + nv[i] * f1[i] + 2.0 * (na[i] + nb[i]) * f2[i] + nc[i] * f3[i];
                }
            }
        }
    }

    /// One step applied to a field; fails if the result is not finite.
    pub fn advance(&self, u: &RealField) -> Result<RealField> {
        if !self.grid.same_as(u.grid()) {
            return Err(Error::GridMismatch);
        }
        let mut v = self.grid.forward(u.samples());
        self.advance_coefficients(&mut v);
        let t = u.time() + self.dt;
        check_finite(&v, t)?;
        Ok(RealField::from_parts(&self.grid, self.grid.inverse_real(&v), t))
    }
}

pub(crate) fn check_finite(v: &[Complex64], time: f64) -> Result<()> {
    if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NumericalAbort {
            time,
            reason: "non-finite Fourier coefficients (blow-up or time step far above the stability bound)".into(),
        })
    }
}

/// One ILW step of size `config.dt` from `u` at time `t`.
pub fn step(u: &RealField, t: f64, config: &EvolutionConfig) -> Result<RealField> {
    if u.samples().iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericalAbort { time: t, reason: "non-finite input field".into() });
    }
    let stepper = Stepper::new(config, Flow::Ilw, config.dt);
    let out = stepper.advance(&u.clone().with_time(t))?;
    Ok(out)
}

/// `-½ ∂x(u²)`, formed from 2/3-truncated `u` and truncated again when `dealias` is on.
pub fn nonlinear_term(u: &RealField, dealias: bool) -> RealField {
    let grid = u.grid();
    let mask = dealias_mask(grid, dealias);
    let k = odd_wavenumbers(grid);
    let mut c = grid.forward(u.samples());
    c.iter_mut().zip(&mask).for_each(|(c, m)| *c *= m);
    let v = grid.inverse_real(&c);
    let sq: Vec<f64> = v.iter().map(|x| x * x).collect();
    let mut c = grid.forward(&sq);
    for ((c, &k), &m) in c.iter_mut().zip(&k).zip(&mask) {
        let s = -0.5 * k * m;
        *c = Complex64::new(-s * c.im, s * c.re);
    }
    RealField::from_parts(grid, grid.inverse_real(&c), u.time())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::Integrator;
    use crate::spectral::ModelParams;

    fn config(n: usize, l: f64, dt: f64) -> EvolutionConfig {
        EvolutionConfig::new(ModelParams::new(1.0).unwrap(), Grid::new(n, l).unwrap(), dt, 1.0).unwrap()
    }

    #[test]
    fn nonlinear_term_of_constant_and_sine() {
        let g = Grid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let c = nonlinear_term(&RealField::from_fn(&g, |_| 3.0), true);
        assert!(c.max_abs() < 1e-14);
        let k = 2.0;
        let s = nonlinear_term(&RealField::from_fn(&g, |x| (k * x).sin()), true);
        for (v, &x) in s.samples().iter().zip(g.nodes()) {
            assert!((v + 0.5 * k * (2.0 * k * x).sin()).abs() < 1e-13);
        }
        assert!(s.integral().abs() < 1e-12);
    }

    #[test]
    fn dealiasing_only_changes_high_modes() {
        let g = Grid::new(64, 10.0).unwrap();
        let u = RealField::from_fn(&g, |x| (2.0 * std::f64::consts::PI * 5.0 * x / 10.0).cos() + 0.3 * (x * 0.6283185307179586 * 9.0).sin());
        let a = nonlinear_term(&u, true).transform();
        let b = nonlinear_term(&u, false).transform();
        let cutoff = 2.0 / 3.0 * g.k_max();
        for i in 0..64 {
            if g.wavenumbers()[i].abs() < cutoff {
                assert!((a.coefficients()[i] - b.coefficients()[i]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_stays_zero() {
        let cfg = config(64, 20.0, 0.01);
        let u = step(&RealField::zeros(&cfg.grid), 0.0, &cfg).unwrap();
        assert_eq!(u.max_abs(), 0.0);
        assert!((u.time() - 0.01).abs() < 1e-16);
    }

    #[test]
    fn linear_single_mode_phase() {
        for integrator in [Integrator::IntegratingFactorRk4, Integrator::EtdRk4] {
            let cfg = config(64, 20.0, 0.05).linear_only().with_integrator(integrator);
            let stepper = Stepper::new(&cfg, Flow::Ilw, cfg.dt);
            let mut v = vec![Complex64::new(0.0, 0.0); 64];
            v[3] = Complex64::new(0.5, 0.0);
            stepper.advance_coefficients(&mut v);
            let k = cfg.grid.wavenumbers()[3];
            let phase = crate::spectral::symbol_omega(&cfg.params, k) * cfg.dt;
            assert!((v[3] - Complex64::from_polar(0.5, phase)).norm() < 1e-15);
        }
    }

    #[test]
    fn nan_aborts() {
        let cfg = config(64, 20.0, 0.01);
        let s = Stepper::new(&cfg, Flow::Ilw, cfg.dt);
        let mut v = vec![Complex64::new(f64::NAN, 0.0); 64];
        s.advance_coefficients(&mut v);
        assert!(check_finite(&v, 0.0).is_err());
    }
}
