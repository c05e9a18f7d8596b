use std::f64::consts::PI;

use rayon::prelude::*;

use super::field::RealField;
use super::norms::boundary_mass_fraction;
use super::symbols::ModelParams;
use crate::error::{Error, Result};

/// Boundary-mass fraction above which the oracle warns about periodization.
pub const ORACLE_WARN_LEVEL: f64 = 1e-8;

/// Coth kernel `(1/2δ) coth(π z / 2δ)` of `T_δ` on the torus.
///
/// Images are summed symmetrically about the reduced offset; the kernel tends to
/// `±1/(2δ)` at infinity, so the sum carries a jump of `1/δ` at `±L/2` that the
/// sawtooth `-z/(δL)` removes. The result has Fourier coefficients `-i coth(δk)`
/// and mean zero.
fn periodic_kernel(delta: f64, length: f64, z: f64) -> f64 {
    let z = (z + 0.5 * length).rem_euclid(length) - 0.5 * length;
    let a = PI / (2.0 * delta);
    let kernel = |s: f64| 1.0 / (2.0 * delta * (a * s).tanh());
    let mut sum = kernel(z);
    for n in 1..10_000 {
        let shift = n as f64 * length;
        let term = kernel(z + shift) + kernel(z - shift);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum - z / (delta * length)
}

/// Eighth-order centred difference of periodic samples at node `j`.
fn derivative_at(samples: &[f64], j: usize, h: f64) -> f64 {
    const W: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let n = samples.len();
    let mut d = 0.0;
    for (m, w) in W.iter().enumerate() {
        let s = m + 1;
        d += w * (samples[(j + s) % n] - samples[(j + n - s) % n]);
    }
    d / h
}

fn check_support(u: &RealField) {
    let fraction = boundary_mass_fraction(u);
    if fraction > ORACLE_WARN_LEVEL {
        log::warn!("quadrature oracle: boundary mass fraction {fraction:.2e} contaminates the periodized kernel");
    }
}

fn oracle_value(params: &ModelParams, u: &RealField, j: usize) -> f64 {
    let grid = u.grid();
    let h = grid.spacing();
    let x = grid.nodes();
    let v = u.samples();
    let mut sum = 0.0;
    for i in 0..v.len() {
        if i != j {
            sum += periodic_kernel(params.delta, grid.length(), x[j] - x[i]) * (v[i] - v[j]);
        }
    }
    // The kernel behaves like 1/(π z): the diagonal limit of the subtracted integrand is -u'/π.
    sum -= derivative_at(v, j, h) / PI;
    sum * h
}

/// `T_δ u(x_j)` by direct principal-value quadrature with singularity subtraction.
///
/// Independent of the FFT: the periodized coth kernel is applied to
/// `u(y) - u(x_j)`, which cancels the odd singularity and leaves a smooth
/// periodic integrand for the trapezoid rule.
pub fn quadrature_t_oracle(params: &ModelParams, u: &RealField, node_index: usize) -> Result<f64> {
    if node_index >= u.samples().len() {
        return Err(Error::OutOfRange(format!("node index {node_index} outside the grid")));
    }
    check_support(u);
    Ok(oracle_value(params, u, node_index))
}

/// Oracle values at every node, evaluated in parallel.
pub fn quadrature_t_oracle_all(params: &ModelParams, u: &RealField) -> Vec<f64> {
    check_support(u);
    (0..u.samples().len()).into_par_iter().map(|j| oracle_value(params, u, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{apply_t_delta, Grid};

    #[test]
    fn zero_field() {
        let g = Grid::new(64, 20.0).unwrap();
        let p = ModelParams::new(1.0).unwrap();
        assert_eq!(quadrature_t_oracle(&p, &RealField::zeros(&g), 5).unwrap(), 0.0);
    }

    #[test]
    fn agrees_with_spectral_operator() {
        let g = Grid::new(512, 60.0).unwrap();
        let p = ModelParams::new(1.0).unwrap();
        let u = RealField::from_fn(&g, |x| (-(x - 0.4) * (x - 0.4)).exp());
        let spectral = apply_t_delta(&p, &u).unwrap();
        for j in (0..512).step_by(37) {
            let q = quadrature_t_oracle(&p, &u, j).unwrap();
            assert!((q - spectral.samples()[j]).abs() < 1e-6, "node {j}");
        }
    }

    #[test]
    fn reflection_symmetry() {
        // T_δ is odd: an odd input yields an even output, which vanishes nowhere in general,
        // and an even input yields an odd output vanishing at x = 0.
        let g = Grid::new(256, 40.0).unwrap();
        let p = ModelParams::new(0.5).unwrap();
        let even = RealField::from_fn(&g, |x| (-x * x).exp());
        let centre = g.n_points() / 2;
        assert!(quadrature_t_oracle(&p, &even, centre).unwrap().abs() < 1e-12);
        let odd = RealField::from_fn(&g, |x| x * (-x * x).exp());
        let t = apply_t_delta(&p, &odd).unwrap();
        let r = t.reflected();
        assert!(t.zip_with(&r, |a, b| a - b).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn out_of_range_node() {
        let g = Grid::new(16, 2.0).unwrap();
        let p = ModelParams::new(1.0).unwrap();
        assert!(quadrature_t_oracle(&p, &RealField::zeros(&g), 16).is_err());
    }
}
