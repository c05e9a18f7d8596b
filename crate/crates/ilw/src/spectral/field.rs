use num_complex::Complex64;

use super::grid::Grid;
use crate::error::{Error, Result};

/// Real-valued state sampled on the nodes of a grid at a given time.
#[derive(Clone, Debug)]
pub struct RealField {
    grid: Grid,
    samples: Vec<f64>,
    time: f64,
}

impl RealField {
    /// Field at time 0 from node samples; every sample must be finite.
    pub fn new(grid: &Grid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.n_points() {
            return Err(Error::InvalidParameter(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.n_points()
            )));
        }
        if let Some(j) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("sample {j} is not finite")));
        }
        Ok(Self { grid: grid.clone(), samples, time: 0.0 })
    }

    pub(crate) fn from_parts(grid: &Grid, samples: Vec<f64>, time: f64) -> Self {
        debug_assert_eq!(samples.len(), grid.n_points());
        Self { grid: grid.clone(), samples, time }
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self::from_parts(grid, vec![0.0; grid.n_points()], 0.0)
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(grid, grid.nodes().iter().map(|&x| f(x)).collect(), 0.0)
    }

    /// Field whose `j`-th sample is `f(j)`.
    pub fn from_fn_indexed(grid: &Grid, f: impl Fn(usize) -> f64) -> Self {
        Self::from_parts(grid, (0..grid.n_points()).map(f).collect(), 0.0)
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Pointwise map, keeping grid and time.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(&self.grid, self.samples.iter().map(|&v| f(v)).collect(), self.time)
    }

    /// Pointwise combination with a second field on the same grid.
    pub fn zip_with(&self, other: &RealField, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_parts(&self.grid, samples, self.time))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| factor * v)
    }

    /// `h Σ u_j`, exact for band-limited periodic integrands.
    pub fn integral(&self) -> f64 {
        self.grid.spacing() * self.samples.iter().sum::<f64>()
    }

    /// Discrete `L²` norm `(h Σ u_j²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.spacing() * self.samples.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// Discrete `L^p` norm for finite `p ≥ 1`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        (self.grid.spacing() * self.samples.iter().map(|v| v.abs().powf(p)).sum::<f64>()).powf(1.0 / p)
    }

    /// Grid maximum of `|u|`.
    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Relative `L²` distance `‖self - other‖ / ‖other‖`.
    pub fn relative_distance(&self, other: &RealField) -> Result<f64> {
        let diff = self.zip_with(other, |a, b| a - b)?;
        Ok(diff.l2_norm() / other.l2_norm())
    }

    /// The same samples on the grid of length `L / factor`; represents `u(factor · x)`.
    pub fn dilated(&self, factor: f64) -> Result<Self> {
        let grid = self.grid.dilated(factor)?;
        Ok(Self::from_parts(&grid, self.samples.clone(), self.time))
    }

    /// Reflection `x -> -x` on the symmetric grid.
    pub fn reflected(&self) -> Self {
        let samples = (0..self.samples.len()).map(|j| self.samples[self.grid.mirror_node(j)]).collect();
        Self::from_parts(&self.grid, samples, self.time)
    }

    /// Circular shift by `shift` nodes to the right.
    pub fn rotated(&self, shift: isize) -> Self {
        let n = self.samples.len() as isize;
        let samples = (0..n).map(|j| self.samples[(j - shift).rem_euclid(n) as usize]).collect();
        Self::from_parts(&self.grid, samples, self.time)
    }

    pub fn transform(&self) -> SpectralField {
        SpectralField { grid: self.grid.clone(), coefficients: self.grid.forward(&self.samples) }
    }
}

/// Fourier coefficients `c_m` with `u_j = Σ_m c_m e^{i k_m (x_j + L/2)}`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Grid,
    coefficients: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: &Grid, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != grid.n_points() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for a grid of {} points",
                coefficients.len(),
                grid.n_points()
            )));
        }
        Ok(Self { grid: grid.clone(), coefficients })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coefficients
    }

    /// Spectral `L²` norm `(L Σ |c_m|²)^{1/2}`; equals the grid norm by Parseval.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.length() * self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// Largest deviation from `c(-k) = conj(c(k))` over the paired slots.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.coefficients.len())
            .filter_map(|i| self.grid.partner(i).map(|j| (self.coefficients[i] - self.coefficients[j].conj()).norm()))
            .fold(self.coefficients[self.grid.nyquist_index()].im.abs(), f64::max)
    }

    /// Inverse transform, discarding the imaginary part of the samples.
    pub fn inverse_transform(&self) -> RealField {
        RealField::from_parts(&self.grid, self.grid.inverse_real(&self.coefficients), 0.0)
    }
}

/// Forward transform of a real field.
pub fn transform(field: &RealField) -> SpectralField {
    field.transform()
}

/// Inverse transform to a real field at time 0.
pub fn inverse_transform(field: &SpectralField) -> RealField {
    field.inverse_transform()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_field_has_zero_spectrum() {
        let g = Grid::new(64, 10.0).unwrap();
        let s = RealField::zeros(&g).transform();
        assert!(s.coefficients().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn single_cosine_has_two_modes() {
        let g = Grid::new(64, 10.0).unwrap();
        let u = RealField::from_fn(&g, |x| (2.0 * PI * x / 10.0).cos());
        let s = u.transform();
        let big: Vec<i64> = (0..64).filter(|&i| s.coefficients()[i].norm() > 1e-12).map(|i| g.frequency(i)).collect();
        assert_eq!(big, vec![1, -1]);
        assert!((s.coefficients()[1].norm() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn gaussian_round_trip_and_parseval() {
        let g = Grid::new(1024, 100.0).unwrap();
        let u = RealField::from_fn(&g, |x| (-x * x).exp());
        let s = u.transform();
        let back = s.inverse_transform();
        assert!(back.relative_distance(&u).unwrap() < 1e-12);
        assert!((s.l2_norm() - u.l2_norm()).abs() / u.l2_norm() < 1e-12);
        assert!(s.hermitian_defect() < 1e-15);
    }

    #[test]
    fn rejects_non_finite_samples() {
        let g = Grid::new(16, 1.0).unwrap();
        let mut v = vec![0.0; 16];
        v[3] = f64::NAN;
        assert!(RealField::new(&g, v).is_err());
        assert!(RealField::new(&g, vec![0.0; 15]).is_err());
    }

    #[test]
    fn grid_mismatch_detected() {
        let a = RealField::zeros(&Grid::new(16, 1.0).unwrap());
        let b = RealField::zeros(&Grid::new(16, 2.0).unwrap());
        assert!(matches!(a.zip_with(&b, |x, y| x + y), Err(Error::GridMismatch)));
    }
}
