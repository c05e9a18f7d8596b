use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

struct Inner {
    n_points: usize,
    length: f64,
    spacing: f64,
    nodes: Vec<f64>,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Uniform periodic grid on `[-L/2, L/2)` with angular wavenumbers in FFT order.
///
/// Cloning is cheap; FFT plans are shared between clones and are safe to use
/// from several threads.
#[derive(Clone)]
pub struct Grid {
    inner: Arc<Inner>,
}

impl Grid {
    /// Smallest accepted number of grid points.
    pub const MIN_POINTS: usize = 16;

    pub fn new(n_points: usize, length: f64) -> Result<Self> {
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "n_points = {n_points} is below the minimum {}",
                Self::MIN_POINTS
            )));
        }
        if n_points % 2 != 0 {
            return Err(Error::InvalidGrid(format!("n_points = {n_points} must be even")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!("length = {length} must be positive")));
        }
        let spacing = length / n_points as f64;
        let nodes = (0..n_points).map(|j| -0.5 * length + j as f64 * spacing).collect();
        let wavenumbers = (0..n_points)
            .map(|j| 2.0 * PI * frequency(j, n_points) as f64 / length)
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n_points);
        let inverse = planner.plan_fft_inverse(n_points);
        Ok(Self {
            inner: Arc::new(Inner { n_points, length, spacing, nodes, wavenumbers, forward, inverse }),
        })
    }

    pub fn n_points(&self) -> usize {
        self.inner.n_points
    }

    pub fn length(&self) -> f64 {
        self.inner.length
    }

    pub fn spacing(&self) -> f64 {
        self.inner.spacing
    }

    pub fn nodes(&self) -> &[f64] {
        &self.inner.nodes
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.inner.wavenumbers
    }

    /// Integer frequency of FFT slot `index`, in `[-N/2, N/2)`.
    pub fn frequency(&self, index: usize) -> i64 {
        frequency(index, self.inner.n_points)
    }

    /// Slot holding the Nyquist mode `-N/2`.
    pub fn nyquist_index(&self) -> usize {
        self.inner.n_points / 2
    }

    /// Magnitude of the Nyquist wavenumber, `π N / L`.
    pub fn k_max(&self) -> f64 {
        PI * self.inner.n_points as f64 / self.inner.length
    }

    /// Slot of the wavenumber `-k` paired with slot `index`; `None` for the Nyquist slot.
    pub fn partner(&self, index: usize) -> Option<usize> {
        let n = self.inner.n_points;
        if index == n / 2 {
            None
        } else {
            Some((n - index) % n)
        }
    }

    /// Node index of the reflection `x -> -x`.
    pub fn mirror_node(&self, index: usize) -> usize {
        (self.inner.n_points - index) % self.inner.n_points
    }

    /// True when both grids have the same size and length.
    pub fn same_as(&self, other: &Grid) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n_points == other.inner.n_points
                && self.inner.length.to_bits() == other.inner.length.to_bits())
    }

    /// Grid with the same point count and length `L / factor`.
    pub fn dilated(&self, factor: f64) -> Result<Grid> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidParameter(format!("dilation factor {factor} must be positive")));
        }
        Grid::new(self.inner.n_points, self.inner.length / factor)
    }

    /// Grid with twice as many points on the same domain.
    pub fn refined(&self) -> Grid {
        Grid::new(2 * self.inner.n_points, self.inner.length).expect("refining a valid grid")
    }

    /// Normalized forward transform: `c_m = (1/N) Σ_j u_j e^{-i k_m x_j}` up to the
    /// constant phase of the shifted origin, which is kept implicit.
    pub fn forward(&self, samples: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward_in_place(&mut buf);
        buf
    }

    pub fn forward_in_place(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.inner.n_points);
        self.inner.forward.process(buf);
        let scale = 1.0 / self.inner.n_points as f64;
        for c in buf.iter_mut() {
            *c *= scale;
        }
    }

    /// Inverse of [`Grid::forward`]; returns complex samples.
    pub fn inverse_in_place(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.inner.n_points);
        self.inner.inverse.process(buf);
    }

    /// Inverse transform keeping the real part.
    pub fn inverse_real(&self, coefficients: &[Complex64]) -> Vec<f64> {
        let mut buf = coefficients.to_vec();
        self.inverse_in_place(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }
}

fn frequency(index: usize, n: usize) -> i64 {
    if index < n / 2 {
        index as i64
    } else {
        index as i64 - n as i64
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n_points", &self.inner.n_points)
            .field("length", &self.inner.length)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_layout() {
        let g = Grid::new(16, 16.0).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(g.nodes()[0], -8.0);
        assert_eq!(g.nodes()[8], 0.0);
        assert_eq!(g.frequency(8), -8);
        assert_eq!(g.frequency(15), -1);
    }

    #[test]
    fn fundamental_wavenumber() {
        let g = Grid::new(1024, 100.0).unwrap();
        let k1 = g.wavenumbers()[1];
        assert!((k1 - 0.06283185307179587).abs() < 1e-16);
        assert!(g.wavenumbers().iter().any(|&k| (k + k1).abs() < 1e-16));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(15, 10.0).is_err());
        assert!(Grid::new(8, 10.0).is_err());
        assert!(Grid::new(16, 0.0).is_err());
        assert!(Grid::new(16, -1.0).is_err());
    }

    #[test]
    fn wavenumbers_pair_up() {
        let g = Grid::new(32, 7.0).unwrap();
        for i in 0..32 {
            match g.partner(i) {
                Some(j) => assert_eq!(g.wavenumbers()[i], -g.wavenumbers()[j]),
                None => assert_eq!(i, 16),
            }
        }
    }

    #[test]
    fn nodes_symmetric() {
        let g = Grid::new(64, 10.0).unwrap();
        for j in 0..64 {
            let m = g.mirror_node(j);
            if j != 0 {
                assert!((g.nodes()[j] + g.nodes()[m]).abs() < 1e-14);
            }
        }
    }
}
