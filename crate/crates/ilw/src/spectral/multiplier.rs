use num_complex::Complex64;

use super::field::RealField;
use super::grid::Grid;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Whether the symbol is `a(k)` or `i a(k)` with `a` real.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reality {
    Real,
    Imaginary,
}

/// Fourier multiplier sampled on the wavenumbers of a grid.
///
/// The symbol is stored as a real profile `a(k)`; the operator symbol is `a(k)`
/// or `i a(k)` according to [`Reality`]. Samples are symmetrized at
/// construction so that `a(-k) = ±a(k)` holds exactly; the unpaired Nyquist
/// sample of an odd profile is zero.
#[derive(Clone, Debug)]
pub struct Multiplier {
    name: String,
    grid: Grid,
    profile: Vec<f64>,
    parity: Parity,
    reality: Reality,
    clamped: usize,
}

impl Multiplier {
    /// Multiplier with symbol `f(k)`.
    pub fn real(name: impl Into<String>, grid: &Grid, parity: Parity, f: impl Fn(f64) -> f64) -> Self {
        Self::build(name.into(), grid, parity, Reality::Real, f)
    }

    /// Multiplier with symbol `i f(k)`.
    pub fn imaginary(name: impl Into<String>, grid: &Grid, parity: Parity, f: impl Fn(f64) -> f64) -> Self {
        Self::build(name.into(), grid, parity, Reality::Imaginary, f)
    }

    pub fn identity(grid: &Grid) -> Self {
        Self::real("identity", grid, Parity::Even, |_| 1.0)
    }

    fn build(name: String, grid: &Grid, parity: Parity, reality: Reality, f: impl Fn(f64) -> f64) -> Self {
        let raw: Vec<f64> = grid.wavenumbers().iter().map(|&k| f(k)).collect();
        let profile = symmetrize(grid, &raw, parity);
        Self { name, grid: grid.clone(), profile, parity, reality, clamped: 0 }
    }

    pub(crate) fn with_clamped(mut self, clamped: usize) -> Self {
        self.clamped = clamped;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn reality(&self) -> Reality {
        self.reality
    }

    /// Real profile `a(k)` in FFT order.
    pub fn profile(&self) -> &[f64] {
        &self.profile
    }

    /// Number of samples clamped while building the symbol.
    pub fn clamped_samples(&self) -> usize {
        self.clamped
    }

    /// Complex symbol values in FFT order.
    pub fn symbol(&self) -> Vec<Complex64> {
        self.profile.iter().map(|&a| self.unit() * a).collect()
    }

    fn unit(&self) -> Complex64 {
        match self.reality {
            Reality::Real => Complex64::new(1.0, 0.0),
            Reality::Imaginary => Complex64::new(0.0, 1.0),
        }
    }

    /// Even-real and odd-imaginary symbols map real fields to real fields.
    pub fn preserves_real(&self) -> bool {
        matches!((self.parity, self.reality), (Parity::Even, Reality::Real) | (Parity::Odd, Reality::Imaginary))
    }

    /// Multiplies Fourier coefficients in place.
    pub fn apply_coefficients(&self, coefficients: &mut [Complex64]) {
        match self.reality {
            Reality::Real => {
                for (c, &a) in coefficients.iter_mut().zip(&self.profile) {
                    *c *= a;
                }
            }
            Reality::Imaginary => {
                for (c, &a) in coefficients.iter_mut().zip(&self.profile) {
                    *c = Complex64::new(-a * c.im, a * c.re);
                }
            }
        }
    }

    /// `F^{-1}(symbol · F u)`, keeping the time stamp of `u`.
    pub fn apply(&self, u: &RealField) -> Result<RealField> {
        if !self.preserves_real() {
            return Err(Error::NonRealMultiplier(self.name.clone()));
        }
        if !self.grid.same_as(u.grid()) {
            return Err(Error::GridMismatch);
        }
        let mut c = self.grid.forward(u.samples());
        self.apply_coefficients(&mut c);
        Ok(RealField::from_parts(&self.grid, self.grid.inverse_real(&c), u.time()))
    }

    /// Operator product `self ∘ other`.
    pub fn compose(&self, other: &Multiplier) -> Result<Multiplier> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let (reality, sign) = match (self.reality, other.reality) {
            (Reality::Real, Reality::Real) => (Reality::Real, 1.0),
            (Reality::Imaginary, Reality::Imaginary) => (Reality::Real, -1.0),
            _ => (Reality::Imaginary, 1.0),
        };
        let parity = if self.parity == other.parity { Parity::Even } else { Parity::Odd };
        let profile = self.profile.iter().zip(&other.profile).map(|(a, b)| sign * a * b).collect();
        Ok(Multiplier {
            name: format!("{}∘{}", self.name, other.name),
            grid: self.grid.clone(),
            profile,
            parity,
            reality,
            clamped: self.clamped + other.clamped,
        })
    }

    /// Multiplier with symbol scaled by a real factor.
    pub fn scaled(&self, factor: f64) -> Multiplier {
        let mut m = self.clone();
        m.profile.iter_mut().for_each(|a| *a *= factor);
        m
    }
}

/// `F^{-1}(m · F u)`.
pub fn apply_multiplier(m: &Multiplier, u: &RealField) -> Result<RealField> {
    m.apply(u)
}

fn symmetrize(grid: &Grid, raw: &[f64], parity: Parity) -> Vec<f64> {
    let n = raw.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        match (grid.partner(i), parity) {
            (Some(j), Parity::Even) => out[i] = 0.5 * (raw[i] + raw[j]),
            (Some(j), Parity::Odd) => {
                if i != j {
                    out[i] = 0.5 * (raw[i] - raw[j]);
                }
            }
            (None, Parity::Even) => out[i] = raw[i],
            (None, Parity::Odd) => {}
        }
    }
    // Paired slots must hold exactly opposite or equal values.
    for i in 1..n / 2 {
        let j = n - i;
        out[j] = match parity {
            Parity::Even => out[i],
            Parity::Odd => -out[i],
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(64, 20.0).unwrap()
    }

    #[test]
    fn symmetrization_is_exact() {
        let g = grid();
        let m = Multiplier::real("skew", &g, Parity::Even, |k| k.exp());
        let o = Multiplier::imaginary("skew", &g, Parity::Odd, |k| k + k * k);
        for i in 0..64 {
            if let Some(j) = g.partner(i) {
                assert_eq!(m.profile()[i], m.profile()[j]);
                assert_eq!(o.profile()[i], -o.profile()[j]);
            } else {
                assert_eq!(o.profile()[i], 0.0);
            }
        }
        assert_eq!(o.profile()[0], 0.0);
    }

    #[test]
    fn identity_returns_input() {
        let g = grid();
        let u = RealField::from_fn(&g, |x| (-x * x).exp() * (3.0 * x).sin());
        let v = Multiplier::identity(&g).apply(&u).unwrap();
        assert!(v.relative_distance(&u).unwrap() < 1e-15);
    }

    #[test]
    fn realness_check() {
        let g = grid();
        let bad = Multiplier::imaginary("bad", &g, Parity::Even, |_| 1.0);
        let u = RealField::zeros(&g);
        assert!(matches!(bad.apply(&u), Err(Error::NonRealMultiplier(_))));
        let also_bad = Multiplier::real("bad", &g, Parity::Odd, |k| k);
        assert!(also_bad.apply(&u).is_err());
    }

    #[test]
    fn composition_tags() {
        let g = grid();
        let d = Multiplier::imaginary("d", &g, Parity::Odd, |k| k);
        let d2 = d.compose(&d).unwrap();
        assert_eq!(d2.parity(), Parity::Even);
        assert_eq!(d2.reality(), Reality::Real);
        assert_eq!(d2.profile()[1], -g.wavenumbers()[1].powi(2));
    }

    #[test]
    fn grid_mismatch() {
        let m = Multiplier::identity(&grid());
        let u = RealField::zeros(&Grid::new(32, 20.0).unwrap());
        assert!(matches!(m.apply(&u), Err(Error::GridMismatch)));
    }
}
