use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{boundary_mass_fraction, Grid, RealField};

/// Largest boundary mass fraction accepted for a battery function.
pub const BATTERY_BOUNDARY_LIMIT: f64 = 1e-8;

/// `a · H_n(y) e^{-y²/2} cos(ω (x - x₀) + θ)` with `y = (x - x₀)/w`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FunctionSpec {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    pub hermite: u32,
    pub omega: f64,
    pub phase: f64,
}

/// Physicists' Hermite polynomial `H_n(y)`.
pub fn hermite(n: u32, y: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let next = 2.0 * y * cur - 2.0 * m as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

impl FunctionSpec {
    pub fn gaussian(center: f64, width: f64) -> Self {
        Self { amplitude: 1.0, center, width, hermite: 0, omega: 0.0, phase: 0.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let y = (x - self.center) / self.width;
        self.amplitude * hermite(self.hermite, y) * (-0.5 * y * y).exp() * (self.omega * (x - self.center) + self.phase).cos()
    }

    pub fn label(&self) -> String {
        format!("H{}(c={:.3},w={:.3},om={:.3})", self.hermite, self.center, self.width, self.omega)
    }

    pub fn sample(&self, grid: &Grid) -> RealField {
        RealField::from_fn(grid, |x| self.eval(x))
    }
}

/// Weights `⟨x/ℓ⟩^β` and `(x/ℓ)⟨x/ℓ⟩^{β-1}`, sampled on the box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum WeightSpec {
    Japanese { beta: f64, scale: f64 },
    OddPower { beta: f64, scale: f64 },
}

/// `(1 + y²)^{s/2}` and its first three derivatives in `y`.
pub fn japanese_derivatives(s: f64, y: f64) -> [f64; 4] {
    let g = 1.0 + y * y;
    let a = 0.5 * s;
    [
        g.powf(a),
        s * y * g.powf(a - 1.0),
        s * g.powf(a - 1.0) + s * (s - 2.0) * y * y * g.powf(a - 2.0),
        3.0 * s * (s - 2.0) * y * g.powf(a - 2.0) + s * (s - 2.0) * (s - 4.0) * y.powi(3) * g.powf(a - 3.0),
    ]
}

impl WeightSpec {
    pub fn beta(&self) -> f64 {
        match *self {
            WeightSpec::Japanese { beta, .. } | WeightSpec::OddPower { beta, .. } => beta,
        }
    }

    /// Weight and its first three `x` derivatives.
    pub fn derivatives(&self, x: f64) -> [f64; 4] {
        match *self {
            WeightSpec::Japanese { beta, scale } => {
                let d = japanese_derivatives(beta, x / scale);
                [d[0], d[1] / scale, d[2] / scale.powi(2), d[3] / scale.powi(3)]
            }
            WeightSpec::OddPower { beta, scale } => {
                let y = x / scale;
                let h = japanese_derivatives(beta - 1.0, y);
                [y * h[0], (h[0] + y * h[1]) / scale, (2.0 * h[1] + y * h[2]) / scale.powi(2), (3.0 * h[2] + y * h[3]) / scale.powi(3)]
            }
        }
    }

    /// Whether the `k`-th derivative is square integrable on the line.
    pub fn admits_order(&self, k: usize) -> bool {
        let beta = self.beta();
        beta == 0.0 || beta - (k as f64) < -0.5
    }

    pub fn label(&self) -> String {
        match *self {
            WeightSpec::Japanese { beta, scale } => format!("<x/{scale}>^{beta}"),
            WeightSpec::OddPower { beta, scale } => format!("(x/{scale})<x/{scale}>^{}", beta - 1.0),
        }
    }

    /// The `j`-th derivative sampled on `grid`.
    pub fn sample(&self, grid: &Grid, j: usize) -> RealField {
        RealField::from_fn(grid, |x| self.derivatives(x)[j])
    }
}

/// Seeded collection of test functions and weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestBattery {
    pub seed: u64,
    pub functions: Vec<FunctionSpec>,
    pub weights: Vec<WeightSpec>,
}

impl TestBattery {
    pub const DEFAULT_SIZE: usize = 12;

    /// `size` functions drawn from a ChaCha stream seeded with `seed`.
    pub fn generate(seed: u64, size: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let functions = (0..size)
            .map(|i| {
                let modulated = i % 3 == 2;
                FunctionSpec {
                    amplitude: rng.gen_range(0.5..2.0),
                    center: rng.gen_range(-4.0..4.0),
                    width: rng.gen_range(0.7..2.0),
                    hermite: (i % 4) as u32,
                    omega: if modulated { rng.gen_range(0.5..2.0) } else { 0.0 },
                    phase: if modulated { rng.gen_range(0.0..std::f64::consts::TAU) } else { 0.0 },
                }
            })
            .collect();
        Self { seed, functions, weights: Self::standard_weights() }
    }

    /// `⟨x/4⟩^β` with `β ∈ {1/4, 1}` and `φ_{2α} = x⟨x⟩^{2α-1}` (dilated by 4) with `α ∈ {1/5, 3/5}`.
    pub fn standard_weights() -> Vec<WeightSpec> {
        vec![
            WeightSpec::Japanese { beta: 0.25, scale: 4.0 },
            WeightSpec::Japanese { beta: 1.0, scale: 4.0 },
            WeightSpec::OddPower { beta: 0.4, scale: 4.0 },
            WeightSpec::OddPower { beta: 1.2, scale: 4.0 },
        ]
    }

    /// Sample every function, rejecting any that reaches the box edge.
    pub fn sample(&self, grid: &Grid) -> Result<Vec<RealField>> {
        self.functions
            .iter()
            .map(|f| {
                let u = f.sample(grid);
                let fraction = boundary_mass_fraction(&u);
                if fraction >= BATTERY_BOUNDARY_LIMIT {
                    return Err(Error::InvalidParameter(format!(
                        "battery function {} has boundary mass fraction {fraction:.2e}",
                        f.label()
                    )));
                }
                Ok(u)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(1, 0.3), 0.6);
        assert!((hermite(3, 0.5) - (8.0 * 0.125 - 12.0 * 0.5)).abs() < 1e-15);
    }

    #[test]
    fn same_seed_same_battery() {
        assert_eq!(TestBattery::generate(7, 10), TestBattery::generate(7, 10));
        assert_ne!(TestBattery::generate(7, 10), TestBattery::generate(8, 10));
    }

    #[test]
    fn battery_is_localized() {
        let g = Grid::new(1024, 100.0).unwrap();
        assert!(TestBattery::generate(1, 12).sample(&g).is_ok());
        let narrow = Grid::new(64, 8.0).unwrap();
        assert!(TestBattery::generate(1, 12).sample(&narrow).is_err());
    }

    #[test]
    fn weight_derivatives_match_differences() {
        for w in TestBattery::standard_weights() {
            for x in [-3.1, -0.4, 0.0, 0.7, 5.0] {
                let d = w.derivatives(x);
                let h = 1e-4;
                for j in 0..3 {
                    let fd = (w.derivatives(x + h)[j] - w.derivatives(x - h)[j]) / (2.0 * h);
                    assert!((fd - d[j + 1]).abs() < 1e-6, "{:?} x={x} j={j}", w);
                }
            }
        }
    }

    #[test]
    fn admissible_orders() {
        let w = WeightSpec::Japanese { beta: 1.0, scale: 1.0 };
        assert!(!w.admits_order(1));
        assert!(w.admits_order(2));
        assert!(WeightSpec::Japanese { beta: 0.25, scale: 1.0 }.admits_order(1));
    }
}
