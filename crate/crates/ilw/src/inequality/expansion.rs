use num_complex::Complex64;

use super::battery::{japanese_derivatives, WeightSpec};
use super::report::RatioReport;
use crate::error::{Error, Result};
use crate::spectral::{symbol_omega_prime, symbol_p, ModelParams, RealField};

/// Fourier multipliers whose symbol can be differentiated in `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExpansionSymbol {
    Identity,
    /// `J^s`, symbol `(1 + k²)^{s/2}`.
    Bessel(f64),
    /// `p(∂x)`, symbol `i p(k)`.
    P(ModelParams),
    /// `Ω'(∂x)`.
    OmegaPrime(ModelParams),
}

/// Sixth-order centered differences of `f` at `k` with step `1e-3 (1 + |k|)`.
pub fn symbol_derivative_fd(f: impl Fn(f64) -> f64, k: f64, order: usize) -> f64 {
    let h = 1e-3 * (1.0 + k.abs());
    let v = |m: f64| f(k + m * h);
    match order {
        0 => f(k),
        1 => (-v(-3.0) + 9.0 * v(-2.0) - 45.0 * v(-1.0) + 45.0 * v(1.0) - 9.0 * v(2.0) + v(3.0)) / (60.0 * h),
        2 => {
            (2.0 * v(-3.0) - 27.0 * v(-2.0) + 270.0 * v(-1.0) - 490.0 * v(0.0) + 270.0 * v(1.0) - 27.0 * v(2.0)
                + 2.0 * v(3.0))
                / (180.0 * h * h)
        }
        _ => panic!("symbol derivatives are provided up to second order"),
    }
}

impl ExpansionSymbol {
    pub fn label(&self) -> String {
        match self {
            ExpansionSymbol::Identity => "I".into(),
            ExpansionSymbol::Bessel(s) => format!("J^{s}"),
            ExpansionSymbol::P(m) => format!("p[delta={}]", m.delta),
            ExpansionSymbol::OmegaPrime(m) => format!("Omega'[delta={}]", m.delta),
        }
    }

    /// `d^j/dk^j` of the symbol, `j ≤ 2`.
    pub fn derivative(&self, j: usize, k: f64) -> Complex64 {
        match *self {
            ExpansionSymbol::Identity => Complex64::new(if j == 0 { 1.0 } else { 0.0 }, 0.0),
            ExpansionSymbol::Bessel(s) => Complex64::new(japanese_derivatives(s, k)[j], 0.0),
            ExpansionSymbol::P(m) => Complex64::new(0.0, symbol_derivative_fd(|x| symbol_p(&m, x), k, j)),
            ExpansionSymbol::OmegaPrime(m) => {
                Complex64::new(symbol_derivative_fd(|x| symbol_omega_prime(&m, x), k, j), 0.0)
            }
        }
    }
}

/// Apply the symbol `sym(k)` to a real field; the Nyquist mode is dropped.
pub fn apply_symbol(u: &RealField, sym: impl Fn(f64) -> Complex64) -> RealField {
    let grid = u.grid();
    let mut c = grid.forward(u.samples());
    let nyq = grid.nyquist_index();
    for (i, (ci, &k)) in c.iter_mut().zip(grid.wavenumbers()).enumerate() {
        *ci = if i == nyq { Complex64::new(0.0, 0.0) } else { *ci * sym(k) };
    }
    RealField::from_parts(grid, grid.inverse_real(&c), u.time())
}

fn product(a: &RealField, b: &RealField) -> RealField {
    RealField::from_parts(a.grid(), a.samples().iter().zip(b.samples()).map(|(x, y)| x * y).collect(), a.time())
}

fn sum_squares(fields: &[&RealField]) -> f64 {
    fields.iter().map(|f| f.l2_norm().powi(2)).sum::<f64>().sqrt()
}

/// `R_k f = [Q; φ] f - Σ_{j≤k} (1/j!) φ^{(j)} (-i)^j Q^{(j)}(∂x) f`.
pub fn expansion_remainder(q: &ExpansionSymbol, weight: &WeightSpec, f: &RealField, k: usize) -> Result<RealField> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameter(format!("expansion order k = {k} must be 1 or 2")));
    }
    if !weight.admits_order(k) {
        return Err(Error::InvalidParameter(format!(
            "weight {} has a non-decaying derivative of order {k}",
            weight.label()
        )));
    }
    let grid = f.grid();
    let phi = weight.sample(grid, 0);
    let qf = apply_symbol(f, |x| q.derivative(0, x));
    let comm = apply_symbol(&product(&phi, f), |x| q.derivative(0, x));
    let mut r: Vec<f64> = comm.samples().iter().zip(product(&phi, &qf).samples()).map(|(a, b)| a - b).collect();
    let mut factorial = 1.0;
    for j in 1..=k {
        factorial *= j as f64;
        let phase = Complex64::new(0.0, -1.0).powi(j as i32) / factorial;
        let term = apply_symbol(f, |x| phase * q.derivative(j, x));
        let dphi = weight.sample(grid, j);
        for ((ri, t), d) in r.iter_mut().zip(term.samples()).zip(dphi.samples()) {
            *ri -= d * t;
        }
    }
    Ok(RealField::from_parts(grid, r, f.time()))
}

/// `‖R_k f‖₂ / (‖φ^{(k)}‖_{1,2} ‖f‖₂)`.
pub fn check_commutator_expansion(
    q: &ExpansionSymbol,
    weight: &WeightSpec,
    f: &RealField,
    k: usize,
) -> Result<RatioReport> {
    let r = expansion_remainder(q, weight, f, k)?;
    let grid = f.grid();
    let dk = weight.sample(grid, k);
    let dk1 = weight.sample(grid, k + 1);
    let rhs = sum_squares(&[&dk, &dk1]) * f.l2_norm();
    Ok(RatioReport::single(
        format!("commutator-expansion[{},k={k}]", q.label()),
        weight.label(),
        r.l2_norm(),
        rhs,
    ))
}
