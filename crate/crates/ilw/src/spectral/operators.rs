//! Catalog of the Fourier multipliers used throughout the crate.
//!
//! | operator | symbol |
//! |---|---|
//! | `∂x` | `i k` |
//! | `T_δ` | `-i coth(δk)` |
//! | `H` | `-i sgn(k)` |
//! | `L(∂x)` | `Ω_δ(k)/k` |
//! | `L(∂x)∂x` | `i Ω_δ(k)` |
//! | `Ω'(∂x)` | `Ω'_δ(k)` |
//! | `q(∂x)` | `q(k)` |
//! | `p(∂x)` | `i p(k)` |
//! | `J^s` | `(1 + k²)^{s/2}` |
//! | `D^s` | `|k|^s` |

use super::field::RealField;
use super::grid::Grid;
use super::multiplier::{Multiplier, Parity};
use super::symbols::{
    coth_symbol, symbol_omega, symbol_omega_prime, symbol_p, symbol_q_checked, ModelParams,
};
use crate::error::Result;

pub fn derivative(grid: &Grid) -> Multiplier {
    Multiplier::imaginary("dx", grid, Parity::Odd, |k| k)
}

pub fn t_delta(params: &ModelParams, grid: &Grid) -> Multiplier {
    let p = *params;
    Multiplier::imaginary("T_delta", grid, Parity::Odd, move |k| -coth_symbol(&p, k))
}

pub fn hilbert(grid: &Grid) -> Multiplier {
    Multiplier::imaginary("H", grid, Parity::Odd, |k| if k == 0.0 { 0.0 } else { -k.signum() })
}

pub fn l_operator(params: &ModelParams, grid: &Grid) -> Multiplier {
    let p = *params;
    Multiplier::real("L", grid, Parity::Even, move |k| if k == 0.0 { 0.0 } else { symbol_omega(&p, k) / k })
}

/// Generator `L(∂x)∂x` of the linear ILW flow, symbol `i Ω_δ(k)`.
pub fn dispersion(params: &ModelParams, grid: &Grid) -> Multiplier {
    let p = *params;
    Multiplier::imaginary("L dx", grid, Parity::Odd, move |k| symbol_omega(&p, k))
}

pub fn omega_prime(params: &ModelParams, grid: &Grid) -> Multiplier {
    let p = *params;
    Multiplier::real("Omega'", grid, Parity::Even, move |k| symbol_omega_prime(&p, k))
}

/// `q(∂x)`; the number of clamped negative `Ω'` samples is kept on the multiplier.
pub fn q_operator(params: &ModelParams, grid: &Grid) -> Multiplier {
    let p = *params;
    let clamped = grid.wavenumbers().iter().filter(|&&k| symbol_q_checked(&p, k).1).count();
    Multiplier::real("q", grid, Parity::Even, move |k| symbol_q_checked(&p, k).0).with_clamped(clamped)
}

pub fn p_operator(params: &ModelParams, grid: &Grid) -> Multiplier {
    let p = *params;
    let clamped = grid.wavenumbers().iter().filter(|&&k| symbol_q_checked(&p, k).1).count();
    Multiplier::imaginary("p", grid, Parity::Odd, move |k| symbol_p(&p, k)).with_clamped(clamped)
}

/// Bessel potential `J^s = (1 - ∂x²)^{s/2}`.
pub fn bessel(s: f64, grid: &Grid) -> Multiplier {
    Multiplier::real(format!("J^{s}"), grid, Parity::Even, move |k| (1.0 + k * k).powf(0.5 * s))
}

/// Riesz derivative `D^s = |∂x|^s`.
pub fn riesz(s: f64, grid: &Grid) -> Multiplier {
    Multiplier::real(format!("D^{s}"), grid, Parity::Even, move |k| k.abs().powf(s))
}

/// Number of wavenumbers of `grid` where `Ω'_δ < 0`.
pub fn negative_omega_prime_count(params: &ModelParams, grid: &Grid) -> usize {
    grid.wavenumbers().iter().filter(|&&k| symbol_q_checked(params, k).1).count()
}

pub fn apply_t_delta(params: &ModelParams, u: &RealField) -> Result<RealField> {
    t_delta(params, u.grid()).apply(u)
}

pub fn apply_hilbert(u: &RealField) -> Result<RealField> {
    hilbert(u.grid()).apply(u)
}

pub fn apply_l(params: &ModelParams, u: &RealField) -> Result<RealField> {
    l_operator(params, u.grid()).apply(u)
}

pub fn apply_j(s: f64, u: &RealField) -> Result<RealField> {
    bessel(s, u.grid()).apply(u)
}

pub fn apply_d(s: f64, u: &RealField) -> Result<RealField> {
    riesz(s, u.grid()).apply(u)
}

pub fn apply_derivative(u: &RealField) -> Result<RealField> {
    derivative(u.grid()).apply(u)
}
