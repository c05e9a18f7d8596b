//! Conserved quantities of the ILW flow.

use crate::error::Result;
use crate::spectral::operators::{derivative, t_delta};
use crate::spectral::{ModelParams, RealField};

/// `I₁ = ∫ u`.
pub fn invariant_i1(u: &RealField) -> f64 {
    u.integral()
}

/// `I₂ = ∫ u²`.
pub fn invariant_i2(u: &RealField) -> f64 {
    u.l2_norm().powi(2)
}

/// `(u_x, T_δ u_x)`.
fn derivative_pair(params: &ModelParams, u: &RealField) -> Result<(RealField, RealField)> {
    let ux = derivative(u.grid()).apply(u)?;
    let tux = t_delta(params, u.grid()).apply(&ux)?;
    Ok((ux, tux))
}

/// Hamiltonian `I₃ = ∫ (u T_δ u_x + u²/δ - u³/3)`.
pub fn invariant_i3(params: &ModelParams, u: &RealField) -> Result<f64> {
    let (_, tux) = derivative_pair(params, u)?;
    let d = params.delta;
    let sum: f64 = u
        .samples()
        .iter()
        .zip(tux.samples())
        .map(|(&v, &t)| v * t + v * v / d - v * v * v / 3.0)
        .sum();
    Ok(u.grid().spacing() * sum)
}

/// `I₄ = ∫ (u⁴/4 - (3/2) u² T_δu_x + u_x²/2 + (3/2)(T_δu_x)²
///        + (1/δ)(3u³/2 - (9/2) u T_δu_x) + 3u²/(2δ²))`,
/// the invariant controlling `‖u‖_{H¹}`.
pub fn invariant_i4(params: &ModelParams, u: &RealField) -> Result<f64> {
    let (ux, tux) = derivative_pair(params, u)?;
    let d = params.delta;
    let sum: f64 = u
        .samples()
        .iter()
        .zip(ux.samples())
        .zip(tux.samples())
        .map(|((&v, &x), &t)| {
            let v2 = v * v;
            0.25 * v2 * v2 - 1.5 * v2 * t + 0.5 * x * x + 1.5 * t * t
                + (1.5 * v2 * v - 4.5 * v * t) / d
                + 1.5 * v2 / (d * d)
        })
        .sum();
    Ok(u.grid().spacing() * sum)
}

/// All four invariants.
pub fn invariants(params: &ModelParams, u: &RealField) -> Result<[f64; 4]> {
    Ok([invariant_i1(u), invariant_i2(u), invariant_i3(params, u)?, invariant_i4(params, u)?])
}
