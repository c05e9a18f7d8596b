use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `|δk|` the symbols switch to their Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-3;

/// Physical parameters of the ILW equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Depth parameter `δ > 0`.
    pub delta: f64,
}

impl ModelParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter(format!("delta = {delta} must be positive")));
        }
        Ok(Self { delta })
    }
}

/// `(coth(|z|), csch²(|z|))` for `|z| > 0`, accurate for large arguments.
fn coth_csch2(z: f64) -> (f64, f64) {
    let a = z.abs();
    let e = (-2.0 * a).exp();
    let one_minus = -(-2.0 * a).exp_m1();
    ((1.0 + e) / one_minus, 4.0 * e / (one_minus * one_minus))
}

/// Dispersion symbol `Ω_δ(k) = k² coth(δk) - k/δ` (odd in `k`).
pub fn symbol_omega(params: &ModelParams, k: f64) -> f64 {
    let d = params.delta;
    let z = d * k;
    if z.abs() < SERIES_THRESHOLD {
        let k2 = k * k;
        let d2 = d * d;
        return d * k * k2 * (1.0 / 3.0 - d2 * k2 / 45.0 + 2.0 * d2 * d2 * k2 * k2 / 945.0);
    }
    let (c, _) = coth_csch2(z);
    k * (k.abs() * c - 1.0 / d)
}

/// Derivative `Ω'_δ(k) = 2k coth(δk) - δk² csch²(δk) - 1/δ` (even in `k`).
pub fn symbol_omega_prime(params: &ModelParams, k: f64) -> f64 {
    let d = params.delta;
    let z = d * k;
    let k2 = k * k;
    if z.abs() < SERIES_THRESHOLD {
        let d2 = d * d;
        return d * k2 * (1.0 - d2 * k2 / 9.0 + 14.0 * d2 * d2 * k2 * k2 / 945.0);
    }
    let (c, s2) = coth_csch2(z);
    2.0 * k.abs() * c - d * k2 * s2 - 1.0 / d
}

/// Even square root `q = (max(Ω', 0))^{1/2}`; the flag reports a clamped sample.
pub fn symbol_q_checked(params: &ModelParams, k: f64) -> (f64, bool) {
    let w = symbol_omega_prime(params, k);
    if w < 0.0 {
        (0.0, true)
    } else {
        (w.sqrt(), false)
    }
}

/// Even square root of `Ω'_δ`, clamped at zero.
pub fn symbol_q(params: &ModelParams, k: f64) -> f64 {
    symbol_q_checked(params, k).0
}

/// Odd square root `p(k) = sgn(k) q(k)`.
pub fn symbol_p(params: &ModelParams, k: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k.signum() * symbol_q(params, k)
    }
}

/// `coth(δk)` with the odd convention `0` at `k = 0`.
pub fn coth_symbol(params: &ModelParams, k: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k.signum() * coth_csch2(params.delta * k).0
    }
}

/// Even function `k coth(δk)`, equal to `1/δ` at `k = 0`.
pub fn k_coth(params: &ModelParams, k: f64) -> f64 {
    let d = params.delta;
    let z = d * k;
    if z.abs() < SERIES_THRESHOLD {
        let z2 = z * z;
        return (1.0 + z2 / 3.0 - z2 * z2 / 45.0) / d;
    }
    k.abs() * coth_csch2(z).0
}
