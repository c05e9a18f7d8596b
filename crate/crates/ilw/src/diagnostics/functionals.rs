//! Time-dependent virial functionals, region masses and smoothing fluxes.

use serde::{Deserialize, Serialize};

use super::weights::WeightFamily;
use crate::error::{Error, Result};
use crate::spectral::operators::p_operator;
use crate::spectral::{ModelParams, RealField};

/// Earliest time accepted by the `t ≫ 1` functionals.
pub const FUNCTIONAL_T_MIN: f64 = 10.0;

/// Parameters of the decay diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VirialParams {
    /// Ball radius exponent, `|x| < t^b`.
    pub b: f64,
    /// Ball centre exponent for the shifted region, `ρ(t) = t^m`.
    pub m: f64,
    /// Exponent of the outer scale `μ₁^q`.
    pub q_exp: f64,
    pub sigma: f64,
    pub lambda: f64,
    /// Exponent of the weighted norm and smoothing fluxes.
    pub alpha: f64,
    /// Ray speed of the rightward region `x ≥ c0 t + c1`.
    pub c0: f64,
    pub c1: f64,
    /// Enforce the stricter constraint `m < 1 - 3b/2` of the shifted-ball statement.
    pub corollary: bool,
}

impl Default for VirialParams {
    fn default() -> Self {
        Self { b: 0.5, m: 0.2, q_exp: 1.5, sigma: 1.0, lambda: 1.0, alpha: 0.5, c0: 2.0, c1: -5.0, corollary: false }
    }
}

impl VirialParams {
    /// Every violated constraint as `(key, message)`.
    pub fn violations(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let finite = [
            ("b", self.b),
            ("m", self.m),
            ("q_exp", self.q_exp),
            ("sigma", self.sigma),
            ("lambda", self.lambda),
            ("alpha", self.alpha),
            ("c0", self.c0),
            ("c1", self.c1),
        ];
        for (key, v) in finite {
            if !v.is_finite() {
                out.push((key, format!("{key} = {v} must be finite")));
            }
        }
        if !(self.b > 0.0 && self.b < 2.0 / 3.0) {
            out.push(("b", format!("b = {} violates 0 < b < 2/3", self.b)));
        }
        if !(self.q_exp > 1.0) {
            out.push(("q_exp", format!("q_exp = {} must exceed 1", self.q_exp)));
        } else if self.b > 2.0 / (2.0 + self.q_exp) {
            out.push((
                "b",
                format!("b = {} violates b <= min{{2/3, 2/(2+q)}} = {:.6} for q = {}", self.b, 2.0 / (2.0 + self.q_exp), self.q_exp),
            ));
        }
        if !(self.m >= 0.0 && self.m <= 1.0 - self.b / 2.0) {
            out.push(("m", format!("m = {} violates 0 <= m <= 1 - b/2 = {}", self.m, 1.0 - self.b / 2.0)));
        }
        if self.corollary && !(self.m < 1.0 - 1.5 * self.b) {
            out.push(("m", format!("m = {} violates m < 1 - 3b/2 = {}", self.m, 1.0 - 1.5 * self.b)));
        }
        if !(self.sigma > 0.0) {
            out.push(("sigma", format!("sigma = {} must be positive", self.sigma)));
        }
        if !(self.lambda > 0.0) {
            out.push(("lambda", format!("lambda = {} must be positive", self.lambda)));
        }
        if !(self.alpha >= 0.0) {
            out.push(("alpha", format!("alpha = {} must be non-negative", self.alpha)));
        }
        if !(self.c0 > 0.0) {
            out.push(("c0", format!("c0 = {} must be positive", self.c0)));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some((_, msg)) => Err(Error::InvalidParameter(msg.clone())),
        }
    }
}

/// Inner scale `μ₁(t) = t^b / log t`.
pub fn mu1(t: f64, b: f64) -> f64 {
    t.powf(b) / t.ln()
}

/// Normalization `μ(t) = t^{1-b} log² t`.
pub fn mu(t: f64, b: f64) -> f64 {
    t.powf(1.0 - b) * t.ln().powi(2)
}

/// `μ₁'/μ₁ = b/t - 1/(t log t)`.
pub fn mu1_log_derivative(t: f64, b: f64) -> f64 {
    b / t - 1.0 / (t * t.ln())
}

/// `μ'/μ = (1-b)/t + 2/(t log t)`.
pub fn mu_log_derivative(t: f64, b: f64) -> f64 {
    (1.0 - b) / t + 2.0 / (t * t.ln())
}

/// Decay shape `t^{-(2-2b-bq)/2} log^{-(4+q)/2} t` of the bound on `I(t)`.
pub fn functional_i_shape(t: f64, params: &VirialParams) -> f64 {
    let (b, q) = (params.b, params.q_exp);
    t.powf(-(2.0 - 2.0 * b - b * q) / 2.0) * t.ln().powf(-(4.0 + q) / 2.0)
}

/// Integration region for [`region_mass`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `|x| < t^b`.
    BallCentered,
    /// `|x - t^m| < t^b`.
    BallShifted,
    /// `x ≥ c0 t + c1`.
    RightOfRay,
}

/// `∫_region u²` with a sharp indicator.
pub fn region_mass(u: &RealField, t: f64, params: &VirialParams, region: Region) -> Result<f64> {
    let half = 0.5 * u.grid().length();
    let inside: Box<dyn Fn(f64) -> bool> = match region {
        Region::BallCentered | Region::BallShifted => {
            if !(t > 1.0) {
                return Err(Error::OutOfRange(format!("ball regions need t > 1, got t = {t}")));
            }
            let r = t.powf(params.b);
            let c = if region == Region::BallShifted { t.powf(params.m) } else { 0.0 };
            if (c - r).abs().max((c + r).abs()) > half {
                log::warn!("region {region:?} at t = {t} extends past the periodic box");
            }
            Box::new(move |x: f64| (x - c).abs() < r)
        }
        Region::RightOfRay => {
            let edge = params.c0 * t + params.c1;
            if edge.abs() > half {
                log::warn!("ray x = {edge} at t = {t} lies outside the periodic box");
            }
            Box::new(move |x: f64| x >= edge)
        }
    };
    let sum: f64 =
        u.samples().iter().zip(u.grid().nodes()).filter(|(_, &x)| inside(x)).map(|(&v, _)| v * v).sum();
    Ok(u.grid().spacing() * sum)
}

fn check_time(t: f64) -> Result<()> {
    if t >= FUNCTIONAL_T_MIN {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("functionals need t >= {FUNCTIONAL_T_MIN}, got t = {t}")))
    }
}

fn weighted_integral(u: &RealField, shift: f64, t: f64, params: &VirialParams) -> Result<f64> {
    check_time(t)?;
    let wf = WeightFamily::new();
    let inner = mu1(t, params.b);
    let outer = inner.powf(params.q_exp);
    let sum: f64 = u
        .samples()
        .iter()
        .zip(u.grid().nodes())
        .map(|(&v, &x)| {
            let y = x - shift;
            v * wf.psi_sigma(y / inner, params.sigma) * wf.phi_lambda(y / outer, params.lambda)
        })
        .sum();
    Ok(u.grid().spacing() * sum / mu(t, params.b))
}

/// `I(t) = μ⁻¹ ∫ u ψ_σ(x/μ₁) φ_λ(x/μ₁^q) dx`.
pub fn functional_i(u: &RealField, t: f64, params: &VirialParams) -> Result<f64> {
    weighted_integral(u, 0.0, t, params)
}

/// `I(t)` with `x` replaced by `x - ρ(t)`, `ρ(t) = sign · t^m`.
pub fn functional_i_rho(u: &RealField, t: f64, params: &VirialParams, sign: f64) -> Result<f64> {
    check_time(t)?;
    weighted_integral(u, sign.signum() * t.powf(params.m), t, params)
}

/// `J(t) = μ⁻¹ ∫ u² ψ_σ(x/μ₁) dx`.
pub fn functional_j(u: &RealField, t: f64, params: &VirialParams) -> Result<f64> {
    check_time(t)?;
    let wf = WeightFamily::new();
    let inner = mu1(t, params.b);
    let sum: f64 = u
        .samples()
        .iter()
        .zip(u.grid().nodes())
        .map(|(&v, &x)| v * v * wf.psi_sigma(x / inner, params.sigma))
        .sum();
    Ok(u.grid().spacing() * sum / mu(t, params.b))
}

/// Cauchy–Schwarz bound `(μ₁^{q/2}/μ) ‖u‖₂ σ ψ(∞) λ^{3/2} ‖φ‖₂ ≥ |I(t)|`.
pub fn functional_i_bound(u: &RealField, t: f64, params: &VirialParams) -> Result<f64> {
    check_time(t)?;
    let wf = WeightFamily::new();
    let constant = u.l2_norm() * params.sigma * wf.psi_infinity() * params.lambda.powf(1.5) * wf.phi_l2_squared().sqrt();
    Ok(constant * mu1(t, params.b).powf(0.5 * params.q_exp) / mu(t, params.b))
}

/// Instantaneous smoothing fluxes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothingFlux {
    /// `∫ ⟨x⟩^{2α-1} |p(∂x) u|²`.
    pub half: f64,
    /// `∫ ⟨x⟩^{2(α-1)} |p(∂x)² u|²`.
    pub full: f64,
}

pub fn smoothing_flux(model: &ModelParams, u: &RealField, alpha: f64) -> Result<SmoothingFlux> {
    let p = p_operator(model, u.grid());
    let pu = p.apply(u)?;
    let ppu = p.apply(&pu)?;
    let nodes = u.grid().nodes();
    let h = u.grid().spacing();
    let half = h * pu.samples().iter().zip(nodes).map(|(&v, &x)| (1.0 + x * x).powf(alpha - 0.5) * v * v).sum::<f64>();
    let full = h * ppu.samples().iter().zip(nodes).map(|(&v, &x)| (1.0 + x * x).powf(alpha - 1.0) * v * v).sum::<f64>();
    Ok(SmoothingFlux { half, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{symbol_p, Grid};

    #[test]
    fn scales_at_t10() {
        assert!((mu1(10.0, 0.5) - 1.3733597380570537507).abs() < 1e-14);
        assert!((mu(10.0, 0.5) - 16.766073951254780004).abs() < 1e-12);
    }

    #[test]
    fn log_derivatives() {
        for t in [10.0, 100.0, 1000.0] {
            let h = 1e-3 * t;
            let five = |f: &dyn Fn(f64) -> f64| {
                (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
            };
            let fd1 = five(&|s| mu1(s, 0.5).ln());
            let fd = five(&|s| mu(s, 0.5).ln());
            assert!((fd1 - mu1_log_derivative(t, 0.5)).abs() < 1e-8 * mu1_log_derivative(t, 0.5).abs());
            assert!((fd - mu_log_derivative(t, 0.5)).abs() < 1e-8 * mu_log_derivative(t, 0.5));
        }
    }

    #[test]
    fn constraint_messages() {
        let p = VirialParams { b: 0.7, ..Default::default() };
        let v = p.violations();
        assert!(v.iter().any(|(_, m)| m.contains("0 < b < 2/3")));
        let p = VirialParams { m: 0.3, corollary: true, ..Default::default() };
        assert!(p.violations().iter().any(|(_, m)| m.contains("m < 1 - 3b/2")));
        assert!(VirialParams::default().violations().is_empty());
    }

    #[test]
    fn zero_field_functionals() {
        let g = Grid::new(256, 100.0).unwrap();
        let z = RealField::zeros(&g);
        let p = VirialParams::default();
        assert_eq!(functional_i(&z, 10.0, &p).unwrap(), 0.0);
        assert_eq!(functional_j(&z, 10.0, &p).unwrap(), 0.0);
        assert_eq!(region_mass(&z, 5.0, &p, Region::BallCentered).unwrap(), 0.0);
        assert!(functional_i(&z, 9.0, &p).is_err());
        assert!(region_mass(&z, 1.0, &p, Region::BallShifted).is_err());
    }

    #[test]
    fn j_nonnegative_for_right_supported_data() {
        let g = Grid::new(512, 100.0).unwrap();
        let u = RealField::from_fn(&g, |x| (-(x - 6.0) * (x - 6.0)).exp());
        let p = VirialParams::default();
        assert!(functional_j(&u, 12.0, &p).unwrap() > 0.0);
        let i = functional_i(&u, 12.0, &p).unwrap();
        assert!(i.abs() <= functional_i_bound(&u, 12.0, &p).unwrap());
    }

    #[test]
    fn flux_on_single_mode() {
        let g = Grid::new(128, 40.0).unwrap();
        let model = ModelParams::new(1.0).unwrap();
        let k = g.wavenumbers()[4];
        let u = RealField::from_fn(&g, |x| (k * x).cos());
        let f = smoothing_flux(&model, &u, 0.5).unwrap();
        let expected = symbol_p(&model, k).powi(2) * 40.0 / 2.0;
        assert!((f.half - expected).abs() < 1e-12 * expected);
        assert_eq!(smoothing_flux(&model, &RealField::zeros(&g), 0.5).unwrap().full, 0.0);
    }
}
