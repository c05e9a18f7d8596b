//! Ratio checks of the remainder bounds entering the virial argument.

use rayon::prelude::*;

use super::functionals::VirialParams;
use super::weights::WeightFamily;
use crate::error::Result;
use crate::inequality::{merge_reports, RatioReport, TestBattery};
use crate::spectral::operators::{dispersion, omega_prime, q_operator};
use crate::spectral::{Grid, ModelParams, RealField};

/// Weights of the remainder battery.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RemainderWeight {
    /// `χ((x - c1)/(c0 t))`.
    ChiRay { t: f64, c0: f64, c1: f64 },
    /// `ψ_σ(x) = σ ψ(x/σ)`.
    Psi { sigma: f64 },
    Constant,
}

impl RemainderWeight {
    pub fn label(&self) -> String {
        match *self {
            RemainderWeight::ChiRay { t, .. } => format!("chi-ray(t={t})"),
            RemainderWeight::Psi { sigma } => format!("psi(sigma={sigma})"),
            RemainderWeight::Constant => "constant".into(),
        }
    }

    /// Weight and first three derivatives.
    pub fn derivatives(&self, wf: &WeightFamily, x: f64) -> [f64; 4] {
        match *self {
            RemainderWeight::ChiRay { t, c0, c1 } => {
                let scale = c0 * t;
                let d = wf.chi_derivatives((x - c1) / scale);
                [d[0], d[1] / scale, d[2] / scale.powi(2), d[3] / scale.powi(3)]
            }
            RemainderWeight::Psi { sigma } => {
                let d = wf.phi_derivatives(x / sigma);
                [wf.psi_sigma(x, sigma), d[0], d[1] / sigma, d[2] / sigma.powi(2)]
            }
            RemainderWeight::Constant => [1.0, 0.0, 0.0, 0.0],
        }
    }

    fn sample(&self, wf: &WeightFamily, grid: &Grid) -> [RealField; 4] {
        let d: Vec<[f64; 4]> = grid.nodes().iter().map(|&x| self.derivatives(wf, x)).collect();
        std::array::from_fn(|j| RealField::from_fn_indexed(grid, |i| d[i][j]))
    }
}

/// χ-ray weights at `t ∈ {2, 5, 10}` and `ψ_σ` with `σ ∈ {1, 2}`.
pub fn standard_remainder_weights(params: &VirialParams) -> Vec<RemainderWeight> {
    let mut w: Vec<RemainderWeight> =
        [2.0, 5.0, 10.0].iter().map(|&t| RemainderWeight::ChiRay { t, c0: params.c0, c1: params.c1 }).collect();
    w.push(RemainderWeight::Psi { sigma: 1.0 });
    w.push(RemainderWeight::Psi { sigma: 2.0 });
    w
}

fn product(a: &RealField, b: &RealField) -> Result<RealField> {
    a.zip_with(b, |x, y| x * y)
}

fn diff(a: &RealField, b: &RealField) -> Result<RealField> {
    a.zip_with(b, |x, y| x - y)
}

/// Reports for one (weight, f) pair: the dispersive commutator remainder
/// `R₁ = [A; φ] - φ' Ω'(∂x)` against `‖φ''‖^{1/2} ‖φ'''‖^{1/2} ‖f‖`, and
/// `‖q[q; ρ] f‖` against `‖ρ'‖_{H²} ‖f‖` and `‖ρ''‖^{1/2}(‖ρ'‖^{1/2} + ‖ρ'''‖^{1/2}) ‖f‖`.
pub fn remainder_ratios(model: &ModelParams, weight: &RemainderWeight, f: &RealField) -> Result<[RatioReport; 3]> {
    let grid = f.grid();
    let wf = WeightFamily::new();
    let [w0, w1, w2, w3] = weight.sample(&wf, grid);
    let a = dispersion(model, grid);
    let q = q_operator(model, grid);
    let comm = diff(&a.apply(&product(&w0, f)?)?, &product(&w0, &a.apply(f)?)?)?;
    let r1 = diff(&comm, &product(&w1, &omega_prime(model, grid).apply(f)?)?)?;
    let fnorm = f.l2_norm();
    let (n1, n2, n3) = (w1.l2_norm(), w2.l2_norm(), w3.l2_norm());
    let label = weight.label();

    let est1 = RatioReport::single("dispersive-commutator", &label, r1.l2_norm(), n2.sqrt() * n3.sqrt() * fnorm);
    let qc = q.apply(&diff(&q.apply(&product(&w0, f)?)?, &product(&w0, &q.apply(f)?)?)?)?.l2_norm();
    let h2 = (n1 * n1 + n2 * n2 + n3 * n3).sqrt();
    let est2 = RatioReport::single("q-commutator", &label, qc, h2 * fnorm);
    let est2b = RatioReport::single("q-commutator-split", &label, qc, n2.sqrt() * (n1.sqrt() + n3.sqrt()) * fnorm);
    Ok([est1, est2, est2b])
}

/// Maximum ratios over `weights × functions`, merged by bound.
pub fn check_remainder_bounds(
    model: &ModelParams,
    weights: &[RemainderWeight],
    functions: &[RealField],
) -> Result<Vec<RatioReport>> {
    let jobs: Vec<(usize, usize)> =
        (0..weights.len()).flat_map(|w| (0..functions.len()).map(move |f| (w, f))).collect();
    let parts: Result<Vec<[RatioReport; 3]>> =
        jobs.par_iter().map(|&(w, f)| remainder_ratios(model, &weights[w], &functions[f])).collect();
    let mut flat = Vec::new();
    for (i, [a, b, c]) in parts?.into_iter().enumerate() {
        for mut r in [a, b, c] {
            for case in r.cases.iter_mut() {
                case.label = format!("f{}|{}", jobs[i].1, case.label);
            }
            flat.push(r);
        }
    }
    Ok(merge_reports(flat))
}

/// [`check_remainder_bounds`] on the seeded battery, with refinement factors from the doubled grid.
pub fn remainder_suite(
    model: &ModelParams,
    params: &VirialParams,
    battery: &TestBattery,
    grid: &Grid,
) -> Result<Vec<RatioReport>> {
    let weights = standard_remainder_weights(params);
    let mut coarse = check_remainder_bounds(model, &weights, &battery.sample(grid)?)?;
    let fine = check_remainder_bounds(model, &weights, &battery.sample(&grid.refined())?)?;
    crate::inequality::attach_refinement(&mut coarse, &fine);
    Ok(coarse)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_and_constant_weight() {
        let g = Grid::new(256, 100.0).unwrap();
        let model = ModelParams::new(1.0).unwrap();
        let zero = RealField::zeros(&g);
        for r in remainder_ratios(&model, &RemainderWeight::Psi { sigma: 1.0 }, &zero).unwrap() {
            assert_eq!(r.max_ratio, 0.0);
        }
        let f = RealField::from_fn(&g, |x| (-x * x).exp());
        for r in remainder_ratios(&model, &RemainderWeight::Constant, &f).unwrap() {
            assert_eq!(r.max_ratio, 0.0);
            assert!(r.cases.is_empty());
        }
    }

    #[test]
    fn ratios_finite_and_refinement_stable() {
        let g = Grid::new(512, 100.0).unwrap();
        let model = ModelParams::new(1.0).unwrap();
        let reports = remainder_suite(&model, &VirialParams::default(), &TestBattery::generate(5, 4), &g).unwrap();
        assert_eq!(reports.len(), 3);
        for r in reports {
            assert!(r.is_stable(), "{} {:?}", r.lemma, r.refinement_factor);
            assert!(r.max_ratio > 0.0);
        }
    }
}
