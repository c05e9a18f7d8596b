use rayon::prelude::*;

use super::battery::{TestBattery, WeightSpec};
use super::expansion::{check_commutator_expansion, expansion_remainder, ExpansionSymbol};
use super::lemmas::{check_gns, check_interpolation, check_interpolation_full, check_kato_ponce, check_leibniz};
use super::report::RatioReport;
use crate::error::Result;
use crate::spectral::{Grid, ModelParams, RealField};

/// Interpolation parameters `(a, b, θ)`.
pub const INTERPOLATION_CASES: [(f64, f64, f64); 4] = [(1.0, 1.0, 0.5), (1.0, 2.0, 1.0 / 3.0), (2.0, 1.0, 0.25), (0.5, 1.0, 0.75)];

/// Full interpolation parameters `(a, b, c, d, θ)`.
pub const INTERPOLATION_FULL_CASES: [(f64, f64, f64, f64, f64); 3] =
    [(1.0, 0.0, 0.0, 1.0, 0.5), (2.0, 1.0, 0.0, 2.0, 0.3), (1.0, 1.0, 0.5, 2.0, 0.7)];

/// Orders `s` of the Kato–Ponce and Leibniz checks.
pub const PRODUCT_ORDERS: [f64; 3] = [0.5, 1.0, 1.5];

#[derive(Clone, Copy, Debug)]
enum Task {
    Expansion { q: ExpansionSymbol, weight: WeightSpec, f: usize, k: usize },
    Interpolation { f: usize, a: f64, b: f64, theta: f64 },
    InterpolationFull { f: usize, p: (f64, f64, f64, f64, f64) },
    Gns { f: usize },
    KatoPonce { f: usize, g: usize, s: f64 },
    Leibniz { f: usize, g: usize, s: f64 },
}

/// Multipliers exercised by the commutator expansion.
pub fn expansion_symbols(model: &ModelParams) -> [ExpansionSymbol; 3] {
    [ExpansionSymbol::Bessel(0.5), ExpansionSymbol::P(*model), ExpansionSymbol::OmegaPrime(*model)]
}

fn tasks(model: &ModelParams, battery: &TestBattery) -> Vec<Task> {
    let n = battery.functions.len();
    let mut out = Vec::new();
    for q in expansion_symbols(model) {
        for k in 1..=2 {
            for &weight in battery.weights.iter().filter(|w| w.admits_order(k)) {
                out.extend((0..n).map(|f| Task::Expansion { q, weight, f, k }));
            }
        }
    }
    for (a, b, theta) in INTERPOLATION_CASES {
        out.extend((0..n).map(|f| Task::Interpolation { f, a, b, theta }));
    }
    for p in INTERPOLATION_FULL_CASES {
        out.extend((0..n).map(|f| Task::InterpolationFull { f, p }));
    }
    out.extend((0..n).map(|f| Task::Gns { f }));
    for s in PRODUCT_ORDERS {
        out.extend((0..n).map(|f| Task::KatoPonce { f, g: (f + 1) % n, s }));
        out.extend((0..n).map(|f| Task::Leibniz { f, g: (f + 1) % n, s }));
    }
    out
}

fn run_task(task: &Task, battery: &TestBattery, fields: &[RealField]) -> Result<RatioReport> {
    let label = |i: usize| battery.functions[i].label();
    let (report, name) = match *task {
        Task::Expansion { q, weight, f, k } => (check_commutator_expansion(&q, &weight, &fields[f], k)?, label(f)),
        Task::Interpolation { f, a, b, theta } => (check_interpolation(&fields[f], a, b, theta)?, label(f)),
        Task::InterpolationFull { f, p } => (check_interpolation_full(&fields[f], p.0, p.1, p.2, p.3, p.4)?, label(f)),
        Task::Gns { f } => (check_gns(&fields[f])?, label(f)),
        Task::KatoPonce { f, g, s } => (check_kato_ponce(&fields[f], &fields[g], s)?, format!("{};{}", label(f), label(g))),
        Task::Leibniz { f, g, s } => (check_leibniz(&fields[f], &fields[g], s)?, format!("{};{}", label(f), label(g))),
    };
    let mut relabelled = RatioReport::new(report.lemma.clone());
    for c in report.cases {
        relabelled.push(format!("{name}|{}", c.label), c.lhs, c.rhs);
    }
    relabelled.excluded.extend(report.excluded.into_iter().map(|e| format!("{name}|{e}")));
    Ok(relabelled)
}

/// Merge single-case reports by lemma, keeping first-seen order.
pub fn merge_reports(parts: Vec<RatioReport>) -> Vec<RatioReport> {
    let mut merged: Vec<RatioReport> = Vec::new();
    for part in parts {
        match merged.iter_mut().find(|r| r.lemma == part.lemma) {
            Some(r) => r.extend(part),
            None => {
                let mut r = RatioReport::new(part.lemma.clone());
                r.extend(part);
                merged.push(r);
            }
        }
    }
    merged
}

/// All lemma reports for the battery sampled on `grid`, without refinement data.
pub fn run_battery(model: &ModelParams, battery: &TestBattery, grid: &Grid) -> Result<Vec<RatioReport>> {
    let fields = battery.sample(grid)?;
    let parts: Result<Vec<RatioReport>> =
        tasks(model, battery).par_iter().map(|t| run_task(t, battery, &fields)).collect();
    Ok(merge_reports(parts?))
}

/// Pair reports computed on `grid` and on its refinement.
pub fn attach_refinement(coarse: &mut [RatioReport], fine: &[RatioReport]) {
    for r in coarse.iter_mut() {
        if let Some(f) = fine.iter().find(|f| f.lemma == r.lemma) {
            r.compare_refined(f);
        }
    }
}

/// [`run_battery`] on `grid` with refinement factors from the doubled grid.
pub fn run_suite(model: &ModelParams, battery: &TestBattery, grid: &Grid) -> Result<Vec<RatioReport>> {
    let mut coarse = run_battery(model, battery, grid)?;
    let fine = run_battery(model, battery, &grid.refined())?;
    attach_refinement(&mut coarse, &fine);
    Ok(coarse)
}

/// `‖R_1 f‖₂` and `‖R_2 f‖₂` per (multiplier, weight, function) on weights admitting both orders.
#[derive(Clone, Debug, PartialEq)]
pub struct RemainderScaling {
    pub label: String,
    pub first_order: f64,
    pub second_order: f64,
}

pub fn remainder_scaling(model: &ModelParams, battery: &TestBattery, grid: &Grid) -> Result<Vec<RemainderScaling>> {
    let fields = battery.sample(grid)?;
    let mut jobs = Vec::new();
    for q in expansion_symbols(model) {
        for &w in battery.weights.iter().filter(|w| w.admits_order(1)) {
            for f in 0..fields.len() {
                jobs.push((q, w, f));
            }
        }
    }
    jobs.par_iter()
        .map(|&(q, w, f)| {
            Ok(RemainderScaling {
                label: format!("{}|{}|{}", q.label(), w.label(), battery.functions[f].label()),
                first_order: expansion_remainder(&q, &w, &fields[f], 1)?.l2_norm(),
                second_order: expansion_remainder(&q, &w, &fields[f], 2)?.l2_norm(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_finite_and_deterministic() {
        let model = ModelParams::new(1.0).unwrap();
        let battery = TestBattery::generate(3, 4);
        let grid = Grid::new(512, 100.0).unwrap();
        let a = run_battery(&model, &battery, &grid).unwrap();
        let b = run_battery(&model, &battery, &grid).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.is_finite()));
        assert!(a.iter().any(|r| r.lemma.starts_with("commutator-expansion")));
    }
}
