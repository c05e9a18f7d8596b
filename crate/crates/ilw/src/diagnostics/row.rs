//! Per-checkpoint diagnostics rows and their CSV form.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::functionals::{
    functional_i, functional_i_rho, functional_j, region_mass, smoothing_flux, Region, VirialParams, FUNCTIONAL_T_MIN,
};
use super::invariants::invariants;
use crate::error::{Error, Result};
use crate::spectral::{boundary_mass_fraction, weighted_norm, ModelParams, RealField};

/// Column names in output order.
pub const CSV_COLUMNS: [&str; 15] = [
    "t",
    "I1",
    "I2",
    "I3",
    "I4",
    "mass_ball_centered",
    "mass_ball_shifted",
    "mass_right",
    "func_I",
    "func_I_rho",
    "func_J",
    "weighted_norm_alpha",
    "smoothing_flux_half",
    "smoothing_flux_full",
    "boundary_mass_fraction",
];

/// Which optional groups of columns are evaluated; disabled cells stay empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiagnosticFlags {
    pub region_masses: bool,
    pub functionals: bool,
    pub smoothing: bool,
}

impl Default for DiagnosticFlags {
    fn default() -> Self {
        Self { region_masses: true, functionals: true, smoothing: true }
    }
}

/// Scalar diagnostics at one checkpoint. `None` marks a quantity undefined at `t`
/// (balls need `t > 1`, functionals `t ≥ 10`) or disabled.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub mass_ball_centered: Option<f64>,
    pub mass_ball_shifted: Option<f64>,
    pub mass_right: Option<f64>,
    pub func_i: Option<f64>,
    pub func_i_rho: Option<f64>,
    pub func_j: Option<f64>,
    pub weighted_norm_alpha: f64,
    pub smoothing_flux_half: Option<f64>,
    pub smoothing_flux_full: Option<f64>,
    pub boundary_mass_fraction: f64,
}

impl DiagnosticsRow {
    pub fn compute(model: &ModelParams, params: &VirialParams, flags: &DiagnosticFlags, u: &RealField) -> Result<Self> {
        let t = u.time();
        let [i1, i2, i3, i4] = invariants(model, u)?;
        let balls = flags.region_masses && t > 1.0;
        let late = flags.functionals && t >= FUNCTIONAL_T_MIN;
        let mass = |on: bool, region| if on { region_mass(u, t, params, region).map(Some) } else { Ok(None) };
        let flux = if flags.smoothing { Some(smoothing_flux(model, u, params.alpha)?) } else { None };
        Ok(Self {
            t,
            i1,
            i2,
            i3,
            i4,
            mass_ball_centered: mass(balls, Region::BallCentered)?,
            mass_ball_shifted: mass(balls, Region::BallShifted)?,
            mass_right: mass(flags.region_masses, Region::RightOfRay)?,
            func_i: if late { Some(functional_i(u, t, params)?) } else { None },
            func_i_rho: if late { Some(functional_i_rho(u, t, params, 1.0)?) } else { None },
            func_j: if late { Some(functional_j(u, t, params)?) } else { None },
            weighted_norm_alpha: weighted_norm(u, params.alpha),
            smoothing_flux_half: flux.map(|f| f.half),
            smoothing_flux_full: flux.map(|f| f.full),
            boundary_mass_fraction: boundary_mass_fraction(u),
        })
    }

    pub fn values(&self) -> [Option<f64>; 15] {
        [
            Some(self.t),
            Some(self.i1),
            Some(self.i2),
            Some(self.i3),
            Some(self.i4),
            self.mass_ball_centered,
            self.mass_ball_shifted,
            self.mass_right,
            self.func_i,
            self.func_i_rho,
            self.func_j,
            Some(self.weighted_norm_alpha),
            self.smoothing_flux_half,
            self.smoothing_flux_full,
            Some(self.boundary_mass_fraction),
        ]
    }

    /// Every present cell is finite and the non-negative columns are non-negative.
    pub fn is_valid(&self) -> bool {
        let nonneg = [
            Some(self.i2),
            self.mass_ball_centered,
            self.mass_ball_shifted,
            self.mass_right,
            Some(self.weighted_norm_alpha),
            self.smoothing_flux_half,
            self.smoothing_flux_full,
        ];
        self.values().iter().flatten().all(|v| v.is_finite()) && nonneg.iter().flatten().all(|&v| v >= 0.0)
    }

    pub fn csv_line(&self) -> String {
        let cells: Vec<String> =
            self.values().iter().map(|v| v.map(|x| format!("{x:.16e}")).unwrap_or_default()).collect();
        cells.join(",")
    }
}

/// Rows for every checkpoint, computed in parallel and returned in time order.
pub fn compute_rows(
    model: &ModelParams,
    params: &VirialParams,
    flags: &DiagnosticFlags,
    checkpoints: &[RealField],
) -> Result<Vec<DiagnosticsRow>> {
    let mut rows: Vec<DiagnosticsRow> =
        checkpoints.par_iter().map(|u| DiagnosticsRow::compute(model, params, flags, u)).collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(rows)
}

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

/// Header plus one line per row, each terminated by `\n`.
pub fn rows_to_csv(rows: &[DiagnosticsRow]) -> String {
    let mut out = csv_header();
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_line());
    }
    out
}

/// Check the header and cell count of a diagnostics CSV.
pub fn validate_csv(text: &str) -> Result<usize> {
    let mut lines = text.lines();
    if lines.next() != Some(csv_header().as_str()) {
        return Err(Error::Format { path: "diagnostics.csv".into(), reason: "unexpected column set or order".into() });
    }
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        if line.split(',').count() != CSV_COLUMNS.len() {
            return Err(Error::Format {
                path: "diagnostics.csv".into(),
                reason: format!("row {} has the wrong number of cells", i + 1),
            });
        }
        count += 1;
    }
    Ok(count)
}
