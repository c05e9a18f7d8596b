//! Conserved quantities, virial functionals and decay diagnostics.

pub mod functionals;
pub mod invariants;
pub mod remainder;
pub mod row;
pub mod virial;
pub mod weights;

pub use functionals::{
    functional_i, functional_i_bound, functional_i_rho, functional_i_shape, functional_j, mu, mu1,
    mu1_log_derivative, mu_log_derivative, region_mass, smoothing_flux, Region, SmoothingFlux, VirialParams,
    FUNCTIONAL_T_MIN,
};
pub use invariants::{invariant_i1, invariant_i2, invariant_i3, invariant_i4, invariants};
pub use weights::WeightFamily;
pub use virial::{virial_decomposition, virial_series, RayWeight, VirialTerms};
pub use remainder::{check_remainder_bounds, remainder_ratios, remainder_suite, standard_remainder_weights, RemainderWeight};
pub use row::{compute_rows, csv_header, rows_to_csv, validate_csv, DiagnosticFlags, DiagnosticsRow, CSV_COLUMNS};
