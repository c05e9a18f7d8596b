//! Seeded numerical checks of the operator inequalities used in the decay analysis.
//!
//! Every check returns a [`RatioReport`] of `lhs / rhs`; constants are never
//! asserted, only finiteness and stability of the maxima under grid refinement.

mod battery;
mod expansion;
mod lemmas;
mod report;
mod suite;

pub use battery::{hermite, japanese_derivatives, FunctionSpec, TestBattery, WeightSpec, BATTERY_BOUNDARY_LIMIT};
pub use expansion::{
    apply_symbol, check_commutator_expansion, expansion_remainder, symbol_derivative_fd, ExpansionSymbol,
};
pub use lemmas::{check_gns, check_interpolation, check_interpolation_full, check_kato_ponce, check_leibniz};
pub use report::{RatioCase, RatioReport};
pub use suite::{
    attach_refinement, expansion_symbols, merge_reports, remainder_scaling, run_battery, run_suite,
    RemainderScaling, INTERPOLATION_CASES, INTERPOLATION_FULL_CASES, PRODUCT_ORDERS,
};
