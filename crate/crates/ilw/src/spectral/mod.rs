//! Grids, discrete Fourier analysis and the Fourier-multiplier catalog.

mod field;
mod grid;
mod multiplier;
mod norms;
pub mod operators;
mod quadrature;
mod symbols;

pub use field::{inverse_transform, transform, RealField, SpectralField};
pub use grid::Grid;
pub use multiplier::{apply_multiplier, Multiplier, Parity, Reality};
pub use norms::{boundary_mass_fraction, weighted_norm, BOUNDARY_FRACTION, BOUNDARY_WARN_LEVEL};
pub use operators::{apply_d, apply_hilbert, apply_j, apply_l, apply_t_delta};
pub use quadrature::{quadrature_t_oracle, quadrature_t_oracle_all, ORACLE_WARN_LEVEL};
pub use symbols::{
    coth_symbol, k_coth, symbol_omega, symbol_omega_prime, symbol_p, symbol_q, ModelParams,
    SERIES_THRESHOLD,
};

pub use num_complex::Complex64;
