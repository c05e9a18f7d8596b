//! Pseudospectral simulation and numerical verification toolkit for the
//! Intermediate Long Wave (ILW) equation
//!
//! ```text
//! u_t - T_δ u_xx + u_x / δ + u u_x = 0,    x on a periodic box, δ > 0.
//! ```
//!
//! `T_δ` is normalized so that it tends to the Hilbert transform (symbol
//! `-i sgn k`) as `δ → ∞`; with that normalization the linear propagator is
//! `exp(i Ω_δ(k) t)` with `Ω_δ(k) = k² coth(δk) - k/δ`.
//!
//! The crate is organised as:
//!
//! * [`spectral`]: grids, transforms, Fourier multipliers and a direct
//!   quadrature oracle for `T_δ`.
//! * [`evolution`]: integrating-factor and exponential RK4 integrators for
//!   the ILW, Benjamin–Ono and KdV flows.
//! * [`soliton`]: Petviashvili construction of solitary waves.
//! * [`diagnostics`]: conserved quantities, weight families, virial
//!   functionals, region masses and the virial-identity decomposition.
//! * [`inequality`]: seeded batteries exercising commutator, interpolation,
//!   Kato–Ponce, Leibniz and Gagliardo–Nirenberg type inequalities.
//! * [`runner`]: configuration, experiment orchestration and persistence.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod inequality;
pub mod runner;
pub mod soliton;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{Grid, ModelParams, Multiplier, Parity, RealField, Reality, SpectralField};
