//! Time integration of the ILW flow and of the Benjamin–Ono and KdV reference flows.
//!
//! The linear part is propagated exactly in Fourier space; the quadratic term
//! is evaluated pseudospectrally in conservative form `-½∂x(u²)`.

mod config;
mod limits;
mod stepper;
mod trajectory;

pub use config::{EvolutionConfig, Flow, Integrator};
pub use limits::{deep_water_gap, kdv_rescale, kdv_rescale_at, shallow_water_datum, shallow_water_gap};
pub use stepper::{nonlinear_term, step, Stepper};
pub use trajectory::{evolve_partial, evolve, evolve_bo, evolve_flow, evolve_kdv, Trajectory};
