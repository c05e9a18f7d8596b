//! Region masses, virial functionals and the smoothing flux along a long Gaussian run.
//!
//! Run with `cargo run --release --example decay_diagnostics`.

use ilw::diagnostics::{compute_rows, rows_to_csv, DiagnosticFlags, VirialParams};
use ilw::evolution::{evolve, EvolutionConfig};
use ilw::spectral::boundary_mass_fraction;
use ilw::{Grid, ModelParams, RealField};

fn main() -> ilw::Result<()> {
    let params = ModelParams::new(1.0)?;
    let grid = Grid::new(4096, 800.0)?;
    let u0 = RealField::from_fn(&grid, |x| (-x * x).exp());
    let config = EvolutionConfig::new(params, grid, 1e-2, 50.0)?.with_stride(500);
    let trajectory = evolve(&config, &u0)?;

    let virial = VirialParams::default();
    let rows = compute_rows(&params, &virial, &DiagnosticFlags::default(), trajectory.checkpoints())?;
    print!("{}", rows_to_csv(&rows));
    eprintln!("edge mass fraction at t = 50: {:.2e}", boundary_mass_fraction(trajectory.last()));
    Ok(())
}
