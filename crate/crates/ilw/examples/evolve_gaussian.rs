//! Evolves a Gaussian under the ILW flow and tracks the four conserved quantities.
//!
//! Run with `cargo run --release --example evolve_gaussian`.

use ilw::diagnostics::invariants;
use ilw::evolution::{evolve, EvolutionConfig};
use ilw::spectral::boundary_mass_fraction;
use ilw::{Grid, ModelParams, RealField};

fn main() -> ilw::Result<()> {
    let params = ModelParams::new(1.0)?;
    let grid = Grid::new(1024, 200.0)?;
    let u0 = RealField::from_fn(&grid, |x| (-x * x).exp());
    let config = EvolutionConfig::new(params, grid, 1e-3, 5.0)?.with_stride(500);

    let trajectory = evolve(&config, &u0)?;
    let first = invariants(&params, trajectory.initial())?;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>10}", "t", "ΔI1", "ΔI2/I2", "ΔI3/I3", "ΔI4/I4", "edge");
    for u in trajectory.checkpoints() {
        let now = invariants(&params, u)?;
        println!(
            "{:>6.2} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e} {:>10.2e}",
            u.time(),
            now[0] - first[0],
            (now[1] - first[1]) / first[1],
            (now[2] - first[2]) / first[2].abs(),
            (now[3] - first[3]) / first[3].abs(),
            boundary_mass_fraction(u)
        );
    }
    for w in trajectory.warnings() {
        println!("warning: {w}");
    }
    Ok(())
}
