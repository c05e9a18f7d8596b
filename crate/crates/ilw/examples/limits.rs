//! Deep-water (Benjamin–Ono) and shallow-water (KdV) limits of the ILW flow.
//!
//! Run with `cargo run --release --example limits`.

use ilw::evolution::{deep_water_gap, shallow_water_gap, EvolutionConfig};
use ilw::{Grid, ModelParams, RealField};

fn main() -> ilw::Result<()> {
    let grid = Grid::new(1024, 200.0)?;
    let u0 = RealField::from_fn(&grid, |x| (-x * x).exp());
    let template = EvolutionConfig::new(ModelParams::new(1.0)?, grid, 1e-3, 1.0)?;

    println!("‖ILW_δ(1) - BO(1)‖ / ‖u0‖");
    for delta in [5.0, 20.0, 50.0] {
        println!("  δ = {delta:<5} {:.4e}", deep_water_gap(&template, delta, &u0, 1.0)?);
    }

    println!("rescaled ILW vs KdV at KdV time 1");
    for delta in [0.1, 0.3] {
        println!("  δ = {delta:<5} {:.4e}", shallow_water_gap(&template, delta, &u0, 1.0, 1e-3, 1e-3)?);
    }
    Ok(())
}
