//! Term-by-term virial decomposition along a Gaussian run.
//!
//! Each row compares the sum of the five contributions with a finite-difference
//! derivative of the weighted mass.
//!
//! Run with `cargo run --release --example virial`.

use ilw::diagnostics::{virial_series, VirialParams};
use ilw::evolution::{evolve, EvolutionConfig};
use ilw::{Grid, ModelParams, RealField};

fn main() -> ilw::Result<()> {
    let params = ModelParams::new(1.0)?;
    let grid = Grid::new(1024, 200.0)?;
    let u0 = RealField::from_fn(&grid, |x| (-x * x).exp());
    let config = EvolutionConfig::new(params, grid, 1e-3, 3.01)?;
    let trajectory = evolve(&config, &u0)?;

    let times: Vec<f64> = (1..=6).map(|i| 0.5 * i as f64).collect();
    let series = virial_series(&params, &VirialParams::default(), &trajectory, &times)?;
    println!("{:>5} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11} {:>9}", "t", "E1", "E2", "E3", "E4", "E5", "d/dt", "gap");
    for s in &series {
        println!(
            "{:>5.2} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e} {:>9.1e}",
            s.time,
            s.e1,
            s.e2,
            s.e3,
            s.e4,
            s.e5,
            s.lhs_fd,
            s.relative_gap()
        );
    }
    Ok(())
}
