//! Fourier multipliers of the ILW equation and the direct quadrature check of `T_δ`.
//!
//! Run with `cargo run --release --example operators`.

use ilw::spectral::{
    apply_hilbert, apply_t_delta, quadrature_t_oracle_all, symbol_omega, symbol_omega_prime, symbol_p, symbol_q,
};
use ilw::{Grid, ModelParams, RealField};

fn main() -> ilw::Result<()> {
    let grid = Grid::new(2048, 200.0)?;
    let u = RealField::from_fn(&grid, |x| (-x * x).exp());

    println!("T_δ applied spectrally vs principal-value quadrature");
    for delta in [0.5, 1.0, 2.0] {
        let params = ModelParams::new(delta)?;
        let spectral = apply_t_delta(&params, &u)?;
        let oracle = quadrature_t_oracle_all(&params, &u);
        let gap = spectral.samples().iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("  δ = {delta:<4} max |gap| = {gap:.3e}");
    }

    println!("\n‖T_δ u - H u‖₂ as δ grows");
    let hu = apply_hilbert(&u)?;
    for delta in [1.0, 5.0, 20.0, 50.0] {
        let tu = apply_t_delta(&ModelParams::new(delta)?, &u)?;
        println!("  δ = {delta:<4} {:.3e}", tu.zip_with(&hu, |a, b| a - b)?.l2_norm());
    }

    let params = ModelParams::new(1.0)?;
    println!("\n{:>8} {:>14} {:>14} {:>12} {:>12}", "k", "Ω(k)", "Ω'(k)", "q(k)", "p(k)");
    for k in [0.05, 0.5, 1.0, 5.0, 40.0] {
        println!(
            "{k:>8} {:>14.6e} {:>14.6e} {:>12.6} {:>12.6}",
            symbol_omega(&params, k),
            symbol_omega_prime(&params, k),
            symbol_q(&params, k),
            symbol_p(&params, k)
        );
    }
    println!("Ω(0.05)/0.05³ = {:.6} (small-k limit 1/3)", symbol_omega(&params, 0.05) / 0.05f64.powi(3));
    Ok(())
}
