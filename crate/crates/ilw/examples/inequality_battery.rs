//! Seeded numerical battery for the commutator and product inequalities.
//!
//! Pass a seed as the first argument; the default is 0.
//! Run with `cargo run --release --example inequality_battery -- 7`.

use ilw::diagnostics::{remainder_suite, VirialParams};
use ilw::inequality::{remainder_scaling, run_suite, TestBattery};
use ilw::{Grid, ModelParams};

fn main() -> ilw::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0u64);
    let params = ModelParams::new(1.0)?;
    let grid = Grid::new(1024, 200.0)?;
    let battery = TestBattery::generate(seed, 12);

    let mut reports = run_suite(&params, &battery, &grid)?;
    reports.extend(remainder_suite(&params, &VirialParams::default(), &battery, &grid)?);
    println!("{:<48} {:>5} {:>4} {:>11} {:>10}", "lemma", "cases", "excl", "max ratio", "N→2N");
    for r in &reports {
        let refinement = r.refinement_factor.map_or("-".to_string(), |f| format!("{f:.4}"));
        println!("{:<48} {:>5} {:>4} {:>11.4e} {:>10}", r.lemma, r.cases.len(), r.excluded.len(), r.max_ratio, refinement);
    }

    let scaling = remainder_scaling(&params, &battery, &grid)?;
    let shrinking = scaling.iter().filter(|s| s.second_order < s.first_order).count();
    println!("\nexpansion remainder shrinks from k = 1 to k = 2 in {shrinking} of {} cases", scaling.len());
    Ok(())
}
