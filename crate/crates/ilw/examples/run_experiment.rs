//! Drives the experiment runner from code: parse a configuration, run it, re-derive its diagnostics.
//!
//! Run with `cargo run --release --example run_experiment`.

use ilw::runner::{diagnose, parse_config_with_overrides, run, run_directory, Command, RunOptions};

const CONFIG: &str = r#"
seed = 3

[model]
delta = 2.0

[grid]
n_points = 512
length = 150.0

[time]
dt = 2e-3
t_end = 12.0
checkpoint_stride = 500

[initial]
kind = "gaussian"
amplitude = 1.5
width = 1.0

[output]
formats = ["csv", "binary"]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("ilw-example-runs");
    let overrides = vec![("output.directory".to_string(), out.display().to_string())];
    let config = parse_config_with_overrides(CONFIG, &overrides)?;

    let manifest = run(Command::Simulate, &config, &RunOptions::default())?;
    let dir = run_directory(&config, Command::Simulate);
    println!("run directory {}", dir.display());
    println!("complete = {}, config hash {}", manifest.complete, &manifest.config_hash[..16]);
    for f in &manifest.files {
        println!("  {:<22} {:>9} bytes  {}", f.name, f.bytes, &f.sha256[..12]);
    }

    let outcome = diagnose(&dir)?;
    println!("diagnose reproduces the stored CSV: {:?}", outcome.matches_original);
    Ok(())
}
