//! Sweep the two-mode squeezing across the threshold and print a CSV table
//! with Monte Carlo and theory columns side by side.
//!
//! cargo run --release -p wfs-noise --example parameter_sweep > sweep.csv

use wfs_noise::medium::MediumConfig;
use wfs_noise::montecarlo::{sweep, ExperimentSpec, SweepAxis};

fn main() -> wfs_noise::Result<()> {
    let spec = ExperimentSpec::two(MediumConfig::new(64, 2.0)?, 0.0).with_trials(5_000);
    let values: Vec<f64> = (0..=15).map(|i| i as f64 * 0.1).collect();
    println!("g,var_x_wfs,se_wfs,theory_wfs,var_x_plain,se_plain,theory_plain");
    for p in sweep(&spec, SweepAxis::G, &values, 0)? {
        println!(
            "{:.2},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            p.value, p.wfs.mean_var_x, p.wfs.se_x, p.theory_wfs.var_x, p.no_wfs.mean_var_x, p.no_wfs.se_x, p.theory_no_wfs.var_x
        );
    }
    Ok(())
}
