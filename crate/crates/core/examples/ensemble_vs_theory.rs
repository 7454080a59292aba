//! Monte Carlo ensembles against the closed forms for every input family.
//!
//! cargo run --release -p wfs-noise --example ensemble_vs_theory

use wfs_noise::analytic::Regime;
use wfs_noise::medium::MediumConfig;
use wfs_noise::montecarlo::{run_ensemble, ExperimentSpec};

fn main() -> wfs_noise::Result<()> {
    let medium = MediumConfig::new(64, 2.0)?;
    let specs = [
        ExperimentSpec::coherent(medium),
        ExperimentSpec::single(medium, 1.0),
        ExperimentSpec::two(medium, 0.6),
    ];
    for base in specs {
        for wfs in [true, false] {
            let spec = base.clone().with_wfs(wfs);
            let est = run_ensemble(&spec)?;
            let th = spec.theory(Regime::from(wfs))?;
            println!(
                "{:>8} wfs={:<5} var_x {:.5} ± {:.5} (theory {:.5})  var_p {:.5} ± {:.5} (theory {:.5})",
                spec.family.to_string(),
                wfs,
                est.mean_var_x,
                est.se_x,
                th.var_x,
                est.mean_var_p,
                est.se_p,
                th.var_p
            );
        }
    }
    Ok(())
}
