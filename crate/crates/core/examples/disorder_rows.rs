//! Sample disorder realizations, shape the wavefront, and check the
//! coefficient statistics.
//!
//! cargo run -p wfs-noise --example disorder_rows

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wfs_noise::gaussian::GaussianState;
use wfs_noise::medium::{sample_row, MediumConfig};
use wfs_noise::stats::RunningStats;

fn main() -> wfs_noise::Result<()> {
    let cfg = MediumConfig::new(64, 2.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let row = sample_row(&cfg, &mut rng);
    println!("t_0 = {:.4}, |t|^2 + |r|^2 = {:.15}", row.transmission()[0], row.norm_sqr());
    println!("after WFS: t_0 = {:.4}", row.apply_wfs().transmission()[0]);

    // 64 squeezed inputs (r = 1), one row, with and without shaping
    let state = (0..64).try_fold(GaussianState::vacuum(128)?, |s, m| s.set_single_mode_squeezed(m, 1.0, 0.0, 0.0))?;
    for (label, r) in [("plain", row.clone()), ("shaped", row.apply_wfs())] {
        let (fx, fp) = r.quadrature_forms(128)?;
        println!("{label:>6}: Var x_b = {:.4}, Var p_b = {:.4}", state.variance_of_form(&fx)?, state.variance_of_form(&fp)?);
    }

    let mut mean_t = RunningStats::new();
    let mut cross = RunningStats::new();
    for _ in 0..20_000 {
        let t: Vec<f64> = sample_row(&cfg, &mut rng).intensities().collect();
        mean_t.push(t.iter().sum::<f64>() / 64.0);
        cross.push((0..32).map(|j| (t[j] * t[j + 32]).sqrt()).sum::<f64>() / 32.0);
    }
    println!("mean T = {:.6} (1/(Ns) = {:.6})", mean_t.mean(), cfg.mean_transmission());
    println!("mean sqrt(T T') / mean T = {:.4} (pi/4 = {:.4})", cross.mean() / mean_t.mean(), std::f64::consts::FRAC_PI_4);
    Ok(())
}
