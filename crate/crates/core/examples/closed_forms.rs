//! Closed-form ensemble variances: the difference surfaces over squeezing
//! and disorder, and the two-mode threshold.
//!
//! cargo run -p wfs-noise --example closed_forms

use wfs_noise::analytic::{self, Family};

fn main() -> wfs_noise::Result<()> {
    let (k, n) = (64, 64);

    println!("single-mode inputs, s = 2");
    println!("{:>5} {:>10} {:>10} {:>10}", "r", "wfs", "no wfs", "diff");
    for i in 0..=8 {
        let r = i as f64 * 0.25;
        let w = analytic::single_wfs(k, n, 2.0, r)?;
        let nw = analytic::single_no_wfs(k, n, 2.0, r)?;
        println!("{r:>5.2} {:>10.6} {:>10.6} {:>10.6}", w.var_x, nw.var_x, nw.var_x - w.var_x);
    }

    println!("\nsingle-mode inputs, r = 1");
    for s in [1.0, 1.5, 2.0, 4.0, 8.0, 16.0] {
        let w = analytic::single_wfs(k, n, s, 1.0)?;
        let nw = analytic::single_no_wfs(k, n, s, 1.0)?;
        println!("s = {s:>4}: wfs {:.6}  no wfs {:.6}", w.var_x, nw.var_x);
    }

    println!("\ntwo-mode inputs, s = 2");
    for i in 0..=8 {
        let g = i as f64 * 0.2;
        let w = analytic::two_wfs(k, n, 2.0, g)?;
        let d = analytic::difference_no_wfs_minus_wfs(Family::Two, k, n, 2.0, g)?;
        println!("g = {g:.1}: wfs var_x {:.6} var_p {:.6}  diff {:.6}", w.var_x, w.var_p, d);
    }
    println!("\nthreshold g* = artanh(pi/4) = {:.6}", analytic::threshold_g());
    Ok(())
}
