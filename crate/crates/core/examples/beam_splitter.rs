//! Two squeezed vacua on a balanced beam splitter, as a function of the phase
//! shifter in front of input 0.
//!
//! cargo run -p wfs-noise --example beam_splitter

use std::f64::consts::PI;

use wfs_noise::beamsplitter::{bs_sweep_phi1, closed_form_no_wfs, closed_form_wfs};

fn main() {
    let r = 1.0;
    let grid: Vec<f64> = (0..=8).map(|i| i as f64 * PI / 8.0).collect();
    println!("r = {r}: cosh 2r = {:.6}, e^-2r = {:.6}", closed_form_no_wfs(r), closed_form_wfs(r));
    for p in bs_sweep_phi1(r, &grid) {
        println!("phi1 = {:.4}  Var x0 = {:.6}  Var p0 = {:.6}", p.phi1, p.var_x0, p.var_p0);
    }
}
