//! Build squeezed input states and read off quadrature moments.
//!
//! cargo run -p wfs-noise --example gaussian_states

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use wfs_noise::gaussian::{GaussianState, LinearForm};

fn main() -> wfs_noise::Result<()> {
    let vacuum = GaussianState::vacuum(2)?;
    println!("vacuum Var x0 = {}", vacuum.variance_of_form(&LinearForm::x(2, 0))?);

    let squeezed = GaussianState::vacuum(1)?.set_single_mode_squeezed(0, 1.0, 2.0, 0.0)?;
    let block = squeezed.mode_block(0)?;
    println!(
        "single-mode r=1: Var x = {:.6}, Var p = {:.6}, det = {:.6}, <x> = {}",
        block[(0, 0)],
        block[(1, 1)],
        block.determinant(),
        squeezed.mean_of_form(&LinearForm::x(1, 0))?
    );

    let pair = GaussianState::vacuum(2)?.set_two_mode_squeezed(0, 1, 0.6, PI, 0.0, 0.0)?;
    let (xa, xb) = (LinearForm::x(2, 0), LinearForm::x(2, 1));
    println!("two-mode g=0.6: Var x_A = {:.6}", pair.variance_of_form(&xa)?);
    println!("                cov(x_A, x_B) = {:.6}", pair.covariance_of_forms(&xa, &xb)?);
    let joint = &(&xa + &xb) * FRAC_1_SQRT_2;
    println!("                Var (x_A + x_B)/sqrt2 = {:.6} (below shot noise)", pair.variance_of_form(&joint)?);
    Ok(())
}
