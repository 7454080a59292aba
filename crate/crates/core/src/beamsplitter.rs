//! Two squeezed vacua mixed on a balanced beam splitter.
//!
//! The two-port analogue of the disordered medium: phase shifters `φ₁`, `φ₂`
//! in front of the splitter play the role of wavefront shaping. Inputs are
//! squeezed by `exp((r/2)(a†² − a²))`, which stretches `x` (`Var x = e^{2r}`)
//! and compresses `p`. Without phase correction (`φ₁ = φ₂ = 0`) output mode 0
//! is thermal with `Var x = 2 sinh²r + 1`; with `φ₁ = π/2` it is squeezed to
//! `e^{−2r}`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::gaussian::{GaussianState, LinearForm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsSetup {
    pub r: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl BsSetup {
    /// `φ₂ = 0` as phase reference.
    pub fn new(r: f64, phi1: f64) -> Self {
        Self { r, phi1, phi2: 0.0 }
    }

    /// `T_BS · T_φ` with `T_BS = (1/√2)[[1, i], [i, 1]]`, `T_φ = diag(e^{iφ₁}, e^{iφ₂})`.
    pub fn network(&self) -> DMatrix<Complex64> {
        let one = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        let bs = DMatrix::from_row_slice(2, 2, &[one, i, i, one]);
        let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::from_polar(1.0, self.phi1),
            Complex64::from_polar(1.0, self.phi2),
        ]));
        bs * phases
    }

    pub fn input_state(&self) -> GaussianState {
        GaussianState::vacuum(2)
            .and_then(|s| s.set_single_mode_squeezed(0, -self.r, 0.0, 0.0))
            .and_then(|s| s.set_single_mode_squeezed(1, -self.r, 0.0, 0.0))
            .expect("two fresh vacuum modes")
    }

    pub fn output_state(&self) -> GaussianState {
        self.input_state().apply_passive(&self.network()).expect("beam splitter network is unitary")
    }
}

/// Quadrature variances `(Var x₀, Var p₀)` of output mode 0.
pub fn bs_output_variance(setup: &BsSetup) -> (f64, f64) {
    let out = setup.output_state();
    let vx = out.variance_of_form(&LinearForm::x(2, 0)).expect("2-mode form");
    let vp = out.variance_of_form(&LinearForm::p(2, 0)).expect("2-mode form");
    (vx, vp)
}

/// Closed form without phase correction: `2 sinh²r + 1 = cosh 2r`.
pub fn closed_form_no_wfs(r: f64) -> f64 {
    2.0 * r.sinh().powi(2) + 1.0
}

/// Closed form with `φ₁ = π/2`: `e^{−2r}`.
pub fn closed_form_wfs(r: f64) -> f64 {
    (-2.0 * r).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsPoint {
    pub phi1: f64,
    pub var_x0: f64,
    pub var_p0: f64,
}

/// Output-mode-0 variances over a grid of `φ₁` at `φ₂ = 0`.
pub fn bs_sweep_phi1(r: f64, phi1_grid: &[f64]) -> Vec<BsPoint> {
    phi1_grid
        .iter()
        .map(|&phi1| {
            let (var_x0, var_p0) = bs_output_variance(&BsSetup::new(r, phi1));
            BsPoint { phi1, var_x0, var_p0 }
        })
        .collect()
}
