//! Disorder realizations of a multiport scattering medium.
//!
//! Only the row of coefficients feeding the monitored output mode `b` is
//! sampled: `N` transmission coefficients from the transmitted-side inputs
//! followed by `N` reflection coefficients from the reflected-side inputs.
//! Coefficients are circular complex Gaussian (uniform phase, Rayleigh
//! modulus) with `E|t|² = 1/(Ns)` and `E|r|² = (1 − 1/s)/N`, and every row
//! satisfies the unitarity sum rule `Σ|t|² + Σ|r|² = 1` exactly.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::gaussian::LinearForm;

/// Number of transmission channels `N` and disorder degree `s = L/l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumConfig {
    channels: usize,
    disorder: f64,
}

impl MediumConfig {
    pub fn new(channels: usize, disorder: f64) -> Result<Self> {
        if channels == 0 {
            return Err(invalid("medium needs at least one channel (N >= 1)"));
        }
        if !disorder.is_finite() || disorder < 1.0 {
            return Err(invalid(format!("disorder degree s must be finite and >= 1, got {disorder}")));
        }
        Ok(Self { channels, disorder })
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn disorder(&self) -> f64 {
        self.disorder
    }

    /// Ensemble mean of a single transmission intensity, `1/(Ns)`.
    pub fn mean_transmission(&self) -> f64 {
        1.0 / (self.channels as f64 * self.disorder)
    }

    /// Ensemble mean of a single reflection intensity, `(1 − 1/s)/N`.
    pub fn mean_reflection(&self) -> f64 {
        (1.0 - 1.0 / self.disorder) / self.channels as f64
    }

    /// Input modes seen by one output row: `N` transmitted plus `N` reflected.
    pub fn total_modes(&self) -> usize {
        2 * self.channels
    }
}

/// Transmission and reflection coefficients into one output mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterRow {
    t: Vec<Complex64>,
    refl: Vec<Complex64>,
}

impl ScatterRow {
    /// Builds a row from explicit coefficients. The sum rule is not enforced
    /// here; see [`ScatterRow::is_normalized`].
    pub fn new(t: Vec<Complex64>, refl: Vec<Complex64>) -> Result<Self> {
        if t.is_empty() || t.len() != refl.len() {
            return Err(Error::DimensionMismatch { expected: t.len(), found: refl.len() });
        }
        Ok(Self { t, refl })
    }

    pub fn channels(&self) -> usize {
        self.t.len()
    }

    pub fn transmission(&self) -> &[Complex64] {
        &self.t
    }

    pub fn reflection(&self) -> &[Complex64] {
        &self.refl
    }

    /// `T_j = |t_j|²`.
    pub fn intensities(&self) -> impl Iterator<Item = f64> + '_ {
        self.t.iter().map(|c| c.norm_sqr())
    }

    /// `Σ_j |t_j|² + Σ_j |r_j|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.t.iter().chain(&self.refl).map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-12
    }

    /// Sum of the first `k` transmission intensities.
    pub fn transmitted_total(&self, k: usize) -> f64 {
        self.t.iter().take(k).map(|c| c.norm_sqr()).sum()
    }

    /// Ideal wavefront shaping: each `t_j` replaced by `|t_j|`.
    pub fn apply_wfs(&self) -> Self {
        Self {
            t: self.t.iter().map(|c| Complex64::new(c.norm(), 0.0)).collect(),
            refl: self.refl.clone(),
        }
    }

    /// Output quadrature forms `(x_b, p_b)` over the `2N` input modes.
    pub fn quadrature_forms(&self, total_modes: usize) -> Result<(LinearForm, LinearForm)> {
        if total_modes != 2 * self.channels() {
            return Err(Error::DimensionMismatch { expected: 2 * self.channels(), found: total_modes });
        }
        let amps: Vec<Complex64> = self.t.iter().chain(&self.refl).copied().collect();
        Ok(LinearForm::from_mode_amplitudes(&amps))
    }
}

fn circular_gaussian<R: Rng + ?Sized>(rng: &mut R, mean_intensity: f64) -> Complex64 {
    let sigma = (0.5 * mean_intensity).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(sigma * re, sigma * im)
}

/// Draws one disorder realization.
///
/// The transmitted block is divided by `√(A + B)` where `A = Σ|t_j|²` and
/// `B ~ Gamma(N(s − 1), 1/(Ns))` is drawn independently, so the transmitted
/// fraction is `Beta(N, N(s − 1))` and independent of the direction of `t`.
/// The reflected block is rescaled to carry the remainder. This keeps
/// `E|t_j|² = 1/(Ns)` and `E√(T_j T_k) = (π/4)/(Ns)` exact for every `N`; at
/// `s = 2` it coincides with rescaling the whole row by one common factor.
pub fn sample_row<R: Rng + ?Sized>(config: &MediumConfig, rng: &mut R) -> ScatterRow {
    let n = config.channels;
    let mean_t = config.mean_transmission();
    let mut t: Vec<Complex64> = (0..n).map(|_| circular_gaussian(rng, mean_t)).collect();
    let a: f64 = t.iter().map(|c| c.norm_sqr()).sum();

    let reflected_shape = n as f64 * (config.disorder - 1.0);
    if reflected_shape <= 0.0 {
        let scale = a.sqrt().recip();
        t.iter_mut().for_each(|c| *c *= scale);
        return ScatterRow { t, refl: vec![Complex64::new(0.0, 0.0); n] };
    }

    let mean_r = config.mean_reflection();
    let mut refl: Vec<Complex64> = (0..n).map(|_| circular_gaussian(rng, mean_r)).collect();
    let b = Gamma::new(reflected_shape, mean_t).expect("shape and scale are positive").sample(rng);

    let tau = a / (a + b);
    let t_scale = (a + b).sqrt().recip();
    t.iter_mut().for_each(|c| *c *= t_scale);
    let r_total: f64 = refl.iter().map(|c| c.norm_sqr()).sum();
    let r_scale = ((1.0 - tau) / r_total).sqrt();
    refl.iter_mut().for_each(|c| *c *= r_scale);

    ScatterRow { t, refl }
}
