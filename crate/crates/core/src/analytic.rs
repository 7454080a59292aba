//! Closed-form ensemble averages of the output quadrature variances.
//!
//! All results are averages over disorder realizations with `K` excited
//! transmitted-side inputs out of `N` channels at disorder degree `s`; the
//! only statistics they use are `E T = 1/(Ns)`, the sum rule, and the
//! Rayleigh identity `E√(T T') = (π/4) E T`.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};

/// With or without wavefront shaping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Wfs,
    NoWfs,
}

impl Regime {
    pub fn is_wfs(self) -> bool {
        self == Regime::Wfs
    }
}

impl From<bool> for Regime {
    fn from(wfs: bool) -> Self {
        if wfs {
            Regime::Wfs
        } else {
            Regime::NoWfs
        }
    }
}

/// Input state family the closed forms are written for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `K` identical single-mode squeezed states.
    Single,
    /// `K/2` two-mode squeezed pairs `(a', a' + K/2)`.
    Two,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Single => "single",
            Family::Two => "two",
        })
    }
}

/// Ensemble-averaged output variances for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryPoint {
    pub var_x: f64,
    pub var_p: f64,
    pub regime: Regime,
    pub family: Family,
}

fn check_common(k: usize, n: usize, s: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("N must be >= 1"));
    }
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= K <= N, got K={k}, N={n}")));
    }
    if !s.is_finite() || s < 1.0 {
        return Err(invalid(format!("disorder degree s must be finite and >= 1, got {s}")));
    }
    Ok(k as f64 / (n as f64 * s))
}

fn check_pairs(k: usize, n: usize, s: f64, g: f64) -> Result<f64> {
    let w = check_common(k, n, s)?;
    if !k.is_multiple_of(2) {
        return Err(invalid(format!("two-mode squeezed inputs need an even K, got {k}")));
    }
    if g.is_nan() || g < 0.0 {
        return Err(invalid(format!("two-mode squeezing g must be >= 0, got {g}")));
    }
    Ok(w)
}

/// Single-mode squeezed inputs with wavefront shaping.
pub fn single_wfs(k: usize, n: usize, s: f64, r: f64) -> Result<TheoryPoint> {
    let w = check_common(k, n, s)?;
    Ok(TheoryPoint {
        var_x: 1.0 - w * (1.0 - (-2.0 * r).exp()),
        var_p: 1.0 + w * ((2.0 * r).exp() - 1.0),
        regime: Regime::Wfs,
        family: Family::Single,
    })
}

/// Single-mode squeezed inputs without wavefront shaping; `x` and `p` agree.
pub fn single_no_wfs(k: usize, n: usize, s: f64, r: f64) -> Result<TheoryPoint> {
    let w = check_common(k, n, s)?;
    let v = 1.0 + w * ((2.0 * r).cosh() - 1.0);
    Ok(TheoryPoint { var_x: v, var_p: v, regime: Regime::NoWfs, family: Family::Single })
}

/// Two-mode squeezed pairs with wavefront shaping at the optimal angle
/// `cos φ_g = −1`.
pub fn two_wfs(k: usize, n: usize, s: f64, g: f64) -> Result<TheoryPoint> {
    two_wfs_at_angle(k, n, s, g, std::f64::consts::PI)
}

/// Two-mode squeezed pairs with wavefront shaping at an arbitrary angle.
///
/// Only the `x`–`x` and `p`–`p` pair correlations survive the real WFS
/// coefficients, so the angle enters through `cos φ_g` alone.
pub fn two_wfs_at_angle(k: usize, n: usize, s: f64, g: f64, phi_g: f64) -> Result<TheoryPoint> {
    let w = check_pairs(k, n, s, g)?;
    let (sh, ch) = (g.sinh(), g.cosh());
    let corr = FRAC_PI_4 * ch * phi_g.cos();
    Ok(TheoryPoint {
        var_x: 1.0 + 2.0 * w * sh * (sh + corr),
        var_p: 1.0 + 2.0 * w * sh * (sh - corr),
        regime: Regime::Wfs,
        family: Family::Two,
    })
}

/// Two-mode squeezed pairs without wavefront shaping. Random relative phases
/// average the pair correlations away, so the result holds for any `φ_g`.
pub fn two_no_wfs(k: usize, n: usize, s: f64, g: f64) -> Result<TheoryPoint> {
    let w = check_pairs(k, n, s, g)?;
    let v = 1.0 + 2.0 * w * g.sinh().powi(2);
    Ok(TheoryPoint { var_x: v, var_p: v, regime: Regime::NoWfs, family: Family::Two })
}

/// Squeezing `g⋆ = artanh(π/4)` below which two-mode WFS output dips under
/// the shot-noise level.
pub fn threshold_g() -> f64 {
    FRAC_PI_4.atanh()
}

/// `E√(T T′) / E T` for independent Rayleigh amplitudes `√T`, `√T′`.
pub fn rayleigh_cross_moment_ratio() -> f64 {
    FRAC_PI_4
}

/// `var_x` without WFS minus `var_x` with WFS; `param` is `r` for
/// [`Family::Single`] and `g` for [`Family::Two`].
pub fn difference_no_wfs_minus_wfs(family: Family, k: usize, n: usize, s: f64, param: f64) -> Result<f64> {
    Ok(match family {
        Family::Single => single_no_wfs(k, n, s, param)?.var_x - single_wfs(k, n, s, param)?.var_x,
        Family::Two => two_no_wfs(k, n, s, param)?.var_x - two_wfs(k, n, s, param)?.var_x,
    })
}
