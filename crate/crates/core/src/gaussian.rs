//! Multimode Gaussian states in the quadrature picture.
//!
//! A state over `M` modes is stored as its mean vector and symmetrized
//! covariance matrix in the ordering `(x₁, p₁, …, x_M, p_M)`, with the vacuum
//! normalized to unit variance per quadrature. Every observable the crate
//! needs is a real linear combination of quadratures ([`LinearForm`]), whose
//! mean and variance depend only on these first and second moments.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Quadrature variance of the vacuum (shot-noise level).
pub const SHOT_NOISE: f64 = 1.0;

const VACUUM_TOL: f64 = 1e-12;

/// Real coefficients of an observable `Σ_j c_j q_j` over the quadratures of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm(DVector<f64>);

impl LinearForm {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self(DVector::from_vec(coeffs))
    }

    pub fn zeros(len: usize) -> Self {
        Self(DVector::zeros(len))
    }

    /// The `x` quadrature of `mode` in an `modes`-mode basis.
    pub fn x(modes: usize, mode: usize) -> Self {
        let mut f = Self::zeros(2 * modes);
        f.0[2 * mode] = 1.0;
        f
    }

    /// The `p` quadrature of `mode` in an `modes`-mode basis.
    pub fn p(modes: usize, mode: usize) -> Self {
        let mut f = Self::zeros(2 * modes);
        f.0[2 * mode + 1] = 1.0;
        f
    }

    /// Quadrature forms `(x_out, p_out)` of the output mode `a_out = Σ_j c_j a_j`.
    ///
    /// With `x = a† + a` and `p = i(a† − a)` this gives `Re c_j` on `x_j` and
    /// `−Im c_j` on `p_j` for `x_out`, and `Im c_j` on `x_j`, `Re c_j` on `p_j`
    /// for `p_out`.
    pub fn from_mode_amplitudes(amps: &[Complex64]) -> (Self, Self) {
        let mut fx = DVector::zeros(2 * amps.len());
        let mut fp = DVector::zeros(2 * amps.len());
        for (j, c) in amps.iter().enumerate() {
            fx[2 * j] = c.re;
            fx[2 * j + 1] = -c.im;
            fp[2 * j] = c.im;
            fp[2 * j + 1] = c.re;
        }
        (Self(fx), Self(fp))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn set(&mut self, index: usize, value: f64) {
        self.0[index] = value;
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        LinearForm(&self.0 + &rhs.0)
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        LinearForm(&self.0 - &rhs.0)
    }
}

impl Mul<f64> for &LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: f64) -> LinearForm {
        LinearForm(&self.0 * rhs)
    }
}

/// First and second quadrature moments of a multimode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Tensor product of `modes` vacua: zero mean, identity covariance.
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(invalid("a state needs at least one mode"));
        }
        Ok(Self {
            mean: DVector::zeros(2 * modes),
            cov: DMatrix::identity(2 * modes, 2 * modes),
        })
    }

    pub fn modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// The 2×2 covariance block of a single mode.
    pub fn mode_block(&self, mode: usize) -> Result<Matrix2<f64>> {
        self.check_mode(mode)?;
        let i = 2 * mode;
        Ok(Matrix2::new(
            self.cov[(i, i)],
            self.cov[(i, i + 1)],
            self.cov[(i + 1, i)],
            self.cov[(i + 1, i + 1)],
        ))
    }

    /// Prepares `mode` as a displaced squeezed state with `Var x = e^{-2r}`,
    /// `Var p = e^{2r}` and mean `(x0, p0)`.
    pub fn set_single_mode_squeezed(mut self, mode: usize, r: f64, x0: f64, p0: f64) -> Result<Self> {
        self.check_vacuum(mode)?;
        let i = 2 * mode;
        self.cov[(i, i)] = (-2.0 * r).exp();
        self.cov[(i + 1, i + 1)] = (2.0 * r).exp();
        self.mean[i] = x0;
        self.mean[i + 1] = p0;
        Ok(self)
    }

    /// Prepares `(mode_a, mode_b)` as a displaced two-mode squeezed state.
    ///
    /// Each mode is thermal with variance `2 sinh²g + 1`; the cross block is
    /// `sinh 2g · [[cos φ, sin φ], [sin φ, −cos φ]]`.
    pub fn set_two_mode_squeezed(
        mut self,
        mode_a: usize,
        mode_b: usize,
        g: f64,
        phi_g: f64,
        x0: f64,
        p0: f64,
    ) -> Result<Self> {
        if mode_a == mode_b {
            return Err(invalid(format!("two-mode squeezing needs distinct modes, got {mode_a} twice")));
        }
        if g < 0.0 {
            return Err(invalid(format!("two-mode squeezing g must be >= 0, got {g}")));
        }
        self.check_vacuum(mode_a)?;
        self.check_vacuum(mode_b)?;

        let diag = 2.0 * g.sinh().powi(2) + 1.0;
        let s = (2.0 * g).sinh();
        let (sin, cos) = phi_g.sin_cos();
        let (a, b) = (2 * mode_a, 2 * mode_b);

        for k in [a, b] {
            self.cov[(k, k)] = diag;
            self.cov[(k + 1, k + 1)] = diag;
        }
        let cross = [(0, 0, s * cos), (1, 1, -s * cos), (0, 1, s * sin), (1, 0, s * sin)];
        for (da, db, v) in cross {
            self.cov[(a + da, b + db)] = v;
            self.cov[(b + db, a + da)] = v;
        }
        for k in [a, b] {
            self.mean[k] = x0;
            self.mean[k + 1] = p0;
        }
        Ok(self)
    }

    /// Shifts the mean of one mode; the covariance is untouched.
    pub fn displace(mut self, mode: usize, dx: f64, dp: f64) -> Result<Self> {
        self.check_mode(mode)?;
        self.mean[2 * mode] += dx;
        self.mean[2 * mode + 1] += dp;
        Ok(self)
    }

    pub fn mean_of_form(&self, form: &LinearForm) -> Result<f64> {
        self.check_form(form)?;
        Ok(form.0.dot(&self.mean))
    }

    /// `fᵀ Σ f`: the variance of the observable described by `form`.
    pub fn variance_of_form(&self, form: &LinearForm) -> Result<f64> {
        self.covariance_of_forms(form, form)
    }

    /// `fᵀ Σ g`: the symmetrized covariance of two observables.
    pub fn covariance_of_forms(&self, a: &LinearForm, b: &LinearForm) -> Result<f64> {
        self.check_form(a)?;
        self.check_form(b)?;
        Ok(a.0.dot(&(&self.cov * &b.0)))
    }

    /// Propagates the state through a passive linear network `a_out = U a_in`.
    pub fn apply_passive(&self, unitary: &DMatrix<Complex64>) -> Result<Self> {
        let m = self.modes();
        if unitary.nrows() != m || unitary.ncols() != m {
            return Err(Error::DimensionMismatch { expected: m, found: unitary.nrows() });
        }
        let defect = (unitary.adjoint() * unitary - DMatrix::<Complex64>::identity(m, m))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > 1e-10 {
            return Err(invalid(format!("network is not unitary (defect {defect:.3e})")));
        }

        let mut s = DMatrix::<f64>::zeros(2 * m, 2 * m);
        for i in 0..m {
            let row: Vec<Complex64> = unitary.row(i).iter().copied().collect();
            let (fx, fp) = LinearForm::from_mode_amplitudes(&row);
            s.row_mut(2 * i).copy_from(&fx.0.transpose());
            s.row_mut(2 * i + 1).copy_from(&fp.0.transpose());
        }
        let cov = &s * &self.cov * s.transpose();
        // re-symmetrize against rounding
        let cov = (&cov + cov.transpose()) * 0.5;
        Ok(Self { mean: &s * &self.mean, cov })
    }

    /// Sparse snapshot of the moments for repeated evaluation of long forms.
    pub fn compile(&self) -> CompiledMoments {
        let n = self.cov.nrows();
        let mut diag = Vec::new();
        let mut off = Vec::new();
        for i in 0..n {
            let d = self.cov[(i, i)];
            if d != 0.0 {
                diag.push((i, d));
            }
            for j in (i + 1)..n {
                let v = 0.5 * (self.cov[(i, j)] + self.cov[(j, i)]);
                if v != 0.0 {
                    off.push((i, j, v));
                }
            }
        }
        CompiledMoments { mean: self.mean.as_slice().to_vec(), diag, off }
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes() {
            return Err(Error::ModeOutOfRange { mode, modes: self.modes() });
        }
        Ok(())
    }

    fn check_vacuum(&self, mode: usize) -> Result<()> {
        self.check_mode(mode)?;
        let n = self.cov.nrows();
        for i in [2 * mode, 2 * mode + 1] {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                if (self.cov[(i, j)] - want).abs() > VACUUM_TOL {
                    return Err(Error::ModeNotVacuum(mode));
                }
            }
        }
        Ok(())
    }

    fn check_form(&self, form: &LinearForm) -> Result<()> {
        if form.len() != self.mean.len() {
            return Err(Error::DimensionMismatch { expected: self.mean.len(), found: form.len() });
        }
        Ok(())
    }
}

/// Mean vector plus the nonzero covariance entries of a [`GaussianState`].
///
/// Input states in this crate are block sparse (at most two nonzeros per row
/// outside the diagonal), so a quadratic form costs `O(M)` instead of `O(M²)`.
#[derive(Debug, Clone)]
pub struct CompiledMoments {
    mean: Vec<f64>,
    diag: Vec<(usize, f64)>,
    off: Vec<(usize, usize, f64)>,
}

impl CompiledMoments {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean_of(&self, form: &[f64]) -> Result<f64> {
        self.check(form)?;
        Ok(form.iter().zip(&self.mean).map(|(c, m)| c * m).sum())
    }

    pub fn variance_of(&self, form: &[f64]) -> Result<f64> {
        self.check(form)?;
        let d: f64 = self.diag.iter().map(|&(i, v)| form[i] * form[i] * v).sum();
        let o: f64 = self.off.iter().map(|&(i, j, v)| form[i] * form[j] * v).sum();
        Ok(d + 2.0 * o)
    }

    fn check(&self, form: &[f64]) -> Result<()> {
        if form.len() != self.mean.len() {
            return Err(Error::DimensionMismatch { expected: self.mean.len(), found: form.len() });
        }
        Ok(())
    }
}
