//! Monte Carlo ensembles over disorder realizations.
//!
//! Each trial draws its own scattering row from a keyed ChaCha8 substream
//! (key from the master seed and a stream tag, ChaCha stream id from the
//! trial index), so a trial's result depends only on `(spec, trial_index)`.
//! Trials may run on any number of workers; results are folded into the
//! running statistics in trial-index order, which makes an ensemble
//! bit-identical for every worker count.

use std::f64::consts::PI;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{self, Regime, TheoryPoint};
use crate::error::{invalid, Result};
use crate::gaussian::{CompiledMoments, GaussianState};
use crate::medium::{sample_row, MediumConfig, ScatterRow};
use crate::stats::RunningStats;

pub const DEFAULT_SEED: u64 = 20_200_917;
pub const DEFAULT_TRIALS: usize = 20_000;
pub const DEFAULT_CHANNELS: usize = 64;
pub const DEFAULT_DISORDER: f64 = 2.0;

/// Trials evaluated per parallel batch before folding into the statistics.
const BATCH: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFamily {
    /// Displaced vacua on the excited inputs.
    Coherent,
    /// Displaced single-mode squeezed states, squeezed in `x`.
    SingleSqueezed,
    /// Displaced two-mode squeezed pairs `(a, a + K/2)`.
    TwoSqueezed,
}

impl fmt::Display for InputFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFamily::Coherent => "coherent",
            InputFamily::SingleSqueezed => "single",
            InputFamily::TwoSqueezed => "two",
        })
    }
}

/// One Monte Carlo run definition.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub family: InputFamily,
    /// Single-mode squeezing parameter.
    pub r: f64,
    /// Two-mode squeezing parameter.
    pub g: f64,
    /// Two-mode squeezing angle.
    pub phi_g: f64,
    /// Mean `x` of every excited input.
    pub alpha_x: f64,
    /// Mean `p` of every excited input.
    pub alpha_p: f64,
    /// Number of excited transmitted-side inputs `K`.
    pub excited: usize,
    pub medium: MediumConfig,
    pub wfs: bool,
    pub trials: usize,
    pub seed: u64,
    /// Substream tag mixed into the per-trial keys. Runs that must see the
    /// same disorder realizations share a tag.
    pub stream: u64,
}

impl ExperimentSpec {
    /// Defaults: `K = N`, `φ_g = π`, zero displacement, WFS off,
    /// [`DEFAULT_TRIALS`] trials, [`DEFAULT_SEED`].
    pub fn new(family: InputFamily, medium: MediumConfig) -> Self {
        Self {
            family,
            r: 0.0,
            g: 0.0,
            phi_g: PI,
            alpha_x: 0.0,
            alpha_p: 0.0,
            excited: medium.channels(),
            medium,
            wfs: false,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            stream: 0,
        }
    }

    pub fn coherent(medium: MediumConfig) -> Self {
        Self::new(InputFamily::Coherent, medium)
    }

    pub fn single(medium: MediumConfig, r: f64) -> Self {
        Self { r, ..Self::new(InputFamily::SingleSqueezed, medium) }
    }

    pub fn two(medium: MediumConfig, g: f64) -> Self {
        Self { g, ..Self::new(InputFamily::TwoSqueezed, medium) }
    }

    pub fn with_wfs(mut self, wfs: bool) -> Self {
        self.wfs = wfs;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.medium.channels();
        if self.excited == 0 || self.excited > n {
            return Err(invalid(format!("need 1 <= K <= N, got K={}, N={n}", self.excited)));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be >= 1"));
        }
        for (name, v) in [("r", self.r), ("g", self.g), ("phi_g", self.phi_g), ("alpha_x", self.alpha_x), ("alpha_p", self.alpha_p)] {
            if !v.is_finite() {
                return Err(invalid(format!("{name} must be finite, got {v}")));
            }
        }
        if self.family == InputFamily::TwoSqueezed {
            if !self.excited.is_multiple_of(2) {
                return Err(invalid(format!("two-mode squeezed inputs need an even K, got {}", self.excited)));
            }
            if self.g < 0.0 {
                return Err(invalid(format!("two-mode squeezing g must be >= 0, got {}", self.g)));
            }
        }
        Ok(())
    }

    /// Ensemble average predicted by the closed forms.
    pub fn theory(&self, regime: Regime) -> Result<TheoryPoint> {
        let (k, n, s) = (self.excited, self.medium.channels(), self.medium.disorder());
        match (self.family, regime) {
            (InputFamily::Coherent, Regime::Wfs) => analytic::single_wfs(k, n, s, 0.0),
            (InputFamily::Coherent, Regime::NoWfs) => analytic::single_no_wfs(k, n, s, 0.0),
            (InputFamily::SingleSqueezed, Regime::Wfs) => analytic::single_wfs(k, n, s, self.r),
            (InputFamily::SingleSqueezed, Regime::NoWfs) => analytic::single_no_wfs(k, n, s, self.r),
            (InputFamily::TwoSqueezed, Regime::Wfs) => analytic::two_wfs_at_angle(k, n, s, self.g, self.phi_g),
            (InputFamily::TwoSqueezed, Regime::NoWfs) => analytic::two_no_wfs(k, n, s, self.g),
        }
    }
}

/// Output moments of one disorder realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub var_x: f64,
    pub var_p: f64,
    pub mean_x: f64,
    pub mean_p: f64,
}

/// Ensemble mean and standard error of the output variances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceEstimate {
    pub mean_var_x: f64,
    pub mean_var_p: f64,
    pub se_x: f64,
    pub se_p: f64,
    /// Ensemble mean of `|⟨x_b⟩|`.
    pub mean_abs_x: f64,
    /// Ensemble mean of `|⟨p_b⟩|`.
    pub mean_abs_p: f64,
    pub trials: usize,
}

/// Input state over all `2N` modes: excited transmitted-side inputs
/// `0..K`, vacuum everywhere else.
pub fn build_input_state(spec: &ExperimentSpec) -> Result<GaussianState> {
    spec.validate()?;
    let k = spec.excited;
    let (x0, p0) = (spec.alpha_x, spec.alpha_p);
    let mut state = GaussianState::vacuum(spec.medium.total_modes())?;
    match spec.family {
        InputFamily::Coherent => {
            for m in 0..k {
                state = state.displace(m, x0, p0)?;
            }
        }
        InputFamily::SingleSqueezed => {
            for m in 0..k {
                state = state.set_single_mode_squeezed(m, spec.r, x0, p0)?;
            }
        }
        InputFamily::TwoSqueezed => {
            for a in 0..k / 2 {
                state = state.set_two_mode_squeezed(a, a + k / 2, spec.g, spec.phi_g, x0, p0)?;
            }
        }
    }
    Ok(state)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Private random stream of one trial, keyed by `(seed, stream)` with the
/// trial index as ChaCha stream id.
pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mut tag = stream.wrapping_mul(0xD1B5_4A32_D192_ED03);
    let mut sm = seed ^ splitmix64(&mut tag);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut sm).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

struct Prepared {
    moments: CompiledMoments,
    total_modes: usize,
}

impl Prepared {
    fn new(spec: &ExperimentSpec) -> Result<Self> {
        let state = build_input_state(spec)?;
        Ok(Self { moments: state.compile(), total_modes: spec.medium.total_modes() })
    }

    fn evaluate(&self, row: &ScatterRow, wfs: bool) -> Result<TrialOutcome> {
        let shaped;
        let row = if wfs {
            shaped = row.apply_wfs();
            &shaped
        } else {
            row
        };
        let (fx, fp) = row.quadrature_forms(self.total_modes)?;
        Ok(TrialOutcome {
            var_x: self.moments.variance_of(fx.coeffs())?,
            var_p: self.moments.variance_of(fp.coeffs())?,
            mean_x: self.moments.mean_of(fx.coeffs())?,
            mean_p: self.moments.mean_of(fp.coeffs())?,
        })
    }

    fn trial(&self, spec: &ExperimentSpec, index: usize) -> TrialOutcome {
        let mut rng = trial_rng(spec.seed, spec.stream, index as u64);
        let row = sample_row(&spec.medium, &mut rng);
        self.evaluate(&row, spec.wfs).expect("row and state dimensions agree by construction")
    }
}

/// Output variances and means for one trial of `spec`.
pub fn run_trial(spec: &ExperimentSpec, trial_index: usize) -> Result<TrialOutcome> {
    if trial_index >= spec.trials {
        return Err(invalid(format!("trial index {trial_index} out of range for {} trials", spec.trials)));
    }
    Ok(Prepared::new(spec)?.trial(spec, trial_index))
}

/// Evaluates `spec`'s input state against a given row (WFS applied iff
/// `spec.wfs`).
pub fn trial_on_row(spec: &ExperimentSpec, row: &ScatterRow) -> Result<TrialOutcome> {
    Prepared::new(spec)?.evaluate(row, spec.wfs)
}

/// Runs all trials on the global rayon pool.
pub fn run_ensemble(spec: &ExperimentSpec) -> Result<VarianceEstimate> {
    run_ensemble_with(spec, 0)
}

/// Runs all trials on `workers` threads (`0`: rayon default, `1`: the
/// calling thread only). The result does not depend on `workers`.
pub fn run_ensemble_with(spec: &ExperimentSpec, workers: usize) -> Result<VarianceEstimate> {
    let prepared = Prepared::new(spec)?;
    let fold = || -> Result<VarianceEstimate> {
        let mut stats = [RunningStats::new(); 4];
        let mut start = 0;
        while start < spec.trials {
            let end = (start + BATCH).min(spec.trials);
            let batch: Vec<TrialOutcome> = if workers == 1 {
                (start..end).map(|i| prepared.trial(spec, i)).collect()
            } else {
                (start..end).into_par_iter().map(|i| prepared.trial(spec, i)).collect()
            };
            for t in batch {
                stats[0].push(t.var_x);
                stats[1].push(t.var_p);
                stats[2].push(t.mean_x.abs());
                stats[3].push(t.mean_p.abs());
            }
            start = end;
        }
        Ok(VarianceEstimate {
            mean_var_x: stats[0].mean(),
            mean_var_p: stats[1].mean(),
            se_x: stats[0].std_error(),
            se_p: stats[1].std_error(),
            mean_abs_x: stats[2].mean(),
            mean_abs_p: stats[3].mean(),
            trials: spec.trials,
        })
    };
    if workers <= 1 {
        return fold();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| invalid(format!("cannot start {workers} workers: {e}")))?;
    pool.install(fold)
}

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// Single-mode squeezing `r`.
    R,
    /// Two-mode squeezing `g`.
    G,
    /// Disorder degree `s`.
    S,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::R => "r",
            SweepAxis::G => "g",
            SweepAxis::S => "s",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl ExperimentSpec {
    /// Copy of `self` with the swept parameter set to `value`.
    pub fn at(&self, axis: SweepAxis, value: f64) -> Result<Self> {
        let mut spec = self.clone();
        match (axis, self.family) {
            (SweepAxis::R, InputFamily::SingleSqueezed) => spec.r = value,
            (SweepAxis::G, InputFamily::TwoSqueezed) => spec.g = value,
            (SweepAxis::S, _) => spec.medium = MediumConfig::new(self.medium.channels(), value)?,
            (axis, family) => return Err(invalid(format!("axis {axis} does not apply to the {family} family"))),
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// One sweep value with both WFS settings and their closed-form oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub wfs: VarianceEstimate,
    pub no_wfs: VarianceEstimate,
    pub theory_wfs: TheoryPoint,
    pub theory_no_wfs: TheoryPoint,
}

fn sweep_stream(index: usize, wfs: bool) -> u64 {
    ((index as u64 + 1) << 1) | wfs as u64
}

/// Ensemble for value number `index` of a sweep with WFS set to `wfs`.
///
/// Substreams are keyed by `(seed, index, wfs)`, so a single setting run on
/// its own reproduces the matching half of [`sweep`].
pub fn sweep_point(
    spec: &ExperimentSpec,
    axis: SweepAxis,
    index: usize,
    value: f64,
    wfs: bool,
    workers: usize,
) -> Result<VarianceEstimate> {
    let mut point = spec.at(axis, value)?;
    point.wfs = wfs;
    point.stream = sweep_stream(index, wfs);
    run_ensemble_with(&point, workers)
}

pub fn sweep(spec: &ExperimentSpec, axis: SweepAxis, values: &[f64], workers: usize) -> Result<Vec<SweepPoint>> {
    if values.is_empty() {
        return Err(invalid("sweep needs at least one value"));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let point = spec.at(axis, value)?;
            Ok(SweepPoint {
                value,
                wfs: sweep_point(spec, axis, i, value, true, workers)?,
                no_wfs: sweep_point(spec, axis, i, value, false, workers)?,
                theory_wfs: point.theory(Regime::Wfs)?,
                theory_no_wfs: point.theory(Regime::NoWfs)?,
            })
        })
        .collect()
}
