use wfs_noise::analytic::Regime;
use wfs_noise::medium::MediumConfig;
use wfs_noise::montecarlo::{run_ensemble, run_ensemble_with, run_trial, sweep, ExperimentSpec, SweepAxis};

fn medium(s: f64) -> MediumConfig {
    MediumConfig::new(64, s).unwrap()
}

#[test]
fn monte_carlo_matches_closed_forms_on_grid() {
    let mut report = Vec::new();
    for s in [1.5, 2.0, 4.0] {
        for param in [0.3, 0.6, 1.0] {
            for base in [ExperimentSpec::single(medium(s), param), ExperimentSpec::two(medium(s), param)] {
                for wfs in [true, false] {
                    let spec = base.clone().with_wfs(wfs).with_trials(20_000);
                    let est = run_ensemble(&spec).unwrap();
                    let th = spec.theory(Regime::from(wfs)).unwrap();
                    let dx = (est.mean_var_x - th.var_x).abs() / est.se_x;
                    let dp = (est.mean_var_p - th.var_p).abs() / est.se_p;
                    if dx > 4.0 || dp > 4.0 {
                        report.push(format!("{} s={s} param={param} wfs={wfs}: {dx:.2} se / {dp:.2} se", spec.family));
                    }
                }
            }
        }
    }
    assert!(report.is_empty(), "{report:#?}");
}

#[test]
fn every_trial_dominated_by_wfs() {
    for r in [0.2, 1.0, 1.8] {
        let on = ExperimentSpec::single(medium(2.5), r).with_wfs(true).with_trials(500);
        let off = on.clone().with_wfs(false);
        for i in 0..500 {
            let (a, b) = (run_trial(&on, i).unwrap(), run_trial(&off, i).unwrap());
            assert!(a.var_x < b.var_x, "r={r} trial {i}");
            assert!(a.var_p > b.var_p, "r={r} trial {i}");
        }
    }
}

#[test]
fn focusing_enhances_mean_field() {
    let base = ExperimentSpec { alpha_x: 2.0, ..ExperimentSpec::single(medium(2.0), 0.5) }.with_trials(2000);
    let on = run_ensemble(&base.clone().with_wfs(true)).unwrap();
    let off = run_ensemble(&base.with_wfs(false)).unwrap();
    assert!(on.mean_abs_x > off.mean_abs_x, "{} <= {}", on.mean_abs_x, off.mean_abs_x);
    // with WFS the mean is x·Σ√T, whose ensemble value is x·K·(√π/2)/√(Ns)
    let want = 2.0 * 64.0 * (std::f64::consts::PI.sqrt() / 2.0) / 128f64.sqrt();
    assert!((on.mean_abs_x - want).abs() < 0.02 * want, "{} vs {want}", on.mean_abs_x);
}

#[test]
fn coherent_family_is_exactly_shot_noise() {
    for wfs in [false, true] {
        let spec = ExperimentSpec { alpha_x: 1.0, alpha_p: -0.5, ..ExperimentSpec::coherent(medium(3.0)) }
            .with_wfs(wfs)
            .with_trials(200);
        let est = run_ensemble(&spec).unwrap();
        assert!((est.mean_var_x - 1.0).abs() < 1e-12 && (est.mean_var_p - 1.0).abs() < 1e-12);
        assert!(est.se_x < 1e-12);
    }
}

#[test]
fn disorder_sweep_trends() {
    let spec = ExperimentSpec::single(medium(2.0), 1.0).with_trials(4000);
    let pts = sweep(&spec, SweepAxis::S, &[1.0, 2.0, 4.0, 8.0], 0).unwrap();
    for pair in pts.windows(2) {
        assert!(pair[1].theory_wfs.var_x > pair[0].theory_wfs.var_x);
        assert!(pair[1].theory_no_wfs.var_x < pair[0].theory_no_wfs.var_x);
        assert!(pair[1].wfs.mean_var_x > pair[0].wfs.mean_var_x);
        assert!(pair[1].no_wfs.mean_var_x < pair[0].no_wfs.mean_var_x);
    }
    assert!(pts.iter().all(|p| p.wfs.mean_var_x < 1.0 && p.no_wfs.mean_var_x > 1.0));
}

#[test]
fn two_mode_sweep_crosses_shot_noise_near_threshold() {
    let spec = ExperimentSpec::two(medium(2.0), 0.6).with_trials(20_000);
    let pts = sweep(&spec, SweepAxis::G, &[0.8, 1.3], 0).unwrap();
    assert!(pts[0].theory_wfs.var_x < 1.0 && pts[1].theory_wfs.var_x > 1.0);
    assert!(pts[0].wfs.mean_var_x + 3.0 * pts[0].wfs.se_x < 1.0);
    assert!(pts[1].wfs.mean_var_x - 3.0 * pts[1].wfs.se_x > 1.0);
}

#[test]
fn general_squeezing_angle_matches_theory() {
    for phi in [0.0, 1.0, 2.5] {
        let spec = ExperimentSpec { phi_g: phi, ..ExperimentSpec::two(medium(2.0), 0.7) }.with_wfs(true);
        let est = run_ensemble(&spec).unwrap();
        let th = spec.theory(Regime::Wfs).unwrap();
        assert!((est.mean_var_x - th.var_x).abs() <= 4.0 * est.se_x, "phi={phi}: {} vs {}", est.mean_var_x, th.var_x);
        assert!((est.mean_var_p - th.var_p).abs() <= 4.0 * est.se_p, "phi={phi}");
    }
}

#[test]
fn partial_excitation_matches_theory() {
    let spec = ExperimentSpec { excited: 16, ..ExperimentSpec::single(medium(3.0), 1.2) }.with_wfs(true);
    let est = run_ensemble(&spec).unwrap();
    let th = spec.theory(Regime::Wfs).unwrap();
    assert!((est.mean_var_x - th.var_x).abs() <= 4.0 * est.se_x);
}

#[test]
fn worker_count_never_changes_bits() {
    let spec = ExperimentSpec::single(medium(1.5), 0.4).with_trials(3000).with_seed(42);
    let reference = run_ensemble_with(&spec, 1).unwrap();
    for w in [2, 3, 8] {
        assert_eq!(run_ensemble_with(&spec, w).unwrap(), reference);
    }
}
