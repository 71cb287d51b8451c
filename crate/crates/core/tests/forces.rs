//! Obstacle potentials and edge forces.

use approx::assert_relative_eq;
use casimir_chain::fit::pearson;
use casimir_chain::{
    build_profile, casimir_force, force_prediction, force_sweep, hellmann_feynman_estimate, potential_scan,
    FitResult, ForceForm, MetricSpec, Vacuum,
};
use std::f64::consts::PI;

#[test]
fn minkowski_force_tracks_the_universal_term() {
    let spec = MetricSpec::minkowski(1.0).unwrap();
    for n in [200usize, 300, 500] {
        let pair = force_sweep(&spec, &[n, n + 2]).unwrap();
        let averaged = 0.5 * (pair[0].force + pair[1].force);
        let nf = n as f64;
        let predicted = -2.0 / PI + 0.5 * (PI / (12.0 * nf * nf) + PI / (12.0 * (nf + 2.0).powi(2)));
        assert!((averaged - predicted).abs() <= 3e-3 / (nf * nf), "N = {n}");
    }
    let rec = casimir_force(&spec, 100).unwrap();
    assert_relative_eq!(PI / (12.0 * 1e4), 2.61799e-5, max_relative = 1e-5);
    assert!(((rec.force + 2.0 / PI) / 2.61799e-5 - 1.0).abs() < 0.02);
}

#[test]
fn shorter_chain_keeps_the_common_links() {
    let spec = MetricSpec::rainbow(1.0, 0.04).unwrap();
    let rec = casimir_force(&spec, 60).unwrap();
    let profile = build_profile(&spec, 60).unwrap();
    let shorter = profile.truncated(58).unwrap();
    let e = casimir_chain::ground_state_energy(&shorter).unwrap();
    assert_eq!(rec.energy_shorter, e);
    assert_relative_eq!(rec.force, (rec.energy - e) / (profile.hopping(59) + profile.hopping(58)), epsilon = 1e-15);
    assert_relative_eq!(rec.log_derivative, -0.04, epsilon = 1e-15);
}

#[test]
fn force_is_invariant_under_global_rescaling() {
    let a = casimir_force(&MetricSpec::sine(1.0, 0.5, 0.05).unwrap(), 80).unwrap();
    let b = casimir_force(&MetricSpec::sine(4.0, 2.0, 0.05).unwrap(), 80).unwrap();
    assert_relative_eq!(a.force, b.force, max_relative = 1e-11);
}

#[test]
fn rainbow_force_approaches_the_boundary_offset() {
    let spec = MetricSpec::rainbow(1.0, 0.04).unwrap();
    let c0 = 2.0 / PI;
    let target = 0.5 * (4.0 / PI - 1.0) * 0.04;
    let far: Vec<f64> = force_sweep(&spec, &[600, 700, 800]).unwrap().iter().map(|r| r.force + c0).collect();
    for v in &far {
        assert!((v / target - 1.0).abs() < 0.05, "{v} vs {target}");
    }
}

#[test]
fn rindler_sign_change_moves_out_as_acceleration_drops() {
    let c0 = 2.0 / PI;
    let first_negative = |a: f64| {
        let spec = MetricSpec::rindler(1.0, a).unwrap();
        (6..2000)
            .step_by(2)
            .find(|&n| casimir_force(&spec, n).unwrap().force + c0 < 0.0)
            .unwrap()
    };
    let sizes: Vec<usize> = [1e-2, 1e-3, 1e-4].into_iter().map(first_negative).collect();
    assert!(sizes.windows(2).all(|w| w[1] > w[0]), "{sizes:?}");
}

#[test]
fn predictions() {
    let k = FitResult::free_fermion();
    let spec = MetricSpec::rindler(1.0, 1e-4).unwrap();
    let n = 500;
    let smooth = force_prediction(&spec, n, &k, ForceForm::Smooth).unwrap();
    let weak = force_prediction(&spec, n, &k, ForceForm::WeakDeformation).unwrap();
    // S_N ≈ N J_N for a weak deformation, so the two forms nearly agree
    assert!((smooth - weak).abs() < 0.1 * PI / (12.0 * 500.0 * 500.0));
    let boundary = -0.5 * k.cb * 1e-4 / (1.0 + 1e-4 * 500.0);
    assert_relative_eq!(weak, -k.c0 + boundary + PI / (12.0 * 250_000.0), epsilon = 1e-15);
}

#[test]
fn sine_prediction_oscillates_with_minus_log_derivative() {
    let spec = MetricSpec::sine(1.0, 0.5, 2.0 * PI / 50.0).unwrap();
    let k = FitResult::free_fermion();
    let sizes: Vec<usize> = (100..=300).step_by(2).collect();
    let pred: Vec<f64> = sizes
        .iter()
        .map(|&n| force_prediction(&spec, n, &k, ForceForm::Smooth).unwrap())
        .collect();
    let driver: Vec<f64> = sizes.iter().map(|&n| -spec.log_derivative(n as f64, n)).collect();
    assert!(pearson(&pred, &driver) > 0.99);
    // and so does the measured force
    let measured: Vec<f64> = force_sweep(&spec, &sizes).unwrap().iter().map(|r| r.force).collect();
    assert!(pearson(&measured, &driver) > 0.9, "{}", pearson(&measured, &driver));
}

#[test]
fn potential_is_positive_and_follows_the_hopping() {
    let spec = MetricSpec::minkowski(1.0).unwrap();
    let scan = potential_scan(&spec, 100, 0.75).unwrap();
    assert!(scan.values.iter().all(|&v| v > 0.0));
    // pair-smoothed bulk values are flat for a flat metric
    let smooth: Vec<f64> = (20..80).map(|p| 0.5 * (scan.get(p) + scan.get(p + 1))).collect();
    let (lo, hi) = smooth.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi / lo - 1.0 < 0.01, "{lo} {hi}");

    let profile = build_profile(&spec, 100).unwrap();
    let v = Vacuum::solve(&profile).unwrap();
    assert_eq!(hellmann_feynman_estimate(&profile, &v.correlations, 50, 1.0).unwrap(), 0.0);
    let small = potential_scan(&spec, 100, 0.99).unwrap();
    let exact = 0.5 * (small.get(50) + small.get(51));
    let first_order = 0.5
        * (hellmann_feynman_estimate(&profile, &v.correlations, 50, 0.99).unwrap()
            + hellmann_feynman_estimate(&profile, &v.correlations, 51, 0.99).unwrap());
    assert!((first_order / exact - 1.0).abs() < 0.05);
}
