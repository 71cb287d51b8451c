//! Eigensolver and vacuum-state checks against closed forms and brute force.

use approx::assert_relative_eq;
use casimir_chain::{
    build_profile, correlation_matrix, eigendecompose, eigenvalues, first_order_energy, ground_state_energy,
    vacuum::energy_from_correlations, HoppingMatrix, HoppingProfile, MetricSpec, Vacuum,
};
use std::f64::consts::PI;

fn chain(j: &[f64]) -> HoppingMatrix {
    HoppingMatrix::from_hoppings(j).unwrap()
}

/// Roots of the 4-site characteristic polynomial
/// `λ⁴ − (J1² + J2² + J3²) λ² + J1² J3²`, ascending.
fn four_site_roots(j: [f64; 3]) -> [f64; 4] {
    let s = j.iter().map(|x| x * x).sum::<f64>();
    let p = (j[0] * j[2]).powi(2);
    let disc = (s * s - 4.0 * p).sqrt();
    let hi = (0.5 * (s + disc)).sqrt();
    let lo = (0.5 * (s - disc)).sqrt();
    [-hi, -lo, lo, hi]
}

#[test]
fn four_sites_match_characteristic_polynomial() {
    for j in [[1.0, 1.0, 1.0], [0.3, 1.7, 0.9], [2.0, 0.1, 5.0]] {
        let w = eigenvalues(&chain(&j)).unwrap();
        for (a, b) in w.iter().zip(four_site_roots(j)) {
            assert_relative_eq!(*a, b, epsilon = 1e-13);
        }
    }
    let w = eigenvalues(&chain(&[1.0; 3])).unwrap();
    let golden = [-1.618_034_0, -0.618_034_0, 0.618_034_0, 1.618_034_0];
    for (a, b) in w.iter().zip(golden) {
        assert_relative_eq!(*a, b, epsilon = 1e-7);
    }
}

#[test]
fn small_closed_forms() {
    let w = eigenvalues(&chain(&[1.0])).unwrap();
    assert_relative_eq!(w[0], -1.0, epsilon = 1e-15);
    assert_relative_eq!(w[1], 1.0, epsilon = 1e-15);
    let (j1, j2): (f64, f64) = (0.7, 1.9);
    let r = (j1 * j1 + j2 * j2).sqrt();
    let w = eigenvalues(&chain(&[j1, j2])).unwrap();
    assert_relative_eq!(w[0], -r, epsilon = 1e-14);
    assert!(w[1].abs() < 1e-14);
    assert_relative_eq!(w[2], r, epsilon = 1e-14);
}

#[test]
fn uniform_chain_matches_cosine_band_up_to_ten_thousand_sites() {
    for n in [10usize, 400, 2001, 10_000] {
        let w = eigenvalues(&chain(&vec![1.3; n - 1])).unwrap();
        let worst = (1..=n)
            .map(|k| (w[k - 1] + 2.6 * (k as f64 * PI / (n + 1) as f64).cos()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "N = {n}: {worst:e}");
        if n % 2 == 0 {
            assert!(w.iter().all(|x| x.abs() > 1e-12), "zero mode at N = {n}");
        }
    }
}

#[test]
fn spectral_invariants() {
    let specs = [
        MetricSpec::rindler(1.0, 0.01).unwrap(),
        MetricSpec::sine(1.0, 0.5, 0.2).unwrap(),
        MetricSpec::rainbow(1.0, 0.03).unwrap(),
        MetricSpec::modulated_sine(1.0, 0.4, 0.01).unwrap(),
    ];
    for spec in specs {
        let profile = build_profile(&spec, 300).unwrap();
        let t = HoppingMatrix::from_profile(&profile);
        let s = eigendecompose(&t).unwrap();
        let n = t.dim();
        let jmax = profile.max_hopping();
        let eps = s.eigenvalues();
        assert!(s.max_residual(&t) <= 1e-10 * jmax);
        assert!(s.max_orthogonality_error() <= 1e-10);
        assert!(eps.windows(2).all(|w| w[0] <= w[1]));
        assert!(eps.iter().sum::<f64>().abs() <= 1e-10 * n as f64 * jmax);
        let frob: f64 = 2.0 * profile.hoppings().iter().map(|j| j * j).sum::<f64>();
        assert_relative_eq!(eps.iter().map(|e| e * e).sum::<f64>(), frob, max_relative = 1e-10);

        // particle-hole partner: ε_k = −ε_{N+1−k}, U_{i,k} = ±(−1)^i U_{i,N+1−k}
        for k in 0..n {
            assert!((eps[k] + eps[n - 1 - k]).abs() <= 1e-10 * jmax);
            // near-degenerate modes only fix their eigenspace
            let gap = [k.checked_sub(1), Some(k + 1).filter(|&q| q < n)]
                .into_iter()
                .flatten()
                .map(|q| (eps[q] - eps[k]).abs())
                .fold(f64::INFINITY, f64::min);
            if gap < 1e-6 * jmax {
                continue;
            }
            let alt = |i: usize| if i.is_multiple_of(2) { 1.0 } else { -1.0 };
            let overlap: f64 = (0..n).map(|i| alt(i) * s.component(i, k) * s.component(i, n - 1 - k)).sum();
            let worst = (0..n)
                .map(|i| (s.component(i, k) - overlap.signum() * alt(i) * s.component(i, n - 1 - k)).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-8, "{spec:?} mode {k}: {worst:e}");
        }
        // sign convention
        for k in 0..n {
            let col = s.vector(k);
            let big = col.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let first = col.iter().find(|x| x.abs() > 1e-10 * big).unwrap();
            assert!(*first > 0.0);
        }
    }
}

#[test]
fn decomposition_is_bit_identical_across_runs() {
    let t = HoppingMatrix::from_profile(&build_profile(&MetricSpec::sine(1.0, 0.5, 0.1).unwrap(), 120).unwrap());
    let a = eigendecompose(&t).unwrap();
    let b = eigendecompose(&t).unwrap();
    assert_eq!(a.eigenvalues(), b.eigenvalues());
    assert!((0..120).all(|k| a.vector(k) == b.vector(k)));
}

#[test]
fn two_thousand_sites_decompose_quickly() {
    let start = std::time::Instant::now();
    let t = HoppingMatrix::from_profile(&build_profile(&MetricSpec::rindler(1.0, 0.001).unwrap(), 2000).unwrap());
    let s = eigendecompose(&t).unwrap();
    assert!(s.max_residual(&t) < 1e-10 * t.max_abs());
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn four_site_correlations_from_standing_waves() {
    // u_k(i) = √(2/5) sin(ikπ/5), with the two lowest modes occupied
    let u = |i: usize, k: usize| (0.4f64).sqrt() * (i as f64 * k as f64 * PI / 5.0).sin();
    let c12: f64 = (1..=2).map(|k| u(1, k) * u(2, k)).sum();
    let v = Vacuum::solve(&HoppingProfile::from_hoppings(vec![1.0; 3]).unwrap()).unwrap();
    assert_relative_eq!(v.correlations.get(0, 1), c12, epsilon = 1e-14);
    assert_relative_eq!(c12, 1.0 / 5f64.sqrt(), epsilon = 1e-14);
    assert_relative_eq!(v.correlations.get(0, 0), 0.5, epsilon = 1e-14);
    let cos_sum = (PI / 5.0).cos() + (2.0 * PI / 5.0).cos();
    assert_relative_eq!(v.energy, -2.0 * cos_sum, epsilon = 1e-14);
    assert_relative_eq!(v.energy, -(5f64).sqrt(), epsilon = 1e-14);
}

#[test]
fn dimer_vacuum() {
    let v = Vacuum::solve(&HoppingProfile::from_hoppings(vec![1.0]).unwrap()).unwrap();
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_relative_eq!(v.correlations.get(i, j), 0.5, epsilon = 1e-15);
    }
    assert_relative_eq!(v.energy, -1.0, epsilon = 1e-15);
}

#[test]
fn correlation_matrix_is_a_half_filled_projector() {
    for spec in [MetricSpec::sine(1.0, 0.5, PI / 100.0).unwrap(), MetricSpec::rainbow(1.0, 0.02).unwrap()] {
        let profile = build_profile(&spec, 200).unwrap();
        let v = Vacuum::solve(&profile).unwrap();
        let c = &v.correlations;
        assert!(c.max_projector_error() < 1e-9);
        assert!((c.trace() - 100.0).abs() < 1e-9);
        assert!((0..200).all(|i| (c.get(i, i) - 0.5).abs() < 1e-9));
        assert!((0..200).all(|i| (0..200).all(|j| c.get(i, j) == c.get(j, i))));
        let e2 = energy_from_correlations(&profile, c);
        assert_relative_eq!(v.energy, e2, max_relative = 1e-9);
        assert_relative_eq!(v.energy, ground_state_energy(&profile).unwrap(), max_relative = 1e-12);
    }
}

#[test]
fn odd_chains_are_refused() {
    let s = eigendecompose(&chain(&[1.0, 1.0])).unwrap();
    assert!(correlation_matrix(&s).is_err());
}

#[test]
fn cardy_remainder_of_the_uniform_chain() {
    let profile = build_profile(&MetricSpec::minkowski(1.0).unwrap(), 400).unwrap();
    let e = ground_state_energy(&profile).unwrap();
    let remainder = e + 2.0 / PI * 399.0 + (4.0 / PI - 1.0);
    assert!((remainder + PI * 2.0 / (24.0 * 400.0)).abs() < 5e-6, "{remainder}");
    assert_relative_eq!(first_order_energy(&profile), -2.0 / PI * 399.0, max_relative = 1e-14);
    assert_relative_eq!(first_order_energy(&profile), -254.0113, epsilon = 1e-4);
}

#[test]
fn first_order_rindler_energy() {
    let profile = build_profile(&MetricSpec::rindler(1.0, 0.01).unwrap(), 100).unwrap();
    assert_relative_eq!(first_order_energy(&profile), -2.0 / PI * 148.5, max_relative = 1e-14);
}

#[test]
fn mid_chain_correlator_is_one_over_pi() {
    let v = Vacuum::solve(&build_profile(&MetricSpec::minkowski(1.0).unwrap(), 400).unwrap()).unwrap();
    let smooth = casimir_chain::vacuum::smoothed_correlators(&v.correlations);
    assert!((smooth[199] - 1.0 / PI).abs() < 1e-3);
    let v = Vacuum::solve(&build_profile(&MetricSpec::rainbow(1.0, 0.005).unwrap(), 400).unwrap()).unwrap();
    let smooth = casimir_chain::vacuum::smoothed_correlators(&v.correlations);
    assert!(smooth[100..300].iter().all(|c| (c * PI - 1.0).abs() < 0.01));
}
