use casimir_chain::entanglement::block_occupations;
use casimir_chain::oracle::ManyBodyGroundState;
use casimir_chain::{
    block_entropy, build_profile, deformed_coordinate, effective_fermi_velocity, eigenvalues, fit_flat_cardy,
    ground_state_energy, CardyModel, HoppingMatrix, HoppingProfile, MetricSpec, Vacuum,
};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Positive hoppings for an even number of sites.
fn hoppings(max_sites: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_sites / 2).prop_flat_map(|half| prop::collection::vec(0.1f64..3.0, 2 * half - 1))
}

fn profile(j: Vec<f64>) -> HoppingProfile {
    HoppingProfile::from_hoppings(j).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_is_homogeneous_and_correlations_scale_free(j in hoppings(40), lambda in 0.2f64..5.0) {
        let p = profile(j);
        let q = p.scaled(lambda).unwrap();
        let (a, b) = (Vacuum::solve(&p).unwrap(), Vacuum::solve(&q).unwrap());
        prop_assert!((b.energy - lambda * a.energy).abs() <= 1e-12 * b.energy.abs().max(1.0));
        let n = p.n_sites();
        for i in 0..n {
            for k in 0..n {
                prop_assert!((a.correlations.get(i, k) - b.correlations.get(i, k)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn vacuum_is_a_slater_determinant(j in hoppings(30)) {
        let p = profile(j);
        let v = Vacuum::solve(&p).unwrap();
        let n = p.n_sites();
        prop_assert!(v.correlations.max_projector_error() < 1e-9);
        prop_assert!((v.correlations.trace() - (n / 2) as f64).abs() < 1e-9);
        for ell in 1..n {
            for nu in block_occupations(&v.correlations, ell).unwrap() {
                prop_assert!(nu > -1e-9 && nu < 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn spectrum_has_particle_hole_symmetry(j in hoppings(60)) {
        let p = profile(j);
        let w = eigenvalues(&HoppingMatrix::from_profile(&p)).unwrap();
        let n = w.len();
        let scale = p.max_hopping();
        for k in 0..n {
            prop_assert!((w[k] + w[n - 1 - k]).abs() <= 1e-10 * scale);
        }
        let frob: f64 = 2.0 * p.hoppings().iter().map(|x| x * x).sum::<f64>();
        prop_assert!((w.iter().map(|e| e * e).sum::<f64>() / frob - 1.0).abs() < 1e-10);
    }

    #[test]
    fn harmonic_velocity_never_exceeds_arithmetic(j in hoppings(80)) {
        let v = effective_fermi_velocity(&profile(j));
        prop_assert!(v.harmonic <= v.arithmetic * (1.0 + 1e-14));
    }

    #[test]
    fn deformed_coordinate_is_monotone(j in hoppings(50)) {
        let p = profile(j);
        let n = p.n_sites();
        let x: Vec<f64> = (0..=n).map(|l| deformed_coordinate(&p, l).unwrap()).collect();
        prop_assert!(x.windows(2).all(|w| w[1] >= w[0]));
        prop_assert_eq!(x[0], 0.0);
        prop_assert_eq!(x[1], 0.0);
        prop_assert!((x[n] - p.deformed_length()).abs() <= 1e-12 * p.deformed_length());
    }

    #[test]
    fn matches_many_body_ground_state(j in hoppings(8)) {
        let p = profile(j);
        let reference = ManyBodyGroundState::solve(&p).unwrap();
        let v = Vacuum::solve(&p).unwrap();
        prop_assert!((v.energy - reference.energy()).abs() < 1e-8);
        for ell in 1..p.n_sites() {
            let d = block_entropy(&v.correlations, ell).unwrap() - reference.block_entropy(ell).unwrap();
            prop_assert!(d.abs() < 1e-8);
        }
    }

    #[test]
    fn exact_cardy_data_is_recovered(c0 in 0.1f64..2.0, cb in -1.0f64..1.0, cvf in 0.5f64..4.0) {
        let data: Vec<(usize, f64)> = (100..=300)
            .step_by(4)
            .map(|n| {
                let nf = n as f64;
                (n, -c0 * (nf - 1.0) - cb - cvf * PI / (24.0 * nf))
            })
            .collect();
        let f = fit_flat_cardy(&data, CardyModel::Leading).unwrap();
        prop_assert!((f.c0 - c0).abs() < 1e-10);
        prop_assert!((f.cb - cb).abs() < 1e-8);
        prop_assert!((f.cvf - cvf).abs() < 1e-6);
    }

    #[test]
    fn zero_deformation_is_minkowski(j0 in 0.1f64..5.0, half in 1usize..100) {
        let n = 2 * half;
        let flat = build_profile(&MetricSpec::minkowski(j0).unwrap(), n).unwrap();
        for spec in [
            MetricSpec::rindler(j0, 0.0).unwrap(),
            MetricSpec::sine(j0, 0.0, 0.3).unwrap(),
            MetricSpec::rainbow(j0, 0.0).unwrap(),
            MetricSpec::modulated_sine(j0, 0.0, 0.3).unwrap(),
        ] {
            prop_assert_eq!(build_profile(&spec, n).unwrap(), flat.clone());
        }
        prop_assert!((ground_state_energy(&flat).unwrap() / j0 - ground_state_energy(&flat.scaled(1.0 / j0).unwrap()).unwrap()).abs() < 1e-10 * n as f64);
    }
}
