use std::f64::consts::TAU;

use faer::Side;
use gqfi::fock::{
    apply_phase, build_fock_input, choose_cutoff, moment, output_density_matrix, qfi_spectral,
    uhlmann_fidelity, FockDensityMatrix, MomentOp, PhaseGenerator, ORACLE_LEAKAGE,
};
use gqfi_core::qfi::{fidelity_gaussian, qfi_pipeline};
use gqfi_core::{interferometer_output, ChannelConfig, ModeParams, ProductStateParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_state(rng: &mut StdRng, alpha_max: f64, r_max: f64) -> ProductStateParams {
    let mut mode = || ModeParams {
        omega: rng.random_range(0.0..TAU),
        alpha_abs: rng.random_range(0.0..alpha_max),
        beta: rng.random_range(0.0..TAU),
        r: rng.random_range(0.0..r_max),
        theta: rng.random_range(0.0..TAU),
    };
    let (a, b) = (mode(), mode());
    ProductStateParams { a, b }
}

#[test]
fn squeezed_input_photon_statistics() {
    let p = ProductStateParams {
        a: ModeParams::squeezed(1.0, 0.3),
        b: ModeParams::default(),
    };
    let n_max = choose_cutoff(&p, ORACLE_LEAKAGE).unwrap();
    let input = build_fock_input(&p, n_max).unwrap();
    let rho = FockDensityMatrix::pure(&input);
    let n = moment(&rho, MomentOp::NumA).re;
    assert!((n - 1.0f64.sinh().powi(2)).abs() < 1e-9, "{n}");
    for (idx, (n1, _)) in input.basis.states().enumerate() {
        if n1 % 2 == 1 {
            assert_eq!(input.amplitudes[idx].norm(), 0.0);
        }
    }
}

#[test]
fn coherent_input_is_poissonian() {
    let p = ProductStateParams {
        a: ModeParams::coherent(1.0, 0.0),
        b: ModeParams::default(),
    };
    let input = build_fock_input(&p, 20).unwrap();
    let mut factorial = 1.0;
    for k in 0..12 {
        if k > 0 {
            factorial *= k as f64;
        }
        let amp = input.amplitudes[input.basis.index(k, 0)];
        assert!((amp.norm_sqr() - (-1.0f64).exp() / factorial).abs() < 1e-14);
    }
    let n = moment(&FockDensityMatrix::pure(&input), MomentOp::NumA).re;
    assert!((n - 1.0).abs() < 1e-12);
}

#[test]
fn output_state_invariants() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..5 {
        let p = random_state(&mut rng, 1.0, 0.4);
        let eta = rng.random_range(0.3..1.0);
        let cfg = ChannelConfig::new(eta, rng.random_range(0.3..1.0), 0.5).unwrap();
        let n_max = choose_cutoff(&p, ORACLE_LEAKAGE).unwrap();
        let rho = output_density_matrix(&p, &cfg, n_max).unwrap();
        let trace = rho.trace();
        assert!(trace <= 1.0 + 1e-12 && trace >= 1.0 - 1e-6);
        assert!((trace + rho.leakage - 1.0).abs() < 1e-10);
        let dense = rho.rho();
        assert!((dense.clone() - dense.adjoint()).norm_max() < 1e-12);
        let eig = dense.self_adjoint_eigenvalues(Side::Lower).unwrap();
        assert!(eig.iter().all(|&e| e >= -1e-10));
    }
}

#[test]
fn spectrum_does_not_depend_on_phase() {
    let p = ProductStateParams::dsdv(0.8, 0.3);
    let cfg = ChannelConfig::symmetric(0.7, 0.0).unwrap();
    let rho = output_density_matrix(&p, &cfg, choose_cutoff(&p, ORACLE_LEAKAGE).unwrap()).unwrap();
    let spectrum = |m: &FockDensityMatrix| {
        let mut e = m.rho().self_adjoint_eigenvalues(Side::Lower).unwrap();
        e.sort_by(f64::total_cmp);
        e
    };
    let (s0, s1) = (spectrum(&rho), spectrum(&apply_phase(&rho, 0.9)));
    let dev = s0.iter().zip(&s1).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(dev < 1e-10, "{dev}");
}

#[test]
fn fidelity_matches_gaussian_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let p1 = random_state(&mut rng, 1.0, 0.45);
        let p2 = random_state(&mut rng, 1.0, 0.45);
        assert!(p1.mean_photons() <= 3.0 && p2.mean_photons() <= 3.0);
        let cfg = ChannelConfig::symmetric(rng.random_range(0.4..1.0), rng.random_range(0.0..TAU))
            .unwrap();
        let n_max = choose_cutoff(&p1, ORACLE_LEAKAGE)
            .unwrap()
            .max(choose_cutoff(&p2, ORACLE_LEAKAGE).unwrap());
        let f_fock = uhlmann_fidelity(
            &output_density_matrix(&p1, &cfg, n_max).unwrap(),
            &output_density_matrix(&p2, &cfg, n_max).unwrap(),
        )
        .unwrap();
        let f_gauss = fidelity_gaussian(
            &interferometer_output(&p1, &cfg).unwrap(),
            &interferometer_output(&p2, &cfg).unwrap(),
        )
        .unwrap();
        worst = worst.max((f_fock - f_gauss).abs());
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn spectral_qfi_matches_general_route() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..8 {
        let p = random_state(&mut rng, 1.2, 0.5);
        assert!(p.mean_photons() <= 4.0);
        let cfg = ChannelConfig::new(rng.random_range(0.5..1.0), rng.random_range(0.5..1.0), 0.2)
            .unwrap();
        let rho = output_density_matrix(&p, &cfg, choose_cutoff(&p, ORACLE_LEAKAGE).unwrap())
            .unwrap();
        let fock = qfi_spectral(&rho, &PhaseGenerator::new(rho.basis())).unwrap();
        let gauss = qfi_pipeline(&p, &cfg).unwrap().i_total;
        assert!((fock - gauss).abs() <= 1e-4 * gauss, "{fock} {gauss}");
    }
}
