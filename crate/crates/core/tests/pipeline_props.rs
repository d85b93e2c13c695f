mod common;

use common::{random_hermitian, random_mixed, random_pure};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracedist::{
    combine, distinguish, estimate_trace_distance, expm_hermitian, first_qpe, omega_half,
    oracle_trace_distance, Branch, ComplexMatrix, DensityMatrix, EstimatorKind, RunConfig, UnitaryMode,
    Variant,
};

/// `sum_pairs (1 - w/2 + w^2/8)` and `sum_pairs (1/8 + w^2/8)`, scaled by
/// `1 / 2^{N+3}`, over the pair magnitudes `w` of `Omega/2`.
fn closed_form_kappas(rho: &DensityMatrix, rho2: &DensityMatrix) -> (f64, f64) {
    let w = omega_half(rho, rho2).unwrap().pair_magnitudes().unwrap();
    let scale = 1.0 / (1u64 << (rho.qubits() + 3)) as f64;
    let k1: f64 = w
        .iter()
        .filter(|x| **x > 1e-12)
        .map(|x| 1.0 - x / 2.0 + x * x / 8.0)
        .sum();
    let k2: f64 = w.iter().map(|x| 0.125 + x * x / 8.0).sum();
    (k1 * scale, k2 * scale)
}

/// Diagonal states with entries on the 1/8 grid, rotated by a common unitary.
fn on_grid_pair(seed: u64, a: usize, b: usize) -> (DensityMatrix, DensityMatrix) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let u = expm_hermitian(&random_hermitian(&mut r, 2), 1.0).unwrap();
    let make = |k: usize| {
        let p = k as f64 / 8.0;
        let m = ComplexMatrix::from_real_diagonal(&[p, 1.0 - p]).conjugate_by(&u);
        DensityMatrix::from_matrix(m.hermitian_part()).unwrap()
    };
    (make(a), make(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kappas_match_closed_forms_on_grid(seed in any::<u64>(), a in 0usize..=8, b in 0usize..=8) {
        let (rho, rho2) = on_grid_pair(seed, a, b);
        let rep = estimate_trace_distance(&rho, &rho2, &RunConfig::with_clock(7), Variant::Full).unwrap();
        let (k1, k2) = closed_form_kappas(&rho, &rho2);
        prop_assert!((rep.kappa1 - k1).abs() < 1e-9);
        prop_assert!((rep.kappa2 - k2).abs() < 1e-9);
        let d = oracle_trace_distance(&rho, &rho2).unwrap();
        prop_assert!((rep.d_estimate - d).abs() < 1e-9);
    }

    #[test]
    fn report_satisfies_combine(seed in any::<u64>(), m in 2usize..8) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_mixed(&mut r, 1);
        let rho2 = random_mixed(&mut r, 1);
        let rep = estimate_trace_distance(&rho, &rho2, &RunConfig::with_clock(m), Variant::Full).unwrap();
        prop_assert_eq!(rep.d_estimate, combine(rep.kappa1, rep.kappa2, rep.ell_tilde, 1, Variant::Full));
    }

    #[test]
    fn swapping_inputs_leaves_estimate(seed in any::<u64>(), m in 2usize..9) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_mixed(&mut r, 1);
        let rho2 = random_mixed(&mut r, 1);
        let cfg = RunConfig::with_clock(m);
        let a = estimate_trace_distance(&rho, &rho2, &cfg, Variant::Full).unwrap();
        let b = estimate_trace_distance(&rho2, &rho, &cfg, Variant::Full).unwrap();
        prop_assert!((a.d_estimate - b.d_estimate).abs() < 1e-10);
    }

    #[test]
    fn identical_states_are_never_called_distinct(seed in any::<u64>(), m in 2usize..8, qubits in 1usize..3) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_mixed(&mut r, qubits);
        prop_assert!(distinguish(&rho, &rho, &RunConfig::with_clock(m)).unwrap());
    }
}

#[test]
fn variants_agree_on_pure_pairs_with_grid_spectra() {
    // |0> against cos(a)|0> + sin(a)|1> has distance sin(a)
    let ket = DensityMatrix::basis(1, 0);
    for k in 0..=8 {
        let d = k as f64 / 8.0;
        let other = tracedist::density_from_pure(&[
            tracedist::ComplexScalar::new((1.0 - d * d).sqrt(), 0.0),
            tracedist::ComplexScalar::new(0.0, d),
        ])
        .unwrap();
        let cfg = RunConfig::with_clock(8);
        let full = estimate_trace_distance(&ket, &other, &cfg, Variant::Full).unwrap();
        let red = estimate_trace_distance(&ket, &other, &cfg, Variant::Reduced).unwrap();
        assert!((full.d_estimate - red.d_estimate).abs() < 1e-9, "k = {k}");
        assert!((full.d_estimate - d).abs() < 1e-9);
    }
}

#[test]
fn convergence_with_clock_size() {
    let mut r = ChaCha8Rng::seed_from_u64(99);
    for qubits in [1, 2] {
        for _ in 0..5 {
            let rho = random_pure(&mut r, qubits);
            let rho2 = random_pure(&mut r, qubits);
            let d = oracle_trace_distance(&rho, &rho2).unwrap();
            let err = |m| {
                let rep =
                    estimate_trace_distance(&rho, &rho2, &RunConfig::with_clock(m), Variant::Full).unwrap();
                (rep.d_estimate - d).abs()
            };
            assert!(err(10) <= 0.02, "error {} at M = 10", err(10));
        }
    }
}

#[test]
fn lmr_mode_approaches_exact_mode() {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let rho = random_pure(&mut r, 1);
    let rho2 = random_pure(&mut r, 1);
    for variant in [Variant::Reduced, Variant::Full] {
        for branch in [Branch::Plain, Branch::Shifted] {
            let exact = first_qpe(&rho, &rho2, variant, branch, &RunConfig::with_clock(3)).unwrap();
            let gap = |steps| {
                let cfg = RunConfig {
                    unitary_mode: UnitaryMode::LmrChannel,
                    lmr_steps: steps,
                    ..RunConfig::with_clock(3)
                };
                let lmr = first_qpe(&rho, &rho2, variant, branch, &cfg).unwrap();
                exact
                    .probs
                    .iter()
                    .zip(&lmr.probs)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            };
            let (coarse, fine) = (gap(32), gap(256));
            assert!(
                fine < coarse && fine < 0.02,
                "{variant:?} {branch:?}: {coarse} -> {fine}"
            );
        }
    }
}

#[test]
fn sampling_runs_are_reproducible() {
    let cfg = RunConfig {
        estimator: EstimatorKind::Sample { shots: 500 },
        seed: 42,
        ..RunConfig::with_clock(4)
    };
    let a = DensityMatrix::basis(1, 0);
    let b = random_pure(&mut ChaCha8Rng::seed_from_u64(1), 1);
    let x = estimate_trace_distance(&a, &b, &cfg, Variant::Reduced).unwrap();
    let y = estimate_trace_distance(&a, &b, &cfg, Variant::Reduced).unwrap();
    assert_eq!(x.d_estimate, y.d_estimate);
}
