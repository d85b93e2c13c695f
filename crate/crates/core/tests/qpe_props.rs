mod common;

use std::f64::consts::TAU;

use common::{random_hermitian, random_mixed};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracedist::qpe::{qpe_driven_channel, qpe_driven_unitary};
use tracedist::{
    estimate, expm_hermitian, qpe_distribution, qpe_kernel, ClockConfig, ClockInit, ComplexScalar,
    ControlledChannel, EstimatorPolicy, QpeOutcome, Superoperator,
};

fn init_strategy() -> impl Strategy<Value = ClockInit> {
    prop_oneof![Just(ClockInit::Uniform), Just(ClockInit::ImprovedSine)]
}

/// Kernel by direct summation over clock states.
fn direct_kernel(phi: f64, cfg: &ClockConfig) -> Vec<f64> {
    let a = cfg.amplitudes();
    let t = a.len() as f64;
    (0..a.len())
        .map(|p| {
            let z: ComplexScalar = a
                .iter()
                .enumerate()
                .map(|(i, ai)| ComplexScalar::from_polar(*ai, TAU * i as f64 * (phi - p as f64 / t)))
                .sum();
            z.norm_sqr() / t
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kernel_is_normalized(phi in 0.0f64..1.0, m in 1usize..11, init in init_strategy()) {
        let k = qpe_kernel(phi, &ClockConfig::new(m, 1.0, init).unwrap());
        prop_assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(k.iter().all(|p| *p >= -1e-12));
    }

    #[test]
    fn kernel_matches_direct_sum(phi in 0.0f64..1.0, m in 1usize..7, init in init_strategy()) {
        let cfg = ClockConfig::new(m, 1.0, init).unwrap();
        for (a, b) in qpe_kernel(phi, &cfg).iter().zip(direct_kernel(phi, &cfg)) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_reflection_symmetry(phi in 0.0f64..1.0, m in 1usize..9, init in init_strategy()) {
        let cfg = ClockConfig::new(m, 1.0, init).unwrap();
        let t = cfg.grid_size();
        let k = qpe_kernel(phi, &cfg);
        let r = qpe_kernel(1.0 - phi, &cfg);
        for p in 0..t {
            prop_assert!((k[p] - r[(t - p) % t]).abs() < 1e-12);
        }
    }

    #[test]
    fn on_grid_policies_agree(m in 1usize..9, j in 0usize..256) {
        let cfg = ClockConfig::new(m, 1.0, ClockInit::Uniform).unwrap();
        let t = cfg.grid_size();
        let p = j % t;
        let out = QpeOutcome::from_distribution(qpe_kernel(p as f64 / t as f64, &cfg)).unwrap();
        let f = |x: f64| x * x + 0.5 * x;
        let want = f(p as f64 / t as f64);
        for policy in [
            EstimatorPolicy::Expectation,
            EstimatorPolicy::Mode,
            EstimatorPolicy::Sample { shots: 64, seed: j as u64 },
        ] {
            prop_assert!((estimate(&out, policy, f).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_is_normalized(seed in any::<u64>(), m in 1usize..8, t in 0.1f64..5.0) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random_hermitian(&mut r, 4);
        let input = random_mixed(&mut r, 2);
        let out = qpe_distribution(&g, &input, &ClockConfig::new(m, t, ClockInit::Uniform).unwrap()).unwrap();
        prop_assert!((out.total() - 1.0).abs() < 1e-9);
        let weights: f64 = out.per_eigenstate.unwrap().iter().map(|c| c.weight).sum();
        prop_assert!((weights - 1.0).abs() < 1e-9);
    }
}

#[test]
fn sampling_agrees_with_expectation() {
    let cfg = ClockConfig::new(3, 1.0, ClockInit::Uniform).unwrap();
    let out = QpeOutcome::from_distribution(qpe_kernel(0.3, &cfg)).unwrap();
    let f = |x: f64| x;
    let mean = estimate(&out, EstimatorPolicy::Expectation, f).unwrap();
    let second = estimate(&out, EstimatorPolicy::Expectation, |x| x * x).unwrap();
    let shots = 1_000_000;
    let sd = ((second - mean * mean) / shots as f64).sqrt();
    let got = estimate(&out, EstimatorPolicy::Sample { shots, seed: 2024 }, f).unwrap();
    assert!(
        (got - mean).abs() < 3.0 * sd,
        "got {got}, want {mean} +/- {}",
        3.0 * sd
    );
}

#[test]
fn unitary_channel_drives_like_the_unitary() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    let g = random_hermitian(&mut r, 2);
    let u = expm_hermitian(&g, 0.8).unwrap();
    let ch = ControlledChannel {
        both: Superoperator::from_map(2, |x| Ok(x.conjugate_by(&u))).unwrap(),
        left: Superoperator::from_map(2, |x| Ok(u.matmul(x))).unwrap(),
    };
    let input = random_mixed(&mut r, 1);
    for init in [ClockInit::Uniform, ClockInit::ImprovedSine] {
        let cfg = ClockConfig::new(5, 0.8, init).unwrap();
        let a = qpe_driven_unitary(&u, &input, &cfg).unwrap();
        let b = qpe_driven_channel(&ch, &input, &cfg).unwrap();
        let c = qpe_distribution(&g, &input, &cfg).unwrap();
        for p in 0..cfg.grid_size() {
            assert!((a.probs[p] - b.probs[p]).abs() < 1e-12);
            assert!((a.probs[p] - c.probs[p]).abs() < 1e-12);
        }
    }
}
