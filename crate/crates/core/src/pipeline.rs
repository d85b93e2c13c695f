//! End-to-end trace-distance estimation.
//!
//! Stages:
//!
//! 1. phase estimation of `exp(i G t)` on a maximally mixed register, for
//!    `G = Omega/2` (plain) and `G = I + Omega/2` (shifted);
//! 2. controlled rotation and ancilla readout, giving a qubit
//!    `gamma = diag(1 - L1, L1)` with `L1` the mean squared phase;
//! 3. a second phase estimation of `exp(i gamma t0)` on `|1>`, giving `kappa`;
//! 4. the weight of the zero phase in the plain outcome, giving `ell`;
//! 5. `D = 8 d (kappa2 - kappa1) + 7 d / 8 - ell` with `d` the register size.
//!
//! The reduced variant uses `rho - rho'` on `N` qubits in place of
//! `Omega/2` on `N + 1` qubits; it needs the difference to have a `+/-` paired
//! spectrum, which holds for any two pure states.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::dme::GeneratorSource;
use crate::error::{Error, Result};
use crate::linalg::{c, expm_hermitian, hermitian_eig, kron, ComplexMatrix, ComplexScalar};
use crate::qpe::{
    estimate, mode_index, qpe_distribution, qpe_distribution_matrix, qpe_driven_channel, qpe_driven_unitary,
    qpe_kernel, ClockConfig, ClockInit, EstimatorPolicy, QpeOutcome,
};
use crate::states::{
    omega_half, pairing_mismatch, pauli_z, swap_operator, DensityMatrix, AMPLITUDE_NORM_TOL,
};

/// Largest pairing mismatch accepted by the reduced variant.
pub const REDUCED_PAIRING_TOL: f64 = 1e-6;

/// Tolerance for the time parameters the combination constants assume.
const TIME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// `Omega/2` on `N + 1` qubits; valid for any pair.
    #[default]
    Full,
    /// `rho - rho'` on `N` qubits; needs a paired spectrum.
    Reduced,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Reduced => "reduced",
        }
    }

    /// Dimension of the first-stage register for `N`-qubit states.
    pub fn register_dim(&self, n: usize) -> usize {
        match self {
            Variant::Full => 2 << n,
            Variant::Reduced => 1 << n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Generator `G`.
    Plain,
    /// Generator `I + G`.
    Shifted,
}

/// How the first-stage unitary is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitaryMode {
    /// Exact spectral decomposition of the generator.
    #[default]
    Exact,
    /// First-order product of the two single-state exponentials.
    Trotter,
    /// Controlled partial-swap channel built from state copies.
    LmrChannel,
}

impl UnitaryMode {
    pub fn name(&self) -> &'static str {
        match self {
            UnitaryMode::Exact => "exact",
            UnitaryMode::Trotter => "trotter",
            UnitaryMode::LmrChannel => "lmr",
        }
    }
}

/// Readout policy; sampling draws its seed from [`RunConfig::seed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EstimatorKind {
    #[default]
    Expectation,
    Mode,
    Sample {
        shots: usize,
    },
}

impl EstimatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorKind::Expectation => "expectation",
            EstimatorKind::Mode => "mode",
            EstimatorKind::Sample { .. } => "sample",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// First-stage clock qubits `M`.
    pub clock_qubits: usize,
    /// Second-stage clock qubits `P`; `None` reads the second-stage phases
    /// exactly.
    pub second_clock_qubits: Option<usize>,
    pub t: f64,
    pub t0: f64,
    pub unitary_mode: UnitaryMode,
    /// Partial-swap steps per application of the first-stage unitary.
    pub lmr_steps: usize,
    pub estimator: EstimatorKind,
    pub init: ClockInit,
    pub seed: u64,
    /// Round `ell` to the nearest integer (ties to even).
    pub round_ell: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            clock_qubits: 3,
            second_clock_qubits: None,
            t: FRAC_PI_2,
            t0: FRAC_PI_2,
            unitary_mode: UnitaryMode::Exact,
            lmr_steps: 64,
            estimator: EstimatorKind::Expectation,
            init: ClockInit::Uniform,
            seed: 0,
            round_ell: false,
        }
    }
}

impl RunConfig {
    pub fn with_clock(clock_qubits: usize) -> Self {
        RunConfig {
            clock_qubits,
            ..Self::default()
        }
    }

    /// Policy for a stage; each stage gets its own sampling stream.
    pub fn policy(&self, stage: u64) -> EstimatorPolicy {
        match self.estimator {
            EstimatorKind::Expectation => EstimatorPolicy::Expectation,
            EstimatorKind::Mode => EstimatorPolicy::Mode,
            EstimatorKind::Sample { shots } => EstimatorPolicy::Sample {
                shots,
                seed: self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(stage),
            },
        }
    }

    fn first_clock(&self) -> Result<ClockConfig> {
        ClockConfig::new(self.clock_qubits, self.t, self.init)
    }

    fn validate(&self) -> Result<()> {
        if self.lmr_steps == 0 {
            return Err(Error::invalid("lmr_steps", "must be at least 1"));
        }
        if let EstimatorKind::Sample { shots: 0 } = self.estimator {
            return Err(Error::invalid("shots", "must be at least 1"));
        }
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(Error::invalid("t0", format!("must be positive, got {}", self.t0)));
        }
        self.first_clock().map(|_| ())
    }
}

fn check_pair(rho: &DensityMatrix, rho2: &DensityMatrix) -> Result<()> {
    if rho.qubits() != rho2.qubits() {
        return Err(Error::QubitMismatch {
            left: rho.qubits(),
            right: rho2.qubits(),
        });
    }
    Ok(())
}

/// First-stage generator (before any shift) for `variant`.
pub fn first_generator(rho: &DensityMatrix, rho2: &DensityMatrix, variant: Variant) -> Result<ComplexMatrix> {
    check_pair(rho, rho2)?;
    match variant {
        Variant::Full => Ok(omega_half(rho, rho2)?.matrix().clone()),
        Variant::Reduced => {
            let diff = rho.matrix() - rho2.matrix();
            let spectrum = hermitian_eig(&diff)?.eigenvalues;
            let mismatch = pairing_mismatch(&spectrum);
            if mismatch > REDUCED_PAIRING_TOL {
                return Err(Error::UnpairedSpectrum { mismatch });
            }
            Ok(diff)
        }
    }
}

fn first_unitary_trotter(
    rho: &DensityMatrix,
    rho2: &DensityMatrix,
    variant: Variant,
    t: f64,
) -> Result<ComplexMatrix> {
    let (a, b) = match variant {
        Variant::Full => {
            let z = pauli_z().scale_real(0.5);
            (kron(&z, rho.matrix()), kron(&z, rho2.matrix()))
        }
        Variant::Reduced => (rho.matrix().clone(), rho2.matrix().clone()),
    };
    Ok(expm_hermitian(&a, t)?.matmul(&expm_hermitian(&b, -t)?))
}

/// First phase estimation with a maximally mixed register.
pub fn first_qpe(
    rho: &DensityMatrix,
    rho2: &DensityMatrix,
    variant: Variant,
    branch: Branch,
    cfg: &RunConfig,
) -> Result<QpeOutcome> {
    cfg.validate()?;
    let generator = first_generator(rho, rho2, variant)?;
    let dim = generator.dim();
    let input = DensityMatrix::maximally_mixed(dim.trailing_zeros() as usize);
    let clock = cfg.first_clock()?;
    let shift = match branch {
        Branch::Plain => 0.0,
        Branch::Shifted => 1.0,
    };
    match cfg.unitary_mode {
        UnitaryMode::Exact => {
            let g = &generator + &ComplexMatrix::identity(dim).scale_real(shift);
            qpe_distribution(&g, &input, &clock)
        }
        UnitaryMode::Trotter => {
            let u = first_unitary_trotter(rho, rho2, variant, cfg.t)?
                .scale(ComplexScalar::from_polar(1.0, shift * cfg.t));
            qpe_driven_unitary(&u, &input, &clock)
        }
        UnitaryMode::LmrChannel => {
            let source = match variant {
                Variant::Full => GeneratorSource::Omega {
                    rho: rho.clone(),
                    rho2: rho2.clone(),
                },
                Variant::Reduced => GeneratorSource::Difference {
                    rho: rho.clone(),
                    rho2: rho2.clone(),
                },
            };
            let dt = cfg.t / cfg.lmr_steps as f64;
            let channel = source
                .controlled_step(dt)?
                .power(cfg.lmr_steps)
                .with_left_phase(shift * cfg.t);
            qpe_driven_channel(&channel, &input, &clock)
        }
    }
}

/// `diag(1 - L1, L1)` with `L1` the estimated mean squared phase.
pub fn gamma_state(outcome: &QpeOutcome, policy: EstimatorPolicy) -> Result<DensityMatrix> {
    let l1 = estimate(outcome, policy, |x| x * x)?.clamp(0.0, 1.0);
    Ok(DensityMatrix::from_trusted(ComplexMatrix::from_real_diagonal(&[
        1.0 - l1,
        l1,
    ])))
}

/// Reads the phase `y t / (2 pi)` of an eigenstate, exactly or through a
/// `P`-qubit clock.
fn read_eigenphase(y: f64, time: f64, cfg: &RunConfig, policy: EstimatorPolicy) -> Result<f64> {
    match cfg.second_clock_qubits {
        None => Ok(y * time / TAU),
        Some(p) => {
            let clock = ClockConfig::new(p, time, cfg.init)?;
            let outcome = QpeOutcome::from_distribution(qpe_kernel(clock.phase_of(y), &clock))?;
            estimate(&outcome, policy, |x| x)
        }
    }
}

/// Second phase estimation on `exp(i gamma t0)` with input `|1>`.
pub fn second_qpe_kappa(gamma: &DensityMatrix, cfg: &RunConfig, policy: EstimatorPolicy) -> Result<f64> {
    if gamma.qubits() != 1 {
        return Err(Error::invalid("gamma", "must be a single-qubit state"));
    }
    if let Some(p) = cfg.second_clock_qubits {
        let clock = ClockConfig::new(p, cfg.t0, cfg.init)?;
        let outcome = qpe_distribution(gamma.matrix(), &DensityMatrix::basis(1, 1), &clock)?;
        return estimate(&outcome, policy, |x| x);
    }
    read_eigenphase(gamma.matrix()[(1, 1)].re, cfg.t0, cfg, policy)
}

/// Diagonal clock-register state holding the outcome distribution.
pub fn beta_state(outcome: &QpeOutcome) -> DensityMatrix {
    DensityMatrix::from_trusted(ComplexMatrix::from_real_diagonal(&outcome.probs))
}

/// `(L, ell)` from the zero-phase weight of `beta`, where `n` is the qubit
/// count of the input states.
pub fn estimate_ell(
    beta: &DensityMatrix,
    variant: Variant,
    n: usize,
    cfg: &RunConfig,
    policy: EstimatorPolicy,
) -> Result<(f64, f64)> {
    // beta is diagonal and |0...0> is an eigenvector, so only its eigenphase
    // beta_00 t0 / (2 pi) is read out.
    let b00 = beta.matrix()[(0, 0)].re;
    let l = read_eigenphase(b00, cfg.t0, cfg, policy)?;
    let scale = match variant {
        Variant::Full => (1u64 << (n + 3)) as f64,
        Variant::Reduced => (1u64 << (n + 2)) as f64,
    };
    let ell = l * scale;
    Ok((l, if cfg.round_ell { ell.round_ties_even() } else { ell }))
}

/// `8 d (kappa2 - kappa1) + 7 d / 8 - ell` for register dimension `d`.
pub fn combine(kappa1: f64, kappa2: f64, ell_tilde: f64, n: usize, variant: Variant) -> f64 {
    let d = variant.register_dim(n) as f64;
    8.0 * d * (kappa2 - kappa1) + 7.0 * d / 8.0 - ell_tilde
}

/// Everything produced by one run of the estimator.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub kappa1: f64,
    pub kappa2: f64,
    /// Mean squared phase on the plain and shifted branches.
    pub lambda1: (f64, f64),
    pub l: f64,
    pub ell_tilde: f64,
    pub d_estimate: f64,
    pub variant: Variant,
    /// Qubits of each input state.
    pub qubits: usize,
    pub config: RunConfig,
    pub plain: QpeOutcome,
    pub shifted: QpeOutcome,
}

struct BranchResult {
    outcome: QpeOutcome,
    lambda1: f64,
    kappa: f64,
}

fn run_branch(
    rho: &DensityMatrix,
    rho2: &DensityMatrix,
    variant: Variant,
    branch: Branch,
    cfg: &RunConfig,
) -> Result<BranchResult> {
    let salt = match branch {
        Branch::Plain => 0,
        Branch::Shifted => 2,
    };
    let outcome = first_qpe(rho, rho2, variant, branch, cfg)?;
    let gamma = gamma_state(&outcome, cfg.policy(salt))?;
    let lambda1 = gamma.matrix()[(1, 1)].re;
    let kappa = second_qpe_kappa(&gamma, cfg, cfg.policy(salt + 1))?;
    Ok(BranchResult {
        outcome,
        lambda1,
        kappa,
    })
}

/// Runs the full estimator. The combination constants assume
/// `t = t0 = pi/2`; other times are rejected.
pub fn estimate_trace_distance(
    rho: &DensityMatrix,
    rho2: &DensityMatrix,
    cfg: &RunConfig,
    variant: Variant,
) -> Result<PipelineReport> {
    check_pair(rho, rho2)?;
    cfg.validate()?;
    for (name, v) in [("t", cfg.t), ("t0", cfg.t0)] {
        if (v - FRAC_PI_2).abs() > TIME_TOL {
            return Err(Error::invalid(name, format!("the estimator needs pi/2, got {v}")));
        }
    }
    let (plain, shifted) = std::thread::scope(|s| {
        let shifted = s.spawn(|| run_branch(rho, rho2, variant, Branch::Shifted, cfg));
        let plain = run_branch(rho, rho2, variant, Branch::Plain, cfg);
        (plain, shifted.join().expect("shifted branch panicked"))
    });
    let (plain, shifted) = (plain?, shifted?);
    let n = rho.qubits();
    let (l, ell_tilde) = estimate_ell(&beta_state(&plain.outcome), variant, n, cfg, cfg.policy(4))?;
    Ok(PipelineReport {
        kappa1: plain.kappa,
        kappa2: shifted.kappa,
        lambda1: (plain.lambda1, shifted.lambda1),
        l,
        ell_tilde,
        d_estimate: combine(plain.kappa, shifted.kappa, ell_tilde, n, variant),
        variant,
        qubits: n,
        config: *cfg,
        plain: plain.outcome,
        shifted: shifted.outcome,
    })
}

/// Time of the first stage of the equality test.
pub const DISTINGUISH_T1: f64 = FRAC_PI_2;
/// Time of the second stage of the equality test.
pub const DISTINGUISH_T2: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishReport {
    pub equal: bool,
    /// Grid phase read by the second stage.
    pub readout: f64,
    /// Second-stage grid size.
    pub grid_size: usize,
    /// Weight of `|0...0>` in the clock state after the first stage.
    pub sigma00: f64,
}

/// Equality test: first stage on `exp(i (rho - rho') t1)` with the system
/// in `|+...+>`, giving a clock state `sigma`; second stage on
/// `exp(i sigma t2)` with input `|0...0>`. Reports equality iff the most
/// likely readout lies within half a grid cell of `1 / (2 pi)`.
///
/// Uses `M = cfg.clock_qubits` and `P = cfg.second_clock_qubits` (default
/// `M`); both clocks start uniform.
pub fn distinguish_report(
    rho: &DensityMatrix,
    rho2: &DensityMatrix,
    cfg: &RunConfig,
) -> Result<DistinguishReport> {
    check_pair(rho, rho2)?;
    let n = rho.qubits();
    let dim = rho.dim();
    let diff = rho.matrix() - rho2.matrix();
    let plus = vec![c(1.0 / (dim as f64).sqrt(), 0.0); dim];
    let clock1 = ClockConfig::new(cfg.clock_qubits, DISTINGUISH_T1, ClockInit::Uniform)?;
    let first = qpe_distribution_matrix(&diff, &ComplexMatrix::outer(&plus), &clock1)?;
    let comps = first.per_eigenstate.expect("spectral route keeps components");
    debug_assert!(n >= 1);

    // sigma = A W A^dagger with columns of A the clock amplitudes of each
    // eigenspace; its nonzero spectrum is that of W^1/2 A^dagger A W^1/2.
    let cols: Vec<(f64, Vec<ComplexScalar>)> = comps
        .iter()
        .filter(|k| k.weight > 1e-15)
        .map(|k| (k.weight.sqrt(), crate::qpe::qpe_amplitudes(k.phase, &clock1)))
        .collect();
    let r = cols.len();
    let gram = ComplexMatrix::from_fn(r, |i, j| {
        let dot: ComplexScalar = cols[i].1.iter().zip(&cols[j].1).map(|(x, y)| x.conj() * y).sum();
        dot * (cols[i].0 * cols[j].0)
    });
    let eig = hermitian_eig(&gram)?;
    let sigma00: f64 = cols.iter().map(|(w, a)| w * w * a[0].norm_sqr()).sum();

    let p = cfg.second_clock_qubits.unwrap_or(cfg.clock_qubits);
    let clock2 = ClockConfig::new(p, DISTINGUISH_T2, ClockInit::Uniform)?;
    let t = clock2.grid_size();
    let mut probs = vec![0.0; t];
    let mut covered = 0.0;
    for (j, &mu) in eig.eigenvalues.iter().enumerate() {
        if mu <= 1e-14 {
            continue;
        }
        let u = eig.eigenvector(j);
        // first entry of the unit eigenvector A W^1/2 u / sqrt(mu)
        let v0: ComplexScalar = cols
            .iter()
            .zip(&u)
            .map(|((w, a), uk)| a[0] * uk * *w)
            .sum::<ComplexScalar>()
            / mu.sqrt();
        let weight = v0.norm_sqr();
        covered += weight;
        for (acc, k) in probs.iter_mut().zip(qpe_kernel(clock2.phase_of(mu), &clock2)) {
            *acc += weight * k;
        }
    }
    // the rest of |0...0> lies in the kernel of sigma
    probs[0] += (1.0 - covered).max(0.0);
    let readout = mode_index(&probs) as f64 / t as f64;
    let target = DISTINGUISH_T2 / TAU;
    Ok(DistinguishReport {
        equal: (readout - target).abs() <= 0.5 / t as f64,
        readout,
        grid_size: t,
        sigma00,
    })
}

pub fn distinguish(rho: &DensityMatrix, rho2: &DensityMatrix, cfg: &RunConfig) -> Result<bool> {
    Ok(distinguish_report(rho, rho2, cfg)?.equal)
}

fn check_normalized(name: &'static str, v: &[ComplexScalar]) -> Result<()> {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if v.is_empty() || (norm - 1.0).abs() > AMPLITUDE_NORM_TOL {
        return Err(Error::invalid(name, format!("squared norm {norm} is not 1")));
    }
    Ok(())
}

/// Probability that the SWAP test ancilla reads 1, simulated on the circuit
/// `H, controlled-SWAP, H`.
pub fn swap_test_prob_one(psi: &[ComplexScalar], phi: &[ComplexScalar]) -> Result<f64> {
    if psi.len() != phi.len() {
        return Err(Error::DimensionMismatch {
            expected: psi.len(),
            found: phi.len(),
        });
    }
    check_normalized("psi", psi)?;
    check_normalized("phi", phi)?;
    let d = psi.len();
    let joint: Vec<ComplexScalar> = psi.iter().flat_map(|a| phi.iter().map(move |b| a * b)).collect();
    let swapped = if d.is_power_of_two() && d >= 2 {
        swap_operator(d.trailing_zeros() as usize).matvec(&joint)
    } else {
        (0..d * d).map(|k| joint[(k % d) * d + k / d]).collect()
    };
    Ok(joint
        .iter()
        .zip(&swapped)
        .map(|(x, y)| ((x - y) * 0.5).norm_sqr())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::density_from_pure;

    fn ket0() -> DensityMatrix {
        DensityMatrix::basis(1, 0)
    }

    fn ket1() -> DensityMatrix {
        DensityMatrix::basis(1, 1)
    }

    fn tilted_state() -> DensityMatrix {
        density_from_pure(&[c((1.0f64 - 0.625 * 0.625).sqrt(), 0.0), c(0.625, 0.0)]).unwrap()
    }

    fn mass_at(out: &QpeOutcome, p: usize) -> f64 {
        out.probs[p]
    }

    #[test]
    fn first_qpe_reduced_orthogonal() {
        let cfg = RunConfig::with_clock(3);
        let out = first_qpe(&ket0(), &ket1(), Variant::Reduced, Branch::Plain, &cfg).unwrap();
        assert!((mass_at(&out, 2) - 0.5).abs() < 1e-12);
        assert!((mass_at(&out, 6) - 0.5).abs() < 1e-12);
        let full = first_qpe(&ket0(), &ket1(), Variant::Full, Branch::Plain, &cfg).unwrap();
        assert!((mass_at(&full, 1) - 0.5).abs() < 1e-12);
        assert!((mass_at(&full, 7) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn first_qpe_identical_is_phase_zero() {
        let r = tilted_state();
        for v in [Variant::Full, Variant::Reduced] {
            let out = first_qpe(&r, &r, v, Branch::Plain, &RunConfig::with_clock(4)).unwrap();
            assert!((out.probs[0] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_rejects_unpaired() {
        // traceless 2x2 differences are always paired, so use two qubits
        let e = first_qpe(
            &DensityMatrix::basis(2, 0),
            &DensityMatrix::maximally_mixed(2),
            Variant::Reduced,
            Branch::Plain,
            &RunConfig::default(),
        );
        assert!(matches!(e, Err(Error::UnpairedSpectrum { .. })));
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_state(&QpeOutcome::point_mass(8, 0), EstimatorPolicy::Expectation).unwrap();
        assert_eq!(g.matrix()[(0, 0)].re, 1.0);
        let o = QpeOutcome::from_distribution(vec![0.0, 0.5, 0.0, 0.5]).unwrap();
        let g = gamma_state(&o, EstimatorPolicy::Expectation).unwrap();
        assert!((g.matrix()[(1, 1)].re - 0.3125).abs() < 1e-15);
        let o = QpeOutcome::from_distribution(vec![0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]).unwrap();
        let g = gamma_state(&o, EstimatorPolicy::Expectation).unwrap();
        assert!((g.matrix()[(1, 1)].re - 0.390625).abs() < 1e-15);
    }

    #[test]
    fn kappa_examples() {
        let cfg = RunConfig::default();
        let p = EstimatorPolicy::Expectation;
        let g = |l: f64| DensityMatrix::from_trusted(ComplexMatrix::from_real_diagonal(&[1.0 - l, l]));
        assert_eq!(second_qpe_kappa(&g(0.0), &cfg, p).unwrap(), 0.0);
        assert!((second_qpe_kappa(&g(0.3125), &cfg, p).unwrap() - 0.078125).abs() < 1e-15);
        assert!((second_qpe_kappa(&g(0.125), &cfg, p).unwrap() - 0.03125).abs() < 1e-15);
        let finite = RunConfig {
            second_clock_qubits: Some(7),
            ..cfg
        };
        // 0.078125 = 10/128 is on the 7-qubit grid
        assert!((second_qpe_kappa(&g(0.3125), &finite, p).unwrap() - 0.078125).abs() < 1e-12);
    }

    #[test]
    fn beta_embeds_probs() {
        let o = QpeOutcome::from_distribution(vec![0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.5, 0.0]).unwrap();
        let b = beta_state(&o);
        assert_eq!(b.qubits(), 3);
        assert_eq!(b.matrix()[(2, 2)].re, 0.5);
        assert_eq!(b.matrix().trace().re, 1.0);
    }

    #[test]
    fn ell_examples() {
        let cfg = RunConfig::default();
        let p = EstimatorPolicy::Expectation;
        let b = beta_state(&QpeOutcome::point_mass(8, 0));
        assert_eq!(estimate_ell(&b, Variant::Full, 1, &cfg, p).unwrap(), (0.25, 4.0));
        assert_eq!(
            estimate_ell(&b, Variant::Reduced, 1, &cfg, p).unwrap(),
            (0.25, 2.0)
        );
        let rounded = RunConfig {
            round_ell: true,
            ..cfg
        };
        let o = QpeOutcome::from_distribution(vec![0.55, 0.45]).unwrap();
        let (_, ell) = estimate_ell(&beta_state(&o), Variant::Full, 1, &rounded, p).unwrap();
        assert_eq!(ell, 2.0);
    }

    #[test]
    fn combine_examples() {
        assert!((combine(0.078125, 0.03125, 0.0, 1, Variant::Reduced) - 1.0).abs() < 1e-12);
        assert!((combine(0.09765625, 0.01953125, 0.0, 1, Variant::Full) - 1.0).abs() < 1e-12);
        assert!(combine(0.0, 0.015625, 4.0, 1, Variant::Full).abs() < 1e-12);
    }

    #[test]
    fn end_to_end_orthogonal() {
        // the full-variant phases 1/8 and 3/8 need M >= 3
        for m in 2..=6 {
            let cfg = RunConfig::with_clock(m);
            let variants: &[Variant] = if m >= 3 {
                &[Variant::Full, Variant::Reduced]
            } else {
                &[Variant::Reduced]
            };
            for &v in variants {
                let r = estimate_trace_distance(&ket0(), &ket1(), &cfg, v).unwrap();
                assert!((r.d_estimate - 1.0).abs() < 1e-9, "m={m} {v:?}");
                assert_eq!(r.qubits, 1);
            }
        }
    }

    #[test]
    fn end_to_end_tilted_state() {
        for m in 5..=8 {
            let r = estimate_trace_distance(
                &ket0(),
                &tilted_state(),
                &RunConfig::with_clock(m),
                Variant::Reduced,
            )
            .unwrap();
            assert!((r.d_estimate - 0.625).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_default_times() {
        let cfg = RunConfig {
            t: 1.0,
            ..RunConfig::default()
        };
        assert!(estimate_trace_distance(&ket0(), &ket1(), &cfg, Variant::Full).is_err());
    }

    #[test]
    fn distinguish_examples() {
        let cfg = RunConfig::with_clock(5);
        assert!(distinguish(&ket0(), &ket0(), &cfg).unwrap());
        assert!(distinguish(&tilted_state(), &tilted_state(), &cfg).unwrap());
        assert!(!distinguish(&ket0(), &ket1(), &RunConfig::with_clock(2)).unwrap());
        assert!(!distinguish(&ket0(), &tilted_state(), &cfg).unwrap());
        let rep = distinguish_report(&ket0(), &ket0(), &cfg).unwrap();
        assert!((rep.sigma00 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swap_test_examples() {
        let z = [c(1.0, 0.0), c(0.0, 0.0)];
        let o = [c(0.0, 0.0), c(1.0, 0.0)];
        assert!(swap_test_prob_one(&z, &z).unwrap().abs() < 1e-15);
        assert!((swap_test_prob_one(&z, &o).unwrap() - 0.5).abs() < 1e-15);
        let a = (1.0f64 - 0.625 * 0.625).sqrt();
        let p = [c(a, 0.0), c(0.625, 0.0)];
        assert!((swap_test_prob_one(&z, &p).unwrap() - (1.0 - a * a) / 2.0).abs() < 1e-15);
        assert!(swap_test_prob_one(&z, &[c(1.0, 0.0)]).is_err());
        assert!(swap_test_prob_one(&z, &[c(2.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
