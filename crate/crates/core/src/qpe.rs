//! Phase estimation outcome distributions.
//!
//! The clock register starts in `sum_i a_i |i>`, drives `U^i` on the system
//! and is read out after an inverse Fourier transform. Distributions are
//! computed analytically: from the generator's spectrum (`qpe_distribution`)
//! or from a black-box unitary or controlled channel (`qpe_driven_*`).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dme::ControlledChannel;
use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eig, ComplexMatrix};
use crate::states::DensityMatrix;

/// Relative gap below which neighbouring eigenvalues are merged.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Largest supported clock register.
pub const MAX_CLOCK_QUBITS: usize = 24;

/// Initial state of the clock register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClockInit {
    #[default]
    Uniform,
    /// Sine-weighted amplitudes, see [`improved_init_amplitudes`].
    ImprovedSine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockConfig {
    clock_qubits: usize,
    time: f64,
    init: ClockInit,
}

impl ClockConfig {
    pub fn new(clock_qubits: usize, time: f64, init: ClockInit) -> Result<Self> {
        if clock_qubits == 0 || clock_qubits > MAX_CLOCK_QUBITS {
            return Err(Error::invalid(
                "clock_qubits",
                format!("must be in 1..={MAX_CLOCK_QUBITS}, got {clock_qubits}"),
            ));
        }
        if !(time > 0.0 && time.is_finite()) {
            return Err(Error::invalid("time", format!("must be positive, got {time}")));
        }
        Ok(ClockConfig {
            clock_qubits,
            time,
            init,
        })
    }

    pub fn clock_qubits(&self) -> usize {
        self.clock_qubits
    }

    /// `T = 2^M`
    pub fn grid_size(&self) -> usize {
        1 << self.clock_qubits
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn init(&self) -> ClockInit {
        self.init
    }

    pub fn with_time(self, time: f64) -> Result<Self> {
        Self::new(self.clock_qubits, time, self.init)
    }

    /// Real amplitudes of the initial clock state.
    pub fn amplitudes(&self) -> Vec<f64> {
        let t = self.grid_size();
        match self.init {
            ClockInit::Uniform => vec![1.0 / (t as f64).sqrt(); t],
            ClockInit::ImprovedSine => sine_amplitudes(t),
        }
    }

    /// Eigenphase in `[0, 1)` of eigenvalue `y` of the generator.
    pub fn phase_of(&self, y: f64) -> f64 {
        fold_phase(y * self.time / TAU)
    }
}

/// `x mod 1` in `[0, 1)`.
pub fn fold_phase(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn sine_amplitudes(t: usize) -> Vec<f64> {
    let tf = t as f64;
    let scale = (2.0 / tf).sqrt();
    (0..t)
        .map(|i| scale * (PI * (i as f64 + 0.5) / tf).sin())
        .collect()
}

/// `a_i = sqrt(2/T) sin(pi (i + 1/2) / T)` for `i < T`.
pub fn improved_init_amplitudes(t: usize) -> Result<Vec<f64>> {
    if t < 2 || !t.is_power_of_two() {
        return Err(Error::invalid(
            "T",
            format!("must be a power of two >= 2, got {t}"),
        ));
    }
    Ok(sine_amplitudes(t))
}

/// `sum_{i<T} e^{i i theta}` in closed form.
fn dirichlet(t: usize, theta: f64) -> Complex64 {
    let th = theta - TAU * (theta / TAU).round();
    let tf = t as f64;
    let half = (0.5 * th).sin();
    let mag = if half == 0.0 {
        tf
    } else {
        (0.5 * tf * th).sin() / half
    };
    Complex64::from_polar(mag, 0.5 * (tf - 1.0) * th)
}

/// Clock amplitudes after the inverse Fourier transform for an eigenstate with
/// phase `phi`.
pub fn qpe_amplitudes(phi: f64, cfg: &ClockConfig) -> Vec<Complex64> {
    let t = cfg.grid_size();
    let tf = t as f64;
    let norm = 1.0 / tf.sqrt();
    (0..t)
        .map(|p| {
            let theta = TAU * (phi - p as f64 / tf);
            match cfg.init {
                ClockInit::Uniform => dirichlet(t, theta) / tf,
                ClockInit::ImprovedSine => {
                    let s = PI / tf;
                    let shift = Complex64::from_polar(1.0, 0.5 * s);
                    let diff = shift * dirichlet(t, theta + s) - shift.conj() * dirichlet(t, theta - s);
                    diff * (norm * (2.0 / tf).sqrt()) / c(0.0, 2.0)
                }
            }
        })
        .collect()
}

/// Outcome distribution for an eigenstate with phase `phi`.
pub fn qpe_kernel(phi: f64, cfg: &ClockConfig) -> Vec<f64> {
    qpe_amplitudes(phi, cfg).iter().map(|z| z.norm_sqr()).collect()
}

/// A merged eigenspace of the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenComponent {
    pub eigenvalue: f64,
    pub phase: f64,
    pub weight: f64,
    pub multiplicity: usize,
    /// `P(p | phase)`
    pub distribution: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpeOutcome {
    pub probs: Vec<f64>,
    pub phase_grid: Vec<f64>,
    pub per_eigenstate: Option<Vec<EigenComponent>>,
}

impl QpeOutcome {
    fn from_probs(probs: Vec<f64>, per_eigenstate: Option<Vec<EigenComponent>>) -> Self {
        let t = probs.len() as f64;
        let phase_grid = (0..probs.len()).map(|p| p as f64 / t).collect();
        QpeOutcome {
            probs,
            phase_grid,
            per_eigenstate,
        }
    }

    /// Distribution with all mass on grid point `p`.
    pub fn point_mass(grid_size: usize, p: usize) -> Self {
        let mut probs = vec![0.0; grid_size];
        probs[p % grid_size] = 1.0;
        Self::from_probs(probs, None)
    }

    /// Builds an outcome from explicit probabilities; they must be finite,
    /// non-negative within `1e-12` and sum to one within `1e-9`.
    pub fn from_distribution(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 || !probs.len().is_power_of_two() {
            return Err(Error::invalid("probs", "length must be a power of two >= 2"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < -1e-12) {
            return Err(Error::invalid("probs", "entries must be finite and non-negative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid("probs", format!("sum to {total}, not 1")));
        }
        Ok(Self::from_probs(probs, None))
    }

    pub fn grid_size(&self) -> usize {
        self.probs.len()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Outcome distribution for `exp(i G t)` acting on `input`, from the spectrum
/// of `G`.
pub fn qpe_distribution(
    generator: &ComplexMatrix,
    input: &DensityMatrix,
    cfg: &ClockConfig,
) -> Result<QpeOutcome> {
    qpe_distribution_matrix(generator, input.matrix(), cfg)
}

pub(crate) fn qpe_distribution_matrix(
    generator: &ComplexMatrix,
    input: &ComplexMatrix,
    cfg: &ClockConfig,
) -> Result<QpeOutcome> {
    if generator.dim() != input.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            found: input.dim(),
        });
    }
    let eig = hermitian_eig(generator)?;
    let scale = eig.eigenvalues.iter().fold(1.0_f64, |m, y| m.max(y.abs()));
    let mut components: Vec<EigenComponent> = Vec::new();
    let mut start = 0;
    let n = eig.eigenvalues.len();
    while start < n {
        let mut end = start + 1;
        while end < n && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= DEGENERACY_TOL * scale {
            end += 1;
        }
        let weight: f64 = (start..end)
            .map(|k| input.expectation(&eig.eigenvector(k)).re)
            .sum();
        let eigenvalue = eig.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
        let phase = cfg.phase_of(eigenvalue);
        components.push(EigenComponent {
            eigenvalue,
            phase,
            weight,
            multiplicity: end - start,
            distribution: qpe_kernel(phase, cfg),
        });
        start = end;
    }
    let mut probs = vec![0.0; cfg.grid_size()];
    for comp in &components {
        for (acc, p) in probs.iter_mut().zip(&comp.distribution) {
            *acc += comp.weight * p;
        }
    }
    Ok(QpeOutcome::from_probs(probs, Some(components)))
}

/// `P(p) = (1/T) [B(0) + 2 Re sum_{k>=1} B(k) e^{-2 pi i k p / T}]`.
fn assemble(b: &[Complex64]) -> Vec<f64> {
    let t = b.len();
    let tf = t as f64;
    (0..t)
        .map(|p| {
            let tail: f64 = (1..t)
                .map(|k| (b[k] * Complex64::from_polar(1.0, -TAU * (k * p % t) as f64 / tf)).re)
                .sum();
            (b[0].re + 2.0 * tail) / tf
        })
        .collect()
}

/// Outcome distribution when the clock drives a given unitary `u` (one
/// application per clock increment).
pub fn qpe_driven_unitary(u: &ComplexMatrix, input: &DensityMatrix, cfg: &ClockConfig) -> Result<QpeOutcome> {
    if u.dim() != input.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: input.dim(),
        });
    }
    let a = cfg.amplitudes();
    let t = a.len();
    let mut b = vec![c(0.0, 0.0); t];
    let mut power = input.matrix().clone();
    for (k, bk) in b.iter_mut().enumerate() {
        let overlap: f64 = (0..t - k).map(|m| a[m + k] * a[m]).sum();
        *bk = power.trace() * overlap;
        power = u.matmul(&power);
    }
    Ok(QpeOutcome::from_probs(assemble(&b), None))
}

/// Outcome distribution when each clock increment applies one controlled
/// channel step.
///
/// For clock coherence `|m + k><m|` the first `m` steps act on both branches
/// and the remaining `k` on the ket branch only, so
/// `B(k) = sum_m a_{m+k} a_m Tr[left^k (both^m (rho))]`.
pub fn qpe_driven_channel(
    channel: &ControlledChannel,
    input: &DensityMatrix,
    cfg: &ClockConfig,
) -> Result<QpeOutcome> {
    let d = channel.dim();
    if d != input.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: input.dim(),
        });
    }
    let a = cfg.amplitudes();
    let t = a.len();
    let left = channel.left.adjoint_matrix();
    // Row functionals X -> Tr[left^k X], stored conjugated for matvec.
    let mut functionals = Vec::with_capacity(t);
    let mut f: Vec<Complex64> = ComplexMatrix::identity(d).entries().to_vec();
    for _ in 0..t {
        functionals.push(f.clone());
        f = left.matvec(&f);
    }
    let mut b = vec![c(0.0, 0.0); t];
    let mut state = input.matrix().entries().to_vec();
    for m in 0..t {
        for k in 0..t - m {
            let tr: Complex64 = functionals[k].iter().zip(&state).map(|(g, x)| g.conj() * x).sum();
            b[k] += tr * (a[m + k] * a[m]);
        }
        state = channel.both.apply_vec(&state);
    }
    Ok(QpeOutcome::from_probs(assemble(&b), None))
}

/// How a phase readout is turned into a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EstimatorPolicy {
    #[default]
    Expectation,
    /// Most likely grid point; ties go to the smaller index.
    Mode,
    /// Mean over `shots` seeded draws.
    Sample { shots: usize, seed: u64 },
}

impl EstimatorPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorPolicy::Expectation => "expectation",
            EstimatorPolicy::Mode => "mode",
            EstimatorPolicy::Sample { .. } => "sample",
        }
    }
}

/// Index of the largest probability, smallest index on ties.
pub fn mode_index(probs: &[f64]) -> usize {
    let mut best = 0;
    for (p, &v) in probs.iter().enumerate() {
        if v > probs[best] {
            best = p;
        }
    }
    best
}

/// Estimate of `f(phase)` under `policy`.
pub fn estimate(outcome: &QpeOutcome, policy: EstimatorPolicy, f: impl Fn(f64) -> f64) -> Result<f64> {
    let grid = &outcome.phase_grid;
    match policy {
        EstimatorPolicy::Expectation => Ok(outcome.probs.iter().zip(grid).map(|(p, x)| p * f(*x)).sum()),
        EstimatorPolicy::Mode => Ok(f(grid[mode_index(&outcome.probs)])),
        EstimatorPolicy::Sample { shots, seed } => {
            if shots == 0 {
                return Err(Error::invalid("shots", "must be at least 1"));
            }
            let weights = outcome.probs.iter().map(|p| p.max(0.0));
            let dist = WeightedIndex::new(weights).map_err(|e| Error::invalid("probs", e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = grid.iter().map(|x| f(*x)).collect();
            let total: f64 = (0..shots).map(|_| values[dist.sample(&mut rng)]).sum();
            Ok(total / shots as f64)
        }
    }
}
