//! Density-matrix exponentiation.
//!
//! A partial-swap step consumes one copy of a state `sigma` and nudges a
//! target register towards `exp(i sigma dt) (.) exp(-i sigma dt)`:
//!
//! ```text
//! Tr_A[ e^{iS dt} (sigma (x) X) e^{-iS dt} ] = X + i dt [sigma, X] + O(dt^2)
//! ```
//!
//! The three-register variant builds conjugation by `exp(i (Omega/2) dt)`
//! from copies of `theta = (I/2) (x) rho` and `theta' = (I/2) (x) rho'` using
//! the block interaction [`t_operator`]. Channels are evaluated exactly on the
//! joint space; nothing here samples copies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, expm_hermitian, kron, partial_trace, ComplexMatrix, Keep};
use crate::states::{embed_theta, omega_half, pauli_z, swap_operator, DensityMatrix};

/// Copies needed to exponentiate a state for time `t` with error `eps`,
/// `ceil(t^2 / eps)` (unit constant).
pub fn copies_needed(t: f64, eps: f64) -> Result<usize> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", format!("must be positive, got {t}")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid("eps", format!("must be positive, got {eps}")));
    }
    Ok(((t * t / eps).ceil() as usize).max(1))
}

/// Step schedule for repeated exponentiation steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmrSchedule {
    total_time: f64,
    steps: usize,
    dt: f64,
    target_error: Option<f64>,
}

impl LmrSchedule {
    pub fn new(total_time: f64, steps: usize) -> Result<Self> {
        if !total_time.is_finite() {
            return Err(Error::invalid("total_time", "must be finite"));
        }
        if steps == 0 {
            return Err(Error::invalid("steps", "must be at least 1"));
        }
        Ok(LmrSchedule {
            total_time,
            steps,
            dt: total_time / steps as f64,
            target_error: None,
        })
    }

    /// Schedule with [`copies_needed`] steps.
    pub fn from_error(total_time: f64, eps: f64) -> Result<Self> {
        let steps = copies_needed(total_time, eps)?;
        Ok(LmrSchedule {
            target_error: Some(eps),
            ..Self::new(total_time, steps)?
        })
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn target_error(&self) -> Option<f64> {
        self.target_error
    }
}

/// Block interaction on two `(N+1)`-qubit registers,
/// `T = (Z_a (x) I + I (x) Z_a) S / 2`, where `Z_a` is Pauli-Z on the leading
/// (block) qubit of a register and `S` swaps the registers.
///
/// On register pairs whose block qubits agree, `T` acts as `+S` (both `|0>`)
/// or `-S` (both `|1>`), i.e. `diag(S, -S)` on the aligned block; it vanishes
/// when the block qubits differ. `T` is Hermitian and `T^3 = T`.
pub fn t_operator(base_qubits: usize) -> ComplexMatrix {
    let reg = 1usize << (base_qubits + 1);
    let z_block = kron(&pauli_z(), &ComplexMatrix::identity(reg / 2));
    let id = ComplexMatrix::identity(reg);
    let z_sum = &kron(&z_block, &id) + &kron(&id, &z_block);
    z_sum.matmul(&swap_operator(base_qubits + 1)).scale_real(0.5)
}

/// One exact partial-swap interaction step: a copy register in state `copy`
/// coupled to a target register through `exp(i K dt)`, copy traced out.
#[derive(Debug, Clone)]
pub struct PartialSwapStep {
    unitary: ComplexMatrix,
    copy: ComplexMatrix,
    dim: usize,
}

impl PartialSwapStep {
    /// `interaction` acts on `copy (x) target`, both of dimension `copy.dim()`.
    pub fn new(interaction: &ComplexMatrix, copy: &ComplexMatrix, dt: f64) -> Result<Self> {
        let dim = copy.dim();
        if interaction.dim() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: interaction.dim(),
            });
        }
        Ok(PartialSwapStep {
            unitary: expm_hermitian(interaction, dt)?,
            copy: copy.clone(),
            dim,
        })
    }

    /// Plain swap step consuming a copy of `sigma`.
    pub fn swap(sigma: &ComplexMatrix, dt: f64) -> Result<Self> {
        let dim = sigma.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::invalid("sigma", "dimension must be 2^n with n >= 1"));
        }
        Self::new(&swap_operator(dim.trailing_zeros() as usize), sigma, dt)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, x: &ComplexMatrix) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// `Tr_copy[U (copy (x) x) U^dagger]`
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check(x)?;
        let joint = kron(&self.copy, x).conjugate_by(&self.unitary);
        partial_trace(&joint, (self.dim, self.dim), Keep::B)
    }

    /// `Tr_copy[U (copy (x) x)]`, the branch where only the ket side evolves
    /// (a controlled step with control `|1><0|`).
    pub fn apply_left(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check(x)?;
        let joint = self.unitary.matmul(&kron(&self.copy, x));
        partial_trace(&joint, (self.dim, self.dim), Keep::B)
    }
}

/// A linear map on `d x d` matrices stored as a `d^2 x d^2` matrix acting on
/// row-major vectorizations.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    dim: usize,
    mat: ComplexMatrix,
}

impl Superoperator {
    pub fn identity(dim: usize) -> Self {
        Superoperator {
            dim,
            mat: ComplexMatrix::identity(dim * dim),
        }
    }

    /// Tabulates `map` on the matrix units `|i><j|`.
    pub fn from_map(dim: usize, map: impl Fn(&ComplexMatrix) -> Result<ComplexMatrix>) -> Result<Self> {
        let n = dim * dim;
        let mut mat = ComplexMatrix::zeros(n);
        for col in 0..n {
            let mut unit = ComplexMatrix::zeros(dim);
            unit[(col / dim, col % dim)] = c(1.0, 0.0);
            let image = map(&unit)?;
            for (row, z) in image.entries().iter().enumerate() {
                mat[(row, col)] = *z;
            }
        }
        Ok(Superoperator { dim, mat })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Superoperator) -> Superoperator {
        Superoperator {
            dim: self.dim,
            mat: self.mat.matmul(&first.mat),
        }
    }

    pub fn power(&self, n: usize) -> Superoperator {
        let mut acc = Superoperator::identity(self.dim);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, s: Complex64) -> Superoperator {
        Superoperator {
            dim: self.dim,
            mat: self.mat.scale(s),
        }
    }

    /// Conjugate transpose of the `d^2 x d^2` representation.
    pub fn adjoint_matrix(&self) -> ComplexMatrix {
        self.mat.adjoint()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.mat.matvec(v)
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(x.dim(), self.dim, "dimension mismatch");
        ComplexMatrix::from_row_major(self.apply_vec(x.entries())).expect("square image of a square matrix")
    }
}

/// The two maps needed to run a channel under clock control: `both` acts when
/// the bra and ket branches both evolve, `left` when only the ket branch does.
#[derive(Debug, Clone)]
pub struct ControlledChannel {
    pub both: Superoperator,
    pub left: Superoperator,
}

impl ControlledChannel {
    pub fn from_step(step: &PartialSwapStep) -> Result<Self> {
        Ok(ControlledChannel {
            both: Superoperator::from_map(step.dim(), |x| step.apply(x))?,
            left: Superoperator::from_map(step.dim(), |x| step.apply_left(x))?,
        })
    }

    pub fn dim(&self) -> usize {
        self.both.dim()
    }

    /// `self` after `first`.
    pub fn then_after(&self, first: &ControlledChannel) -> ControlledChannel {
        ControlledChannel {
            both: self.both.compose(&first.both),
            left: self.left.compose(&first.left),
        }
    }

    pub fn power(&self, n: usize) -> ControlledChannel {
        ControlledChannel {
            both: self.both.power(n),
            left: self.left.power(n),
        }
    }

    /// Multiplies the ket-only branch by a phase, which is how a global phase
    /// of the synthesized unitary shows up under control.
    pub fn with_left_phase(&self, angle: f64) -> ControlledChannel {
        ControlledChannel {
            both: self.both.clone(),
            left: self.left.scale(Complex64::from_polar(1.0, angle)),
        }
    }
}

/// `Tr_A[e^{iS dt} (sigma (x) varsigma) e^{-iS dt}]`, exactly.
pub fn lmr_step(sigma: &DensityMatrix, varsigma: &DensityMatrix, dt: f64) -> Result<ComplexMatrix> {
    if sigma.dim() != varsigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            found: varsigma.dim(),
        });
    }
    PartialSwapStep::swap(sigma.matrix(), dt)?.apply(varsigma.matrix())
}

fn ensure_register_dims(theta: &DensityMatrix, theta2: &DensityMatrix, anc: &ComplexMatrix) -> Result<()> {
    if theta.dim() != theta2.dim() {
        return Err(Error::DimensionMismatch {
            expected: theta.dim(),
            found: theta2.dim(),
        });
    }
    if anc.dim() != theta.dim() {
        return Err(Error::DimensionMismatch {
            expected: theta.dim(),
            found: anc.dim(),
        });
    }
    if theta.qubits() < 2 {
        return Err(Error::invalid("theta", "must act on N+1 >= 2 qubits"));
    }
    Ok(())
}

/// `op` on registers (1, 3) of three equal registers of dimension `d`.
fn embed_outer_pair(op: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let n = d * d * d;
    let mut out = ComplexMatrix::zeros(n);
    for i1 in 0..d {
        for i3 in 0..d {
            for j1 in 0..d {
                for j3 in 0..d {
                    let v = op[(i1 * d + i3, j1 * d + j3)];
                    if v.re == 0.0 && v.im == 0.0 {
                        continue;
                    }
                    for i2 in 0..d {
                        out[(i1 * d * d + i2 * d + i3, j1 * d * d + i2 * d + j3)] = v;
                    }
                }
            }
        }
    }
    out
}

/// Three-register step
/// `Tr_{1,2}[ e^{-iT_23 dt} e^{iT_13 dt} (theta (x) theta' (x) anc) e^{-iT_13 dt} e^{iT_23 dt} ]`,
/// evaluated on the full joint space.
pub fn omega_lmr_step(
    theta: &DensityMatrix,
    theta2: &DensityMatrix,
    anc: &DensityMatrix,
    dt: f64,
) -> Result<ComplexMatrix> {
    omega_lmr_step_matrix(theta, theta2, anc.matrix(), dt)
}

fn omega_lmr_step_matrix(
    theta: &DensityMatrix,
    theta2: &DensityMatrix,
    anc: &ComplexMatrix,
    dt: f64,
) -> Result<ComplexMatrix> {
    ensure_register_dims(theta, theta2, anc)?;
    let d = theta.dim();
    let t = t_operator(theta.qubits() - 1);
    let u13 = embed_outer_pair(&expm_hermitian(&t, dt)?, d);
    let u23 = kron(&ComplexMatrix::identity(d), &expm_hermitian(&t, -dt)?);
    let v = u23.matmul(&u13);
    let joint = kron(&kron(theta.matrix(), theta2.matrix()), anc).conjugate_by(&v);
    partial_trace(&joint, (d * d, d), Keep::B)
}

/// Which generator repeated steps exponentiate.
#[derive(Debug, Clone)]
pub enum GeneratorSource {
    /// `exp(i sigma t)` from copies of `sigma` (two registers).
    Plain { sigma: DensityMatrix },
    /// `exp(i (rho - rho') t)`: alternating steps on copies of `rho` (`+dt`)
    /// and `rho'` (`-dt`).
    Difference { rho: DensityMatrix, rho2: DensityMatrix },
    /// `exp(i (Omega/2) t)` from the three-register step.
    Omega { rho: DensityMatrix, rho2: DensityMatrix },
}

impl GeneratorSource {
    /// The Hermitian generator the steps approximate.
    pub fn generator(&self) -> Result<ComplexMatrix> {
        Ok(match self {
            GeneratorSource::Plain { sigma } => sigma.matrix().clone(),
            GeneratorSource::Difference { rho, rho2 } => {
                if rho.dim() != rho2.dim() {
                    return Err(Error::QubitMismatch {
                        left: rho.qubits(),
                        right: rho2.qubits(),
                    });
                }
                rho.matrix() - rho2.matrix()
            }
            GeneratorSource::Omega { rho, rho2 } => omega_half(rho, rho2)?.matrix().clone(),
        })
    }

    /// Dimension of the register the generator acts on.
    pub fn target_dim(&self) -> usize {
        match self {
            GeneratorSource::Plain { sigma } => sigma.dim(),
            GeneratorSource::Difference { rho, .. } => rho.dim(),
            GeneratorSource::Omega { rho, .. } => 2 * rho.dim(),
        }
    }

    /// The sequence of two-register steps making up one step of size `dt`.
    /// The three-register step factorizes into two of these because the
    /// copies in registers 1 and 2 are fresh product states.
    pub fn partial_steps(&self, dt: f64) -> Result<Vec<PartialSwapStep>> {
        match self {
            GeneratorSource::Plain { sigma } => Ok(vec![PartialSwapStep::swap(sigma.matrix(), dt)?]),
            GeneratorSource::Difference { rho, rho2 } => {
                if rho.dim() != rho2.dim() {
                    return Err(Error::QubitMismatch {
                        left: rho.qubits(),
                        right: rho2.qubits(),
                    });
                }
                Ok(vec![
                    PartialSwapStep::swap(rho.matrix(), dt)?,
                    PartialSwapStep::swap(rho2.matrix(), -dt)?,
                ])
            }
            GeneratorSource::Omega { rho, rho2 } => {
                if rho.dim() != rho2.dim() {
                    return Err(Error::QubitMismatch {
                        left: rho.qubits(),
                        right: rho2.qubits(),
                    });
                }
                let t = t_operator(rho.qubits());
                Ok(vec![
                    PartialSwapStep::new(&t, embed_theta(rho).matrix(), dt)?,
                    PartialSwapStep::new(&t, embed_theta(rho2).matrix(), -dt)?,
                ])
            }
        }
    }

    /// Controlled maps for one step of size `dt`.
    pub fn controlled_step(&self, dt: f64) -> Result<ControlledChannel> {
        let mut steps = self.partial_steps(dt)?.into_iter();
        let first = ControlledChannel::from_step(&steps.next().expect("at least one step"))?;
        steps.try_fold(first, |acc, s| {
            Ok(ControlledChannel::from_step(&s)?.then_after(&acc))
        })
    }

    fn step(&self, anc: &ComplexMatrix, dt: f64) -> Result<ComplexMatrix> {
        match self {
            GeneratorSource::Omega { rho, rho2 } => {
                omega_lmr_step_matrix(&embed_theta(rho), &embed_theta(rho2), anc, dt)
            }
            _ => self
                .partial_steps(dt)?
                .iter()
                .try_fold(anc.clone(), |x, s| s.apply(&x)),
        }
    }
}

/// Applies `schedule.steps()` exponentiation steps of size `schedule.dt()` to
/// `anc` and returns the final register state.
pub fn lmr_evolve(
    source: &GeneratorSource,
    anc: &DensityMatrix,
    schedule: &LmrSchedule,
) -> Result<ComplexMatrix> {
    if anc.dim() != source.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: source.target_dim(),
            found: anc.dim(),
        });
    }
    let mut x = anc.matrix().clone();
    for _ in 0..schedule.steps() {
        x = source.step(&x, schedule.dt())?;
    }
    Ok(x)
}

/// `U_A U_B = exp(i theta t) exp(-i theta' t)` with `theta = (I/2) (x) rho`.
pub fn trotter_uab(rho: &DensityMatrix, rho2: &DensityMatrix, t: f64) -> Result<ComplexMatrix> {
    if rho.qubits() != rho2.qubits() {
        return Err(Error::QubitMismatch {
            left: rho.qubits(),
            right: rho2.qubits(),
        });
    }
    let ua = expm_hermitian(embed_theta(rho).matrix(), t)?;
    let ub = expm_hermitian(embed_theta(rho2).matrix(), -t)?;
    Ok(ua.matmul(&ub))
}

/// First-order product `exp(i a t) exp(-i b t)`.
pub fn product_formula(a: &ComplexMatrix, b: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(expm_hermitian(a, t)?.matmul(&expm_hermitian(b, -t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::density_from_pure;
    use std::f64::consts::FRAC_PI_2;

    fn qubit(a: (f64, f64), b: (f64, f64)) -> DensityMatrix {
        density_from_pure(&[c(a.0, a.1), c(b.0, b.1)]).unwrap()
    }

    fn mixed_qubit(x: f64, y: f64, z: f64) -> DensityMatrix {
        DensityMatrix::from_matrix(ComplexMatrix::from_rows(&[
            vec![c(0.5 + 0.5 * z, 0.0), c(0.5 * x, -0.5 * y)],
            vec![c(0.5 * x, 0.5 * y), c(0.5 - 0.5 * z, 0.0)],
        ]))
        .unwrap()
    }

    #[test]
    fn copies_examples() {
        assert_eq!(copies_needed(1.0, 1.0).unwrap(), 1);
        assert_eq!(copies_needed(FRAC_PI_2, 0.01).unwrap(), 247);
        assert_eq!(copies_needed(2.0, 0.5).unwrap(), 8);
        assert!(copies_needed(0.0, 1.0).is_err());
        assert!(copies_needed(1.0, -1.0).is_err());
    }

    #[test]
    fn schedule_from_error() {
        let s = LmrSchedule::from_error(FRAC_PI_2, 0.01).unwrap();
        assert!(s.steps() >= 247);
        assert!((s.dt() * s.steps() as f64 - FRAC_PI_2).abs() < 1e-15);
        assert!(LmrSchedule::new(1.0, 0).is_err());
    }

    #[test]
    fn t_operator_structure() {
        let t = t_operator(1);
        assert_eq!(t.dim(), 16);
        assert_eq!(t.hermitian_asymmetry(), 0.0);
        let t3 = t.matmul(&t).matmul(&t);
        assert!(t3.max_abs_diff(&t) < 1e-15);
        // |0 a>|0 b> -> |0 b>|0 a>, |1 a>|1 b> -> -|1 b>|1 a>
        assert_eq!(t[(0b0100, 0b0001)], c(1.0, 0.0));
        assert_eq!(t[(0b1110, 0b1011)], c(-1.0, 0.0));
        assert_eq!(t[(0b0010, 0b1000)], c(0.0, 0.0));
    }

    #[test]
    fn lmr_zero_time() {
        let s = qubit((0.6, 0.0), (0.0, 0.8));
        let v = mixed_qubit(0.1, 0.2, 0.3);
        assert!(lmr_step(&s, &v, 0.0).unwrap().max_abs_diff(v.matrix()) < 1e-15);
    }

    #[test]
    fn lmr_commuting_identical() {
        let s = mixed_qubit(0.3, -0.2, 0.4);
        for dt in [0.1, 0.7, 2.0] {
            assert!(lmr_step(&s, &s, dt).unwrap().max_abs_diff(s.matrix()) < 1e-12);
        }
    }

    #[test]
    fn lmr_dimension_mismatch() {
        let e = lmr_step(&DensityMatrix::basis(1, 0), &DensityMatrix::basis(2, 0), 0.1);
        assert!(matches!(e, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn omega_step_identical_states_leaves_anc() {
        let r = mixed_qubit(0.2, 0.1, -0.3);
        let th = embed_theta(&r);
        let anc = DensityMatrix::maximally_mixed(2);
        let out = omega_lmr_step(&th, &th, &anc, 0.05).unwrap();
        assert!(out.max_abs_diff(anc.matrix()) < 0.05 * 0.05);
    }

    #[test]
    fn omega_step_factorizes() {
        let rho = qubit((0.6, 0.0), (0.0, 0.8));
        let rho2 = mixed_qubit(0.2, -0.4, 0.1);
        let anc = embed_theta(&mixed_qubit(-0.3, 0.3, 0.5));
        let src = GeneratorSource::Omega {
            rho: rho.clone(),
            rho2: rho2.clone(),
        };
        let direct = omega_lmr_step(&embed_theta(&rho), &embed_theta(&rho2), &anc, 0.3).unwrap();
        let factored = src
            .partial_steps(0.3)
            .unwrap()
            .iter()
            .try_fold(anc.matrix().clone(), |x, s| s.apply(&x))
            .unwrap();
        assert!(direct.max_abs_diff(&factored) < 1e-13);
    }

    #[test]
    fn superoperator_matches_map() {
        let step = PartialSwapStep::swap(mixed_qubit(0.1, 0.5, -0.2).matrix(), 0.4).unwrap();
        let ch = ControlledChannel::from_step(&step).unwrap();
        let x = mixed_qubit(0.3, 0.0, 0.6);
        assert!(
            ch.both
                .apply(x.matrix())
                .max_abs_diff(&step.apply(x.matrix()).unwrap())
                < 1e-15
        );
        assert!(
            ch.left
                .apply(x.matrix())
                .max_abs_diff(&step.apply_left(x.matrix()).unwrap())
                < 1e-15
        );
        let p3 = ch.both.power(3);
        let mut y = x.matrix().clone();
        for _ in 0..3 {
            y = step.apply(&y).unwrap();
        }
        assert!(p3.apply(x.matrix()).max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn left_branch_is_first_order_unitary() {
        // Tr_A[e^{iS dt}(sigma (x) X)] = cos(dt) X + i sin(dt) sigma X
        let sigma = mixed_qubit(0.2, 0.3, 0.1);
        let x = mixed_qubit(-0.5, 0.1, 0.2);
        let dt = 0.37;
        let step = PartialSwapStep::swap(sigma.matrix(), dt).unwrap();
        let want =
            &x.matrix().scale_real(dt.cos()) + &sigma.matrix().matmul(x.matrix()).scale(c(0.0, dt.sin()));
        assert!(step.apply_left(x.matrix()).unwrap().max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn trotter_zero_time_and_commuting() {
        let a = mixed_qubit(0.0, 0.0, 0.4);
        let b = mixed_qubit(0.0, 0.0, -0.7);
        assert!(
            trotter_uab(&a, &b, 0.0)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(4))
                < 1e-15
        );
        let diff = embed_theta(&a).matrix() - embed_theta(&b).matrix();
        let exact = expm_hermitian(&diff, 0.9).unwrap();
        assert!(trotter_uab(&a, &b, 0.9).unwrap().max_abs_diff(&exact) < 1e-10);
    }

    #[test]
    fn evolve_rejects_wrong_ancilla() {
        let src = GeneratorSource::Omega {
            rho: DensityMatrix::basis(1, 0),
            rho2: DensityMatrix::basis(1, 1),
        };
        let sched = LmrSchedule::new(1.0, 4).unwrap();
        assert!(lmr_evolve(&src, &DensityMatrix::basis(1, 0), &sched).is_err());
    }
}
