//! Validated quantum states and the block operators built from them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    c, hermitian_eig, kron, trace_norm_abs_sum, ComplexMatrix, ComplexScalar, HERMITIAN_TOL,
};

/// Allowed deviation of `sum |a_i|^2` from one before an amplitude vector is
/// rejected; smaller deviations are renormalized away.
pub const AMPLITUDE_NORM_TOL: f64 = 1e-8;

/// Trace deviation allowed for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;

/// Most negative eigenvalue a density matrix may have.
pub const PSD_TOL: f64 = 1e-10;

/// Tolerance on the `+/-` pairing of a [`PairedOperator`] spectrum.
pub const PAIRING_TOL: f64 = 1e-9;

fn qubits_for_dim(dim: usize) -> Option<usize> {
    (dim.is_power_of_two()).then(|| dim.trailing_zeros() as usize)
}

/// An `N`-qubit density matrix (`N >= 1`): Hermitian, unit trace and positive
/// semidefinite within the module tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates a raw matrix. Nothing is repaired: any violation is an error.
    pub fn from_matrix(mat: ComplexMatrix) -> Result<Self> {
        let qubits = match qubits_for_dim(mat.dim()) {
            Some(q) if q >= 1 => q,
            _ => {
                return Err(Error::InvalidState(format!(
                    "dimension {} is not 2^N with N >= 1",
                    mat.dim()
                )))
            }
        };
        mat.ensure_finite()?;
        mat.ensure_hermitian()?;
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {:.3e}{:+.3e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let min_eig = hermitian_eig(&mat)?.eigenvalues[0];
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(DensityMatrix { qubits, mat })
    }

    /// Wraps a matrix produced internally by a trace-preserving construction.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        let qubits = qubits_for_dim(mat.dim()).expect("trusted state has power-of-two dimension");
        debug_assert!(mat.hermitian_asymmetry() <= HERMITIAN_TOL);
        DensityMatrix { qubits, mat }
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        assert!(qubits >= 1, "states need at least one qubit");
        let d = 1usize << qubits;
        Self::from_trusted(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    /// Computational basis state `|index><index|`.
    pub fn basis(qubits: usize, index: usize) -> Self {
        assert!(qubits >= 1, "states need at least one qubit");
        let d = 1usize << qubits;
        assert!(index < d, "basis index out of range");
        let mut m = ComplexMatrix::zeros(d);
        m[(index, index)] = c(1.0, 0.0);
        Self::from_trusted(m)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }
}

/// `|psi><psi|` from an amplitude vector.
///
/// Vectors whose squared norm is within [`AMPLITUDE_NORM_TOL`] of one are
/// renormalized; anything further off is rejected.
pub fn density_from_pure(amplitudes: &[ComplexScalar]) -> Result<DensityMatrix> {
    let n = amplitudes.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidAmplitudes(format!(
            "length {n} is not a power of two >= 2"
        )));
    }
    if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::InvalidAmplitudes("non-finite amplitude".into()));
    }
    let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > AMPLITUDE_NORM_TOL {
        return Err(Error::InvalidAmplitudes(format!(
            "squared norm {norm_sqr} deviates from 1 by more than {AMPLITUDE_NORM_TOL:e}"
        )));
    }
    let scale = 1.0 / norm_sqr.sqrt();
    let psi: Vec<ComplexScalar> = amplitudes.iter().map(|a| a * scale).collect();
    Ok(DensityMatrix::from_trusted(ComplexMatrix::outer(&psi)))
}

/// Pauli `Z`.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
}

/// `(I/2) (x) rho`, an `(N+1)`-qubit state that is block diagonal with
/// `rho/2` in both blocks.
pub fn embed_theta(rho: &DensityMatrix) -> DensityMatrix {
    let half_identity = ComplexMatrix::identity(2).scale_real(0.5);
    DensityMatrix::from_trusted(kron(&half_identity, rho.matrix()))
}

fn ensure_same_qubits(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.qubits() != b.qubits() {
        return Err(Error::QubitMismatch {
            left: a.qubits(),
            right: b.qubits(),
        });
    }
    Ok(())
}

/// Traceless Hermitian operator on `N+1` qubits whose spectrum comes in
/// `+/-` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedOperator {
    base_qubits: usize,
    mat: ComplexMatrix,
}

impl PairedOperator {
    pub fn base_qubits(&self) -> usize {
        self.base_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Ascending eigenvalues.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.mat)?.eigenvalues)
    }

    /// Nonnegative pair magnitudes, one per `+/-` pair, ascending.
    pub fn pair_magnitudes(&self) -> Result<Vec<f64>> {
        let spec = self.spectrum()?;
        let half = spec.len() / 2;
        Ok((0..half)
            .rev()
            .map(|k| 0.5 * (spec[spec.len() - 1 - k] - spec[k]))
            .collect())
    }
}

/// `max_k |lambda_k + lambda_{n-1-k}|` over an ascending spectrum; zero for a
/// perfectly `+/-` paired multiset.
pub fn pairing_mismatch(ascending: &[f64]) -> f64 {
    let n = ascending.len();
    (0..n)
        .map(|k| (ascending[k] + ascending[n - 1 - k]).abs())
        .fold(0.0, f64::max)
}

/// `Omega/2 = diag((rho - rho')/2, (rho' - rho)/2) = Z (x) (rho - rho')/2`.
pub fn omega_half(rho: &DensityMatrix, rho2: &DensityMatrix) -> Result<PairedOperator> {
    ensure_same_qubits(rho, rho2)?;
    let diff = (rho.matrix() - rho2.matrix()).scale_real(0.5);
    Ok(PairedOperator {
        base_qubits: rho.qubits(),
        mat: kron(&pauli_z(), &diff),
    })
}

/// SWAP between two `n`-qubit registers: `S|x>|y> = |y>|x>`.
pub fn swap_operator(n: usize) -> ComplexMatrix {
    assert!(n >= 1, "swap needs at least one qubit per side");
    let d = 1usize << n;
    let mut s = ComplexMatrix::zeros(d * d);
    for x in 0..d {
        for y in 0..d {
            s[(y * d + x, x * d + y)] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// Exact trace distance `1/2 sum_j |lambda_j(rho - rho')|`.
pub fn oracle_trace_distance(rho: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    ensure_same_qubits(rho, rho2)?;
    let diff = (rho.matrix() - rho2.matrix()).hermitian_part();
    Ok((0.5 * trace_norm_abs_sum(&diff)?).clamp(0.0, 1.0))
}
