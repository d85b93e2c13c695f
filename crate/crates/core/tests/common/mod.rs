#![allow(dead_code)]

use rand::Rng;
use rand_distr::StandardNormal;
use tracedist::{density_from_pure, ComplexMatrix, ComplexScalar, DensityMatrix};

pub fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<ComplexScalar> {
    (0..dim)
        .map(|_| ComplexScalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-random pure state vector.
pub fn random_ket<R: Rng>(rng: &mut R, dim: usize) -> Vec<ComplexScalar> {
    let v = gaussian_vector(rng, dim);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_pure<R: Rng>(rng: &mut R, qubits: usize) -> DensityMatrix {
    density_from_pure(&random_ket(rng, 1 << qubits)).unwrap()
}

/// Hilbert-Schmidt random mixed state `G G^dagger / Tr`.
pub fn random_mixed<R: Rng>(rng: &mut R, qubits: usize) -> DensityMatrix {
    let d = 1 << qubits;
    let g = ComplexMatrix::from_row_major(gaussian_vector(rng, d * d)).unwrap();
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    DensityMatrix::from_matrix(w.scale_real(1.0 / tr).hermitian_part()).unwrap()
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_row_major(gaussian_vector(rng, dim * dim)).unwrap();
    (&g + &g.adjoint()).scale_real(0.5)
}

pub fn to_nalgebra(m: &ComplexMatrix) -> nalgebra::DMatrix<ComplexScalar> {
    nalgebra::DMatrix::from_fn(m.dim(), m.dim(), |i, j| m[(i, j)])
}

/// Eigenvalues from nalgebra, ascending.
pub fn reference_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(to_nalgebra(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Smallest eigenvalue, used for positivity checks.
pub fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    reference_eigenvalues(&m.hermitian_part())[0]
}
