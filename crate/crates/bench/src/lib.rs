//! Shared inputs for the benchmarks in `benches/`.

use tracedist::{density_from_pure, ComplexMatrix, ComplexScalar, DensityMatrix};

/// Deterministic Hermitian test matrix of dimension `dim`.
pub fn hermitian(dim: usize) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(dim, |i, j| {
        let x = (i * 7 + j * 13) as f64;
        ComplexScalar::new((0.3 * x).sin(), (0.7 * x).cos())
    });
    (&m + &m.adjoint()).scale_real(0.5)
}

/// `|0>` and `cos(a)|0> + sin(a)|1>` on one qubit.
pub fn qubit_pair(a: f64) -> (DensityMatrix, DensityMatrix) {
    let other = density_from_pure(&[ComplexScalar::new(a.cos(), 0.0), ComplexScalar::new(a.sin(), 0.0)])
        .expect("normalized");
    (DensityMatrix::basis(1, 0), other)
}
