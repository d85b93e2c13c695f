//! Built-in state pairs for `reproduce`.

use tracedist::{density_from_pure, ComplexScalar, DensityMatrix};

pub fn ket(bit: usize) -> DensityMatrix {
    DensityMatrix::basis(1, bit)
}

/// `sqrt(1 - 0.625^2)|0> + 0.625|1>`; its distance from `|0>` is `0.625`.
/// Written to three figures as `0.781|0> + 0.625|1>`, which is not normalized.
pub fn tilted() -> DensityMatrix {
    let b = 0.625f64;
    density_from_pure(&[
        ComplexScalar::new((1.0 - b * b).sqrt(), 0.0),
        ComplexScalar::new(b, 0.0),
    ])
    .expect("normalized by construction")
}

#[derive(Debug, Clone)]
pub struct Case {
    /// Column label, e.g. `D=0.625`.
    pub label: &'static str,
    pub a: DensityMatrix,
    pub b: DensityMatrix,
}

/// Orthogonal, tilted and identical pairs, in that order.
pub fn reference_cases() -> Vec<Case> {
    vec![
        Case {
            label: "D=1",
            a: ket(0),
            b: ket(1),
        },
        Case {
            label: "D=0.625",
            a: ket(0),
            b: tilted(),
        },
        Case {
            label: "D=0",
            a: ket(0),
            b: ket(0),
        },
    ]
}
