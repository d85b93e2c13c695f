//! Trace distance between quantum states, estimated by simulating a
//! phase-estimation circuit on exact density matrices.
//!
//! ```
//! use tracedist::{estimate_trace_distance, oracle_trace_distance, DensityMatrix, RunConfig, Variant};
//!
//! let a = DensityMatrix::basis(1, 0);
//! let b = DensityMatrix::basis(1, 1);
//! let report = estimate_trace_distance(&a, &b, &RunConfig::with_clock(3), Variant::Reduced).unwrap();
//! assert!((report.d_estimate - 1.0).abs() < 1e-9);
//! assert!((oracle_trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod dme;
pub mod error;
pub mod linalg;
pub mod pipeline;
pub mod qpe;
pub mod states;

pub use dme::{
    copies_needed, lmr_evolve, lmr_step, omega_lmr_step, t_operator, trotter_uab, ControlledChannel,
    GeneratorSource, LmrSchedule, PartialSwapStep, Superoperator,
};
pub use error::{Error, Result};
pub use linalg::{
    expm_hermitian, hermitian_eig, kron, partial_trace, ComplexMatrix, ComplexScalar, HermitianEigen, Keep,
};
pub use pipeline::{
    beta_state, combine, distinguish, distinguish_report, estimate_ell, estimate_trace_distance, first_qpe,
    gamma_state, second_qpe_kappa, swap_test_prob_one, Branch, DistinguishReport, EstimatorKind,
    PipelineReport, RunConfig, UnitaryMode, Variant,
};
pub use qpe::{
    estimate, improved_init_amplitudes, qpe_distribution, qpe_kernel, ClockConfig, ClockInit,
    EstimatorPolicy, QpeOutcome,
};
pub use states::{
    density_from_pure, embed_theta, omega_half, oracle_trace_distance, swap_operator, DensityMatrix,
    PairedOperator,
};
