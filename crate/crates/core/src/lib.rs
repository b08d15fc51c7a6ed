//! Explicit Hermite-type orthonormal eigenbasis of the centered discrete
//! Fourier transform, for every dimension `N >= 3`, and the fractional DFT
//! synthesised from it.
//!
//! The pipeline is
//! [`SeedFamily`] (sine-product seeds) → [`build_eigenspaces`] (W/X/Y/Z bases)
//! → [`gram_schmidt`] per eigenspace → [`assemble`] into an [`EigenBasis`]
//! → [`FrftOperator`].

pub mod cli;
pub mod dft;
pub mod dim;
pub mod eigenbasis;
pub mod error;
pub mod frft;
pub mod hermite;
pub mod mp;
pub mod seeds;
pub mod sine_product;
pub mod verify;

pub use dft::{
    centered_dft, dft_matrix, length_sum_bound_check, parity_of, signal_length, support,
    zero_crossings, Parity, DEFAULT_ZERO_TOL,
};
pub use dim::{DftDimension, GridVector, Residue};
pub use eigenbasis::{
    assemble, build_eigenspaces, expected_dimensions, gram_schmidt, EigenBasis, Eigenspace,
    EigenspaceBasis,
};
pub use error::{Error, Result};
pub use frft::{max_entry_distance, FrftOperator};
pub use hermite::{
    convergence_report, crossing_check, psi, u0_asymptotic, zero_share, ConvergenceReport,
    HermiteEvaluator,
};
pub use seeds::{difference_identity_residual, kong_vector, product_form_u, SeedFamily};
pub use sine_product::{qbinomial_identity_residual, SineProductTable};
pub use verify::{run_verification, CheckResult, VerifyReport};
