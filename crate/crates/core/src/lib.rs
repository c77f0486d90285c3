//! Zeta-factorizations, main terms and error-term scans for summatory
//! functions of "fake μ" multiplicative functions.
//!
//! A fake μ is a multiplicative `f` with `f(p^j) = ε_j ∈ {−1, 0, 1}` for every
//! prime `p`. The crate factors `Σ f(n) n^{-s}` into powers of `ζ(js)` times
//! a well-behaved Euler product, derives the main term of `Σ_{n≤x} f(n)` from
//! the poles of that product, and sieves the summatory function to compare.

pub mod analysis;
pub mod error;
pub mod factor;
pub mod primes;
pub mod scalar;
pub mod scan;
pub mod sequence;
pub mod sieve;

pub use analysis::{
    evaluate_Df, evaluate_U, first_zero, gap_check_example31, main_term, main_term_model,
    predicted_main_term_structure, zeta, EulerOptions, GapCheck, MainTermModel, MainTermTerm,
    PredictedStructure, ResidueOptions, ZeroOfZeta,
};
pub use error::{Error, Result};
pub use factor::{
    coefficients_of_factorization, factorize, kfull_exponents, run_algorithm1,
    verify_factorization, LocalFactor, TailBound, VerificationReport,
};
pub use scalar::{Coefficient, Real};
pub use scan::{
    export_csv, extrema, scan, sign_changes, Envelope, Extrema, Grid, ScanOptions, ScanRecord,
};
pub use sequence::{normalize, Classification, EpsilonSequence};
pub use sieve::{sieve_summatory, Sieve, SieveConfig};

/// Factorization with arbitrary-size coefficients.
pub type Factorization = factor::ZetaFactorization<num_bigint::BigInt>;
/// Factorization with machine-word coefficients; enough for every preset.
pub type Factorization64 = factor::ZetaFactorization<i64>;
/// Local factor with arbitrary-size coefficients.
pub type BigLocalFactor = factor::LocalFactor<num_bigint::BigInt>;
/// Complex numbers at the working precision of the numeric layer.
pub type Complex64 = num_complex::Complex<f64>;
