//! Zeta-factorization of the Dirichlet series of a fake μ.

pub mod algorithm;
pub mod factorization;
pub mod kfull;
pub mod local;
pub mod oracle;

pub use algorithm::{
    representation_counts, run_algorithm1, run_algorithm1_capped, AlgorithmOutput, AlgorithmTrace,
    LevelTriple, StepAction, TraceStep, DEFAULT_CAP,
};
pub use factorization::{
    closed_form_exponents, effective_j_max, elimination_path, factorize, factorize_with,
    index_data, residual_series, FactorOptions, IndexData, TailBound, ZetaFactorization,
};
pub use kfull::kfull_exponents;
pub use local::LocalFactor;
pub use oracle::{
    coefficients_of_factorization, verify_factorization, VerificationReport, ORACLE_MAX_N,
};
