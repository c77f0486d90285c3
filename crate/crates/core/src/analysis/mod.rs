//! Numerics: zeta, Euler products, residues, main terms.

pub mod dd;
pub mod zeta;

pub use zeta::{log_zeta, zeta, zeta_minus_one, zeta_std};
pub mod euler;

pub use euler::{evaluate_Df, evaluate_U, DirichletSeries, EulerOptions, UEvaluator};
pub mod residue;

pub use residue::{
    main_term, main_term_model, main_term_model_with, predicted_main_term_structure, MainTermModel,
    MainTermTerm, PredictedStructure, ResidueOptions,
};
pub mod gap;

pub use gap::{first_zero, gap_check_at, gap_check_example31, GapCheck, ZeroOfZeta};
