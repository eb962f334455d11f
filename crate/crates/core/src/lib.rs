pub mod bargmann;
pub mod deepzero;
pub mod error;
pub mod exact;
pub mod fock;
pub mod independence;
pub mod operators;
pub mod quadrature;

pub use deepzero::{
    assemble_constraints, functional_equation_check, min_singular_value,
    reduction_identity_residual, residue_classes, ConstraintSystem, DeepZeroProblem,
    FunctionalEquationReport,
};
pub use error::{Error, Result};
pub use fock::{FockVector, TailGuard, TailReport, DEFAULT_TRUNCATION};
pub use independence::{
    certify_independence, classify_known_case, gaussian_window, gram_matrix, roots_config,
    CaseClass, Certificate, PointConfig, Verdict,
};
pub use operators::{
    apply_weyl, apply_weyl_guarded, commutation_residual, project, project_via_filter,
    rotation_apply, weyl_matrix, OperatorMatrix, RootOfUnity,
};
