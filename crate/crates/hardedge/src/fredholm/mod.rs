//! Nyström discretization, determinant functionals and matrix identity checks.

mod grid;
mod operator;
mod oracles;
mod prefix;
#[cfg(test)]
mod tests;

pub use grid::{build_grid, default_grid, QuadratureGrid};
pub use operator::{
    compose, discretize, discretize_real, functionals, log_det, log_det_identity_plus, nuclear_norm, refined_determinant,
    CMatrix, DeterminantResult, DiscretizedOperator, Functionals,
};
pub use oracles::{
    det_eigen_residual, helton_howe_residual, jacobi_dodgson_residual, mercer_trace_residual, oracle_suite, OracleSuite,
};
pub use prefix::{prefix_log_dets, prefix_log_dets_split};
