//! Pointwise and matrix evaluation of Bessel, Wiener–Hopf, Hankel and
//! difference kernels, plus trace-norm bound evaluators.

mod bounds;
mod decomposition;
mod eval;
mod matrix;
mod profile;

pub use bounds::{corridor_trace_bound, envelope_constants, envelope_tail, piece_bounds, separable_trace_bound, PieceBounds};
pub use decomposition::{difference_decomposition, difference_direct, Decomposition};
pub use eval::{kernel_eval, KernelKind, PieceLabel, DIRECT_LIMIT};
pub use matrix::{
    bessel_matrix, bessel_matrix_with_rule, difference_matrix, hankel_matrix, wiener_hopf_matrix, BesselFactor, TRule,
};
pub use profile::Profile;
