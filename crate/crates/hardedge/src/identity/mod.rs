//! Both sides of the determinant factorization, the remainder Q_R by two
//! routes, the Wiener–Hopf counterpart and decay-rate scans.

mod lhs;
pub(crate) use remainder::bandwidth;
mod remainder;
mod report;
mod scans;
mod sine;

pub use lhs::{lhs_determinant, lhs_determinant_with};
pub use remainder::{
    extrapolate, q_direct_tail, q_hankel_tail, q_remainder, remainder_with, QMethod, RemainderOptions, RemainderResult,
    TailSeries,
};
pub use report::{bo_residual, bo_residual_with, z_spread, IdentityReport};
pub use scans::{plus_part_sup, rate_scan, trace_decay_scan, trace_window, truncated_trace_norm, ScanResult, ScanRow};
pub use sine::{sine_identity_residual, SineReport};

#[cfg(test)]
mod tests;
