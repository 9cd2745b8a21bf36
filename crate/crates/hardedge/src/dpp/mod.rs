//! The hard-edge Bessel point process: spectra of the restricted kernel,
//! exact sampling, additive and multiplicative functionals, characteristic
//! functions through Fredholm determinants and the CLT distance.

mod clt;
mod functionals;
mod sampler;
mod spectrum;

pub use clt::{char_fn, clt_report, ks_scan, normal_cdf, CdfPoint, CfEvaluator, CltMethod, CltOptions, CltReport};
pub use functionals::{
    additive_stats, batch_means, expectation_exact, multiplicative_check, AdditiveStats, Ecdf, MeanEstimate, MultiplicativeReport,
};
pub use sampler::{sample, sample_from, Configuration, SampleBatch};
pub use spectrum::{restricted_spectrum, restricted_spectrum_on, spectrum_grid, RestrictedSpectrum};
