//! Spectral densities, the Hermite picture of `S_m` and the covariance
//! kernels built on it.
mod calculus;
mod covariance;
mod density;
mod fourier;
mod hermite;

pub use calculus::{
    differentiability_check, process_integral, process_integral_grid, DifferenceReport,
    DifferenceRow, IntegralOptions, ProcessIntegral, DIFFERENCE_STEPS,
};
pub use covariance::{
    covariance_quadrature, covariance_series, read_density_table, CovarianceGrid, KernelMethod,
    PsdReport,
};
pub use density::{fbm_coefficient, DensityKind, Envelope, SpectralDensity};
pub use fourier::{apply_sm, indicator_coeff, HermiteTransform, KernelOptions};
pub use hermite::{embed_x, hermite_all, hermite_xi, HermiteBasis, DEFAULT_MAX_ORDER};
