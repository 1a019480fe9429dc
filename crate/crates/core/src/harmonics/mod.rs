//! Legendre and spherical-harmonic tools: zonal coefficients of annuli,
//! Weyl sums over point sets, the spectral number variance and discrepancy
//! bounds.

mod legendre;
mod variance;
mod weyl;
mod ylm;

pub use legendre::{legendre_p, zonal_coeffs, ZonalCoefficients};
pub use variance::{variance_series, variance_series_from_aggregates, VarianceSeries};
pub use weyl::{
    aggregates_from_pairs, aggregates_from_points, cap_discrepancy_estimate, discrepancy_bound, weyl_sums,
    weyl_sums_upto, WeylSumTable, MIN_CENTER_SAMPLES,
};
pub use ylm::{real_harmonics, MAX_DEGREE};
