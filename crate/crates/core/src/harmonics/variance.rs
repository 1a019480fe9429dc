use std::f64::consts::PI;

use serde::Serialize;

use super::{aggregates_from_pairs, zonal_coeffs};
use crate::error::{Error, Result};
use crate::lattice::PairCountTable;
use crate::spatial::AnnulusSpec;

/// Truncated spectral form of the annulus number variance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceSeries {
    pub m_max: usize,
    pub value: f64,
    pub last_term: f64,
    /// M times the mean term size over the last tenth of the range, a rough
    /// size for the neglected tail.
    pub tail_estimate: f64,
}

/// V = (1/4π) Σ_{m=1}^{M} h(m)² Σ_j |W_j(m)|² for degree aggregates
/// `aggregates[m]` (index 0 is ignored).
pub fn variance_series_from_aggregates(aggregates: &[f64], spec: &AnnulusSpec) -> Result<VarianceSeries> {
    let m_max = aggregates.len().saturating_sub(1);
    if m_max < 1 {
        return Err(Error::domain("variance series needs M >= 1"));
    }
    let h = zonal_coeffs(spec, m_max).coeffs;
    let terms: Vec<f64> = (1..=m_max).map(|m| h[m] * h[m] * aggregates[m].max(0.0) / (4.0 * PI)).collect();
    let value = terms.iter().sum();
    let last_term = *terms.last().unwrap();
    let window = (m_max / 10).max(1);
    let tail_mean = terms[m_max - window..].iter().sum::<f64>() / window as f64;
    Ok(VarianceSeries { m_max, value, last_term, tail_estimate: m_max as f64 * tail_mean })
}

/// Variance series for a lattice set from its inner-product histogram.
pub fn variance_series(table: &PairCountTable, spec: &AnnulusSpec, m_max: usize) -> Result<VarianceSeries> {
    if table.is_empty() {
        return Err(Error::domain("empty lattice set"));
    }
    if m_max < 1 {
        return Err(Error::domain("variance series needs M >= 1"));
    }
    variance_series_from_aggregates(&aggregates_from_pairs(table, m_max), spec)
}
