use rayon::prelude::*;
use serde::Serialize;

use super::{dist2, UnitPointSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RipleyReport {
    pub r: f64,
    pub count: usize,
    pub k: u64,
    /// N(N-1) r² / 4, the expected count for independent uniform points.
    pub baseline: f64,
}

/// Threshold b = r² n on the integer scale |x - y|², shared with
/// [`crate::lattice::m_count`] so both paths compare identical doubles.
pub fn ripley_threshold(r: f64, n: u64) -> f64 {
    r * r * n as f64
}

pub fn ripley_baseline(count: usize, r: f64) -> f64 {
    let n = count as f64;
    n * (n - 1.0) * r * r / 4.0
}

/// #{i ≠ j: |P_i - P_j| < r}.
///
/// For projected lattice sets the comparison is 2(n - x·y) < r² n with the
/// left side an exact integer.
pub fn ripley_k(pts: &UnitPointSet, r: f64) -> Result<RipleyReport> {
    if !(r > 0.0 && r <= 2.0) {
        return Err(Error::domain(format!("Ripley radius must lie in (0, 2]; got {r}")));
    }
    let k = match pts.lattice_coords() {
        Some((n, xs)) => {
            let b = ripley_threshold(r, n);
            let n = n as i64;
            xs.par_iter()
                .enumerate()
                .map(|(i, x)| {
                    xs.iter()
                        .enumerate()
                        .filter(|&(j, y)| {
                            let t = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
                            j != i && ((2 * (n - t)) as f64) < b
                        })
                        .count() as u64
                })
                .sum()
        }
        None => {
            let r2 = r * r;
            let p = &pts.points;
            p.par_iter()
                .enumerate()
                .map(|(i, x)| {
                    p.iter().enumerate().filter(|&(j, y)| j != i && dist2(x, y) < r2).count() as u64
                })
                .sum()
        }
    };
    Ok(RipleyReport { r, count: pts.len(), k, baseline: ripley_baseline(pts.len(), r) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpacingReport {
    pub n: Option<u64>,
    pub count: usize,
    /// N d_j² / 4 in point order.
    pub rescaled_values: Vec<f64>,
    pub ks_distance_to_exp: f64,
    pub mean: f64,
}

/// Disjoint caps of radius d_j / 2 give Σ d_j² ≤ 16, so the mean of
/// N d_j² / 4 never exceeds this.
pub const SPACING_MEAN_BOUND: f64 = 4.0;

/// Nearest-neighbour spacings rescaled to mean about one.
pub fn nn_spacings(pts: &UnitPointSet) -> Result<SpacingReport> {
    if pts.len() < 2 {
        return Err(Error::domain("nearest-neighbour spacings need at least two points"));
    }
    let count = pts.len();
    let scale = count as f64 / 4.0;
    let rescaled_values: Vec<f64> = match pts.lattice_coords() {
        Some((n, xs)) => xs
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let best_t = xs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, y)| x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
                    .max()
                    .unwrap();
                scale * (2 * (n as i64 - best_t)) as f64 / n as f64
            })
            .collect(),
        None => {
            let p = &pts.points;
            p.par_iter()
                .enumerate()
                .map(|(i, x)| {
                    let d2 = p
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, y)| dist2(x, y))
                        .fold(f64::INFINITY, f64::min);
                    scale * d2
                })
                .collect()
        }
    };
    let mean = rescaled_values.iter().sum::<f64>() / count as f64;
    let ks_distance_to_exp = ks_distance_exp(&rescaled_values);
    Ok(SpacingReport { n: pts.source_n, count, rescaled_values, ks_distance_to_exp, mean })
}

/// Kolmogorov-Smirnov distance between the empirical law of `values` and
/// the exponential law 1 - e^{-x}.
pub fn ks_distance_exp(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = -(-x.max(0.0)).exp_m1();
            ((i + 1) as f64 / m - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate, m_count};
    use crate::spatial::binomial_sample;
    use crate::spatial::fixtures::*;

    #[test]
    fn ripley_examples() {
        assert_eq!(ripley_k(&octahedron(), 1.5).unwrap().k, 24);
        assert_eq!(ripley_k(&octahedron(), 1.0).unwrap().k, 0);
        let e5 = UnitPointSet::from_lattice(&enumerate(5));
        let r = (3.0f64 / 5.0).sqrt();
        let rep = ripley_k(&e5, r).unwrap();
        assert_eq!(rep.k, 72);
        assert_eq!(rep.k, m_count(5, 0.0, ripley_threshold(r, 5)));
        assert!((rep.baseline - 24.0 * 23.0 * r * r / 4.0).abs() < 1e-9);
    }

    #[test]
    fn float_and_integer_paths_agree_off_shells() {
        let set = enumerate(101);
        let exact = UnitPointSet::from_lattice(&set);
        let float = UnitPointSet::new(exact.points.clone()).unwrap();
        for r in [0.1, 0.33, 0.8, 1.9] {
            assert_eq!(ripley_k(&exact, r).unwrap().k, ripley_k(&float, r).unwrap().k);
        }
    }

    #[test]
    fn spacing_examples() {
        let oct = nn_spacings(&octahedron()).unwrap();
        assert!(oct.rescaled_values.iter().all(|&v| (v - 3.0).abs() < 1e-12));
        let pair = nn_spacings(&antipodal_pair()).unwrap();
        assert!(pair.rescaled_values.iter().all(|&v| (v - 2.0).abs() < 1e-12));
        assert!(oct.mean <= SPACING_MEAN_BOUND);
    }

    #[test]
    fn ks_against_binomial_spacings() {
        let s = nn_spacings(&binomial_sample(2000, 11)).unwrap();
        // Poisson-like spacings are close to exponential, mean near one.
        assert!(s.ks_distance_to_exp < 0.06, "{}", s.ks_distance_to_exp);
        assert!((s.mean - 1.0).abs() < 0.1, "{}", s.mean);
    }

    #[test]
    fn ks_simple() {
        // a point mass at the median of Exp(1)
        let ln2 = std::f64::consts::LN_2;
        assert!((ks_distance_exp(&[ln2; 10]) - 0.5).abs() < 1e-12);
    }
}
