use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spatial::AnnulusSpec;

/// P_m(t) by the three-term recurrence.
pub fn legendre_p(m: usize, t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("Legendre argument must lie in [-1, 1]; got {t}")));
    }
    Ok(*legendre_all(m, t).last().unwrap())
}

/// [P_0(t), ..., P_m(t)]; no range check.
pub(crate) fn legendre_all(m: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(1.0);
    if m >= 1 {
        out.push(t);
    }
    for k in 2..=m {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * t * out[k - 1] - (kf - 1.0) * out[k - 2]) / kf;
        out.push(next);
    }
    out
}

/// Coefficients h(m) of the annulus indicator k(t) = 1[t1 ≤ t ≤ t2] in the
/// zonal expansion k(w·z) = Σ (2m+1)/(4π) h(m) P_m(w·z).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZonalCoefficients {
    pub spec: AnnulusSpec,
    pub coeffs: Vec<f64>,
}

impl ZonalCoefficients {
    /// Partial sum Σ_{m ≤ M} (2m+1)/(4π) h(m)², which increases to 4πσ.
    pub fn parseval(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, h)| (2 * m + 1) as f64 / (4.0 * PI) * h * h)
            .sum()
    }
}

/// h(m) = 2π ∫_{t1}^{t2} P_m(t) dt, using ∫P_m = (P_{m+1} - P_{m-1}) / (2m+1).
pub fn zonal_coeffs(spec: &AnnulusSpec, m_max: usize) -> ZonalCoefficients {
    let (t1, t2) = spec.t_range();
    let p1 = legendre_all(m_max + 1, t1.max(-1.0));
    let p2 = legendre_all(m_max + 1, t2.min(1.0));
    let mut coeffs = vec![2.0 * PI * (t2 - t1)];
    for m in 1..=m_max {
        let at = |p: &[f64]| p[m + 1] - p[m - 1];
        coeffs.push(2.0 * PI * (at(&p2) - at(&p1)) / (2 * m + 1) as f64);
    }
    ZonalCoefficients { spec: *spec, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: i128, k: i128) -> i128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// P_m(3/10) from the explicit coefficient formula, in exact integers.
    fn exact_at_three_tenths(m: i128) -> f64 {
        let mut num: i128 = 0;
        for k in 0..=m / 2 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            num += sign * binom(m, k) * binom(2 * m - 2 * k, m) * 3i128.pow((m - 2 * k) as u32) * 10i128.pow((2 * k) as u32);
        }
        num as f64 / (2f64.powi(m as i32) * 10f64.powi(m as i32))
    }

    #[test]
    fn values() {
        assert_eq!(legendre_p(0, 0.3).unwrap(), 1.0);
        assert_eq!(legendre_p(1, 0.5).unwrap(), 0.5);
        for m in 0..=12 {
            let got = legendre_p(m, 0.3).unwrap();
            assert!((got - exact_at_three_tenths(m as i128)).abs() < 1e-12, "m={m}");
        }
        for m in [0, 1, 7, 100, 2000] {
            assert_eq!(legendre_p(m, 1.0).unwrap(), 1.0);
        }
        assert!(legendre_p(3, 1.0000001).is_err());
    }

    #[test]
    fn zonal_examples() {
        let full = zonal_coeffs(&AnnulusSpec::cap(2.0).unwrap(), 30);
        assert!((full.coeffs[0] - 4.0 * PI).abs() < 1e-14);
        assert!(full.coeffs[1..].iter().all(|h| h.abs() < 1e-14));

        let hemi = zonal_coeffs(&AnnulusSpec::cap(2f64.sqrt()).unwrap(), 3);
        assert!((hemi.coeffs[1] - PI).abs() < 1e-12);

        let spec = AnnulusSpec::new(0.4, 1.1).unwrap();
        let z = zonal_coeffs(&spec, 5);
        assert!((z.coeffs[0] - 4.0 * PI * spec.area()).abs() < 1e-14);
    }

    #[test]
    fn zonal_matches_quadrature() {
        let spec = AnnulusSpec::new(0.3, 0.9).unwrap();
        let (t1, t2) = spec.t_range();
        let z = zonal_coeffs(&spec, 12);
        let steps = 100_000;
        let h = (t2 - t1) / steps as f64;
        for m in 0..=12 {
            let q: f64 = (0..steps)
                .map(|k| legendre_p(m, t1 + (k as f64 + 0.5) * h).unwrap())
                .sum::<f64>()
                * h
                * 2.0
                * PI;
            assert!((q - z.coeffs[m]).abs() < 1e-8, "m={m}");
        }
    }

    #[test]
    fn parseval_increases_to_area() {
        for sigma in [0.3, 0.05] {
            let spec = AnnulusSpec::cap_with_area(sigma).unwrap();
            let limit = 4.0 * PI * sigma;
            let mut prev = 0.0;
            for m_max in [0, 5, 50, 500, 4000] {
                let p = zonal_coeffs(&spec, m_max).parseval();
                assert!(p >= prev - 1e-12 && p <= limit + 1e-9, "sigma={sigma} M={m_max}: {p}");
                prev = p;
            }
            assert!((limit - prev) / limit < 0.01);
        }
    }
}
