use serde::Serialize;

use super::{chunked_sum, dist2, UnitPointSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReport {
    pub s: f64,
    pub count: usize,
    pub value: f64,
    /// I(s) N², the energy of N points spread like the uniform measure.
    pub baseline: f64,
}

impl EnergyReport {
    pub fn relative_deviation(&self) -> f64 {
        (self.value / self.baseline - 1.0).abs()
    }
}

/// Mean of |x - y|^{-s} over independent uniform x, y on S².
pub fn continuum_energy(s: f64) -> f64 {
    2f64.powf(1.0 - s) / (2.0 - s)
}

const ROW_CHUNK: usize = 32;

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::domain(format!("energy exponent s must lie in (0, 2); got {s}")));
    }
    Ok(())
}

fn first_duplicate(pts: &UnitPointSet) -> Option<(usize, usize)> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts.points[a].partial_cmp(&pts.points[b]).unwrap());
    idx.windows(2)
        .find(|w| pts.points[w[0]] == pts.points[w[1]])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

fn pair_sum<F>(pts: &UnitPointSet, kernel: F) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    if pts.len() < 2 {
        return Err(Error::domain("energy needs at least two points"));
    }
    if let Some((i, j)) = first_duplicate(pts) {
        return Err(Error::DuplicatePoints(i, j));
    }
    let p = &pts.points;
    let half = chunked_sum(p.len(), ROW_CHUNK, |i| {
        p[i + 1..].iter().map(|q| kernel(dist2(&p[i], q))).sum()
    });
    Ok(2.0 * half)
}

/// Σ_{i≠j} |P_i - P_j|^{-s} for 0 < s < 2.
pub fn riesz_energy(pts: &UnitPointSet, s: f64) -> Result<EnergyReport> {
    check_s(s)?;
    let value = pair_sum(pts, |d2| d2.powf(-s / 2.0))?;
    let n = pts.len() as f64;
    Ok(EnergyReport { s, count: pts.len(), value, baseline: continuum_energy(s) * n * n })
}

/// Σ_{i≠j} min(|P_i - P_j|^{-s}, n^{sρ}) for a projected lattice set.
pub fn truncated_energy(pts: &UnitPointSet, s: f64, rho: f64) -> Result<EnergyReport> {
    check_s(s)?;
    if !(rho > 0.0 && rho <= 0.5) {
        return Err(Error::domain(format!("truncation exponent rho must lie in (0, 1/2]; got {rho}")));
    }
    let n = pts
        .source_n
        .ok_or_else(|| Error::domain("truncated energy needs a point set with a source n"))?;
    let cap = (n as f64).powf(s * rho);
    let value = pair_sum(pts, |d2| d2.powf(-s / 2.0).min(cap))?;
    let count = pts.len() as f64;
    Ok(EnergyReport { s, count: pts.len(), value, baseline: continuum_energy(s) * count * count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate;
    use crate::spatial::fixtures::*;

    #[test]
    fn closed_forms() {
        assert_eq!(continuum_energy(1.0), 1.0);
        let e = riesz_energy(&antipodal_pair(), 1.0).unwrap();
        assert!((e.value - 1.0).abs() < 1e-15);
        let oct = riesz_energy(&octahedron(), 1.0).unwrap();
        let want = 6.0 * (4.0 / 2f64.sqrt() + 0.5);
        assert!((oct.value - want).abs() < 1e-12);
        assert!((oct.value - 19.97056).abs() < 1e-5);
        assert_eq!(oct.baseline, 36.0);
    }

    #[test]
    fn continuum_energy_by_quadrature() {
        // mean of |x-y|^{-s} = ∫_{-1}^{1} (2 - 2t)^{-s/2} dt / 2; with 1 - t = v⁴
        // the integrand becomes 2^{-s/2} 4 v^{3 - 2s}, smooth for s ≤ 1.5.
        for s in [0.5, 1.0, 1.5] {
            let m = 200_000;
            let top = 2f64.powf(0.25);
            let h = top / m as f64;
            let q: f64 = (0..m)
                .map(|k| {
                    let v = (k as f64 + 0.5) * h;
                    2f64.powf(-s / 2.0) * 4.0 * v.powf(3.0 - 2.0 * s)
                })
                .sum::<f64>()
                * h
                / 2.0;
            assert!((q - continuum_energy(s)).abs() < 1e-8, "s={s}: {q}");
        }
    }

    #[test]
    fn truncation() {
        let oct = octahedron();
        let full = riesz_energy(&oct, 1.0).unwrap().value;
        let t = truncated_energy(&oct, 1.0, 0.5).unwrap().value;
        assert!((t - full).abs() < 1e-12);
        let big = UnitPointSet::from_lattice(&enumerate(101));
        let t = truncated_energy(&big, 1.0, 0.1).unwrap();
        let cap = 101f64.powf(0.1);
        assert!(t.value <= (t.count * (t.count - 1)) as f64 * cap + 1e-9);
        assert!(t.value <= riesz_energy(&big, 1.0).unwrap().value);
    }

    #[test]
    fn duplicates_rejected() {
        let p = UnitPointSet::new(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(riesz_energy(&p, 1.0), Err(Error::DuplicatePoints(0, 2))));
        assert!(riesz_energy(&octahedron(), 2.0).is_err());
    }
}
