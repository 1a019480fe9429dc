use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::legendre::legendre_all;
use super::ylm::{real_harmonics, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::lattice::PairCountTable;
use crate::spatial::{dot, stream_rng, uniform_point, AnnulusSpec, CapIndex, UnitPointSet, Vec3};

/// Sums of the degree-ν orthonormal real harmonics over a point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylSumTable {
    pub n: Option<u64>,
    pub degree: usize,
    /// One value per basis harmonic, in the order of [`super::real_harmonics`].
    pub values: Vec<f64>,
    /// Normalized values use √(4π)·φ (orthonormal for the probability
    /// measure) and divide by N.
    pub normalized: bool,
}

impl WeylSumTable {
    /// Σ_j |W_j|², independent of the choice of basis.
    pub fn aggregate(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

const POINT_CHUNK: usize = 256;

fn check_degree(nu: usize) -> Result<()> {
    if nu > MAX_DEGREE {
        return Err(Error::domain(format!("degree {nu} exceeds the supported maximum {MAX_DEGREE}")));
    }
    Ok(())
}

/// Harmonic sums for all degrees 0..=lmax, flattened like [`real_harmonics`].
fn harmonic_sums(pts: &[Vec3], lmax: usize) -> Vec<f64> {
    let size = (lmax + 1) * (lmax + 1);
    let parts: Vec<Vec<f64>> = pts
        .par_chunks(POINT_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; size];
            for p in chunk {
                for (a, v) in acc.iter_mut().zip(real_harmonics(lmax, p)) {
                    *a += v;
                }
            }
            acc
        })
        .collect();
    parts.into_iter().fold(vec![0.0; size], |mut a, b| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    })
}

/// Weyl sums of degree `nu` over a nonempty point set.
pub fn weyl_sums(pts: &UnitPointSet, nu: usize, normalized: bool) -> Result<WeylSumTable> {
    if pts.is_empty() {
        return Err(Error::domain("Weyl sums need a nonempty point set (is n of the form 4^a(8b+7)?)"));
    }
    if nu < 1 {
        return Err(Error::domain("Weyl-sum degree must be at least 1"));
    }
    check_degree(nu)?;
    let all = harmonic_sums(&pts.points, nu);
    let scale = if normalized { (4.0 * PI).sqrt() / pts.len() as f64 } else { 1.0 };
    let values = all[nu * nu..].iter().map(|v| v * scale).collect();
    Ok(WeylSumTable { n: pts.source_n, degree: nu, values, normalized })
}

/// Tables for every degree 1..=lmax.
pub fn weyl_sums_upto(pts: &UnitPointSet, lmax: usize, normalized: bool) -> Result<Vec<WeylSumTable>> {
    if pts.is_empty() {
        return Err(Error::domain("Weyl sums need a nonempty point set"));
    }
    check_degree(lmax)?;
    let all = harmonic_sums(&pts.points, lmax);
    let scale = if normalized { (4.0 * PI).sqrt() / pts.len() as f64 } else { 1.0 };
    Ok((1..=lmax)
        .map(|nu| WeylSumTable {
            n: pts.source_n,
            degree: nu,
            values: all[nu * nu..(nu + 1) * (nu + 1)].iter().map(|v| v * scale).collect(),
            normalized,
        })
        .collect())
}

/// Unnormalized aggregates Σ_j |W_j|² = (2m+1)/(4π) Σ_{x,y} P_m(x̂·ŷ) for
/// m = 0..=lmax, read off the inner-product histogram.
pub fn aggregates_from_pairs(table: &PairCountTable, lmax: usize) -> Vec<f64> {
    let n = table.n as f64;
    let mut sums = vec![0.0; lmax + 1];
    for (&t, &c) in &table.entries {
        let p = legendre_all(lmax, (t as f64 / n).clamp(-1.0, 1.0));
        for (s, v) in sums.iter_mut().zip(p) {
            *s += c as f64 * v;
        }
    }
    sums.iter().enumerate().map(|(m, s)| (2 * m + 1) as f64 / (4.0 * PI) * s).collect()
}

/// Same aggregates for a general point set by a pair loop.
pub fn aggregates_from_points(pts: &UnitPointSet, lmax: usize) -> Vec<f64> {
    let p = &pts.points;
    let parts: Vec<Vec<f64>> = (0..p.len())
        .collect::<Vec<_>>()
        .par_chunks(POINT_CHUNK / 8)
        .map(|rows| {
            let mut acc = vec![0.0; lmax + 1];
            for &i in rows {
                for y in p {
                    let leg = legendre_all(lmax, dot(&p[i], y).clamp(-1.0, 1.0));
                    acc.iter_mut().zip(leg).for_each(|(a, v)| *a += v);
                }
            }
            acc
        })
        .collect();
    let sums = parts.into_iter().fold(vec![0.0; lmax + 1], |mut a, b| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    });
    sums.iter().enumerate().map(|(m, s)| (2 * m + 1) as f64 / (4.0 * PI) * s).collect()
}

/// Erdős-Turán shape 1/(M+1) + Σ_{ν ≤ M} (1/ν) Σ_j |W_norm(ν, j)|, without
/// the unspecified absolute constant.
pub fn discrepancy_bound(pts: &UnitPointSet, m_max: usize) -> Result<f64> {
    if m_max < 1 {
        return Err(Error::domain("discrepancy bound needs M >= 1"));
    }
    let tables = weyl_sums_upto(pts, m_max, true)?;
    Ok(1.0 / (m_max + 1) as f64
        + tables
            .iter()
            .map(|t| t.values.iter().map(|v| v.abs()).sum::<f64>() / t.degree as f64)
            .sum::<f64>())
}

pub const MIN_CENTER_SAMPLES: usize = 100;

/// max |count/N - σ(cap)| over caps centered at `center_samples` random
/// points and at every point of the set, with radii from `radii`.
///
/// Every evaluated cap is a genuine cap, so the result is a lower bound on
/// the cap discrepancy.
pub fn cap_discrepancy_estimate(pts: &UnitPointSet, center_samples: usize, radii: &[f64], seed: u64) -> Result<f64> {
    if center_samples < MIN_CENTER_SAMPLES {
        return Err(Error::domain(format!(
            "cap discrepancy needs at least {MIN_CENTER_SAMPLES} sampled centers; got {center_samples}"
        )));
    }
    if pts.is_empty() {
        return Err(Error::domain("empty point set"));
    }
    let specs: Vec<AnnulusSpec> = radii.iter().map(|&r| AnnulusSpec::cap(r)).collect::<Result<_>>()?;
    let index = CapIndex::new(pts);
    let mut rng = stream_rng(seed, 0);
    let mut centers: Vec<Vec3> = (0..center_samples).map(|_| uniform_point(&mut rng)).collect();
    centers.extend_from_slice(&pts.points);
    let n = pts.len() as f64;
    Ok(centers
        .par_iter()
        .map(|c| {
            specs
                .iter()
                .map(|s| (index.count(c, s) as f64 / n - s.area()).abs())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate, pair_table};
    use crate::spatial::binomial_sample;

    fn rotate(p: &Vec3, (a, b, c): (f64, f64, f64)) -> Vec3 {
        let rz = |p: Vec3, t: f64| [t.cos() * p[0] - t.sin() * p[1], t.sin() * p[0] + t.cos() * p[1], p[2]];
        let ry = |p: Vec3, t: f64| [t.cos() * p[0] + t.sin() * p[2], p[1], -t.sin() * p[0] + t.cos() * p[2]];
        rz(ry(rz(*p, a), b), c)
    }

    #[test]
    fn odd_degrees_vanish() {
        for n in [5u64, 6, 101, 1009] {
            let pts = UnitPointSet::from_lattice(&enumerate(n));
            for nu in [1, 3, 7, 21] {
                let w = weyl_sums(&pts, nu, false).unwrap();
                assert!(w.values.iter().all(|v| v.abs() < 1e-10 * pts.len() as f64), "n={n} nu={nu}");
            }
        }
    }

    #[test]
    fn octahedron_degree_two() {
        let oct = UnitPointSet::from_lattice(&enumerate(1));
        let agg = weyl_sums(&oct, 2, false).unwrap().aggregate();
        // 6 self pairs at P2(1)=1, 6 antipodal at P2(-1)=1, 24 orthogonal at P2(0)=-1/2
        let by_hand = 5.0 / (4.0 * PI) * (6.0 + 6.0 - 12.0);
        assert!((agg - by_hand).abs() < 1e-12);
        let agg4 = weyl_sums(&oct, 4, false).unwrap().aggregate();
        let p4_0 = 3.0 / 8.0;
        let by_hand4 = 9.0 / (4.0 * PI) * (12.0 + 24.0 * p4_0);
        assert!((agg4 - by_hand4).abs() < 1e-11);
    }

    #[test]
    fn aggregates_are_basis_independent() {
        for (pts, tag) in [
            (UnitPointSet::from_lattice(&enumerate(101)), "n=101"),
            (binomial_sample(500, 4), "binomial"),
        ] {
            let turned = UnitPointSet::new(pts.points.iter().map(|p| rotate(p, (0.3, 1.1, -2.0))).collect()).unwrap();
            let direct = aggregates_from_points(&pts, 12);
            for nu in 1..=12 {
                let a = weyl_sums(&pts, nu, false).unwrap().aggregate();
                let b = weyl_sums(&turned, nu, false).unwrap().aggregate();
                // Vanishing aggregates sit at a round-off floor of order 1e-16 N².
                let n2 = (pts.len() * pts.len()) as f64;
                let tol = 1e-9 * a.abs() + 1e-12 * n2;
                assert!((a - b).abs() <= tol, "{tag} nu={nu}: {a} vs {b}");
                assert!((a - direct[nu]).abs() <= tol, "{tag} nu={nu}: {a} vs {}", direct[nu]);
            }
        }
    }

    #[test]
    fn pair_table_route() {
        let set = enumerate(1009);
        let pts = UnitPointSet::from_lattice(&set);
        let a = aggregates_from_pairs(&pair_table(1009), 10);
        let b = aggregates_from_points(&pts, 10);
        let n2 = (pts.len() * pts.len()) as f64;
        for m in 0..=10 {
            assert!((a[m] - b[m]).abs() < 1e-9 * n2, "m={m}");
        }
        assert!((a[0] - n2 / (4.0 * PI)).abs() < 1e-9 * n2);
    }

    #[test]
    fn discrepancy_shapes() {
        let pts = UnitPointSet::from_lattice(&enumerate(101));
        let b = discrepancy_bound(&pts, 20).unwrap();
        assert!(b.is_finite() && b > 1.0 / 21.0);
        let oct = UnitPointSet::from_lattice(&enumerate(1));
        let est = cap_discrepancy_estimate(&oct, 200, &[0.01, 0.5, 1.0], 1).unwrap();
        assert!(est >= 1.0 / 6.0 - 0.01f64.powi(2) / 4.0);
        assert!(cap_discrepancy_estimate(&oct, 99, &[0.5], 1).is_err());
    }
}
