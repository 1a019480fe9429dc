//! Geometric statistics of finite point sets on the unit sphere.
//!
//! Distances are chord distances throughout, so a cap of radius r has
//! normalized area r²/4.

mod caps;
mod covering;
mod energy;
mod grid;
mod pairs;
mod sample;

pub use caps::{box_moment, count_in, number_variance, BoxMoment, CapIndex, VarianceReport};
pub use covering::{covering_radius, covering_radius_mesh, covering_lower_bound};
pub use energy::{continuum_energy, riesz_energy, truncated_energy, EnergyReport};
pub use grid::PointGrid;
pub use pairs::{
    ks_distance_exp, nn_spacings, ripley_baseline, ripley_k, ripley_threshold, RipleyReport,
    SpacingReport, SPACING_MEAN_BOUND,
};
pub use sample::{binomial_sample, stream_rng, uniform_point};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeSet;

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn dist2(a: &Vec3, b: &Vec3) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    dot(&d, &d)
}

pub(crate) fn normalize(a: Vec3) -> Vec3 {
    let r = dot(&a, &a).sqrt();
    [a[0] / r, a[1] / r, a[2] / r]
}

const NORM_TOLERANCE: f64 = 1e-12;

/// A finite point set on S², optionally remembering the lattice it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPointSet {
    pub source_n: Option<u64>,
    pub points: Vec<Vec3>,
    lattice: Option<Vec<[i64; 3]>>,
}

impl UnitPointSet {
    /// Wrap unit vectors; fails if any norm is off by more than 1e-12.
    pub fn new(points: Vec<Vec3>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| (dot(p, p).sqrt() - 1.0).abs() > NORM_TOLERANCE) {
            return Err(Error::domain(format!("point {i} is not a unit vector")));
        }
        Ok(UnitPointSet { source_n: None, points, lattice: None })
    }

    /// The projection x / √n of E(n).
    pub fn from_lattice(set: &LatticeSet) -> Self {
        UnitPointSet {
            source_n: Some(set.n),
            points: set.points.iter().map(|p| p.to_unit(set.n)).collect(),
            lattice: Some(set.points.iter().map(|p| p.coords()).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integer coordinates when the set is a projected lattice set.
    pub fn lattice_coords(&self) -> Option<(u64, &[[i64; 3]])> {
        Some((self.source_n?, self.lattice.as_deref()?))
    }

    /// The image under x ↦ -x.
    pub fn antipodal(&self) -> Self {
        UnitPointSet {
            source_n: self.source_n,
            points: self.points.iter().map(|p| [-p[0], -p[1], -p[2]]).collect(),
            lattice: self
                .lattice
                .as_ref()
                .map(|l| l.iter().map(|p| [-p[0], -p[1], -p[2]]).collect()),
        }
    }
}

/// Chord-distance annulus {w: rho1 ≤ |w - z| ≤ rho2}; rho1 = 0 is a cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusSpec {
    pub rho1: f64,
    pub rho2: f64,
}

impl AnnulusSpec {
    pub fn new(rho1: f64, rho2: f64) -> Result<Self> {
        if !(0.0 <= rho1 && rho1 < rho2 && rho2 <= 2.0) {
            return Err(Error::domain(format!(
                "annulus radii must satisfy 0 <= rho1 < rho2 <= 2; got ({rho1}, {rho2})"
            )));
        }
        Ok(AnnulusSpec { rho1, rho2 })
    }

    pub fn cap(r: f64) -> Result<Self> {
        Self::new(0.0, r)
    }

    /// Cap with normalized area `sigma`.
    pub fn cap_with_area(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma <= 1.0) {
            return Err(Error::domain(format!("cap area must lie in (0, 1]; got {sigma}")));
        }
        Self::cap(2.0 * sigma.sqrt())
    }

    /// Annulus given by geodesic (angular) radii in radians.
    pub fn from_geodesic(theta1: f64, theta2: f64) -> Result<Self> {
        Self::new(geodesic_to_chord(theta1), geodesic_to_chord(theta2))
    }

    /// Normalized area (rho2² - rho1²) / 4.
    pub fn area(&self) -> f64 {
        (self.rho2 * self.rho2 - self.rho1 * self.rho1) / 4.0
    }

    /// Range [t1, t2] of w·z over the annulus.
    pub fn t_range(&self) -> (f64, f64) {
        (1.0 - self.rho2 * self.rho2 / 2.0, 1.0 - self.rho1 * self.rho1 / 2.0)
    }

    /// Membership from a squared chord distance; closed on both sides.
    pub fn contains_dist2(&self, d2: f64) -> bool {
        (self.rho1 == 0.0 || self.rho1 * self.rho1 <= d2) && (self.rho2 >= 2.0 || d2 <= self.rho2 * self.rho2)
    }
}

/// Chord length 2 sin(θ/2) of a geodesic arc, θ clamped to [0, π].
pub fn geodesic_to_chord(theta: f64) -> f64 {
    2.0 * (theta.clamp(0.0, std::f64::consts::PI) / 2.0).sin()
}

/// Parallel sum whose result does not depend on the worker count: chunk sums
/// are combined in chunk order.
pub(crate) fn chunked_sum<F>(len: usize, chunk: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    use rayon::prelude::*;
    let n_chunks = len.div_ceil(chunk);
    let parts: Vec<f64> = (0..n_chunks)
        .into_par_iter()
        .map(|c| (c * chunk..((c + 1) * chunk).min(len)).map(&f).sum())
        .collect();
    parts.into_iter().sum()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::lattice::enumerate;

    pub fn octahedron() -> UnitPointSet {
        UnitPointSet::from_lattice(&enumerate(1))
    }

    pub fn cube() -> UnitPointSet {
        UnitPointSet::from_lattice(&enumerate(3))
    }

    pub fn antipodal_pair() -> UnitPointSet {
        UnitPointSet::new(vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_validation_and_area() {
        assert!(AnnulusSpec::new(0.5, 0.5).is_err());
        assert!(AnnulusSpec::new(0.0, 2.1).is_err());
        let full = AnnulusSpec::cap(2.0).unwrap();
        assert_eq!(full.area(), 1.0);
        let c = AnnulusSpec::cap_with_area(0.3).unwrap();
        assert!((c.area() - 0.3).abs() < 1e-15);
        let hemi = AnnulusSpec::from_geodesic(0.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((hemi.area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_check() {
        assert!(UnitPointSet::new(vec![[1.0, 0.0, 1e-5]]).is_err());
        assert!(UnitPointSet::new(vec![[1.0, 0.0, 0.0]]).is_ok());
    }
}
