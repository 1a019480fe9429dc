use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use super::sample::SAMPLE_CHUNK;
use super::{dist2, stream_rng, uniform_point, AnnulusSpec, UnitPointSet, Vec3};
use crate::error::{Error, Result};

/// #{P: rho1 ≤ |P - center| ≤ rho2} by a linear scan.
pub fn count_in(pts: &UnitPointSet, center: &Vec3, spec: &AnnulusSpec) -> u64 {
    pts.points.iter().filter(|p| spec.contains_dist2(dist2(p, center))).count() as u64
}

/// Latitude bands of points sorted by azimuth, for repeated cap queries.
///
/// Candidates are pruned by polar-angle and azimuth windows with a small
/// slack, then tested with the same predicate as [`count_in`], so both give
/// identical counts.
#[derive(Debug, Clone)]
pub struct CapIndex {
    points: Vec<Vec3>,
    band_width: f64,
    /// Per band: (azimuth in [0, 2π), point index), sorted by azimuth.
    bands: Vec<Vec<(f64, u32)>>,
}

const SLACK: f64 = 1e-9;

fn polar(p: &Vec3) -> (f64, f64) {
    let theta = p[2].clamp(-1.0, 1.0).acos();
    let phi = p[1].atan2(p[0]).rem_euclid(TAU);
    (theta, phi)
}

impl CapIndex {
    pub fn new(pts: &UnitPointSet) -> Self {
        let nb = ((pts.len() as f64).sqrt().ceil() as usize).max(1);
        let band_width = PI / nb as f64;
        let mut bands = vec![Vec::new(); nb];
        for (i, p) in pts.points.iter().enumerate() {
            let (theta, phi) = polar(p);
            let b = ((theta / band_width) as usize).min(nb - 1);
            bands[b].push((phi, i as u32));
        }
        for b in &mut bands {
            b.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        }
        CapIndex { points: pts.points.clone(), band_width, bands }
    }

    pub fn count(&self, center: &Vec3, spec: &AnnulusSpec) -> u64 {
        let alpha = 2.0 * (spec.rho2 / 2.0).min(1.0).asin() + SLACK;
        let (tc, pc) = polar(center);
        let nb = self.bands.len();
        let lo = ((tc - alpha).max(0.0) / self.band_width) as usize;
        let hi = (((tc + alpha) / self.band_width) as usize).min(nb - 1);
        let half = if tc - alpha <= 0.0 || tc + alpha >= PI {
            None
        } else {
            let s = alpha.sin() / tc.sin();
            (s < 1.0).then(|| s.asin() + SLACK)
        };
        let test = |&(_, i): &(f64, u32)| spec.contains_dist2(dist2(&self.points[i as usize], center));
        let mut total = 0u64;
        for band in &self.bands[lo.min(nb - 1)..=hi] {
            total += match half {
                None => band.iter().filter(|e| test(e)).count() as u64,
                Some(h) => {
                    let from = pc - h;
                    let to = pc + h;
                    let mut c = count_range(band, from.max(0.0), to.min(TAU), &test);
                    if from < 0.0 {
                        c += count_range(band, from + TAU, TAU, &test);
                    }
                    if to > TAU {
                        c += count_range(band, 0.0, to - TAU, &test);
                    }
                    c
                }
            };
        }
        total
    }
}

fn count_range<F: Fn(&(f64, u32)) -> bool>(band: &[(f64, u32)], from: f64, to: f64, test: &F) -> u64 {
    let a = band.partition_point(|e| e.0 < from);
    let b = band.partition_point(|e| e.0 <= to);
    if a >= b {
        return 0;
    }
    band[a..b].iter().filter(|e| test(e)).count() as u64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceReport {
    pub n: Option<u64>,
    pub count: usize,
    pub annulus: AnnulusSpec,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub mean_se: f64,
    /// Large-sample standard error of `variance`.
    pub variance_se: f64,
    /// N σ, the exact expectation of the count.
    pub expected_mean: f64,
    /// N σ, the conjectured size of the variance.
    pub conjectured_variance: f64,
}

/// Stream offset keeping sampled centers independent of [`super::binomial_sample`].
const CENTER_STREAM: u64 = 1 << 32;

pub const MIN_VARIANCE_SAMPLES: usize = 100;

/// Sample mean and variance of annulus counts over uniform random centers.
pub fn number_variance(pts: &UnitPointSet, spec: &AnnulusSpec, samples: usize, seed: u64) -> Result<VarianceReport> {
    if samples < MIN_VARIANCE_SAMPLES {
        return Err(Error::domain(format!(
            "number variance needs at least {MIN_VARIANCE_SAMPLES} samples; got {samples}"
        )));
    }
    let index = CapIndex::new(pts);
    let counts: Vec<u64> = (0..samples.div_ceil(SAMPLE_CHUNK))
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream_rng(seed, CENTER_STREAM + c as u64);
            let len = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
            let index = &index;
            (0..len).map(move |_| index.count(&uniform_point(&mut rng), spec))
        })
        .collect();
    let m = samples as u128;
    let s1: u128 = counts.iter().map(|&c| c as u128).sum();
    let s2: u128 = counts.iter().map(|&c| (c as u128) * (c as u128)).sum();
    let mean = s1 as f64 / samples as f64;
    let variance = (m * s2 - s1 * s1) as f64 / (m * (m - 1)) as f64;
    let mf = samples as f64;
    let mu4 = counts.iter().map(|&c| (c as f64 - mean).powi(4)).sum::<f64>() / mf;
    let var_of_var = ((mu4 - variance * variance * (mf - 3.0) / (mf - 1.0)) / mf).max(0.0);
    let sigma = spec.area();
    let nsigma = pts.len() as f64 * sigma;
    Ok(VarianceReport {
        n: pts.source_n,
        count: pts.len(),
        annulus: *spec,
        samples,
        seed,
        mean,
        variance,
        mean_se: (variance / mf).sqrt(),
        variance_se: var_of_var.sqrt(),
        expected_mean: nsigma,
        conjectured_variance: nsigma,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxMoment {
    pub cells: usize,
    /// Cells per latitude band, north to south.
    pub band_cells: Vec<usize>,
    pub counts: Vec<u64>,
    pub sum_counts: u64,
    pub sum_squares: u64,
    /// Upper bound on the chord diameter of any cell.
    pub max_cell_diameter: f64,
}

/// Zonal partition into `cells` regions of equal area.
///
/// Band boundaries sit at cumulative area fractions, and each band is cut
/// into equal azimuth sectors, so every cell has area 4π / cells.
struct ZonalPartition {
    cells: usize,
    cumulative: Vec<usize>,
}

impl ZonalPartition {
    fn new(cells: usize) -> Self {
        let bands = (((PI * cells as f64).sqrt() / 2.0).round() as usize).max(1);
        let mut cumulative = vec![0usize];
        for j in 1..=bands {
            let theta = j as f64 * PI / bands as f64;
            let c = if j == bands { cells } else { (cells as f64 * (1.0 - theta.cos()) / 2.0).round() as usize };
            if c > *cumulative.last().unwrap() {
                cumulative.push(c);
            }
        }
        ZonalPartition { cells, cumulative }
    }

    fn band_cells(&self) -> Vec<usize> {
        self.cumulative.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Chord diameter bound per cell: moving along the wider parallel and
    /// then along a meridian reaches any point of the cell.
    fn max_diameter(&self) -> f64 {
        let k_total = self.cells as f64;
        self.cumulative
            .windows(2)
            .map(|w| {
                let z_hi = 1.0 - 2.0 * w[0] as f64 / k_total;
                let z_lo = 1.0 - 2.0 * w[1] as f64 / k_total;
                let (t_hi, t_lo) = (z_hi.clamp(-1.0, 1.0).acos(), z_lo.clamp(-1.0, 1.0).acos());
                let widest = if t_hi <= PI / 2.0 && PI / 2.0 <= t_lo { 1.0 } else { t_hi.sin().max(t_lo.sin()) };
                let k = (w[1] - w[0]) as f64;
                let half_sector = (PI / k).min(PI / 2.0);
                let meridian = 2.0 * ((t_lo - t_hi) / 2.0).sin();
                (2.0 * widest * half_sector.sin() + meridian).min(2.0)
            })
            .fold(0.0, f64::max)
    }

    fn cell_of(&self, p: &Vec3) -> usize {
        let u = (1.0 - p[2].clamp(-1.0, 1.0)) / 2.0 * self.cells as f64;
        let band = (self.cumulative.partition_point(|&c| (c as f64) <= u)).clamp(1, self.cumulative.len() - 1) - 1;
        let k = self.cumulative[band + 1] - self.cumulative[band];
        let phi = p[1].atan2(p[0]).rem_euclid(TAU);
        self.cumulative[band] + ((phi / TAU * k as f64) as usize).min(k - 1)
    }
}

/// Per-cell counts over an equal-area partition and their second moment.
pub fn box_moment(pts: &UnitPointSet, cells: usize) -> Result<BoxMoment> {
    if cells < 2 {
        return Err(Error::domain(format!("box moment needs at least 2 cells; got {cells}")));
    }
    let part = ZonalPartition::new(cells);
    let mut counts = vec![0u64; cells];
    for p in &pts.points {
        counts[part.cell_of(p)] += 1;
    }
    let sum_counts = counts.iter().sum();
    let sum_squares = counts.iter().map(|c| c * c).sum();
    Ok(BoxMoment {
        cells,
        band_cells: part.band_cells(),
        counts,
        sum_counts,
        sum_squares,
        max_cell_diameter: part.max_diameter(),
    })
}
