use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{UnitPointSet, Vec3};

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point on S² from z = 2u - 1 and azimuth 2πv.
pub fn uniform_point<R: Rng>(rng: &mut R) -> Vec3 {
    let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
    let phi = std::f64::consts::TAU * rng.gen::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

pub(crate) const SAMPLE_CHUNK: usize = 4096;

/// `count` independent uniform points, reproducible from `seed`.
pub fn binomial_sample(count: usize, seed: u64) -> UnitPointSet {
    let points: Vec<Vec3> = (0..count.div_ceil(SAMPLE_CHUNK))
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream_rng(seed, c as u64);
            let len = SAMPLE_CHUNK.min(count - c * SAMPLE_CHUNK);
            (0..len).map(move |_| uniform_point(&mut rng))
        })
        .collect();
    UnitPointSet::new(points).expect("sampled points are unit vectors")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_centered() {
        let a = binomial_sample(100_000, 7);
        let b = binomial_sample(100_000, 7);
        assert_eq!(a, b);
        assert_ne!(a, binomial_sample(100_000, 8));
        let n = a.len() as f64;
        for k in 0..3 {
            let mean = a.points.iter().map(|p| p[k]).sum::<f64>() / n;
            assert!(mean.abs() < 5.0 / n.sqrt(), "axis {k}: {mean}");
        }
        assert_eq!(binomial_sample(1, 3).len(), 1);
    }
}
