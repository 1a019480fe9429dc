use std::f64::consts::PI;

use crate::spatial::Vec3;

/// Largest degree the harmonic evaluators accept.
pub const MAX_DEGREE: usize = 2000;

/// Real spherical harmonics of degrees 0..=lmax at a unit vector,
/// orthonormal for the unnormalized area measure on S² (total mass 4π).
///
/// Degree l occupies indices l²..(l+1)²: first m = 0, then the cos/sin pair
/// for each m = 1..=l.
pub fn real_harmonics(lmax: usize, p: &Vec3) -> Vec<f64> {
    let mut out = vec![0.0; (lmax + 1) * (lmax + 1)];
    let z = p[2].clamp(-1.0, 1.0);
    let s = (p[0] * p[0] + p[1] * p[1]).sqrt();
    let phi = p[1].atan2(p[0]);

    // Normalized associated Legendre values for fixed m, l = m..=lmax.
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for m in 0..=lmax {
        if m > 0 {
            pmm *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
        }
        let (cm, sm) = if m == 0 { (1.0, 0.0) } else { ((m as f64 * phi).cos(), (m as f64 * phi).sin()) };
        let mut emit = |l: usize, v: f64| {
            let base = l * l;
            if m == 0 {
                out[base] = v;
            } else {
                out[base + 2 * m - 1] = std::f64::consts::SQRT_2 * v * cm;
                out[base + 2 * m] = std::f64::consts::SQRT_2 * v * sm;
            }
        };
        emit(m, pmm);
        if m == lmax {
            break;
        }
        let mut prev2 = pmm;
        let mut prev1 = ((2 * m + 3) as f64).sqrt() * z * pmm;
        emit(m + 1, prev1);
        for l in m + 2..=lmax {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
            let cur = a * (z * prev1 - b * prev2);
            emit(l, cur);
            prev2 = prev1;
            prev1 = cur;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::legendre_p;
    use crate::spatial::{binomial_sample, dot};

    #[test]
    fn addition_theorem() {
        let pts = binomial_sample(40, 17).points;
        for l in [0usize, 1, 2, 5, 13, 40] {
            for pair in pts.chunks(2) {
                let (x, y) = (&pair[0], &pair[1]);
                let hx = real_harmonics(l, x);
                let hy = real_harmonics(l, y);
                let s: f64 = (l * l..(l + 1) * (l + 1)).map(|i| hx[i] * hy[i]).sum();
                let want = (2 * l + 1) as f64 / (4.0 * PI) * legendre_p(l, dot(x, y).clamp(-1.0, 1.0)).unwrap();
                assert!((s - want).abs() < 1e-11 * (2 * l + 1) as f64, "l={l}: {s} vs {want}");
            }
        }
    }

    #[test]
    fn low_degree_closed_forms() {
        let p = [0.36, 0.48, 0.8];
        let h = real_harmonics(1, &p);
        let c0 = (1.0 / (4.0 * PI)).sqrt();
        let c1 = (3.0 / (4.0 * PI)).sqrt();
        assert!((h[0] - c0).abs() < 1e-15);
        assert!((h[1] - c1 * 0.8).abs() < 1e-15);
        // cos/sin pair is ∓c1 (x, y) up to the Condon-Shortley sign
        assert!((h[2].abs() - c1 * 0.36).abs() < 1e-15);
        assert!((h[3].abs() - c1 * 0.48).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_by_quadrature() {
        // Midpoint rule in z, uniform grid in azimuth.
        let (nz, nphi, l) = (2000usize, 64usize, 6usize);
        let size = (l + 1) * (l + 1);
        let mut gram = vec![0.0; size * size];
        for a in 0..nz {
            let z = -1.0 + (a as f64 + 0.5) * 2.0 / nz as f64;
            let r = (1.0 - z * z).sqrt();
            for b in 0..nphi {
                let phi = b as f64 * 2.0 * PI / nphi as f64;
                let h = real_harmonics(l, &[r * phi.cos(), r * phi.sin(), z]);
                let w = 2.0 / nz as f64 * 2.0 * PI / nphi as f64;
                for i in 0..size {
                    for j in 0..size {
                        gram[i * size + j] += w * h[i] * h[j];
                    }
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i * size + j] - want).abs() < 1e-4, "({i},{j})");
            }
        }
    }
}
