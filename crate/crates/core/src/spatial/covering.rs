use std::collections::HashMap;

use rayon::prelude::*;

use super::{dist2, normalize, PointGrid, UnitPointSet, Vec3};
use crate::error::{Error, Result};

/// Orientation predicate over a fixed point array.
trait Coords: Sync {
    fn len(&self) -> usize;
    /// Sign of det[b - a, c - a, d - a]; `None` for d means the origin.
    fn orient(&self, a: usize, b: usize, c: usize, d: Option<usize>) -> i8;
    fn collinear(&self, a: usize, b: usize, c: usize) -> bool;
    fn unit(&self, i: usize) -> Vec3;
    /// Unit outward normal of the face (a, b, c).
    fn normal(&self, a: usize, b: usize, c: usize) -> Vec3;
}

struct Exact<'a>(&'a [[i64; 3]]);

fn sub_i(a: &[i64; 3], b: &[i64; 3]) -> [i128; 3] {
    [(a[0] - b[0]) as i128, (a[1] - b[1]) as i128, (a[2] - b[2]) as i128]
}

fn cross_i(u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

impl Coords for Exact<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn orient(&self, a: usize, b: usize, c: usize, d: Option<usize>) -> i8 {
        let p = self.0;
        let n = cross_i(sub_i(&p[b], &p[a]), sub_i(&p[c], &p[a]));
        let w = match d {
            Some(d) => sub_i(&p[d], &p[a]),
            None => sub_i(&[0, 0, 0], &p[a]),
        };
        (n[0] * w[0] + n[1] * w[1] + n[2] * w[2]).signum() as i8
    }

    fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        let p = self.0;
        cross_i(sub_i(&p[b], &p[a]), sub_i(&p[c], &p[a])) == [0, 0, 0]
    }

    fn unit(&self, i: usize) -> Vec3 {
        normalize(self.0[i].map(|v| v as f64))
    }

    fn normal(&self, a: usize, b: usize, c: usize) -> Vec3 {
        let p = self.0;
        normalize(cross_i(sub_i(&p[b], &p[a]), sub_i(&p[c], &p[a])).map(|v| v as f64))
    }
}

struct Float<'a>(&'a [Vec3]);

fn sub_f(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross_f(u: Vec3, v: Vec3) -> Vec3 {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

fn norm_f(u: &Vec3) -> f64 {
    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
}

/// Relative threshold below which a floating determinant counts as zero.
const FLOAT_EPS: f64 = 1e-13;

impl Coords for Float<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn orient(&self, a: usize, b: usize, c: usize, d: Option<usize>) -> i8 {
        let p = self.0;
        let u = sub_f(&p[b], &p[a]);
        let v = sub_f(&p[c], &p[a]);
        let w = match d {
            Some(d) => sub_f(&p[d], &p[a]),
            None => sub_f(&[0.0; 3], &p[a]),
        };
        let n = cross_f(u, v);
        let det = n[0] * w[0] + n[1] * w[1] + n[2] * w[2];
        let scale = norm_f(&u) * norm_f(&v) * norm_f(&w);
        if det.abs() <= FLOAT_EPS * scale {
            0
        } else if det > 0.0 {
            1
        } else {
            -1
        }
    }

    fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        let p = self.0;
        let u = sub_f(&p[b], &p[a]);
        let v = sub_f(&p[c], &p[a]);
        norm_f(&cross_f(u, v)) <= FLOAT_EPS * norm_f(&u) * norm_f(&v)
    }

    fn unit(&self, i: usize) -> Vec3 {
        self.0[i]
    }

    fn normal(&self, a: usize, b: usize, c: usize) -> Vec3 {
        let p = self.0;
        normalize(cross_f(sub_f(&p[b], &p[a]), sub_f(&p[c], &p[a])))
    }
}

/// Triangulated convex hull with outward-oriented faces.
fn convex_hull<C: Coords>(pts: &C) -> Result<Vec<[usize; 3]>> {
    let degenerate = || Error::domain("points lie in a closed hemisphere; the covering radius is at least sqrt(2)");
    let n = pts.len();
    if n < 4 {
        return Err(degenerate());
    }
    let i2 = (2..n).find(|&i| !pts.collinear(0, 1, i)).ok_or_else(degenerate)?;
    let i3 = (2..n).find(|&i| i != i2 && pts.orient(0, 1, i2, Some(i)) != 0).ok_or_else(degenerate)?;
    let seed = [0, 1, i2, i3];

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    let add = |f: [usize; 3], faces: &mut Vec<[usize; 3]>, alive: &mut Vec<bool>, edges: &mut HashMap<_, _>| {
        let id = faces.len();
        for k in 0..3 {
            edges.insert((f[k], f[(k + 1) % 3]), id);
        }
        faces.push(f);
        alive.push(true);
    };
    for skip in 0..4 {
        let mut f: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| seed[k]).collect();
        if pts.orient(f[0], f[1], f[2], Some(seed[skip])) > 0 {
            f.swap(1, 2);
        }
        add([f[0], f[1], f[2]], &mut faces, &mut alive, &mut edges);
    }

    let mut active: Vec<usize> = (0..4).collect();
    for p in 0..n {
        if seed.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = active
            .par_iter()
            .copied()
            .filter(|&f| {
                let [a, b, c] = faces[f];
                pts.orient(a, b, c, Some(p)) > 0
            })
            .collect();
        if visible.is_empty() {
            continue;
        }
        for &f in &visible {
            alive[f] = false;
        }
        let mut horizon = Vec::new();
        for &f in &visible {
            let face = faces[f];
            for k in 0..3 {
                let (u, v) = (face[k], face[(k + 1) % 3]);
                let twin = edges[&(v, u)];
                if alive[twin] {
                    horizon.push((u, v));
                }
            }
        }
        for &f in &visible {
            let face = faces[f];
            for k in 0..3 {
                let e = (face[k], face[(k + 1) % 3]);
                if edges.get(&e) == Some(&f) {
                    edges.remove(&e);
                }
            }
        }
        let first_new = faces.len();
        for (u, v) in horizon {
            add([u, v, p], &mut faces, &mut alive, &mut edges);
        }
        active.retain(|&f| alive[f]);
        active.extend(first_new..faces.len());
    }

    let hull: Vec<[usize; 3]> = active.into_iter().map(|f| faces[f]).collect();
    if hull.iter().any(|&[a, b, c]| pts.orient(a, b, c, None) >= 0) {
        return Err(degenerate());
    }
    Ok(hull)
}

fn radius_from_hull<C: Coords>(pts: &C) -> Result<f64> {
    let hull = convex_hull(pts)?;
    Ok(hull
        .par_iter()
        .map(|&[a, b, c]| {
            let nrm = pts.normal(a, b, c);
            [a, b, c].iter().map(|&v| dist2(&nrm, &pts.unit(v))).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
        .sqrt())
}

/// Covering radius: the largest distance from a point of S² to the set.
///
/// The farthest points are the outward normals of the convex-hull facets.
/// Projected lattice sets use exact integer orientation tests.
pub fn covering_radius(pts: &UnitPointSet) -> Result<f64> {
    match pts.lattice_coords() {
        Some((_, xs)) => radius_from_hull(&Exact(xs)),
        None => radius_from_hull(&Float(&pts.points)),
    }
}

/// Area bound: N caps of radius M cover S², so N M² / 4 ≥ 1.
pub fn covering_lower_bound(count: usize) -> f64 {
    2.0 / (count as f64).sqrt()
}

fn fibonacci_mesh(m: usize) -> Vec<Vec3> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / m as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Independent covering-radius estimate from a two-level mesh.
///
/// A coarse spiral mesh locates every region that could hold the farthest
/// point; each is then searched on a tangent grid of spacing `resolution`.
/// The result is a lower bound within about `resolution` of the truth.
pub fn covering_radius_mesh(pts: &UnitPointSet, resolution: f64) -> Result<f64> {
    if pts.is_empty() {
        return Err(Error::domain("empty point set"));
    }
    if !(resolution > 0.0) {
        return Err(Error::domain("mesh resolution must be positive"));
    }
    let grid = PointGrid::new(&pts.points);
    let dist = |q: &Vec3| grid.nearest(q).unwrap().1.sqrt();

    let coarse_n = (100 * pts.len()).max(100_000);
    let mesh = fibonacci_mesh(coarse_n);
    // Generous bound on the distance from any point of S² to the spiral mesh.
    let reach = 2.0 * (4.0 * std::f64::consts::PI / coarse_n as f64).sqrt();
    let values: Vec<f64> = mesh.par_iter().map(dist).collect();
    let best = values.iter().copied().fold(0.0, f64::max);
    let candidates: Vec<usize> = (0..coarse_n).filter(|&i| values[i] >= best - reach).collect();

    let steps = (reach / resolution).ceil() as i64;
    let refined = candidates
        .par_iter()
        .map(|&i| {
            let c = mesh[i];
            let helper = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let e1 = normalize(cross_f(c, helper));
            let e2 = cross_f(c, e1);
            let mut local = values[i];
            for a in -steps..=steps {
                for b in -steps..=steps {
                    let (u, v) = (a as f64 * resolution, b as f64 * resolution);
                    if u * u + v * v > reach * reach * 1.21 {
                        continue;
                    }
                    let q = normalize([
                        c[0] + u * e1[0] + v * e2[0],
                        c[1] + u * e1[1] + v * e2[1],
                        c[2] + u * e1[2] + v * e2[2],
                    ]);
                    local = local.max(dist(&q));
                }
            }
            local
        })
        .reduce(|| 0.0, f64::max);
    Ok(refined.max(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate;
    use crate::spatial::binomial_sample;
    use crate::spatial::fixtures::*;

    fn octa_value() -> f64 {
        (2.0 - 2.0 / 3f64.sqrt()).sqrt()
    }

    #[test]
    fn platonic_examples() {
        assert!((covering_radius(&octahedron()).unwrap() - octa_value()).abs() < 1e-12);
        assert!((covering_radius(&cube()).unwrap() - octa_value()).abs() < 1e-12);
        let float_oct = UnitPointSet::new(octahedron().points).unwrap();
        assert!((covering_radius(&float_oct).unwrap() - octa_value()).abs() < 1e-12);
        let float_cube = UnitPointSet::new(cube().points).unwrap();
        assert!((covering_radius(&float_cube).unwrap() - octa_value()).abs() < 1e-12);
    }

    #[test]
    fn hemisphere_rejected() {
        let upper = UnitPointSet::new(
            binomial_sample(200, 1).points.into_iter().map(|p| [p[0], p[1], p[2].abs()]).collect(),
        )
        .unwrap();
        assert!(matches!(covering_radius(&upper), Err(Error::Domain(_))));
        assert!(covering_radius(&antipodal_pair()).is_err());
    }

    #[test]
    fn lattice_sets_with_coplanar_faces() {
        for n in [2u64, 9, 25, 50, 101, 325] {
            let pts = UnitPointSet::from_lattice(&enumerate(n));
            let exact = covering_radius(&pts).unwrap();
            assert!(exact >= covering_lower_bound(pts.len()), "n={n}");
            let mesh = covering_radius_mesh(&pts, 1e-3).unwrap();
            assert!(mesh <= exact + 1e-12 && exact - mesh < 2e-3, "n={n}: {exact} vs {mesh}");
        }
    }

    #[test]
    fn random_sets_agree_with_mesh() {
        for seed in 0..3 {
            let pts = binomial_sample(400, seed);
            let exact = covering_radius(&pts).unwrap();
            let mesh = covering_radius_mesh(&pts, 1e-3).unwrap();
            assert!(mesh <= exact + 1e-12 && exact - mesh < 2e-3, "{exact} vs {mesh}");
        }
    }
}
