//! Covering radius by convex hull, checked against the mesh estimator.
//!
//! cargo run --example covering

use sphere_lattice::lattice::enumerate;
use sphere_lattice::spatial::{
    binomial_sample, covering_lower_bound, covering_radius, covering_radius_mesh, UnitPointSet,
};

fn main() -> sphere_lattice::Result<()> {
    println!("{:>8} {:>6} {:>9} {:>9} {:>9} {:>9}", "n", "N", "M", "2/sqrt(N)", "M·N^1/4", "random");
    for n in [3u64, 101, 1009, 10009, 100_003, 1_000_003] {
        let pts = UnitPointSet::from_lattice(&enumerate(n));
        let m = covering_radius(&pts)?;
        let random = covering_radius(&binomial_sample(pts.len(), n))?;
        let big_n = pts.len() as f64;
        println!(
            "{n:>8} {big_n:>6} {m:>9.5} {:>9.5} {:>9.4} {random:>9.5}",
            covering_lower_bound(pts.len()),
            m * big_n.powf(0.25)
        );
    }

    let pts = UnitPointSet::from_lattice(&enumerate(1009));
    let exact = covering_radius(&pts)?;
    let mesh = covering_radius_mesh(&pts, 1e-3)?;
    println!("\nn=1009: hull {exact:.6}, mesh(1e-3) {mesh:.6}");
    Ok(())
}
