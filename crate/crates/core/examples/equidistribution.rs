//! Weyl sums by degree and the discrepancy bounds built from them.
//!
//! cargo run --example equidistribution

use sphere_lattice::harmonics::{cap_discrepancy_estimate, discrepancy_bound, weyl_sums};
use sphere_lattice::lattice::enumerate;
use sphere_lattice::spatial::{binomial_sample, UnitPointSet};

fn main() -> sphere_lattice::Result<()> {
    let ns = [101u64, 1009, 10009, 100_003];
    print!("{:>6}", "degree");
    for n in ns {
        print!(" {:>11}", format!("n={n}"));
    }
    println!(" {:>11}", "random");
    let sets: Vec<UnitPointSet> = ns.iter().map(|&n| UnitPointSet::from_lattice(&enumerate(n))).collect();
    let random = binomial_sample(sets[3].len(), 3);
    for nu in 1..=12 {
        print!("{nu:>6}");
        for pts in &sets {
            print!(" {:>11.3e}", weyl_sums(pts, nu, true)?.aggregate());
        }
        println!(" {:>11.3e}", weyl_sums(&random, nu, true)?.aggregate());
    }
    println!("(odd degrees vanish by antipodal symmetry, degree 2 by the octahedral group)");

    println!("\nErdős-Turán shape (M=30) and sampled cap discrepancy:");
    let radii: Vec<f64> = (1..=64).map(|k| 2.0 * (k as f64 / 64.0).sqrt()).collect();
    for (n, pts) in ns.iter().zip(&sets) {
        let bound = discrepancy_bound(pts, 30)?;
        let est = cap_discrepancy_estimate(pts, 500, &radii, 1)?;
        println!("  n={n:>6}  bound {bound:.4}  sampled {est:.4}");
    }
    Ok(())
}
