//! Riesz energies of projected lattice sets against the continuum value.
//!
//! cargo run --example energy

use sphere_lattice::lattice::enumerate;
use sphere_lattice::spatial::{binomial_sample, riesz_energy, truncated_energy, UnitPointSet};

fn main() -> sphere_lattice::Result<()> {
    println!("{:>7} {:>6} {:>5} {:>14} {:>14} {:>10}", "n", "N", "s", "energy", "I(s)N^2", "rel.dev");
    for n in [101u64, 1009, 10009, 100_003] {
        let pts = UnitPointSet::from_lattice(&enumerate(n));
        for s in [0.5, 1.0, 1.5] {
            let e = riesz_energy(&pts, s)?;
            println!(
                "{n:>7} {:>6} {s:>5} {:>14.2} {:>14.2} {:>10.2e}",
                e.count,
                e.value,
                e.baseline,
                e.relative_deviation()
            );
        }
    }

    let n = 100_003;
    let pts = UnitPointSet::from_lattice(&enumerate(n));
    let t = truncated_energy(&pts, 1.5, 0.25)?;
    println!("\ntruncated kernel (s=1.5, rho=0.25) at n={n}: {:.2} vs {:.2}", t.value, t.baseline);

    let random = binomial_sample(pts.len(), 1);
    let r = riesz_energy(&random, 1.0)?;
    println!("uniform random set of the same size, s=1: rel.dev {:.2e}", r.relative_deviation());
    Ok(())
}
