//! Cap and annulus number variance: Monte Carlo centers vs the Legendre series,
//! plus the box second moment.
//!
//! cargo run --example number_variance

use sphere_lattice::harmonics::variance_series;
use sphere_lattice::lattice::{enumerate, pair_table_of};
use sphere_lattice::spatial::{box_moment, number_variance, AnnulusSpec, UnitPointSet};

fn main() -> sphere_lattice::Result<()> {
    let n = 10009;
    let set = enumerate(n);
    let table = pair_table_of(&set);
    let pts = UnitPointSet::from_lattice(&set);
    let big_n = pts.len() as f64;
    println!("n = {n}, N = {big_n}");

    let specs = [
        AnnulusSpec::cap_with_area(1.0 / big_n)?,
        AnnulusSpec::cap_with_area(0.01)?,
        AnnulusSpec::cap_with_area(0.3)?,
        AnnulusSpec::new(0.1, 0.2)?,
        AnnulusSpec::new(0.1, 1.0)?,
    ];
    println!("{:>6} {:>6} {:>9} {:>9} {:>9} {:>9}", "rho1", "rho2", "N·sigma", "MC var", "±SE", "series");
    for spec in &specs {
        let mc = number_variance(&pts, spec, 200_000, 42)?;
        let series = variance_series(&table, spec, 800)?;
        println!(
            "{:>6.3} {:>6.3} {:>9.3} {:>9.3} {:>9.3} {:>9.3}",
            spec.rho1, spec.rho2, mc.expected_mean, mc.variance, mc.variance_se, series.value
        );
    }

    let cells = (n as f64).sqrt().ceil() as usize;
    let b = box_moment(&pts, cells)?;
    println!(
        "\n{cells} equal-area cells: sum of squared counts {} (uniform expectation ≈ {:.0}), max cell diameter {:.3}",
        b.sum_squares,
        big_n * big_n / cells as f64 + big_n,
        b.max_cell_diameter
    );
    Ok(())
}
