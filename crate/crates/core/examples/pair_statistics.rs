//! Ripley counts and nearest-neighbour spacings, lattice vs uniform points.
//!
//! cargo run --example pair_statistics

use sphere_lattice::lattice::{enumerate, m_count_in};
use sphere_lattice::spatial::{binomial_sample, nn_spacings, ripley_k, ripley_threshold, UnitPointSet};

fn main() -> sphere_lattice::Result<()> {
    let n = 1_000_003;
    let set = enumerate(n);
    let pts = UnitPointSet::from_lattice(&set);
    let random = binomial_sample(pts.len(), 7);
    let big_n = pts.len() as f64;
    println!("n = {n}, N = {big_n}");

    println!("{:>8} {:>9} {:>9} {:>9} {:>9}", "r", "K", "M(n;0,r²n)", "K/base", "rand/base");
    for scale in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let r = scale / big_n.sqrt();
        let k = ripley_k(&pts, r)?;
        let m = m_count_in(&set, 0.0, ripley_threshold(r, n));
        let kr = ripley_k(&random, r)?;
        println!(
            "{r:>8.4} {:>9} {m:>9} {:>9.3} {:>9.3}",
            k.k,
            k.k as f64 / k.baseline,
            kr.k as f64 / kr.baseline
        );
    }

    let s = nn_spacings(&pts)?;
    let sr = nn_spacings(&random)?;
    println!("\nspacings N·d²/4: lattice mean {:.3}, KS to Exp(1) {:.3}", s.mean, s.ks_distance_to_exp);
    println!("                 random  mean {:.3}, KS to Exp(1) {:.3}", sr.mean, sr.ks_distance_to_exp);
    Ok(())
}
