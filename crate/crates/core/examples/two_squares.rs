//! Gaps between sums of two squares and the lattice-point probe near a pole.
//!
//! cargo run --example two_squares

use sphere_lattice::twosquares::{brun_step_check, gap_probe, gap_scan, window};

fn main() -> sphere_lattice::Result<()> {
    let w = window(9)?;
    println!("S2 ∩ [9, 18) = {:?}, largest gap {}", w.members, w.max_gap);

    let ys: Vec<u64> = (3..=7).map(|k| 10u64.pow(k)).collect();
    println!("\n{:>10} {:>4} {:>8}", "Y", "G", "G/Y^1/4");
    for row in gap_scan(&ys)? {
        println!("{:>10} {:>4} {:>8.4}", row.y, row.g, row.ratio);
    }

    println!("\nprobe of E(m²) within H of the pole");
    for (m, h) in [(1u64, 1u64), (97, 10), (1000, 30), (1_000_003, 50)] {
        let p = gap_probe(m, h)?;
        println!(
            "  m={m:>8} H={h:>3}: best x3 {:?}, bound {:?}, dist(2m, S2) = {}, {} of {} qualify, rough={}",
            p.best_x3,
            p.probe_distance,
            p.dist_2m_to_s2,
            p.qualifying.len(),
            p.examined,
            p.rough
        );
    }

    let b = brun_step_check(1_000_000, 0.5)?;
    println!(
        "\nrun of integers with a prime factor <= G^0.5 (= {:.2}) at Y={}: longest {} vs ceil(G/8) = {} -> {}",
        b.cutoff, b.y, b.longest_run, b.length, b.holds
    );
    Ok(())
}
