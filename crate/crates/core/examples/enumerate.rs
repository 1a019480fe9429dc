//! Enumerate E(n), print a few points and the inner-product histogram.
//!
//! cargo run --example enumerate -- 29

use sphere_lattice::lattice::{enumerate, is_three_square_representable, pair_table_of, write_pair_table_csv};

fn main() -> sphere_lattice::Result<()> {
    let n: u64 = std::env::args().nth(1).map_or(29, |s| s.parse().expect("n must be an integer"));
    if !is_three_square_representable(n) {
        println!("{n} is not a sum of three squares");
        return Ok(());
    }
    let set = enumerate(n);
    let primitive = set.primitive.iter().filter(|&&p| p).count();
    println!("n = {n}: N = {} points, {primitive} primitive", set.len());
    for p in set.points.iter().take(6) {
        println!("  ({}, {}, {})", p.x1, p.x2, p.x3);
    }

    let table = pair_table_of(&set);
    println!("A(n, t), summing to N^2 = {}:", table.total());
    write_pair_table_csv(&table, std::io::stdout().lock())
}
