//! Pair counts from local densities, and N_n from class numbers and L(1, χ).
//!
//! cargo run --example arithmetic

use sphere_lattice::arith::{
    a_formula_odd, class_number, factorize, gauss_count, l_one_chi, local_density, Discriminant,
};
use sphere_lattice::lattice::{a_brute, enumerate};

fn main() -> sphere_lattice::Result<()> {
    let n = 101;
    println!("A({n}, t): brute force vs local-density product");
    for t in [-99i64, -10, 0, 1, 7, 60] {
        let brute = a_brute(n, t);
        let formula = a_formula_odd(n, t)?;
        let disc = (n * n) as i128 - (t * t) as i128;
        let primes: Vec<u64> = factorize(disc as u128)?.primes().filter(|&p| p > 2).map(|p| p as u64).collect();
        let dens: Vec<String> = primes.iter().map(|&p| format!("{p}:{}", local_density(n, t, p).unwrap())).collect();
        println!("  t={t:>4}  brute={brute:>4}  formula={formula:>4}  densities [{}]", dens.join(" "));
    }

    println!("\nN_n three ways");
    for n in [5u64, 101, 1009, 10009, 100_003] {
        let d = Discriminant::of_squarefree(n)?;
        let l = l_one_chi(n, 1e-10)?;
        let via_l = 24.0 / std::f64::consts::PI * (n as f64).sqrt() * l.value;
        println!(
            "  n={n:>6}  d={:>7}  h={:>4}  gauss={:>5}  enumerate={:>5}  (24/pi)sqrt(n)L={via_l:.6}",
            d.d,
            class_number(d.d)?,
            gauss_count(n)?,
            enumerate(n).len()
        );
    }
    Ok(())
}
