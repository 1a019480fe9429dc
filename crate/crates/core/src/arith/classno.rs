//! Class numbers, L(1, χ) and the three-squares count for squarefree n.

use super::factor::factorize;
use super::symbols::kronecker;
use crate::error::{Error, Result};

/// Fundamental discriminant of Q(√-n) for squarefree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discriminant {
    pub n: u64,
    pub d: i64,
}

impl Discriminant {
    pub fn of_squarefree(n: u64) -> Result<Self> {
        if n == 0 || !is_squarefree(n) {
            return Err(Error::domain(format!("{n} is not a positive squarefree integer")));
        }
        // -n = 1 mod 4  <=>  n = 3 mod 4
        let d = if n % 4 == 3 { -(n as i64) } else { -4 * n as i64 };
        Ok(Discriminant { n, d })
    }

    /// The character χ_{-n}(m) = (d_n / m).
    pub fn chi(&self, m: i128) -> i8 {
        kronecker(self.d as i128, m)
    }

    /// Number of units w(d) of the imaginary quadratic order.
    pub fn units(&self) -> u64 {
        match self.d {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n as u128).map(|f| f.is_squarefree()).unwrap_or(false)
}

/// True for negative fundamental discriminants.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(a),
        0 => {
            let m = a / 4;
            // -d/4 = m with -m = 2 or 3 mod 4
            matches!((-(m as i64)).rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Number of reduced primitive positive definite forms of discriminant `d`.
pub fn class_number(d: i64) -> Result<u64> {
    if !is_fundamental(d) {
        return Err(Error::domain(format!("{d} is not a negative fundamental discriminant")));
    }
    let ad = d.unsigned_abs();
    let mut h = 0u64;
    let mut b = ad % 2;
    while 3 * b * b <= ad {
        let ac = (b * b + ad) / 4;
        let mut a = b.max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                if gcd3(a, b, c) == 1 {
                    h += 1;
                    // (a, -b, c) is reduced and distinct unless b = 0, |b| = a or a = c
                    if b != 0 && b != a && a != c {
                        h += 1;
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    Ok(h)
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    fn g(mut x: u64, mut y: u64) -> u64 {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    }
    g(g(a, b), c)
}

/// An approximation of L(1, χ) with a rigorous bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LValue {
    pub value: f64,
    pub error_bound: f64,
    /// Number of terms in the direct character sum.
    pub terms: u64,
    /// Pólya-Vinogradov bound on the tail of the uncorrected direct sum.
    pub pv_tail_bound: f64,
}

const TAIL_ORDER: u32 = 10;

/// L(1, χ_{d_n}) for squarefree `n ≢ 7 (mod 8)`, to within `target_error`.
///
/// Sums χ(m)/m directly over `K` full periods of the character, then
/// evaluates the remaining blocks by expanding `1/(kq + a)` in powers of
/// `a/(kq)`. The moments of χ over one period and the tails of ζ make that
/// expansion explicit; the neglected part is bounded by
/// `K/(K-1) · ζ(J+2, K)`.
pub fn l_one_chi(n: u64, target_error: f64) -> Result<LValue> {
    if !(target_error > 0.0) {
        return Err(Error::domain("target error must be positive"));
    }
    if n % 8 == 7 {
        return Err(Error::domain(format!(
            "L(1, χ) path requires n ≢ 7 (mod 8); got n = {n}"
        )));
    }
    let disc = Discriminant::of_squarefree(n)?;
    let q = disc.d.unsigned_abs() as usize;
    let table = character_table(&disc);

    let j = TAIL_ORDER;
    let mut k = 10u64;
    while tail_remainder(k, j) > target_error / 2.0 {
        k += 1;
    }

    let terms = k * q as u64;
    let mut direct = 0.0f64;
    let mut comp = 0.0f64;
    for m in 1..=terms {
        let c = table[(m % q as u64) as usize];
        if c != 0 {
            // Kahan summation; the terms alternate in sign irregularly
            let y = c as f64 / m as f64 - comp;
            let t = direct + y;
            comp = (t - direct) - y;
            direct = t;
        }
    }

    let qf = q as f64;
    let mut tail = 0.0;
    for jj in 1..=j {
        let moment: f64 = (1..=q)
            .map(|a| table[a % q] as f64 * (a as f64 / qf).powi(jj as i32))
            .sum();
        let sign = if jj % 2 == 0 { 1.0 } else { -1.0 };
        tail += sign * moment / qf * zeta_tail(jj + 1, k);
    }

    let rounding = terms as f64 * f64::EPSILON * 4.0;
    let pv = 2.0 * qf.sqrt() * qf.ln().max(1.0) / terms as f64;
    Ok(LValue {
        value: direct + tail,
        error_bound: tail_remainder(k, j) + rounding,
        terms,
        pv_tail_bound: pv,
    })
}

/// The class-number side of Dirichlet's formula: 2πh/(w√|d|).
pub fn l_one_from_class_number(n: u64) -> Result<f64> {
    let disc = Discriminant::of_squarefree(n)?;
    let h = class_number(disc.d)? as f64;
    let ad = disc.d.unsigned_abs() as f64;
    Ok(2.0 * std::f64::consts::PI * h / (disc.units() as f64 * ad.sqrt()))
}

/// χ(a) for a in 0..q, built from χ on primes via complete multiplicativity.
fn character_table(disc: &Discriminant) -> Vec<i8> {
    let q = disc.d.unsigned_abs() as usize;
    let mut spf = vec![0u32; q + 1];
    let mut table = vec![0i8; q + 1];
    if q >= 1 {
        table[1] = 1;
    }
    for a in 2..=q {
        if spf[a] == 0 {
            let mut m = a;
            while m <= q {
                if spf[m] == 0 {
                    spf[m] = a as u32;
                }
                m += a;
            }
            table[a] = disc.chi(a as i128);
        } else {
            let p = spf[a] as usize;
            table[a] = table[p] * table[a / p];
        }
    }
    table[0] = table[q];
    table.truncate(q);
    table
}

/// Σ_{k ≥ K} k^{-s} by Euler-Maclaurin; accurate to ~K^{-s-7} for K ≥ 10.
fn zeta_tail(s: u32, k: u64) -> f64 {
    const DIRECT: u64 = 64;
    let head: f64 = (k..k + DIRECT).rev().map(|m| (m as f64).powi(-(s as i32))).sum();
    let s = s as f64;
    let kf = (k + DIRECT) as f64;
    let ks = kf.powf(-s);
    head + kf.powf(1.0 - s) / (s - 1.0) + ks / 2.0 + s * ks / kf / 12.0
        - s * (s + 1.0) * (s + 2.0) * ks / kf.powi(3) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ks / kf.powi(5) / 30240.0
}

fn tail_remainder(k: u64, j: u32) -> f64 {
    let kf = k as f64;
    kf / (kf - 1.0) * (kf.powf(-((j + 1) as f64)) / (j + 1) as f64 + kf.powf(-((j + 2) as f64)))
}

/// N_n from class numbers, for squarefree n > 3 with n ≢ 7 (mod 8).
pub fn gauss_count(n: u64) -> Result<u64> {
    if n <= 3 {
        return Err(Error::domain(format!("class-number count needs n > 3; got {n}")));
    }
    if n % 8 == 7 {
        return Err(Error::domain(format!(
            "n = {n} ≡ 7 (mod 8) is not a sum of three squares"
        )));
    }
    let disc = Discriminant::of_squarefree(n)?;
    let h = class_number(disc.d)?;
    Ok(if n % 8 == 3 { 24 * h } else { 12 * h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Brute-force enumeration of reduced forms, written independently.
    fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        let bound = -d;
        for a in 1..=bound {
            for b in -a + 1..=a {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if c < a || (a == c && b < 0) {
                    continue;
                }
                if gcd3(a as u64, b.unsigned_abs(), c as u64) == 1 {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    #[test]
    fn class_numbers_worked() {
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(reduced_forms(-20), vec![(1, 0, 5), (2, 2, 3)]);
        assert_eq!(class_number(-20).unwrap(), 2);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(reduced_forms(-23).len(), 3);
        assert_eq!(class_number(-24).unwrap(), 2);
        assert_eq!(class_number(-3).unwrap(), 1);
    }

    #[test]
    fn class_number_matches_enumeration() {
        for d in (-2000i64..-2).filter(|&d| is_fundamental(d)) {
            assert_eq!(class_number(d).unwrap() as usize, reduced_forms(d).len(), "d={d}");
        }
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(class_number(-12).is_err());
        assert!(class_number(5).is_err());
        assert!(class_number(-16).is_err());
        assert!(class_number(-2).is_err());
    }

    #[test]
    fn discriminant_rule() {
        assert_eq!(Discriminant::of_squarefree(5).unwrap().d, -20);
        assert_eq!(Discriminant::of_squarefree(11).unwrap().d, -11);
        assert_eq!(Discriminant::of_squarefree(2).unwrap().d, -8);
        assert_eq!(Discriminant::of_squarefree(1).unwrap().d, -4);
        assert!(Discriminant::of_squarefree(12).is_err());
    }

    #[test]
    fn l_values_worked() {
        let cases = [(5, 2.0 * PI / 20f64.sqrt()), (2, PI / 8f64.sqrt()), (1, PI / 4.0)];
        for (n, want) in cases {
            let l = l_one_chi(n, 1e-10).unwrap();
            assert!((l.value - want).abs() < 2e-10, "n={n}: {} vs {want}", l.value);
            assert!(l.error_bound <= 1e-10);
        }
        assert!((l_one_chi(5, 1e-8).unwrap().value - 1.40496).abs() < 1e-5);
    }

    #[test]
    fn l_value_agrees_with_class_number_formula() {
        for n in (1..400u64).filter(|&n| is_squarefree(n) && n % 8 != 7) {
            let eps = 1e-9;
            let l = l_one_chi(n, eps).unwrap();
            let h = l_one_from_class_number(n).unwrap();
            assert!((l.value - h).abs() <= 2.0 * eps, "n={n}: {} vs {h}", l.value);
        }
    }

    #[test]
    fn l_value_domain() {
        assert!(l_one_chi(7, 1e-6).is_err());
        assert!(l_one_chi(12, 1e-6).is_err());
        assert!(l_one_chi(5, 0.0).is_err());
    }

    #[test]
    fn gauss_counts() {
        assert_eq!(gauss_count(5).unwrap(), 24);
        assert_eq!(gauss_count(11).unwrap(), 24);
        assert_eq!(gauss_count(6).unwrap(), 24);
        assert!(gauss_count(3).is_err());
        assert!(gauss_count(15).is_err());
        assert!(gauss_count(12).is_err());
    }

    #[test]
    fn zeta_tail_against_direct_sum() {
        for s in 2..12u32 {
            let k = 10u64;
            let m = 2_000_000u64;
            let direct: f64 = (k..m).rev().map(|i| (i as f64).powi(-(s as i32))).sum();
            let mf = m as f64;
            let rest = mf.powf(1.0 - s as f64) / (s as f64 - 1.0) + mf.powi(-(s as i32)) / 2.0;
            let got = zeta_tail(s, k);
            assert!(((direct + rest) - got).abs() < 1e-12 * got.max(1e-30) + 1e-15, "s={s}");
        }
    }
}
