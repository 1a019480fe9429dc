//! Odd local densities of the binary form n u² + 2t uv + n v² and the
//! multiplicative majorants built from them.
//!
//! The pair count factors as `A(n,t) = 24 α₂(n,t) ∏ α_p(n,t)` over odd
//! primes dividing n² - t², where the 2-adic factor α₂ is 0 or 1. We never
//! compute α₂; [`a_formula_odd`] returns the product with α₂ = 1, so the true
//! count is either 0 or that value.

use super::classno::Discriminant;
use super::factor::{factorize, split_off, Factorization};
use super::symbols::legendre;
use crate::error::{Error, Result};

/// The data that selects one of the four local density formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalDensityInput {
    pub n: u64,
    pub t: i64,
    pub p: u64,
    /// ord_p(gcd(n, t))
    pub a1: u32,
    /// ord_p(n² - t²) - a1
    pub a2: u32,
    /// Legendre symbol of the unit ε₁
    pub eps1_residue: i8,
    /// Legendre symbol of ε₁ε₂
    pub eps1eps2_residue: i8,
}

fn ord_signed(x: i128, p: u128) -> Option<u32> {
    (x != 0).then(|| split_off(x.unsigned_abs(), p).0)
}

fn unit_residue(x: i128, p: u128) -> i8 {
    let (_, u) = split_off(x.unsigned_abs(), p);
    let u = if x < 0 { -(u as i128) } else { u as i128 };
    legendre(u, p)
}

impl LocalDensityInput {
    /// Diagonalize over Z_p and record the exponents and unit classes.
    ///
    /// If ord_p(n) ≤ ord_p(t), completing the square gives the diagonal form
    /// n U² + ((n² - t²)/n) V². Otherwise u = U + V, v = U - V turns the form
    /// into 2(n+t) U² + 2(n-t) V², both of valuation ord_p(t).
    pub fn new(n: u64, t: i64, p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::domain("the 2-adic density is not computed"));
        }
        if p < 3 || !super::factor::is_prime(p as u128) {
            return Err(Error::domain(format!("{p} is not an odd prime")));
        }
        check_range(n, t)?;
        let pw = p as u128;
        let (ni, ti) = (n as i128, t as i128);
        let disc = ni * ni - ti * ti;
        let ord_n = ord_signed(ni, pw).unwrap();
        let ord_t = ord_signed(ti, pw);
        let ord_disc = ord_signed(disc, pw).unwrap();
        let (a1, eps1, eps1eps2) = match ord_t {
            Some(ot) if ot < ord_n => {
                let e1 = unit_residue(2 * (ni + ti), pw);
                let e2 = unit_residue(2 * (ni - ti), pw);
                (ot, e1, e1 * e2)
            }
            _ => {
                let e1 = unit_residue(ni, pw);
                // unit of (n² - t²)/n has the residue of unit(n² - t²) · unit(n)
                let e2 = unit_residue(disc, pw) * e1;
                (ord_n, e1, e1 * e2)
            }
        };
        Ok(LocalDensityInput {
            n,
            t,
            p,
            a1,
            a2: ord_disc - a1,
            eps1_residue: eps1,
            eps1eps2_residue: eps1eps2,
        })
    }

    /// α_p(n, t). Always an integer: the prefactors are geometric sums.
    pub fn density(&self) -> u64 {
        let p = self.p as u128;
        let minus_one = legendre(-1, p);
        let (a1, a2) = (self.a1, self.a2);
        // 1 + p + ... + p^{e-1}
        let geo = |e: u32| -> i128 { (0..e).map(|i| (p as i128).pow(i)).sum() };
        let power_sum = |symbol: i8, len: u32| -> i128 {
            match symbol {
                1 => len as i128 + 1,
                _ => i128::from(len % 2 == 0),
            }
        };
        let val = match (a1 % 2, a2 % 2) {
            (1, 1) => geo(a1.div_ceil(2)) * (1 + (minus_one * self.eps1eps2_residue) as i128),
            (1, 0) => {
                let eps2 = self.eps1eps2_residue * self.eps1_residue;
                geo(a1.div_ceil(2)) * (1 + (minus_one * eps2) as i128)
            }
            (0, 1) => {
                let s = minus_one * self.eps1_residue;
                geo(a1 / 2) * (1 + s as i128)
                    + (p as i128).pow(a1 / 2) * power_sum(s, a2 - a1)
            }
            _ => {
                let s = minus_one * self.eps1_residue;
                2 * geo(a1 / 2) + (p as i128).pow(a1 / 2) * power_sum(s, a2 - a1)
            }
        };
        debug_assert!(val >= 0);
        val as u64
    }
}

fn check_range(n: u64, t: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if t.unsigned_abs() >= n {
        return Err(Error::domain(format!("need |t| < n; got n = {n}, t = {t}")));
    }
    Ok(())
}

/// α_p(n, t) for an odd prime p; 1 when p does not divide n² - t².
pub fn local_density(n: u64, t: i64, p: u64) -> Result<u64> {
    let input = LocalDensityInput::new(n, t, p)?;
    if input.a1 + input.a2 == 0 {
        return Ok(1);
    }
    Ok(input.density())
}

fn discriminant_factors(n: u64, t: i64) -> Result<Factorization> {
    let (ni, ti) = (n as u128, t.unsigned_abs() as u128);
    factorize(ni * ni - ti * ti)
}

/// 24 ∏ α_p(n,t) over odd p | n² - t². The true A(n,t) is 0 or this value.
pub fn a_formula_odd(n: u64, t: i64) -> Result<u128> {
    check_range(n, t)?;
    let f = discriminant_factors(n, t)?;
    let mut acc: u128 = 24;
    for p in f.primes().filter(|&p| p != 2) {
        acc *= local_density(n, t, p as u64)? as u128;
    }
    Ok(acc)
}

fn prime_power_sum(symbol: i8, k: u32) -> u128 {
    match symbol {
        1 => k as u128 + 1,
        0 => 1,
        _ => u128::from(k % 2 == 0),
    }
}

/// The multiplicative majorant f_n evaluated at `arg`, for squarefree n.
pub fn f_n(n: u64, arg: u128) -> Result<u128> {
    if arg == 0 {
        return Err(Error::domain("f_n is defined on positive integers"));
    }
    let disc = Discriminant::of_squarefree(n)?;
    let f = factorize(arg)?;
    let mut acc = 1u128;
    for &(p, k) in &f.factors {
        if p == 2 {
            continue;
        }
        acc *= if n as u128 % p != 0 {
            prime_power_sum(disc.chi(p as i128), k)
        } else if k == 1 {
            1
        } else {
            2
        };
    }
    Ok(acc)
}

/// Reading of the last case in the prime-power table of f_{m,n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FmnVariant {
    /// Last row applies to p ∤ m, p | n, k ≥ 2 (matches f_n when m = 1).
    #[default]
    DividesN,
    /// Last row taken literally as p ∤ m, p ∤ n, k ≥ 2. That row is shadowed
    /// by the p ∤ n row, leaving p ∤ m, p | n, k ≥ 2 uncovered; it falls back
    /// to the k = 1 value.
    Literal,
}

/// f_{m,n}(arg) for squarefull `m`.
pub fn f_mn(m: u128, n: u128, arg: u128, variant: FmnVariant) -> Result<u128> {
    if arg == 0 || m == 0 || n == 0 {
        return Err(Error::domain("f_{m,n} needs positive m, n and argument"));
    }
    if !factorize(m)?.is_squarefull() {
        return Err(Error::domain(format!("{m} is not squarefull")));
    }
    let f = factorize(arg)?;
    let mut acc = 1u128;
    for &(p, k) in &f.factors {
        if p == 2 {
            continue;
        }
        let v = if m % p == 0 {
            k as u128 + 1
        } else if n % p != 0 {
            prime_power_sum(legendre(-((n % p) as i128), p), k)
        } else if k == 1 {
            1
        } else {
            match variant {
                FmnVariant::DividesN => 2,
                FmnVariant::Literal => 1,
            }
        };
        acc *= v;
    }
    Ok(acc)
}

/// The squarefull part of gcd(n, t): product of p^{ord_p gcd} over primes
/// with ord_p(gcd(n,t)) ≥ 2. With t = 0 the gcd is n.
pub fn squarefull_gcd_part(n: u64, t: i64) -> Result<u128> {
    let g = super::factor::gcd(n as u128, t.unsigned_abs() as u128);
    let f = factorize(g)?;
    Ok(f.factors
        .iter()
        .filter(|&&(_, k)| k >= 2)
        .map(|&(p, k)| p.pow(k))
        .product())
}

/// Right-hand side m^{1/2} τ(m) f_{m,n}(n₁² - t₁²) of the general pair-count
/// bound, with n = m n₁ and t = m t₁.
pub fn nonsquarefree_majorant(n: u64, t: i64, variant: FmnVariant) -> Result<f64> {
    check_range(n, t)?;
    let m = squarefull_gcd_part(n, t)?;
    let n1 = n as u128 / m;
    let t1 = t.unsigned_abs() as u128 / m;
    let tau = factorize(m)?.divisor_count() as f64;
    let f = f_mn(m, n as u128, n1 * n1 - t1 * t1, variant)?;
    Ok((m as f64).sqrt() * tau * f as f64)
}

/// The diagnostic pair (gcd(n,t)^{1/2} n^{1/4}, A(n,t)) for monitoring the
/// pair-count growth bound. No assertion is made on the ratio.
pub fn gcd_bound_check(n: u64, t: i64) -> Result<(f64, u64)> {
    check_range(n, t)?;
    let g = super::factor::gcd(n as u128, t.unsigned_abs() as u128) as f64;
    let actual = crate::lattice::a_brute(n, t);
    Ok((g.sqrt() * (n as f64).powf(0.25), actual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_densities() {
        let d = LocalDensityInput::new(5, 0, 5).unwrap();
        assert_eq!((d.a1, d.a2, d.eps1_residue, d.eps1eps2_residue), (1, 1, 1, 1));
        assert_eq!(local_density(5, 0, 5).unwrap(), 2);

        let d = LocalDensityInput::new(5, 4, 3).unwrap();
        assert_eq!((d.a1, d.a2), (0, 2));
        assert_eq!(local_density(5, 4, 3).unwrap(), 3);

        // a1 = a2 = 1 and (-1/3) = -1 kill the density
        assert_eq!(local_density(3, 0, 3).unwrap(), 0);
    }

    #[test]
    fn two_adic_rejected() {
        assert!(local_density(5, 1, 2).is_err());
        assert!(local_density(5, 1, 9).is_err());
        assert!(local_density(5, 5, 3).is_err());
    }

    #[test]
    fn not_dividing_gives_one() {
        // 25 - 16 = 9, so 7 does not divide it
        assert_eq!(local_density(5, 4, 7).unwrap(), 1);
    }

    #[test]
    fn closed_form_when_p_coprime_to_2n() {
        for n in 1..120u64 {
            for t in -(n as i64) + 1..n as i64 {
                let f = discriminant_factors(n, t).unwrap();
                for p in f.primes().filter(|&p| p != 2 && n as u128 % p != 0) {
                    let k = f.ord(p);
                    let chi = legendre(-(n as i128), p);
                    let want = prime_power_sum(chi, k) as u64;
                    assert_eq!(local_density(n, t, p as u64).unwrap(), want, "n={n} t={t} p={p}");
                }
            }
        }
    }

    #[test]
    fn formula_products() {
        assert_eq!(a_formula_odd(5, 0).unwrap(), 48);
        assert_eq!(a_formula_odd(5, 4).unwrap(), 72);
        assert_eq!(a_formula_odd(5, 3).unwrap(), 24);
        assert!(a_formula_odd(5, 5).is_err());
    }

    #[test]
    fn f_n_values() {
        assert_eq!(f_n(5, 8).unwrap(), 1);
        assert_eq!(f_n(5, 9).unwrap(), 3);
        assert_eq!(f_n(5, 5).unwrap(), 1);
        assert_eq!(f_n(5, 25).unwrap(), 2);
        assert!(f_n(12, 5).is_err());
        // (-20/11) = (2/11) = -1
        assert_eq!(f_n(5, 11).unwrap(), 0);
        assert_eq!(f_n(5, 121).unwrap(), 1);
    }

    #[test]
    fn f_mn_values() {
        assert_eq!(f_mn(4, 4, 8, FmnVariant::DividesN).unwrap(), 1);
        assert_eq!(f_mn(9, 9, 3, FmnVariant::DividesN).unwrap(), 2);
        assert_eq!(f_mn(1, 5, 9, FmnVariant::DividesN).unwrap(), 3);
        assert!(f_mn(12, 5, 9, FmnVariant::DividesN).is_err());
        // m = 1 reduces to f_n under the default reading
        for n in [1u64, 2, 3, 5, 6, 10, 11, 13, 15, 21] {
            for arg in 1..400u128 {
                assert_eq!(
                    f_mn(1, n as u128, arg, FmnVariant::DividesN).unwrap(),
                    f_n(n, arg).unwrap()
                );
            }
        }
        // the two readings differ only on p ∤ m, p | n, k ≥ 2
        assert_eq!(f_mn(1, 5, 25, FmnVariant::DividesN).unwrap(), 2);
        assert_eq!(f_mn(1, 5, 25, FmnVariant::Literal).unwrap(), 1);
    }

    #[test]
    fn squarefull_part() {
        assert_eq!(squarefull_gcd_part(36, 18).unwrap(), 9);
        assert_eq!(squarefull_gcd_part(5, 0).unwrap(), 1);
        assert_eq!(squarefull_gcd_part(72, 0).unwrap(), 72);
        assert_eq!(squarefull_gcd_part(12, 6).unwrap(), 1);
    }
}
