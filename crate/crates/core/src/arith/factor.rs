//! Integer factorization for arguments up to 2^80.
//!
//! Small inputs go through trial division. Larger ones are stripped of small
//! primes, then split with Brent's variant of Pollard rho, using a
//! Miller-Rabin test whose base set is deterministic below 3.3e24.

use crate::error::{Error, Result};

/// Largest argument accepted by [`factorize`].
pub const FACTOR_LIMIT: u128 = 1 << 80;

const TRIAL_DIVISION_LIMIT: u128 = 10_000_000;
const SMALL_PRIME_BOUND: u64 = 4096;
const MR_BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u128,
    pub factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// Exponent of `p` in the value (`ord_p`).
    pub fn ord(&self, p: u128) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, k)| k)
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, k)| k == 1)
    }

    /// True when every prime appears with exponent at least 2 (1 counts).
    pub fn is_squarefull(&self) -> bool {
        self.factors.iter().all(|&(_, k)| k >= 2)
    }

    /// Number of divisors.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, k)| k as u64 + 1).product()
    }

    /// Multiply the factors back out.
    pub fn product(&self) -> u128 {
        self.factors.iter().map(|&(p, k)| p.pow(k)).product()
    }
}

/// Factor `n` into primes. Fails on 0 and on inputs above 2^80.
pub fn factorize(n: u128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    if n > FACTOR_LIMIT {
        return Err(Error::domain(format!("{n} exceeds the factorization limit 2^80")));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    if n <= TRIAL_DIVISION_LIMIT {
        trial_divide(&mut rest, u64::MAX, &mut primes);
    } else {
        trial_divide(&mut rest, SMALL_PRIME_BOUND, &mut primes);
        if rest > 1 {
            split(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { value: n, factors })
}

fn trial_divide(rest: &mut u128, bound: u64, out: &mut Vec<u128>) {
    while *rest % 2 == 0 {
        *rest /= 2;
        out.push(2);
    }
    let mut d: u128 = 3;
    while d <= bound as u128 && d * d <= *rest {
        while *rest % d == 0 {
            *rest /= d;
            out.push(d);
        }
        d += 2;
    }
    if d * d > *rest && *rest > 1 {
        out.push(*rest);
        *rest = 1;
    }
}

fn split(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = perfect_square_root(n) {
        split(r, out);
        split(r, out);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = brent_rho(n, c) {
            break d;
        }
        c += 1;
    };
    split(d, out);
    split(n / d, out);
}

fn perfect_square_root(n: u128) -> Option<u128> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// `a * b mod m` without overflow for moduli below 2^86.
pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    debug_assert!(m < 1 << 86);
    let a = a % m;
    let b = b % m;
    let hi = b >> 40;
    let lo = b & ((1 << 40) - 1);
    let t = (a * hi % m) << 40;
    (t % m + a * lo % m) % m
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the whole supported range.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn brent_rho(n: u128, c: u128) -> Option<u128> {
    let f = |x: u128| (mul_mod(x, x, n) + c) % n;
    let mut y = 2u128;
    let mut r = 1u64;
    let mut q = 1u128;
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Exponent of `p` in `m` together with the cofactor; `m` must be nonzero.
pub fn split_off(mut m: u128, p: u128) -> (u32, u128) {
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (k, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(mut n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            if k > 0 {
                out.push((d, k));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_values() {
        assert!(factorize(1).unwrap().factors.is_empty());
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert!(factorize(0).is_err());
        for n in 1..3000u128 {
            assert_eq!(factorize(n).unwrap().factors, naive(n), "n={n}");
        }
    }

    #[test]
    fn two_pow_forty_plus_one() {
        let n = (1u128 << 40) + 1;
        let f = factorize(n).unwrap();
        assert_eq!(f.product(), n);
        assert!(f.primes().all(is_prime));
        // 2^40 + 1 = 257 * 4278255361
        assert_eq!(f.factors, naive(n));
    }

    #[test]
    fn large_semiprimes_and_powers() {
        let p: u128 = 1_000_000_007;
        let q: u128 = 998_244_353;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors, vec![(q, 1), (p, 1)]);

        let f = factorize(p * p * 3).unwrap();
        assert_eq!(f.factors, vec![(3, 1), (p, 2)]);

        // prime near 2^61 times a 19-bit prime, still below 2^80
        let big: u128 = (1 << 61) - 1;
        let f = factorize(big * 524_287).unwrap();
        assert_eq!(f.factors, vec![(524_287, 1), (big, 1)]);
    }

    #[test]
    fn limit_enforced() {
        assert!(factorize(FACTOR_LIMIT).is_ok());
        assert!(factorize(FACTOR_LIMIT + 1).is_err());
    }

    #[test]
    fn mul_mod_wide_modulus() {
        let m: u128 = (1 << 80) - 65;
        let a = m - 3;
        let b = m - 5;
        // (m-3)(m-5) = 15 mod m
        assert_eq!(mul_mod(a, b, m), 15);
    }
}
