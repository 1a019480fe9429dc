//! Kronecker and Legendre symbols.

/// Kronecker symbol `(d / m)`, defined for all integer pairs.
///
/// Extends the Jacobi symbol with `(d/2) = 0` for even `d`, `+1` for
/// `d = ±1 mod 8` and `-1` for `d = ±3 mod 8`, and `(d/-1) = sign(d)`.
pub fn kronecker(d: i128, m: i128) -> i8 {
    if m == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut sign: i8 = 1;
    let mut m = m;
    if m < 0 {
        m = -m;
        if d < 0 {
            sign = -sign;
        }
    }
    let mut m = m as u128;
    let twos = m.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        m >>= twos;
    }
    // Jacobi symbol (a / m) for odd m, with a reduced into [0, m).
    let mut a = d.rem_euclid(m as i128) as u128;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && matches!(m % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        (a, m) = (m % a, a);
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: i128, p: u128) -> i8 {
    debug_assert!(p % 2 == 1);
    kronecker(a, p as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler's criterion by brute-force residue search.
    fn residue_oracle(a: i128, p: i128) -> i8 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| x * x % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn worked_values() {
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(-4, 2), 0);
        // -20 = 1 mod 7, and 1 is a square
        assert_eq!(kronecker(-20, 7), 1);
        assert_eq!(residue_oracle(-20, 7), 1);
        assert_eq!(kronecker(-8, 3), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn matches_legendre_on_odd_primes() {
        let primes = [3i128, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        for &p in &primes {
            for a in -200..200 {
                assert_eq!(kronecker(a, p), residue_oracle(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn completely_multiplicative_in_bottom() {
        for d in [-3i128, -4, -7, -8, -15, -20, -23, -24, -35, -40, -84] {
            for m in 1..60 {
                for k in 1..60 {
                    assert_eq!(
                        kronecker(d, m * k),
                        kronecker(d, m) * kronecker(d, k),
                        "d={d} m={m} k={k}"
                    );
                }
            }
        }
    }
}
