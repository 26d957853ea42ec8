//! Small number-theoretic helpers shared across the crate.

/// Greatest common divisor of two signed integers (always nonnegative).
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Legendre symbol (a/p) for an odd prime p: +1, -1, or 0.
pub fn legendre(a: i64, p: i64) -> i64 {
    debug_assert!(p > 2 && is_prime(p as u64));
    let mut a = a % p;
    if a < 0 {
        a += p;
    }
    if a == 0 {
        return 0;
    }
    // Euler's criterion by fast modular exponentiation.
    let mut result: i64 = 1;
    let mut base = a as i128;
    let mut exp = (p - 1) / 2;
    let m = p as i128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = ((result as i128 * base) % m) as i64;
        }
        base = (base * base) % m;
        exp >>= 1;
    }
    if result == p - 1 {
        -1
    } else {
        result
    }
}

/// Deterministic primality test for u64 (trial division; inputs are desk-scale).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as sorted (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The p-part of n: the largest power of p dividing n.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    out
}

/// Smallest quadratic non-residue modulo an odd prime p.
pub fn least_nonresidue(p: i64) -> i64 {
    (2..p).find(|&a| legendre(a, p) == -1).unwrap_or(2)
}

/// Modular inverse of a modulo m (m > 0), if gcd(a, m) = 1.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m))
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Exact integer square root test: Some(r) with r*r = n when n is a perfect square.
pub fn perfect_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt_i64(n);
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

/// Integer floor square root by Newton iteration from above.
pub fn isqrt_i64(n: i64) -> i64 {
    if n < 2 {
        return n.max(0);
    }
    let bits = 64 - (n as u64).leading_zeros();
    let mut x = 1i64 << (bits / 2 + 1); // x > √n, far from overflow
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// lcm of two positive integers.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_i64(a as i64, b as i64) as u64 * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_basics() {
        assert_eq!(legendre(1, 3), 1);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(9, 19), 1);
        assert_eq!(legendre(-1, 19), -1); // 19 = 3 mod 4
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(0, 7), 0);
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(40), vec![(2, 3), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd_i64(a, b));
            }
        }
    }

    #[test]
    fn integer_sqrt() {
        for n in 0..2000i64 {
            let r = isqrt_i64(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n}) = {r}");
            assert_eq!(perfect_sqrt(n).is_some(), r * r == n);
        }
        assert_eq!(perfect_sqrt(-4), None);
        assert_eq!(perfect_sqrt(i64::MAX), None);
    }

    #[test]
    fn nonresidues() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(5), 2);
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(least_nonresidue(17), 3);
    }
}
