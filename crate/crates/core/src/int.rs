//! Small integer helpers shared by the lattice and profinite code.

/// Floor division.
pub fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Nonnegative residue of `a` modulo `m > 0`.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

/// Combines `x = r1 mod m1` and `x = r2 mod m2` into one congruence modulo
/// `lcm(m1, m2)`, or `None` when they disagree on `gcd(m1, m2)`.
pub fn crt(r1: i64, m1: i64, r2: i64, m2: i64) -> Option<(i64, i64)> {
    let (g, p, _) = ext_gcd(m1, m2);
    if (r2 - r1) % g != 0 {
        return None;
    }
    let l = lcm(m1, m2);
    let k = ((r2 - r1) / g) as i128 * p as i128 % (m2 / g) as i128;
    let x = (r1 as i128 + m1 as i128 * k).rem_euclid(l as i128);
    Some((x as i64, l))
}

/// Divisors of `n > 0` in increasing order.
pub fn divisors(n: u64) -> alloc::vec::Vec<u64> {
    let mut small = alloc::vec::Vec::new();
    let mut large = alloc::vec::Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_matches_brute_force() {
        for m1 in 1..12i64 {
            for m2 in 1..12i64 {
                for r1 in 0..m1 {
                    for r2 in 0..m2 {
                        let brute = (0..lcm(m1, m2)).find(|x| x % m1 == r1 && x % m2 == r2);
                        assert_eq!(crt(r1, m1, r2, m2).map(|p| p.0), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -20..20i64 {
            for b in -20..20i64 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(a * x + b * y, g);
            }
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
    }
}
