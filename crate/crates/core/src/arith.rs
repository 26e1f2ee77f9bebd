//! Small integer number theory shared by the field, table and Galois code.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// If `n = p^k` for a prime `p` and `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Inverse of `a` modulo `m`, when it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (a, m) = (a as i128 % m as i128, m as i128);
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m) as u64)
}

/// Smallest generator of the multiplicative group of the prime field `F_p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
        })
        .expect("every prime field has a primitive root")
}

/// A generating set of the unit group `(Z/e)^x`, one or two elements per prime-power
/// factor of `e`, each lifted by CRT to be `1` modulo the other factors.
pub fn unit_group_generators(e: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    if e <= 2 {
        return gens;
    }
    for (p, k) in factorize(e) {
        let pk = p.pow(k);
        let rest = e / pk;
        let local: Vec<u64> = if p == 2 {
            match k {
                1 => vec![],
                2 => vec![3],
                _ => vec![pk - 1, 5],
            }
        } else {
            let mut g = primitive_root(p);
            if k > 1 && pow_mod(g, p - 1, p * p) == 1 {
                g += p;
            }
            vec![g % pk]
        };
        for g in local {
            gens.push(crt_pair(g, pk, 1, rest));
        }
    }
    gens
}

/// The unique `x mod m1*m2` with `x = a1 (m1)` and `x = a2 (m2)`; moduli must be coprime.
pub fn crt_pair(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    if m2 == 1 {
        return a1 % m1;
    }
    if m1 == 1 {
        return a2 % m2;
    }
    let inv = inv_mod(m1 % m2, m2).expect("coprime moduli");
    // x = a1 + m1 * t with t = (a2 - a1) / m1 mod m2
    let diff = (a2 as i128 - a1 as i128).rem_euclid(m2 as i128) as u64;
    let t = mul_mod(diff, inv, m2);
    (a1 as u128 + m1 as u128 * t as u128) as u64 % m
}

/// Units of `Z/e` in increasing order.
pub fn units(e: u64) -> Vec<u64> {
    if e == 1 {
        return vec![0];
    }
    (1..e).filter(|&k| gcd(k, e) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_phi() {
        assert_eq!(factorize(1820), vec![(2, 2), (5, 1), (7, 1), (13, 1)]);
        assert_eq!(euler_phi(1820), 576);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn unit_generators_generate() {
        for e in [1u64, 2, 3, 4, 8, 9, 12, 15, 16, 24, 120, 1820] {
            let gens = unit_group_generators(e);
            let mut seen = std::collections::BTreeSet::new();
            let start = 1 % e;
            seen.insert(start);
            let mut frontier = vec![start];
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = mul_mod(x, g, e);
                    if seen.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            let expected = if e == 1 { 1 } else { euler_phi(e) as usize };
            assert_eq!(seen.len(), expected, "e = {e}");
        }
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(crt_pair(2, 3, 3, 5), 8);
    }
}
