//! Cyclotomic polynomials and reduction of power-basis vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{euler_phi, factorize, inv_mod};

use super::Coeff;

fn moebius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn compute_cyclotomic(e: u64) -> Vec<i64> {
    // Phi_e = prod_{d | e} (x^d - 1)^{mu(e/d)}
    let divisors: Vec<u64> = (1..=e).filter(|d| e % d == 0).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if moebius(e / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i64; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] = next[i + d]
                    .checked_add(c)
                    .expect("cyclotomic coefficient overflow");
                next[i] = next[i]
                    .checked_sub(c)
                    .expect("cyclotomic coefficient overflow");
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if moebius(e / d) == -1 {
            // exact division by x^d - 1: p[i] = q[i-d] - q[i]
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i64; qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev
                    .checked_sub(poly[i])
                    .expect("cyclotomic coefficient overflow");
            }
            poly = q;
        }
    }
    debug_assert_eq!(poly.len() as u64, euler_phi(e) + 1);
    poly
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn cyclotomic_cached(e: u64) -> Arc<Vec<i64>> {
    assert!(e >= 1, "conductor must be positive");
    if let Some(p) = cache().lock().unwrap().get(&e) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(e));
    cache().lock().unwrap().insert(e, p.clone());
    p
}

/// The `e`-th cyclotomic polynomial, coefficients in ascending degree.
pub fn cyclotomic_polynomial(e: u64) -> Vec<i64> {
    cyclotomic_cached(e).as_ref().clone()
}

/// Reduces `sum v[j] z^j` (any length) modulo `z^e - 1` and then modulo `Phi_e`,
/// returning the `phi(e)` power-basis coefficients.
pub(crate) fn reduce<T: Coeff>(e: u64, v: Vec<T>) -> Vec<T> {
    let e_us = e as usize;
    let mut folded: Vec<T> = if v.len() <= e_us {
        let mut v = v;
        v.resize(e_us, T::zero());
        v
    } else {
        let mut f = vec![T::zero(); e_us];
        for (j, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                f[j % e_us] = f[j % e_us].clone() + c;
            }
        }
        f
    };
    let phi_poly = cyclotomic_cached(e);
    let deg = phi_poly.len() - 1;
    let terms: Vec<(usize, T)> = phi_poly[..deg]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(j, &c)| (j, T::from_int(c)))
        .collect();
    for i in (deg..folded.len()).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[i], T::zero());
        let base = i - deg;
        for (j, pj) in &terms {
            let t = folded[base + j].clone() - c.clone() * pj.clone();
            folded[base + j] = t;
        }
    }
    folded.truncate(deg);
    folded
}

/// Attempts to rewrite a canonical vector at conductor `e` as one at `e / p`.
fn descend<T: Coeff>(e: u64, p: u64, k: u32, v: &[T]) -> Option<Vec<T>> {
    let m = e / p;
    if k >= 2 {
        // Phi_e(x) = Phi_m(x^p): the value lies in Q(zeta_m) iff only exponents
        // divisible by p occur.
        if v.iter()
            .enumerate()
            .any(|(j, c)| j as u64 % p != 0 && !c.is_zero())
        {
            return None;
        }
        return Some(v.iter().step_by(p as usize).cloned().collect());
    }
    // p exactly divides e: zeta_e^j = zeta_m^{j*alpha} * zeta_p^{j*beta}.
    let alpha = if m == 1 {
        0
    } else {
        inv_mod(p % m, m).unwrap()
    };
    let beta = inv_mod(m % p, p).unwrap();
    let mut parts: Vec<Vec<T>> = vec![vec![T::zero(); m as usize]; p as usize];
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u64;
        let slot = &mut parts[((j * beta) % p) as usize][((j * alpha) % m) as usize];
        *slot = slot.clone() + c.clone();
    }
    let parts: Vec<Vec<T>> = parts.into_iter().map(|part| reduce(m, part)).collect();
    // v = sum_{b >= 1} zeta_p^b (C_b - C_0); rational over Q(zeta_m) iff all C_b agree for b >= 1.
    if parts[2..].iter().any(|part| part != &parts[1]) {
        return None;
    }
    Some(
        parts[0]
            .iter()
            .zip(&parts[1])
            .map(|(a, b)| a.clone() - b.clone())
            .collect(),
    )
}

/// Lowers a canonical vector to its minimal conductor.
pub(crate) fn minimize<T: Coeff>(mut e: u64, mut v: Vec<T>) -> (u64, Vec<T>) {
    'outer: loop {
        if e == 1 {
            break;
        }
        for (p, k) in factorize(e) {
            if let Some(w) = descend(e, p, k, &v) {
                e /= p;
                v = w;
                continue 'outer;
            }
        }
        break;
    }
    (e, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn phi_105_has_a_coefficient_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len(), 49);
        assert!(p.contains(&-2));
    }

    /// x^e - 1 is the product of Phi_d over the divisors of e.
    #[test]
    fn divisor_product_recovers_xe_minus_one() {
        for e in [6u64, 8, 9, 12, 15, 30] {
            let mut prod = vec![1i64];
            for d in (1..=e).filter(|d| e % d == 0) {
                let f = cyclotomic_polynomial(d);
                let mut next = vec![0i64; prod.len() + f.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![0i64; e as usize + 1];
            expect[0] = -1;
            expect[e as usize] = 1;
            assert_eq!(prod, expect, "e = {e}");
        }
    }
}
