//! Unreduced sums of roots of unity with integer coefficients.
//!
//! Orthogonality sums are accumulated as `sum a_j z_e^j` over all `0 <= j < e`
//! without basis reduction, and compared against an integer with a recursive
//! zero test that splits `Q(z_e)` over `Q(z_{e/p})` one prime at a time.

use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive};

use super::{Coeff, Cyclotomic};
use crate::arith::{factorize, inv_mod};

/// Integer types usable as accumulator coefficients.
pub trait AccInt: Clone + Num + Signed + From<i64> + AddAssign + Send {}

impl AccInt for i128 {}
impl AccInt for BigInt {}

/// True iff `sum v[j] z_e^j = 0`, where `v.len() == e`.
pub fn exp_form_is_zero<I: AccInt>(v: &[I], e: u64) -> bool {
    assert_eq!(
        v.len() as u64,
        e,
        "exponent form must have one slot per root"
    );
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    if e == 1 {
        return false;
    }
    let (p, k) = factorize(e)[0];
    let m = e / p;
    let (pu, mu) = (p as usize, m as usize);
    if k >= 2 {
        // {1, z_e, ..., z_e^(p-1)} is a basis of Q(z_e) over Q(z_m).
        (0..pu).all(|s| {
            let part: Vec<I> = (0..mu).map(|i| v[pu * i + s].clone()).collect();
            exp_form_is_zero(&part, m)
        })
    } else {
        // {z_p, ..., z_p^(p-1)} is a basis of Q(z_e) over Q(z_m).
        let alpha = if m == 1 {
            0
        } else {
            inv_mod(p % m, m).unwrap()
        };
        let beta = inv_mod(m % p, p).unwrap();
        let mut parts = vec![vec![I::zero(); mu]; pu];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j as u64;
            parts[((j * beta) % p) as usize][((j * alpha) % m) as usize] += c.clone();
        }
        (1..pu).all(|b| {
            let diff: Vec<I> = parts[b]
                .iter()
                .zip(&parts[0])
                .map(|(x, y)| x.clone() - y.clone())
                .collect();
            exp_form_is_zero(&diff, m)
        })
    }
}

/// Integral power-basis terms of a cyclotomic integer.
#[derive(Clone, Debug)]
pub struct IntTerms {
    pub conductor: u64,
    pub terms: Vec<(u64, i64)>,
}

impl IntTerms {
    /// `None` when a coefficient is not an integer or does not fit in `i64`.
    pub fn from_cyclotomic<T: Coeff>(v: &Cyclotomic<T>) -> Option<Self> {
        let terms = v
            .terms()
            .map(|(j, c)| {
                let (n, d) = c.to_ratio();
                if d != BigInt::from(1) {
                    return None;
                }
                n.to_i64().map(|n| (j, n))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IntTerms {
            conductor: v.conductor(),
            terms,
        })
    }

    pub fn l1_norm(&self) -> u128 {
        self.terms
            .iter()
            .map(|&(_, c)| c.unsigned_abs() as u128)
            .sum()
    }
}

/// Accumulator for `sum_c w_c * a_c * conj(b_c)` at a fixed conductor.
pub struct ExponentSum<I: AccInt> {
    e: u64,
    acc: Vec<I>,
}

impl<I: AccInt> ExponentSum<I> {
    pub fn new(e: u64) -> Self {
        ExponentSum {
            e,
            acc: vec![I::zero(); e as usize],
        }
    }

    /// Adds `weight * a * conj(b)`; both conductors must divide the accumulator's.
    pub fn add_product_conj(&mut self, weight: i64, a: &IntTerms, b: &IntTerms) {
        let (sa, sb) = (self.e / a.conductor, self.e / b.conductor);
        for &(i, ca) in &a.terms {
            let ea = i * sa;
            let wa = I::from(weight) * I::from(ca);
            for &(j, cb) in &b.terms {
                let eb = (self.e - (j * sb) % self.e) % self.e;
                self.acc[((ea + eb) % self.e) as usize] += wa.clone() * I::from(cb);
            }
        }
    }

    pub fn equals_integer(&self, r: i64) -> bool {
        let mut v = self.acc.clone();
        v[0] = v[0].clone() - I::from(r);
        exp_form_is_zero(&v, self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyc;

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for e in [1u64, 2, 3, 4, 6, 8, 9, 12, 30] {
            let v = vec![1i128; e as usize];
            assert_eq!(exp_form_is_zero(&v, e), e > 1, "e = {e}");
        }
    }

    #[test]
    fn single_root_is_nonzero() {
        for e in [2u64, 5, 12, 20] {
            for j in 0..e as usize {
                let mut v = vec![0i128; e as usize];
                v[j] = 1;
                assert!(!exp_form_is_zero(&v, e));
            }
        }
    }

    #[test]
    fn agrees_with_canonical_reduction() {
        // |z_5 + z_5^4|^2 - (z_5 + z_5^4)^2 = 0 while |1 + z_8|^2 - 2 != 0
        let a = &Cyc::zeta(5) + &Cyc::zeta_pow(5, 4);
        let ta = IntTerms::from_cyclotomic(&a).unwrap();
        let mut s = ExponentSum::<i128>::new(5);
        s.add_product_conj(1, &ta, &ta);
        let sq = (&a * &a).coeffs().to_vec();
        let mut t = ExponentSum::<i128>::new(5);
        for (j, c) in sq.iter().enumerate() {
            let c: i64 = c.to_integer().try_into().unwrap();
            t.acc[j] += c as i128;
        }
        let diff: Vec<i128> = s.acc.iter().zip(&t.acc).map(|(x, y)| x - y).collect();
        assert!(exp_form_is_zero(&diff, 5));

        let b = &Cyc::one() + &Cyc::zeta(8);
        let tb = IntTerms::from_cyclotomic(&b).unwrap();
        let mut u = ExponentSum::<BigInt>::new(8);
        u.add_product_conj(1, &tb, &tb);
        assert!(!u.equals_integer(2));
    }
}
