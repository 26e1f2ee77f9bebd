//! Exact checks of the orthogonality relations.

use num_bigint::BigInt;

use super::CharacterTable;
use crate::cyclotomic::{AccInt, ExponentSum, IntTerms};
use crate::Cyc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// First violated identity, if any.
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn fail(msg: String) -> VerifyReport {
    VerifyReport { failure: Some(msg) }
}

/// Checks degrees, both orthogonality relations and `sum d^2 = |G|`.
pub fn verify_table(t: &CharacterTable) -> VerifyReport {
    let k = t.k();
    let n = t.order();
    if k == 0 || t.values().len() != k {
        return fail("table is not square".into());
    }
    if t.row(0).iter().any(|v| *v != Cyc::one()) {
        return fail("first row is not the principal character".into());
    }
    if t.classes()[0].order != 1 || t.classes()[0].size != 1 {
        return fail("first class is not the identity".into());
    }
    let mut sum_sq: u128 = 0;
    for (i, &d) in t.degrees().iter().enumerate() {
        if d == 0 || t.row(i)[0] != Cyc::from_int(d as i64) {
            return fail(format!(
                "row {i}: value at the identity is not a positive integer degree"
            ));
        }
        if n % d != 0 {
            return fail(format!("row {i}: degree {d} does not divide {n}"));
        }
        sum_sq += d as u128 * d as u128;
    }
    if sum_sq != n as u128 {
        return fail(format!("sum of squared degrees is {sum_sq}, not {n}"));
    }
    if t.sizes().iter().sum::<u64>() != n {
        return fail("class sizes do not sum to the group order".into());
    }

    let mut terms = Vec::with_capacity(k);
    for (i, row) in t.values().iter().enumerate() {
        let mut r = Vec::with_capacity(k);
        for (c, v) in row.iter().enumerate() {
            match IntTerms::from_cyclotomic(v) {
                Some(it) if t.exponent() % it.conductor == 0 => r.push(it),
                _ => {
                    return fail(format!(
                        "row {i}, class {c}: value is not an integer of Q(z_exponent)"
                    ))
                }
            }
        }
        terms.push(r);
    }
    let sizes: Vec<i64> = t.sizes().iter().map(|&s| s as i64).collect();
    let e = t.exponent();

    // sum_c |C_c| chi_i(c) conj(chi_j(c)) = |G| delta_ij
    for i in 0..k {
        for j in i..k {
            let pairs = (0..k).map(|c| (sizes[c], &terms[i][c], &terms[j][c]));
            let target = if i == j { n as i64 } else { 0 };
            if !sum_equals(e, pairs, target) {
                return fail(format!("row orthogonality fails for rows {i} and {j}"));
            }
        }
    }
    // sum_i chi_i(c) conj(chi_i(c')) = delta_cc' |G| / |C_c|
    for c in 0..k {
        for c2 in c..k {
            let pairs = (0..k).map(|i| (1, &terms[i][c], &terms[i][c2]));
            let target = if c == c2 {
                (n / sizes[c] as u64) as i64
            } else {
                0
            };
            if !sum_equals(e, pairs, target) {
                return fail(format!(
                    "column orthogonality fails for classes {c} and {c2}"
                ));
            }
        }
    }
    VerifyReport { failure: None }
}

fn sum_equals<'a, I>(e: u64, pairs: I, target: i64) -> bool
where
    I: Iterator<Item = (i64, &'a IntTerms, &'a IntTerms)> + Clone,
{
    let bound: u128 = pairs
        .clone()
        .map(|(w, a, b)| {
            (w.unsigned_abs() as u128)
                .saturating_mul(a.l1_norm())
                .saturating_mul(b.l1_norm())
        })
        .fold(0u128, |acc, x| acc.saturating_add(x));
    if bound < (1u128 << 120) {
        accumulate::<i128, _>(e, pairs, target)
    } else {
        accumulate::<BigInt, _>(e, pairs, target)
    }
}

fn accumulate<'a, A: AccInt, I>(e: u64, pairs: I, target: i64) -> bool
where
    I: Iterator<Item = (i64, &'a IntTerms, &'a IntTerms)>,
{
    let mut s = ExponentSum::<A>::new(e);
    for (w, a, b) in pairs {
        s.add_product_conj(w, a, b);
    }
    s.equals_integer(target)
}
