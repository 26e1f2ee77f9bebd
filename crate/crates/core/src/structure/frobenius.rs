use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

use super::{
    center_in, conjugacy_classes, derived_subgroup_in, is_abelian_in, is_cyclic, is_p_group_order,
    nilpotent_residual, Subgroup,
};

const MAX_EXTENSIONS: usize = 10_000;

/// `(K, L)` with `K` the nilpotent residual, when `G = K L` is a Frobenius group.
pub fn frobenius_decomposition(g: &Group) -> Option<(Subgroup, Subgroup)> {
    let k = nilpotent_residual(g);
    let (nk, n) = (k.order() as u64, g.order() as u64);
    if k.is_trivial() || nk == n {
        return None;
    }
    let m = n / nk;
    if gcd(nk, m) != 1 {
        return None;
    }
    // C_G(x) <= K for 1 != x in K; one x per G-class is enough.
    let cc = conjugacy_classes(g);
    for (c, &x) in cc.reps().iter().enumerate() {
        if c == 0 || !k.contains(x) {
            continue;
        }
        if g.elements()
            .any(|y| !k.contains(y) && g.mul(x, y) == g.mul(y, x))
        {
            return None;
        }
    }
    let l = complement(g, m, nk)?;
    Some((k, l))
}

/// Grows a subgroup of order dividing `m` one element at a time, trying
/// elements of order coprime to `nk` by descending order then index.
fn complement(g: &Group, m: u64, nk: u64) -> Option<Subgroup> {
    let mut cands: Vec<Elem> = g
        .elements()
        .filter(|&x| x != g.identity() && gcd(g.element_order(x) as u64, nk) == 1)
        .collect();
    cands.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut l = Subgroup::trivial(g);
    let mut tries = 0;
    for &x in &cands {
        if l.order() as u64 == m {
            break;
        }
        if l.contains(x) {
            continue;
        }
        tries += 1;
        if tries > MAX_EXTENSIONS {
            return None;
        }
        let mut gens = l.generators().to_vec();
        gens.push(x);
        let h = Subgroup::generated(g, &gens);
        if m % h.order() as u64 == 0 {
            l = h;
        }
    }
    (l.order() as u64 == m).then_some(l)
}

/// Whether conjugation by `l` is transitive on the involutions of `k`.
pub fn transitive_on_involutions(g: &Group, l: &Subgroup, k: &Subgroup) -> Result<bool> {
    let normalizes = l
        .generators()
        .iter()
        .all(|&t| k.generators().iter().all(|&x| k.contains(g.conj(x, t))));
    if !normalizes {
        return Err(Error::NotNormal);
    }
    let involutions: Vec<Elem> = k
        .members()
        .iter()
        .copied()
        .filter(|&x| g.element_order(x) == 2)
        .collect();
    let Some(&first) = involutions.first() else {
        return Ok(false);
    };
    let mut seen = vec![false; g.order()];
    seen[first as usize] = true;
    let mut orbit = vec![first];
    let mut i = 0;
    while i < orbit.len() {
        for &t in l.generators() {
            let z = g.conj(orbit[i], t);
            if !std::mem::replace(&mut seen[z as usize], true) {
                orbit.push(z);
            }
        }
        i += 1;
    }
    Ok(orbit.len() == involutions.len())
}

/// Non-abelian 2-group `K` with `K' = Z(K) = {x : x^2 = 1}`, `|K| = |K'|^2`,
/// `L` cyclic of order `|K'| - 1` and transitive on the involutions of `K`.
pub fn is_suzuki_2group_kernel(g: &Group, k: &Subgroup, l: &Subgroup) -> bool {
    if is_p_group_order(k.order()) != Some(2) || is_abelian_in(g, k) {
        return false;
    }
    let kd = derived_subgroup_in(g, k);
    let z = center_in(g, k);
    let omega: Vec<Elem> = k
        .members()
        .iter()
        .copied()
        .filter(|&x| g.mul(x, x) == g.identity())
        .collect();
    if kd.members() != z.members() || kd.members() != omega.as_slice() {
        return false;
    }
    if k.order() != kd.order() * kd.order() {
        return false;
    }
    if !is_cyclic(g, l) || l.order() + 1 != kd.order() {
        return false;
    }
    transitive_on_involutions(g, l, k).unwrap_or(false)
}
