//! Subgroups, series, structural predicates and Frobenius decompositions.

mod classes;
mod frobenius;

pub use classes::{conjugacy_classes, ConjugacyClasses};
pub use frobenius::{frobenius_decomposition, is_suzuki_2group_kernel, transitive_on_involutions};

use crate::arith::{factorize, prime_power};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// A subgroup as a sorted member list plus a membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(g: &Group, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens
            .iter()
            .copied()
            .filter(|&x| x != g.identity())
            .collect();
        let mut members = g.closure(&gens);
        let mut mask = vec![false; g.order()];
        for &x in &members {
            mask[x as usize] = true;
        }
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators: gens,
        }
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::generated(g, g.generators())
    }

    pub fn trivial(g: &Group) -> Subgroup {
        Subgroup::generated(g, &[])
    }

    /// Wraps a set already known to be a subgroup and picks generators greedily.
    pub fn from_members(g: &Group, mut members: Vec<Elem>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; g.order()];
        for &x in &members {
            mask[x as usize] = true;
        }
        let mut gens = Vec::new();
        let mut inside = vec![false; g.order()];
        inside[g.identity() as usize] = true;
        let mut count = 1;
        for &x in &members {
            if count == members.len() {
                break;
            }
            if !inside[x as usize] {
                gens.push(x);
                let c = g.closure(&gens);
                count = c.len();
                for y in c {
                    inside[y as usize] = true;
                }
            }
        }
        Subgroup {
            members,
            mask,
            generators: gens,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// Closure of `seeds` under conjugation by `s`, as a subgroup.
pub fn normal_closure_in(g: &Group, s: &Subgroup, seeds: &[Elem]) -> Subgroup {
    let mut gens: Vec<Elem> = Vec::new();
    let mut h = Subgroup::trivial(g);
    let mut pending: Vec<Elem> = seeds.to_vec();
    while let Some(x) = pending.pop() {
        if h.contains(x) {
            continue;
        }
        gens.push(x);
        h = Subgroup::generated(g, &gens);
        // new conjugates of every generator
        for &y in &gens {
            for &t in s.generators() {
                let c = g.conj(y, t);
                if !h.contains(c) {
                    pending.push(c);
                }
            }
        }
    }
    h
}

pub fn normal_closure(g: &Group, seeds: &[Elem]) -> Subgroup {
    normal_closure_in(g, &Subgroup::whole(g), seeds)
}

/// `[a, b]` for subgroups normalized by `s`, generated from generator commutators.
fn commutator_in(g: &Group, s: &Subgroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut seeds = Vec::new();
    for &x in a.generators() {
        for &y in b.generators() {
            let c = g.commutator(x, y);
            if c != g.identity() {
                seeds.push(c);
            }
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    normal_closure_in(g, s, &seeds)
}

pub fn derived_subgroup_in(g: &Group, s: &Subgroup) -> Subgroup {
    commutator_in(g, s, s, s)
}

pub fn derived_subgroup(g: &Group) -> Subgroup {
    derived_subgroup_in(g, &Subgroup::whole(g))
}

/// `S = S_0 > S_1 > ...` until it stabilizes; the stable term is last.
pub fn derived_series_in(g: &Group, s: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![s.clone()];
    loop {
        let next = derived_subgroup_in(g, out.last().unwrap());
        if next.order() == out.last().unwrap().order() {
            return out;
        }
        out.push(next);
    }
}

pub fn derived_series(g: &Group) -> Vec<Subgroup> {
    derived_series_in(g, &Subgroup::whole(g))
}

/// `S = g_1 > g_2 = [S, S] > g_3 = [g_2, S] > ...` until it stabilizes.
pub fn lower_central_series_in(g: &Group, s: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![s.clone()];
    loop {
        let next = commutator_in(g, s, out.last().unwrap(), s);
        if next.order() == out.last().unwrap().order() {
            return out;
        }
        out.push(next);
    }
}

pub fn lower_central_series(g: &Group) -> Vec<Subgroup> {
    lower_central_series_in(g, &Subgroup::whole(g))
}

/// The stable term of the lower central series.
pub fn nilpotent_residual_in(g: &Group, s: &Subgroup) -> Subgroup {
    lower_central_series_in(g, s).pop().unwrap()
}

pub fn nilpotent_residual(g: &Group) -> Subgroup {
    nilpotent_residual_in(g, &Subgroup::whole(g))
}

pub fn center_in(g: &Group, s: &Subgroup) -> Subgroup {
    let members = s
        .members()
        .iter()
        .copied()
        .filter(|&x| s.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::from_members(g, members)
}

pub fn center(g: &Group) -> Subgroup {
    center_in(g, &Subgroup::whole(g))
}

pub fn centralizer_in(g: &Group, s: &Subgroup, x: Elem) -> Subgroup {
    let members = s
        .members()
        .iter()
        .copied()
        .filter(|&y| g.mul(x, y) == g.mul(y, x))
        .collect();
    Subgroup::from_members(g, members)
}

pub fn centralizer(g: &Group, x: Elem) -> Subgroup {
    centralizer_in(g, &Subgroup::whole(g), x)
}

pub fn is_abelian_in(g: &Group, s: &Subgroup) -> bool {
    let gens = s.generators();
    gens.iter()
        .enumerate()
        .all(|(i, &x)| gens[i + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

pub fn is_abelian(g: &Group) -> bool {
    is_abelian_in(g, &Subgroup::whole(g))
}

pub fn is_nilpotent_in(g: &Group, s: &Subgroup) -> bool {
    nilpotent_residual_in(g, s).is_trivial()
}

pub fn is_nilpotent(g: &Group) -> bool {
    is_nilpotent_in(g, &Subgroup::whole(g))
}

pub fn is_solvable_in(g: &Group, s: &Subgroup) -> bool {
    derived_series_in(g, s).last().unwrap().is_trivial()
}

pub fn is_solvable(g: &Group) -> bool {
    is_solvable_in(g, &Subgroup::whole(g))
}

pub fn is_perfect(g: &Group) -> bool {
    derived_subgroup(g).order() == g.order()
}

/// The prime `p` when the order is a positive power of `p`.
pub fn is_p_group_order(order: usize) -> Option<u64> {
    prime_power(order as u64).map(|(p, _)| p)
}

pub fn is_p_group(g: &Group) -> Option<u64> {
    is_p_group_order(g.order())
}

pub fn is_cyclic(g: &Group, s: &Subgroup) -> bool {
    s.members()
        .iter()
        .any(|&x| g.element_order(x) as usize == s.order())
}

/// `(q, n)` when `s` is elementary abelian of order `q^n > 1`.
pub fn is_elementary_abelian(g: &Group, s: &Subgroup) -> Option<(u64, u32)> {
    let (q, n) = prime_power(s.order() as u64)?;
    (is_abelian_in(g, s) && s.members().iter().all(|&x| g.element_order(x) as u64 <= q))
        .then_some((q, n))
}

pub fn is_normal(g: &Group, s: &Subgroup) -> bool {
    s.generators()
        .iter()
        .all(|&x| g.generators().iter().all(|&t| s.contains(g.conj(x, t))))
}

/// True iff every non-identity element of `k` has normal closure `k`.
pub fn is_minimal_normal_under(g: &Group, k: &Subgroup) -> Result<bool> {
    if !is_normal(g, k) {
        return Err(Error::NotNormal);
    }
    if k.is_trivial() {
        return Ok(false);
    }
    // one element per G-class suffices
    let mut done = vec![false; g.order()];
    for &x in k.members() {
        if x == g.identity() || done[x as usize] {
            continue;
        }
        if normal_closure(g, &[x]).order() != k.order() {
            return Ok(false);
        }
        let mut orbit = vec![x];
        done[x as usize] = true;
        while let Some(y) = orbit.pop() {
            for &t in g.generators() {
                let z = g.conj(y, t);
                if !std::mem::replace(&mut done[z as usize], true) {
                    orbit.push(z);
                }
            }
        }
    }
    Ok(true)
}

/// Order 8, a unique involution and not cyclic.
pub fn is_quaternion8(g: &Group, s: &Subgroup) -> bool {
    s.order() == 8
        && s.members()
            .iter()
            .filter(|&&x| g.element_order(x) == 2)
            .count()
            == 1
        && !is_cyclic(g, s)
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::realize;

    #[test]
    fn s3_structure() {
        let g = realize(&catalog::symmetric(3)).unwrap();
        let cc = conjugacy_classes(&g);
        let mut sizes = cc.sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cc.reps()[0], g.identity());
        assert_eq!(derived_subgroup(&g).order(), 3);
        assert_eq!(nilpotent_residual(&g).order(), 3);
        assert!(is_solvable(&g) && !is_nilpotent(&g) && !is_abelian(&g));
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(normal_closure(&g, &[t]).order(), 6);
        let c = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(centralizer(&g, c).order(), 3);
        assert_eq!(centralizer(&g, g.identity()).order(), 6);
        assert_eq!(*cc.power_map(-1), (0..3).collect::<Vec<u32>>());
    }

    #[test]
    fn predicates_on_small_groups() {
        let c6 = realize(&catalog::cyclic(6)).unwrap();
        assert!(is_abelian(&c6) && is_nilpotent(&c6) && is_cyclic(&c6, &Subgroup::whole(&c6)));
        let q8 = realize(&catalog::extraspecial(2, 1, true)).unwrap();
        assert_eq!(is_p_group(&q8), Some(2));
        assert_eq!(center(&q8).order(), 2);
        assert!(is_quaternion8(&q8, &Subgroup::whole(&q8)));
        let a5 = realize(&catalog::alternating5()).unwrap();
        assert!(is_perfect(&a5) && !is_solvable(&a5));
        assert_eq!(lower_central_series(&a5).len(), 1);
    }

    #[test]
    fn minimal_normality() {
        let a4 = realize(&catalog::affine_frobenius(2, 2, 1)).unwrap();
        let v4 = nilpotent_residual(&a4);
        assert_eq!(v4.order(), 4);
        assert!(is_minimal_normal_under(&a4, &v4).unwrap());
        let d8 = realize(&catalog::dihedral(4)).unwrap();
        let c4 = Subgroup::generated(
            &d8,
            &[d8.elements().find(|&x| d8.element_order(x) == 4).unwrap()],
        );
        assert!(!is_minimal_normal_under(&d8, &c4).unwrap());
        let s3 = realize(&catalog::symmetric(3)).unwrap();
        let t = Subgroup::generated(
            &s3,
            &[s3.elements().find(|&x| s3.element_order(x) == 2).unwrap()],
        );
        assert!(matches!(
            is_minimal_normal_under(&s3, &t),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn c5_squaring_is_a_four_cycle() {
        let g = realize(&catalog::cyclic(5)).unwrap();
        let cc = conjugacy_classes(&g);
        let p = cc.power_map(2);
        assert_eq!(p[0], 0);
        let mut c = 1usize;
        let mut seen = vec![c];
        for _ in 0..3 {
            c = p[c] as usize;
            seen.push(c);
        }
        seen.sort();
        assert_eq!(seen, vec![1, 2, 3, 4]);
        assert_eq!(p[c] as usize, 1);
    }
}
