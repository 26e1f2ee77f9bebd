use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::group::{Elem, Group};

/// Conjugacy classes with power data.
///
/// Class 0 is the identity; the others are numbered by their least element.
pub struct ConjugacyClasses {
    reps: Vec<Elem>,
    members: Vec<Vec<Elem>>,
    class_of: Vec<u32>,
    orders: Vec<u32>,
    /// `powers[c][l]` is the class of `rep_c^l` for `l < orders[c]`.
    powers: Vec<Vec<u32>>,
    exponent: u64,
    power_cache: RwLock<HashMap<u64, Arc<Vec<u32>>>>,
}

impl std::fmt::Debug for ConjugacyClasses {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConjugacyClasses")
            .field("k", &self.k())
            .field("sizes", &self.sizes())
            .finish()
    }
}

/// Orbits under conjugation by the generators.
pub fn conjugacy_classes(g: &Group) -> ConjugacyClasses {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    let gens: Vec<(Elem, Elem)> = g.generators().iter().map(|&s| (s, g.inv(s))).collect();
    let order = std::iter::once(g.identity()).chain(g.elements().filter(|&x| x != g.identity()));
    for x in order {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        class_of[x as usize] = c;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &(s, si) in &gens {
                let z = g.mul(g.mul(si, y), s);
                if class_of[z as usize] == u32::MAX {
                    class_of[z as usize] = c;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        reps.push(x);
        members.push(orbit);
    }
    let orders: Vec<u32> = reps.iter().map(|&r| g.element_order(r)).collect();
    let powers = reps
        .iter()
        .zip(&orders)
        .map(|(&r, &o)| {
            let mut out = Vec::with_capacity(o as usize);
            let mut y = g.identity();
            for _ in 0..o {
                out.push(class_of[y as usize]);
                y = g.mul(y, r);
            }
            out
        })
        .collect();
    ConjugacyClasses {
        reps,
        members,
        class_of,
        orders,
        powers,
        exponent: g.exponent(),
        power_cache: RwLock::new(HashMap::new()),
    }
}

impl ConjugacyClasses {
    pub fn k(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn members(&self, c: usize) -> &[Elem] {
        &self.members[c]
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.len() as u64).collect()
    }

    pub fn size(&self, c: usize) -> u64 {
        self.members[c].len() as u64
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x as usize] as usize
    }

    /// Element order of the class representatives.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `powers(c)[l]` is the class of `g^l` for `g` in class `c`, `l < order`.
    pub fn powers(&self, c: usize) -> &[u32] {
        &self.powers[c]
    }

    /// Class of `g^m` for `g` in class `c`.
    pub fn power_class(&self, c: usize, m: i64) -> usize {
        let o = self.orders[c] as i64;
        self.powers[c][m.rem_euclid(o) as usize] as usize
    }

    /// The map `class(g) -> class(g^m)`, memoized by `m mod exponent`.
    pub fn power_map(&self, m: i64) -> Arc<Vec<u32>> {
        let key = m.rem_euclid(self.exponent as i64) as u64;
        if let Some(p) = self.power_cache.read().unwrap().get(&key) {
            return p.clone();
        }
        let map: Arc<Vec<u32>> = Arc::new(
            (0..self.k())
                .map(|c| self.power_class(c, key as i64) as u32)
                .collect(),
        );
        self.power_cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert(map)
            .clone()
    }

    /// Class of the inverses.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }
}
