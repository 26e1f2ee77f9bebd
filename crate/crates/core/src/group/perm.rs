//! Enumerated permutation groups with fast base-image lookup.

use std::collections::HashMap;

use super::Elem;
use crate::error::{Error, Result};

/// All elements of a permutation group, stored as image lists.
///
/// Elements are identified by their images on a base: a short list of points
/// whose images already separate the group. Products only need those images.
pub struct PermData {
    degree: usize,
    images: Vec<u16>,
    base: Vec<u16>,
    lookup: HashMap<Box<[u16]>, Elem>,
}

impl PermData {
    /// Breadth-first closure; element 0 is the identity. Returns the data and
    /// the index of each generator.
    pub fn closure(
        degree: usize,
        gens: &[Vec<u32>],
        budget: u128,
    ) -> Result<(PermData, Vec<Elem>)> {
        let gens: Vec<Vec<u16>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as u16).collect())
            .collect();
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut full: HashMap<Box<[u16]>, Elem> = HashMap::new();
        full.insert(images.clone().into_boxed_slice(), 0);
        let mut next = vec![0u16; degree];
        let mut i = 0usize;
        while i < full.len() {
            for g in &gens {
                let x = &images[i * degree..(i + 1) * degree];
                for (p, slot) in next.iter_mut().enumerate() {
                    *slot = g[x[p] as usize];
                }
                if !full.contains_key(next.as_slice()) {
                    let idx = full.len() as u128;
                    if idx + 1 > budget {
                        return Err(Error::BudgetExceeded {
                            order: idx + 1,
                            budget,
                        });
                    }
                    full.insert(next.clone().into_boxed_slice(), idx as Elem);
                    images.extend_from_slice(&next);
                }
            }
            i += 1;
        }
        let gen_idx = gens.iter().map(|g| full[g.as_slice()]).collect();
        drop(full);
        let n = images.len() / degree;
        let base = choose_base(degree, n, &images);
        let mut lookup = HashMap::with_capacity(n);
        for x in 0..n {
            let key: Box<[u16]> = base
                .iter()
                .map(|&b| images[x * degree + b as usize])
                .collect();
            lookup.insert(key, x as Elem);
        }
        Ok((
            PermData {
                degree,
                images,
                base,
                lookup,
            },
            gen_idx,
        ))
    }

    pub fn len(&self) -> usize {
        self.images.len() / self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[u16] {
        &self.base
    }

    pub fn images(&self, x: Elem) -> &[u16] {
        let d = self.degree;
        &self.images[x as usize * d..(x as usize + 1) * d]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (ia, ib) = (self.images(a), self.images(b));
        let mut buf = [0u16; 16];
        if self.base.len() <= buf.len() {
            for (slot, &p) in buf.iter_mut().zip(&self.base) {
                *slot = ib[ia[p as usize] as usize];
            }
            self.lookup[&buf[..self.base.len()]]
        } else {
            let key: Vec<u16> = self
                .base
                .iter()
                .map(|&p| ib[ia[p as usize] as usize])
                .collect();
            self.lookup[key.as_slice()]
        }
    }

    pub fn inverse_of(&self, a: Elem) -> Elem {
        let ia = self.images(a);
        let key: Vec<u16> = self
            .base
            .iter()
            .map(|&p| ia.iter().position(|&y| y == p).unwrap() as u16)
            .collect();
        self.lookup[key.as_slice()]
    }

    /// Cycle notation with fixed points omitted; the identity is `()`.
    pub fn cycle_string(&self, x: Elem) -> String {
        let img = self.images(x);
        let mut seen = vec![false; self.degree];
        let mut out = String::new();
        for start in 0..self.degree {
            if seen[start] || img[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = img[start] as usize;
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = img[p] as usize;
            }
            let parts: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
            out.push('(');
            out.push_str(&parts.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Greedily adds points until the images on them tell all elements apart.
fn choose_base(degree: usize, n: usize, images: &[u16]) -> Vec<u16> {
    let mut base = Vec::new();
    // class id of each element under the current base
    let mut cls = vec![0u32; n];
    let mut classes = 1usize;
    for p in 0..degree {
        if classes == n {
            break;
        }
        let mut refine: HashMap<(u32, u16), u32> = HashMap::new();
        let new: Vec<u32> = (0..n)
            .map(|x| {
                let key = (cls[x], images[x * degree + p]);
                let next = refine.len() as u32;
                *refine.entry(key).or_insert(next)
            })
            .collect();
        if refine.len() > classes {
            classes = refine.len();
            cls = new;
            base.push(p as u16);
        }
    }
    base
}
