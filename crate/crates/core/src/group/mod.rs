//! Concrete finite groups on dense element indices.

mod perm;
pub mod spec;

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::lcm;
use crate::error::{Error, Result};
pub use perm::PermData;
pub use spec::{parse_group_spec, GroupSpec, SpecKind};

/// An element, as an index into `0..order`.
pub type Elem = u32;

/// Groups up to this order get a stored multiplication table.
pub const TABLE_LIMIT: usize = 4096;
/// Associativity is checked on every triple up to this order.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 512;
const AXIOM_SAMPLES: usize = 10_000;
const AXIOM_SEED: u64 = 0xA5;

#[derive(Clone, Copy, Debug)]
pub struct RealizeOptions {
    pub element_budget: u128,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            element_budget: 2_000_000,
        }
    }
}

enum Shape {
    Table,
    Perm(PermData),
    Direct(Arc<Group>, Arc<Group>),
    /// `action[h * |N| + n]` is the image of `n` under `h`.
    Semidirect {
        kernel: Arc<Group>,
        actor: Arc<Group>,
        action: Vec<Elem>,
    },
}

pub struct Group {
    order: usize,
    identity: Elem,
    table: Option<Vec<u16>>,
    shape: Shape,
    inverse: Vec<Elem>,
    generators: Vec<Elem>,
    spec: GroupSpec,
    orders: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.spec.display_name())
            .field("order", &self.order)
            .finish()
    }
}

/// Realizes a spec with the default element budget.
pub fn realize(spec: &GroupSpec) -> Result<Group> {
    realize_with(spec, &RealizeOptions::default())
}

pub fn realize_with(spec: &GroupSpec, opts: &RealizeOptions) -> Result<Group> {
    let mut g = match &spec.kind {
        SpecKind::MultTable { table } => Group::from_table(table)?,
        SpecKind::PermGens { degree, generators } => Group::from_perms(*degree, generators, opts)?,
        SpecKind::DirectProduct { factors } => {
            let a = Arc::new(realize_with(&factors[0], opts)?);
            let b = Arc::new(realize_with(&factors[1], opts)?);
            direct_product_with(a, b, opts)?
        }
        SpecKind::Semidirect {
            kernel,
            actor,
            action,
        } => {
            let n = Arc::new(realize_with(kernel, opts)?);
            let h = Arc::new(realize_with(actor, opts)?);
            semidirect_product_with(n, h, action, opts)?
        }
        SpecKind::Family { name, params } => {
            let concrete = crate::catalog::expand_family(name, params)?;
            realize_with(&concrete, opts)?
        }
    };
    g.spec = spec.clone();
    Ok(g)
}

fn check_budget(order: u128, opts: &RealizeOptions) -> Result<()> {
    if order > opts.element_budget {
        return Err(Error::BudgetExceeded {
            order,
            budget: opts.element_budget,
        });
    }
    Ok(())
}

pub fn direct_product(g: Arc<Group>, h: Arc<Group>) -> Result<Group> {
    direct_product_with(g, h, &RealizeOptions::default())
}

/// Pairs `(l, r)` are stored at index `l + |G| * r`.
pub fn direct_product_with(g: Arc<Group>, h: Arc<Group>, opts: &RealizeOptions) -> Result<Group> {
    let (ng, nh) = (g.order(), h.order());
    check_budget(ng as u128 * nh as u128, opts)?;
    let order = ng * nh;
    let pair = |l: Elem, r: Elem| l + (ng as Elem) * r;
    let identity = pair(g.identity(), h.identity());
    let mut inverse = Vec::with_capacity(order);
    for r in 0..nh as Elem {
        for l in 0..ng as Elem {
            inverse.push(pair(g.inv(l), h.inv(r)));
        }
    }
    let mut generators: Vec<Elem> = g
        .generators()
        .iter()
        .map(|&l| pair(l, h.identity()))
        .collect();
    generators.extend(h.generators().iter().map(|&r| pair(g.identity(), r)));
    let spec = GroupSpec::direct_product(g.spec().clone(), h.spec().clone());
    let mut out = Group {
        order,
        identity,
        table: None,
        shape: Shape::Direct(g, h),
        inverse,
        generators,
        spec,
        orders: OnceLock::new(),
    };
    out.materialize_table();
    Ok(out)
}

pub fn semidirect_product(n: Arc<Group>, h: Arc<Group>, action: &[Vec<Elem>]) -> Result<Group> {
    semidirect_product_with(n, h, action, &RealizeOptions::default())
}

/// Pairs `(n, h)` are stored at index `n + |N| * h`, with
/// `(n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2)`.
pub fn semidirect_product_with(
    kernel: Arc<Group>,
    actor: Arc<Group>,
    action: &[Vec<Elem>],
    opts: &RealizeOptions,
) -> Result<Group> {
    let (nn, nh) = (kernel.order(), actor.order());
    check_budget(nn as u128 * nh as u128, opts)?;
    let hgens = actor.generators();
    if action.len() != hgens.len() {
        return Err(Error::Malformed(format!(
            "action lists {} permutations but the actor has {} generators",
            action.len(),
            hgens.len()
        )));
    }
    for (i, a) in action.iter().enumerate() {
        if a.len() != nn {
            return Err(Error::Malformed(format!(
                "action image {i} has {} entries, expected {nn}",
                a.len()
            )));
        }
        if let Some(&bad) = a.iter().find(|&&x| x as usize >= nn) {
            return Err(Error::OutOfRange {
                index: bad as u64,
                bound: nn as u64,
                context: format!("action image {i}"),
            });
        }
        if !is_automorphism(&kernel, a) {
            return Err(Error::NotAutomorphism(i));
        }
    }

    // Extend along the Cayley graph of the actor; every edge is checked, so
    // the result is a homomorphism iff no conflict is found.
    let mut act: Vec<Option<Vec<Elem>>> = vec![None; nh];
    act[actor.identity() as usize] = Some((0..nn as Elem).collect());
    let mut queue = VecDeque::from([actor.identity()]);
    while let Some(h) = queue.pop_front() {
        for (s, &gen) in hgens.iter().enumerate() {
            let x = actor.mul(h, gen) as usize;
            let ah = act[h as usize].as_ref().unwrap();
            let cand: Vec<Elem> = action[s].iter().map(|&y| ah[y as usize]).collect();
            match &act[x] {
                Some(existing) if *existing != cand => {
                    return Err(Error::NotHomomorphic(format!(
                        "conflicting images for actor element {x}"
                    )));
                }
                Some(_) => {}
                None => {
                    act[x] = Some(cand);
                    queue.push_back(x as Elem);
                }
            }
        }
    }
    let action_flat: Vec<Elem> = act
        .into_iter()
        .flat_map(|a| a.expect("actor generators generate the actor"))
        .collect();

    let order = nn * nh;
    let pair = |n: Elem, h: Elem| n + (nn as Elem) * h;
    let mut inverse = Vec::with_capacity(order);
    for h in 0..nh as Elem {
        let hi = actor.inv(h);
        for n in 0..nn as Elem {
            let img = action_flat[hi as usize * nn + kernel.inv(n) as usize];
            inverse.push(pair(img, hi));
        }
    }
    let mut generators: Vec<Elem> = kernel
        .generators()
        .iter()
        .map(|&n| pair(n, actor.identity()))
        .collect();
    generators.extend(hgens.iter().map(|&h| pair(kernel.identity(), h)));
    let spec = GroupSpec::new(SpecKind::Semidirect {
        kernel: Box::new(kernel.spec().clone()),
        actor: Box::new(actor.spec().clone()),
        action: action.to_vec(),
    });
    let mut out = Group {
        order,
        identity: pair(kernel.identity(), actor.identity()),
        table: None,
        shape: Shape::Semidirect {
            kernel,
            actor,
            action: action_flat,
        },
        inverse,
        generators,
        spec,
        orders: OnceLock::new(),
    };
    out.materialize_table();
    Ok(out)
}

fn is_automorphism(g: &Group, a: &[Elem]) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    for &x in a {
        if std::mem::replace(&mut seen[x as usize], true) {
            return false;
        }
    }
    let ok = |x: Elem, y: Elem| a[g.mul(x, y) as usize] == g.mul(a[x as usize], a[y as usize]);
    if n * n <= 1 << 20 {
        (0..n as Elem).all(|x| (0..n as Elem).all(|y| ok(x, y)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
        (0..AXIOM_SAMPLES).all(|_| ok(rng.gen_range(0..n as Elem), rng.gen_range(0..n as Elem)))
    }
}

impl Group {
    /// Builds a group from a validated multiplication table.
    pub fn from_table(rows: &[Vec<u32>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > u16::MAX as usize + 1 {
            return Err(Error::Malformed(
                "tables are limited to 65536 elements".into(),
            ));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Malformed(
                    "multiplication table must be square".into(),
                ));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::OutOfRange {
                        index: x as u64,
                        bound: n as u64,
                        context: "table".into(),
                    });
                }
                table.push(x as u16);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let mut inverse = vec![0 as Elem; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
            if at(y, x) != identity {
                return Err(Error::NotAGroup(format!("inverse of {x} is not two-sided")));
            }
            inverse[x] = y as Elem;
        }
        let mut g = Group {
            order: n,
            identity: identity as Elem,
            table: Some(table),
            shape: Shape::Table,
            inverse,
            generators: Vec::new(),
            spec: GroupSpec::new(SpecKind::MultTable {
                table: rows.to_vec(),
            }),
            orders: OnceLock::new(),
        };
        g.check_associative()?;
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Closure of permutation generators; composition applies the left factor first.
    pub fn from_perms(degree: usize, gens: &[Vec<u32>], opts: &RealizeOptions) -> Result<Group> {
        let (data, generators) = PermData::closure(degree, gens, opts.element_budget)?;
        let order = data.len();
        let inverse = (0..order as Elem).map(|x| data.inverse_of(x)).collect();
        let mut g = Group {
            order,
            identity: 0,
            table: None,
            shape: Shape::Perm(data),
            inverse,
            generators,
            spec: GroupSpec::new(SpecKind::PermGens {
                degree,
                generators: gens.to_vec(),
            }),
            orders: OnceLock::new(),
        };
        g.materialize_table();
        Ok(g)
    }

    fn materialize_table(&mut self) {
        if self.order > TABLE_LIMIT || self.table.is_some() {
            return;
        }
        let n = self.order;
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                t.push(self.mul(a, b) as u16);
            }
        }
        self.table = Some(t);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    /// The generators used for closures and actions, as element indices.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// The spec this group was realized from.
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        self.spec.display_name()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order as Elem
    }

    /// Factors, when the group was built as a direct product.
    pub fn direct_factors(&self) -> Option<(&Arc<Group>, &Arc<Group>)> {
        match &self.shape {
            Shape::Direct(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn perm_data(&self) -> Option<&PermData> {
        match &self.shape {
            Shape::Perm(p) => Some(p),
            _ => None,
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.table {
            return t[a as usize * self.order + b as usize] as Elem;
        }
        match &self.shape {
            Shape::Table => unreachable!("table groups always store their table"),
            Shape::Perm(p) => p.mul(a, b),
            Shape::Direct(g, h) => {
                let ng = g.order() as Elem;
                let (l1, r1) = (a % ng, a / ng);
                let (l2, r2) = (b % ng, b / ng);
                g.mul(l1, l2) + ng * h.mul(r1, r2)
            }
            Shape::Semidirect {
                kernel,
                actor,
                action,
            } => {
                let nn = kernel.order() as Elem;
                let (n1, h1) = (a % nn, a / nn);
                let (n2, h2) = (b % nn, b / nn);
                let img = action[(h1 * nn + n2) as usize];
                kernel.mul(n1, img) + nn * actor.mul(h1, h2)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `b^-1 a b`
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let mut base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn all_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| match &self.shape {
            Shape::Direct(g, h) => {
                let (og, oh) = (g.all_orders(), h.all_orders());
                let ng = g.order();
                (0..self.order)
                    .map(|x| lcm(og[x % ng] as u64, oh[x / ng] as u64) as u32)
                    .collect()
            }
            _ => self
                .elements()
                .map(|x| {
                    let mut y = x;
                    let mut m = 1;
                    while y != self.identity {
                        y = self.mul(y, x);
                        m += 1;
                    }
                    m
                })
                .collect(),
        })
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        self.all_orders()[x as usize]
    }

    pub fn exponent(&self) -> u64 {
        match &self.shape {
            Shape::Direct(g, h) => lcm(g.exponent(), h.exponent()),
            _ => self.all_orders().iter().fold(1, |e, &o| lcm(e, o as u64)),
        }
    }

    /// Display string for an element: cycle notation for permutations,
    /// pairs for products and the bare index otherwise.
    pub fn element_label(&self, x: Elem) -> String {
        match &self.shape {
            Shape::Table => x.to_string(),
            Shape::Perm(p) => p.cycle_string(x),
            Shape::Direct(g, h) => {
                let ng = g.order() as Elem;
                format!("({}, {})", g.element_label(x % ng), h.element_label(x / ng))
            }
            Shape::Semidirect { kernel, actor, .. } => {
                let nn = kernel.order() as Elem;
                format!(
                    "({}, {})",
                    kernel.element_label(x % nn),
                    actor.element_label(x / nn)
                )
            }
        }
    }

    /// Elements reachable from `gens` by right multiplication, identity first.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut seen[y as usize], true) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity as usize] = true;
        for x in self.elements() {
            if !inside[x as usize] {
                gens.push(x);
                for y in self.closure(&gens) {
                    inside[y as usize] = true;
                }
            }
        }
        gens
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order as Elem;
        let bad =
            |a: Elem, b: Elem, c: Elem| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        let fail = |a, b, c| Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
        if self.order <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
            for _ in 0..AXIOM_SAMPLES {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if bad(a, b, c) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    /// Re-checks identity, inverses and associativity (sampled above 512 elements).
    pub fn verify_axioms(&self) -> Result<()> {
        for x in self.elements() {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::NotAGroup(format!("identity fails on {x}")));
            }
            if self.mul(x, self.inv(x)) != self.identity
                || self.mul(self.inv(x), x) != self.identity
            {
                return Err(Error::NotAGroup(format!("inverse fails on {x}")));
            }
        }
        self.check_associative()
    }
}
