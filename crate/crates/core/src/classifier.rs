//! Definition-based verdicts and the structural classification.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::arith::{gcd, prime_power};
use crate::catalog::data::{simple_fingerprints, sporadic_orders};
use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::galois::GaloisOrbits;
use crate::group::Group;
use crate::structure::{
    center, derived_subgroup, derived_subgroup_in, frobenius_decomposition, is_abelian, is_cyclic,
    is_elementary_abelian, is_minimal_normal_under, is_nilpotent, is_p_group, is_perfect,
    is_quaternion8, is_solvable, is_suzuki_2group_kernel,
};

/// Products of simple groups that are recognized, with their catalog names.
pub const PRODUCTS: &[(&str, &str, &str)] = &[
    ("A5", "Sz(8)", "A5xSz(8)"),
    ("L3(2)", "Sz(8)", "L3(2)xSz(8)"),
    ("A5", "Th", "A5xTh"),
];

pub const CATALOG_ONLY_NOTE: &str = "catalog-recognized, not independently verified";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub predicate: &'static str,
    pub rows: [usize; 2],
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub gcstar: bool,
    pub gc: bool,
    pub distinct_degrees: bool,
    pub witnesses: Vec<Witness>,
}

/// First pair of rows with equal degree lying in different orbits, among the
/// rows accepted by `keep`.
fn split_pair(
    t: &CharacterTable,
    go: &GaloisOrbits,
    keep: impl Fn(usize) -> bool,
) -> Option<[usize; 2]> {
    let mut first: BTreeMap<u64, usize> = BTreeMap::new();
    for r in (0..t.k()).filter(|&r| keep(r)) {
        match first.get(&t.degrees()[r]) {
            Some(&f) if go.orbit_of[f] != go.orbit_of[r] => return Some([f, r]),
            Some(_) => {}
            None => {
                first.insert(t.degrees()[r], r);
            }
        }
    }
    None
}

pub fn verdict_by_definition(t: &CharacterTable, go: &GaloisOrbits) -> Verdict {
    let deg = t.degrees();
    let mut witnesses = Vec::new();
    let star = split_pair(t, go, |r| deg[r] > 1);
    let gc = split_pair(t, go, |r| r != 0);
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    let mut repeat = None;
    for r in (0..t.k()).filter(|&r| deg[r] > 1) {
        if let Some(&f) = seen.get(&deg[r]) {
            repeat = Some([f, r]);
            break;
        }
        seen.insert(deg[r], r);
    }
    for (predicate, pair) in [("gcstar", star), ("gc", gc), ("distinct_degrees", repeat)] {
        if let Some(rows) = pair {
            witnesses.push(Witness {
                predicate,
                rows,
                degree: deg[rows[0]],
            });
        }
    }
    Verdict {
        gcstar: star.is_none(),
        gc: gc.is_none(),
        distinct_degrees: repeat.is_none(),
        witnesses,
    }
}

impl Verdict {
    pub fn witness(&self, predicate: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.predicate == predicate)
    }

    pub fn witness_json(&self) -> Value {
        Value::Array(
            self.witnesses
                .iter()
                .map(|w| json!({"predicate": w.predicate, "rows": w.rows, "degree": w.degree}))
                .collect(),
        )
    }
}

/// Why a group fails the structural conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    PGroupDerivedNotPrime { p: u64, derived_order: u64 },
    PGroupCenterNotCyclic { p: u64 },
    NilpotentNotPGroup,
    NotFrobenius,
    KernelNotPrimePower { order: u64 },
    ComplementNotCyclicOrQ8,
    Q8KernelWrongOrder { order: u64 },
    KernelNotElementaryAbelian,
    KernelNotMinimalNormal,
    ComplementOrderNotDividing { kernel: u64, complement: u64 },
    DNotDividingQMinus1 { q: u64, d: u64 },
    DSharesFactorWithN { n: u64, d: u64 },
    NotPerfect,
    UnrecognizedPerfect { order: u128 },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::PGroupDerivedNotPrime { p, derived_order } => {
                write!(f, "{p}-group with |G'| = {derived_order}, not {p}")
            }
            Reason::PGroupCenterNotCyclic { p } => write!(f, "{p}-group with non-cyclic center"),
            Reason::NilpotentNotPGroup => write!(f, "nilpotent but not of prime power order"),
            Reason::NotFrobenius => write!(f, "not a Frobenius group over its nilpotent residual"),
            Reason::KernelNotPrimePower { order } => {
                write!(f, "Frobenius kernel of order {order} is not a prime power")
            }
            Reason::ComplementNotCyclicOrQ8 => {
                write!(f, "Frobenius complement neither cyclic nor Q8")
            }
            Reason::Q8KernelWrongOrder { order } => {
                write!(f, "complement Q8 with kernel of order {order}, not 9")
            }
            Reason::KernelNotElementaryAbelian => {
                write!(f, "kernel neither elementary abelian nor a Suzuki 2-group")
            }
            Reason::KernelNotMinimalNormal => write!(f, "kernel not minimal normal"),
            Reason::ComplementOrderNotDividing { kernel, complement } => {
                write!(
                    f,
                    "complement order {complement} does not divide {kernel} - 1"
                )
            }
            Reason::DNotDividingQMinus1 { q, d } => {
                write!(f, "d = {d} does not divide q - 1 = {}", q - 1)
            }
            Reason::DSharesFactorWithN { n, d } => {
                write!(f, "d = {d} shares a factor with n = {n}")
            }
            Reason::NotPerfect => write!(f, "non-solvable but not perfect"),
            Reason::UnrecognizedPerfect { order } => {
                write!(f, "perfect group of order {order} not in the catalog")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tag {
    Abelian,
    TypeA {
        p: u64,
    },
    TypeB1,
    TypeB2 {
        q: u64,
        n: u64,
        d: u64,
    },
    TypeB3 {
        n: u64,
    },
    /// `verified` is false for order-only catalog matches.
    TypeC {
        name: String,
        verified: bool,
    },
    NotGCStar(Reason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralClass {
    pub tag: Tag,
    /// Orders of the subgroups that certify the tag.
    pub witnesses: BTreeMap<&'static str, u128>,
}

impl StructuralClass {
    fn new(tag: Tag) -> Self {
        StructuralClass {
            tag,
            witnesses: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &'static str, v: u128) -> Self {
        self.witnesses.insert(key, v);
        self
    }

    pub fn is_gcstar(&self) -> bool {
        !matches!(self.tag, Tag::NotGCStar(_))
    }

    pub fn tag_name(&self) -> &'static str {
        match self.tag {
            Tag::Abelian => "Abelian",
            Tag::TypeA { .. } => "TypeA",
            Tag::TypeB1 => "TypeB1",
            Tag::TypeB2 { .. } => "TypeB2",
            Tag::TypeB3 { .. } => "TypeB3",
            Tag::TypeC { .. } => "TypeC",
            Tag::NotGCStar(_) => "NotGCStar",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match self.tag {
            Tag::TypeA { p } => vec![p as i64],
            Tag::TypeB2 { q, n, d } => vec![q as i64, n as i64, d as i64],
            Tag::TypeB3 { n } => vec![n as i64],
            _ => vec![],
        }
    }

    pub fn catalog_only(&self) -> bool {
        matches!(
            self.tag,
            Tag::TypeC {
                verified: false,
                ..
            }
        )
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"tag": self.tag_name(), "params": self.params()});
        match &self.tag {
            Tag::TypeC { name, verified } => {
                v["name"] = json!(name);
                v["verified"] = json!(verified);
                if !verified {
                    v["note"] = json!(CATALOG_ONLY_NOTE);
                }
            }
            Tag::NotGCStar(r) => v["reason"] = json!(r.to_string()),
            _ => {}
        }
        if !self.witnesses.is_empty() {
            let w: serde_json::Map<String, Value> = self
                .witnesses
                .iter()
                .map(|(k, &x)| (k.to_string(), json!(x.to_string())))
                .collect();
            v["witnesses"] = Value::Object(w);
        }
        v
    }

    pub fn label(&self) -> String {
        match &self.tag {
            Tag::TypeC { name, .. } => format!("TypeC({name})"),
            Tag::NotGCStar(r) => format!("NotGCStar({r})"),
            _ if self.params().is_empty() => self.tag_name().to_string(),
            _ => {
                let p: Vec<String> = self.params().iter().map(|x| x.to_string()).collect();
                format!("{}({})", self.tag_name(), p.join(","))
            }
        }
    }
}

fn not_gcstar(r: Reason) -> StructuralClass {
    StructuralClass::new(Tag::NotGCStar(r))
}

/// Runs the structural decision procedure. The table, when given, supplies
/// the degree fingerprint for non-solvable recognition.
pub fn classify_structure(g: &Group, table: Option<&CharacterTable>) -> Result<StructuralClass> {
    let n = g.order() as u64;
    if is_abelian(g) {
        return Ok(StructuralClass::new(Tag::Abelian));
    }
    if let Some(p) = is_p_group(g) {
        let gd = derived_subgroup(g).order() as u64;
        let z = center(g);
        let cert = |s: StructuralClass| {
            s.with("derived", gd as u128)
                .with("center", z.order() as u128)
        };
        if gd != p {
            return Ok(cert(not_gcstar(Reason::PGroupDerivedNotPrime {
                p,
                derived_order: gd,
            })));
        }
        if !is_cyclic(g, &z) {
            return Ok(cert(not_gcstar(Reason::PGroupCenterNotCyclic { p })));
        }
        return Ok(cert(StructuralClass::new(Tag::TypeA { p })));
    }
    if is_nilpotent(g) {
        return Ok(not_gcstar(Reason::NilpotentNotPGroup));
    }
    if !is_solvable(g) {
        if !is_perfect(g) {
            return Ok(not_gcstar(Reason::NotPerfect));
        }
        let fp = table.map(|t| (t.k(), t.degrees()));
        return Ok(match recognize_nonsolvable(n as u128, fp)? {
            Some((name, verified)) => StructuralClass::new(Tag::TypeC { name, verified }),
            None => not_gcstar(Reason::UnrecognizedPerfect { order: n as u128 }),
        });
    }

    let Some((k, l)) = frobenius_decomposition(g) else {
        return Ok(not_gcstar(Reason::NotFrobenius));
    };
    let (nk, nl) = (k.order() as u64, l.order() as u64);
    let cert = |s: StructuralClass| s.with("kernel", nk as u128).with("complement", nl as u128);
    let Some((q, m)) = prime_power(nk) else {
        return Ok(cert(not_gcstar(Reason::KernelNotPrimePower { order: nk })));
    };
    let q8 = is_quaternion8(g, &l);
    if !q8 && !is_cyclic(g, &l) {
        return Ok(cert(not_gcstar(Reason::ComplementNotCyclicOrQ8)));
    }
    let elementary = is_elementary_abelian(g, &k).is_some();
    if q8 {
        if nk != 9 {
            return Ok(cert(not_gcstar(Reason::Q8KernelWrongOrder { order: nk })));
        }
        if !elementary {
            return Ok(cert(not_gcstar(Reason::KernelNotElementaryAbelian)));
        }
        if !is_minimal_normal_under(g, &k)? {
            return Ok(cert(not_gcstar(Reason::KernelNotMinimalNormal)));
        }
        return Ok(cert(StructuralClass::new(Tag::TypeB1)));
    }
    if !elementary {
        if is_suzuki_2group_kernel(g, &k, &l) {
            let kd = derived_subgroup_in(g, &k).order() as u64;
            let (_, e) = prime_power(kd).expect("derived subgroup of a 2-group");
            return Ok(cert(
                StructuralClass::new(Tag::TypeB3 { n: e as u64 })
                    .with("kernel_derived", kd as u128),
            ));
        }
        return Ok(cert(not_gcstar(Reason::KernelNotElementaryAbelian)));
    }
    if !is_minimal_normal_under(g, &k)? {
        return Ok(cert(not_gcstar(Reason::KernelNotMinimalNormal)));
    }
    let m = m as u64;
    if (nk - 1) % nl != 0 {
        return Ok(cert(not_gcstar(Reason::ComplementOrderNotDividing {
            kernel: nk,
            complement: nl,
        })));
    }
    let d = (nk - 1) / nl;
    if (q - 1) % d != 0 {
        return Ok(cert(not_gcstar(Reason::DNotDividingQMinus1 { q, d })));
    }
    if gcd(d, m) != 1 {
        return Ok(cert(not_gcstar(Reason::DSharesFactorWithN { n: m, d })));
    }
    Ok(cert(StructuralClass::new(Tag::TypeB2 { q, n: m, d })))
}

/// Catalog fingerprints: the computed simple groups and their listed
/// products, as `(name, order, class count, sorted degrees)`.
fn computed_fingerprints() -> Result<Vec<(String, u128, usize, Vec<u64>)>> {
    let simple = simple_fingerprints()?;
    let mut out: Vec<_> = simple
        .iter()
        .map(|f| {
            let mut d = f.degrees.clone();
            d.sort_unstable();
            (f.name.clone(), f.order, f.classes, d)
        })
        .collect();
    for &(a, b, name) in PRODUCTS {
        let (Some(fa), Some(fb)) = (
            simple.iter().find(|f| f.name == a),
            simple.iter().find(|f| f.name == b),
        ) else {
            continue;
        };
        let mut d: Vec<u64> = fa
            .degrees
            .iter()
            .flat_map(|x| fb.degrees.iter().map(move |y| x * y))
            .collect();
        d.sort_unstable();
        out.push((
            name.to_string(),
            fa.order * fb.order,
            fa.classes * fb.classes,
            d,
        ));
    }
    Ok(out)
}

/// Matches a perfect group against the catalog. With a fingerprint
/// `(class count, degrees)` the computed groups are matched exactly and
/// reported as verified; otherwise matches are by order alone.
pub fn recognize_nonsolvable(
    order: u128,
    fingerprint: Option<(usize, &[u64])>,
) -> Result<Option<(String, bool)>> {
    for (name, o, k, degrees) in computed_fingerprints()? {
        if o != order {
            continue;
        }
        match fingerprint {
            Some((fk, fd)) => {
                let mut fd = fd.to_vec();
                fd.sort_unstable();
                if fk == k && fd == degrees {
                    return Ok(Some((name, true)));
                }
            }
            None => return Ok(Some((name, false))),
        }
    }
    Ok(sporadic_orders()?
        .into_iter()
        .find(|&(_, o)| o == order)
        .map(|(name, _)| (name, false)))
}

/// Classification of a catalog-only name, by its recorded order.
pub fn classify_catalog_name(name: &str) -> Result<Option<StructuralClass>> {
    let orders = sporadic_orders()?;
    Ok(orders.get(name).map(|&o| {
        StructuralClass::new(Tag::TypeC {
            name: name.to_string(),
            verified: false,
        })
        .with("order", o)
    }))
}

/// Classification of `A x B` from the classes of its factors, for products
/// too large to realize. Returns `None` when the factors do not decide it.
pub fn classify_product(
    a: &StructuralClass,
    b: &StructuralClass,
    order: u128,
) -> Option<StructuralClass> {
    match (&a.tag, &b.tag) {
        (
            Tag::TypeC {
                name: x,
                verified: vx,
            },
            Tag::TypeC {
                name: y,
                verified: vy,
            },
        ) => {
            let hit = PRODUCTS
                .iter()
                .find(|&&(p, q, _)| (p == x && q == y) || (p == y && q == x));
            Some(match hit {
                Some(&(_, _, name)) => StructuralClass::new(Tag::TypeC {
                    name: name.to_string(),
                    verified: *vx && *vy,
                }),
                None => not_gcstar(Reason::UnrecognizedPerfect { order }),
            })
        }
        // one factor is non-solvable and perfect, the other is not perfect
        (Tag::TypeC { .. }, t) | (t, Tag::TypeC { .. }) if !matches!(t, Tag::NotGCStar(_)) => {
            Some(not_gcstar(Reason::NotPerfect))
        }
        _ => None,
    }
}

/// Whether the structural tag agrees with the definitional GC* bit.
pub fn theorem_a_consistency(s: &StructuralClass, v: &Verdict) -> bool {
    s.is_gcstar() == v.gcstar
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryB {
    Abelian,
    Extraspecial2,
    B1,
    B2Unit,
    None,
}

impl CorollaryB {
    pub fn as_str(&self) -> &'static str {
        match self {
            CorollaryB::Abelian => "abelian",
            CorollaryB::Extraspecial2 => "extraspecial-2",
            CorollaryB::B1 => "B1",
            CorollaryB::B2Unit => "B2-with-d=1",
            CorollaryB::None => "none",
        }
    }

    /// The label predicts distinct non-linear degrees.
    pub fn predicts_distinct(&self) -> bool {
        *self != CorollaryB::None
    }
}

/// The distinct-degrees label. A type-A 2-group with center of order 2 is
/// extraspecial: its center is then `G'` and squares are central.
pub fn corollary_b_classify(s: &StructuralClass) -> CorollaryB {
    match s.tag {
        Tag::Abelian => CorollaryB::Abelian,
        Tag::TypeA { p: 2 } if s.witnesses.get("center") == Some(&2) => CorollaryB::Extraspecial2,
        Tag::TypeB1 => CorollaryB::B1,
        Tag::TypeB2 { d: 1, .. } => CorollaryB::B2Unit,
        _ => CorollaryB::None,
    }
}
