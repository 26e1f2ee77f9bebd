//! Exact character tables by the Dixon–Schneider method.

mod linalg;
mod modp;
mod verify;

pub use modp::{
    class_constants, modp_table, next_split_prime, split_prime, ClassConstants, ModpTable,
};
pub use verify::{verify_table, VerifyReport};

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::arith::{inv_mod, lcm, mul_mod, pow_mod, primitive_root};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::structure::ConjugacyClasses;
use crate::{Cyc, Rat};

const MAX_PRIMES: usize = 5;

/// What a table needs to know about a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub rep: String,
    pub size: u64,
    pub order: u32,
    /// `powers[l]` is the class of `rep^l`, `l < order`.
    pub powers: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    order: u64,
    exponent: u64,
    classes: Vec<ClassInfo>,
    values: Vec<Vec<Cyc>>,
    degrees: Vec<u64>,
}

pub fn class_infos(g: &Group, cc: &ConjugacyClasses) -> Vec<ClassInfo> {
    (0..cc.k())
        .map(|c| ClassInfo {
            rep: g.element_label(cc.reps()[c]),
            size: cc.size(c),
            order: cc.orders()[c],
            powers: cc.powers(c).to_vec(),
        })
        .collect()
}

/// Computes the table, retrying with later primes if a prime misbehaves.
pub fn character_table(g: &Group, cc: &ConjugacyClasses) -> Result<CharacterTable> {
    let consts = class_constants(g, cc);
    let (n, e) = (g.order() as u64, cc.exponent());
    let classes = class_infos(g, cc);
    let mut p = split_prime(e, n);
    let mut last_err = String::new();
    for _ in 0..MAX_PRIMES {
        match modp_table(cc, &consts, n, p).and_then(|t| lift_characters(&t, &classes, e)) {
            Ok(values) => return Ok(CharacterTable::new(n, e, classes, values)),
            Err(msg) => last_err = format!("p = {p}: {msg}"),
        }
        p = next_split_prime(e, n, p);
    }
    Err(Error::TableFailure(last_err))
}

/// Recovers `chi(g) = sum_j m_j z_o^j` from the mod-p values on the powers of `g`.
pub fn lift_characters(
    t: &ModpTable,
    classes: &[ClassInfo],
    e: u64,
) -> std::result::Result<Vec<Vec<Cyc>>, String> {
    let p = t.p;
    let w_e = pow_mod(primitive_root(p), (p - 1) / e, p);
    let mut rows = Vec::with_capacity(t.values.len());
    for (row, &d) in t.values.iter().zip(&t.degrees) {
        let mut out = Vec::with_capacity(classes.len());
        for cls in classes {
            let o = cls.order as u64;
            let w_inv = inv_mod(pow_mod(w_e, e / o, p), p).unwrap();
            let o_inv = inv_mod(o % p, p).unwrap();
            let vals: Vec<u64> = cls.powers.iter().map(|&c| row[c as usize]).collect();
            let mut terms = Vec::new();
            for j in 0..o {
                let step = pow_mod(w_inv, j, p);
                let mut w = 1u64;
                let mut s = 0u64;
                for &v in &vals {
                    s = (s + mul_mod(v, w, p)) % p;
                    w = mul_mod(w, step, p);
                }
                let m = mul_mod(s, o_inv, p);
                if m > d {
                    return Err(format!("multiplicity {m} exceeds the degree {d}"));
                }
                if m != 0 {
                    terms.push((j as i64, Rat::from_integer(BigInt::from(m))));
                }
            }
            out.push(Cyc::from_exponents(o, terms));
        }
        rows.push(out);
    }
    Ok(rows)
}

impl CharacterTable {
    /// Sorts rows: principal first, then by degree and rendered values.
    pub fn new(order: u64, exponent: u64, classes: Vec<ClassInfo>, values: Vec<Vec<Cyc>>) -> Self {
        let one = Cyc::one();
        let mut keyed: Vec<(bool, u64, String, Vec<Cyc>)> = values
            .into_iter()
            .map(|row| {
                let principal = row.iter().all(|v| *v == one);
                let deg = degree_of(&row[0]);
                (!principal, deg, render_row(&row), row)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let degrees = keyed.iter().map(|r| r.1).collect();
        let values = keyed.into_iter().map(|r| r.3).collect();
        CharacterTable {
            order,
            exponent,
            classes,
            values,
            degrees,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent of the group; every value lies in `Q(z_exponent)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn values(&self) -> &[Vec<Cyc>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[Cyc] {
        &self.values[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Class of `g^m` for `g` in class `c`.
    pub fn power_class(&self, c: usize, m: i64) -> usize {
        let cls = &self.classes[c];
        cls.powers[m.rem_euclid(cls.order as i64) as usize] as usize
    }

    pub fn power_map(&self, m: i64) -> Vec<usize> {
        (0..self.k()).map(|c| self.power_class(c, m)).collect()
    }

    /// Replaces one value, for fault-injection tests.
    pub fn with_value(mut self, row: usize, class: usize, v: Cyc) -> Self {
        self.values[row][class] = v;
        self
    }

    /// Classes where the character equals its degree.
    pub fn kernel(&self, i: usize) -> Vec<usize> {
        let d = Cyc::from_int(self.degrees[i] as i64);
        (0..self.k()).filter(|&c| self.values[i][c] == d).collect()
    }

    /// Classes where `|chi(g)|^2 = chi(1)^2`.
    pub fn center(&self, i: usize) -> Vec<usize> {
        let d2 = Cyc::from_int((self.degrees[i] * self.degrees[i]) as i64);
        (0..self.k())
            .filter(|&c| self.values[i][c].abs_square() == d2)
            .collect()
    }

    /// ATLAS-style names: element order followed by a letter.
    pub fn class_names(&self) -> Vec<String> {
        let mut seen = std::collections::HashMap::new();
        self.classes
            .iter()
            .map(|c| {
                let n = seen.entry(c.order).or_insert(0usize);
                let name = format!("{}{}", c.order, letter_suffix(*n));
                *n += 1;
                name
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "exponent": self.exponent,
            "classes": self.classes.iter().map(|c| json!({
                "rep": c.rep,
                "size": c.size,
                "order": c.order,
                "powers": c.powers,
            })).collect::<Vec<_>>(),
            "characters": self.values.iter()
                .map(|row| row.iter().map(|v| v.to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Malformed(format!("character table: {m}"));
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("order"))?;
        let exponent = v
            .get("exponent")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("exponent"))?;
        let classes = v
            .get("classes")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("classes"))?
            .iter()
            .map(|c| {
                Ok(ClassInfo {
                    rep: c
                        .get("rep")
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad("rep"))?
                        .to_string(),
                    size: c
                        .get("size")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("size"))?,
                    order: c
                        .get("order")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("class order"))? as u32,
                    powers: c
                        .get("powers")
                        .and_then(Value::as_array)
                        .ok_or_else(|| bad("powers"))?
                        .iter()
                        .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("powers")))
                        .collect::<Result<Vec<u32>>>()?,
                })
            })
            .collect::<Result<Vec<ClassInfo>>>()?;
        let values = v
            .get("characters")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("characters"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row"))?
                    .iter()
                    .map(Cyc::from_json)
                    .collect::<Result<Vec<Cyc>>>()
            })
            .collect::<Result<Vec<Vec<Cyc>>>>()?;
        let k = classes.len();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(bad("table is not square"));
        }
        for c in &classes {
            if c.powers.len() != c.order as usize || c.powers.iter().any(|&x| x as usize >= k) {
                return Err(bad("power data"));
            }
        }
        Ok(CharacterTable::new(order, exponent, classes, values))
    }

    /// Fixed-width text; irrational values use `E(n)^j = exp(2 pi i j / n)`.
    pub fn render_text(&self) -> String {
        let names = self.class_names();
        let mut cols: Vec<Vec<String>> = Vec::new();
        let mut first = vec![String::new(), "size".into(), String::new()];
        for (i, d) in self.degrees.iter().enumerate() {
            first.push(format!("X.{} ({d})", i + 1));
        }
        cols.push(first);
        for (c, cls) in self.classes.iter().enumerate() {
            let mut col = vec![names[c].clone(), cls.size.to_string(), String::new()];
            col.extend(self.values.iter().map(|row| render_value(&row[c])));
            cols.push(col);
        }
        let widths: Vec<usize> = cols
            .iter()
            .map(|c| c.iter().map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "order {}, exponent {}, {} classes",
            self.order,
            self.exponent,
            self.k()
        );
        for r in 0..cols[0].len() {
            let line: Vec<String> = cols
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (col, &w))| {
                    if i == 0 {
                        format!("{:<w$}", col[r])
                    } else {
                        format!("{:>w$}", col[r])
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out.push('\n');
        for (c, cls) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "{}: {}", names[c], cls.rep);
        }
        out
    }
}

fn letter_suffix(mut n: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push((b'a' + (n % 26) as u8) as char);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s.iter().rev().collect()
}

fn degree_of(v: &Cyc) -> u64 {
    v.is_rational()
        .and_then(|q| q.to_integer().to_u64())
        .unwrap_or(0)
}

/// Canonical row string used for ordering.
pub fn render_row(row: &[Cyc]) -> String {
    row.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `-E(5)^2 - E(5)^3` style rendering of one value.
pub fn render_value(v: &Cyc) -> String {
    if let Some(q) = v.is_rational() {
        return q.to_string();
    }
    let e = v.conductor();
    let mut out = String::new();
    for (j, c) in v.terms() {
        let root = if j == 1 {
            format!("E({e})")
        } else {
            format!("E({e})^{j}")
        };
        let neg = c < &Rat::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        let term = if abs == Rat::from_integer(1.into()) {
            if j == 0 {
                "1".to_string()
            } else {
                root
            }
        } else if j == 0 {
            abs.to_string()
        } else {
            format!("{abs}*{root}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        out.push_str(&term);
    }
    out
}

/// Tensor-product table of `G x H`; class `(c, d)` sits at `c + k_G d`.
pub fn direct_product_table(a: &CharacterTable, b: &CharacterTable) -> CharacterTable {
    let (ka, kb) = (a.k(), b.k());
    let mut classes = Vec::with_capacity(ka * kb);
    for d in 0..kb {
        for c in 0..ka {
            let (ca, cb) = (&a.classes[c], &b.classes[d]);
            let order = lcm(ca.order as u64, cb.order as u64) as u32;
            let powers = (0..order as usize)
                .map(|l| {
                    let pa = ca.powers[l % ca.order as usize];
                    let pb = cb.powers[l % cb.order as usize];
                    pa + ka as u32 * pb
                })
                .collect();
            classes.push(ClassInfo {
                rep: format!("({}, {})", ca.rep, cb.rep),
                size: ca.size * cb.size,
                order,
                powers,
            });
        }
    }
    let mut values = Vec::with_capacity(ka * kb);
    for ra in &a.values {
        for rb in &b.values {
            let mut row = Vec::with_capacity(ka * kb);
            for vb in rb {
                for va in ra {
                    row.push(va * vb);
                }
            }
            values.push(row);
        }
    }
    CharacterTable::new(
        a.order * b.order,
        lcm(a.exponent, b.exponent),
        classes,
        values,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::realize;
    use crate::structure::conjugacy_classes;

    fn table(spec: &crate::group::GroupSpec) -> CharacterTable {
        let g = realize(spec).unwrap();
        let cc = conjugacy_classes(&g);
        character_table(&g, &cc).unwrap()
    }

    #[test]
    fn cyclic_three() {
        let t = table(&catalog::cyclic(3));
        assert_eq!(t.degrees(), &[1, 1, 1]);
        let z = Cyc::zeta(3);
        let z2 = Cyc::zeta_pow(3, 2);
        let mut rows: Vec<Vec<Cyc>> = t.values().to_vec();
        rows.sort_by_key(|r| render_row(r));
        assert!(rows.contains(&vec![Cyc::one(), z.clone(), z2.clone()]));
        assert!(rows.contains(&vec![Cyc::one(), z2, z]));
    }

    #[test]
    fn small_degree_multisets() {
        assert_eq!(table(&catalog::symmetric(3)).degrees(), &[1, 1, 2]);
        assert_eq!(
            table(&catalog::extraspecial(2, 1, true)).degrees(),
            &[1, 1, 1, 1, 2]
        );
        let a5 = table(&catalog::alternating5());
        let mut d = a5.degrees().to_vec();
        d.sort();
        assert_eq!(d, vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn json_round_trip() {
        let t = table(&catalog::symmetric(3));
        assert_eq!(CharacterTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn letters() {
        assert_eq!(letter_suffix(0), "a");
        assert_eq!(letter_suffix(25), "z");
        assert_eq!(letter_suffix(26), "aa");
    }
}
