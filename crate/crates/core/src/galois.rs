//! The Galois action on irreducible characters.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::arith::{gcd, unit_group_generators};
use crate::chartab::CharacterTable;
use crate::cyclotomic::field_index;
use crate::error::{Error, Result};
use crate::Cyc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rows: Vec<usize>,
    pub degree: u64,
    pub field_index: u64,
    pub kernel: Vec<usize>,
    pub center: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisOrbits {
    /// Numbered by least member row.
    pub orbits: Vec<Orbit>,
    pub orbit_of: Vec<usize>,
}

/// The permutation `pi` with `row pi(i) = sigma_k(row i)`, computed from the
/// power map: `sigma_k(chi)(g) = chi(g^k)`.
pub fn galois_row_action(t: &CharacterTable, k: i64) -> Result<Vec<usize>> {
    let e = t.exponent();
    if gcd(k.rem_euclid(e as i64) as u64, e) != 1 {
        return Err(Error::NotCoprime(k, e));
    }
    let index: HashMap<&[Cyc], usize> = t
        .values()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_slice(), i))
        .collect();
    let pm = t.power_map(k);
    t.values()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let image: Vec<Cyc> = pm.iter().map(|&c| row[c].clone()).collect();
            index.get(image.as_slice()).copied().ok_or_else(|| {
                Error::NotGaloisClosed(format!("image of row {i} under k = {k} is not a row"))
            })
        })
        .collect()
}

/// Applies `z -> z^k` to each value of a row.
pub fn galois_apply_row(row: &[Cyc], k: i64) -> Result<Vec<Cyc>> {
    row.iter().map(|v| v.galois_apply(k)).collect()
}

pub fn galois_orbits(t: &CharacterTable) -> Result<GaloisOrbits> {
    let n = t.k();
    let perms = unit_group_generators(t.exponent())
        .into_iter()
        .map(|k| galois_row_action(t, k as i64))
        .collect::<Result<Vec<_>>>()?;
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut rows = vec![start];
        let mut i = 0;
        while i < rows.len() {
            for p in &perms {
                let r = p[rows[i]];
                if orbit_of[r] == usize::MAX {
                    orbit_of[r] = id;
                    rows.push(r);
                }
            }
            i += 1;
        }
        rows.sort_unstable();
        orbits.push(Orbit {
            degree: t.degrees()[start],
            field_index: field_index(t.row(start)),
            kernel: t.kernel(start),
            center: t.center(start),
            rows,
        });
    }
    Ok(GaloisOrbits { orbits, orbit_of })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub failure: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Every orbit member must share degree, kernel, center and field index, and
/// the orbit size must equal the field index.
pub fn orbit_invariant_audit(t: &CharacterTable, go: &GaloisOrbits) -> AuditReport {
    for (o, orbit) in go.orbits.iter().enumerate() {
        for &r in &orbit.rows {
            let problem = if t.degrees()[r] != orbit.degree {
                Some("degree")
            } else if t.kernel(r) != orbit.kernel {
                Some("kernel")
            } else if t.center(r) != orbit.center {
                Some("center")
            } else if field_index(t.row(r)) != orbit.field_index {
                Some("field of values")
            } else {
                None
            };
            if let Some(what) = problem {
                return AuditReport {
                    failure: Some(format!("orbit {o}: row {r} differs in {what}")),
                };
            }
        }
        if orbit.rows.len() as u64 != orbit.field_index {
            return AuditReport {
                failure: Some(format!(
                    "orbit {o}: size {} but field index {}",
                    orbit.rows.len(),
                    orbit.field_index
                )),
            };
        }
    }
    AuditReport { failure: None }
}

impl GaloisOrbits {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.orbits
                .iter()
                .map(|o| {
                    json!({
                        "rows": o.rows,
                        "degree": o.degree,
                        "field_index": o.field_index,
                        "kernel_classes": o.kernel,
                        "center_classes": o.center,
                    })
                })
                .collect(),
        )
    }

    /// Merges two orbits, for fault-injection tests.
    pub fn merged(mut self, a: usize, b: usize) -> Self {
        let moved = std::mem::take(&mut self.orbits[b].rows);
        for &r in &moved {
            self.orbit_of[r] = a;
        }
        self.orbits[a].rows.extend(moved);
        self.orbits[a].rows.sort_unstable();
        self.orbits.remove(b);
        for x in self.orbit_of.iter_mut() {
            if *x > b {
                *x -= 1;
            }
        }
        self
    }
}
