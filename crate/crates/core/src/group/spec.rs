//! The JSON group-description format.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: SpecKind,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecKind {
    /// Row `a`, column `b` holds the index of `a*b`.
    MultTable {
        table: Vec<Vec<u32>>,
    },
    /// Permutations of `0..degree`, given by their image lists.
    PermGens {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
    DirectProduct {
        factors: Box<[GroupSpec; 2]>,
    },
    /// `action[i]` is the permutation of kernel indices induced by actor generator `i`.
    Semidirect {
        kernel: Box<GroupSpec>,
        actor: Box<GroupSpec>,
        action: Vec<Vec<u32>>,
    },
    Family {
        name: String,
        params: Vec<i64>,
    },
}

impl GroupSpec {
    pub fn new(kind: SpecKind) -> Self {
        GroupSpec { kind, label: None }
    }

    pub fn family(name: &str, params: &[i64]) -> Self {
        Self::new(SpecKind::Family {
            name: name.to_string(),
            params: params.to_vec(),
        })
    }

    pub fn direct_product(a: GroupSpec, b: GroupSpec) -> Self {
        Self::new(SpecKind::DirectProduct {
            factors: Box::new([a, b]),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SpecKind::MultTable { .. } => "mult-table",
            SpecKind::PermGens { .. } => "perm-gens",
            SpecKind::DirectProduct { .. } => "direct-product",
            SpecKind::Semidirect { .. } => "semidirect",
            SpecKind::Family { .. } => "family",
        }
    }

    /// Short human-readable name: the label if present, otherwise a description.
    pub fn display_name(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match &self.kind {
            SpecKind::Family { name, params } => {
                if params.is_empty() {
                    name.clone()
                } else {
                    let p: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                    format!("{name}({})", p.join(","))
                }
            }
            SpecKind::DirectProduct { factors } => {
                format!(
                    "{} x {}",
                    factors[0].display_name(),
                    factors[1].display_name()
                )
            }
            SpecKind::Semidirect { kernel, actor, .. } => {
                format!("{} : {}", kernel.display_name(), actor.display_name())
            }
            SpecKind::MultTable { table } => format!("table group of order {}", table.len()),
            SpecKind::PermGens { degree, generators } => {
                format!("{}-generated group on {degree} points", generators.len())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind_name()));
        match &self.kind {
            SpecKind::MultTable { table } => {
                m.insert("table".into(), json!(table));
            }
            SpecKind::PermGens { degree, generators } => {
                m.insert("degree".into(), json!(degree));
                m.insert("generators".into(), json!(generators));
            }
            SpecKind::DirectProduct { factors } => {
                m.insert(
                    "factors".into(),
                    Value::Array(factors.iter().map(|f| f.to_json()).collect()),
                );
            }
            SpecKind::Semidirect {
                kernel,
                actor,
                action,
            } => {
                m.insert("kernel".into(), kernel.to_json());
                m.insert("actor".into(), actor.to_json());
                m.insert("action".into(), json!(action));
            }
            SpecKind::Family { name, params } => {
                m.insert("name".into(), json!(name));
                m.insert("params".into(), json!(params));
            }
        }
        if let Some(l) = &self.label {
            m.insert("label".into(), json!(l));
        }
        Value::Object(m)
    }

    /// Compact JSON with sorted keys; the cache key is derived from it.
    pub fn canonical_string(&self) -> String {
        // serde_json's default map is ordered, so keys come out sorted.
        serde_json::to_string(&self.to_json()).expect("spec serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| malformed("group spec must be a JSON object"))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| malformed("missing string field `kind`"))?;
        let label = match obj.get("label") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(malformed("`label` must be a string")),
        };
        let kind = match kind {
            "mult-table" => {
                let table = int_matrix(obj.get("table"), "table")?;
                let n = table.len();
                if n == 0 {
                    return Err(malformed("empty multiplication table"));
                }
                for row in &table {
                    if row.len() != n {
                        return Err(malformed("multiplication table must be square"));
                    }
                    if let Some(&bad) = row.iter().find(|&&x| x as usize >= n) {
                        return Err(Error::OutOfRange {
                            index: bad as u64,
                            bound: n as u64,
                            context: "table".into(),
                        });
                    }
                }
                SpecKind::MultTable { table }
            }
            "perm-gens" => {
                let degree = obj
                    .get("degree")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| malformed("missing integer field `degree`"))?
                    as usize;
                if degree == 0 || degree > u16::MAX as usize {
                    return Err(malformed("`degree` must be in 1..=65535"));
                }
                let generators = int_matrix(obj.get("generators"), "generators")?;
                for (i, g) in generators.iter().enumerate() {
                    if g.len() != degree {
                        return Err(malformed(&format!(
                            "generator {i} has {} images, expected {degree}",
                            g.len()
                        )));
                    }
                    if let Some(&bad) = g.iter().find(|&&x| x as usize >= degree) {
                        return Err(Error::OutOfRange {
                            index: bad as u64,
                            bound: degree as u64,
                            context: format!("generator {i}"),
                        });
                    }
                    let mut seen = vec![false; degree];
                    for &x in g {
                        if std::mem::replace(&mut seen[x as usize], true) {
                            return Err(Error::NotBijective(i));
                        }
                    }
                }
                SpecKind::PermGens { degree, generators }
            }
            "direct-product" => {
                let factors = obj
                    .get("factors")
                    .and_then(Value::as_array)
                    .ok_or_else(|| malformed("missing array field `factors`"))?;
                if factors.len() != 2 {
                    return Err(malformed("`factors` must hold exactly two specs"));
                }
                let a = GroupSpec::from_json(&factors[0])?;
                let b = GroupSpec::from_json(&factors[1])?;
                SpecKind::DirectProduct {
                    factors: Box::new([a, b]),
                }
            }
            "semidirect" => {
                let kernel = GroupSpec::from_json(
                    obj.get("kernel")
                        .ok_or_else(|| malformed("missing `kernel`"))?,
                )?;
                let actor = GroupSpec::from_json(
                    obj.get("actor")
                        .ok_or_else(|| malformed("missing `actor`"))?,
                )?;
                let action = int_matrix(obj.get("action"), "action")?;
                SpecKind::Semidirect {
                    kernel: Box::new(kernel),
                    actor: Box::new(actor),
                    action,
                }
            }
            "family" => {
                let name = obj
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| malformed("missing string field `name`"))?
                    .to_string();
                let params = match obj.get("params") {
                    None => Vec::new(),
                    Some(p) => p
                        .as_array()
                        .ok_or_else(|| malformed("`params` must be an array"))?
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .ok_or_else(|| malformed("`params` must be integers"))
                        })
                        .collect::<Result<Vec<i64>>>()?,
                };
                crate::catalog::validate_family(&name, &params)?;
                SpecKind::Family { name, params }
            }
            other => return Err(malformed(&format!("unknown kind `{other}`"))),
        };
        Ok(GroupSpec { kind, label })
    }
}

/// Parses and validates a JSON group description.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let v: Value = serde_json::from_str(text)?;
    GroupSpec::from_json(&v)
}

fn malformed(msg: &str) -> Error {
    Error::Malformed(msg.to_string())
}

fn int_matrix(v: Option<&Value>, field: &str) -> Result<Vec<Vec<u32>>> {
    let rows = v
        .and_then(Value::as_array)
        .ok_or_else(|| malformed(&format!("missing array field `{field}`")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| malformed(&format!("`{field}` must be an array of arrays")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .filter(|&x| x <= u32::MAX as u64)
                        .map(|x| x as u32)
                        .ok_or_else(|| {
                            malformed(&format!("`{field}` entries must be non-negative integers"))
                        })
                })
                .collect()
        })
        .collect()
}
