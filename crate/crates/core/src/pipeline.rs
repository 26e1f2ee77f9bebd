//! End-to-end analysis of a group spec: table, orbits, verdict and structure.

use serde_json::{json, Value};

use crate::catalog::data::{sha256_hex, sporadic_orders};
use crate::catalog::CATALOG_ONLY;
use crate::chartab::{
    character_table, direct_product_table, verify_table, CharacterTable, VerifyReport,
};
use crate::classifier::{
    classify_catalog_name, classify_product, classify_structure, corollary_b_classify,
    theorem_a_consistency, verdict_by_definition, CorollaryB, StructuralClass, Verdict,
    CATALOG_ONLY_NOTE,
};
use crate::error::{Error, Result};
use crate::galois::{galois_orbits, orbit_invariant_audit, AuditReport, GaloisOrbits};
use crate::group::{realize_with, Group, GroupSpec, RealizeOptions, SpecKind};
use crate::structure::conjugacy_classes;

/// Largest order whose table is computed by enumeration.
pub const TABLE_BUDGET: u128 = 1_000_000;
/// Direct products above this order are handled through their factors.
pub const DIRECT_REALIZE_LIMIT: u128 = 65_536;

/// Where character tables are loaded from and saved to.
pub trait TableStore: Sync {
    fn load(&self, spec: &GroupSpec) -> Option<CharacterTable>;
    fn save(&self, spec: &GroupSpec, table: &CharacterTable);
}

pub struct NoStore;

impl TableStore for NoStore {
    fn load(&self, _: &GroupSpec) -> Option<CharacterTable> {
        None
    }
    fn save(&self, _: &GroupSpec, _: &CharacterTable) {}
}

fn strip_labels(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("label");
            m.values_mut().for_each(strip_labels);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_labels),
        _ => {}
    }
}

/// SHA-256 of the canonical spec JSON with labels removed.
pub fn cache_key(spec: &GroupSpec) -> String {
    let mut v = spec.to_json();
    strip_labels(&mut v);
    sha256_hex(
        serde_json::to_string(&v)
            .expect("spec serializes")
            .as_bytes(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableRoute {
    Computed,
    Cached,
    Tensor,
}

impl TableRoute {
    /// How the table was obtained, ignoring the cache so that output does
    /// not depend on its state.
    pub fn method(&self) -> &'static str {
        match self {
            TableRoute::Computed | TableRoute::Cached => "dixon-schneider",
            TableRoute::Tensor => "tensor",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableAnalysis {
    pub table: CharacterTable,
    pub route: TableRoute,
    pub verify: VerifyReport,
    pub orbits: GaloisOrbits,
    pub audit: AuditReport,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub name: String,
    pub order: u128,
    pub structural: StructuralClass,
    /// Absent when only a structural verdict is possible.
    pub tables: Option<TableAnalysis>,
}

impl Analysis {
    pub fn structural_only(&self) -> bool {
        self.tables.is_none()
    }

    /// Structural and definitional sides agree, and the table passed its checks.
    pub fn consistent(&self) -> bool {
        match &self.tables {
            Some(t) => {
                t.verify.passed()
                    && t.audit.passed()
                    && theorem_a_consistency(&self.structural, &t.verdict)
            }
            None => true,
        }
    }

    pub fn corollary_b(&self) -> CorollaryB {
        corollary_b_classify(&self.structural)
    }

    /// Whether the distinct-degrees label matches the table, when there is one.
    pub fn corollary_b_agrees(&self) -> Option<bool> {
        self.tables
            .as_ref()
            .map(|t| t.verdict.distinct_degrees == self.corollary_b().predicts_distinct())
    }

    pub fn gcstar(&self) -> bool {
        match &self.tables {
            Some(t) => t.verdict.gcstar,
            None => self.structural.is_gcstar(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "order": order_json(self.order),
            "structural": self.structural.to_json(),
            "consistent": self.consistent(),
            "corollary_b": {"label": self.corollary_b().as_str(), "agrees": self.corollary_b_agrees()},
        });
        match &self.tables {
            Some(t) => {
                v["gcstar"] = json!(t.verdict.gcstar);
                v["gc"] = json!(t.verdict.gc);
                v["distinct_degrees"] = json!(t.verdict.distinct_degrees);
                v["witness"] = t.verdict.witness_json();
                v["table"] = json!(t.route.method());
                v["verified"] = json!(t.verify.failure.clone().unwrap_or_else(|| "ok".into()));
                v["orbit_audit"] = json!(t.audit.failure.clone().unwrap_or_else(|| "ok".into()));
            }
            None => {
                v["gcstar"] = Value::Null;
                v["gc"] = Value::Null;
                v["distinct_degrees"] = Value::Null;
                v["witness"] = json!([]);
                v["table"] = Value::Null;
                let note = if self.structural.catalog_only() {
                    CATALOG_ONLY_NOTE
                } else {
                    "structural verdict only"
                };
                v["note"] = json!(note);
            }
        }
        v
    }
}

fn order_json(o: u128) -> Value {
    match u64::try_from(o) {
        Ok(x) => json!(x),
        Err(_) => json!(o.to_string()),
    }
}

fn catalog_only_name(spec: &GroupSpec) -> Option<&str> {
    match &spec.kind {
        SpecKind::Family { name, .. } if CATALOG_ONLY.contains(&name.as_str()) => Some(name),
        _ => None,
    }
}

/// Order of the group a spec describes. Realizes all but catalog-only names
/// and direct products.
pub fn spec_order(spec: &GroupSpec) -> Result<u128> {
    if let Some(name) = catalog_only_name(spec) {
        return sporadic_orders()?
            .get(name)
            .copied()
            .ok_or_else(|| Error::CatalogOnly(name.to_string()));
    }
    match &spec.kind {
        SpecKind::DirectProduct { factors } => {
            Ok(spec_order(&factors[0])? * spec_order(&factors[1])?)
        }
        _ => Ok(realize_with(spec, &RealizeOptions::default())?.order() as u128),
    }
}

/// Table of a realized group, through the store.
pub fn table_for_group(g: &Group, store: &dyn TableStore) -> Result<(CharacterTable, TableRoute)> {
    if let Some(t) = store.load(g.spec()) {
        return Ok((t, TableRoute::Cached));
    }
    let cc = conjugacy_classes(g);
    let t = character_table(g, &cc)?;
    store.save(g.spec(), &t);
    Ok((t, TableRoute::Computed))
}

fn table_analysis(table: CharacterTable, route: TableRoute) -> Result<TableAnalysis> {
    let verify = verify_table(&table);
    let orbits = galois_orbits(&table)?;
    let audit = orbit_invariant_audit(&table, &orbits);
    let verdict = verdict_by_definition(&table, &orbits);
    Ok(TableAnalysis {
        table,
        route,
        verify,
        orbits,
        audit,
        verdict,
    })
}

pub fn analyze(spec: &GroupSpec, store: &dyn TableStore) -> Result<Analysis> {
    let name = spec.display_name();
    if let Some(cat) = catalog_only_name(spec) {
        let structural =
            classify_catalog_name(cat)?.ok_or_else(|| Error::CatalogOnly(cat.to_string()))?;
        return Ok(Analysis {
            name,
            order: spec_order(spec)?,
            structural,
            tables: None,
        });
    }
    if let SpecKind::DirectProduct { factors } = &spec.kind {
        if spec_order(spec)? > DIRECT_REALIZE_LIMIT {
            if let Some(a) = analyze_product(spec, &factors[0], &factors[1], store)? {
                return Ok(a);
            }
        }
    }
    let g = realize_with(spec, &RealizeOptions::default())?;
    let order = g.order() as u128;
    if order > TABLE_BUDGET {
        return Ok(Analysis {
            name,
            order,
            structural: classify_structure(&g, None)?,
            tables: None,
        });
    }
    let (table, route) = table_for_group(&g, store)?;
    let ta = table_analysis(table, route)?;
    let structural = classify_structure(&g, Some(&ta.table))?;
    Ok(Analysis {
        name,
        order,
        structural,
        tables: Some(ta),
    })
}

/// Products too large to realize, decided from the factors. The table is
/// the tensor product of the factor tables when both exist.
fn analyze_product(
    spec: &GroupSpec,
    a: &GroupSpec,
    b: &GroupSpec,
    store: &dyn TableStore,
) -> Result<Option<Analysis>> {
    let fa = analyze(a, store)?;
    let fb = analyze(b, store)?;
    let order = fa.order * fb.order;
    let decided = match (fa.order, fb.order) {
        (1, _) => Some(fb.structural.clone()),
        (_, 1) => Some(fa.structural.clone()),
        _ => classify_product(&fa.structural, &fb.structural, order),
    };
    let Some(structural) = decided else {
        return Ok(None);
    };
    let tables = match (fa.tables, fb.tables) {
        (Some(ta), Some(tb)) => {
            let t = match store.load(spec) {
                Some(t) => t,
                None => {
                    let t = direct_product_table(&ta.table, &tb.table);
                    store.save(spec, &t);
                    t
                }
            };
            Some(table_analysis(t, TableRoute::Tensor)?)
        }
        _ => None,
    };
    Ok(Some(Analysis {
        name: spec.display_name(),
        order,
        structural,
        tables,
    }))
}
