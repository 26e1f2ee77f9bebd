//! Bundled data files, pinned by SHA-256 in `data/manifest.json`.

use std::collections::BTreeMap;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const MANIFEST: &str = include_str!("../../data/manifest.json");
const SZ8: &str = include_str!("../../data/sz8.gens.json");
const SPORADIC: &str = include_str!("../../data/sporadic_orders.json");
const FINGERPRINTS: &str = include_str!("../../data/simple_fingerprints.json");
pub(crate) const CORPUS: &str = include_str!("../../data/corpus.json");

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Returns `text` if its hash matches the manifest entry for `file`.
pub(crate) fn checked(file: &str, text: &'static str) -> Result<&'static str> {
    let manifest: BTreeMap<String, String> = serde_json::from_str(MANIFEST)?;
    match manifest.get(file) {
        Some(h) if *h == sha256_hex(text.as_bytes()) => Ok(text),
        _ => Err(Error::CorruptBundle(file.to_string())),
    }
}

#[derive(Debug, Deserialize)]
pub struct PermBundle {
    pub name: String,
    pub degree: usize,
    pub order: u64,
    pub generators: Vec<Vec<u32>>,
}

pub fn sz8_generators() -> Result<PermBundle> {
    Ok(serde_json::from_str(checked("sz8.gens.json", SZ8)?)?)
}

/// Catalog-only groups and their orders.
pub fn sporadic_orders() -> Result<BTreeMap<String, u128>> {
    let raw: BTreeMap<String, String> =
        serde_json::from_str(checked("sporadic_orders.json", SPORADIC)?)?;
    raw.into_iter()
        .map(|(k, v)| {
            let n = v
                .parse::<u128>()
                .map_err(|_| Error::CorruptBundle("sporadic_orders.json".into()))?;
            Ok((k, n))
        })
        .collect()
}

/// Order, class count and degree multiset of a simple group whose table is computed.
#[derive(Clone, Debug, Deserialize)]
pub struct Fingerprint {
    pub name: String,
    #[serde(deserialize_with = "decimal")]
    pub order: u128,
    pub classes: usize,
    pub degrees: Vec<u64>,
}

fn decimal<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<u128, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

pub fn simple_fingerprints() -> Result<Vec<Fingerprint>> {
    Ok(serde_json::from_str(checked(
        "simple_fingerprints.json",
        FINGERPRINTS,
    )?)?)
}
