//! The builtin corpus: named specs with expected labels.

use serde::Deserialize;
use serde_json::Value;

use super::data;
use crate::error::Result;
use crate::group::GroupSpec;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
    /// Expected structural tag, e.g. `TypeB2`, with its parameters.
    pub expected_tag: String,
    pub expected_params: Vec<i64>,
    pub expected_gcstar: Option<bool>,
    pub note: String,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    spec: Value,
    expected: RawExpected,
    #[serde(default)]
    gcstar: Option<bool>,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize)]
struct RawExpected {
    tag: String,
    #[serde(default)]
    params: Vec<i64>,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let raw: Vec<RawEntry> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|r| {
            Ok(CorpusEntry {
                spec: GroupSpec::from_json(&r.spec)?.with_label(r.name.clone()),
                name: r.name,
                expected_tag: r.expected.tag,
                expected_params: r.expected.params,
                expected_gcstar: r.gcstar,
                note: r.note,
            })
        })
        .collect()
}

pub fn builtin_corpus() -> Result<Vec<CorpusEntry>> {
    parse_corpus(data::checked("corpus.json", data::CORPUS)?)
}
