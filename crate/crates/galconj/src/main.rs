use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use galconj_core::catalog::corpus::{builtin_corpus, parse_corpus, CorpusEntry};
use galconj_core::catalog::parse_family_params;
use galconj_core::chartab::CharacterTable;
use galconj_core::classifier::CATALOG_ONLY_NOTE;
use galconj_core::group::{parse_group_spec, GroupSpec};
use galconj_core::pipeline::{analyze, cache_key, Analysis, NoStore, TableStore};
use galconj_core::Error;

#[derive(Parser)]
#[command(
    name = "galconj",
    version,
    about = "Character tables, Galois orbits and GC* classification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and verify the character table.
    Chartab(GroupArgs),
    /// Galois orbits on the irreducible characters.
    Orbits(GroupArgs),
    /// Definitional verdict, structural class and their consistency.
    Check(GroupArgs),
    /// Run a corpus and write report.json.
    Corpus(CorpusArgs),
    /// Write the spec of a catalog family.
    Make(MakeArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Path to a group-spec JSON file.
    path: Option<PathBuf>,
    /// Family name followed by its parameters.
    #[arg(long, num_args = 1.., value_names = ["NAME", "P"])]
    family: Option<Vec<String>>,
    #[arg(long)]
    json: bool,
    #[arg(short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory of spec or entry files, or a corpus JSON array; builtin when absent.
    dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Where to write the report.
    #[arg(short = 'o', value_name = "PATH", default_value = "report.json")]
    output: PathBuf,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct MakeArgs {
    name: String,
    params: Vec<String>,
    #[arg(short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
}

/// Failures that are the input's fault exit with 2, all others with 1.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let input = err.chain().any(|c| match c.downcast_ref::<Error>() {
            Some(e) => !matches!(
                e,
                Error::TableFailure(_) | Error::NotGaloisClosed(_) | Error::CorruptBundle(_)
            ),
            None => c.downcast_ref::<std::io::Error>().is_some(),
        });
        Failure {
            code: if input { 2 } else { 1 },
            err,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Command::Chartab(a) => cmd_chartab(&a),
        Command::Orbits(a) => cmd_orbits(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Corpus(a) => cmd_corpus(&a),
        Command::Make(a) => cmd_make(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    fn from_env() -> Self {
        let dir = std::env::var_os("GALCONJ_CACHE")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".galconj-cache"));
        DiskCache { dir }
    }

    fn path(&self, spec: &GroupSpec) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(spec)))
    }
}

impl TableStore for DiskCache {
    fn load(&self, spec: &GroupSpec) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path(spec)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        CharacterTable::from_json(&v).ok()
    }

    fn save(&self, spec: &GroupSpec, table: &CharacterTable) {
        // a failed cache write only costs a recomputation
        let _ = write_atomic(&self.dir, &self.path(spec), &render_json(&table.to_json()));
    }
}

fn write_atomic(dir: &Path, path: &Path, text: &str) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn store(no_cache: bool) -> Box<dyn TableStore> {
    if no_cache {
        Box::new(NoStore)
    } else {
        Box::new(DiskCache::from_env())
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn family_spec(name: &str, raw: &[String]) -> Result<GroupSpec, Failure> {
    let params = parse_family_params(name, raw)?;
    let spec = GroupSpec::family(name, &params);
    // validates the name and parameters without realizing anything
    Ok(GroupSpec::from_json(&spec.to_json())?)
}

fn load_spec(a: &GroupArgs) -> Result<GroupSpec, Failure> {
    match (&a.path, &a.family) {
        (Some(_), Some(_)) => Err(input_failure(anyhow!(
            "give either a spec path or --family, not both"
        ))),
        (None, None) => Err(input_failure(anyhow!(
            "a spec path or --family NAME P... is required"
        ))),
        (Some(p), None) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_group_spec(&text).with_context(|| format!("parsing {}", p.display()))?)
        }
        (None, Some(f)) => family_spec(&f[0], &f[1..]),
    }
}

fn input_failure(err: anyhow::Error) -> Failure {
    Failure { code: 2, err }
}

fn table_failure(a: &Analysis) -> Option<String> {
    let t = a.tables.as_ref()?;
    t.verify
        .failure
        .clone()
        .map(|f| format!("table verification failed: {f}"))
        .or_else(|| {
            t.audit
                .failure
                .clone()
                .map(|f| format!("orbit audit failed: {f}"))
        })
}

fn analyze_or_explain(spec: &GroupSpec, no_cache: bool) -> Result<Analysis, Failure> {
    let started = Instant::now();
    let a = analyze(spec, store(no_cache).as_ref())?;
    eprintln!("{}: analyzed in {:.2?}", a.name, started.elapsed());
    Ok(a)
}

fn cmd_chartab(a: &GroupArgs) -> Result<u8, Failure> {
    let spec = load_spec(a)?;
    let an = analyze_or_explain(&spec, a.no_cache)?;
    let Some(t) = &an.tables else {
        return Err(input_failure(anyhow!(
            "{}: no character table within budget ({})",
            an.name,
            structural_only_note(&an)
        )));
    };
    let text = if a.json {
        render_json(&t.table.to_json())
    } else {
        t.table.render_text()
    };
    emit(&text, a.output.as_deref())?;
    match table_failure(&an) {
        Some(f) => {
            eprintln!("error: {f}");
            Ok(1)
        }
        None => Ok(0),
    }
}

fn structural_only_note(a: &Analysis) -> &'static str {
    if a.structural.catalog_only() {
        CATALOG_ONLY_NOTE
    } else {
        "structural verdict only"
    }
}

fn cmd_orbits(a: &GroupArgs) -> Result<u8, Failure> {
    let spec = load_spec(a)?;
    let an = analyze_or_explain(&spec, a.no_cache)?;
    let Some(t) = &an.tables else {
        return Err(input_failure(anyhow!(
            "{}: no character table within budget ({})",
            an.name,
            structural_only_note(&an)
        )));
    };
    let text = if a.json {
        render_json(&t.orbits.to_json())
    } else {
        let mut s = format!(
            "{} (order {}): {} orbits\n",
            an.name,
            an.order,
            t.orbits.orbits.len()
        );
        for (i, o) in t.orbits.orbits.iter().enumerate() {
            s += &format!(
                "orbit {i}: rows {:?} degree {} field_index {} kernel {:?} center {:?}\n",
                o.rows, o.degree, o.field_index, o.kernel, o.center
            );
        }
        s
    };
    emit(&text, a.output.as_deref())?;
    match table_failure(&an) {
        Some(f) => {
            eprintln!("error: {f}");
            Ok(1)
        }
        None => Ok(0),
    }
}

fn check_text(a: &Analysis) -> String {
    let mut s = format!("group: {} (order {})\n", a.name, a.order);
    match &a.tables {
        Some(t) => {
            let v = &t.verdict;
            s += &format!(
                "gcstar: {}  gc: {}  distinct_degrees: {}\n",
                v.gcstar, v.gc, v.distinct_degrees
            );
            for w in &v.witnesses {
                s += &format!(
                    "witness ({}): rows {} and {} of degree {}\n",
                    w.predicate, w.rows[0], w.rows[1], w.degree
                );
            }
        }
        None => s += &format!("{}\n", structural_only_note(a)),
    }
    s += &format!("structural: {}\n", a.structural.label());
    s += &format!("distinct-degrees class: {}\n", a.corollary_b().as_str());
    s += &format!("consistent: {}\n", a.consistent());
    if let Some(f) = table_failure(a) {
        s += &format!("{f}\n");
    }
    s
}

fn cmd_check(a: &GroupArgs) -> Result<u8, Failure> {
    let spec = load_spec(a)?;
    let an = analyze_or_explain(&spec, a.no_cache)?;
    let text = if a.json {
        render_json(&an.to_json())
    } else {
        check_text(&an)
    };
    emit(&text, a.output.as_deref())?;
    Ok(if an.consistent() { 0 } else { 1 })
}

fn cmd_make(a: &MakeArgs) -> Result<u8, Failure> {
    let spec = family_spec(&a.name, &a.params)?;
    let text = render_json(&spec.to_json());
    // the written spec must parse back to itself
    if parse_group_spec(&text)? != spec {
        return Err(anyhow!("spec does not round-trip").into());
    }
    emit(&text, a.output.as_deref())?;
    Ok(0)
}

/// A corpus entry file holds either a bare spec or an entry with expectations.
fn load_corpus(dir: Option<&Path>) -> Result<Vec<CorpusEntry>, Failure> {
    let Some(dir) = dir else {
        return Ok(builtin_corpus()?);
    };
    if dir.is_file() {
        let text = fs::read_to_string(dir).with_context(|| format!("reading {}", dir.display()))?;
        return Ok(parse_corpus(&text)?);
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
        let v: Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
        let stem = p
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        if v.get("spec").is_some() {
            let wrapped = format!("[{text}]");
            out.extend(parse_corpus(&wrapped).with_context(|| format!("parsing {}", p.display()))?);
        } else {
            let spec =
                GroupSpec::from_json(&v).with_context(|| format!("parsing {}", p.display()))?;
            let name = spec.label.clone().unwrap_or(stem);
            out.push(CorpusEntry {
                name,
                spec,
                expected_tag: String::new(),
                expected_params: vec![],
                expected_gcstar: None,
                note: String::new(),
            });
        }
    }
    Ok(out)
}

fn run_entry(e: &CorpusEntry, store: &dyn TableStore) -> Value {
    let started = Instant::now();
    let result = analyze(&e.spec, store);
    eprintln!("{}: {:.2?}", e.name, started.elapsed());
    let expected = json!({
        "tag": if e.expected_tag.is_empty() { Value::Null } else { json!(e.expected_tag) },
        "params": e.expected_params,
        "gcstar": e.expected_gcstar,
    });
    let a = match result {
        Ok(a) => a,
        Err(err) => {
            return json!({
                "name": e.name,
                "expected": expected,
                "error": err.to_string(),
                "pass": false,
                "problems": ["analysis failed"],
            })
        }
    };
    let mut problems = Vec::new();
    if !a.consistent() {
        problems.push("structural and definitional verdicts disagree".to_string());
    }
    if let Some(f) = table_failure(&a) {
        problems.push(f);
    }
    if a.corollary_b_agrees() == Some(false) {
        problems.push("distinct-degrees label disagrees with the table".to_string());
    }
    if !e.expected_tag.is_empty() {
        if a.structural.tag_name() != e.expected_tag {
            problems.push(format!(
                "expected tag {}, got {}",
                e.expected_tag,
                a.structural.tag_name()
            ));
        } else if !e.expected_params.is_empty() && a.structural.params() != e.expected_params {
            problems.push(format!(
                "expected params {:?}, got {:?}",
                e.expected_params,
                a.structural.params()
            ));
        }
    }
    if let Some(g) = e.expected_gcstar {
        if a.gcstar() != g {
            problems.push(format!("expected gcstar {g}, got {}", a.gcstar()));
        }
    }
    let status = if a.structural.catalog_only() {
        CATALOG_ONLY_NOTE
    } else if a.structural_only() {
        "structural verdict only"
    } else {
        "verified"
    };
    json!({
        "name": e.name,
        "expected": expected,
        "result": a.to_json(),
        "status": status,
        "note": e.note,
        "pass": problems.is_empty(),
        "problems": problems,
    })
}

fn cmd_corpus(a: &CorpusArgs) -> Result<u8, Failure> {
    let entries = load_corpus(a.dir.as_deref())?;
    let store = store(a.no_cache);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| anyhow!("thread pool: {e}"))?;
    let started = Instant::now();
    let results: Vec<Value> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| run_entry(e, store.as_ref()))
            .collect()
    });
    eprintln!(
        "corpus: {} entries in {:.2?}",
        entries.len(),
        started.elapsed()
    );
    let passed = results.iter().filter(|r| r["pass"] == json!(true)).count();
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| r["pass"] != json!(true))
        .filter_map(|r| r["name"].as_str())
        .collect();
    let report = json!({
        "tool": "galconj",
        "version": env!("CARGO_PKG_VERSION"),
        "entries": results,
        "summary": {"total": results.len(), "passed": passed, "failed": failed.len(), "failed_entries": failed},
    });
    let text = render_json(&report);
    fs::write(&a.output, &text).with_context(|| format!("writing {}", a.output.display()))?;
    if a.json {
        print!("{text}");
    } else {
        println!(
            "{passed}/{} entries passed; report written to {}",
            results.len(),
            a.output.display()
        );
        for f in &failed {
            println!("FAILED: {f}");
        }
    }
    if entries.is_empty() {
        return Err(input_failure(anyhow!("corpus is empty")));
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}
