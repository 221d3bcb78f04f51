//! Built-in corpus of rings with published or independently derived facts.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{parse_polynomial, Polynomial, Ring, TermOrder};
use crate::analysis::{analyze, AnalysisReport, Input, Options};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;

const CORPUS_JSON: &str = include_str!("../corpus/corpus.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fact {
    pub fact: String,
    pub value: Value,
    /// Where the expected value comes from.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub id: String,
    pub description: String,
    #[serde(default)]
    pub slow: bool,
    /// Hitting a resource bound counts as a pass.
    #[serde(default)]
    pub resource_exit_allowed: bool,
    pub input: Input,
    pub expect: Vec<Fact>,
}

pub fn builtin() -> Vec<CorpusItem> {
    serde_json::from_str(CORPUS_JSON).expect("embedded corpus is valid")
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusItem>> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed corpus: {e}")))
}

/// Items whose id contains `filter`, skipping slow ones unless asked.
pub fn select(items: Vec<CorpusItem>, filter: Option<&str>, include_slow: bool) -> Vec<CorpusItem> {
    items
        .into_iter()
        .filter(|i| include_slow || !i.slow)
        .filter(|i| filter.is_none_or(|f| i.id.contains(f)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactResult {
    pub fact: String,
    pub source: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "message")]
pub enum ItemStatus {
    Passed,
    Mismatch,
    /// A resource bound was hit on an item that allows it.
    ResourceExit(String),
    Error(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemResult {
    pub id: String,
    pub description: String,
    pub status: ItemStatus,
    /// Exit class of the error, when there was one: 1, 2 or 3.
    pub error_code: Option<i32>,
    pub facts: Vec<FactResult>,
    pub elapsed_ms: u128,
    #[serde(skip)]
    pub report: Option<AnalysisReport>,
}

impl ItemResult {
    pub fn ok(&self) -> bool {
        matches!(
            self.status,
            ItemStatus::Passed | ItemStatus::ResourceExit(_)
        )
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 2,
        Error::Inconsistent(_) => 3,
        Error::Input(_) | Error::Undefined(_) | Error::Unsupported(_) => 1,
    }
}

pub fn run_item(item: &CorpusItem, opts: &Options) -> ItemResult {
    let start = Instant::now();
    let outcome = analyze(&item.input, opts);
    let elapsed_ms = start.elapsed().as_millis();
    let mut out = ItemResult {
        id: item.id.clone(),
        description: item.description.clone(),
        status: ItemStatus::Passed,
        error_code: None,
        facts: Vec::new(),
        elapsed_ms,
        report: None,
    };
    match outcome {
        Ok(report) => {
            out.facts = item
                .expect
                .iter()
                .map(|f| check_fact(&report, &item.input, f))
                .collect();
            if out.facts.iter().any(|f| !f.passed) {
                out.status = ItemStatus::Mismatch;
            }
            out.report = Some(report);
        }
        Err(e) => {
            out.error_code = Some(error_code(&e));
            out.status = match e {
                Error::Resource(m) if item.resource_exit_allowed => ItemStatus::ResourceExit(m),
                e => ItemStatus::Error(e.to_string()),
            };
        }
    }
    out
}

/// Runs items on a pool of `jobs` threads; results keep the input order.
pub fn run_corpus(items: &[CorpusItem], opts: &Options, jobs: usize) -> Vec<ItemResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(|i| run_item(i, opts)).collect())
}

fn field<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn check_fact(r: &AnalysisReport, input: &Input, f: &Fact) -> FactResult {
    let (actual, passed) = match evaluate(r, input, f) {
        Ok(x) => x,
        Err(e) => (json!({ "error": e.to_string() }), false),
    };
    FactResult {
        fact: f.fact.clone(),
        source: f.source.clone(),
        expected: f.value.clone(),
        actual,
        passed,
    }
}

fn evaluate(r: &AnalysisReport, input: &Input, f: &Fact) -> Result<(Value, bool)> {
    let exp = &f.value;
    let plain = |v: Value| {
        let ok = &v == exp;
        Ok((v, ok))
    };
    match f.fact.as_str() {
        "dim" => plain(field(r.dim)),
        "pd" => plain(field(r.pd)),
        "is_cm" => plain(field(r.is_cm)),
        "cm_type" => plain(field(r.cm_type)),
        "is_level" => plain(field(r.is_level)),
        "is_gorenstein" => plain(field(r.is_gorenstein)),
        "is_nearly_gorenstein" => plain(field(r.is_nearly_gorenstein)),
        "trace_contains_m" => plain(field(r.trace_contains_m)),
        "type2_shortcut" => plain(field(r.type2_shortcut)),
        "h_vector" => plain(field(&r.h_vector)),
        "hilbert_numerator" => plain(field(&r.hilbert_numerator)),
        "punctured_index" => plain(field(r.punctured_index.and_then(|p| p.index))),
        "trace_kernel_columns" => plain(field(r.trace_kernel.as_ref().map(|k| k.columns))),
        "trace_kernel_entry_degrees" => {
            plain(field(r.trace_kernel.as_ref().map(|k| &k.entry_degrees)))
        }
        "v_size" => plain(field(r.semigroup.as_ref().and_then(|s| s.v_size))),
        "v_min_size" => plain(field(r.semigroup.as_ref().and_then(|s| s.v_min_size))),
        "engines_agree" => plain(field(r.semigroup.as_ref().and_then(|s| s.engines_agree))),
        "locally_gorenstein" => plain(field(
            r.complex
                .as_ref()
                .map(|c| c.locally_gorenstein.locally_gorenstein),
        )),
        "classification" => plain(field(r.complex.as_ref().map(|c| c.classification))),
        "betti_table" => {
            let rows: Vec<[i64; 3]> = r
                .betti_table
                .iter()
                .filter(|b| b.i > 0)
                .map(|b| [b.i as i64, b.j, b.rank as i64])
                .collect();
            plain(field(rows))
        }
        "trace_contains_power" => {
            let k = exp["k"]
                .as_u64()
                .ok_or_else(|| Error::Input("trace_contains_power needs k".into()))?;
            let holds = r.trace_contains_power(k as usize);
            let v = json!({ "k": k, "holds": holds });
            Ok((v.clone(), v == *exp))
        }
        "hilbert_burch" => {
            let hb = field(&r.hilbert_burch);
            let obj = exp
                .as_object()
                .ok_or_else(|| Error::Input("hilbert_burch expects an object".into()))?;
            let ok = r.hilbert_burch.applicable && obj.iter().all(|(k, v)| hb.get(k) == Some(v));
            Ok((hb, ok))
        }
        "h_vector_form" => {
            let first = exp["first"].as_i64();
            let rest = exp["rest"].as_i64();
            let s = exp["s"].as_u64();
            let Some(h) = &r.h_vector else {
                return Ok((Value::Null, false));
            };
            let ok = h.len() >= 2
                && Some(h[0]) == first
                && h[1..].iter().all(|&x| Some(x) == rest)
                && s.is_none_or(|s| s as usize == h.len() - 1);
            let v =
                json!({ "first": h[0], "rest": h[1..].iter().copied().max(), "s": h.len() - 1 });
            Ok((v, ok))
        }
        "trace_ideal" => {
            let Some(gens) = &r.trace_generators else {
                return Ok((Value::Null, false));
            };
            let expected: Vec<String> = serde_json::from_value(exp.clone())
                .map_err(|e| Error::Input(format!("trace_ideal expects strings: {e}")))?;
            let ok = same_trace_ideal(r, input, gens, &expected)?;
            Ok((field(gens), ok))
        }
        other => Err(Error::Input(format!("unknown fact {other}"))),
    }
}

/// `(a) + J == (b) + J` in the report's polynomial ring.
fn same_trace_ideal(r: &AnalysisReport, input: &Input, a: &[String], b: &[String]) -> Result<bool> {
    let n = r.variables.len();
    let mut ord = TermOrder::degrevlex(n);
    if let Input::Ideal {
        weights: Some(w), ..
    } = input
    {
        ord = ord.with_weights(w.clone());
    }
    let ring = Ring::new(r.variables.clone(), ord)?;
    let parse = |v: &[String]| {
        v.iter()
            .map(|g| parse_polynomial(&ring, g))
            .collect::<Result<Vec<Polynomial>>>()
    };
    let j = parse(&r.ideal_generators)?;
    let mut pa = parse(a)?;
    let mut pb = parse(b)?;
    pa.extend(j.iter().cloned());
    pb.extend(j);
    let limits = Options::default().limits;
    let ga = GroebnerBasis::compute(&pa, limits)?;
    let gb = GroebnerBasis::compute(&pb, limits)?;
    Ok(ga.contains_all(&pb)? && gb.contains_all(&pa)?)
}

/// Fixed-width pass/fail table, one line per fact.
pub fn render_table(results: &[ItemResult]) -> String {
    let mut s = String::new();
    for r in results {
        let head = match &r.status {
            ItemStatus::Passed => "PASS".to_string(),
            ItemStatus::Mismatch => "FAIL".to_string(),
            ItemStatus::ResourceExit(m) => format!("PASS (resource exit allowed: {m})"),
            ItemStatus::Error(m) => format!("FAIL ({m})"),
        };
        s += &format!("{:<32} {:>8} ms  {head}\n", r.id, r.elapsed_ms);
        for f in &r.facts {
            let mark = if f.passed { "ok " } else { "BAD" };
            s += &format!("    {mark} {:<28} {}\n", f.fact, f.source);
            if !f.passed {
                s += &format!(
                    "        expected {}\n        actual   {}\n",
                    f.expected, f.actual
                );
            }
        }
    }
    let passed = results.iter().filter(|r| r.ok()).count();
    s += &format!("{passed}/{} items passed\n", results.len());
    s
}
