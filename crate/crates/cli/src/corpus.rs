//! Batch runs over a corpus file with one JSON record per line.
//!
//! ```text
//! {"name": "...", "curve": "...", "integrand": "...", "mode": "telescope", "expect_order": 2}
//! ```
//!
//! `expect_integrable` and `expect_order` are optional. Blank lines and lines
//! starting with `#` are skipped.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::run::{run, Mode, ProblemSpec, SCHEMA};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub curve: String,
    pub integrand: String,
    pub mode: Mode,
    #[serde(default)]
    pub max_order: Option<usize>,
    #[serde(default)]
    pub expect_integrable: Option<bool>,
    #[serde(default)]
    pub expect_order: Option<usize>,
}

/// A line of the corpus: a record, or the reason it could not be read.
#[derive(Debug, Clone)]
pub enum CorpusLine {
    Entry(CorpusEntry),
    Malformed { line: usize, message: String },
}

pub fn parse_corpus(text: &str) -> Vec<CorpusLine> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| match serde_json::from_str::<CorpusEntry>(l) {
            Ok(e) => CorpusLine::Entry(e),
            Err(e) => CorpusLine::Malformed { line: i + 1, message: e.to_string() },
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Row {
    pub name: String,
    /// `ok`, `mismatch`, `parse-error` or `error:<code>`.
    pub status: String,
    pub verified: bool,
    pub order: Option<usize>,
    pub degree: Option<usize>,
    pub wall_ms: f64,
    pub doc: Value,
}

impl Row {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

fn evaluate(line: &CorpusLine, max_order: usize) -> Row {
    let start = Instant::now();
    let e = match line {
        CorpusLine::Malformed { line, message } => {
            return Row {
                name: format!("line {line}"),
                status: "parse-error".into(),
                verified: false,
                order: None,
                degree: None,
                wall_ms: 0.0,
                doc: json!({ "error": { "code": "malformed-record", "message": message } }),
            }
        }
        CorpusLine::Entry(e) => e,
    };
    let mut spec = ProblemSpec::new(e.mode, &e.curve, &e.integrand);
    spec.max_order = e.max_order.unwrap_or(max_order);
    let out = run(&spec);
    let result = &out.doc["result"];
    let verified = out.doc["verified"].as_bool().unwrap_or(false);
    let order = result["order"].as_u64().map(|x| x as usize);
    let degree = result["degree"].as_u64().map(|x| x as usize);
    let status = if out.exit_code != 0 {
        match out.doc["error"]["code"].as_str() {
            Some("syntax" | "unknown-variable") => "parse-error".to_string(),
            Some(code) => format!("error:{code}"),
            None => "error".to_string(),
        }
    } else {
        let integrable_ok = e.expect_integrable.is_none_or(|want| result["integrable"].as_bool() == Some(want));
        let order_ok = e.expect_order.is_none_or(|want| order == Some(want));
        if verified && integrable_ok && order_ok { "ok" } else { "mismatch" }.to_string()
    };
    Row {
        name: e.name.clone(),
        status,
        verified,
        order,
        degree,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        doc: out.doc,
    }
}

/// Evaluate every line with at most `jobs` worker threads. Rows come back
/// in input order.
pub fn run_corpus(lines: &[CorpusLine], jobs: usize, max_order: usize) -> Vec<Row> {
    let jobs = jobs.max(1).min(lines.len().max(1));
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<Row>> = vec![None; lines.len()];
    let done: Vec<Vec<(usize, Row)>> = std::thread::scope(|s| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= lines.len() {
                            break mine;
                        }
                        mine.push((i, evaluate(&lines[i], max_order)));
                    }
                })
            })
            .collect();
        workers.into_iter().map(|w| w.join().expect("corpus worker panicked")).collect()
    });
    for (i, row) in done.into_iter().flatten() {
        slots[i] = Some(row);
    }
    slots.into_iter().map(|r| r.expect("every row evaluated")).collect()
}

/// The structured summary. Wall times are included only on request so that
/// the document is reproducible byte for byte.
pub fn corpus_document(rows: &[Row], timings: bool) -> Value {
    let entries: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = json!({
                "name": r.name,
                "status": r.status,
                "verified": r.verified,
                "order": r.order,
                "degree": r.degree,
                "result": r.doc,
            });
            if timings {
                v["wall_ms"] = json!(r.wall_ms);
            }
            v
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "mode": "corpus",
        "entries": entries,
        "summary": {
            "total": rows.len(),
            "ok": rows.iter().filter(|r| r.is_ok()).count(),
        },
    })
}

pub fn corpus_table(rows: &[Row], timings: bool) -> String {
    let mut out = format!("{:<28} {:<28} {:>8} {:>5} {:>6}", "name", "status", "verified", "order", "degree");
    if timings {
        out.push_str(&format!(" {:>10}", "ms"));
    }
    out.push('\n');
    let dash = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    for r in rows {
        out.push_str(&format!("{:<28} {:<28} {:>8} {:>5} {:>6}", r.name, r.status, r.verified, dash(r.order), dash(r.degree)));
        if timings {
            out.push_str(&format!(" {:>10.1}", r.wall_ms));
        }
        out.push('\n');
    }
    let ok = rows.iter().filter(|r| r.is_ok()).count();
    out.push_str(&format!("{ok}/{} ok\n", rows.len()));
    out
}

/// The corpus shipped with the crate.
pub const BUNDLED: &str = include_str!("../corpus/bundled.jsonl");
