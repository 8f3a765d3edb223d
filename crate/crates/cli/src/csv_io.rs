//! CSV ingestion and emission.
//!
//! Two input schemas, auto-detected from the header row:
//!   A (summary):     `study,site,t,n1,n2`
//!   B (group stats): `study,site,n1,mean1,var1,n2,mean2,var2`
//! In both, `n2` empty or 0 marks a one-sample design. `#`-prefixed
//! comment lines are permitted anywhere and skipped.

use std::io::{Read, Write};

use teval_core::classical::{one_sample_t, two_sample_t, TwoSampleVariant};
use teval_core::equivalence::ExperimentRecord;
use teval_core::sim::{SimCorpus, GENERATOR_ID};
use teval_core::{Error, Result, SampleSummary};

const SCHEMA_A: [&str; 5] = ["study", "site", "t", "n1", "n2"];
const SCHEMA_B: [&str; 8] = [
    "study", "site", "n1", "mean1", "var1", "n2", "mean2", "var2",
];

fn row_err(line: u64, msg: impl std::fmt::Display) -> Error {
    Error::data(format!("row {line}: {msg}"))
}

fn parse_f64(line: u64, name: &str, raw: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| row_err(line, format!("non-numeric {name}: {raw:?}")))
}

fn parse_u64(line: u64, name: &str, raw: &str) -> Result<u64> {
    raw.trim()
        .parse::<u64>()
        .map_err(|_| row_err(line, format!("non-integer {name}: {raw:?}")))
}

// `n2` may be empty (one-sample sentinel, same as 0)
fn parse_n2(line: u64, raw: &str) -> Result<u64> {
    if raw.trim().is_empty() {
        return Ok(0);
    }
    parse_u64(line, "n2", raw)
}

/// Parse a corpus from either schema. Schema B rows are reduced to t
/// statistics with the pooled two-sample test.
pub fn parse_records<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::data(format!("unreadable CSV header: {e}")))?
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();

    let schema_a = headers == SCHEMA_A;
    let schema_b = headers == SCHEMA_B;
    if !schema_a && !schema_b {
        return Err(Error::data(format!(
            "unknown columns {headers:?}; expected {SCHEMA_A:?} or {SCHEMA_B:?}"
        )));
    }

    let mut records = Vec::new();
    for row in reader.into_records() {
        let row = row.map_err(|e| Error::data(format!("malformed CSV row: {e}")))?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let expected = if schema_a { 5 } else { 8 };
        if row.len() != expected {
            return Err(row_err(
                line,
                format!("expected {expected} fields, got {}", row.len()),
            ));
        }
        let study = row[0].to_string();
        let site = row[1].to_string();
        let record = if schema_a {
            let t = parse_f64(line, "t", &row[2])?;
            let n1 = parse_u64(line, "n1", &row[3])?;
            let n2 = parse_n2(line, &row[4])?;
            ExperimentRecord::new(study, site, t, n1, n2)
        } else {
            let n1 = parse_u64(line, "n1", &row[2])?;
            let mean1 = parse_f64(line, "mean1", &row[3])?;
            let var1 = parse_f64(line, "var1", &row[4])?;
            let n2 = parse_n2(line, &row[5])?;
            let g1 = SampleSummary::new(n1, mean1, var1).map_err(|e| row_err(line, e))?;
            let t = if n2 == 0 {
                one_sample_t(&g1).t
            } else {
                let mean2 = parse_f64(line, "mean2", &row[6])?;
                let var2 = parse_f64(line, "var2", &row[7])?;
                let g2 = SampleSummary::new(n2, mean2, var2).map_err(|e| row_err(line, e))?;
                two_sample_t(&g1, &g2, TwoSampleVariant::Pooled).t
            };
            ExperimentRecord::new(study, site, t, n1, n2)
        };
        records.push(record.map_err(|e| row_err(line, e))?);
    }
    if records.is_empty() {
        return Err(Error::data("empty corpus: no data rows"));
    }
    Ok(records)
}

/// Emit a corpus in schema A with a comment header recording the model,
/// seed and generator identity. `t` is printed with round-trip
/// precision so that emit-then-parse reproduces records exactly.
pub fn emit_corpus<W: Write>(corpus: &SimCorpus, mut out: W) -> std::io::Result<()> {
    let m = &corpus.model;
    writeln!(
        out,
        "# model: m={} sigma_m={} sigma={} n={}",
        m.m, m.sigma_m, m.sigma, m.n
    )?;
    writeln!(out, "# seed: {}", corpus.seed)?;
    writeln!(out, "# generator: {GENERATOR_ID}")?;
    writeln!(out, "study,site,t,n1,n2")?;
    for r in &corpus.records {
        writeln!(out, "{},{},{},{},{}", r.study, r.site, r.t, r.n1, r.n2)?;
    }
    Ok(())
}
