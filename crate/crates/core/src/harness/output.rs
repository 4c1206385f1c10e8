use std::fmt;
use std::io::{BufRead, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algorithms::RunRecord;
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 8] = [
    "n",
    "run",
    "seed",
    "success",
    "evaluations",
    "iterations",
    "reinits",
    "final_potential",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" | "ndjson" => Ok(OutputFormat::Jsonl),
            _ => Err(Error::config("format", format!("unknown output format {s:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Jsonl => "jsonl",
        })
    }
}

/// One CSV row; `final_potential` is blank when no step ever improved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub n: usize,
    pub run: u64,
    pub seed: u64,
    pub success: bool,
    pub evaluations: u64,
    pub iterations: u64,
    pub reinits: u64,
    pub final_potential: Option<usize>,
}

impl From<&RunRecord> for CsvRow {
    fn from(r: &RunRecord) -> Self {
        CsvRow {
            n: r.n,
            run: r.run,
            seed: r.seed,
            success: r.success,
            evaluations: r.evaluations,
            iterations: r.iterations,
            reinits: r.reinits,
            final_potential: r.final_potential,
        }
    }
}

pub fn write_csv<W: Write>(w: W, records: &[RunRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if records.is_empty() {
        out.write_record(CSV_HEADER)?;
    }
    for r in records {
        out.serialize(CsvRow::from(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<CsvRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Analysis(format!(
            "unexpected CSV header {:?}, expected {}",
            header.join(","),
            CSV_HEADER.join(",")
        )));
    }
    rdr.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// One JSON object per line, carrying the full record including its trace.
pub fn write_jsonl<W: Write>(mut w: W, records: &[RunRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}
