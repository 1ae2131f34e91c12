//! Count tables as text.
//!
//! CSV:
//!
//! ```text
//! # scoreseq-table v1
//! n,S,T,EGZ
//! 0,1,0,0
//! 1,1,1,1
//! ```
//!
//! JSON: `{"format": "scoreseq-table v1", "rows": [{"n": 0, "S": "1", "T": "0", "EGZ": "0"}, …]}`
//! with counts as decimal strings. Loading checks the layout and then every
//! row identity, so a hand-edited or truncated cache is rejected with the line
//! it went wrong on.

use std::io::{self, BufRead, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::CountTable;

pub const TABLE_FORMAT_TAG: &str = "# scoreseq-table v1";
pub const TABLE_HEADER: &str = "n,S,T,EGZ";

/// `line` is 1-based; 0 when no line applies.
#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

impl TableError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        TableError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    format: String,
    rows: Vec<JsonRow>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    n: usize,
    #[serde(rename = "S")]
    s: String,
    #[serde(rename = "T")]
    t: String,
    #[serde(rename = "EGZ")]
    egz: String,
}

impl CountTable {
    /// One CSV data row per `n` in `from..=max_n`, no header.
    pub fn write_csv_rows<W: Write>(&self, from: usize, mut out: W) -> io::Result<()> {
        for n in from..=self.max_n() {
            writeln!(
                out,
                "{n},{},{},{}",
                self.scores[n], self.strong[n], self.egz[n]
            )?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{TABLE_FORMAT_TAG}")?;
        writeln!(out, "{TABLE_HEADER}")?;
        self.write_csv_rows(0, out)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("table CSV is ASCII")
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self, TableError> {
        let mut scores = Vec::new();
        let mut strong = Vec::new();
        let mut egz = Vec::new();
        let mut row_lines = Vec::new();
        let mut saw_tag = false;
        let mut saw_header = false;
        for (idx, line) in input.lines().enumerate() {
            let number = idx + 1;
            let line = line.map_err(|e| TableError::new(number, e.to_string()))?;
            let line = line.trim();
            if !saw_tag {
                if line != TABLE_FORMAT_TAG {
                    return Err(TableError::new(
                        number,
                        format!("expected format tag '{TABLE_FORMAT_TAG}'"),
                    ));
                }
                saw_tag = true;
                continue;
            }
            if !saw_header {
                if line != TABLE_HEADER {
                    return Err(TableError::new(
                        number,
                        format!("expected header '{TABLE_HEADER}'"),
                    ));
                }
                saw_header = true;
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(TableError::new(
                    number,
                    format!("expected 4 fields, found {}", fields.len()),
                ));
            }
            let n: usize = fields[0]
                .parse()
                .map_err(|_| TableError::new(number, format!("bad row index '{}'", fields[0])))?;
            if n != scores.len() {
                return Err(TableError::new(
                    number,
                    format!("expected row {}, found {n}", scores.len()),
                ));
            }
            let parse = |field: &str| {
                field
                    .parse::<BigUint>()
                    .map_err(|_| TableError::new(number, format!("bad count '{field}'")))
            };
            scores.push(parse(fields[1])?);
            strong.push(parse(fields[2])?);
            egz.push(parse(fields[3])?);
            row_lines.push(number);
        }
        if !saw_tag {
            return Err(TableError::new(1, "empty table"));
        }
        if scores.is_empty() {
            return Err(TableError::new(
                if saw_header { 3 } else { 2 },
                "table has no rows",
            ));
        }
        let table = CountTable::from_columns_unchecked(scores, strong, egz);
        if let Some((n, message)) = table.first_violation() {
            return Err(TableError::new(row_lines[n], message));
        }
        Ok(table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = (0..=self.max_n())
            .map(|n| JsonRow {
                n,
                s: self.scores[n].to_string(),
                t: self.strong[n].to_string(),
                egz: self.egz[n].to_string(),
            })
            .collect();
        serde_json::to_value(JsonTable {
            format: TABLE_FORMAT_TAG.trim_start_matches("# ").to_string(),
            rows,
        })
        .expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let parsed: JsonTable =
            serde_json::from_str(text).map_err(|e| TableError::new(e.line(), e.to_string()))?;
        if parsed.format != TABLE_FORMAT_TAG.trim_start_matches("# ") {
            return Err(TableError::new(
                0,
                format!("unknown table format '{}'", parsed.format),
            ));
        }
        if parsed.rows.is_empty() {
            return Err(TableError::new(0, "table has no rows"));
        }
        let mut scores = Vec::new();
        let mut strong = Vec::new();
        let mut egz = Vec::new();
        for (idx, row) in parsed.rows.iter().enumerate() {
            if row.n != idx {
                return Err(TableError::new(
                    0,
                    format!("expected row {idx}, found {}", row.n),
                ));
            }
            let parse = |field: &str| {
                field
                    .parse::<BigUint>()
                    .map_err(|_| TableError::new(0, format!("row {idx}: bad count '{field}'")))
            };
            scores.push(parse(&row.s)?);
            strong.push(parse(&row.t)?);
            egz.push(parse(&row.egz)?);
        }
        let table = CountTable::from_columns_unchecked(scores, strong, egz);
        if let Some((n, message)) = table.first_violation() {
            return Err(TableError::new(0, format!("row {n}: {message}")));
        }
        Ok(table)
    }
}
