use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            "text" | "txt" => Ok(Format::Text),
            other => Err(Error::InvalidParameter(format!(
                "unsupported format `{other}` (expected json, csv, markdown or text)"
            ))),
        }
    }
}

/// A titled table of string cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Shortest round-tripping representation, matching the JSON output.
pub fn number(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| v.to_string())
}

/// One CSV document with a leading `table` column when several tables are given.
/// A header row precedes the first table and every table whose columns differ
/// from the previous one.
pub fn to_csv(tables: &[Table]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let tagged = tables.len() > 1;
    let mut columns: Option<&[String]> = None;
    for t in tables {
        if columns != Some(t.columns.as_slice()) {
            let mut header: Vec<&str> = Vec::new();
            if tagged {
                header.push("table");
            }
            header.extend(t.columns.iter().map(String::as_str));
            w.write_record(&header).map_err(csv_error)?;
            columns = Some(&t.columns);
        }
        for row in &t.rows {
            let mut record: Vec<&str> = Vec::new();
            if tagged {
                record.push(&t.title);
            }
            record.extend(row.iter().map(String::as_str));
            w.write_record(&record).map_err(csv_error)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("csv: {e}"))
}

fn escape_md(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

pub fn to_markdown(tables: &[Table]) -> String {
    let mut out = String::new();
    for (k, t) in tables.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "### {}\n", t.title);
        let _ = writeln!(out, "| {} |", t.columns.iter().map(|c| escape_md(c)).collect::<Vec<_>>().join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(t.columns.len()));
        for row in &t.rows {
            let _ = writeln!(out, "| {} |", row.iter().map(|c| escape_md(c)).collect::<Vec<_>>().join(" | "));
        }
    }
    out
}

pub fn to_text(tables: &[Table]) -> String {
    let mut out = String::new();
    for (k, t) in tables.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let widths: Vec<usize> = (0..t.columns.len())
            .map(|j| {
                t.rows
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([t.columns[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_owned()
        };
        let _ = writeln!(out, "{}", t.title);
        let _ = writeln!(out, "{}", line(&t.columns));
        let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
        for row in &t.rows {
            let _ = writeln!(out, "{}", line(row));
        }
    }
    out
}

/// Renders a value: JSON uses its serde form, the other formats use the tables.
pub fn emit<T: Serialize>(value: &T, tables: &[Table], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => to_csv(tables),
        Format::Markdown => Ok(to_markdown(tables)),
        Format::Text => Ok(to_text(tables)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("chern", &["model", "chi"]);
        t.push(vec!["s4".into(), number(2.0)]);
        t.push(vec!["a|b, c".into(), number(0.1)]);
        t
    }

    #[test]
    fn formats_parse() {
        assert_eq!("MD".parse::<Format>().unwrap(), Format::Markdown);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn csv_has_one_row_per_entry_and_quotes() {
        let s = to_csv(&[sample()]).unwrap();
        assert_eq!(s.lines().count(), 3);
        assert!(s.contains("\"a|b, c\""));
        let two = to_csv(&[sample(), sample()]).unwrap();
        assert_eq!(two.lines().count(), 5);
        assert!(two.starts_with("table,model,chi"));
        let other = Table::new("other", &["x"]);
        let mixed = to_csv(&[sample(), Table { rows: vec![vec!["1".into()]], ..other }]).unwrap();
        assert_eq!(mixed.lines().nth(3), Some("table,x"));
    }

    #[test]
    fn markdown_and_text_layout() {
        let md = to_markdown(&[sample()]);
        assert!(md.contains("### chern") && md.contains("| a\\|b, c | 0.1 |"));
        let txt = to_text(&[sample()]);
        assert!(txt.lines().nth(1).unwrap().starts_with("model   chi"));
    }

    #[test]
    fn numbers_match_json() {
        assert_eq!(number(0.1), "0.1");
        assert_eq!(number(2.0), "2.0");
    }
}
